//! Canonical labelling of small vertex- and edge-coloured multigraphs.
//!
//! Colour refinement followed by an individualisation search; the canonical
//! form is the lexicographically least encoding over all leaves of the
//! search tree. Interchangeable twin vertices are only branched on once, and
//! automorphisms found at equal leaves prune equivalent branches.
//! Meant for graphs of a few dozen vertices.

use std::collections::BTreeMap;

/// Opaque, label-free encoding. Two coloured graphs are isomorphic iff their
/// canonical forms compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<i64>);

impl CanonicalForm {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

#[derive(Debug, Clone, Default)]
pub struct ColoredGraph {
    colors: Vec<Vec<i64>>,
    /// adj[u][v] = sorted multiset of edge colours between u and v.
    adj: Vec<BTreeMap<usize, Vec<Vec<i64>>>>,
}

impl ColoredGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, color: Vec<i64>) -> usize {
        self.colors.push(color);
        self.adj.push(BTreeMap::new());
        self.colors.len() - 1
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize, color: Vec<i64>) {
        insert_sorted(self.adj[u].entry(v).or_default(), color.clone());
        if u != v {
            insert_sorted(self.adj[v].entry(u).or_default(), color);
        }
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.len();
        if n == 0 {
            return CanonicalForm(vec![0]);
        }
        let mut by_color: BTreeMap<&Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (v, c) in self.colors.iter().enumerate() {
            by_color.entry(c).or_default().push(v);
        }
        let cells: Vec<Vec<usize>> = by_color.into_values().collect();
        let mut state = Search { first: None, best: None, automorphisms: Vec::new() };
        self.search(cells, &mut Vec::new(), &mut state);
        CanonicalForm(state.best.expect("search visits at least one leaf").1)
    }

    fn search(&self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>, state: &mut Search) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let enc = self.encode(&order);
            state.leaf(order, enc);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for v in self.twin_representatives(&cells[target]) {
            // Skip children equivalent to an explored one under a known
            // automorphism fixing the individualised prefix.
            if !explored.is_empty() && state.same_orbit(prefix, self.len(), v, &explored) {
                continue;
            }
            explored.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cells[target].iter().copied().filter(|&u| u != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            prefix.push(v);
            self.search(next, prefix, state);
            prefix.pop();
        }
    }

    fn twin_representatives(&self, cell: &[usize]) -> Vec<usize> {
        let mut reps: Vec<usize> = Vec::new();
        for &v in cell {
            if !reps.iter().any(|&r| self.are_twins(r, v)) {
                reps.push(v);
            }
        }
        reps
    }

    fn are_twins(&self, u: usize, v: usize) -> bool {
        if self.colors[u] != self.colors[v] || self.adj[u].get(&u) != self.adj[v].get(&v) {
            return false;
        }
        let strip = |x: usize| {
            self.adj[x]
                .iter()
                .filter(|(k, _)| **k != u && **k != v)
                .collect::<Vec<_>>()
        };
        strip(u) == strip(v)
    }

    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut cell_of = vec![0usize; n];
        loop {
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            let mut changed = false;
            let mut out: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
            for c in &cells {
                if c.len() == 1 {
                    out.push(c.clone());
                    continue;
                }
                let mut groups: BTreeMap<Vec<(usize, &Vec<Vec<i64>>)>, Vec<usize>> =
                    BTreeMap::new();
                for &v in c {
                    let mut sig: Vec<(usize, &Vec<Vec<i64>>)> = self.adj[v]
                        .iter()
                        .map(|(w, col)| (cell_of[*w], col))
                        .collect();
                    sig.sort();
                    groups.entry(sig).or_default().push(v);
                }
                if groups.len() > 1 {
                    changed = true;
                }
                out.extend(groups.into_values());
            }
            cells = out;
            if !changed {
                return cells;
            }
        }
    }

    fn encode(&self, order: &[usize]) -> Vec<i64> {
        let n = order.len();
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut enc = vec![n as i64];
        for &v in order {
            enc.push(self.colors[v].len() as i64);
            enc.extend_from_slice(&self.colors[v]);
        }
        let mut edges: Vec<(usize, usize, &Vec<Vec<i64>>)> = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            for (&v, col) in nbrs {
                if pos[u] <= pos[v] {
                    edges.push((pos[u], pos[v], col));
                }
            }
        }
        edges.sort();
        enc.push(edges.len() as i64);
        for (a, b, cols) in edges {
            enc.push(a as i64);
            enc.push(b as i64);
            enc.push(cols.len() as i64);
            for c in cols {
                enc.push(c.len() as i64);
                enc.extend_from_slice(c);
            }
        }
        enc
    }
}

struct Search {
    first: Option<(Vec<usize>, Vec<i64>)>,
    best: Option<(Vec<usize>, Vec<i64>)>,
    /// Each maps vertex `i` to `automorphisms[j][i]`.
    automorphisms: Vec<Vec<usize>>,
}

impl Search {
    fn leaf(&mut self, order: Vec<usize>, enc: Vec<i64>) {
        for known in [&self.first, &self.best].into_iter().flatten() {
            if known.1 == enc {
                let mut gamma = vec![0; order.len()];
                for (i, &v) in known.0.iter().enumerate() {
                    gamma[v] = order[i];
                }
                self.automorphisms.push(gamma);
                return;
            }
        }
        if self.first.is_none() {
            self.first = Some((order.clone(), enc.clone()));
        }
        if self.best.as_ref().is_none_or(|b| enc < b.1) {
            self.best = Some((order, enc));
        }
    }

    fn same_orbit(&self, prefix: &[usize], n: usize, v: usize, explored: &[usize]) -> bool {
        let fixing: Vec<&Vec<usize>> =
            self.automorphisms.iter().filter(|g| prefix.iter().all(|&p| g[p] == p)).collect();
        if fixing.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in fixing {
            for (i, &j) in g.iter().enumerate() {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rv = root(&mut parent, v);
        explored.iter().any(|&u| root(&mut parent, u) == rv)
    }
}

fn insert_sorted(list: &mut Vec<Vec<i64>>, item: Vec<i64>) {
    let at = list.partition_point(|x| *x <= item);
    list.insert(at, item);
}
