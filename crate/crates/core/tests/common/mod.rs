//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use gonality::canon::CanonicalForm;
use gonality::oracle::{min_gonality_search, Budget};
use gonality::{CurveGraph, LegPolicy};

/// Connected stable graphs with at most `max_vertices` vertices and
/// arithmetic genus in `2..=max_genus`, one per isomorphism class.
pub fn stable_graphs(max_vertices: usize, max_genus: u32) -> Vec<CurveGraph> {
    let mut seen: BTreeMap<CanonicalForm, CurveGraph> = BTreeMap::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        // Per vertex: genus and loops; per pair: multiplicity.
        let slots = 2 * n + pairs.len();
        let mut counts = vec![0u32; slots];
        loop {
            let g = counts.iter().sum::<u32>() as i64 + 1 - n as i64;
            if (2..=max_genus as i64).contains(&g) {
                let mut c = CurveGraph::new();
                for i in 0..n {
                    c.add_vertex(format!("v{i}"), counts[i]);
                }
                let mut e = 0;
                for i in 0..n {
                    for _ in 0..counts[n + i] {
                        c.add_edge(format!("e{e}"), format!("v{i}"), format!("v{i}"));
                        e += 1;
                    }
                }
                for (p, &(i, j)) in pairs.iter().enumerate() {
                    for _ in 0..counts[2 * n + p] {
                        c.add_edge(format!("e{e}"), format!("v{i}"), format!("v{j}"));
                        e += 1;
                    }
                }
                if c.is_connected() && c.is_stable().is_stable() {
                    seen.entry(c.canonical_form(LegPolicy::Unlabeled)).or_insert(c);
                }
            }
            // Odometer over bounded counts.
            let mut i = 0;
            while i < slots {
                counts[i] += 1;
                if counts.iter().sum::<u32>() < max_genus + n as u32 {
                    break;
                }
                counts[i] = 0;
                i += 1;
            }
            if i == slots {
                break;
            }
        }
    }
    seen.into_values().collect()
}

/// Oracle gonality of the component `v` of `c` together with its own
/// self-nodes. A smooth rational component has gonality 1.
pub fn component_gonality(c: &CurveGraph, v: &str, budget: &Budget) -> Option<u32> {
    let mut part = CurveGraph::new();
    let genus = c.genus_of(v).unwrap();
    part.add_vertex(v, genus);
    for e in c.edges.iter().filter(|e| e.is_loop() && e.ends[0] == v) {
        part.add_edge(e.id.clone(), v, v);
    }
    if genus == 0 && part.edges.is_empty() {
        return Some(1);
    }
    min_gonality_search(&part, 3, budget).unwrap().k()
}

/// Two rational components joined by three edges.
pub fn theta() -> CurveGraph {
    let mut c = CurveGraph::new();
    c.add_vertex("a", 0);
    c.add_vertex("b", 0);
    for e in ["e1", "e2", "e3"] {
        c.add_edge(e, "a", "b");
    }
    c
}

/// Two elliptic components joined by one edge.
pub fn dollar() -> CurveGraph {
    let mut c = CurveGraph::new();
    c.add_vertex("x", 1);
    c.add_vertex("y", 1);
    c.add_edge("n", "x", "y");
    c
}

/// One component of genus `genus` with a self-node.
pub fn looped(genus: u32) -> CurveGraph {
    let mut c = CurveGraph::smooth("v", genus);
    c.add_edge("l", "v", "v");
    c
}

/// All permutations of `0..d`, as images.
pub fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for i in 0..d {
            let mut q = p.clone();
            q.insert(i, d - 1);
            out.push(q);
        }
    }
    out
}

/// Cycle lengths of `p`, decreasing.
pub fn cycle_lengths(p: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Brute force over whole tuples: some `σ_1 … σ_m` with the given cycle
/// types, `σ_1 ⋯ σ_m = 1`, acting transitively. No Riemann-Hurwitz
/// shortcut and no conjugation normalization.
pub fn direct_realizable(d: usize, profiles: &[Vec<u32>]) -> bool {
    let perms = permutations(d);
    let classes: Vec<Vec<&Vec<usize>>> = profiles
        .iter()
        .map(|p| {
            let mut p = p.clone();
            p.sort_unstable_by(|a, b| b.cmp(a));
            perms.iter().filter(|q| cycle_lengths(q) == p).collect()
        })
        .collect();
    if profiles.is_empty() {
        return d == 1;
    }
    let mut pick = vec![0usize; profiles.len()];
    if classes.iter().any(|c| c.is_empty()) {
        return false;
    }
    loop {
        let mut prod: Vec<usize> = (0..d).collect();
        for (c, &i) in classes.iter().zip(&pick) {
            prod = prod.iter().map(|&x| c[i][x]).collect();
        }
        if prod.iter().enumerate().all(|(i, &x)| i == x) && transitive(d, classes.iter().zip(&pick).map(|(c, &i)| c[i])) {
            return true;
        }
        let mut j = 0;
        while j < pick.len() {
            pick[j] += 1;
            if pick[j] < classes[j].len() {
                break;
            }
            pick[j] = 0;
            j += 1;
        }
        if j == pick.len() {
            return false;
        }
    }
}

fn transitive<'a>(d: usize, gens: impl Iterator<Item = &'a Vec<usize>>) -> bool {
    let gens: Vec<_> = gens.collect();
    let mut reached = vec![false; d];
    let mut stack = vec![0];
    reached[0] = true;
    while let Some(x) = stack.pop() {
        for g in &gens {
            if !reached[g[x]] {
                reached[g[x]] = true;
                stack.push(g[x]);
            }
        }
    }
    reached.iter().all(|&r| r)
}

/// Partitions of `n` into parts, decreasing.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Genus forced by Riemann-Hurwitz over a line, if it is a non-negative
/// integer.
pub fn riemann_hurwitz_genus(d: u32, profiles: &[Vec<u32>]) -> Option<u32> {
    let excess: i64 = profiles.iter().map(|p| d as i64 - p.len() as i64).sum();
    let twice = excess - 2 * d as i64 + 2;
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
}
