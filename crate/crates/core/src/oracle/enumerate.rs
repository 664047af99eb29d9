//! Exhaustive search for admissible covers whose source stabilizes to a
//! given curve.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::realize::{hurwitz_realizability, MAX_REALIZABILITY_DEGREE};
use super::shapes::{fibers, target_trees, transports, Slot};
use crate::canon::CanonicalForm;
use crate::cover::{AdmissibleCover, EdgeRam, Mode, Profile, TargetPoint, TargetTree};
use crate::curve::{CurveGraph, LegPolicy};
use crate::error::{Error, Result};
use crate::samples::simple;

/// Search limits. `rational` bounds the added rational source components,
/// `target_vertices` the target components, and `work` the number of
/// complete edge assignments examined per fiber placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub rational: u32,
    pub target_vertices: u32,
    pub max_degree: u32,
    pub curve_vertices: u32,
    pub work: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { rational: 4, target_vertices: 4, max_degree: 4, curve_vertices: 4, work: 2_000_000 }
    }
}

/// Result of the minimal-degree search.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found { k: u32, certificate: Box<AdmissibleCover> },
    /// Nothing up to `kmax` within the budget. Not a proof that none exists.
    NotFound { kmax: u32 },
}

impl SearchOutcome {
    pub fn k(&self) -> Option<u32> {
        match self {
            SearchOutcome::Found { k, .. } => Some(*k),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

struct Problem {
    ids: Vec<String>,
    genera: Vec<u32>,
    edges: usize,
    genus: u32,
    form: CanonicalForm,
    k: u32,
    budget: Budget,
}

struct Candidate {
    tree: Vec<(usize, usize)>,
    t: usize,
    slots: Vec<Slot>,
}

/// All strict-valid degree-`k` covers, up to isomorphism, whose source
/// stabilizes to `c`, in canonical order.
pub fn enumerate_covers(c: &CurveGraph, k: u32, budget: &Budget) -> Result<Vec<AdmissibleCover>> {
    let p = Problem::new(c, k, budget)?;
    let found: Vec<Vec<AdmissibleCover>> =
        p.candidates().par_iter().map(|cand| p.solve(cand, false)).collect::<Result<_>>()?;
    let mut unique: BTreeMap<CanonicalForm, AdmissibleCover> = BTreeMap::new();
    for cov in found.into_iter().flatten() {
        unique.entry(cov.canonical_form()).or_insert(cov);
    }
    Ok(unique.into_values().collect())
}

/// First degree-`k` cover in candidate order, if any.
pub fn find_cover(c: &CurveGraph, k: u32, budget: &Budget) -> Result<Option<AdmissibleCover>> {
    let p = Problem::new(c, k, budget)?;
    p.candidates()
        .par_iter()
        .map(|cand| p.solve(cand, true))
        .find_map_first(|r| match r {
            Ok(mut v) if !v.is_empty() => Some(Ok(v.swap_remove(0))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .transpose()
}

/// Smallest `k <= kmax` admitting a cover within budget, with a certificate.
pub fn min_gonality_search(c: &CurveGraph, kmax: u32, budget: &Budget) -> Result<SearchOutcome> {
    for k in 1..=kmax {
        if let Some(cov) = find_cover(c, k, budget)? {
            return Ok(SearchOutcome::Found { k, certificate: Box::new(cov) });
        }
    }
    Ok(SearchOutcome::NotFound { kmax })
}

impl Problem {
    fn new(c: &CurveGraph, k: u32, budget: &Budget) -> Result<Self> {
        if !c.legs.is_empty() {
            return Err(Error::pre("enumeration handles curves without marked points"));
        }
        if k == 0 {
            return Err(Error::pre("degree must be positive"));
        }
        if k > budget.max_degree.min(MAX_REALIZABILITY_DEGREE) {
            return Err(Error::BudgetExceeded(format!("degree {k} is above the search limit")));
        }
        let genus = c.arithmetic_genus()?;
        let (reduced, _) = c.contract_unstable()?;
        if reduced.vertices.len() as u32 > budget.curve_vertices {
            return Err(Error::BudgetExceeded(format!(
                "{} components is above the search limit",
                reduced.vertices.len()
            )));
        }
        if budget.target_vertices > 4 {
            return Err(Error::BudgetExceeded("at most 4 target components are supported".into()));
        }
        Ok(Self {
            ids: reduced.vertices.iter().map(|v| v.id.clone()).collect(),
            genera: reduced.vertices.iter().map(|v| v.genus).collect(),
            edges: reduced.edges.len(),
            genus,
            form: reduced.canonical_form(LegPolicy::Unlabeled),
            k,
            budget: *budget,
        })
    }

    fn branch_points(&self) -> i64 {
        2 * self.genus as i64 + 2 * self.k as i64 - 2
    }

    fn candidates(&self) -> Vec<Candidate> {
        let b = self.branch_points();
        let mut out = Vec::new();
        for t in 1..=self.budget.target_vertices as usize {
            for tree in target_trees(t) {
                let valence = |w: usize| tree.iter().filter(|&&(x, y)| x == w || y == w).count() as i64;
                let needed: i64 = (0..t).map(|w| (3 - valence(w)).max(0)).sum();
                if needed > b {
                    continue;
                }
                for slots in fibers(&self.genera, t, self.k, self.budget.rational) {
                    let m = slots.iter().filter(|s| s.vertex.is_none()).count();
                    let want = self.edges + m;
                    let count = |w: usize| slots.iter().filter(|s| s.target == w).count();
                    let least: usize = tree.iter().map(|&(x, y)| count(x).max(count(y))).sum();
                    if least > want || tree.len() * (self.k as usize) < want {
                        continue;
                    }
                    out.push(Candidate { tree: tree.clone(), t, slots });
                }
            }
        }
        out
    }
}

/// A source edge: slot indices, target edge index, ramification.
type Node = (usize, usize, usize, u32);

impl Problem {
    fn solve(&self, cand: &Candidate, first: bool) -> Result<Vec<AdmissibleCover>> {
        let want = self.edges + cand.slots.iter().filter(|s| s.vertex.is_none()).count();
        let options: Vec<Vec<Vec<Node>>> = cand
            .tree
            .iter()
            .enumerate()
            .map(|(f, &(x, y))| {
                let a: Vec<usize> = (0..cand.slots.len()).filter(|&i| cand.slots[i].target == x).collect();
                let b: Vec<usize> = (0..cand.slots.len()).filter(|&i| cand.slots[i].target == y).collect();
                let da: Vec<u32> = a.iter().map(|&i| cand.slots[i].degree).collect();
                let db: Vec<u32> = b.iter().map(|&i| cand.slots[i].degree).collect();
                transports(&da, &db)
                    .into_iter()
                    .map(|t| t.into_iter().map(|(i, j, l)| (a[i], b[j], f, l)).collect())
                    .collect()
            })
            .collect();
        let mut walk = Walk { p: self, cand, options: &options, want, first, work: 0, out: Vec::new() };
        walk.go(0, &mut Vec::new())?;
        Ok(walk.out)
    }

    fn evaluate(&self, cand: &Candidate, nodes: &[Node]) -> Result<Option<AdmissibleCover>> {
        let slots = &cand.slots;
        let valence: Vec<usize> =
            (0..cand.t).map(|w| cand.tree.iter().filter(|&&(x, y)| x == w || y == w).count()).collect();
        // Ramification of each slot over each adjacent target edge.
        let mut parts: Vec<BTreeMap<usize, Vec<u32>>> = vec![BTreeMap::new(); slots.len()];
        for &(a, b, f, l) in nodes {
            parts[a].entry(f).or_default().push(l);
            parts[b].entry(f).or_default().push(l);
        }
        let mut branch = vec![0i64; slots.len()];
        let mut legs = vec![0i64; cand.t];
        for (i, s) in slots.iter().enumerate() {
            let d = s.degree as i64;
            let nodal: i64 = parts[i].values().map(|ls| d - ls.len() as i64).sum();
            let r = 2 * s.genus as i64 - 2 + 2 * d - nodal;
            if r < 0 || (r > 0 && d < 2) {
                return Ok(None);
            }
            branch[i] = r;
            legs[s.target] += r;
        }
        if (0..cand.t).any(|w| valence[w] as i64 + legs[w] < 3) || legs.iter().sum::<i64>() != self.branch_points() {
            return Ok(None);
        }
        for (i, s) in slots.iter().enumerate() {
            let mut profiles: Vec<Vec<u32>> = parts[i].values().cloned().collect();
            if s.degree >= 2 {
                profiles.extend(std::iter::repeat_n(simple(s.degree), branch[i] as usize));
            }
            if !hurwitz_realizability(s.degree, &profiles, s.genus)? {
                return Ok(None);
            }
        }
        let cov = self.build(cand, nodes, &branch);
        if !cov.source.is_connected() {
            return Ok(None);
        }
        if cov.source.contract_unstable()?.0.canonical_form(LegPolicy::Unlabeled) != self.form {
            return Ok(None);
        }
        if !cov.is_valid(Mode::Strict) {
            log::warn!("discarding enumerated cover that fails strict validation");
            return Ok(None);
        }
        Ok(Some(cov))
    }

    fn build(&self, cand: &Candidate, nodes: &[Node], branch: &[i64]) -> AdmissibleCover {
        let mut rational = 0;
        let ids: Vec<String> = cand
            .slots
            .iter()
            .map(|s| match s.vertex {
                Some(i) => self.ids[i].clone(),
                None => loop {
                    rational += 1;
                    let id = format!("r{rational}");
                    if !self.ids.contains(&id) {
                        break id;
                    }
                },
            })
            .collect();
        let mut target = CurveGraph::new();
        for w in 0..cand.t {
            target.add_vertex(format!("T{w}"), 0);
        }
        for (f, &(x, y)) in cand.tree.iter().enumerate() {
            target.add_edge(format!("f{f}"), format!("T{x}"), format!("T{y}"));
        }
        let mut source = CurveGraph::new();
        let mut vmap = BTreeMap::new();
        let mut degrees = BTreeMap::new();
        let mut profiles = Vec::new();
        for (i, s) in cand.slots.iter().enumerate() {
            source.add_vertex(ids[i].clone(), s.genus);
            vmap.insert(ids[i].clone(), format!("T{}", s.target));
            degrees.insert(ids[i].clone(), s.degree);
            for _ in 0..branch[i] {
                let q = format!("q{}", target.legs.len() + 1);
                target.add_leg(q.clone(), format!("T{}", s.target));
                profiles.push(Profile { vertex: ids[i].clone(), point: TargetPoint::Leg(q), parts: simple(s.degree) });
            }
        }
        let mut edge_ram = BTreeMap::new();
        for (n, &(a, b, f, l)) in nodes.iter().enumerate() {
            let e = format!("e{n}");
            source.add_edge(e.clone(), ids[a].clone(), ids[b].clone());
            edge_ram.insert(e, EdgeRam { target: format!("f{f}"), ram: l });
        }
        let mut cov = AdmissibleCover {
            source,
            target: TargetTree { curve: target, anchors: Default::default() },
            degree: self.k,
            vmap,
            degrees,
            edge_ram,
            profiles,
            marks: BTreeMap::new(),
        };
        cov.fill_trivial_profiles();
        cov
    }
}

struct Walk<'a> {
    p: &'a Problem,
    cand: &'a Candidate,
    options: &'a [Vec<Vec<Node>>],
    want: usize,
    first: bool,
    work: u64,
    out: Vec<AdmissibleCover>,
}

impl Walk<'_> {
    fn go(&mut self, f: usize, chosen: &mut Vec<Node>) -> Result<()> {
        if self.first && !self.out.is_empty() {
            return Ok(());
        }
        if f == self.options.len() {
            if chosen.len() != self.want {
                return Ok(());
            }
            self.work += 1;
            if self.work > self.p.budget.work {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} edge assignments for one fiber placement",
                    self.p.budget.work
                )));
            }
            if let Some(cov) = self.p.evaluate(self.cand, chosen)? {
                self.out.push(cov);
            }
            return Ok(());
        }
        let rest_min: usize = self.options[f + 1..].iter().map(|o| o.iter().map(Vec::len).min().unwrap_or(0)).sum();
        for opt in &self.options[f] {
            if chosen.len() + opt.len() + rest_min > self.want {
                continue;
            }
            let before = chosen.len();
            chosen.extend_from_slice(opt);
            self.go(f + 1, chosen)?;
            chosen.truncate(before);
        }
        Ok(())
    }
}
