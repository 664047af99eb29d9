use std::time::{Duration, Instant};

use gonality::constructions::{gonality_interval_components, gonality_interval_irreducible};
use gonality::oracle::{find_cover, hurwitz_realizability, min_gonality_search, Budget};
use gonality::{CurveGraph, Mode};

use crate::common;
use crate::Verdict;

const KMAX: u32 = 4;
const SWEEP_LIMIT: Duration = Duration::from_secs(600);
const REALIZABILITY_LIMIT: Duration = Duration::from_secs(60);

fn sweep_budget() -> Budget {
    Budget { rational: 4, target_vertices: 4, ..Budget::default() }
}

fn describe(c: &CurveGraph) -> String {
    let genera: Vec<String> = c.vertices.iter().map(|v| v.genus.to_string()).collect();
    let edges: Vec<String> = c.edges.iter().map(|e| format!("{}{}", &e.ends[0][1..], &e.ends[1][1..])).collect();
    format!("g=({}) e=[{}]", genera.join(","), edges.join(" "))
}

/// Interval for `c` from oracle gonalities of its parts, or `None` when a
/// component is outside the hypothesis (gonality above 3 or not found).
fn interval(c: &CurveGraph, budget: &Budget) -> Option<(i64, i64)> {
    if c.vertices.len() == 1 {
        let v = &c.vertices[0];
        let normalization = CurveGraph::smooth(&v.id, v.genus);
        let k = if v.genus == 0 { 1 } else { min_gonality_search(&normalization, 3, budget).unwrap().k()? };
        return gonality_interval_irreducible(k, c.edges.len() as u32).ok();
    }
    let mut ks = Vec::new();
    for v in &c.vertices {
        ks.push(common::component_gonality(c, &v.id, budget).filter(|&k| k <= 3)?);
    }
    let external = c.edges.iter().filter(|e| !e.is_loop()).count() as u32;
    gonality_interval_components(&ks, external).ok()
}

pub fn interval_sweep() -> Verdict {
    let start = Instant::now();
    let budget = sweep_budget();
    let curves = common::stable_graphs(3, 4);
    let (mut checked, mut inside, mut below) = (0, 0, 0);
    let mut above = Vec::new();
    let mut unresolved = Vec::new();
    let mut invalid = 0;
    for c in &curves {
        let Some((lo, hi)) = interval(c, &budget) else { continue };
        checked += 1;
        let found = min_gonality_search(c, KMAX, &budget).unwrap();
        let Some(k) = found.k() else {
            unresolved.push(format!("{} in [{lo},{hi}]", describe(c)));
            continue;
        };
        if let gonality::oracle::SearchOutcome::Found { certificate, .. } = &found {
            let (stable, _) = certificate.source.stabilize().unwrap();
            if !certificate.is_valid(Mode::Strict) || !stable.is_isomorphic(c) {
                invalid += 1;
            }
        }
        let k = k as i64;
        if k > hi {
            above.push(format!("{} min {k} > {hi}", describe(c)));
        } else if k >= lo {
            inside += 1;
        } else {
            // Smaller than the lower end: look for a certificate inside.
            below += 1;
            let top = hi.min(KMAX as i64);
            let hit = (lo.max(1)..=top).any(|d| find_cover(c, d as u32, &budget).unwrap().is_some());
            if !hit {
                unresolved.push(format!("{} min {k}, none in [{lo},{top}]", describe(c)));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = above.is_empty() && unresolved.is_empty() && invalid == 0 && elapsed < SWEEP_LIMIT;
    let mut detail = format!(
        "{} stable curves, {checked} within hypotheses; minimum inside {inside}, below the lower end {below} \
         (certificate inside found for {}), above the upper end {}, bad certificates {invalid}, \
         no certificate at k <= {KMAX} with (R,T)=(4,4): {}",
        curves.len(),
        below - unresolved.iter().filter(|u| u.contains("none in")).count(),
        above.len(),
        unresolved.len(),
    );
    for u in above.iter().chain(&unresolved) {
        detail.push_str(&format!("\n    {u}"));
    }
    let mut v = Verdict::new(pass, detail);
    // Nothing contradicts an interval; the misses are search-budget limits.
    v.budget_limited = above.is_empty() && invalid == 0 && elapsed < SWEEP_LIMIT;
    v
}

/// Multisets of `m` partitions of `d`, as index lists into `parts`.
fn multisets(n: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in multisets(n, m - 1) {
        let start = rest.last().copied().unwrap_or(0);
        for i in start..n {
            let mut x = rest.clone();
            x.push(i);
            out.push(x);
        }
    }
    out
}

pub fn realizability() -> Verdict {
    let start = Instant::now();
    let (mut lists, mut realizable) = (0, 0);
    let mut disagree = Vec::new();
    for d in 1..=4u32 {
        let parts = common::partitions(d);
        for m in 0..=6 {
            for pick in multisets(parts.len(), m) {
                let list: Vec<Vec<u32>> = pick.iter().map(|&i| parts[i].clone()).collect();
                let expected = common::direct_realizable(d as usize, &list);
                let got = match common::riemann_hurwitz_genus(d, &list) {
                    Some(g) => hurwitz_realizability(d, &list, g).unwrap(),
                    None => hurwitz_realizability(d, &list, 0).unwrap(),
                };
                lists += 1;
                realizable += expected as usize;
                if got != expected {
                    disagree.push(format!("d={d} {list:?}: oracle {got}, direct {expected}"));
                }
            }
        }
    }
    let mut detail = format!("{lists} profile lists (d <= 4, up to 6 profiles), {realizable} realizable, {} disagreements", disagree.len());
    if let Some(first) = disagree.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    Verdict::new(disagree.is_empty() && start.elapsed() < REALIZABILITY_LIMIT, detail)
}
