//! Builders for small covers, and seeded random inputs for the
//! constructions.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cover::{AdmissibleCover, Mark, Profile, TargetPoint, TargetTree};
use crate::curve::CurveGraph;

/// One component `C` of genus `genus` mapping with degree `degree` to one
/// line `B`, with a branch point `q1, q2, ...` per entry of `branch`.
pub fn line_cover(genus: u32, degree: u32, branch: &[Vec<u32>]) -> AdmissibleCover {
    let mut target = CurveGraph::smooth("B", 0);
    let mut profiles = Vec::new();
    for (i, parts) in branch.iter().enumerate() {
        let q = format!("q{}", i + 1);
        target.add_leg(q.clone(), "B");
        profiles.push(Profile { vertex: "C".into(), point: TargetPoint::Leg(q), parts: parts.clone() });
    }
    AdmissibleCover {
        source: CurveGraph::smooth("C", genus),
        target: TargetTree { curve: target, anchors: Default::default() },
        degree,
        vmap: BTreeMap::from([("C".into(), "B".into())]),
        degrees: BTreeMap::from([("C".into(), degree)]),
        edge_ram: BTreeMap::new(),
        profiles,
        marks: BTreeMap::new(),
    }
}

/// The simple-branching profile `(2, 1, ..., 1)` of `degree`.
pub fn simple(degree: u32) -> Vec<u32> {
    let mut p = vec![1; degree as usize - 1];
    p[0] = 2;
    p
}

/// Smooth genus-`genus` degree-`degree` cover with `2g + 2k - 2` simple
/// branch points.
pub fn simple_cover(genus: u32, degree: u32) -> AdmissibleCover {
    let b = 2 * genus + 2 * degree - 2;
    line_cover(genus, degree, &vec![simple(degree); b as usize])
}

/// Adds an unramified anchor point `label` on target component `at`.
pub fn add_anchor(cov: &mut AdmissibleCover, label: &str, at: &str) {
    cov.target.curve.add_leg(label, at);
    cov.target.anchors.insert(label.to_string());
    cov.fill_trivial_profiles();
}

/// Adds a marked point on source component `v` over target leg `image`.
pub fn add_mark(cov: &mut AdmissibleCover, label: &str, v: &str, image: &str, ram: u32) {
    cov.source.add_leg(label, v);
    cov.marks.insert(label.to_string(), Mark { image: image.to_string(), ram });
}

/// Random partition of `k` with `sum (m - 1)` between 1 and `max_excess`.
fn random_ramified_partition(rng: &mut impl Rng, k: u32, max_excess: u32) -> Vec<u32> {
    loop {
        let mut parts = Vec::new();
        let mut left = k;
        while left > 0 {
            let m = rng.gen_range(1..=left);
            parts.push(m);
            left -= m;
        }
        let e = k - parts.len() as u32;
        if e >= 1 && e <= max_excess {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            return parts;
        }
    }
}

/// Smooth cover with random (possibly non-simple) branching.
pub fn random_line_cover(rng: &mut impl Rng, genus: u32, degree: u32, simple_only: bool) -> AdmissibleCover {
    let mut left = 2 * genus + 2 * degree - 2;
    let mut branch = Vec::new();
    while left > 0 {
        let p = if simple_only || degree < 3 {
            simple(degree)
        } else {
            random_ramified_partition(rng, degree, left)
        };
        left -= degree - p.len() as u32;
        branch.push(p);
    }
    line_cover(genus, degree, &branch)
}

/// Where a random marked point goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkSite {
    /// A fresh anchor.
    NewAnchor,
    /// The same point as an earlier mark.
    SameAs(usize),
}

/// Adds marked points `labels`, each at a fresh anchor or at the image of an
/// earlier one, on random source components. Marks sharing an image sit at
/// distinct points of the fiber.
pub fn add_random_marks(
    rng: &mut impl Rng,
    cov: &mut AdmissibleCover,
    labels: &[&str],
    sites: &[MarkSite],
) -> bool {
    let mut images: Vec<String> = Vec::new();
    for (i, (label, site)) in labels.iter().zip(sites).enumerate() {
        let image = match site {
            MarkSite::NewAnchor => {
                let w = cov.target.curve.vertices.choose(rng).unwrap().id.clone();
                let a = format!("anchor.{label}");
                add_anchor(cov, &a, &w);
                a
            }
            MarkSite::SameAs(j) => images[*j].clone(),
        };
        let w = cov.target.curve.leg(&image).unwrap().at.clone();
        let mut room: Vec<String> = Vec::new();
        for v in cov.fiber(&w) {
            let parts = cov.profile(v, &TargetPoint::Leg(image.clone())).map_or(0, |p| p.len());
            let used = cov
                .marks
                .iter()
                .filter(|(l, m)| m.image == image && cov.source.leg(l).map(|x| x.at.as_str()) == Some(v))
                .count();
            if used < parts {
                room.push(v.to_string());
            }
        }
        let Some(v) = room.choose(rng).cloned() else { return false };
        add_mark(cov, label, &v, &image, 1);
        images.push(image);
        debug_assert!(i < labels.len());
    }
    true
}

/// Random smooth cover with marked points `n1`, `n2` over two distinct
/// anchors: an input for the distinct-image gluing.
pub fn random_distinct_input(rng: &mut impl Rng, genus: u32, degree: u32, simple_only: bool) -> AdmissibleCover {
    let mut cov = random_line_cover(rng, genus, degree, simple_only);
    let placed = add_random_marks(rng, &mut cov, &["n1", "n2"], &[MarkSite::NewAnchor, MarkSite::NewAnchor]);
    debug_assert!(placed);
    cov
}

/// Random smooth cover with marked points `n1`, `n2` in one fiber over an
/// anchor: an input for the equal-image gluing. Needs `degree >= 2`.
pub fn random_equal_input(rng: &mut impl Rng, genus: u32, degree: u32, simple_only: bool) -> AdmissibleCover {
    let mut cov = random_line_cover(rng, genus, degree, simple_only);
    let placed = add_random_marks(rng, &mut cov, &["n1", "n2"], &[MarkSite::NewAnchor, MarkSite::SameAs(0)]);
    debug_assert!(placed);
    cov
}

/// Random smooth cover with `count` marked points `{prefix}1, ...` in one
/// fiber over an anchor. Needs `count <= degree`.
pub fn random_fiber_marked(
    rng: &mut impl Rng,
    genus: u32,
    degree: u32,
    count: usize,
    prefix: &str,
    simple_only: bool,
) -> AdmissibleCover {
    let mut cov = random_line_cover(rng, genus, degree, simple_only);
    let labels: Vec<String> = (1..=count).map(|i| format!("{prefix}{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut sites = vec![MarkSite::NewAnchor];
    sites.extend((1..count).map(|_| MarkSite::SameAs(0)));
    let placed = add_random_marks(rng, &mut cov, &refs, &sites);
    debug_assert!(placed);
    cov
}
