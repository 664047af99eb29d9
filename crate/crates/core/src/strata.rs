//! Hurwitz-space bookkeeping: dimensions, boundary strata of covers, and
//! the three gluing maps between Hurwitz spaces with marked points.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constructions::{
    glue_nonsep_distinct, glue_nonsep_equal, join_subcurve_covers, GluingReport, LegRef,
};
use crate::canon::CanonicalForm;
use crate::cover::{AdmissibleCover, Mode};
use crate::error::{Error, Result};

/// `dim H̄_{k,g} = b - 3 = 2g + 2k - 5`.
pub fn hurwitz_dim(k: u32, g: u32) -> i64 {
    2 * g as i64 + 2 * k as i64 - 5
}

/// Dimension with `n` groups of marked points: `2g + 2k - 5 + n`.
pub fn pointed_hurwitz_dim(k: u32, g: u32, n: u32) -> i64 {
    hurwitz_dim(k, g) + n as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Chain,
    Tree,
}

/// Combinatorial type of a boundary point: `n + 1` target components and
/// the number of branch points on each. Chains list counts along the chain,
/// oriented so the sequence is lexicographically least; for `n = 1` the
/// smaller count comes first. Trees list counts in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StratumDescriptor {
    pub n: usize,
    pub counts: Vec<usize>,
    pub shape: Shape,
}

impl StratumDescriptor {
    pub fn interior(b: usize) -> Self {
        Self { n: 0, counts: vec![b], shape: Shape::Chain }
    }

    /// `Δ^{1,ℓ}` of a space with `b` branch points.
    pub fn delta1(l: usize, b: usize) -> Self {
        Self::chain(vec![l, b - l])
    }

    /// `Δ^{2,(ℓ1,ℓ2,ℓ3)}`.
    pub fn delta2(l1: usize, l2: usize, l3: usize) -> Self {
        Self::chain(vec![l1, l2, l3])
    }

    pub fn chain(counts: Vec<usize>) -> Self {
        let rev: Vec<usize> = counts.iter().rev().copied().collect();
        let counts = counts.min(rev);
        Self { n: counts.len() - 1, counts, shape: Shape::Chain }
    }

    pub fn branch_points(&self) -> usize {
        self.counts.iter().sum()
    }

    /// For chains: every component carries enough points to be stable.
    pub fn is_stable_arrangement(&self) -> bool {
        match (self.shape, self.counts.len()) {
            (_, 1) => self.counts[0] >= 3,
            (Shape::Chain, len) => self.counts.iter().enumerate().all(|(i, &c)| {
                let nodes = if i == 0 || i == len - 1 { 1 } else { 2 };
                c + nodes >= 3
            }),
            (Shape::Tree, _) => true,
        }
    }

    /// Whether this chain stratum lies in the closure of `coarser`, that is,
    /// whether merging consecutive components yields `coarser`.
    pub fn lies_in(&self, coarser: &StratumDescriptor) -> bool {
        if self.shape != Shape::Chain || coarser.shape != Shape::Chain {
            return self == coarser;
        }
        if self.branch_points() != coarser.branch_points() || self.n < coarser.n {
            return false;
        }
        let rev: Vec<usize> = self.counts.iter().rev().copied().collect();
        merges_to(&self.counts, &coarser.counts) || merges_to(&rev, &coarser.counts)
    }
}

fn merges_to(fine: &[usize], coarse: &[usize]) -> bool {
    let mut i = 0;
    for &want in coarse {
        let mut sum = 0;
        let start = i;
        while i < fine.len() && sum < want {
            sum += fine[i];
            i += 1;
        }
        if sum != want || i == start {
            return false;
        }
    }
    i == fine.len()
}

/// Stratum of a strictly valid cover.
pub fn classify_stratum(cov: &AdmissibleCover) -> Result<StratumDescriptor> {
    let rep = cov.validate(Mode::Strict);
    if !rep.valid {
        return Err(Error::InvalidCover(rep.to_string()));
    }
    let t = &cov.target.curve;
    let mut count: BTreeMap<&str, usize> = t.vertices.iter().map(|w| (w.id.as_str(), 0)).collect();
    for l in cov.target.branch_legs() {
        *count.get_mut(l.at.as_str()).unwrap() += 1;
    }
    let degree = |w: &str| t.half_edges(w);
    let path = t.vertices.iter().all(|w| degree(&w.id) <= 2);
    let desc = if t.vertices.len() == 1 {
        StratumDescriptor::interior(count[t.vertices[0].id.as_str()])
    } else if path {
        let start = t.vertices.iter().find(|w| degree(&w.id) == 1).unwrap().id.clone();
        let mut order = vec![start.clone()];
        let mut prev = String::new();
        let mut cur = start;
        while let Some(next) = t
            .edges
            .iter()
            .filter_map(|f| f.other_end(&cur))
            .find(|o| *o != prev)
            .map(str::to_string)
        {
            prev = std::mem::replace(&mut cur, next.clone());
            order.push(next);
        }
        StratumDescriptor::chain(order.iter().map(|w| count[w.as_str()]).collect())
    } else {
        let mut counts: Vec<usize> = count.values().copied().collect();
        counts.sort_unstable_by(|a, b| b.cmp(a));
        StratumDescriptor { n: counts.len() - 1, counts, shape: Shape::Tree }
    };
    if !desc.is_stable_arrangement() {
        return Err(Error::Unstable(format!("arrangement {:?} is not stable", desc.counts)));
    }
    Ok(desc)
}

/// `φ`: two marked points with distinct images.
pub fn phi(cov: &AdmissibleCover, p1: &str, p2: &str) -> Result<GluingReport> {
    if !cov.marked_point_check(&[vec![p1], vec![p2]])? {
        return Err(Error::pre("φ needs two marked points with distinct images"));
    }
    glue_nonsep_distinct(cov, p1, p2)
}

/// `ψ`: two marked points with the same image.
pub fn psi(cov: &AdmissibleCover, p1: &str, p2: &str) -> Result<GluingReport> {
    if !cov.marked_point_check(&[vec![p1, p2]])? {
        return Err(Error::pre("ψ needs two marked points with the same image"));
    }
    glue_nonsep_equal(cov, p1, p2)
}

/// `λ`: two covers, each with `δ` marked points over one point, glued
/// pairwise.
pub fn lambda(
    cov1: &AdmissibleCover,
    cov2: &AdmissibleCover,
    pairing: &[(String, String)],
) -> Result<GluingReport> {
    let first: Vec<&str> = pairing.iter().map(|(a, _)| a.as_str()).collect();
    let second: Vec<&str> = pairing.iter().map(|(_, b)| b.as_str()).collect();
    if !cov1.marked_point_check(&[first])? || !cov2.marked_point_check(&[second])? {
        return Err(Error::pre("λ needs the marked points of each cover over one point"));
    }
    let pairs: Vec<(LegRef, LegRef)> = pairing
        .iter()
        .map(|(a, b)| (LegRef::new(0, a), LegRef::new(1, b)))
        .collect();
    join_subcurve_covers(&[cov1.clone(), cov2.clone()], &pairs)
}

/// `ℓ` indexing the components `Δ^{1,ℓ}` of a space with `b` branch points.
pub fn delta1_components(b: u32) -> Result<Vec<u32>> {
    if b < 4 || !b.is_multiple_of(2) {
        return Err(Error::pre("b must be even and at least 4"));
    }
    Ok((2..=b / 2).collect())
}

/// Stratum containing the image of `λ` for inputs in `H̄_{k1,g1,δ}` and
/// `H̄_{k2,g2,δ}`.
pub fn image_stratum_of_lambda(k1: u32, g1: u32, k2: u32, g2: u32, delta: u32) -> Result<StratumDescriptor> {
    if delta == 0 || delta > k1.min(k2) {
        return Err(Error::pre(format!("δ = {delta} marked points do not fit in one fiber of degree {}", k1.min(k2))));
    }
    let b1 = (2 * g1 + 2 * k1 - 2) as usize;
    let b2 = (2 * g2 + 2 * k2 - 2) as usize;
    Ok(StratumDescriptor::delta1(b1.min(b2), b1 + b2))
}

/// Parameters `(k1, g1, k2, g2, δ)` with `g_i >= 2` whose `λ` image is
/// `Δ^{1,ℓ}` of `H̄_{k,g}`, searching `δ <= max_delta`.
pub fn lambda_witness(k: u32, g: u32, l: u32, max_delta: u32) -> Option<(u32, u32, u32, u32, u32)> {
    if !l.is_multiple_of(2) {
        return None;
    }
    for delta in 1..=max_delta {
        for k1 in 1..k + delta {
            let k2 = k + delta - k1;
            if delta > k1.min(k2) {
                continue;
            }
            let twice_g1 = l as i64 + 2 - 2 * k1 as i64;
            if twice_g1 < 4 {
                continue;
            }
            let g1 = (twice_g1 / 2) as u32;
            let g2 = g as i64 - g1 as i64 - delta as i64 + 1;
            if g2 < 2 {
                continue;
            }
            return Some((k1, g1, k2, g2 as u32, delta));
        }
    }
    None
}

/// The dimension inequalities showing that general curves in the images of
/// `φ`, `ψ` and `λ` have no smaller gonality, evaluated as integers.
/// Returns the first violated inequality, if any.
pub fn image_dimension_checks(k: u32, g: u32) -> Option<String> {
    let phi_dim = pointed_hurwitz_dim(k, g, 2);
    if phi_dim != 2 * g as i64 + 2 * k as i64 - 3 {
        return Some(format!("dim H_{{{k},{g},1,1}} = {phi_dim}"));
    }
    for r in 1..=k {
        let d = hurwitz_dim(r, g + 1);
        // Then its boundary divisors, of dimension d - 1, lie strictly below.
        if d > phi_dim {
            return Some(format!("φ: dim H_{{{r},{}}} = {d} vs {phi_dim}", g + 1));
        }
    }
    let psi_dim = pointed_hurwitz_dim(k, g, 1);
    for r in 1..k {
        let d = hurwitz_dim(r, g + 1);
        if d != 2 * g as i64 + 2 * r as i64 - 3 || d > 2 * g as i64 + 2 * k as i64 - 5 || d >= psi_dim {
            return Some(format!("ψ: dim H_{{{r},{}}} = {d} vs {psi_dim}", g + 1));
        }
    }
    None
}

/// Same for `λ` with parameters `(k1, g1)`, `(k2, g2)` and `δ`.
pub fn lambda_dimension_check(k1: u32, g1: u32, k2: u32, g2: u32, delta: u32) -> Option<String> {
    let source = pointed_hurwitz_dim(k1, g1, 1) + pointed_hurwitz_dim(k2, g2, 1);
    let gs = (g1 + g2) as i64;
    let ks = (k1 + k2) as i64;
    if source != 2 * gs + 2 * ks - 8 {
        return Some(format!("λ source dimension {source}"));
    }
    let k = k1 + k2;
    if k <= delta {
        return None;
    }
    for r in 1..k - delta {
        let d = hurwitz_dim(r, g1 + g2 + delta - 1);
        if d > 2 * gs + 2 * ks - 9 || d >= source {
            return Some(format!("λ: dim H_{{{r},{}}} = {d} vs {source}", g1 + g2 + delta - 1));
        }
    }
    None
}

/// Outcome of pushing a sample of inputs through a gluing map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub samples: usize,
    pub distinct_inputs: usize,
    pub distinct_outputs: usize,
    /// Index pairs of non-isomorphic inputs with isomorphic outputs.
    pub collisions: Vec<(usize, usize)>,
}

/// Compares isomorphism classes of inputs and of their images under `map`.
pub fn sampled_injectivity<I>(
    inputs: &[I],
    input_form: impl Fn(&I) -> CanonicalForm,
    map: impl Fn(&I) -> Result<AdmissibleCover>,
) -> Result<InjectivityReport> {
    let mut first_input: BTreeMap<CanonicalForm, usize> = BTreeMap::new();
    let mut by_output: BTreeMap<CanonicalForm, Vec<(usize, CanonicalForm)>> = BTreeMap::new();
    for (i, x) in inputs.iter().enumerate() {
        let f = input_form(x);
        if first_input.contains_key(&f) {
            continue;
        }
        first_input.insert(f.clone(), i);
        by_output.entry(map(x)?.canonical_form()).or_default().push((i, f));
    }
    let mut collisions = Vec::new();
    for class in by_output.values() {
        for w in class.windows(2) {
            collisions.push((w[0].0, w[1].0));
        }
    }
    Ok(InjectivityReport {
        samples: inputs.len(),
        distinct_inputs: first_input.len(),
        distinct_outputs: by_output.len(),
        collisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_examples() {
        assert_eq!(hurwitz_dim(3, 2), 5);
        assert_eq!(pointed_hurwitz_dim(3, 2, 2), 7);
        assert_eq!(pointed_hurwitz_dim(3, 2, 2), 2 * 2 + 2 * 3 - 3);
    }

    #[test]
    fn delta1_range() {
        assert_eq!(delta1_components(8).unwrap(), vec![2, 3, 4]);
        assert!(delta1_components(7).is_err());
    }

    #[test]
    fn lambda_stratum_formula() {
        let d = image_stratum_of_lambda(2, 1, 2, 1, 1).unwrap();
        assert_eq!(d, StratumDescriptor::delta1(4, 8));
        assert_eq!(d.counts, vec![4, 4]);
    }

    #[test]
    fn chain_orientation_and_containment() {
        assert_eq!(StratumDescriptor::delta2(4, 1, 2).counts, vec![2, 1, 4]);
        assert_eq!(StratumDescriptor::delta1(5, 7).counts, vec![2, 5]);
        let fine = StratumDescriptor::delta2(2, 6, 2);
        assert!(fine.lies_in(&StratumDescriptor::delta1(2, 10)));
        assert!(!fine.lies_in(&StratumDescriptor::delta1(3, 10)));
        assert!(fine.lies_in(&StratumDescriptor::interior(10)));
        assert!(!StratumDescriptor::delta2(1, 6, 3).is_stable_arrangement());
    }

    #[test]
    fn witnesses_solve_the_parameter_equations() {
        for k in 2..8u32 {
            for g in 2..8u32 {
                let b = 2 * g + 2 * k - 2;
                for l in delta1_components(b).unwrap() {
                    if let Some((k1, g1, k2, g2, d)) = lambda_witness(k, g, l, 8) {
                        assert_eq!(k1 + k2 - d, k);
                        assert_eq!(g1 + g2 + d - 1, g);
                        assert_eq!(2 * g1 + 2 * k1 - 2, l);
                        assert_eq!(image_stratum_of_lambda(k1, g1, k2, g2, d).unwrap(), StratumDescriptor::delta1(l as usize, b as usize));
                    }
                }
            }
        }
    }
}
