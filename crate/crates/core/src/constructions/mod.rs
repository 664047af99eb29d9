//! Gluing constructions producing admissible covers of nodal curves from
//! covers of their normalizations or subcurves.
//!
//! Every construction takes covers passing relaxed validation, performs the
//! surgery, and returns a cover passing strict validation together with a
//! [`GluingReport`]. Fresh ids are generated deterministically.

mod descriptor;
mod surgery;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cover::{AdmissibleCover, Mode};
use crate::error::{Error, Result};
pub use descriptor::Construction;
use surgery::{Expansion, FiberPoint, Surgery};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingReport {
    pub output: AdmissibleCover,
    pub added_source_vertices: Vec<String>,
    pub added_target_vertices: Vec<String>,
    pub new_branch_legs: Vec<String>,
    /// Output minus the summed inputs.
    pub degree_delta: i64,
    pub genus_delta: i64,
    pub branch_delta: i64,
}

/// A marked point of one of several input covers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LegRef {
    pub cover: usize,
    pub leg: String,
}

impl LegRef {
    pub fn new(cover: usize, leg: impl Into<String>) -> Self {
        Self { cover, leg: leg.into() }
    }
}

fn require_relaxed(cov: &AdmissibleCover, what: &str) -> Result<()> {
    let rep = cov.validate(Mode::Relaxed);
    if rep.valid {
        Ok(())
    } else {
        let first = &rep.failures[0];
        Err(Error::InvalidCover(format!(
            "{what} fails relaxed validation: {}: {}",
            first.location, first.message
        )))
    }
}

fn require_strict(cov: &AdmissibleCover, op: &str) -> Result<()> {
    let rep = cov.validate(Mode::Strict);
    if rep.valid {
        Ok(())
    } else {
        let first = &rep.failures[0];
        Err(Error::pre(format!(
            "{op} output is not admissible: {}: {}",
            first.location, first.message
        )))
    }
}

fn report(inputs: &[&AdmissibleCover], output: AdmissibleCover) -> Result<GluingReport> {
    let mut old_source = BTreeSet::new();
    let mut old_target = BTreeSet::new();
    let mut old_legs = BTreeSet::new();
    let (mut k, mut g, mut b) = (0i64, 0i64, 0i64);
    for c in inputs {
        old_source.extend(c.source.vertices.iter().map(|v| v.id.clone()));
        old_target.extend(c.target.curve.vertices.iter().map(|v| v.id.clone()));
        old_legs.extend(c.target.curve.legs.iter().map(|l| l.label.clone()));
        k += c.degree as i64;
        g += c.genus_of_source()? as i64;
        b += c.weighted_branch_count() as i64;
    }
    let fresh = |ids: Vec<&String>, old: &BTreeSet<String>| -> Vec<String> {
        ids.into_iter().filter(|x| !old.contains(*x)).cloned().collect()
    };
    Ok(GluingReport {
        added_source_vertices: fresh(output.source.vertices.iter().map(|v| &v.id).collect(), &old_source),
        added_target_vertices: fresh(
            output.target.curve.vertices.iter().map(|v| &v.id).collect(),
            &old_target,
        ),
        new_branch_legs: fresh(output.target.branch_legs().map(|l| &l.label).collect(), &old_legs),
        degree_delta: output.degree as i64 - k,
        genus_delta: output.genus_of_source()? as i64 - g,
        branch_delta: output.weighted_branch_count() as i64 - b,
        output,
    })
}

fn take_point(x: &mut Expansion, leg: &str) -> FiberPoint {
    let i = x
        .fiber
        .iter()
        .position(|p| p.marks.iter().any(|m| m == leg))
        .expect("marked point lies in the fiber of its image");
    let mut p = x.fiber.remove(i);
    p.marks.retain(|m| m != leg);
    p
}

/// Nodes two marked points with distinct images; degree and genus go up by one.
pub fn glue_nonsep_distinct(cov: &AdmissibleCover, n1: &str, n2: &str) -> Result<GluingReport> {
    require_relaxed(cov, "input cover")?;
    let out = glue_distinct_raw(cov, n1, n2)?;
    require_strict(&out, "glue_nonsep_distinct")?;
    report(&[cov], out)
}

fn glue_distinct_raw(cov: &AdmissibleCover, n1: &str, n2: &str) -> Result<AdmissibleCover> {
    if n1 == n2 {
        return Err(Error::pre("the two branches must be distinct marked points"));
    }
    let mut s = Surgery::new(cov.clone(), "ga");
    let q1 = s.image_of(n1)?;
    let q2 = s.image_of(n2)?;
    if q1 == q2 {
        return Err(Error::pre(format!(
            "`{n1}` and `{n2}` have the same image `{q1}`; use glue_nonsep_equal"
        )));
    }
    s.cov.degree += 1;
    let tree: BTreeSet<String> = s.cov.target.curve.vertices.iter().map(|v| v.id.clone()).collect();
    let mut x1 = s.expand(&q1, None)?;
    let mut x2 = s.expand(&q2, None)?;
    let copy = s.copy_tree(&tree);
    for (x, n) in [(&mut x1, n1), (&mut x2, n2)] {
        let p = take_point(x, n);
        let c = s.add_vertex("I", &x.component, p.part + 1);
        s.add_edge(&p.vertex, &c, &x.edge, p.part);
        s.add_edge(&copy[&x.base], &c, &x.edge, 1);
        s.add_branch_points(&c, &x.component, p.part + 1);
        for rest in x.fiber.clone() {
            s.tail(&rest, &x.component, &x.edge);
        }
    }
    s.consume(&[n1.to_string(), n2.to_string()]);
    s.finish()
}

/// Nodes two marked points with the same image; degree unchanged, genus +1.
pub fn glue_nonsep_equal(cov: &AdmissibleCover, n1: &str, n2: &str) -> Result<GluingReport> {
    require_relaxed(cov, "input cover")?;
    let out = glue_equal_raw(cov, n1, n2)?;
    require_strict(&out, "glue_nonsep_equal")?;
    report(&[cov], out)
}

fn glue_equal_raw(cov: &AdmissibleCover, n1: &str, n2: &str) -> Result<AdmissibleCover> {
    if n1 == n2 {
        return Err(Error::pre("the two branches must be distinct marked points"));
    }
    let mut s = Surgery::new(cov.clone(), "gb");
    let q = s.image_of(n1)?;
    let q2 = s.image_of(n2)?;
    if q != q2 {
        return Err(Error::pre(format!(
            "`{n1}` and `{n2}` have distinct images `{q}`, `{q2}`; use glue_nonsep_distinct"
        )));
    }
    let mut x = s.expand(&q, None)?;
    let p1 = take_point(&mut x, n1);
    let p2 = take_point(&mut x, n2);
    if p1.part + p2.part > s.cov.degree {
        return Err(Error::pre("ramification at the two branches exceeds the degree"));
    }
    let c = s.add_vertex("R", &x.component, p1.part + p2.part);
    s.add_edge(&p1.vertex, &c, &x.edge, p1.part);
    s.add_edge(&p2.vertex, &c, &x.edge, p2.part);
    s.add_branch_points(&c, &x.component, p1.part + p2.part);
    for rest in x.fiber.clone() {
        s.tail(&rest, &x.component, &x.edge);
    }
    s.consume(&[n1.to_string(), n2.to_string()]);
    s.finish()
}

/// Number of node-branch pairs with distinct images.
pub fn distinct_image_count(cov: &AdmissibleCover, pairs: &[(String, String)]) -> Result<usize> {
    let image = |l: &str| {
        cov.marks.get(l).map(|m| m.image.clone()).ok_or_else(|| Error::UnknownLeg(l.into()))
    };
    let mut n = 0;
    for (a, b) in pairs {
        if image(a)? != image(b)? {
            n += 1;
        }
    }
    Ok(n)
}

/// Cover of an irreducible nodal curve from a cover of its normalization:
/// pairs with distinct images are glued first, then the rest. The output
/// degree is `k + ε` with `ε` the number of distinct-image pairs.
pub fn irreducible_from_normalization(
    pi: &AdmissibleCover,
    pairs: &[(String, String)],
) -> Result<GluingReport> {
    require_relaxed(pi, "normalization cover")?;
    if pairs.is_empty() {
        return Err(Error::pre("no node-branch pairs given"));
    }
    let image = |c: &AdmissibleCover, l: &str| c.marks.get(l).map(|m| m.image.clone());
    let (distinct, equal): (Vec<_>, Vec<_>) =
        pairs.iter().partition(|(a, b)| image(pi, a) != image(pi, b));
    let mut cur = pi.clone();
    for (a, b) in distinct.iter().chain(equal.iter()) {
        cur = if image(&cur, a) != image(&cur, b) {
            glue_distinct_raw(&cur, a, b)?
        } else {
            glue_equal_raw(&cur, a, b)?
        };
    }
    require_strict(&cur, "irreducible_from_normalization")?;
    report(&[pi], cur)
}

/// Renames every cover's ids apart when any two of them clash.
fn disjoint(covers: &[AdmissibleCover]) -> (Vec<AdmissibleCover>, bool) {
    let mut seen = BTreeSet::new();
    let mut clash = false;
    for c in covers {
        for id in c.all_ids() {
            if !seen.insert(id) {
                clash = true;
            }
        }
    }
    if !clash {
        return (covers.to_vec(), false);
    }
    let out = covers
        .iter()
        .enumerate()
        .map(|(i, c)| c.renamed(|x| format!("c{i}.{x}")))
        .collect();
    (out, true)
}

fn leg_name(prefixed: bool, r: &LegRef) -> String {
    if prefixed {
        format!("c{}.{}", r.cover, r.leg)
    } else {
        r.leg.clone()
    }
}

fn union(covers: &[AdmissibleCover], degree: u32) -> AdmissibleCover {
    let mut u = covers[0].clone();
    u.degree = degree;
    for c in &covers[1..] {
        u.source.vertices.extend(c.source.vertices.iter().cloned());
        u.source.edges.extend(c.source.edges.iter().cloned());
        u.source.legs.extend(c.source.legs.iter().cloned());
        u.target.curve.vertices.extend(c.target.curve.vertices.iter().cloned());
        u.target.curve.edges.extend(c.target.curve.edges.iter().cloned());
        u.target.curve.legs.extend(c.target.curve.legs.iter().cloned());
        u.target.anchors.extend(c.target.anchors.iter().cloned());
        u.vmap.extend(c.vmap.clone());
        u.degrees.extend(c.degrees.clone());
        u.edge_ram.extend(c.edge_ram.clone());
        u.profiles.extend(c.profiles.iter().cloned());
        u.marks.extend(c.marks.clone());
    }
    u
}

fn check_connected(r: usize, pairs: &[(usize, usize)]) -> Result<()> {
    let mut reach = BTreeSet::from([0usize]);
    loop {
        let before = reach.len();
        for &(a, b) in pairs {
            if reach.contains(&a) || reach.contains(&b) {
                reach.insert(a);
                reach.insert(b);
            }
        }
        if reach.len() == before {
            break;
        }
    }
    if reach.len() == r {
        Ok(())
    } else {
        Err(Error::pre("the pairing does not connect all subcurves"))
    }
}

/// Joins covers of subcurves along nodes between them. Within each cover
/// all paired marked points must share one image. Output degree is
/// `Σk_i − δ` where `δ` is the number of pairs.
pub fn join_subcurve_covers(
    covers: &[AdmissibleCover],
    pairs: &[(LegRef, LegRef)],
) -> Result<GluingReport> {
    for (i, c) in covers.iter().enumerate() {
        require_relaxed(c, &format!("cover {i}"))?;
    }
    let (out, inputs, _) = join_raw(covers, pairs)?;
    require_strict(&out, "join_subcurve_covers")?;
    report(&inputs.iter().collect::<Vec<_>>(), out)
}

fn join_raw(
    covers: &[AdmissibleCover],
    pairs: &[(LegRef, LegRef)],
) -> Result<(AdmissibleCover, Vec<AdmissibleCover>, bool)> {
    let r = covers.len();
    if r < 2 {
        return Err(Error::pre("joining needs at least two covers"));
    }
    if pairs.is_empty() {
        return Err(Error::pre("no nodes to join along"));
    }
    let mut used = BTreeSet::new();
    for (a, b) in pairs {
        for x in [a, b] {
            if x.cover >= r {
                return Err(Error::pre(format!("no cover with index {}", x.cover)));
            }
            if !used.insert(x.clone()) {
                return Err(Error::pre(format!("marked point `{}` is paired twice", x.leg)));
            }
            if covers[x.cover].source.leg(&x.leg).is_none() {
                return Err(Error::UnknownLeg(x.leg.clone()));
            }
        }
        if a.cover == b.cover {
            return Err(Error::pre(format!(
                "`{}` and `{}` lie on the same subcurve",
                a.leg, b.leg
            )));
        }
    }
    check_connected(r, &pairs.iter().map(|(a, b)| (a.cover, b.cover)).collect::<Vec<_>>())?;
    let mut q: Vec<Option<String>> = vec![None; r];
    for x in &used {
        let img = covers[x.cover].marks.get(&x.leg).map(|m| m.image.clone());
        let Some(img) = img else {
            return Err(Error::pre(format!("marked point `{}` has no image", x.leg)));
        };
        match &q[x.cover] {
            None => q[x.cover] = Some(img),
            Some(prev) if *prev != img => {
                return Err(Error::pre(format!(
                    "not all distinguished legs of cover {} share an image",
                    x.cover
                )))
            }
            _ => {}
        }
    }
    let (inputs, prefixed) = disjoint(covers);
    let q: Vec<String> = q
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            let x = x.expect("every cover is paired");
            if prefixed {
                format!("c{i}.{x}")
            } else {
                x
            }
        })
        .collect();
    let k_sum: u32 = inputs.iter().map(|c| c.degree).sum();
    let delta = pairs.len() as u32;
    if k_sum <= delta {
        return Err(Error::pre("degree would not be positive"));
    }
    let trees: Vec<BTreeSet<String>> = inputs
        .iter()
        .map(|c| c.target.curve.vertices.iter().map(|v| v.id.clone()).collect())
        .collect();
    let mut s = Surgery::new(union(&inputs, k_sum - delta), "jn");
    let hub = s.fresh("H");
    s.cov.target.curve.add_vertex(hub.clone(), 0);
    let mut xs = Vec::with_capacity(r);
    for qi in &q {
        xs.push(s.expand(qi, Some(&hub))?);
    }
    let secondaries = |s: &mut Surgery, xs: &[Expansion], x: &str, side: usize, count: u32| {
        for _ in 0..count {
            let copy = s.copy_tree(&trees[side]);
            s.add_edge(&copy[&xs[side].base], x, &xs[side].edge, 1);
        }
    };
    let mut consumed = Vec::new();
    for (a, b) in pairs {
        let (na, nb) = (leg_name(prefixed, a), leg_name(prefixed, b));
        let pa = take_point(&mut xs[a.cover], &na);
        let pb = take_point(&mut xs[b.cover], &nb);
        let d = pa.part + pb.part - 1;
        let x = s.add_vertex("X", &hub, d);
        s.add_edge(&pa.vertex, &x, &xs[a.cover].edge, pa.part);
        s.add_edge(&pb.vertex, &x, &xs[b.cover].edge, pb.part);
        s.add_branch_points(&x, &hub, d - 1);
        for side in 0..r {
            let count = if side == a.cover {
                d - pa.part
            } else if side == b.cover {
                d - pb.part
            } else {
                d
            };
            secondaries(&mut s, &xs, &x, side, count);
        }
        consumed.push(na);
        consumed.push(nb);
    }
    for i in 0..r {
        for p in xs[i].fiber.clone() {
            let t = s.tail(&p, &hub, &xs[i].edge);
            for side in (0..r).filter(|&s| s != i) {
                secondaries(&mut s, &xs, &t, side, p.part);
            }
        }
    }
    s.consume(&consumed);
    Ok((s.finish()?, inputs, prefixed))
}

/// Two-sided gluing along `δ` nodes: the pairs whose branches map to the
/// images of the first pair are joined, the others glued one by one.
pub fn mixed_two_sided(
    cov1: &AdmissibleCover,
    cov2: &AdmissibleCover,
    pairs: &[(String, String)],
) -> Result<GluingReport> {
    require_relaxed(cov1, "cover 1")?;
    require_relaxed(cov2, "cover 2")?;
    if pairs.is_empty() {
        return Err(Error::pre("no nodes given"));
    }
    let image = |c: &AdmissibleCover, l: &str| {
        c.marks.get(l).map(|m| m.image.clone()).ok_or_else(|| Error::UnknownLeg(l.into()))
    };
    let q1 = image(cov1, &pairs[0].0)?;
    let q2 = image(cov2, &pairs[0].1)?;
    let mut joined = Vec::new();
    let mut rest = Vec::new();
    for (a, b) in pairs {
        if image(cov1, a)? == q1 && image(cov2, b)? == q2 {
            joined.push((LegRef::new(0, a), LegRef::new(1, b)));
        } else {
            rest.push((a, b));
        }
    }
    if joined.is_empty() {
        return Err(Error::pre("no pair has both branches over the first pair's images"));
    }
    let (mut cur, inputs, prefixed) = join_raw(&[cov1.clone(), cov2.clone()], &joined)?;
    for (a, b) in rest {
        let a = leg_name(prefixed, &LegRef::new(0, a.clone()));
        let b = leg_name(prefixed, &LegRef::new(1, b.clone()));
        cur = glue_distinct_raw(&cur, &a, &b)?;
    }
    require_strict(&cur, "mixed_two_sided")?;
    report(&inputs.iter().collect::<Vec<_>>(), cur)
}

/// A node between two smooth components mapping to one common line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommonNode {
    pub first: LegRef,
    pub second: LegRef,
}

/// Glues maps of smooth components to one shared line. Target legs with
/// the same label in different inputs denote the same point. Each node's
/// two branches must share an image and different nodes must have
/// different images. Output degree is the sum of the degrees.
pub fn common_target_join(maps: &[AdmissibleCover], nodes: &[CommonNode]) -> Result<GluingReport> {
    if maps.is_empty() {
        return Err(Error::pre("no component maps given"));
    }
    for (i, m) in maps.iter().enumerate() {
        require_relaxed(m, &format!("map {i}"))?;
        if m.source.vertices.len() != 1 || m.target.curve.vertices.len() != 1 {
            return Err(Error::pre(format!("map {i} is not a map of a smooth curve to a line")));
        }
    }
    let image = |r: &LegRef| -> Result<String> {
        let m = maps.get(r.cover).ok_or_else(|| Error::pre(format!("no map {}", r.cover)))?;
        m.marks.get(&r.leg).map(|x| x.image.clone()).ok_or_else(|| Error::UnknownLeg(r.leg.clone()))
    };
    let mut images = BTreeMap::new();
    for (j, n) in nodes.iter().enumerate() {
        let (a, b) = (image(&n.first)?, image(&n.second)?);
        if a != b {
            return Err(Error::pre(format!(
                "node {j}: branches `{}` and `{}` have different images",
                n.first.leg, n.second.leg
            )));
        }
        if let Some(other) = images.insert(a.clone(), j) {
            return Err(Error::pre(format!("nodes {other} and {j} have the same image `{a}`")));
        }
    }
    if maps.len() > 1 {
        check_connected(
            maps.len(),
            &nodes.iter().map(|n| (n.first.cover, n.second.cover)).collect::<Vec<_>>(),
        )?;
    }
    let line = maps[0].target.curve.vertices[0].id.clone();
    let mut owned: Vec<AdmissibleCover> = Vec::new();
    let mut taken = BTreeSet::new();
    let mut prefixed = false;
    for m in maps {
        for v in m.source.vertices.iter().map(|v| &v.id).chain(m.source.legs.iter().map(|l| &l.label)) {
            if !taken.insert(v.clone()) {
                prefixed = true;
            }
        }
    }
    for (i, m) in maps.iter().enumerate() {
        let t = m.target.curve.vertices[0].id.clone();
        let target_ids: BTreeSet<String> = m.target.curve.legs.iter().map(|l| l.label.clone()).collect();
        let renamed = m.renamed(|x| {
            if x == t {
                line.clone()
            } else if target_ids.contains(x) || !prefixed {
                x.to_string()
            } else {
                format!("c{i}.{x}")
            }
        });
        owned.push(renamed);
    }
    let k: u32 = owned.iter().map(|c| c.degree).sum();
    let mut u = union(&owned, k);
    u.target.curve.vertices.truncate(1);
    let mut seen = BTreeSet::new();
    u.target.curve.legs.retain(|l| seen.insert(l.label.clone()));
    let mut s = Surgery::new(u, "ct");
    let mut consumed = Vec::new();
    for n in nodes {
        let (a, b) = (leg_name(prefixed, &n.first), leg_name(prefixed, &n.second));
        let q = s.image_of(&a)?;
        let mut x = s.expand(&q, None)?;
        let pa = take_point(&mut x, &a);
        let pb = take_point(&mut x, &b);
        let c = s.add_vertex("R", &x.component, pa.part + pb.part);
        s.add_edge(&pa.vertex, &c, &x.edge, pa.part);
        s.add_edge(&pb.vertex, &c, &x.edge, pb.part);
        s.add_branch_points(&c, &x.component, pa.part + pb.part);
        for rest in x.fiber.clone() {
            s.tail(&rest, &x.component, &x.edge);
        }
        consumed.push(a);
        consumed.push(b);
    }
    s.consume(&consumed);
    let out = s.finish()?;
    require_strict(&out, "common_target_join")?;
    report(&owned.iter().collect::<Vec<_>>(), out)
}

/// `[k̃, k̃ + δ]`.
pub fn gonality_interval_irreducible(ktilde: u32, delta: u32) -> Result<(i64, i64)> {
    if ktilde == 0 {
        return Err(Error::pre("gonality must be positive"));
    }
    Ok((ktilde as i64, ktilde as i64 + delta as i64))
}

/// `[Σk_i − δ, Σk_i + δ − 1]`, as stated, without clamping.
pub fn gonality_interval_components(ks: &[u32], delta: u32) -> Result<(i64, i64)> {
    if ks.is_empty() || ks.contains(&0) {
        return Err(Error::pre("component gonalities must be positive"));
    }
    if delta == 0 {
        return Err(Error::pre("the component form needs at least one external node"));
    }
    let sum: i64 = ks.iter().map(|&k| k as i64).sum();
    Ok((sum - delta as i64, sum + delta as i64 - 1))
}
