//! Combinatorial admissible covers and their validation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::CurveGraph;
use crate::error::{Error, Result};

/// A genus-0 tree of rational components. Legs are branch points unless
/// listed in `anchors`, in which case they are unramified images of source
/// marked points.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetTree {
    #[serde(flatten)]
    pub curve: CurveGraph,
    #[serde(default)]
    pub anchors: BTreeSet<String>,
}

impl TargetTree {
    pub fn is_anchor(&self, leg: &str) -> bool {
        self.anchors.contains(leg)
    }

    pub fn branch_legs(&self) -> impl Iterator<Item = &crate::curve::Leg> {
        self.curve.legs.iter().filter(|l| !self.anchors.contains(&l.label))
    }

    /// Special points on target vertex `w`.
    pub fn special_points(&self, w: &str) -> Vec<TargetPoint> {
        let mut pts: Vec<TargetPoint> = self
            .curve
            .edges
            .iter()
            .filter(|e| e.ends[0] == w || e.ends[1] == w)
            .map(|e| TargetPoint::Node(e.id.clone()))
            .collect();
        pts.extend(
            self.curve
                .legs
                .iter()
                .filter(|l| l.at == w)
                .map(|l| TargetPoint::Leg(l.label.clone())),
        );
        pts
    }
}

/// A special point of a target component: a node (by target edge id, the
/// component being implied) or a leg.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "id", rename_all = "lowercase")]
pub enum TargetPoint {
    Node(String),
    Leg(String),
}

impl fmt::Display for TargetPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetPoint::Node(e) => write!(f, "node {e}"),
            TargetPoint::Leg(l) => write!(f, "point {l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRam {
    pub target: String,
    pub ram: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub vertex: String,
    pub point: TargetPoint,
    pub parts: Vec<u32>,
}

/// Image of a source marked point: a target leg and the ramification index there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mark {
    pub image: String,
    pub ram: u32,
}

/// `cover.json`: the source graph fields sit at the top level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleCover {
    #[serde(flatten)]
    pub source: CurveGraph,
    pub target: TargetTree,
    pub degree: u32,
    pub vmap: BTreeMap<String, String>,
    pub degrees: BTreeMap<String, u32>,
    #[serde(default)]
    pub edge_ram: BTreeMap<String, EdgeRam>,
    #[serde(default)]
    pub profiles: Vec<Profile>,
    #[serde(default)]
    pub marks: BTreeMap<String, Mark>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Structure,
    FiberSumVertex,
    FiberSumEdge,
    /// Nodes map to nodes.
    NodesOverNodes,
    /// Unramified away from nodes and branch points.
    Unramified,
    /// Simple branching over each branch point.
    SimpleBranching,
    /// Equal ramification on both branches of a node.
    NodeBalance,
    Profile,
    LocalRiemannHurwitz,
    Marks,
    TargetStability,
    BranchCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub condition: Condition,
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    fn fail(&mut self, condition: Condition, location: impl Into<String>, message: impl Into<String>) {
        self.failures.push(Failure {
            condition,
            location: location.into(),
            message: message.into(),
        });
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.failures.iter().any(|f| f.condition == condition)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return writeln!(f, "valid");
        }
        writeln!(f, "invalid:")?;
        for x in &self.failures {
            writeln!(f, "  [{:?}] {}: {}", x.condition, x.location, x.message)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Strict,
    /// Skips simple branching and target stability.
    Relaxed,
}

pub(crate) fn sorted(mut parts: Vec<u32>) -> Vec<u32> {
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

fn excess(parts: &[u32]) -> i64 {
    parts.iter().map(|&m| m as i64 - 1).sum()
}

/// Induced data on a union of source components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Restriction {
    pub vertices: BTreeMap<String, RestrictedVertex>,
    /// Edges with both ends in the subcurve: (target edge, ramification).
    pub edges: BTreeMap<String, (String, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedVertex {
    pub genus: u32,
    pub image: String,
    pub degree: u32,
    /// Non-trivial profiles, each sorted, as a sorted list.
    pub ramification: Vec<Vec<u32>>,
}

impl AdmissibleCover {
    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cover serializes")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn genus_of_source(&self) -> Result<u32> {
        self.source.arithmetic_genus()
    }

    /// Number of branch legs; in strict mode it must equal `2g + 2k - 2`.
    pub fn branch_count(&self, mode: Mode) -> Result<u32> {
        let b = self.target.branch_legs().count() as u32;
        if mode == Mode::Strict {
            let g = self.genus_of_source()?;
            let expected = 2 * g + 2 * self.degree - 2;
            if b != expected {
                return Err(Error::InvalidCover(format!(
                    "{b} branch points but 2g+2k-2 = {expected}"
                )));
            }
        }
        Ok(b)
    }

    /// `sum (m - 1)` over all profiles above branch legs.
    pub fn weighted_branch_count(&self) -> u32 {
        self.profiles
            .iter()
            .filter(|p| matches!(&p.point, TargetPoint::Leg(l) if !self.target.is_anchor(l)))
            .map(|p| excess(&p.parts) as u32)
            .sum()
    }

    pub fn profile(&self, vertex: &str, point: &TargetPoint) -> Option<&[u32]> {
        self.profiles
            .iter()
            .find(|p| p.vertex == vertex && &p.point == point)
            .map(|p| p.parts.as_slice())
    }

    /// Source vertices over target vertex `w`, in source order.
    pub fn fiber(&self, w: &str) -> Vec<&str> {
        self.source
            .vertices
            .iter()
            .filter(|v| self.vmap.get(&v.id).map(String::as_str) == Some(w))
            .map(|v| v.id.as_str())
            .collect()
    }

    /// Ramification of the source edges at `v` lying over target edge `f`.
    pub fn node_parts(&self, v: &str, f: &str) -> Vec<u32> {
        let mut parts = Vec::new();
        for e in &self.source.edges {
            let Some(r) = self.edge_ram.get(&e.id) else { continue };
            if r.target != f {
                continue;
            }
            for end in &e.ends {
                if end == v {
                    parts.push(r.ram);
                }
            }
        }
        sorted(parts)
    }

    pub fn validate(&self, mode: Mode) -> ValidationReport {
        let mut rep = ValidationReport::default();
        self.check_shape(&mut rep);
        if rep.failures.is_empty() {
            self.check_fibers(&mut rep);
            self.check_profiles(mode, &mut rep);
            self.check_marks(mode, &mut rep);
            if mode == Mode::Strict {
                self.check_target_stability(&mut rep);
            }
            if rep.failures.is_empty() {
                self.check_global(mode, &mut rep);
            }
        }
        rep.valid = rep.failures.is_empty();
        rep
    }

    fn check_shape(&self, rep: &mut ValidationReport) {
        let s = &self.source;
        let t = &self.target.curve;
        if let Err(e) = s.check_structure() {
            rep.fail(Condition::Structure, "source", e.to_string());
        } else if !s.is_connected() {
            rep.fail(Condition::Structure, "source", "source graph is empty or disconnected");
        }
        if let Err(e) = t.check_structure() {
            rep.fail(Condition::Structure, "target", e.to_string());
            return;
        }
        if !t.is_connected() || t.edges.len() + 1 != t.vertices.len() {
            rep.fail(Condition::Structure, "target", "target is not a tree");
        }
        if let Some(v) = t.vertices.iter().find(|v| v.genus != 0) {
            rep.fail(Condition::Structure, format!("target vertex {}", v.id), "target components must be rational");
        }
        for a in &self.target.anchors {
            if t.leg(a).is_none() {
                rep.fail(Condition::Structure, format!("anchor {a}"), "anchor is not a target leg");
            }
        }
        if self.degree == 0 {
            rep.fail(Condition::Structure, "degree", "degree must be positive");
        }
        for v in &s.vertices {
            match self.vmap.get(&v.id) {
                None => rep.fail(Condition::Structure, format!("vertex {}", v.id), "missing from vmap"),
                Some(w) if t.vertex(w).is_none() => rep.fail(
                    Condition::Structure,
                    format!("vertex {}", v.id),
                    format!("maps to unknown target vertex `{w}`"),
                ),
                _ => {}
            }
            match self.degrees.get(&v.id) {
                None | Some(0) => rep.fail(
                    Condition::Structure,
                    format!("vertex {}", v.id),
                    "local degree missing or zero",
                ),
                _ => {}
            }
        }
        for key in self.vmap.keys().chain(self.degrees.keys()) {
            if s.vertex(key).is_none() {
                rep.fail(Condition::Structure, format!("vertex {key}"), "not a source vertex");
            }
        }
        for e in &s.edges {
            let Some(r) = self.edge_ram.get(&e.id) else {
                rep.fail(Condition::NodesOverNodes, format!("edge {}", e.id), "source node has no image node");
                continue;
            };
            if r.ram == 0 {
                rep.fail(Condition::Structure, format!("edge {}", e.id), "ramification index must be positive");
            }
            let Some(f) = t.edge(&r.target) else {
                rep.fail(
                    Condition::NodesOverNodes,
                    format!("edge {}", e.id),
                    format!("maps to unknown target node `{}`", r.target),
                );
                continue;
            };
            let (Some(a), Some(b)) = (self.vmap.get(&e.ends[0]), self.vmap.get(&e.ends[1])) else {
                continue;
            };
            let ok = (a == &f.ends[0] && b == &f.ends[1]) || (a == &f.ends[1] && b == &f.ends[0]);
            if !ok {
                rep.fail(
                    Condition::NodesOverNodes,
                    format!("edge {}", e.id),
                    format!("ends map to {a},{b} but target node {} joins {},{}", f.id, f.ends[0], f.ends[1]),
                );
            }
        }
        for key in self.edge_ram.keys() {
            if s.edge(key).is_none() {
                rep.fail(Condition::Structure, format!("edge {key}"), "not a source edge");
            }
        }
    }

    fn check_fibers(&self, rep: &mut ValidationReport) {
        let t = &self.target.curve;
        for w in &t.vertices {
            let sum: u32 = self.fiber(&w.id).iter().map(|v| self.degrees[*v]).sum();
            if sum != self.degree {
                rep.fail(
                    Condition::FiberSumVertex,
                    format!("target vertex {}", w.id),
                    format!("local degrees sum to {sum}, expected {}", self.degree),
                );
            }
        }
        for f in &t.edges {
            let sum: u32 = self.edge_ram.values().filter(|r| r.target == f.id).map(|r| r.ram).sum();
            if sum != self.degree {
                rep.fail(
                    Condition::FiberSumEdge,
                    format!("target node {}", f.id),
                    format!("ramification indices sum to {sum}, expected {}", self.degree),
                );
            }
        }
    }

    fn check_profiles(&self, mode: Mode, rep: &mut ValidationReport) {
        let mut seen = BTreeSet::new();
        for p in &self.profiles {
            if !seen.insert((p.vertex.as_str(), &p.point)) {
                rep.fail(Condition::Profile, format!("vertex {} at {}", p.vertex, p.point), "duplicate profile");
            }
            let Some(w) = self.vmap.get(&p.vertex) else {
                rep.fail(Condition::Profile, format!("vertex {}", p.vertex), "profile for unknown vertex");
                continue;
            };
            if !self.target.special_points(w).contains(&p.point) {
                rep.fail(
                    Condition::Profile,
                    format!("vertex {} at {}", p.vertex, p.point),
                    format!("not a special point of target vertex {w}"),
                );
            }
        }
        for v in &self.source.vertices {
            let w = &self.vmap[&v.id];
            let d = self.degrees[&v.id];
            let mut ramification = 0i64;
            for pt in self.target.special_points(w) {
                let loc = format!("vertex {} at {pt}", v.id);
                let Some(parts) = self.profile(&v.id, &pt) else {
                    rep.fail(Condition::Profile, loc, "missing ramification profile");
                    continue;
                };
                if parts.contains(&0) || parts.iter().sum::<u32>() != d {
                    rep.fail(Condition::Profile, loc, format!("{parts:?} is not a partition of {d}"));
                    continue;
                }
                ramification += excess(parts);
                match &pt {
                    TargetPoint::Node(f) => {
                        if sorted(parts.to_vec()) != self.node_parts(&v.id, f) {
                            rep.fail(
                                Condition::NodeBalance,
                                loc,
                                format!(
                                    "profile {parts:?} disagrees with node indices {:?}",
                                    self.node_parts(&v.id, f)
                                ),
                            );
                        }
                    }
                    TargetPoint::Leg(l) if self.target.is_anchor(l) => {
                        if parts.iter().any(|&m| m != 1) {
                            rep.fail(Condition::Unramified, loc, format!("ramified {parts:?} over an anchor"));
                        }
                    }
                    TargetPoint::Leg(_) => {}
                }
            }
            let lhs = 2 * v.genus as i64 - 2;
            let rhs = -2 * d as i64 + ramification;
            if lhs != rhs {
                let parity = if (lhs - rhs) % 2 != 0 { " (parity)" } else { "" };
                rep.fail(
                    Condition::LocalRiemannHurwitz,
                    format!("vertex {}", v.id),
                    format!("2g-2 = {lhs} but -2d + ramification = {rhs}{parity}"),
                );
            }
        }
        if mode == Mode::Strict {
            for leg in self.target.branch_legs() {
                let mut all = Vec::new();
                for v in self.fiber(&leg.at) {
                    if let Some(parts) = self.profile(v, &TargetPoint::Leg(leg.label.clone())) {
                        all.extend_from_slice(parts);
                    }
                }
                let all = sorted(all);
                if all.first() != Some(&2) || all.iter().skip(1).any(|&m| m != 1) {
                    rep.fail(
                        Condition::SimpleBranching,
                        format!("branch point {}", leg.label),
                        format!("fiber profile {all:?} is not simple branching"),
                    );
                }
            }
        }
    }

    fn check_marks(&self, mode: Mode, rep: &mut ValidationReport) {
        let mut used: BTreeMap<(&str, &str), Vec<u32>> = BTreeMap::new();
        for leg in &self.source.legs {
            let loc = format!("marked point {}", leg.label);
            let Some(m) = self.marks.get(&leg.label) else {
                rep.fail(Condition::Marks, loc, "marked point has no image");
                continue;
            };
            let Some(tl) = self.target.curve.leg(&m.image) else {
                rep.fail(Condition::Marks, loc, format!("image `{}` is not a target point", m.image));
                continue;
            };
            if self.vmap.get(&leg.at) != Some(&tl.at) {
                rep.fail(Condition::Marks, loc, format!("image `{}` is not on the image component", m.image));
                continue;
            }
            if mode == Mode::Strict && !self.target.is_anchor(&m.image) {
                rep.fail(Condition::Marks, loc, "marked point maps to a branch point");
            }
            used.entry((leg.at.as_str(), m.image.as_str())).or_default().push(m.ram);
        }
        for key in self.marks.keys() {
            if self.source.leg(key).is_none() {
                rep.fail(Condition::Marks, format!("marked point {key}"), "not a source leg");
            }
        }
        for ((v, image), rams) in used {
            let Some(parts) = self.profile(v, &TargetPoint::Leg(image.to_string())) else {
                continue;
            };
            let mut avail = parts.to_vec();
            for r in &rams {
                match avail.iter().position(|x| x == r) {
                    Some(i) => {
                        avail.swap_remove(i);
                    }
                    None => rep.fail(
                        Condition::Marks,
                        format!("vertex {v} at point {image}"),
                        format!("marked ramification {rams:?} does not fit profile {parts:?}"),
                    ),
                }
            }
        }
    }

    fn check_target_stability(&self, rep: &mut ValidationReport) {
        let t = &self.target.curve;
        let b = self.target.branch_legs().count();
        if t.vertices.len() == 1 && b < 3 {
            rep.fail(Condition::TargetStability, "target", format!("only {b} branch points"));
            return;
        }
        for w in &t.vertices {
            let special = t.half_edges(&w.id) + self.target.branch_legs().filter(|l| l.at == w.id).count();
            if special < 3 {
                rep.fail(
                    Condition::TargetStability,
                    format!("target vertex {}", w.id),
                    format!("{special} special points"),
                );
            }
        }
    }

    fn check_global(&self, mode: Mode, rep: &mut ValidationReport) {
        let g = match self.source.arithmetic_genus() {
            Ok(g) => g as i64,
            Err(e) => {
                rep.fail(Condition::Structure, "source", e.to_string());
                return;
            }
        };
        let expected = 2 * g + 2 * self.degree as i64 - 2;
        let weighted = self.weighted_branch_count() as i64;
        if weighted != expected {
            rep.fail(
                Condition::BranchCount,
                "cover",
                format!("total branching {weighted} differs from 2g+2k-2 = {expected}"),
            );
        }
        if mode == Mode::Strict {
            let b = self.target.branch_legs().count() as i64;
            if b != expected {
                rep.fail(
                    Condition::BranchCount,
                    "target",
                    format!("{b} branch points, expected 2g+2k-2 = {expected}"),
                );
            }
        }
    }

    /// Induced data on the source components `ids`.
    pub fn restrict(&self, ids: &BTreeSet<String>) -> Result<Restriction> {
        let mut vertices = BTreeMap::new();
        for id in ids {
            let v = self.source.vertex(id).ok_or_else(|| Error::UnknownVertex(id.clone()))?;
            let mut ramification: Vec<Vec<u32>> = self
                .profiles
                .iter()
                .filter(|p| &p.vertex == id && p.parts.iter().any(|&m| m > 1))
                .map(|p| sorted(p.parts.clone()))
                .collect();
            ramification.sort();
            vertices.insert(
                id.clone(),
                RestrictedVertex {
                    genus: v.genus,
                    image: self.vmap.get(id).cloned().unwrap_or_default(),
                    degree: self.degrees.get(id).copied().unwrap_or(0),
                    ramification,
                },
            );
        }
        let edges = self
            .source
            .edges
            .iter()
            .filter(|e| ids.contains(&e.ends[0]) && ids.contains(&e.ends[1]))
            .filter_map(|e| self.edge_ram.get(&e.id).map(|r| (e.id.clone(), (r.target.clone(), r.ram))))
            .collect();
        Ok(Restriction { vertices, edges })
    }

    pub fn restrict_all(&self) -> Restriction {
        let ids = self.source.vertices.iter().map(|v| v.id.clone()).collect();
        self.restrict(&ids).expect("own vertices")
    }

    /// True iff marked points coincide in image within each group and differ
    /// across groups.
    pub fn marked_point_check<S: AsRef<str>>(&self, groups: &[Vec<S>]) -> Result<bool> {
        let total: usize = groups.iter().map(Vec::len).sum();
        if total != self.source.legs.len() {
            return Err(Error::pre(format!(
                "grouping covers {total} marked points but the source has {}",
                self.source.legs.len()
            )));
        }
        let mut reps = Vec::new();
        for group in groups {
            let mut images = BTreeSet::new();
            for l in group {
                let m = self
                    .marks
                    .get(l.as_ref())
                    .ok_or_else(|| Error::UnknownLeg(l.as_ref().to_string()))?;
                images.insert(m.image.as_str());
            }
            if images.len() != 1 {
                return Ok(false);
            }
            reps.push(*images.iter().next().unwrap());
        }
        let distinct: BTreeSet<_> = reps.iter().collect();
        Ok(distinct.len() == reps.len())
    }

    /// Adds the all-ones profile for every (vertex, special point) pair that
    /// has none yet.
    pub fn fill_trivial_profiles(&mut self) {
        let mut have: BTreeSet<(String, TargetPoint)> =
            self.profiles.iter().map(|p| (p.vertex.clone(), p.point.clone())).collect();
        for v in &self.source.vertices {
            let Some(w) = self.vmap.get(&v.id) else { continue };
            let d = self.degrees.get(&v.id).copied().unwrap_or(0);
            for pt in self.target.special_points(w) {
                if have.insert((v.id.clone(), pt.clone())) {
                    let parts = match &pt {
                        TargetPoint::Node(f) => self.node_parts(&v.id, f),
                        TargetPoint::Leg(_) => vec![1; d as usize],
                    };
                    self.profiles.push(Profile { vertex: v.id.clone(), point: pt, parts });
                }
            }
        }
    }

    /// Sets (or replaces) a profile.
    pub fn set_profile(&mut self, vertex: &str, point: TargetPoint, parts: Vec<u32>) {
        let parts = sorted(parts);
        if let Some(p) = self.profiles.iter_mut().find(|p| p.vertex == vertex && p.point == point) {
            p.parts = parts;
        } else {
            self.profiles.push(Profile { vertex: vertex.to_string(), point, parts });
        }
    }

    /// Applies `f` to every id and label, in source and target alike.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> AdmissibleCover {
        let curve = |c: &CurveGraph| {
            let mut c = c.relabeled(&f, &f);
            for l in &mut c.legs {
                l.label = f(&l.label);
            }
            c
        };
        let point = |p: &TargetPoint| match p {
            TargetPoint::Node(e) => TargetPoint::Node(f(e)),
            TargetPoint::Leg(l) => TargetPoint::Leg(f(l)),
        };
        AdmissibleCover {
            source: curve(&self.source),
            target: TargetTree {
                curve: curve(&self.target.curve),
                anchors: self.target.anchors.iter().map(|a| f(a)).collect(),
            },
            degree: self.degree,
            vmap: self.vmap.iter().map(|(k, v)| (f(k), f(v))).collect(),
            degrees: self.degrees.iter().map(|(k, v)| (f(k), *v)).collect(),
            edge_ram: self
                .edge_ram
                .iter()
                .map(|(k, r)| (f(k), EdgeRam { target: f(&r.target), ram: r.ram }))
                .collect(),
            profiles: self
                .profiles
                .iter()
                .map(|p| Profile { vertex: f(&p.vertex), point: point(&p.point), parts: p.parts.clone() })
                .collect(),
            marks: self
                .marks
                .iter()
                .map(|(k, m)| (f(k), Mark { image: f(&m.image), ram: m.ram }))
                .collect(),
        }
    }

    /// Every id and label used anywhere in the cover.
    pub fn all_ids(&self) -> BTreeSet<String> {
        let mut ids = BTreeSet::new();
        for c in [&self.source, &self.target.curve] {
            ids.extend(c.vertices.iter().map(|v| v.id.clone()));
            ids.extend(c.edges.iter().map(|e| e.id.clone()));
            ids.extend(c.legs.iter().map(|l| l.label.clone()));
        }
        ids
    }

    pub fn is_valid(&self, mode: Mode) -> bool {
        self.validate(mode).valid
    }
}

impl AdmissibleCover {
    /// Label-free form of the whole cover: source, target and map together.
    /// Branch and anchor labels, edge ids and marked-point labels are ignored.
    pub fn canonical_form(&self) -> crate::canon::CanonicalForm {
        use crate::canon::ColoredGraph;
        let mut g = ColoredGraph::new();
        let mut node: BTreeMap<(u8, &str), usize> = BTreeMap::new();
        for w in &self.target.curve.vertices {
            node.insert((1, &w.id), g.add_vertex(vec![1]));
        }
        for v in &self.source.vertices {
            let d = self.degrees.get(&v.id).copied().unwrap_or(0);
            let x = g.add_vertex(vec![0, v.genus as i64, d as i64]);
            node.insert((0, &v.id), x);
            if let Some(w) = self.vmap.get(&v.id).and_then(|w| node.get(&(1, w.as_str()))) {
                g.add_edge(x, *w, vec![1]);
            }
        }
        for f in &self.target.curve.edges {
            let x = g.add_vertex(vec![3]);
            node.insert((3, &f.id), x);
            for end in &f.ends {
                g.add_edge(x, node[&(1, end.as_str())], vec![0]);
            }
        }
        for l in &self.target.curve.legs {
            let x = g.add_vertex(vec![4, self.target.is_anchor(&l.label) as i64]);
            node.insert((4, &l.label), x);
            g.add_edge(x, node[&(1, l.at.as_str())], vec![0]);
        }
        for e in &self.source.edges {
            let ram = self.edge_ram.get(&e.id);
            let x = g.add_vertex(vec![2, ram.map_or(0, |r| r.ram as i64)]);
            for end in &e.ends {
                g.add_edge(x, node[&(0, end.as_str())], vec![0]);
            }
            if let Some(f) = ram.and_then(|r| node.get(&(3, r.target.as_str()))) {
                g.add_edge(x, *f, vec![1]);
            }
        }
        for p in &self.profiles {
            let TargetPoint::Leg(l) = &p.point else { continue };
            let (Some(&v), Some(&q)) = (node.get(&(0, p.vertex.as_str())), node.get(&(4, l.as_str())))
            else {
                continue;
            };
            let mut color = vec![5];
            color.extend(sorted(p.parts.clone()).iter().map(|&m| m as i64));
            let x = g.add_vertex(color);
            g.add_edge(x, v, vec![0]);
            g.add_edge(x, q, vec![1]);
        }
        for l in &self.source.legs {
            let m = self.marks.get(&l.label);
            let x = g.add_vertex(vec![6, m.map_or(0, |m| m.ram as i64)]);
            g.add_edge(x, node[&(0, l.at.as_str())], vec![0]);
            if let Some(q) = m.and_then(|m| node.get(&(4, m.image.as_str()))) {
                g.add_edge(x, *q, vec![1]);
            }
        }
        g.canonical_form()
    }
}
