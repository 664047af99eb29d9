//! Dual graphs of nodal curves.
//!
//! A vertex is an irreducible component labelled by its geometric genus, an
//! edge is a node (a self-loop is an internal node) and a leg is a marked
//! smooth point. All operations are pure; they return new graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::canon::{CanonicalForm, ColoredGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub ends: [String; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    pub fn other_end(&self, v: &str) -> Option<&str> {
        if self.ends[0] == v {
            Some(&self.ends[1])
        } else if self.ends[1] == v {
            Some(&self.ends[0])
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leg {
    pub label: String,
    pub at: String,
}

/// Dual graph of a nodal curve (`curve.json`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveGraph {
    pub vertices: Vec<Vertex>,
    #[serde(default)]
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub legs: Vec<Leg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeClass {
    Internal,
    ExternalSeparating,
    ExternalNonseparating,
}

/// Outcome of [`CurveGraph::is_stable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stability {
    Stable,
    /// `2g - 2 + n <= 0`.
    GlobalGenus { genus: i64, legs: usize },
    /// A genus-0 vertex with fewer than three special points.
    Vertex(String),
}

impl Stability {
    pub fn is_stable(&self) -> bool {
        matches!(self, Stability::Stable)
    }
}

/// Partial normalization at one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub parts: NormalizedParts,
    /// Fresh legs at the two branches over the node, in the order of the
    /// edge's ends.
    pub branches: (String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizedParts {
    Connected(CurveGraph),
    /// Ordered by canonical form.
    Split(CurveGraph, CurveGraph),
}

/// Which leg data takes part in isomorphism testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegPolicy {
    /// Isomorphisms must preserve leg labels.
    Labeled,
    /// Legs are interchangeable points.
    Unlabeled,
}

impl CurveGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn smooth(id: &str, genus: u32) -> Self {
        let mut c = Self::new();
        c.add_vertex(id, genus);
        c
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, genus: u32) {
        self.vertices.push(Vertex { id: id.into(), genus });
    }

    pub fn add_edge(&mut self, id: impl Into<String>, a: impl Into<String>, b: impl Into<String>) {
        self.edges.push(Edge { id: id.into(), ends: [a.into(), b.into()] });
    }

    pub fn add_leg(&mut self, label: impl Into<String>, at: impl Into<String>) {
        self.legs.push(Leg { label: label.into(), at: at.into() });
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn leg(&self, label: &str) -> Option<&Leg> {
        self.legs.iter().find(|l| l.label == label)
    }

    pub fn genus_of(&self, id: &str) -> Option<u32> {
        self.vertex(id).map(|v| v.genus)
    }

    /// Half-edge attachments at `v`; a self-loop counts twice.
    pub fn half_edges(&self, v: &str) -> usize {
        self.edges
            .iter()
            .map(|e| e.ends.iter().filter(|x| *x == v).count())
            .sum()
    }

    pub fn legs_at(&self, v: &str) -> usize {
        self.legs.iter().filter(|l| l.at == v).count()
    }

    /// Checks ids are unique and every reference resolves.
    pub fn check_structure(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id.as_str()) {
                return Err(Error::Malformed(format!("duplicate vertex id `{}`", v.id)));
            }
        }
        let mut eids = BTreeSet::new();
        for e in &self.edges {
            if !eids.insert(e.id.as_str()) {
                return Err(Error::Malformed(format!("duplicate edge id `{}`", e.id)));
            }
            for end in &e.ends {
                if !ids.contains(end.as_str()) {
                    return Err(Error::Malformed(format!(
                        "edge `{}` attaches to unknown vertex `{end}`",
                        e.id
                    )));
                }
            }
        }
        let mut labels = BTreeSet::new();
        for l in &self.legs {
            if !labels.insert(l.label.as_str()) {
                return Err(Error::Malformed(format!("duplicate leg label `{}`", l.label)));
            }
            if !ids.contains(l.at.as_str()) {
                return Err(Error::Malformed(format!(
                    "leg `{}` sits on unknown vertex `{}`",
                    l.label, l.at
                )));
            }
        }
        Ok(())
    }

    fn index(&self) -> HashMap<&str, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect()
    }

    /// Connected components as sets of vertex ids, ignoring `skip_edge`.
    fn components_without(&self, skip_edge: Option<&str>) -> Vec<BTreeSet<String>> {
        let idx = self.index();
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            if Some(e.id.as_str()) == skip_edge {
                continue;
            }
            let (Some(&a), Some(&b)) = (idx.get(e.ends[0].as_str()), idx.get(e.ends[1].as_str()))
            else {
                continue;
            };
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                comp.insert(self.vertices[u].id.clone());
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<BTreeSet<String>> {
        self.components_without(None)
    }

    pub fn is_connected(&self) -> bool {
        !self.vertices.is_empty() && self.components().len() == 1
    }

    /// `sum g_v + #edges - #vertices + 1`.
    pub fn arithmetic_genus(&self) -> Result<u32> {
        self.check_structure()?;
        if !self.is_connected() {
            return Err(Error::NotACurve("dual graph is empty or disconnected".into()));
        }
        Ok(self.genus_formula() as u32)
    }

    fn genus_formula(&self) -> i64 {
        let sum: i64 = self.vertices.iter().map(|v| v.genus as i64).sum();
        sum + self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }

    pub fn is_stable(&self) -> Stability {
        let genus = self.genus_formula();
        if 2 * genus - 2 + self.legs.len() as i64 <= 0 {
            return Stability::GlobalGenus { genus, legs: self.legs.len() };
        }
        for v in &self.vertices {
            if v.genus == 0 && self.half_edges(&v.id) + self.legs_at(&v.id) < 3 {
                return Stability::Vertex(v.id.clone());
            }
        }
        Stability::Stable
    }

    pub fn classify_node(&self, edge: &str) -> Result<NodeClass> {
        let e = self.edge(edge).ok_or_else(|| Error::UnknownEdge(edge.into()))?;
        if e.is_loop() {
            return Ok(NodeClass::Internal);
        }
        let before = self.components_without(None).len();
        let after = self.components_without(Some(edge)).len();
        Ok(if after > before {
            NodeClass::ExternalSeparating
        } else {
            NodeClass::ExternalNonseparating
        })
    }

    fn fresh_leg(&self, base: &str) -> String {
        let mut label = base.to_string();
        let mut i = 1;
        while self.leg(&label).is_some() {
            label = format!("{base}.{i}");
            i += 1;
        }
        label
    }

    /// Normalizes the node `edge`, replacing it with two legs.
    pub fn normalize_at(&self, edge: &str) -> Result<Normalized> {
        let e = self.edge(edge).ok_or_else(|| Error::UnknownEdge(edge.into()))?.clone();
        let mut c = self.clone();
        c.edges.retain(|x| x.id != edge);
        let l1 = c.fresh_leg(&format!("{edge}'1"));
        c.add_leg(l1.clone(), e.ends[0].clone());
        let l2 = c.fresh_leg(&format!("{edge}'2"));
        c.add_leg(l2.clone(), e.ends[1].clone());
        let comps = c.components();
        let parts = if comps.len() <= 1 {
            NormalizedParts::Connected(c)
        } else {
            let mut a = c.induced(&comps[0]);
            let mut b = c.induced(&comps[1]);
            if b.canonical_form(LegPolicy::Labeled) < a.canonical_form(LegPolicy::Labeled) {
                std::mem::swap(&mut a, &mut b);
            }
            NormalizedParts::Split(a, b)
        };
        Ok(Normalized { parts, branches: (l1, l2) })
    }

    /// Inverse of [`normalize_at`](Self::normalize_at): turns two legs into a node.
    pub fn glue_legs(&self, l1: &str, l2: &str, edge_id: &str) -> Result<CurveGraph> {
        let a = self.leg(l1).ok_or_else(|| Error::UnknownLeg(l1.into()))?.at.clone();
        let b = self.leg(l2).ok_or_else(|| Error::UnknownLeg(l2.into()))?.at.clone();
        let mut c = self.clone();
        c.legs.retain(|l| l.label != l1 && l.label != l2);
        c.add_edge(edge_id, a, b);
        Ok(c)
    }

    /// Subgraph on `ids` with the edges and legs it contains.
    pub fn induced(&self, ids: &BTreeSet<String>) -> CurveGraph {
        CurveGraph {
            vertices: self.vertices.iter().filter(|v| ids.contains(&v.id)).cloned().collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| ids.contains(&e.ends[0]) && ids.contains(&e.ends[1]))
                .cloned()
                .collect(),
            legs: self.legs.iter().filter(|l| ids.contains(&l.at)).cloned().collect(),
        }
    }

    /// Repeatedly contracts unmarked rational vertices with one or two
    /// half-edges. Returns the contracted graph and the vertex map; unlike
    /// [`stabilize`](Self::stabilize) the result is not required to be stable.
    pub fn contract_unstable(&self) -> Result<(CurveGraph, BTreeMap<String, String>)> {
        self.check_structure()?;
        let mut c = self.clone();
        let mut absorbed: BTreeMap<String, String> = BTreeMap::new();
        loop {
            let mut step = None;
            for v in &c.vertices {
                if v.genus != 0 || c.vertices.len() == 1 {
                    continue;
                }
                let legs = c.legs_at(&v.id);
                let he = c.half_edges(&v.id);
                if he > 2 {
                    continue;
                }
                if legs > 0 {
                    if he + legs < 3 {
                        return Err(Error::Unstable(format!(
                            "rational component `{}` carries marked points and meets the rest in {he} point(s)",
                            v.id
                        )));
                    }
                    continue;
                }
                let incident: Vec<&Edge> = c
                    .edges
                    .iter()
                    .filter(|e| e.ends[0] == v.id || e.ends[1] == v.id)
                    .collect();
                if incident.len() == 1 && incident[0].is_loop() {
                    continue;
                }
                step = Some((v.id.clone(), incident.iter().map(|e| (*e).clone()).collect::<Vec<_>>()));
                break;
            }
            let Some((v, incident)) = step else { break };
            match incident.as_slice() {
                [] => {
                    return Err(Error::NotACurve(format!("isolated rational component `{v}`")));
                }
                [e] => {
                    let u = e.other_end(&v).unwrap().to_string();
                    c.edges.retain(|x| x.id != e.id);
                    absorbed.insert(v.clone(), u);
                }
                [e1, e2] => {
                    let a = e1.other_end(&v).unwrap().to_string();
                    let b = e2.other_end(&v).unwrap().to_string();
                    c.edges.retain(|x| x.id != e1.id && x.id != e2.id);
                    c.add_edge(e1.id.clone(), a.clone(), b);
                    absorbed.insert(v.clone(), a);
                }
                _ => unreachable!("at most two half-edges"),
            }
            c.vertices.retain(|x| x.id != v);
        }
        let mut tau = BTreeMap::new();
        for v in &self.vertices {
            let mut cur = v.id.clone();
            while let Some(next) = absorbed.get(&cur) {
                cur = next.clone();
            }
            tau.insert(v.id.clone(), cur);
        }
        Ok((c, tau))
    }

    /// Stable model and the vertex map from this curve onto it.
    pub fn stabilize(&self) -> Result<(CurveGraph, BTreeMap<String, String>)> {
        let (c, tau) = self.contract_unstable()?;
        match c.is_stable() {
            Stability::Stable => Ok((c, tau)),
            Stability::GlobalGenus { genus, legs } => Err(Error::Unstable(format!(
                "2g-2+n = {} for genus {genus} with {legs} legs",
                2 * genus - 2 + legs as i64
            ))),
            Stability::Vertex(v) => Err(Error::Unstable(format!("vertex `{v}` is unstable"))),
        }
    }

    pub(crate) fn colored_graph(&self, legs: LegPolicy) -> ColoredGraph {
        let mut g = ColoredGraph::new();
        let idx = self.index();
        for v in &self.vertices {
            let loops = self.edges.iter().filter(|e| e.is_loop() && e.ends[0] == v.id).count();
            g.add_vertex(vec![0, v.genus as i64, loops as i64]);
        }
        for e in &self.edges {
            if !e.is_loop() {
                g.add_edge(idx[e.ends[0].as_str()], idx[e.ends[1].as_str()], vec![]);
            }
        }
        for l in &self.legs {
            let mut color = vec![1];
            if legs == LegPolicy::Labeled {
                color.extend(l.label.bytes().map(i64::from));
            }
            let x = g.add_vertex(color);
            g.add_edge(x, idx[l.at.as_str()], vec![]);
        }
        g
    }

    /// Label-free form respecting genera and, by policy, leg labels.
    pub fn canonical_form(&self, legs: LegPolicy) -> CanonicalForm {
        self.colored_graph(legs).canonical_form()
    }

    pub fn is_isomorphic(&self, other: &CurveGraph) -> bool {
        self.canonical_form(LegPolicy::Labeled) == other.canonical_form(LegPolicy::Labeled)
    }

    /// Renames vertices and edges; `f` receives the old id.
    pub fn relabeled(
        &self,
        vertex: impl Fn(&str) -> String,
        edge: impl Fn(&str) -> String,
    ) -> CurveGraph {
        CurveGraph {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vertex { id: vertex(&v.id), genus: v.genus })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    id: edge(&e.id),
                    ends: [vertex(&e.ends[0]), vertex(&e.ends[1])],
                })
                .collect(),
            legs: self
                .legs
                .iter()
                .map(|l| Leg { label: l.label.clone(), at: vertex(&l.at) })
                .collect(),
        }
    }

    /// Vertex-disjoint union; ids of `other` are prefixed with `prefix`.
    pub fn disjoint_union(&self, other: &CurveGraph, prefix: &str) -> CurveGraph {
        let mut c = self.clone();
        let o = other.relabeled(|v| format!("{prefix}{v}"), |e| format!("{prefix}{e}"));
        c.vertices.extend(o.vertices);
        c.edges.extend(o.edges);
        c.legs.extend(o.legs);
        c
    }
}

/// A union of components of a parent curve.
#[derive(Debug, Clone)]
pub struct Subcurve<'a> {
    parent: &'a CurveGraph,
    vertices: BTreeSet<String>,
}

impl<'a> Subcurve<'a> {
    pub fn new<I, S>(parent: &'a CurveGraph, ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vertices: BTreeSet<String> = ids.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(Error::pre("a subcurve needs at least one component"));
        }
        if let Some(v) = vertices.iter().find(|v| parent.vertex(v).is_none()) {
            return Err(Error::UnknownVertex(v.clone()));
        }
        Ok(Self { parent, vertices })
    }

    pub fn vertices(&self) -> &BTreeSet<String> {
        &self.vertices
    }

    /// `Y^c`, or `None` when `Y` is the whole curve.
    pub fn complement(&self) -> Option<Subcurve<'a>> {
        let rest: BTreeSet<String> = self
            .parent
            .vertices
            .iter()
            .map(|v| v.id.clone())
            .filter(|v| !self.vertices.contains(v))
            .collect();
        (!rest.is_empty()).then_some(Subcurve { parent: self.parent, vertices: rest })
    }

    /// Number of nodes in `Y ∩ Y^c`.
    pub fn intersection_count(&self) -> usize {
        self.parent
            .edges
            .iter()
            .filter(|e| self.vertices.contains(&e.ends[0]) != self.vertices.contains(&e.ends[1]))
            .count()
    }

    pub fn curve(&self) -> CurveGraph {
        self.parent.induced(&self.vertices)
    }

    pub fn is_connected(&self) -> bool {
        self.curve().is_connected()
    }
}
