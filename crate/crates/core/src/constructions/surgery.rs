//! Graph surgery on covers shared by the constructions: expanding a target
//! point into a node with a new rational component, attaching rational
//! tails and bridges, copying target trees into the source, and the final
//! clean-up passes.

use std::collections::{BTreeMap, BTreeSet};

use crate::cover::{sorted, AdmissibleCover, EdgeRam, Mark, TargetPoint};
use crate::curve::Vertex;
use crate::error::{Error, Result};

/// One point of the fiber over an expanded target point.
#[derive(Debug, Clone)]
pub(crate) struct FiberPoint {
    pub vertex: String,
    pub part: u32,
    /// Source legs sitting at this point.
    pub marks: Vec<String>,
}

/// A target point replaced by a node to a new component.
#[derive(Debug, Clone)]
pub(crate) struct Expansion {
    /// The component the point was on.
    pub base: String,
    pub component: String,
    pub edge: String,
    pub fiber: Vec<FiberPoint>,
}

pub(crate) struct Surgery {
    pub cov: AdmissibleCover,
    op: &'static str,
    next: usize,
    /// Anchor receiving relocated marked points, per target component.
    anchor_on: BTreeMap<String, String>,
}

impl Surgery {
    pub fn new(cov: AdmissibleCover, op: &'static str) -> Self {
        Self { cov, op, next: 0, anchor_on: BTreeMap::new() }
    }

    fn taken(&self, id: &str) -> bool {
        let s = &self.cov.source;
        let t = &self.cov.target.curve;
        s.vertex(id).is_some()
            || s.edge(id).is_some()
            || s.leg(id).is_some()
            || t.vertex(id).is_some()
            || t.edge(id).is_some()
            || t.leg(id).is_some()
    }

    /// Deterministic fresh id unused anywhere in the cover.
    pub fn fresh(&mut self, tag: &str) -> String {
        loop {
            self.next += 1;
            let id = format!("{}.{tag}{}", self.op, self.next);
            if !self.taken(&id) {
                return id;
            }
        }
    }

    pub fn leg_position(&self, leg: &str) -> Result<(String, String)> {
        let l = self.cov.source.leg(leg).ok_or_else(|| Error::UnknownLeg(leg.into()))?;
        let m = self
            .cov
            .marks
            .get(leg)
            .ok_or_else(|| Error::pre(format!("marked point `{leg}` has no image")))?;
        Ok((l.at.clone(), m.image.clone()))
    }

    pub fn image_of(&self, leg: &str) -> Result<String> {
        Ok(self.leg_position(leg)?.1)
    }

    /// Fiber over target leg `q`, with the marked points distributed over it.
    fn fiber_points(&self, q: &str) -> Result<Vec<FiberPoint>> {
        let w = &self.cov.target.curve.leg(q).ok_or_else(|| Error::UnknownLeg(q.into()))?.at;
        let pt = TargetPoint::Leg(q.to_string());
        let mut points = Vec::new();
        for v in self.cov.fiber(w) {
            let parts = match self.cov.profile(v, &pt) {
                Some(p) => p.to_vec(),
                None => vec![1; self.cov.degrees[v] as usize],
            };
            for part in sorted(parts) {
                points.push(FiberPoint { vertex: v.to_string(), part, marks: Vec::new() });
            }
        }
        for leg in &self.cov.source.legs {
            let Some(m) = self.cov.marks.get(&leg.label) else { continue };
            if m.image != q {
                continue;
            }
            let slot = points
                .iter_mut()
                .find(|p| p.vertex == leg.at && p.part == m.ram && p.marks.is_empty())
                .ok_or_else(|| {
                    Error::InvalidCover(format!(
                        "marked point `{}` does not fit the profile over `{q}`",
                        leg.label
                    ))
                })?;
            slot.marks.push(leg.label.clone());
        }
        Ok(points)
    }

    /// Replaces target leg `q` by a node joining its component to `onto`
    /// (a fresh rational component when `None`). Every returned fiber point
    /// must afterwards receive exactly one edge over the new node.
    pub fn expand(&mut self, q: &str, onto: Option<&str>) -> Result<Expansion> {
        let fiber = self.fiber_points(q)?;
        let base = self.cov.target.curve.leg(q).unwrap().at.clone();
        let component = match onto {
            Some(c) => c.to_string(),
            None => {
                let c = self.fresh("P");
                self.cov.target.curve.add_vertex(c.clone(), 0);
                c
            }
        };
        let edge = self.fresh("f");
        self.cov.target.curve.add_edge(edge.clone(), base.clone(), component.clone());
        self.cov.target.curve.legs.retain(|l| l.label != q);
        self.cov.target.anchors.remove(q);
        let pt = TargetPoint::Leg(q.to_string());
        self.cov.profiles.retain(|p| p.point != pt);
        Ok(Expansion { base, component, edge, fiber })
    }

    pub fn add_vertex(&mut self, tag: &str, over: &str, degree: u32) -> String {
        let id = self.fresh(tag);
        self.cov.source.vertices.push(Vertex { id: id.clone(), genus: 0 });
        self.cov.vmap.insert(id.clone(), over.to_string());
        self.cov.degrees.insert(id.clone(), degree);
        id
    }

    pub fn add_edge(&mut self, a: &str, b: &str, over: &str, ram: u32) -> String {
        let id = self.fresh("e");
        self.cov.source.add_edge(id.clone(), a, b);
        self.cov.edge_ram.insert(id.clone(), EdgeRam { target: over.to_string(), ram });
        id
    }

    /// Adds `count` simple branch points on `component`, each ramified at
    /// source vertex `v`.
    pub fn add_branch_points(&mut self, v: &str, component: &str, count: u32) {
        let d = self.cov.degrees[v];
        for _ in 0..count {
            let q = self.fresh("q");
            self.cov.target.curve.add_leg(q.clone(), component);
            let mut parts = vec![1; d as usize - 1];
            parts[0] = 2;
            self.cov.set_profile(v, TargetPoint::Leg(q), parts);
        }
    }

    /// Removes the source legs `marks` (consumed by a gluing).
    pub fn consume(&mut self, marks: &[String]) {
        self.cov.source.legs.retain(|l| !marks.contains(&l.label));
        for m in marks {
            self.cov.marks.remove(m);
        }
    }

    /// Moves marked points onto source vertex `v` over `component`, all at
    /// one shared anchor there.
    fn relocate(&mut self, marks: &[String], v: &str, component: &str) {
        if marks.is_empty() {
            return;
        }
        let anchor = match self.anchor_on.get(component) {
            Some(a) => a.clone(),
            None => {
                let a = self.fresh("a");
                self.cov.target.curve.add_leg(a.clone(), component);
                self.cov.target.anchors.insert(a.clone());
                self.anchor_on.insert(component.to_string(), a.clone());
                a
            }
        };
        for m in marks {
            if let Some(l) = self.cov.source.legs.iter_mut().find(|l| &l.label == m) {
                l.at = v.to_string();
            }
            self.cov.marks.insert(m.clone(), Mark { image: anchor.clone(), ram: 1 });
        }
    }

    /// Rational tail of degree `p.part` over `component`, totally ramified
    /// where it meets `p`, with `part - 1` simple branch points.
    pub fn tail(&mut self, p: &FiberPoint, component: &str, edge: &str) -> String {
        let t = self.add_vertex("T", component, p.part);
        self.add_edge(&p.vertex, &t, edge, p.part);
        self.add_branch_points(&t, component, p.part - 1);
        self.relocate(&p.marks, &t, component);
        t
    }

    /// Copies the target components `tree` into the source with degree 1
    /// everywhere. Returns the copy of each target component.
    pub fn copy_tree(&mut self, tree: &BTreeSet<String>) -> BTreeMap<String, String> {
        let mut image = BTreeMap::new();
        for w in tree {
            let c = self.add_vertex("S", w, 1);
            image.insert(w.clone(), c);
        }
        let edges: Vec<_> = self
            .cov
            .target
            .curve
            .edges
            .iter()
            .filter(|f| tree.contains(&f.ends[0]) && tree.contains(&f.ends[1]))
            .cloned()
            .collect();
        for f in edges {
            let (a, b) = (image[&f.ends[0]].clone(), image[&f.ends[1]].clone());
            self.add_edge(&a, &b, &f.id, 1);
        }
        image
    }

    /// Expands every branch point whose fiber is not simple, with a totally
    /// ramified tail over each fiber point. Trivial fibers stop being branch
    /// points.
    pub fn simplify_branch_points(&mut self) -> Result<()> {
        let legs: Vec<String> = self.cov.target.branch_legs().map(|l| l.label.clone()).collect();
        for q in legs {
            let fiber = self.fiber_points(&q)?;
            let big: Vec<u32> = fiber.iter().map(|p| p.part).filter(|&m| m > 1).collect();
            let marked = fiber.iter().any(|p| !p.marks.is_empty());
            if big.is_empty() {
                if marked {
                    self.cov.target.anchors.insert(q.clone());
                } else {
                    self.remove_target_leg(&q);
                }
            } else if big == [2] {
                if marked {
                    return Err(Error::pre(format!(
                        "marked point over branch point `{q}` cannot be kept"
                    )));
                }
            } else {
                let x = self.expand(&q, None)?;
                for p in &x.fiber {
                    self.tail(p, &x.component, &x.edge);
                }
            }
        }
        Ok(())
    }

    fn remove_target_leg(&mut self, q: &str) {
        self.cov.target.curve.legs.retain(|l| l.label != q);
        self.cov.target.anchors.remove(q);
        let pt = TargetPoint::Leg(q.to_string());
        self.cov.profiles.retain(|p| p.point != pt);
    }

    fn prune_anchors(&mut self) {
        let used: BTreeSet<String> = self.cov.marks.values().map(|m| m.image.clone()).collect();
        let stale: Vec<String> =
            self.cov.target.anchors.iter().filter(|a| !used.contains(*a)).cloned().collect();
        for a in stale {
            self.remove_target_leg(&a);
        }
    }

    /// Contracts target components with two nodes and no other special
    /// points, together with the source components over them.
    pub fn contract_target(&mut self) {
        while let Some(w) = self.contractible_target() {
            self.contract_at(&w);
        }
    }

    fn contractible_target(&self) -> Option<String> {
        let t = &self.cov.target.curve;
        if t.vertices.len() < 2 {
            return None;
        }
        t.vertices.iter().map(|w| w.id.clone()).find(|w| {
            let edges: Vec<_> = t.edges.iter().filter(|f| f.ends[0] == *w || f.ends[1] == *w).collect();
            if edges.len() != 2 || t.legs_at(w) > 0 {
                return false;
            }
            self.cov.fiber(w).iter().all(|v| {
                let d = self.cov.degrees[*v];
                let at: Vec<_> = self.cov.source.edges.iter().filter(|e| e.ends.contains(&v.to_string())).collect();
                self.cov.source.genus_of(v) == Some(0)
                    && self.cov.source.legs_at(v) == 0
                    && at.len() == 2
                    && !at[0].is_loop()
                    && at.iter().all(|e| self.cov.edge_ram[&e.id].ram == d)
                    && self.cov.edge_ram[&at[0].id].target != self.cov.edge_ram[&at[1].id].target
            })
        })
    }

    fn contract_at(&mut self, w: &str) {
        let t = &self.cov.target.curve;
        let fs: Vec<_> = t
            .edges
            .iter()
            .filter(|f| f.ends[0] == w || f.ends[1] == w)
            .cloned()
            .collect();
        let (f1, f2) = (&fs[0], &fs[1]);
        let a = f1.other_end(w).unwrap().to_string();
        let b = f2.other_end(w).unwrap().to_string();
        for v in self.cov.fiber(w).into_iter().map(String::from).collect::<Vec<_>>() {
            let at: Vec<_> = self
                .cov
                .source
                .edges
                .iter()
                .filter(|e| e.ends.contains(&v))
                .cloned()
                .collect();
            let (e1, e2) = if self.cov.edge_ram[&at[0].id].target == f1.id {
                (&at[0], &at[1])
            } else {
                (&at[1], &at[0])
            };
            let x = e1.other_end(&v).unwrap().to_string();
            let y = e2.other_end(&v).unwrap().to_string();
            let ram = self.cov.edge_ram[&e1.id].ram;
            self.cov.source.edges.retain(|e| e.id != e1.id && e.id != e2.id);
            self.cov.edge_ram.remove(&e2.id);
            self.cov.source.add_edge(e1.id.clone(), x, y);
            self.cov.edge_ram.insert(e1.id.clone(), EdgeRam { target: f1.id.clone(), ram });
            self.cov.source.vertices.retain(|u| u.id != v);
            self.cov.vmap.remove(&v);
            self.cov.degrees.remove(&v);
            self.cov.profiles.retain(|p| p.vertex != v);
        }
        let old = TargetPoint::Node(f2.id.clone());
        for p in &mut self.cov.profiles {
            if p.point == old {
                p.point = TargetPoint::Node(f1.id.clone());
            }
        }
        let t = &mut self.cov.target.curve;
        t.edges.retain(|f| f.id != f2.id);
        if let Some(f) = t.edges.iter_mut().find(|f| f.id == f1.id) {
            f.ends = [a, b];
        }
        t.vertices.retain(|x| x.id != w);
    }

    /// Step 2, anchor pruning, target contraction and trivial profiles.
    pub fn finish(mut self) -> Result<AdmissibleCover> {
        self.simplify_branch_points()?;
        self.prune_anchors();
        self.contract_target();
        self.cov.fill_trivial_profiles();
        Ok(self.cov)
    }
}
