//! The five worked gluing examples: two covers of a normalization glued at a
//! node (distinct and equal images), joins of three and two subcurves, and
//! three components over a common line.

use crate::constructions::{
    common_target_join, glue_nonsep_distinct, glue_nonsep_equal, join_subcurve_covers, CommonNode,
    GluingReport, LegRef,
};
use crate::cover::AdmissibleCover;
use crate::error::{Error, Result};
use crate::samples::{add_anchor, add_mark, simple_cover};

/// Simple cover with source `Y{i}`, target `B{i}` and other ids suffixed.
fn component(i: usize, genus: u32, degree: u32) -> AdmissibleCover {
    simple_cover(genus, degree).renamed(|x| match x {
        "C" => format!("Y{i}"),
        "B" => format!("B{i}"),
        _ => format!("{x}.{i}"),
    })
}

/// Genus-1 triple cover, branches at two distinct points.
pub fn figure1_input() -> AdmissibleCover {
    let mut c = simple_cover(1, 3);
    add_anchor(&mut c, "a1", "B");
    add_anchor(&mut c, "a2", "B");
    add_mark(&mut c, "n1", "C", "a1", 1);
    add_mark(&mut c, "n2", "C", "a2", 1);
    c
}

/// Genus-2 degree-4 cover, both branches over one point.
pub fn figure2_input() -> AdmissibleCover {
    let mut c = simple_cover(2, 4);
    add_anchor(&mut c, "a", "B");
    add_mark(&mut c, "n1", "C", "a", 1);
    add_mark(&mut c, "n2", "C", "a", 1);
    c
}

/// Covers of three genus-1 subcurves with `Y1` meeting `Y2` and `Y3`.
pub fn figure3_input() -> (Vec<AdmissibleCover>, Vec<(LegRef, LegRef)>) {
    let mut y1 = component(1, 1, 4);
    add_anchor(&mut y1, "a1", "B1");
    add_mark(&mut y1, "n12", "Y1", "a1", 1);
    add_mark(&mut y1, "n13", "Y1", "a1", 1);
    let mut y2 = component(2, 1, 2);
    add_anchor(&mut y2, "a2", "B2");
    add_mark(&mut y2, "n21", "Y2", "a2", 1);
    let mut y3 = component(3, 1, 2);
    add_anchor(&mut y3, "a3", "B3");
    add_mark(&mut y3, "n31", "Y3", "a3", 1);
    let pairs = vec![
        (LegRef::new(0, "n12"), LegRef::new(1, "n21")),
        (LegRef::new(0, "n13"), LegRef::new(2, "n31")),
    ];
    (vec![y1, y2, y3], pairs)
}

/// Covers of two genus-1 subcurves meeting in two points.
pub fn figure4_input() -> (Vec<AdmissibleCover>, Vec<(LegRef, LegRef)>) {
    let mut y1 = component(1, 1, 4);
    add_anchor(&mut y1, "a1", "B1");
    add_mark(&mut y1, "u1", "Y1", "a1", 1);
    add_mark(&mut y1, "u2", "Y1", "a1", 1);
    let mut y2 = component(2, 1, 2);
    add_anchor(&mut y2, "a2", "B2");
    add_mark(&mut y2, "v1", "Y2", "a2", 1);
    add_mark(&mut y2, "v2", "Y2", "a2", 1);
    let pairs = vec![
        (LegRef::new(0, "u1"), LegRef::new(1, "v1")),
        (LegRef::new(0, "u2"), LegRef::new(1, "v2")),
    ];
    (vec![y1, y2], pairs)
}

/// Three genus-1 components over one line; `C1` meets `C2` over `s` and
/// `C3` over `t`.
pub fn figure5_input() -> (Vec<AdmissibleCover>, Vec<CommonNode>) {
    let line = |i: usize, degree: u32| {
        simple_cover(1, degree).renamed(|x| match x {
            "C" => format!("C{i}"),
            "B" => "B".to_string(),
            _ => format!("{x}.{i}"),
        })
    };
    let mut c1 = line(1, 3);
    add_anchor(&mut c1, "s", "B");
    add_anchor(&mut c1, "t", "B");
    add_mark(&mut c1, "n1s", "C1", "s", 1);
    add_mark(&mut c1, "n1t", "C1", "t", 1);
    let mut c2 = line(2, 2);
    add_anchor(&mut c2, "s", "B");
    add_mark(&mut c2, "n2s", "C2", "s", 1);
    let mut c3 = line(3, 2);
    add_anchor(&mut c3, "t", "B");
    add_mark(&mut c3, "n3t", "C3", "t", 1);
    let nodes = vec![
        CommonNode { first: LegRef::new(0, "n1s"), second: LegRef::new(1, "n2s") },
        CommonNode { first: LegRef::new(0, "n1t"), second: LegRef::new(2, "n3t") },
    ];
    (vec![c1, c2, c3], nodes)
}

/// Builds fixture `id` (1 to 5).
pub fn figure(id: u32) -> Result<GluingReport> {
    match id {
        1 => glue_nonsep_distinct(&figure1_input(), "n1", "n2"),
        2 => glue_nonsep_equal(&figure2_input(), "n1", "n2"),
        3 => {
            let (covers, pairs) = figure3_input();
            join_subcurve_covers(&covers, &pairs)
        }
        4 => {
            let (covers, pairs) = figure4_input();
            join_subcurve_covers(&covers, &pairs)
        }
        5 => {
            let (maps, nodes) = figure5_input();
            common_target_join(&maps, &nodes)
        }
        _ => Err(Error::pre(format!("no figure {id}; fixtures are numbered 1 to 5"))),
    }
}
