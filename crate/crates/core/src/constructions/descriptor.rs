//! JSON description of one construction and its inputs.

use serde::{Deserialize, Serialize};

use super::{
    common_target_join, glue_nonsep_distinct, glue_nonsep_equal, irreducible_from_normalization,
    join_subcurve_covers, mixed_two_sided, CommonNode, GluingReport, LegRef,
};
use crate::cover::AdmissibleCover;
use crate::error::Result;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Construction {
    GlueDistinct { cover: AdmissibleCover, first: String, second: String },
    GlueEqual { cover: AdmissibleCover, first: String, second: String },
    Irreducible { cover: AdmissibleCover, pairs: Vec<(String, String)> },
    Join { covers: Vec<AdmissibleCover>, pairs: Vec<(LegRef, LegRef)> },
    Mixed { first: AdmissibleCover, second: AdmissibleCover, pairs: Vec<(String, String)> },
    CommonTarget { covers: Vec<AdmissibleCover>, nodes: Vec<CommonNode> },
}

impl Construction {
    pub fn apply(&self) -> Result<GluingReport> {
        match self {
            Construction::GlueDistinct { cover, first, second } => glue_nonsep_distinct(cover, first, second),
            Construction::GlueEqual { cover, first, second } => glue_nonsep_equal(cover, first, second),
            Construction::Irreducible { cover, pairs } => irreducible_from_normalization(cover, pairs),
            Construction::Join { covers, pairs } => join_subcurve_covers(covers, pairs),
            Construction::Mixed { first, second, pairs } => mixed_two_sided(first, second, pairs),
            Construction::CommonTarget { covers, nodes } => common_target_join(covers, nodes),
        }
    }
}
