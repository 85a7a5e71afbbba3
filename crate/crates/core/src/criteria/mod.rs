//! The four exclusion criteria and the per-graph evaluation over all
//! candidate outer faces.
//!
//! Witnesses use 1-based vertex ids, as in the input formats, and 0-based
//! face ids in face-tracing order.

mod angles;
mod area;
mod chain;
mod evaluate;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use angles::{
    angle_lp_criterion, build_angle_system, build_angle_lp, local_angle_criterion, AngleSystem,
    BoundMode, NotTwoConnected,
};
pub use area::area_criterion;
pub use chain::{find_triangle_chains, triangle_chain_criterion, TriangleChain};
pub use evaluate::{evaluate_graph, evaluate_outer_face, EvaluateOptions, GraphReport, OuterFaceReport, Scope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionKind {
    Area,
    TriangleChain,
    LocalAngle,
    AngleLp,
}

impl CriterionKind {
    /// Evaluation order: cheap checks first.
    pub const ALL: [CriterionKind; 4] = [
        CriterionKind::Area,
        CriterionKind::TriangleChain,
        CriterionKind::LocalAngle,
        CriterionKind::AngleLp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CriterionKind::Area => "area",
            CriterionKind::TriangleChain => "triangle_chain",
            CriterionKind::LocalAngle => "local_angle",
            CriterionKind::AngleLp => "angle_lp",
        }
    }
}

impl fmt::Display for CriterionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CriterionKind {
    type Err = String;

    /// Accepts the short CLI names (`area`, `chain`, `local`, `lp`) and the
    /// report names.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "area" => Ok(CriterionKind::Area),
            "chain" | "triangle_chain" => Ok(CriterionKind::TriangleChain),
            "local" | "local_angle" => Ok(CriterionKind::LocalAngle),
            "lp" | "angle_lp" => Ok(CriterionKind::AngleLp),
            other => Err(format!("unknown criterion `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Reject,
    Pass,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionVerdict {
    pub criterion: CriterionKind,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Witness::is_omitted")]
    pub witness: Witness,
}

impl CriterionVerdict {
    pub fn is_reject(&self) -> bool {
        self.outcome == Outcome::Reject
    }
}

/// A nonzero LP row multiplier, by row label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multiplier {
    pub row: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForcedCorner {
    pub vertex: usize,
    pub face: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Area {
        lower_bound_units: u64,
        /// Capacity rounded up to two decimals.
        capacity_units: f64,
        capacity_exact: f64,
        inner_triangles: usize,
        inner_odd_large: usize,
        blp_optimum: usize,
        configuration_centers: Vec<usize>,
    },
    TriangleChain {
        triangles: Vec<usize>,
        apexes: Vec<usize>,
        t: usize,
        s: usize,
        k: usize,
        required_k: usize,
        cyclic: bool,
    },
    ChainsChecked {
        chains: usize,
        longest: usize,
        /// Every face, the outer one included, is a triangle.
        triangulation: bool,
        /// Every inner face is a triangle but the outer face is not.
        inner_triangulation: bool,
    },
    FaceAngles {
        face: usize,
        face_size: usize,
        outer: bool,
        determined_sum: String,
        target: String,
        forced: Option<ForcedCorner>,
    },
    FacesChecked {
        determined: usize,
        indeterminate: usize,
    },
    AngleLp {
        bound_mode: BoundMode,
        status: crate::opt::LpStatus,
        optimal_y: Option<String>,
        certificate: Vec<Multiplier>,
    },
    Skipped {
        reason: String,
    },
    /// Dropped by the caller to shorten reports; never produced by a criterion.
    Omitted,
}

impl Witness {
    pub fn is_omitted(&self) -> bool {
        matches!(self, Witness::Omitted)
    }
}
