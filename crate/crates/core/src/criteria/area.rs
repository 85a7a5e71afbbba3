use crate::census::FaceCensus;
use crate::geometry::{max_area_units, AREA_MARGIN, CONFIGURATION_AREA_UNITS};
use crate::opt::BlpOutcome;

use super::{CriterionKind, CriterionVerdict, Outcome, Witness};

/// Compares a lower bound on the inner area with the largest area an
/// equilateral polygon of the outer face's perimeter can enclose.
///
/// The bound counts one unit per inner triangle and per inner odd face with
/// at least five sides, plus two units per configuration in `blp`.
pub fn area_criterion(census: &FaceCensus, blp: &BlpOutcome) -> CriterionVerdict {
    let Ok(capacity) = max_area_units(census.k) else {
        return CriterionVerdict {
            criterion: CriterionKind::Area,
            outcome: Outcome::Inapplicable,
            witness: Witness::Skipped {
                reason: format!("outer face has {} sides", census.k),
            },
        };
    };
    let inner_triangles = census.inner_count(3);
    let inner_odd_large = census.inner_odd_large();
    let lower = (inner_triangles + inner_odd_large) as u64
        + CONFIGURATION_AREA_UNITS as u64 * blp.optimum as u64;
    let outcome = if lower as f64 > capacity.value * (1.0 + AREA_MARGIN) {
        Outcome::Reject
    } else {
        Outcome::Pass
    };
    CriterionVerdict {
        criterion: CriterionKind::Area,
        outcome,
        witness: Witness::Area {
            lower_bound_units: lower,
            capacity_units: capacity.rounded,
            capacity_exact: capacity.value,
            inner_triangles,
            inner_odd_large,
            blp_optimum: blp.optimum,
            configuration_centers: blp.chosen.iter().map(|v| v + 1).collect(),
        },
    }
}
