//! Angle arguments, measured in units of `pi`.
//!
//! Around a vertex the angles sum to 2, so the angles at the vertices of `f`
//! that lie outside `f` (the set `o(f)`) sum to `|f| + 2` for an inner face
//! and to `|f| - 2` for the outer face. Inner triangles have angles 1/3 and
//! neighbouring angles of an inner rhombus sum to 1.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::opt::lp::{int, rat, Rational};
use crate::opt::{Certificate, LpStatus, RationalLp, Relation};
use crate::planar::{CornerId, FaceSet, OuterFaceChoice};

use super::{CriterionKind, CriterionVerdict, ForcedCorner, Multiplier, Outcome, Witness};

/// Lower bound used for neighbouring angles of inner faces with five or more
/// sides.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    /// `x_u + x_v - y >= 1/2`, the bound that the lemma proves.
    #[default]
    Lemma,
    /// `x_u + x_v - y >= 1`, as printed in the linear program.
    Paper,
}

impl BoundMode {
    pub fn pair_bound(self) -> Rational {
        match self {
            BoundMode::Lemma => rat(1, 2),
            BoundMode::Paper => int(1),
        }
    }
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMode::Lemma => "lemma",
            BoundMode::Paper => "paper",
        })
    }
}

impl FromStr for BoundMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lemma" => Ok(BoundMode::Lemma),
            "paper" => Ok(BoundMode::Paper),
            other => Err(format!("unknown bound mode `{other}` (expected lemma or paper)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("angle criteria need a 2-connected graph")]
pub struct NotTwoConnected;

/// Corners, neighbouring-corner pairs and outer-angle sets for one choice of
/// outer face.
#[derive(Debug, Clone)]
pub struct AngleSystem {
    corner_vertex: Vec<usize>,
    corner_face: Vec<usize>,
    corner_pos: Vec<usize>,
    faces: Vec<Vec<CornerId>>,
    outer_angles: Vec<Vec<CornerId>>,
    outer_face: usize,
}

pub fn build_angle_system(
    faces: &FaceSet,
    outer: &OuterFaceChoice,
) -> Result<AngleSystem, NotTwoConnected> {
    if faces.vertex_count() < 3 || !faces.faces_are_simple() {
        return Err(NotTwoConnected);
    }
    let m = faces.corner_count();
    let face_list: Vec<Vec<CornerId>> = (0..faces.face_count())
        .map(|f| faces.face_corners(f).to_vec())
        .collect();
    let outer_angles = (0..faces.face_count())
        .map(|f| {
            faces
                .face_vertices(f)
                .flat_map(|v| faces.corners_at(v).iter().copied())
                .filter(|&c| faces.corner_face(c) != f)
                .collect()
        })
        .collect();
    Ok(AngleSystem {
        corner_vertex: (0..m).map(|c| faces.corner_vertex(c)).collect(),
        corner_face: (0..m).map(|c| faces.corner_face(c)).collect(),
        corner_pos: (0..m).map(|c| faces.corner_position(c)).collect(),
        faces: face_list,
        outer_angles,
        outer_face: outer.outer_face,
    })
}

/// How a corner's angle is expressed once the equalities are substituted.
enum CornerValue {
    /// Inner triangle corner, 1/3.
    Triangle,
    /// Inner rhombus corner: `q` at even positions, `1 - q` at odd ones.
    Rhombus { face: usize, odd: bool },
    Free,
}

impl AngleSystem {
    pub fn corner_count(&self) -> usize {
        self.corner_vertex.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn corner_vertex(&self, c: CornerId) -> usize {
        self.corner_vertex[c]
    }

    pub fn corner_face(&self, c: CornerId) -> usize {
        self.corner_face[c]
    }

    pub fn face_size(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    pub fn is_inner(&self, f: usize) -> bool {
        f != self.outer_face
    }

    /// Corners of `f` in boundary order.
    pub fn face_corners(&self, f: usize) -> &[CornerId] {
        &self.faces[f]
    }

    /// `o(f)`: corners at the vertices of `f` that belong to other faces.
    pub fn outer_angles(&self, f: usize) -> &[CornerId] {
        &self.outer_angles[f]
    }

    /// Neighbouring corners of `f`, one pair per boundary edge.
    pub fn neighbor_pairs(&self, f: usize) -> impl Iterator<Item = (CornerId, CornerId)> + '_ {
        let cs = &self.faces[f];
        (0..cs.len()).map(move |i| (cs[i], cs[(i + 1) % cs.len()]))
    }

    /// Required value of the sum over `o(f)`.
    pub fn target(&self, f: usize) -> Rational {
        let s = self.face_size(f) as i64;
        if self.is_inner(f) {
            int(s + 2)
        } else {
            int(s - 2)
        }
    }

    fn value(&self, c: CornerId) -> CornerValue {
        let f = self.corner_face[c];
        if !self.is_inner(f) {
            return CornerValue::Free;
        }
        match self.face_size(f) {
            3 => CornerValue::Triangle,
            4 => CornerValue::Rhombus {
                face: f,
                odd: self.corner_pos[c] % 2 == 1,
            },
            _ => CornerValue::Free,
        }
    }

    fn corner_label(&self, c: CornerId) -> String {
        format!("v{}_f{}", self.corner_vertex[c] + 1, self.corner_face[c])
    }
}

enum FaceSum {
    Determined(Rational),
    Forced { corner: CornerId, value: Rational, rhombus: bool },
    Indeterminate,
}

impl AngleSystem {
    /// Evaluates the sum over `o(f)` from the equalities alone. Corners of a
    /// rhombus only count as determined in neighbouring pairs.
    fn local_sum(&self, f: usize) -> (Rational, FaceSum) {
        let mut known = Rational::zero();
        let mut unknown: Vec<(CornerId, bool)> = Vec::new();
        let mut rhombi: BTreeMap<usize, Vec<CornerId>> = BTreeMap::new();
        for &a in &self.outer_angles[f] {
            match self.value(a) {
                CornerValue::Triangle => known += rat(1, 3),
                CornerValue::Rhombus { face, .. } => rhombi.entry(face).or_default().push(a),
                CornerValue::Free => unknown.push((a, false)),
            }
        }
        for corners in rhombi.values() {
            let mut at = [None; 4];
            for &c in corners {
                at[self.corner_pos[c]] = Some(c);
            }
            if corners.len() == 4 {
                known += int(2);
                continue;
            }
            let mut paired = [false; 4];
            for p in 0..4 {
                let q = (p + 1) % 4;
                if at[p].is_some() && at[q].is_some() && !paired[p] && !paired[q] {
                    paired[p] = true;
                    paired[q] = true;
                    known += int(1);
                }
            }
            for p in 0..4 {
                if let (Some(c), false) = (at[p], paired[p]) {
                    unknown.push((c, true));
                }
            }
        }
        let target = self.target(f);
        let state = match unknown.as_slice() {
            [] => FaceSum::Determined(known.clone()),
            &[(corner, rhombus)] => FaceSum::Forced {
                corner,
                value: &target - &known,
                rhombus,
            },
            _ => FaceSum::Indeterminate,
        };
        (known, state)
    }
}

/// Rejects when some face's outer angles cannot reach the required sum using
/// only the triangle and rhombus equalities: either all of `o(f)` is
/// determined with the wrong total, or the single undetermined angle would be
/// forced to a non-positive value (or to at least 1 for a rhombus angle).
pub fn local_angle_criterion(system: &AngleSystem) -> CriterionVerdict {
    let mut determined = 0;
    let mut indeterminate = 0;
    for f in 0..system.face_count() {
        let (known, state) = system.local_sum(f);
        let target = system.target(f);
        let reject = |forced: Option<ForcedCorner>| CriterionVerdict {
            criterion: CriterionKind::LocalAngle,
            outcome: Outcome::Reject,
            witness: Witness::FaceAngles {
                face: f,
                face_size: system.face_size(f),
                outer: !system.is_inner(f),
                determined_sum: known.to_string(),
                target: target.to_string(),
                forced,
            },
        };
        match state {
            FaceSum::Determined(sum) => {
                determined += 1;
                if sum != target {
                    return reject(None);
                }
            }
            FaceSum::Forced {
                corner,
                value,
                rhombus,
            } => {
                determined += 1;
                if !value.is_positive() || (rhombus && value >= Rational::one()) {
                    return reject(Some(ForcedCorner {
                        vertex: system.corner_vertex(corner) + 1,
                        face: system.corner_face(corner),
                        value: value.to_string(),
                    }));
                }
            }
            FaceSum::Indeterminate => indeterminate += 1,
        }
    }
    CriterionVerdict {
        criterion: CriterionKind::LocalAngle,
        outcome: Outcome::Pass,
        witness: Witness::FacesChecked {
            determined,
            indeterminate,
        },
    }
}

/// The angle program `max y` with every angle at least `y`, in reduced form:
/// inner triangle angles are replaced by 1/3 and each inner rhombus by one
/// parameter `q` (angles `q, 1 - q, q, 1 - q`), which is equivalent to the
/// triangle and rhombus equalities. Every remaining angle `x` (and every
/// rhombus parameter) is written as `y + z` with `z >= 0`, so the lower bounds
/// `x >= y` become sign restrictions and `y` is the only free variable. Angles
/// are in units of pi.
pub fn build_angle_lp(system: &AngleSystem, mode: BoundMode) -> RationalLp {
    let mut lp = RationalLp::new();
    let y = lp.add_variable("y");
    lp.maximize_variable(y);
    let mut rhombus_var: BTreeMap<usize, usize> = BTreeMap::new();
    let mut free_var: Vec<Option<usize>> = vec![None; system.corner_count()];
    let mut has_triangle = false;
    for c in 0..system.corner_count() {
        match system.value(c) {
            CornerValue::Triangle => has_triangle = true,
            CornerValue::Rhombus { face, .. } => {
                rhombus_var
                    .entry(face)
                    .or_insert_with(|| lp.add_nonnegative_variable(format!("z_f{face}")));
            }
            CornerValue::Free => {
                let z = lp.add_nonnegative_variable(format!("z_{}", system.corner_label(c)));
                free_var[c] = Some(z);
            }
        }
    }
    if has_triangle {
        lp.add_constraint("min_triangle", vec![(y, int(-1))], Relation::Ge, rat(-1, 3));
    }
    for (&face, &z) in &rhombus_var {
        lp.add_constraint(format!("min_odd_f{face}"), vec![(z, int(-1)), (y, int(-2))], Relation::Ge, int(-1));
    }
    let bound = mode.pair_bound();
    for f in 0..system.face_count() {
        if !system.is_inner(f) || system.face_size(f) < 5 {
            continue;
        }
        for (i, (u, v)) in system.neighbor_pairs(f).enumerate() {
            let (Some(zu), Some(zv)) = (free_var[u], free_var[v]) else {
                continue;
            };
            lp.add_constraint(
                format!("pair_f{f}_{i}"),
                vec![(zu, int(1)), (zv, int(1)), (y, int(1))],
                Relation::Ge,
                bound.clone(),
            );
        }
    }
    for f in 0..system.face_count() {
        let mut constant = Rational::zero();
        let mut terms: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut add = |j: usize, v: i64| *terms.entry(j).or_insert_with(Rational::zero) += int(v);
        for &a in system.outer_angles(f) {
            match system.value(a) {
                CornerValue::Triangle => constant += rat(1, 3),
                CornerValue::Rhombus { face, odd } => {
                    let z = rhombus_var[&face];
                    if odd {
                        constant += int(1);
                        add(z, -1);
                        add(y, -1);
                    } else {
                        add(z, 1);
                        add(y, 1);
                    }
                }
                CornerValue::Free => {
                    add(free_var[a].expect("free corner has a variable"), 1);
                    add(y, 1);
                }
            }
        }
        terms.retain(|_, v| !v.is_zero());
        let rhs = system.target(f) - constant;
        if terms.is_empty() && rhs.is_zero() {
            continue;
        }
        lp.add_constraint(format!("sum_f{f}"), terms.into_iter().collect(), Relation::Eq, rhs);
    }
    lp
}

/// Rejects when the angle program has no solution with `y > 0`.
pub fn angle_lp_criterion(system: &AngleSystem, mode: BoundMode) -> CriterionVerdict {
    let lp = build_angle_lp(system, mode);
    let outcome = lp
        .solve()
        .expect("angle programs are well formed and certificates verify");
    let reject = match outcome.status {
        LpStatus::Infeasible => true,
        LpStatus::Optimal => !outcome
            .optimal_value
            .as_ref()
            .is_some_and(Rational::is_positive),
        LpStatus::Unbounded => false,
    };
    let multipliers = match &outcome.certificate {
        Certificate::Dual(pi) | Certificate::Farkas(pi) => lp
            .constraints()
            .iter()
            .zip(pi)
            .filter(|(_, p)| !p.is_zero())
            .map(|(c, p)| Multiplier {
                row: c.label.clone(),
                value: p.to_string(),
            })
            .collect(),
        Certificate::Ray(_) => Vec::new(),
    };
    CriterionVerdict {
        criterion: CriterionKind::AngleLp,
        outcome: if reject { Outcome::Reject } else { Outcome::Pass },
        witness: Witness::AngleLp {
            bound_mode: mode,
            status: outcome.status,
            optimal_y: outcome.optimal_value.map(|v| v.to_string()),
            certificate: if reject { multipliers } else { Vec::new() },
        },
    }
}
