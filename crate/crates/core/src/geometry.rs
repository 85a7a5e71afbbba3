//! Area bounds for equilateral polygons with unit sides and the local
//! triangle/quadrangle configurations that force extra quadrangle area.
//!
//! Areas are measured in units of the unit equilateral triangle, `sqrt(3)/4`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::BoundsError;
use crate::planar::{FaceSet, OuterFaceChoice, VertexFaceProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaUnits {
    pub value: f64,
    /// `value` rounded to two decimals on the safe side: up for maxima, down
    /// for minima.
    pub rounded: f64,
    pub kind: BoundKind,
}

impl AreaUnits {
    fn new(value: f64, kind: BoundKind) -> Self {
        // The tolerance keeps exact values such as 6 from rounding to 6.01.
        let scaled = value * 100.0;
        let rounded = match kind {
            BoundKind::Max => (scaled - 1e-6).ceil(),
            BoundKind::Min => (scaled + 1e-6).floor(),
        } / 100.0;
        Self { value, rounded, kind }
    }
}

/// Largest area of an equilateral `k`-gon with unit sides (the regular one),
/// `k/4 * cot(pi/k)`, divided by the unit triangle area.
pub fn max_area_units(k: usize) -> Result<AreaUnits, BoundsError> {
    if k < 3 {
        return Err(BoundsError::TooFewSides(k));
    }
    let k = k as f64;
    Ok(AreaUnits::new(k / (PI / k).tan() / 3f64.sqrt(), BoundKind::Max))
}

/// Lower bound on the area of an inner equilateral `s`-gon with unit sides.
///
/// Odd polygons have area at least that of one unit triangle. Even ones can
/// be flattened arbitrarily, so only 0 is available. The outer face encloses
/// nothing and always gets 0.
pub fn min_area_units(s: usize, is_inner: bool) -> Result<AreaUnits, BoundsError> {
    if s < 3 {
        return Err(BoundsError::TooFewSides(s));
    }
    let value = if is_inner && s % 2 == 1 { 1.0 } else { 0.0 };
    Ok(AreaUnits::new(value, BoundKind::Min))
}

/// Guaranteed quadrangle area, in triangle units, around one configuration
/// center: strictly more than `sqrt(3)/2`.
pub const CONFIGURATION_AREA_UNITS: f64 = 2.0;

/// Relative slack before an area bound counts as exceeded.
pub const AREA_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigurationProfile {
    /// `{3,3,4,4}`
    TwoTriangles,
    /// `{3,4,4,4}`
    OneTriangle,
}

impl ConfigurationProfile {
    pub fn classify(face_sizes: &[usize]) -> Option<Self> {
        match face_sizes {
            [3, 3, 4, 4] => Some(Self::TwoTriangles),
            [3, 4, 4, 4] => Some(Self::OneTriangle),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigurationCenter {
    pub vertex: usize,
    pub profile: ConfigurationProfile,
    pub quad_faces: Vec<usize>,
}

/// Interior vertices of degree 4 whose four faces are inner triangles and
/// quadrangles in one of the admissible patterns.
pub fn find_configuration_centers(
    faces: &FaceSet,
    profiles: &[VertexFaceProfile],
    outer: &OuterFaceChoice,
) -> Vec<ConfigurationCenter> {
    profiles
        .iter()
        .filter(|p| !outer.is_boundary(p.vertex))
        .filter_map(|p| {
            let profile = ConfigurationProfile::classify(&p.face_sizes)?;
            let incident: Vec<usize> = faces.incident_faces(p.vertex).collect();
            if incident.iter().any(|&f| !outer.is_inner_face(f)) {
                return None;
            }
            let quad_faces = incident
                .into_iter()
                .filter(|&f| faces.face_size(f) == 4)
                .collect();
            Some(ConfigurationCenter {
                vertex: p.vertex,
                profile,
                quad_faces,
            })
        })
        .collect()
}
