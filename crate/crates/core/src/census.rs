//! Face census for a chosen outer face, and the counting identities every
//! embedded `r`-regular planar graph satisfies.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::CensusError;
use crate::planar::{FaceSet, OuterFaceChoice};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceCensus {
    pub n: usize,
    pub edge_count: usize,
    pub face_count: usize,
    /// Outer face size.
    pub k: usize,
    /// `i -> A_i`, the outer face included.
    pub face_counts: BTreeMap<usize, usize>,
    /// `i -> number of inner i-gons`.
    pub inner_face_counts: BTreeMap<usize, usize>,
    pub regularity: Option<usize>,
    pub interior_vertex_count: usize,
}

impl FaceCensus {
    pub fn new(faces: &FaceSet, outer: &OuterFaceChoice, regularity: Option<usize>) -> Self {
        let mut face_counts = BTreeMap::new();
        for s in faces.face_sizes() {
            *face_counts.entry(s).or_insert(0) += 1;
        }
        let mut inner_face_counts = face_counts.clone();
        let k = outer.k;
        if let Some(c) = inner_face_counts.get_mut(&k) {
            *c -= 1;
            if *c == 0 {
                inner_face_counts.remove(&k);
            }
        }
        Self {
            n: faces.vertex_count(),
            edge_count: faces.edge_count(),
            face_count: faces.face_count(),
            k,
            face_counts,
            inner_face_counts,
            regularity,
            interior_vertex_count: outer.interior_vertices.len(),
        }
    }

    pub fn count(&self, size: usize) -> usize {
        self.face_counts.get(&size).copied().unwrap_or(0)
    }

    pub fn inner_count(&self, size: usize) -> usize {
        self.inner_face_counts.get(&size).copied().unwrap_or(0)
    }

    /// Inner odd faces with at least five sides.
    pub fn inner_odd_large(&self) -> usize {
        self.inner_face_counts
            .iter()
            .filter(|(&s, _)| s >= 5 && s % 2 == 1)
            .map(|(_, &c)| c)
            .sum()
    }

    pub fn is_triangulation(&self) -> bool {
        self.face_counts.keys().all(|&s| s == 3)
    }

    /// Evaluates the Euler-derived identities for regular graphs.
    pub fn regular_identities(&self) -> Result<Vec<IdentityCheck>, CensusError> {
        let r = self.regularity.ok_or(CensusError::NotRegular)? as i64;
        let sum_i: i64 = self
            .face_counts
            .iter()
            .map(|(&i, &a)| i as i64 * a as i64)
            .sum();
        let sum_a: i64 = self.face_counts.values().map(|&a| a as i64).sum();
        // 2r = sum (i - r(i-2)/2) A_i, doubled to stay integral.
        let weighted: i64 = self
            .face_counts
            .iter()
            .map(|(&i, &a)| (2 * i as i64 - r * (i as i64 - 2)) * a as i64)
            .sum();
        let n = self.n as i64;
        let mut out = vec![
            IdentityCheck::new("2|E| = sum i*A_i", 2 * self.edge_count as i64, sum_i),
            IdentityCheck::new("r|V| = sum i*A_i", r * n, sum_i),
            IdentityCheck::new("|F| = sum A_i", self.face_count as i64, sum_a),
            IdentityCheck::new("4r = sum (2i - r(i-2)) A_i", 4 * r, weighted),
        ];
        // |E| = 2|V| makes n = |F| - 2 specific to degree 4.
        if r == 4 {
            out.push(IdentityCheck::new(
                "n = |F| - 2",
                n,
                self.face_count as i64 - 2,
            ));
        }
        Ok(out)
    }

    /// Runs [`Self::regular_identities`] and fails on the first violation.
    pub fn validate(&self) -> Result<(), CensusError> {
        if self.regularity.is_none() {
            return Ok(());
        }
        for check in self.regular_identities()? {
            if !check.holds {
                return Err(CensusError::IdentityFailed(check.name));
            }
        }
        Ok(())
    }

    /// Minimum number of inner triangles, `4 + k`, of a 4-regular matchstick graph.
    pub fn triangle_lower_bound_4regular(&self) -> Result<usize, CensusError> {
        match self.regularity {
            Some(4) => {}
            Some(r) => return Err(CensusError::NotFourRegular(r)),
            None => return Err(CensusError::NotRegular),
        }
        if self.k < 5 {
            return Err(CensusError::OuterFaceTooSmall(self.k));
        }
        Ok(4 + self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(name: &'static str, lhs: i64, rhs: i64) -> Self {
        Self {
            name,
            lhs,
            rhs,
            holds: lhs == rhs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census_with(counts: &[(usize, usize)], k: usize, n: usize, r: Option<usize>) -> FaceCensus {
        let face_counts: BTreeMap<usize, usize> = counts.iter().copied().collect();
        let edge_count = face_counts.iter().map(|(i, a)| i * a).sum::<usize>() / 2;
        let mut inner = face_counts.clone();
        *inner.get_mut(&k).unwrap() -= 1;
        inner.retain(|_, c| *c > 0);
        FaceCensus {
            n,
            edge_count,
            face_count: face_counts.values().sum(),
            k,
            face_counts,
            inner_face_counts: inner,
            regularity: r,
            interior_vertex_count: n.saturating_sub(k),
        }
    }

    #[test]
    fn icosahedron_identities() {
        let c = census_with(&[(3, 20)], 3, 12, Some(5));
        let checks = c.regular_identities().unwrap();
        assert_eq!(checks.len(), 4);
        assert!(checks.iter().all(|c| c.holds));
        assert_eq!(checks[3].lhs, 20);
        assert_eq!(checks[3].rhs, 20);
    }

    #[test]
    fn octahedron_identities() {
        let c = census_with(&[(3, 8)], 3, 6, Some(4));
        let checks = c.regular_identities().unwrap();
        assert_eq!(checks.len(), 5);
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
        // A_3 - A_5 - 2A_6 - ... = 8 = 2r
        assert_eq!(checks[3].rhs, 16);
        assert!(c.is_triangulation());
    }

    #[test]
    fn corrupted_census_fails_validation() {
        let c = census_with(&[(3, 7), (4, 1)], 3, 6, Some(4));
        assert!(matches!(c.validate(), Err(CensusError::IdentityFailed(_))));
    }

    #[test]
    fn triangle_bound() {
        let c = census_with(&[(3, 11), (7, 1)], 7, 0, Some(4));
        assert_eq!(c.triangle_lower_bound_4regular(), Ok(11));
        let c = census_with(&[(3, 9), (5, 1)], 5, 0, Some(4));
        assert_eq!(c.triangle_lower_bound_4regular(), Ok(9));
        let c = census_with(&[(3, 16), (12, 1)], 12, 0, Some(4));
        assert_eq!(c.triangle_lower_bound_4regular(), Ok(16));
        let c = census_with(&[(3, 8)], 3, 6, Some(4));
        assert_eq!(
            c.triangle_lower_bound_4regular(),
            Err(CensusError::OuterFaceTooSmall(3))
        );
        let c = census_with(&[(3, 20)], 3, 12, Some(5));
        assert_eq!(
            c.triangle_lower_bound_4regular(),
            Err(CensusError::NotFourRegular(5))
        );
        assert_eq!(
            c.clone().with_regularity(None).regular_identities(),
            Err(CensusError::NotRegular)
        );
    }

    impl FaceCensus {
        fn with_regularity(mut self, r: Option<usize>) -> Self {
            self.regularity = r;
            self
        }
    }
}
