use std::collections::BTreeMap;

use serde::Serialize;

use crate::census::FaceCensus;
use crate::planar::{FaceSet, OuterFaceChoice};

use super::{CriterionKind, CriterionVerdict, Outcome, Witness};

/// A straight strip of inner triangles glued edge to edge.
///
/// Consecutive triangles share an edge, and the apex of an internal triangle
/// (the common vertex of its two glued edges) alternates between the two
/// sides of the strip, which rules out fans around a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleChain {
    /// Face ids in strip order.
    pub triangles: Vec<usize>,
    /// Apex vertex of every internal triangle, in strip order. A cyclic
    /// strip has an apex for every triangle.
    pub apexes: Vec<usize>,
    /// The strip closes up on itself.
    pub cyclic: bool,
}

impl TriangleChain {
    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// Length `s` of the bottom path `x_0 .. x_s` of the largest odd strip
    /// contained in this one.
    pub fn bottom_path_length(&self) -> usize {
        self.triangles.len().div_ceil(2)
    }
}

struct Strips<'a> {
    faces: &'a FaceSet,
    outer: &'a OuterFaceChoice,
    in_chain: Vec<bool>,
}

enum Stop {
    End,
    Closed,
}

impl Strips<'_> {
    fn inner_triangle(&self, f: usize) -> bool {
        self.outer.is_inner_face(f) && self.faces.face_size(f) == 3
    }

    fn third_vertex(&self, f: usize, a: usize, b: usize) -> usize {
        self.faces
            .face_vertices(f)
            .find(|&v| v != a && v != b)
            .expect("triangle has three distinct vertices")
    }

    fn across(&self, f: usize, a: usize, b: usize) -> Option<usize> {
        self.faces.face_corners(f).iter().find_map(|&c| {
            let (u, v) = (self.faces.corner_vertex(c), self.faces.corner_head(c));
            ((u == a && v == b) || (u == b && v == a)).then(|| self.faces.face_across(c))
        })
    }

    /// Walks away from edge `entry` of triangle `f`, whose apex is `apex`.
    /// Each next apex is the vertex opposite the previous entry edge. The
    /// walk closes if it re-enters `start.0` with apex `start.1`.
    fn walk(
        &mut self,
        mut f: usize,
        mut entry: (usize, usize),
        mut apex: usize,
        start: (usize, usize),
        out: &mut Vec<(usize, usize)>,
    ) -> Stop {
        loop {
            out.push((f, apex));
            let r = self.third_vertex(f, entry.0, entry.1);
            let Some(g) = self.across(f, apex, r) else {
                return Stop::End;
            };
            if !self.inner_triangle(g) {
                return Stop::End;
            }
            if g == start.0 && r == start.1 {
                return Stop::Closed;
            }
            if self.in_chain[g] {
                return Stop::End;
            }
            self.in_chain[g] = true;
            entry = (apex, r);
            apex = r;
            f = g;
        }
    }
}

/// All maximal straight strips among the inner triangles, in a canonical
/// order. Isolated inner triangles are strips of length one.
pub fn find_triangle_chains(faces: &FaceSet, outer: &OuterFaceChoice) -> Vec<TriangleChain> {
    let mut strips = Strips {
        faces,
        outer,
        in_chain: vec![false; faces.face_count()],
    };
    let mut found: BTreeMap<Vec<usize>, TriangleChain> = BTreeMap::new();
    for a in 0..faces.face_count() {
        if !strips.inner_triangle(a) {
            continue;
        }
        let mut glued = false;
        for &c in faces.face_corners(a) {
            let b = faces.face_across(c);
            if !strips.inner_triangle(b) || b == a {
                continue;
            }
            glued = true;
            if b < a {
                continue;
            }
            let edge = (faces.corner_vertex(c), faces.corner_head(c));
            for (apex_b, apex_a) in [(edge.0, edge.1), (edge.1, edge.0)] {
                strips.in_chain.iter_mut().for_each(|m| *m = false);
                strips.in_chain[a] = true;
                strips.in_chain[b] = true;
                let mut fwd = Vec::new();
                let closed = matches!(strips.walk(b, edge, apex_b, (a, apex_a), &mut fwd), Stop::Closed);
                let mut seq = Vec::new();
                if closed {
                    seq.push((a, apex_a));
                } else {
                    strips.walk(a, edge, apex_a, (usize::MAX, usize::MAX), &mut seq);
                    seq.reverse();
                }
                seq.extend(fwd);
                let chain = make_chain(seq, closed);
                let key = if closed {
                    let mut k = chain.triangles.clone();
                    k.sort_unstable();
                    k
                } else {
                    chain.triangles.clone()
                };
                found.entry(key).or_insert(chain);
            }
        }
        if !glued {
            found.insert(
                vec![a],
                TriangleChain {
                    triangles: vec![a],
                    apexes: Vec::new(),
                    cyclic: false,
                },
            );
        }
    }
    found.into_values().collect()
}

fn make_chain(seq: Vec<(usize, usize)>, cyclic: bool) -> TriangleChain {
    let mut triangles: Vec<usize> = seq.iter().map(|&(f, _)| f).collect();
    let mut apexes: Vec<usize> = if cyclic {
        seq.iter().map(|&(_, v)| v).collect()
    } else if seq.len() > 2 {
        seq[1..seq.len() - 1].iter().map(|&(_, v)| v).collect()
    } else {
        Vec::new()
    };
    if !cyclic && triangles.last() < triangles.first() {
        triangles.reverse();
        apexes.reverse();
    }
    TriangleChain {
        triangles,
        apexes,
        cyclic,
    }
}

/// A strip of `t` triangles contains the convex strip with bottom path
/// `s = ceil(t/2)` and perimeter `2s + 1`; an equilateral outer polygon that
/// strictly contains it has perimeter at least `2s + 2`.
///
/// The bound does not apply when the strip is the whole inner region (the
/// outer polygon is then the strip's own boundary) or when every face is a
/// triangle.
pub fn triangle_chain_criterion(chains: &[TriangleChain], census: &FaceCensus) -> CriterionVerdict {
    let triangulation = census.is_triangulation();
    let inner_faces = census.face_count - 1;
    let inner_triangulation = !triangulation && census.inner_count(3) == inner_faces;
    let pass = CriterionVerdict {
        criterion: CriterionKind::TriangleChain,
        outcome: Outcome::Pass,
        witness: Witness::ChainsChecked {
            chains: chains.len(),
            longest: chains.iter().map(TriangleChain::triangle_count).max().unwrap_or(0),
            triangulation,
            inner_triangulation,
        },
    };
    if triangulation {
        return pass;
    }
    let k = census.k;
    for chain in chains {
        let t = chain.triangle_count();
        if !chain.cyclic && t == inner_faces {
            continue;
        }
        let s = chain.bottom_path_length();
        if k < 2 * s + 2 {
            return CriterionVerdict {
                criterion: CriterionKind::TriangleChain,
                outcome: Outcome::Reject,
                witness: Witness::TriangleChain {
                    triangles: chain.triangles.clone(),
                    apexes: chain.apexes.iter().map(|v| v + 1).collect(),
                    t,
                    s,
                    k,
                    required_k: 2 * s + 2,
                    cyclic: chain.cyclic,
                },
            };
        }
    }
    pass
}
