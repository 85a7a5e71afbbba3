use std::collections::BTreeSet;

use super::embedding::{DartIndex, PlanarEmbedding};

/// A vertex–face incidence. Corner `c` is identified with the dart leaving
/// its vertex inside its face, so there are exactly `2|E|` corners.
pub type CornerId = usize;

/// The faces of an embedding, traced once.
///
/// Face `f` is stored as the cyclic list of darts on its boundary. The corner
/// at position `i` of face `f` sits at the tail of the `i`-th dart; positions
/// `i` and `i + 1 (mod |f|)` are neighbouring angles of that face.
#[derive(Debug, Clone)]
pub struct FaceSet {
    vertex_count: usize,
    edge_count: usize,
    faces: Vec<Vec<CornerId>>,
    corner_vertex: Vec<usize>,
    corner_face: Vec<usize>,
    corner_pos: Vec<usize>,
    corner_head: Vec<usize>,
    corner_twin: Vec<CornerId>,
    /// Corners around each vertex in rotation order.
    vertex_corners: Vec<Vec<CornerId>>,
}

impl FaceSet {
    pub fn trace(g: &PlanarEmbedding) -> Self {
        let darts = DartIndex::new(g);
        let m = darts.len();
        const NONE: usize = usize::MAX;
        let mut corner_face = vec![NONE; m];
        let mut corner_pos = vec![0; m];
        let mut faces = Vec::new();
        for start in 0..m {
            if corner_face[start] != NONE {
                continue;
            }
            let f = faces.len();
            let mut boundary = Vec::new();
            let mut d = start;
            while corner_face[d] == NONE {
                corner_face[d] = f;
                corner_pos[d] = boundary.len();
                boundary.push(d);
                d = darts.successor(g, d);
            }
            debug_assert_eq!(d, start);
            faces.push(boundary);
        }
        let corner_vertex = (0..m).map(|d| darts.tail(d)).collect();
        let corner_head = (0..m).map(|d| darts.head(g, d)).collect();
        let corner_twin = (0..m).map(|d| darts.twin(g, d)).collect();
        let vertex_corners = (0..g.vertex_count())
            .map(|v| (0..g.degree(v)).map(|i| darts.dart(v, i)).collect())
            .collect();
        Self {
            vertex_count: g.vertex_count(),
            edge_count: g.edge_count(),
            faces,
            corner_vertex,
            corner_face,
            corner_pos,
            corner_head,
            corner_twin,
            vertex_corners,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn corner_count(&self) -> usize {
        self.corner_vertex.len()
    }

    pub fn face_size(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    pub fn face_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.faces.iter().map(Vec::len)
    }

    /// Corners of face `f` in boundary order.
    pub fn face_corners(&self, f: usize) -> &[CornerId] {
        &self.faces[f]
    }

    /// Vertices of face `f` in boundary order (with repetition for non-2-connected graphs).
    pub fn face_vertices(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        self.faces[f].iter().map(|&c| self.corner_vertex[c])
    }

    /// Undirected edges of face `f`, each as `(tail, head)` of its boundary dart.
    pub fn face_edges(&self, f: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.faces[f]
            .iter()
            .map(|&c| (self.corner_vertex[c], self.corner_head[c]))
    }

    pub fn corner_vertex(&self, c: CornerId) -> usize {
        self.corner_vertex[c]
    }

    pub fn corner_face(&self, c: CornerId) -> usize {
        self.corner_face[c]
    }

    /// The other endpoint of the boundary edge leaving corner `c`.
    pub fn corner_head(&self, c: CornerId) -> usize {
        self.corner_head[c]
    }

    /// The face across the boundary edge leaving corner `c`.
    pub fn face_across(&self, c: CornerId) -> usize {
        self.corner_face[self.corner_twin[c]]
    }

    /// Position of corner `c` along its face boundary.
    pub fn corner_position(&self, c: CornerId) -> usize {
        self.corner_pos[c]
    }

    /// Corners around `v`, in rotation order.
    pub fn corners_at(&self, v: usize) -> &[CornerId] {
        &self.vertex_corners[v]
    }

    /// The faces around `v` in cyclic order, one entry per corner.
    pub fn incident_faces(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertex_corners[v].iter().map(|&c| self.corner_face[c])
    }

    /// Corner positions of `v` on face `f`.
    pub fn corner_index(&self, v: usize, f: usize) -> Vec<usize> {
        self.vertex_corners[v]
            .iter()
            .filter(|&&c| self.corner_face[c] == f)
            .map(|&c| self.corner_pos[c])
            .collect()
    }

    /// Whether every face boundary visits each vertex at most once.
    pub fn faces_are_simple(&self) -> bool {
        let mut mark = vec![usize::MAX; self.vertex_count];
        for (f, face) in self.faces.iter().enumerate() {
            for &c in face {
                let v = self.corner_vertex[c];
                if mark[v] == f {
                    return false;
                }
                mark[v] = f;
            }
        }
        true
    }

    pub fn outer_face_choice(&self, outer_face: usize) -> OuterFaceChoice {
        let mut on_boundary = vec![false; self.vertex_count];
        for v in self.face_vertices(outer_face) {
            on_boundary[v] = true;
        }
        let boundary_vertices = (0..self.vertex_count).filter(|&v| on_boundary[v]).collect();
        let interior_vertices = (0..self.vertex_count).filter(|&v| !on_boundary[v]).collect();
        OuterFaceChoice {
            outer_face,
            k: self.face_size(outer_face),
            on_boundary,
            boundary_vertices,
            interior_vertices,
        }
    }

    /// `fs(v)` and `fn(v)` for every vertex.
    pub fn vertex_face_profiles(&self) -> Vec<VertexFaceProfile> {
        (0..self.vertex_count)
            .map(|v| {
                let mut face_sizes: Vec<usize> =
                    self.incident_faces(v).map(|f| self.face_size(f)).collect();
                face_sizes.sort_unstable();
                let mut face_neighbors = BTreeSet::new();
                for f in self.incident_faces(v) {
                    face_neighbors.extend(self.face_vertices(f).filter(|&u| u != v));
                }
                VertexFaceProfile {
                    vertex: v,
                    face_sizes,
                    face_neighbors,
                }
            })
            .collect()
    }
}

/// A face designated as unbounded, with the induced boundary/interior split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterFaceChoice {
    pub outer_face: usize,
    /// Number of darts on the outer face.
    pub k: usize,
    pub boundary_vertices: Vec<usize>,
    pub interior_vertices: Vec<usize>,
    on_boundary: Vec<bool>,
}

impl OuterFaceChoice {
    pub fn is_boundary(&self, v: usize) -> bool {
        self.on_boundary[v]
    }

    pub fn is_inner_face(&self, f: usize) -> bool {
        f != self.outer_face
    }
}

/// Face sizes around a vertex (`fs`, sorted, one entry per corner) and the
/// other vertices on those faces (`fn`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFaceProfile {
    pub vertex: usize,
    pub face_sizes: Vec<usize>,
    pub face_neighbors: BTreeSet<usize>,
}
