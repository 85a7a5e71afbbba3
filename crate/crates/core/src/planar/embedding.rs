use crate::error::EmbeddingError;

/// A connected simple plane graph given by its rotation system.
///
/// Vertices are `0..n`. `rotation[v]` lists the neighbours of `v` in clockwise
/// order, the convention of plantri's `planar_code`. Construction validates
/// symmetry, simplicity, connectivity and the Euler characteristic, so every
/// value of this type describes a genus-0 embedding.
///
/// Vertex ids inside [`EmbeddingError`] are 1-based, matching the file formats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    rotation: Vec<Vec<usize>>,
    edge_count: usize,
    name: Option<String>,
}

impl PlanarEmbedding {
    /// Validates a 0-based rotation system.
    pub fn new(rotation: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        let n = rotation.len();
        if n < 2 {
            return Err(EmbeddingError::TooSmall(n));
        }
        let mut seen = vec![usize::MAX; n];
        let mut darts = 0usize;
        for (v, nbrs) in rotation.iter().enumerate() {
            for &u in nbrs {
                if u >= n {
                    return Err(EmbeddingError::NeighborOutOfRange {
                        vertex: v + 1,
                        neighbor: u + 1,
                        n,
                    });
                }
                if u == v {
                    return Err(EmbeddingError::SelfLoop(v + 1));
                }
                if seen[u] == v {
                    return Err(EmbeddingError::ParallelEdge(v + 1, u + 1));
                }
                seen[u] = v;
                darts += 1;
            }
        }
        for (v, nbrs) in rotation.iter().enumerate() {
            for &u in nbrs {
                if !rotation[u].contains(&v) {
                    return Err(EmbeddingError::Asymmetric(v + 1, u + 1));
                }
            }
        }
        let embedding = Self {
            edge_count: darts / 2,
            rotation,
            name: None,
        };
        if !embedding.is_connected_without(&[]) {
            return Err(EmbeddingError::Disconnected);
        }
        let faces = embedding.count_faces() as i64;
        let chi = n as i64 - embedding.edge_count as i64 + faces;
        if chi != 2 {
            return Err(EmbeddingError::NotPlanar(chi));
        }
        Ok(embedding)
    }

    /// Validates a rotation system whose entries are 1-based vertex ids.
    pub fn from_one_based(rotation: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        let n = rotation.len();
        let mut zero = Vec::with_capacity(n);
        for (v, nbrs) in rotation.into_iter().enumerate() {
            let mut row = Vec::with_capacity(nbrs.len());
            for u in nbrs {
                if u == 0 || u > n {
                    return Err(EmbeddingError::NeighborOutOfRange {
                        vertex: v + 1,
                        neighbor: u,
                        n,
                    });
                }
                row.push(u - 1);
            }
            zero.push(row);
        }
        Self::new(zero)
    }

    /// Rotation system of a straight-line drawing: neighbours of each vertex
    /// sorted clockwise by direction. Fails if the drawing has crossings
    /// (detected through the Euler characteristic) or is otherwise invalid.
    pub fn from_straight_line(
        positions: &[(f64, f64)],
        edges: &[(usize, usize)],
    ) -> Result<Self, EmbeddingError> {
        let mut rotation = vec![Vec::new(); positions.len()];
        for &(u, v) in edges {
            rotation[u].push(v);
            rotation[v].push(u);
        }
        for (v, nbrs) in rotation.iter_mut().enumerate() {
            let (x, y) = positions[v];
            let angle = |u: usize| -(positions[u].1 - y).atan2(positions[u].0 - x);
            nbrs.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
        }
        Self::new(rotation)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Clockwise neighbour order around `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    /// The common degree if the graph is regular.
    pub fn regularity(&self) -> Option<usize> {
        let r = self.rotation[0].len();
        self.rotation.iter().all(|n| n.len() == r).then_some(r)
    }

    /// Same embedding with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n);
        let mut rotation = vec![Vec::new(); n];
        for (v, nbrs) in self.rotation.iter().enumerate() {
            rotation[perm[v]] = nbrs.iter().map(|&u| perm[u]).collect();
        }
        Self {
            rotation,
            edge_count: self.edge_count,
            name: self.name.clone(),
        }
    }

    /// Is the graph `level`-connected: more than `level` vertices, and still
    /// connected after deleting any `level - 1` of them. Under this reading
    /// `K_m` is exactly `(m-1)`-connected.
    pub fn is_k_connected(&self, level: usize) -> bool {
        let n = self.vertex_count();
        if n <= level {
            return false;
        }
        match level {
            0 => true,
            1 => self.is_connected_without(&[]),
            2 => self.is_biconnected_without(None),
            _ => {
                if self.rotation.iter().any(|r| r.len() < level) {
                    return false;
                }
                if level == 3 {
                    (0..n).all(|v| self.is_biconnected_without(Some(v)))
                } else {
                    self.is_k_connected_brute(level)
                }
            }
        }
    }

    /// Largest `k` in `0..=3` for which the graph is `k`-connected.
    pub fn connectivity_level(&self) -> usize {
        (1..=3).take_while(|&k| self.is_k_connected(k)).count()
    }

    fn is_k_connected_brute(&self, level: usize) -> bool {
        let n = self.vertex_count();
        let mut removed = Vec::new();
        fn rec(g: &PlanarEmbedding, start: usize, left: usize, removed: &mut Vec<usize>) -> bool {
            if !g.is_connected_without(removed) {
                return false;
            }
            if left == 0 {
                return true;
            }
            for v in start..g.vertex_count() {
                removed.push(v);
                let ok = rec(g, v + 1, left - 1, removed);
                removed.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        n > level && rec(self, 0, level - 1, &mut removed)
    }

    pub(crate) fn is_connected_without(&self, removed: &[usize]) -> bool {
        let n = self.vertex_count();
        let mut dead = vec![false; n];
        for &r in removed {
            dead[r] = true;
        }
        let Some(start) = (0..n).find(|&v| !dead[v]) else {
            return true;
        };
        let mut seen = dead.clone();
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.rotation[v] {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        reached == n - removed.len()
    }

    /// Connected and free of articulation points once `skip` is deleted.
    fn is_biconnected_without(&self, skip: Option<usize>) -> bool {
        let n = self.vertex_count();
        let alive = n - usize::from(skip.is_some());
        if alive < 3 {
            return false;
        }
        let Some(root) = (0..n).find(|&v| Some(v) != skip) else {
            return true;
        };
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, UNSEEN, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        let mut visited = 1;
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.2 < self.rotation[v].len() {
                let u = self.rotation[v][top.2];
                top.2 += 1;
                if Some(u) == skip || u == parent {
                    continue;
                }
                if disc[u] == UNSEEN {
                    disc[u] = time;
                    low[u] = time;
                    time += 1;
                    visited += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((u, v, 0));
                } else {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        return false;
                    }
                }
            }
        }
        visited == alive && root_children <= 1
    }

    /// Number of faces traced by the successor rule; used for the genus check.
    fn count_faces(&self) -> usize {
        let darts = DartIndex::new(self);
        let mut used = vec![false; darts.len()];
        let mut faces = 0;
        for d in 0..darts.len() {
            if used[d] {
                continue;
            }
            faces += 1;
            let mut cur = d;
            while !used[cur] {
                used[cur] = true;
                cur = darts.successor(self, cur);
            }
        }
        faces
    }
}

/// Dense numbering of directed edges: dart `offset[v] + i` is `v -> rotation[v][i]`.
#[derive(Debug, Clone)]
pub(crate) struct DartIndex {
    offset: Vec<usize>,
    /// For dart `v -> u`, the position of `v` inside `rotation[u]`.
    back_pos: Vec<usize>,
    tail: Vec<usize>,
}

impl DartIndex {
    pub(crate) fn new(g: &PlanarEmbedding) -> Self {
        let n = g.vertex_count();
        let mut offset = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for v in 0..n {
            offset.push(acc);
            acc += g.degree(v);
        }
        offset.push(acc);
        let mut back_pos = vec![0; acc];
        let mut tail = vec![0; acc];
        for v in 0..n {
            for (i, &u) in g.rotation(v).iter().enumerate() {
                tail[offset[v] + i] = v;
                back_pos[offset[v] + i] = g.rotation(u).iter().position(|&w| w == v).unwrap();
            }
        }
        Self {
            offset,
            back_pos,
            tail,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.tail.len()
    }

    pub(crate) fn dart(&self, v: usize, i: usize) -> usize {
        self.offset[v] + i
    }

    pub(crate) fn tail(&self, d: usize) -> usize {
        self.tail[d]
    }

    pub(crate) fn head(&self, g: &PlanarEmbedding, d: usize) -> usize {
        let v = self.tail[d];
        g.rotation(v)[d - self.offset[v]]
    }

    /// The reverse dart `v -> u` of `u -> v`.
    pub(crate) fn twin(&self, g: &PlanarEmbedding, d: usize) -> usize {
        self.offset[self.head(g, d)] + self.back_pos[d]
    }

    /// `(u -> v)` is followed by `(v -> w)` where `w` comes right after `u` in `rotation[v]`.
    pub(crate) fn successor(&self, g: &PlanarEmbedding, d: usize) -> usize {
        let v = self.head(g, d);
        let deg = g.degree(v);
        self.offset[v] + (self.back_pos[d] + 1) % deg
    }
}
