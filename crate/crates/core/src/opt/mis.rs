//! Maximum independent set on a small conflict graph by branch and bound.
//!
//! The binary program `max sum x_v, x_u + x_v <= 1 on conflict edges` is
//! solved exactly. The bound at each node is the current size plus a greedy
//! clique cover of the remaining candidates.

use serde::Serialize;

use crate::geometry::ConfigurationCenter;
use crate::planar::VertexFaceProfile;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    adj: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlpOutcome {
    pub optimum: usize,
    /// Chosen vertices in increasing order.
    pub chosen: Vec<usize>,
    pub node_count: u64,
}

impl ConflictGraph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u][v] = true;
            self.adj[v][u] = true;
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.adj[u][v]))
    }

    fn clique_cover_size(&self, cand: &[usize]) -> usize {
        let mut cliques: Vec<Vec<usize>> = Vec::new();
        for &v in cand {
            match cliques
                .iter_mut()
                .find(|c| c.iter().all(|&u| self.adj[u][v]))
            {
                Some(c) => c.push(v),
                None => cliques.push(vec![v]),
            }
        }
        cliques.len()
    }

    /// Exact maximum independent set. Branches on the lowest remaining id,
    /// including it first; ties keep the first set found.
    pub fn max_independent_set(&self) -> BlpOutcome {
        let mut search = Search {
            g: self,
            best: Vec::new(),
            current: Vec::new(),
            nodes: 0,
        };
        let cand: Vec<usize> = (0..self.vertex_count()).collect();
        search.branch(&cand);
        BlpOutcome {
            optimum: search.best.len(),
            chosen: search.best,
            node_count: search.nodes,
        }
    }
}

/// The configuration program: eligible centers, with `x_v + x_u <= 1`
/// whenever `u` lies on a face around `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictBlp {
    /// Graph vertex ids, increasing.
    pub eligible_vertices: Vec<usize>,
    pub conflicts: ConflictGraph,
}

impl ConflictBlp {
    pub fn new(centers: &[ConfigurationCenter], profiles: &[VertexFaceProfile]) -> Self {
        let mut eligible_vertices: Vec<usize> = centers.iter().map(|c| c.vertex).collect();
        eligible_vertices.sort_unstable();
        eligible_vertices.dedup();
        let mut conflicts = ConflictGraph::new(eligible_vertices.len());
        for (i, &v) in eligible_vertices.iter().enumerate() {
            for (j, &u) in eligible_vertices.iter().enumerate().skip(i + 1) {
                if profiles[v].face_neighbors.contains(&u) || profiles[u].face_neighbors.contains(&v) {
                    conflicts.add_edge(i, j);
                }
            }
        }
        Self {
            eligible_vertices,
            conflicts,
        }
    }

    /// Solves the program; `chosen` holds graph vertex ids.
    pub fn solve(&self) -> BlpOutcome {
        let mut out = self.conflicts.max_independent_set();
        for v in out.chosen.iter_mut() {
            *v = self.eligible_vertices[*v];
        }
        out
    }
}

struct Search<'a> {
    g: &'a ConflictGraph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn branch(&mut self, cand: &[usize]) {
        self.nodes += 1;
        let Some((&v, rest)) = cand.split_first() else {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        };
        if self.current.len() + self.g.clique_cover_size(cand) <= self.best.len() {
            return;
        }
        let without_nbrs: Vec<usize> = rest.iter().copied().filter(|&u| !self.g.adj[v][u]).collect();
        self.current.push(v);
        self.branch(&without_nbrs);
        self.current.pop();
        self.branch(rest);
    }
}
