//! Random polyominoes and polyiamonds drawn on the unit square or triangular
//! lattice. Every edge is a unit segment and no two edges cross, so these
//! are matchstick graphs by construction.
//!
//! Shapes are grown cell by cell and kept homeomorphic to a disk (no holes,
//! no cells touching at a single vertex), so the graphs are 2-connected and
//! the unbounded face is a simple cycle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::planar::{format_rotation_text, PlanarEmbedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeKind {
    Square,
    Triangular,
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeKind::Square => "square",
            LatticeKind::Triangular => "triangular",
        })
    }
}

impl FromStr for LatticeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "square" => Ok(LatticeKind::Square),
            "triangular" => Ok(LatticeKind::Triangular),
            other => Err(format!("unknown lattice `{other}`")),
        }
    }
}

/// A lattice cell. Square cells are unit squares with lower-left corner
/// `(a, b)`. Triangular cells use lattice coordinates where `(a, b)` sits at
/// `a + b/2, b*sqrt(3)/2`: the up triangle has corners `(a,b), (a+1,b),
/// (a,b+1)` and the down triangle `(a+1,b), (a,b+1), (a+1,b+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub a: i32,
    pub b: i32,
    pub up: bool,
}

impl Cell {
    pub fn square(a: i32, b: i32) -> Self {
        Self { a, b, up: true }
    }

    pub fn up(a: i32, b: i32) -> Self {
        Self { a, b, up: true }
    }

    pub fn down(a: i32, b: i32) -> Self {
        Self { a, b, up: false }
    }
}

type Point = (i32, i32);

fn corners(kind: LatticeKind, c: Cell) -> Vec<Point> {
    let (a, b) = (c.a, c.b);
    match (kind, c.up) {
        (LatticeKind::Square, _) => vec![(a, b), (a + 1, b), (a + 1, b + 1), (a, b + 1)],
        (LatticeKind::Triangular, true) => vec![(a, b), (a + 1, b), (a, b + 1)],
        (LatticeKind::Triangular, false) => vec![(a + 1, b), (a, b + 1), (a + 1, b + 1)],
    }
}

fn neighbours(kind: LatticeKind, c: Cell) -> Vec<Cell> {
    let (a, b) = (c.a, c.b);
    match (kind, c.up) {
        (LatticeKind::Square, _) => vec![
            Cell::square(a + 1, b),
            Cell::square(a - 1, b),
            Cell::square(a, b + 1),
            Cell::square(a, b - 1),
        ],
        (LatticeKind::Triangular, true) => {
            vec![Cell::down(a, b), Cell::down(a - 1, b), Cell::down(a, b - 1)]
        }
        (LatticeKind::Triangular, false) => {
            vec![Cell::up(a, b), Cell::up(a + 1, b), Cell::up(a, b + 1)]
        }
    }
}

/// Cells around a lattice point in counter-clockwise order.
fn cells_around(kind: LatticeKind, (x, y): Point) -> Vec<Cell> {
    match kind {
        LatticeKind::Square => vec![
            Cell::square(x, y),
            Cell::square(x - 1, y),
            Cell::square(x - 1, y - 1),
            Cell::square(x, y - 1),
        ],
        LatticeKind::Triangular => vec![
            Cell::up(x, y),
            Cell::down(x - 1, y),
            Cell::up(x - 1, y),
            Cell::down(x - 1, y - 1),
            Cell::up(x, y - 1),
            Cell::down(x, y - 1),
        ],
    }
}

fn position(kind: LatticeKind, (x, y): Point) -> (f64, f64) {
    match kind {
        LatticeKind::Square => (x as f64, y as f64),
        LatticeKind::Triangular => (x as f64 + y as f64 / 2.0, y as f64 * 3f64.sqrt() / 2.0),
    }
}

/// The cells at `p` that belong to the shape form one contiguous arc.
fn single_arc(kind: LatticeKind, cells: &BTreeSet<Cell>, p: Point) -> bool {
    let inside: Vec<bool> = cells_around(kind, p).iter().map(|c| cells.contains(c)).collect();
    let changes = (0..inside.len())
        .filter(|&i| inside[i] && !inside[(i + 1) % inside.len()])
        .count();
    changes <= 1
}

fn edges_of(kind: LatticeKind, cells: &BTreeSet<Cell>) -> (BTreeSet<Point>, BTreeSet<(Point, Point)>) {
    let mut points = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for &c in cells {
        let cs = corners(kind, c);
        for i in 0..cs.len() {
            let (p, q) = (cs[i], cs[(i + 1) % cs.len()]);
            points.insert(p);
            edges.insert(if p < q { (p, q) } else { (q, p) });
        }
    }
    (points, edges)
}

/// Whether the union of `cells` is a closed disk.
pub fn is_disk(kind: LatticeKind, cells: &BTreeSet<Cell>) -> bool {
    if cells.is_empty() {
        return false;
    }
    let (points, edges) = edges_of(kind, cells);
    let euler = points.len() as i64 - edges.len() as i64 + cells.len() as i64;
    euler == 1 && points.iter().all(|&p| single_arc(kind, cells, p))
}

/// The graph of a disk-shaped union of cells, with rotations taken from the
/// lattice geometry (clockwise, as in `planar_code`). Vertices are numbered
/// in lexicographic order of their lattice coordinates.
pub fn polyform_graph(kind: LatticeKind, cells: &BTreeSet<Cell>) -> PlanarEmbedding {
    let (points, edges) = edges_of(kind, cells);
    let id: BTreeMap<Point, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let pos: Vec<(f64, f64)> = points.iter().map(|&p| position(kind, p)).collect();
    let edges: Vec<(usize, usize)> = edges.iter().map(|(p, q)| (id[p], id[q])).collect();
    PlanarEmbedding::from_straight_line(&pos, &edges).expect("lattice shapes are plane graphs")
}

/// A `w x h` block of unit squares.
pub fn square_block(w: i32, h: i32) -> PlanarEmbedding {
    let cells = (0..w)
        .flat_map(|a| (0..h).map(move |b| Cell::square(a, b)))
        .collect();
    polyform_graph(LatticeKind::Square, &cells)
}

/// Grows a random disk of `size` cells from the cell at the origin.
pub fn random_polyform(kind: LatticeKind, size: usize, rng: &mut impl Rng) -> BTreeSet<Cell> {
    let mut cells = BTreeSet::from([Cell::up(0, 0)]);
    while cells.len() < size {
        let mut frontier: Vec<Cell> = cells
            .iter()
            .flat_map(|&c| neighbours(kind, c))
            .filter(|c| !cells.contains(c))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        frontier.shuffle(rng);
        let grown = frontier.into_iter().find(|&c| {
            cells.insert(c);
            let ok = is_disk(kind, &cells);
            if !ok {
                cells.remove(&c);
            }
            ok
        });
        if grown.is_none() {
            break;
        }
    }
    cells
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpec {
    pub seed: u64,
    pub count: usize,
    /// Cells per shape, drawn uniformly from this range.
    pub cells: RangeInclusive<usize>,
    /// Lattice to use; `None` picks one at random per shape.
    pub kind: Option<LatticeKind>,
}

#[derive(Debug, Clone)]
pub struct LatticeGraph {
    pub kind: LatticeKind,
    pub cells: usize,
    pub graph: PlanarEmbedding,
}

/// Deterministic corpus of lattice matchstick graphs.
pub fn generate_lattice_corpus(spec: &LatticeSpec) -> Vec<LatticeGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count)
        .map(|i| {
            let kind = spec.kind.unwrap_or_else(|| {
                if rng.gen_bool(0.5) {
                    LatticeKind::Square
                } else {
                    LatticeKind::Triangular
                }
            });
            let size = rng.gen_range(spec.cells.clone());
            let cells = random_polyform(kind, size.max(1), &mut rng);
            let name = format!("lattice-{}-{}-{}-{}", spec.seed, i, kind, cells.len());
            LatticeGraph {
                kind,
                cells: cells.len(),
                graph: polyform_graph(kind, &cells).with_name(name),
            }
        })
        .collect()
}

/// The corpus as rotation text, blocks separated by blank lines.
pub fn lattice_corpus_text(spec: &LatticeSpec) -> String {
    let blocks: Vec<String> = generate_lattice_corpus(spec)
        .iter()
        .map(|l| format_rotation_text(&l.graph, "lattice"))
        .collect();
    blocks.join("\n")
}
