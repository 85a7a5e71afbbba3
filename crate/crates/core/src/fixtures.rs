//! Built-in rotation-text fixtures.

use thiserror::Error;

use crate::planar::{parse_rotation_text, PlanarEmbedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    /// Expected verdict of a full evaluation with default options.
    pub excluded: bool,
}

impl Fixture {
    pub fn graph(&self) -> PlanarEmbedding {
        parse_rotation_text(self.text)
            .ok()
            .and_then(|mut gs| gs.pop())
            .expect("built-in fixtures parse")
    }
}

macro_rules! fixture {
    ($name:literal, $excluded:expr) => {
        Fixture {
            name: $name,
            text: include_str!(concat!("../fixtures/", $name, ".txt")),
            excluded: $excluded,
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("fig1a", false),
    fixture!("fig1b", false),
    fixture!("fig1c", false),
    fixture!("fig2", true),
    fixture!("fig3", false),
    fixture!("fig4-left", true),
    fixture!("fig4-right", true),
    fixture!("fig5", true),
    fixture!("octahedron", true),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown fixture `{0}`; known: {known}", known = fixture_names().join(", "))]
pub struct UnknownFixture(pub String);

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|f| f.name).collect()
}

pub fn fixture(name: &str) -> Result<&'static Fixture, UnknownFixture> {
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| UnknownFixture(name.to_string()))
}

/// The fixtures that the criteria refute.
pub fn excluded_fixtures() -> impl Iterator<Item = &'static Fixture> {
    FIXTURES.iter().filter(|f| f.excluded)
}

/// Rotation text for the named fixtures (all of them for an empty list),
/// blocks separated by blank lines.
pub fn emit_fixtures(names: &[&str]) -> Result<String, UnknownFixture> {
    let chosen: Vec<&Fixture> = if names.is_empty() {
        FIXTURES.iter().collect()
    } else {
        names.iter().map(|n| fixture(n)).collect::<Result<_, _>>()?
    };
    let blocks: Vec<&str> = chosen.iter().map(|f| f.text.trim_end()).collect();
    Ok(blocks.join("\n\n") + "\n")
}

/// The `n`-gonal antiprism (`n >= 3`), 4-regular and 3-connected, drawn as
/// two concentric rotated `n`-gons.
pub fn antiprism(n: usize) -> PlanarEmbedding {
    assert!(n >= 3, "antiprism needs n >= 3");
    let turn = std::f64::consts::TAU / n as f64;
    let mut positions = Vec::with_capacity(2 * n);
    for i in 0..n {
        let a = turn * i as f64;
        positions.push((a.cos(), a.sin()));
    }
    for i in 0..n {
        let a = turn * (i as f64 + 0.5);
        positions.push((3.0 * a.cos(), 3.0 * a.sin()));
    }
    let mut edges = Vec::with_capacity(4 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        edges.extend([(i, j), (n + i, n + j), (i, n + i), (j, n + i)]);
    }
    PlanarEmbedding::from_straight_line(&positions, &edges)
        .expect("antiprism drawing is plane")
        .with_name(format!("antiprism-{n}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        for f in FIXTURES {
            let g = f.graph();
            assert_eq!(g.name(), Some(f.name));
        }
        assert_eq!(fixture("fig2").unwrap().graph().vertex_count(), 13);
        assert_eq!(fixture("fig5").unwrap().graph().vertex_count(), 14);
        assert_eq!(fixture("octahedron").unwrap().graph().vertex_count(), 6);
        assert_eq!(excluded_fixtures().count(), 5);
    }

    #[test]
    fn antiprisms() {
        for n in 3..9 {
            let g = antiprism(n);
            assert_eq!(g.vertex_count(), 2 * n);
            assert_eq!(g.regularity(), Some(4));
            assert_eq!(g.connectivity_level(), 3);
        }
    }

    #[test]
    fn emit_round_trips() {
        let text = emit_fixtures(&[]).unwrap();
        assert_eq!(parse_rotation_text(&text).unwrap().len(), FIXTURES.len());
        let text = emit_fixtures(&["octahedron"]).unwrap();
        assert!(text.starts_with("# regular octahedron"));
        assert_eq!(
            emit_fixtures(&["fig9"]),
            Err(UnknownFixture("fig9".to_string()))
        );
    }
}
