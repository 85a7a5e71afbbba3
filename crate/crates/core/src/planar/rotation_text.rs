//! Plain-text rotation systems, used for fixtures and hand-written inputs.
//!
//! ```text
//! # comment
//! graph square 4
//! 1: 2 4
//! 2: 3 1
//! 3: 4 2
//! 4: 1 3
//! ```
//!
//! Each block starts with `graph <name> <n>` and lists every vertex once as
//! `v: u1 u2 ...` with the neighbours in clockwise order. Blocks are separated
//! by blank lines; `#` starts a comment.

use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{ParseError, ParseErrorKind, Position};

use super::PlanarEmbedding;

/// Streaming reader over rotation-text blocks.
pub struct RotationTextReader<R> {
    lines: std::io::Lines<R>,
    line_no: usize,
    graph_index: usize,
    done: bool,
}

struct Block {
    name: String,
    n: usize,
    header_line: usize,
    rows: Vec<Option<Vec<usize>>>,
    error: Option<ParseError>,
}

impl<R: BufRead> RotationTextReader<R> {
    pub fn new(inner: R) -> Self {
        Self {
            lines: inner.lines(),
            line_no: 0,
            graph_index: 0,
            done: false,
        }
    }

    fn err(&self, line: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            graph_index: self.graph_index,
            position: Position::Line(line),
            kind,
        }
    }

    fn syntax(&self, line: usize, msg: impl Into<String>) -> ParseError {
        self.err(line, ParseErrorKind::Syntax(msg.into()))
    }

    fn finish(&self, block: Block) -> Result<PlanarEmbedding, ParseError> {
        if let Some(e) = block.error {
            return Err(e);
        }
        let mut rotation = Vec::with_capacity(block.n);
        for (v, row) in block.rows.into_iter().enumerate() {
            match row {
                Some(r) => rotation.push(r),
                None => {
                    return Err(self.err(block.header_line, ParseErrorKind::MissingVertex(v + 1)))
                }
            }
        }
        PlanarEmbedding::from_one_based(rotation)
            .map(|g| g.with_name(block.name))
            .map_err(|e| self.err(block.header_line, ParseErrorKind::Invalid(e)))
    }

    fn parse_vertex_line(&self, block: &mut Block, line: &str) -> Result<(), ParseError> {
        let line_no = self.line_no;
        let (head, tail) = line
            .split_once(':')
            .ok_or_else(|| self.syntax(line_no, format!("expected `v: neighbours`, got `{line}`")))?;
        let v: usize = head
            .trim()
            .parse()
            .map_err(|_| self.syntax(line_no, format!("bad vertex id `{}`", head.trim())))?;
        if v == 0 || v > block.n {
            return Err(self.syntax(line_no, format!("vertex {v} outside 1..={}", block.n)));
        }
        if block.rows[v - 1].is_some() {
            return Err(self.err(line_no, ParseErrorKind::DuplicateVertex(v)));
        }
        let nbrs = tail
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| self.syntax(line_no, format!("bad neighbour id `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        block.rows[v - 1] = Some(nbrs);
        Ok(())
    }
}

impl<R: BufRead> Iterator for RotationTextReader<R> {
    type Item = Result<PlanarEmbedding, ParseError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let mut block: Option<Block> = None;
        loop {
            let raw = match self.lines.next() {
                None => {
                    self.done = true;
                    break;
                }
                Some(Err(e)) => {
                    self.done = true;
                    return Some(Err(self.err(self.line_no + 1, ParseErrorKind::Io(e))));
                }
                Some(Ok(l)) => l,
            };
            self.line_no += 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                // Comment-only lines do not end a block.
                if raw.trim().is_empty() && block.is_some() {
                    break;
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix("graph ").or((line == "graph").then_some("")) {
                if block.is_some() {
                    let e = self.syntax(self.line_no, "`graph` line inside a block; missing blank line");
                    if let Some(b) = block.as_mut() {
                        b.error.get_or_insert(e);
                    }
                    break;
                }
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let (name, n) = match parts.as_slice() {
                    [name, n] => match n.parse::<usize>() {
                        Ok(n) => (name.to_string(), n),
                        Err(_) => (name.to_string(), usize::MAX),
                    },
                    _ => (String::new(), usize::MAX),
                };
                let mut b = Block {
                    name,
                    n: if n == usize::MAX { 0 } else { n },
                    header_line: self.line_no,
                    rows: Vec::new(),
                    error: None,
                };
                if n == usize::MAX {
                    b.error = Some(self.syntax(self.line_no, "expected `graph <name> <n>`"));
                }
                b.rows = vec![None; b.n];
                block = Some(b);
                continue;
            }
            match block.as_mut() {
                None => {
                    let e = self.syntax(self.line_no, "vertex line before any `graph` line");
                    // Skip to the next blank line so the stream can resume.
                    for l in self.lines.by_ref() {
                        self.line_no += 1;
                        if l.map(|l| l.trim().is_empty()).unwrap_or(true) {
                            break;
                        }
                    }
                    self.graph_index += 1;
                    return Some(Err(e));
                }
                Some(b) => {
                    if b.error.is_none() {
                        if let Err(e) = self.parse_vertex_line(b, line) {
                            b.error = Some(e);
                        }
                    }
                }
            }
        }
        let block = block?;
        let out = self.finish(block);
        self.graph_index += 1;
        Some(out)
    }
}

/// Parses a complete rotation-text document.
pub fn parse_rotation_text(text: &str) -> Result<Vec<PlanarEmbedding>, ParseError> {
    RotationTextReader::new(text.as_bytes()).collect()
}

/// Formats one graph as a rotation-text block (1-based ids).
pub fn format_rotation_text(g: &PlanarEmbedding, default_name: &str) -> String {
    let mut s = String::new();
    let name = g.name().unwrap_or(default_name);
    let _ = writeln!(s, "graph {} {}", name, g.vertex_count());
    for v in 0..g.vertex_count() {
        let _ = write!(s, "{}:", v + 1);
        for &u in g.rotation(v) {
            let _ = write!(s, " {}", u + 1);
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::EmbeddingError;

    #[test]
    fn empty_input() {
        assert!(parse_rotation_text("").unwrap().is_empty());
        assert!(parse_rotation_text("# nothing\n\n").unwrap().is_empty());
    }

    #[test]
    fn two_blocks_with_comments() {
        let text = "# squares\ngraph sq 4\n1: 2 4\n2: 3 1 # trailing\n3: 4 2\n4: 1 3\n\n\ngraph tri 3\n1: 2 3\n2: 3 1\n3: 1 2\n";
        let gs = parse_rotation_text(text).unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[0].name(), Some("sq"));
        assert_eq!(gs[1].name(), Some("tri"));
        assert_eq!(gs[1].edge_count(), 3);
    }

    #[test]
    fn parallel_edge() {
        let err = parse_rotation_text("graph bad 3\n1: 2 3\n2: 3 1\n3: 1 2 2\n").unwrap_err();
        assert!(matches!(
            err.kind,
            ParseErrorKind::Invalid(EmbeddingError::ParallelEdge(3, 2))
        ));
    }

    #[test]
    fn duplicate_and_missing_lines() {
        let err = parse_rotation_text("graph d 3\n1: 2 3\n1: 2 3\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::DuplicateVertex(1)));
        assert_eq!(err.position, Position::Line(3));
        let err = parse_rotation_text("graph m 3\n1: 2 3\n2: 3 1\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::MissingVertex(3)));
    }

    #[test]
    fn errors_do_not_stop_the_stream() {
        let text = "graph a 2\n1: 2\n2: 2\n\ngraph b 2\n1: 2\n2: 1\n";
        let results: Vec<_> = RotationTextReader::new(text.as_bytes()).collect();
        assert_eq!(results.len(), 2);
        assert!(results[0].is_err());
        assert_eq!(results[0].as_ref().unwrap_err().graph_index, 0);
        assert_eq!(results[1].as_ref().unwrap().name(), Some("b"));
    }

    #[test]
    fn format_round_trip() {
        let gs = parse_rotation_text("graph t 3\n1: 2 3\n2: 3 1\n3: 1 2\n").unwrap();
        let text = format_rotation_text(&gs[0], "unused");
        assert_eq!(text, "graph t 3\n1: 2 3\n2: 3 1\n3: 1 2\n");
    }
}
