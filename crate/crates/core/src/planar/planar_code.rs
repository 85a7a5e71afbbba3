//! plantri's binary `planar_code` format.
//!
//! After the 15-byte header `>>planar_code<<`, each graph is written as its
//! vertex count followed, for every vertex in turn, by its neighbours in
//! clockwise order and a terminating `0`. Vertex ids are 1-based. Graphs with
//! at most 255 vertices use one byte per entry; larger graphs start with a
//! `0` byte and then use 16-bit little-endian words for every entry, the
//! count included.

use std::io::{self, Read, Write};

use crate::error::{ParseError, ParseErrorKind, Position, SerializeError};

use super::PlanarEmbedding;

pub const HEADER: &[u8; 15] = b">>planar_code<<";

/// Streaming reader over a `planar_code` byte stream.
pub struct PlanarCodeReader<R> {
    inner: R,
    offset: u64,
    graph_index: usize,
    header_checked: bool,
    finished: bool,
}

impl<R: Read> PlanarCodeReader<R> {
    pub fn new(inner: R) -> Self {
        Self {
            inner,
            offset: 0,
            graph_index: 0,
            header_checked: false,
            finished: false,
        }
    }

    /// Builds a reader whose header has already been consumed by the caller.
    pub fn after_header(inner: R) -> Self {
        Self {
            inner,
            offset: HEADER.len() as u64,
            graph_index: 0,
            header_checked: true,
            finished: false,
        }
    }

    fn error(&self, offset: u64, kind: ParseErrorKind) -> ParseError {
        ParseError {
            graph_index: self.graph_index,
            position: Position::Byte(offset),
            kind,
        }
    }

    /// Fills `buf` entirely, returning how many bytes were available.
    fn read_full(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let mut filled = 0;
        while filled < buf.len() {
            match self.inner.read(&mut buf[filled..]) {
                Ok(0) => break,
                Ok(k) => filled += k,
                Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
                Err(e) => return Err(e),
            }
        }
        self.offset += filled as u64;
        Ok(filled)
    }

    fn read_entry(&mut self, wide: bool, record_start: u64) -> Result<usize, ParseError> {
        let mut buf = [0u8; 2];
        let width = if wide { 2 } else { 1 };
        let got = self
            .read_full(&mut buf[..width])
            .map_err(|e| self.error(self.offset, ParseErrorKind::Io(e)))?;
        if got < width {
            return Err(self.error(record_start, ParseErrorKind::Truncated));
        }
        Ok(if wide {
            u16::from_le_bytes(buf) as usize
        } else {
            buf[0] as usize
        })
    }

    fn read_record(&mut self) -> Result<Option<PlanarEmbedding>, ParseError> {
        if !self.header_checked {
            self.header_checked = true;
            let mut header = [0u8; 15];
            let got = self
                .read_full(&mut header)
                .map_err(|e| self.error(0, ParseErrorKind::Io(e)))?;
            if got < header.len() || &header != HEADER {
                return Err(self.error(0, ParseErrorKind::BadHeader));
            }
        }
        let start = self.offset;
        let mut first = [0u8; 1];
        let got = self
            .read_full(&mut first)
            .map_err(|e| self.error(start, ParseErrorKind::Io(e)))?;
        if got == 0 {
            return Ok(None);
        }
        let (n, wide) = if first[0] == 0 {
            (self.read_entry(true, start)?, true)
        } else {
            (first[0] as usize, false)
        };
        let mut rotation = Vec::with_capacity(n);
        for _ in 0..n {
            let mut row = Vec::new();
            loop {
                let id = self.read_entry(wide, start)?;
                if id == 0 {
                    break;
                }
                row.push(id);
            }
            rotation.push(row);
        }
        PlanarEmbedding::from_one_based(rotation)
            .map(Some)
            .map_err(|e| self.error(start, ParseErrorKind::Invalid(e)))
    }
}

impl<R: Read> Iterator for PlanarCodeReader<R> {
    type Item = Result<PlanarEmbedding, ParseError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        let item = self.read_record();
        let out = match item {
            Ok(None) => {
                self.finished = true;
                None
            }
            Ok(Some(g)) => Some(Ok(g)),
            Err(e) => {
                if !e.is_recoverable() {
                    self.finished = true;
                }
                Some(Err(e))
            }
        };
        self.graph_index += 1;
        out
    }
}

/// Parses a complete in-memory `planar_code` stream.
pub fn parse_planar_code(bytes: &[u8]) -> Result<Vec<PlanarEmbedding>, ParseError> {
    PlanarCodeReader::new(bytes).collect()
}

/// Appends one graph record (no header).
pub fn write_record(out: &mut Vec<u8>, g: &PlanarEmbedding) -> Result<(), SerializeError> {
    let n = g.vertex_count();
    if n > u16::MAX as usize {
        return Err(SerializeError::TooManyVertices(n));
    }
    if n <= u8::MAX as usize {
        out.push(n as u8);
        for v in 0..n {
            out.extend(g.rotation(v).iter().map(|&u| (u + 1) as u8));
            out.push(0);
        }
    } else {
        let word = |out: &mut Vec<u8>, x: usize| out.extend_from_slice(&(x as u16).to_le_bytes());
        out.push(0);
        word(out, n);
        for v in 0..n {
            for &u in g.rotation(v) {
                word(out, u + 1);
            }
            word(out, 0);
        }
    }
    Ok(())
}

pub fn serialize_planar_code<'a>(
    graphs: impl IntoIterator<Item = &'a PlanarEmbedding>,
) -> Result<Vec<u8>, SerializeError> {
    let mut out = HEADER.to_vec();
    for g in graphs {
        write_record(&mut out, g)?;
    }
    Ok(out)
}

pub fn write_planar_code<'a, W: Write>(
    mut w: W,
    graphs: impl IntoIterator<Item = &'a PlanarEmbedding>,
) -> io::Result<()> {
    let bytes = serialize_planar_code(graphs)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    w.write_all(&bytes)
}
