//! Streaming filter: read graphs, evaluate them on a worker pool, and write
//! one JSON line per graph in input order.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, BufReader, Cursor, Read, Write};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::time::Instant;

use crossbeam_channel::{bounded, unbounded};
use serde::Serialize;
use thiserror::Error;

use crate::criteria::{evaluate_graph, CriterionKind, EvaluateOptions, GraphReport, Witness};
use crate::error::{ParseError, ParseErrorKind};
use crate::planar::{PlanarCodeReader, PlanarEmbedding, RotationTextReader};
use crate::planar::planar_code::HEADER;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    /// `planar_code` if the stream starts with its header, text otherwise.
    #[default]
    Auto,
    PlanarCode,
    Text,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(InputFormat::Auto),
            "planar_code" => Ok(InputFormat::PlanarCode),
            "text" => Ok(InputFormat::Text),
            other => Err(format!("unknown format `{other}` (auto, planar_code, text)")),
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::Auto => "auto",
            InputFormat::PlanarCode => "planar_code",
            InputFormat::Text => "text",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterOptions {
    pub evaluate: EvaluateOptions,
    pub format: InputFormat,
    /// Worker threads; 0 uses the available parallelism.
    pub jobs: usize,
    /// Report malformed records and continue instead of stopping.
    pub lenient: bool,
    /// Drop witnesses from the per-criterion verdicts.
    pub compact: bool,
    /// Record per-graph evaluation time. Makes the output nondeterministic.
    pub timing: bool,
}

impl Default for FilterOptions {
    fn default() -> Self {
        Self {
            evaluate: EvaluateOptions::default(),
            format: InputFormat::Auto,
            jobs: 0,
            lenient: false,
            compact: false,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunStats {
    pub graphs_read: usize,
    pub excluded_count: usize,
    pub survivor_count: usize,
    pub error_count: usize,
    /// First rejecting criterion of every refuted candidate outer face.
    pub first_rejection_per_candidate: BTreeMap<String, usize>,
    /// Most frequent first rejection of every excluded graph.
    pub first_rejection_per_graph: BTreeMap<String, usize>,
    pub wall_time_s: f64,
    pub graphs_per_second: f64,
}

impl RunStats {
    fn new() -> Self {
        let zero: BTreeMap<String, usize> = CriterionKind::ALL
            .iter()
            .map(|k| (k.name().to_string(), 0))
            .collect();
        Self {
            graphs_read: 0,
            excluded_count: 0,
            survivor_count: 0,
            error_count: 0,
            first_rejection_per_candidate: zero.clone(),
            first_rejection_per_graph: zero,
            wall_time_s: 0.0,
            graphs_per_second: 0.0,
        }
    }

    fn record(&mut self, report: &GraphReport) {
        self.graphs_read += 1;
        for c in &report.per_outer_face {
            if let Some(k) = c.first_rejection() {
                *self.first_rejection_per_candidate.entry(k.name().to_string()).or_default() += 1;
            }
        }
        if report.excluded {
            self.excluded_count += 1;
            if let Some(k) = report.first_rejecting_criterion() {
                *self.first_rejection_per_graph.entry(k.name().to_string()).or_default() += 1;
            }
        } else {
            self.survivor_count += 1;
        }
    }
}

#[derive(Debug, Error)]
pub enum FilterError {
    #[error("cannot read input: {0}")]
    Input(#[source] io::Error),
    #[error("cannot write output: {0}")]
    Output(#[source] io::Error),
}

#[derive(Debug)]
pub struct FilterOutcome {
    pub stats: RunStats,
    /// The malformed record that stopped a strict run.
    pub aborted: Option<ParseError>,
}

impl FilterOutcome {
    /// 0 for a clean run, 2 if any record was malformed.
    pub fn exit_code(&self) -> i32 {
        if self.aborted.is_some() || self.stats.error_count > 0 {
            2
        } else {
            0
        }
    }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    graph_index: usize,
    error: &'a str,
}

type GraphStream<'a> = Box<dyn Iterator<Item = Result<PlanarEmbedding, ParseError>> + Send + 'a>;

/// Opens a graph stream, sniffing the `planar_code` header for
/// [`InputFormat::Auto`].
pub fn open_graph_stream<'a, R: Read + Send + 'a>(
    mut input: R,
    format: InputFormat,
) -> io::Result<GraphStream<'a>> {
    let mut prefix = Vec::with_capacity(HEADER.len());
    (&mut input).take(HEADER.len() as u64).read_to_end(&mut prefix)?;
    let is_planar_code = match format {
        InputFormat::Auto => prefix == HEADER,
        InputFormat::PlanarCode => true,
        InputFormat::Text => false,
    };
    let rejoined = Cursor::new(prefix).chain(input);
    Ok(if is_planar_code {
        Box::new(PlanarCodeReader::new(rejoined))
    } else {
        Box::new(RotationTextReader::new(BufReader::new(rejoined)))
    })
}

type Evaluated = Result<GraphReport, String>;

fn evaluate(g: &PlanarEmbedding, options: &FilterOptions) -> Evaluated {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| evaluate_graph(g, &options.evaluate)));
    match result {
        Ok(Ok(mut report)) => {
            if options.timing {
                report.timing_us = Some(start.elapsed().as_micros() as u64);
            }
            Ok(report)
        }
        Ok(Err(e)) => Err(e.to_string()),
        Err(_) => Err("internal error during evaluation".to_string()),
    }
}

enum Slot {
    Done(Evaluated),
    Malformed(String),
}

struct Writer<W> {
    out: W,
    compact: bool,
    next: usize,
    pending: BTreeMap<usize, Slot>,
    stats: RunStats,
}

impl<W: Write> Writer<W> {
    fn write_line<T: Serialize>(&mut self, value: &T) -> Result<(), FilterError> {
        let line = serde_json::to_string(value).expect("records serialize");
        writeln!(self.out, "{line}").map_err(FilterError::Output)
    }

    fn emit(&mut self, index: usize, slot: Slot) -> Result<(), FilterError> {
        match slot {
            Slot::Done(Ok(mut report)) => {
                report.graph_index = index;
                self.stats.record(&report);
                if self.compact {
                    for c in &mut report.per_outer_face {
                        for v in &mut c.verdicts {
                            v.witness = Witness::Omitted;
                        }
                    }
                }
                self.write_line(&report)
            }
            Slot::Done(Err(error)) | Slot::Malformed(error) => {
                self.stats.graphs_read += 1;
                self.stats.error_count += 1;
                self.write_line(&ErrorRecord {
                    graph_index: index,
                    error: &error,
                })
            }
        }
    }

    fn push(&mut self, index: usize, slot: Slot) -> Result<(), FilterError> {
        self.pending.insert(index, slot);
        while let Some(slot) = self.pending.remove(&self.next) {
            self.emit(self.next, slot)?;
            self.next += 1;
        }
        Ok(())
    }
}

/// Evaluates every graph of `input` and writes one JSON line per record to
/// `output`, in input order whatever the number of workers.
///
/// Malformed records become `{"graph_index", "error"}` lines when
/// `options.lenient` is set; otherwise the run stops at the first one (after
/// writing the reports of the graphs before it). I/O failures on either side
/// are returned as errors.
pub fn run_filter<R, W>(input: R, output: W, options: &FilterOptions) -> Result<FilterOutcome, FilterError>
where
    R: Read + Send,
    W: Write,
{
    let start = Instant::now();
    let stream = open_graph_stream(input, options.format).map_err(FilterError::Input)?;
    let jobs = match options.jobs {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        j => j,
    };
    let window = 4 * jobs;
    let mut writer = Writer {
        out: output,
        compact: options.compact,
        next: 0,
        pending: BTreeMap::new(),
        stats: RunStats::new(),
    };
    let (work_tx, work_rx) = bounded::<(usize, PlanarEmbedding)>(window);
    let (done_tx, done_rx) = unbounded::<(usize, Evaluated)>();
    let mut aborted = None;
    let result = std::thread::scope(|scope| -> Result<(), FilterError> {
        for _ in 0..jobs {
            let work_rx = work_rx.clone();
            let done_tx = done_tx.clone();
            scope.spawn(move || {
                for (i, g) in work_rx {
                    if done_tx.send((i, evaluate(&g, options))).is_err() {
                        break;
                    }
                }
            });
        }
        drop(done_tx);
        let mut in_flight = 0usize;
        let mut outcome = Ok(());
        for (index, item) in stream.enumerate() {
            match item {
                Ok(g) => {
                    while in_flight >= window {
                        let (i, r) = done_rx.recv().expect("workers alive while work is queued");
                        in_flight -= 1;
                        outcome = outcome.and(writer.push(i, Slot::Done(r)));
                    }
                    work_tx.send((index, g)).expect("workers alive while work is queued");
                    in_flight += 1;
                }
                Err(ParseError {
                    kind: ParseErrorKind::Io(io),
                    ..
                }) => {
                    outcome = outcome.and(Err(FilterError::Input(io)));
                    break;
                }
                Err(e) if options.lenient => {
                    outcome = outcome.and(writer.push(index, Slot::Malformed(e.to_string())));
                }
                Err(e) => {
                    aborted = Some(e);
                    break;
                }
            }
            if outcome.is_err() {
                break;
            }
        }
        drop(work_tx);
        for (i, r) in done_rx.iter() {
            outcome = outcome.and(writer.push(i, Slot::Done(r)));
        }
        outcome
    });
    result?;
    writer.out.flush().map_err(FilterError::Output)?;
    let mut stats = writer.stats;
    if aborted.is_some() {
        stats.graphs_read += 1;
        stats.error_count += 1;
    }
    stats.wall_time_s = start.elapsed().as_secs_f64();
    stats.graphs_per_second = if stats.wall_time_s > 0.0 {
        stats.graphs_read as f64 / stats.wall_time_s
    } else {
        0.0
    };
    Ok(FilterOutcome { stats, aborted })
}
