//! Row output in CSV or JSON Lines, with resume support.
//!
//! A report is a sequence of keyed rows. With `--resume`, rows already
//! present in the output file and marked complete are kept verbatim and
//! their keys are not recomputed; everything else is recomputed. Rows are
//! written in the order the command visits keys and flushed one at a time,
//! so an interrupted batch leaves a valid prefix behind.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::marker::PhantomData;
use std::path::Path;

use serde::Serialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One output row.
pub trait Row: Serialize {
    const HEADER: &'static [&'static str];
    /// Name of the key field in JSON output (the first CSV column).
    const KEY: &'static str;

    fn key(&self) -> usize;
    fn fields(&self) -> Vec<String>;
    fn complete(&self) -> bool;

    /// Whether a stored record (read back through `field`, which renders a
    /// column as text) is free of findings. Only clean, complete records
    /// are reused, so a resumed run still reports every finding.
    fn clean(_field: &dyn Fn(&str) -> String) -> bool {
        true
    }
}

enum Kept {
    Csv(csv::StringRecord),
    Json(String),
}

pub struct Report<R> {
    format: Format,
    out: Box<dyn Write>,
    kept: BTreeMap<usize, Kept>,
    started: bool,
    _row: PhantomData<R>,
}

impl<R: Row> Report<R> {
    /// Opens the sink. `resume` requires an output path; complete rows found
    /// there are retained.
    pub fn open(path: Option<&Path>, format: Format, resume: bool) -> Result<Self, Failure> {
        let kept = match (resume, path) {
            (false, _) => BTreeMap::new(),
            (true, None) => return Err(Failure::Input("--resume needs --out".into())),
            (true, Some(p)) if !p.exists() => BTreeMap::new(),
            (true, Some(p)) => load_kept::<R>(p, format)?,
        };
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
                Failure::Input(format!("cannot create {}: {e}", p.display()))
            })?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Report {
            format,
            out,
            kept,
            started: false,
            _row: PhantomData,
        })
    }

    /// Writes the retained row for `key` and returns true, or returns false
    /// when the key has to be computed.
    pub fn reuse(&mut self, key: usize) -> Result<bool, Failure> {
        let Some(k) = self.kept.remove(&key) else {
            return Ok(false);
        };
        self.header()?;
        match k {
            Kept::Csv(rec) => self.write_csv(rec.iter())?,
            Kept::Json(line) => writeln!(self.out, "{line}").map_err(io_failure)?,
        }
        self.out.flush().map_err(io_failure)?;
        Ok(true)
    }

    pub fn emit(&mut self, row: &R) -> Result<(), Failure> {
        self.header()?;
        match self.format {
            Format::Csv => self.write_csv(row.fields().iter().map(String::as_str))?,
            Format::Json => {
                let line = serde_json::to_string(row)
                    .map_err(|e| Failure::Internal(format!("serialising row: {e}")))?;
                writeln!(self.out, "{line}").map_err(io_failure)?;
            }
        }
        self.out.flush().map_err(io_failure)
    }

    /// Writes the CSV header if nothing has been written yet; used so an
    /// empty report still carries its schema.
    pub fn finish(mut self) -> Result<(), Failure> {
        self.header()?;
        self.out.flush().map_err(io_failure)
    }

    fn header(&mut self) -> Result<(), Failure> {
        if !self.started {
            self.started = true;
            if self.format == Format::Csv {
                self.write_csv(R::HEADER.iter().copied())?;
            }
        }
        Ok(())
    }

    fn write_csv<'a>(&mut self, fields: impl Iterator<Item = &'a str>) -> Result<(), Failure> {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(Vec::new());
        w.write_record(fields)
            .map_err(|e| Failure::Internal(format!("csv: {e}")))?;
        let bytes = w
            .into_inner()
            .map_err(|e| Failure::Internal(format!("csv: {e}")))?;
        self.out.write_all(&bytes).map_err(io_failure)
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Internal(format!("writing output: {e}"))
}

fn load_kept<R: Row>(path: &Path, format: Format) -> Result<BTreeMap<usize, Kept>, Failure> {
    let bad = |msg: String| Failure::Input(format!("cannot resume from {}: {msg}", path.display()));
    let mut kept = BTreeMap::new();
    match format {
        Format::Csv => {
            let mut rd = csv::ReaderBuilder::new()
                .has_headers(true)
                .from_path(path)
                .map_err(|e| bad(e.to_string()))?;
            let header = rd.headers().map_err(|e| bad(e.to_string()))?.clone();
            if !header.is_empty() && !header.iter().eq(R::HEADER.iter().copied()) {
                return Err(bad("header does not match this report".into()));
            }
            let done = R::HEADER.iter().position(|&h| h == "complete");
            for rec in rd.records() {
                // a torn final line from an interrupted run is dropped
                let Ok(rec) = rec else { break };
                if rec.len() != R::HEADER.len() {
                    continue;
                }
                let Some(key) = rec.get(0).and_then(|k| k.parse::<usize>().ok()) else {
                    continue;
                };
                let field = |name: &str| {
                    R::HEADER
                        .iter()
                        .position(|&h| h == name)
                        .and_then(|i| rec.get(i))
                        .unwrap_or_default()
                        .to_string()
                };
                if done.is_none_or(|i| rec.get(i) == Some("true")) && R::clean(&field) {
                    kept.insert(key, Kept::Csv(rec));
                }
            }
        }
        Format::Json => {
            let text = fs::read_to_string(path).map_err(|e| bad(e.to_string()))?;
            for line in text.lines() {
                let Ok(v) = serde_json::from_str::<serde_json::Value>(line) else {
                    continue;
                };
                let Some(key) = v.get(R::KEY).and_then(|k| k.as_u64()) else {
                    continue;
                };
                let field = |name: &str| match v.get(name) {
                    None | Some(serde_json::Value::Null) => String::new(),
                    Some(serde_json::Value::String(s)) => s.clone(),
                    Some(serde_json::Value::Array(a)) if a.is_empty() => String::new(),
                    Some(other) => other.to_string(),
                };
                if v.get("complete").and_then(|c| c.as_bool()).unwrap_or(true) && R::clean(&field) {
                    kept.insert(key as usize, Kept::Json(line.to_string()));
                }
            }
        }
    }
    Ok(kept)
}
