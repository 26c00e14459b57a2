//! graph6 codec and line-oriented graph readers.
//!
//! graph6 stores the order `N(n)` followed by the upper triangle of the
//! adjacency matrix in column order `x(0,1), x(0,2), x(1,2), x(0,3), ...`,
//! six bits per printable byte (value + 63), most significant bit first.
//! The edge-list format is a header line `n m` followed by `m` lines `u v`
//! with 0-based vertex indices; several records may follow each other.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::vertex_set::{VertexSet, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    BadChar { byte: u8, offset: usize },
    #[error("expected {expected} data bytes, found {found}")]
    TruncatedBits { expected: usize, found: usize },
    #[error("{0} unexpected bytes after the adjacency data")]
    ExcessBytes(usize),
    #[error("padding bits in the final byte are not zero")]
    NonzeroPadding,
    #[error("graph order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl ReadError {
    fn parse(line: usize, message: impl Into<String>) -> Self {
        ReadError::Parse {
            line,
            message: message.into(),
        }
    }
}

fn check_printable(bytes: &[u8], base: usize) -> Result<(), Graph6Error> {
    match bytes.iter().position(|b| !(63..=126).contains(b)) {
        Some(i) => Err(Graph6Error::BadChar {
            byte: bytes[i],
            offset: base + i,
        }),
        None => Ok(()),
    }
}

/// Decodes the order prefix, returning `(n, header_len)`.
fn decode_order(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let Some(&first) = bytes.first() else {
        return Err(Graph6Error::TruncatedBits {
            expected: 1,
            found: 0,
        });
    };
    if first != 126 {
        return Ok(((first - 63) as usize, 1));
    }
    if bytes.get(1) == Some(&126) {
        // eight-byte form, n >= 258048
        if bytes.len() < 8 {
            return Err(Graph6Error::TruncatedBits {
                expected: 8,
                found: bytes.len(),
            });
        }
        let n = bytes[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        return Err(Graph6Error::OrderTooLarge(n));
    }
    if bytes.len() < 4 {
        return Err(Graph6Error::TruncatedBits {
            expected: 4,
            found: bytes.len(),
        });
    }
    let n = bytes[1..4]
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    Ok((n, 4))
}

/// Decodes one graph6 record. A leading `>>graph6<<` header is skipped.
pub fn decode_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    check_printable(bytes, 0)?;
    let (n, start) = decode_order(bytes)?;
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let data = &bytes[start..];
    if data.len() < nbytes {
        return Err(Graph6Error::TruncatedBits {
            expected: nbytes,
            found: data.len(),
        });
    }
    if data.len() > nbytes {
        return Err(Graph6Error::ExcessBytes(data.len() - nbytes));
    }
    let pad = nbytes * 6 - nbits;
    if pad > 0 {
        let last = data[nbytes - 1] - 63;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    let mut adj = vec![VertexSet::EMPTY; n];
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = data[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                adj[u].insert(v);
                adj[v].insert(u);
            }
            k += 1;
        }
    }
    Ok(Graph::from_adjacency(adj).expect("decoded adjacency is symmetric and loop-free"))
}

/// Encodes a graph as graph6 (no header, no newline).
///
/// Orders up to 62 use the one-byte prefix, larger orders the four-byte form.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let nbits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(4 + nbits.div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        acc <<= 6 - k % 6;
        out.push(acc + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Input record format of a [`GraphStream`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Graph6,
    EdgeList,
}

impl InputFormat {
    /// Guesses the format from the first non-blank line: two decimal
    /// integers mean an edge list, anything else is graph6.
    pub fn detect(first_line: &str) -> InputFormat {
        let mut it = first_line.split_whitespace();
        let looks_numeric = |t: Option<&str>| t.is_some_and(|t| t.bytes().all(|b| b.is_ascii_digit()));
        if looks_numeric(it.next()) && looks_numeric(it.next()) && it.next().is_none() {
            InputFormat::EdgeList
        } else {
            InputFormat::Graph6
        }
    }
}

/// Lazily reads graphs from a line-oriented source.
///
/// Yields `(index, graph)` in file order. The first malformed record ends
/// the stream with an error naming its line.
pub struct GraphStream<R> {
    lines: io::Lines<R>,
    format: InputFormat,
    line_no: usize,
    index: usize,
    pending: Option<String>,
    failed: bool,
}

impl GraphStream<BufReader<File>> {
    pub fn open(path: impl AsRef<Path>) -> Result<Self, ReadError> {
        let file = File::open(path)?;
        GraphStream::detect(BufReader::new(file))
    }
}

impl GraphStream<BufReader<Box<dyn Read>>> {
    pub fn stdin() -> Result<Self, ReadError> {
        let r: Box<dyn Read> = Box::new(io::stdin());
        GraphStream::detect(BufReader::new(r))
    }
}

impl<R: BufRead> GraphStream<R> {
    pub fn new(reader: R, format: InputFormat) -> Self {
        GraphStream {
            lines: reader.lines(),
            format,
            line_no: 0,
            index: 0,
            pending: None,
            failed: false,
        }
    }

    /// Peeks at the first non-blank line to pick the format.
    pub fn detect(reader: R) -> Result<Self, ReadError> {
        let mut s = GraphStream::new(reader, InputFormat::Graph6);
        if let Some(line) = s.next_content_line()? {
            s.format = InputFormat::detect(&line);
            s.pending = Some(line);
        }
        Ok(s)
    }

    pub fn format(&self) -> InputFormat {
        self.format
    }

    fn next_content_line(&mut self) -> Result<Option<String>, ReadError> {
        if let Some(l) = self.pending.take() {
            return Ok(Some(l));
        }
        for line in self.lines.by_ref() {
            let line = line?;
            self.line_no += 1;
            let t = line.trim();
            if !t.is_empty() {
                return Ok(Some(t.to_string()));
            }
        }
        Ok(None)
    }

    fn parse_pair(&self, line: &str) -> Result<(usize, usize), ReadError> {
        let mut it = line.split_whitespace();
        let mut num = || -> Result<usize, ReadError> {
            it.next()
                .ok_or_else(|| ReadError::parse(self.line_no, "expected two integers"))?
                .parse::<usize>()
                .map_err(|e| ReadError::parse(self.line_no, e.to_string()))
        };
        let a = num()?;
        let b = num()?;
        if it.next().is_some() {
            return Err(ReadError::parse(self.line_no, "expected exactly two integers"));
        }
        Ok((a, b))
    }

    fn read_edge_list(&mut self, header: &str) -> Result<Graph, ReadError> {
        let header_line = self.line_no;
        let (n, m) = self.parse_pair(header)?;
        if n > MAX_ORDER {
            return Err(ReadError::parse(
                header_line,
                GraphError::OrderTooLarge(n).to_string(),
            ));
        }
        let mut g = Graph::empty(n).expect("order checked");
        for _ in 0..m {
            let line = self.next_content_line()?.ok_or_else(|| {
                ReadError::parse(self.line_no + 1, format!("expected {m} edge lines"))
            })?;
            let (u, v) = self.parse_pair(&line)?;
            if u < n && v < n && u != v && g.has_edge(u, v) {
                return Err(ReadError::parse(
                    self.line_no,
                    format!("parallel edge ({u}, {v})"),
                ));
            }
            g = g
                .with_edge(u, v)
                .map_err(|e| ReadError::parse(self.line_no, e.to_string()))?;
        }
        Ok(g)
    }

    fn read_record(&mut self) -> Result<Option<Graph>, ReadError> {
        let Some(line) = self.next_content_line()? else {
            return Ok(None);
        };
        let g = match self.format {
            InputFormat::Graph6 => decode_graph6(&line)
                .map_err(|e| ReadError::parse(self.line_no, e.to_string()))?,
            InputFormat::EdgeList => self.read_edge_list(&line)?,
        };
        Ok(Some(g))
    }
}

impl<R: BufRead> Iterator for GraphStream<R> {
    type Item = Result<(usize, Graph), ReadError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        match self.read_record() {
            Ok(Some(g)) => {
                let i = self.index;
                self.index += 1;
                Some(Ok((i, g)))
            }
            Ok(None) => None,
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

/// Reads every graph from a file (format auto-detected).
pub fn read_graphs(path: impl AsRef<Path>) -> Result<Vec<Graph>, ReadError> {
    GraphStream::open(path)?
        .map(|r| r.map(|(_, g)| g))
        .collect()
}

/// Parses one graph given inline, either graph6 or an edge list whose
/// lines are separated by newlines or `/`.
pub fn parse_graph(text: &str) -> Result<Graph, ReadError> {
    let normalized = text.replace('/', "\n");
    let mut stream = GraphStream::detect(io::Cursor::new(normalized.into_bytes()))?;
    match stream.next() {
        Some(Ok((_, g))) => match stream.next() {
            None => Ok(g),
            Some(Err(e)) => Err(e),
            Some(Ok(_)) => Err(ReadError::parse(stream.line_no, "expected a single graph")),
        },
        Some(Err(e)) => Err(e),
        None => Err(ReadError::parse(0, "no graph given")),
    }
}
