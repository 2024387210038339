//! Wire formats.
//!
//! * Permutations: one JSON array of integers per line.
//! * Walks: one JSON object `{"start":[x,y],"steps":[[dx,dy],...]}` per line.
//! * Maps: one JSON object with edges, split rotations and the two poles.
//! * Histograms and densities: CSV.
//!
//! Serialization is deterministic (object keys in a fixed order, shortest
//! float round-trip), so identical inputs give byte-identical files.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use baxter_core::permutation::PermutonHistogram;
use baxter_core::walk::Step;
use baxter_core::{BipolarMap, Permutation, QuadrantWalk};

pub type IoResult<T> = Result<T, IoError>;

#[derive(Debug)]
pub enum IoError {
    Io(std::io::Error),
    Json { line: usize, message: String },
    Invalid { line: usize, message: String },
}

impl std::fmt::Display for IoError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IoError::Io(e) => write!(f, "io error: {e}"),
            IoError::Json { line, message } => write!(f, "line {line}: bad json: {message}"),
            IoError::Invalid { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

impl std::error::Error for IoError {}

impl From<std::io::Error> for IoError {
    fn from(e: std::io::Error) -> Self {
        IoError::Io(e)
    }
}

#[derive(Serialize, Deserialize)]
struct WalkWire {
    start: [i64; 2],
    steps: Vec<[i64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct MapWire {
    edges: Vec<[usize; 2]>,
    out_order: BTreeMap<String, Vec<usize>>,
    in_order: BTreeMap<String, Vec<usize>>,
    source: usize,
    sink: usize,
}

pub fn permutation_to_json(p: &Permutation) -> String {
    serde_json::to_string(p.values()).expect("serializable")
}

pub fn permutation_from_json(line: &str, lineno: usize) -> IoResult<Permutation> {
    let values: Vec<u32> = serde_json::from_str(line).map_err(|e| IoError::Json {
        line: lineno,
        message: e.to_string(),
    })?;
    Permutation::from_one_line(values).map_err(|e| IoError::Invalid {
        line: lineno,
        message: e.to_string(),
    })
}

pub fn walk_to_json(w: &QuadrantWalk) -> String {
    let start = w.position(1);
    let wire = WalkWire {
        start: [start.0, start.1],
        steps: w.steps().iter().map(|s| [s.dx(), s.dy()]).collect(),
    };
    serde_json::to_string(&wire).expect("serializable")
}

pub fn walk_from_json(line: &str, lineno: usize) -> IoResult<QuadrantWalk> {
    let wire: WalkWire = serde_json::from_str(line).map_err(|e| IoError::Json {
        line: lineno,
        message: e.to_string(),
    })?;
    let mut positions = vec![(wire.start[0], wire.start[1])];
    for s in &wire.steps {
        let (x, y) = *positions.last().unwrap();
        positions.push((x + s[0], y + s[1]));
    }
    QuadrantWalk::validate(positions).map_err(|e| IoError::Invalid {
        line: lineno,
        message: e.to_string(),
    })
}

pub fn map_to_json(m: &BipolarMap) -> String {
    let mut out_order = BTreeMap::new();
    let mut in_order = BTreeMap::new();
    for v in 0..m.vertex_count() {
        out_order.insert(v.to_string(), m.out_edges(v).to_vec());
        in_order.insert(v.to_string(), m.in_edges(v).to_vec());
    }
    let wire = MapWire {
        edges: m.edges().iter().map(|&(t, h)| [t, h]).collect(),
        out_order,
        in_order,
        source: m.source(),
        sink: m.sink(),
    };
    serde_json::to_string(&wire).expect("serializable")
}

pub fn map_from_json(line: &str, lineno: usize) -> IoResult<BipolarMap> {
    let wire: MapWire = serde_json::from_str(line).map_err(|e| IoError::Json {
        line: lineno,
        message: e.to_string(),
    })?;
    let nv = wire
        .edges
        .iter()
        .flat_map(|e| e.iter().copied())
        .max()
        .map_or(0, |m| m + 1)
        .max(wire.source + 1)
        .max(wire.sink + 1);
    let parse_orders = |orders: &BTreeMap<String, Vec<usize>>| -> IoResult<Vec<Vec<usize>>> {
        let mut out = vec![Vec::new(); nv];
        for (key, list) in orders {
            let v: usize = key.parse().map_err(|_| IoError::Invalid {
                line: lineno,
                message: format!("bad vertex key {key:?}"),
            })?;
            if v >= nv {
                return Err(IoError::Invalid {
                    line: lineno,
                    message: format!("vertex {v} out of range"),
                });
            }
            out[v] = list.clone();
        }
        Ok(out)
    };
    let out_order = parse_orders(&wire.out_order)?;
    let in_order = parse_orders(&wire.in_order)?;
    BipolarMap::new(
        wire.edges.iter().map(|e| (e[0], e[1])).collect(),
        out_order,
        in_order,
        wire.source,
        wire.sink,
    )
    .map_err(|e| IoError::Invalid {
        line: lineno,
        message: e.to_string(),
    })
}

/// Step list serialization used inside walk wires.
pub fn steps_to_pairs(steps: &[Step]) -> Vec<[i64; 2]> {
    steps.iter().map(|s| [s.dx(), s.dy()]).collect()
}

/// CSV for a histogram: `k` rows of `k` comma-separated decimals, row index
/// along the x-axis.
pub fn histogram_to_csv(h: &PermutonHistogram) -> String {
    let mut out = String::new();
    for a in 0..h.grid() {
        let row: Vec<String> = h.row(a).iter().map(|v| format!("{v}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Reads every nonempty line of a reader through a per-line parser.
pub fn read_jsonl<T>(
    reader: impl BufRead,
    parse: impl Fn(&str, usize) -> IoResult<T>,
) -> IoResult<Vec<T>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        out.push(parse(trimmed, idx + 1)?);
    }
    Ok(out)
}

/// Writes lines with a trailing newline each.
pub fn write_lines(mut writer: impl Write, lines: impl IntoIterator<Item = String>) -> IoResult<()> {
    for line in lines {
        writer.write_all(line.as_bytes())?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}
