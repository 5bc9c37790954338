//! The JSON system file format.
//!
//! ```json
//! {
//!   "poset": {"p": 2, "edges": [[1, 2]]},
//!   "partitions": {"n": [1, 1], "m": [1, 1], "r": [1, 1]},
//!   "A": [[0, 0], [1, "1/2"]],
//!   "B": [[1, 0], [0, 1]],
//!   "C": [[1, 0], [0, 1]],
//!   "D": [[0, 0], [0, 0]]
//! }
//! ```
//!
//! Nodes are numbered from 1 and `[j, i]` means j ⪰ i. Entries are JSON
//! integers or strings holding an integer, a decimal or a fraction `a/b`.
//! `C`, `D`, `r` and `x0` may be omitted and default to zero.

use serde::Deserialize;
use serde_json::Value;

use crate::blockmat::Partition;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poset::Poset;
use crate::rational::{as_small_integer, format_rational, parse_rational, Rational};
use crate::system::PosetCausalSystem;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    poset: RawPoset,
    partitions: RawPartitions,
    #[serde(rename = "A")]
    a: Vec<Vec<Value>>,
    #[serde(rename = "B")]
    b: Vec<Vec<Value>>,
    #[serde(rename = "C", default)]
    c: Option<Vec<Vec<Value>>>,
    #[serde(rename = "D", default)]
    d: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    x0: Option<Vec<Value>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoset {
    p: usize,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPartitions {
    n: Vec<usize>,
    m: Vec<usize>,
    #[serde(default)]
    r: Option<Vec<usize>>,
}

fn entry(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(num) => match num.as_i64() {
            Some(i) => Ok(crate::rational::int(i)),
            None => Err(Error::Format(format!(
                "number {num} is not an integer; write non-integers as strings"
            ))),
        },
        Value::String(s) => parse_rational(s),
        other => Err(Error::Format(format!("matrix entry {other} is not a number"))),
    }
}

fn matrix(name: &str, rows: &[Vec<Value>], shape: (usize, usize)) -> Result<Matrix> {
    if rows.len() != shape.0 {
        return Err(Error::ShapeMismatch(format!(
            "{name} has {} rows, expected {}",
            rows.len(),
            shape.0
        )));
    }
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(entry).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed, shape.1).map_err(|e| match e {
        Error::ShapeMismatch(msg) => Error::ShapeMismatch(format!("{name}: {msg}")),
        other => other,
    })
}

/// Parses a system file without checking the poset structure.
pub fn parse_unvalidated(text: &str) -> Result<PosetCausalSystem> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let p = raw.poset.p;
    let mut edges = Vec::with_capacity(raw.poset.edges.len());
    for &(j, i) in &raw.poset.edges {
        for index in [j, i] {
            if index == 0 || index > p {
                return Err(Error::IndexOutOfRange { index, p });
            }
        }
        edges.push((j - 1, i - 1));
    }
    let poset = Poset::from_edges(p, &edges)?;
    let n = Partition::new(raw.partitions.n);
    let m = Partition::new(raw.partitions.m);
    let r = Partition::new(raw.partitions.r.unwrap_or_else(|| vec![0; p]));
    let (nt, mt, rt) = (n.total(), m.total(), r.total());
    let a = matrix("A", &raw.a, (nt, nt))?;
    let b = matrix("B", &raw.b, (nt, mt))?;
    let c = match &raw.c {
        Some(rows) => matrix("C", rows, (rt, nt))?,
        None => Matrix::zeros(rt, nt),
    };
    let d = match &raw.d {
        Some(rows) => matrix("D", rows, (rt, mt))?,
        None => Matrix::zeros(rt, mt),
    };
    let x0 = raw
        .x0
        .map(|v| v.iter().map(entry).collect::<Result<Vec<_>>>())
        .transpose()?;
    PosetCausalSystem::from_parts(poset, n, m, r, a, b, c, d, x0)
}

/// Parses and validates a system file.
pub fn parse_system(text: &str) -> Result<PosetCausalSystem> {
    let sys = parse_unvalidated(text)?;
    let report = sys.validate();
    if !report.is_valid() {
        return Err(Error::Validation(report));
    }
    Ok(sys)
}

fn write_entry(v: &Rational) -> String {
    match as_small_integer(v) {
        Some(i) => i.to_string(),
        None => format!("\"{}\"", format_rational(v)),
    }
}

fn write_list<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn write_matrix(out: &mut String, name: &str, m: &Matrix, last: bool) {
    let comma = if last { "" } else { "," };
    if m.nrows() == 0 {
        out.push_str(&format!("  \"{name}\": []{comma}\n"));
        return;
    }
    out.push_str(&format!("  \"{name}\": [\n"));
    for i in 0..m.nrows() {
        let sep = if i + 1 == m.nrows() { "" } else { "," };
        out.push_str(&format!("    {}{sep}\n", write_list(m.row(i).iter().map(write_entry))));
    }
    out.push_str(&format!("  ]{comma}\n"));
}

/// Canonical text: Hasse edges, one matrix row per line.
pub fn write_system(sys: &PosetCausalSystem) -> String {
    let mut out = String::from("{\n");
    let edges: Vec<String> = sys
        .poset()
        .hasse_edges()
        .into_iter()
        .map(|(j, i)| format!("[{}, {}]", j + 1, i + 1))
        .collect();
    out.push_str(&format!(
        "  \"poset\": {{\"p\": {}, \"edges\": [{}]}},\n",
        sys.p(),
        edges.join(", ")
    ));
    out.push_str(&format!(
        "  \"partitions\": {{\"n\": {}, \"m\": {}, \"r\": {}}},\n",
        write_list(sys.n().sizes()),
        write_list(sys.m().sizes()),
        write_list(sys.r().sizes())
    ));
    let has_x0 = sys.x0().is_some();
    write_matrix(&mut out, "A", sys.a(), false);
    write_matrix(&mut out, "B", sys.b(), false);
    write_matrix(&mut out, "C", sys.c(), false);
    write_matrix(&mut out, "D", sys.d(), !has_x0);
    if let Some(x0) = sys.x0() {
        out.push_str(&format!("  \"x0\": {}\n", write_list(x0.iter().map(write_entry))));
    }
    out.push_str("}\n");
    out
}
