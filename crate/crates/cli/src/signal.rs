//! Columnar signal and trajectory files.
//!
//! Input signals are CSV with a header naming `u1..um` and, optionally, a
//! leading `t` column. Row k holds the input on `[k h, (k+1) h)`; a `t`
//! column, when present, must equal `k h` to within 1e-9 relative.
//!
//! Trajectories are written as `t,x1..xn,y1..yr` with one row per sample
//! time. The output at the final time is not computed, so the last row leaves
//! the `y` fields empty.

use std::io::{Read, Write};

use nalgebra::DVector;
use posetcausal::{InputSignal, Trajectory};

use crate::error::{CliError, CliResult};

pub fn read_signal<R: Read>(reader: R, h: f64, m: usize) -> CliResult<InputSignal> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let has_t = headers.get(0) == Some("t");
    let names: Vec<&str> = headers.iter().skip(usize::from(has_t)).collect();
    let expected: Vec<String> = (1..=m).map(|k| format!("u{k}")).collect();
    if names != expected {
        return Err(CliError::Signal(format!(
            "header must be {}{}, found {}",
            if has_t { "t," } else { "" },
            expected.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut values = Vec::new();
    for (k, record) in rdr.records().enumerate() {
        let record = record?;
        let parsed = record
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| CliError::Signal(format!("row {}: {f:?} is not a number", k + 1)))
            })
            .collect::<CliResult<Vec<f64>>>()?;
        if has_t {
            let want = k as f64 * h;
            if (parsed[0] - want).abs() > 1e-9 * want.abs().max(1.0) {
                return Err(CliError::Signal(format!(
                    "row {}: t = {} but step {} starts at {}",
                    k + 1,
                    parsed[0],
                    k,
                    want
                )));
            }
        }
        values.push(DVector::from_vec(parsed[usize::from(has_t)..].to_vec()));
    }
    Ok(InputSignal::new(h, m, values)?)
}

pub fn write_trajectory<W: Write>(writer: W, traj: &Trajectory) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(writer);
    let n = traj.states.first().map_or(0, |x| x.len());
    let r = traj.outputs.first().map_or(0, |y| y.len());
    let mut header = vec!["t".to_string()];
    header.extend((1..=n).map(|k| format!("x{k}")));
    header.extend((1..=r).map(|k| format!("y{k}")));
    w.write_record(&header)?;
    for (k, x) in traj.states.iter().enumerate() {
        let mut row = vec![format!("{}", k as f64 * traj.h)];
        row.extend(x.iter().map(|v| format!("{v:e}")));
        match traj.outputs.get(k) {
            Some(y) => row.extend(y.iter().map(|v| format!("{v:e}"))),
            None => row.extend(std::iter::repeat_n(String::new(), r)),
        }
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| CliError::io("<trajectory>", e))?;
    Ok(())
}
