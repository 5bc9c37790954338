//! Command implementations. Each returns the process exit code and writes
//! through the supplied streams so it can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::Path;

use nalgebra::DVector;
use posetcausal::corpus;
use posetcausal::format::parse_unvalidated;
use posetcausal::rational::to_f64;
use posetcausal::sim::{simulate, verify_trajectory_decomposition};
use posetcausal::{parse_system, poset_reduce, write_system, InputSignal, PosetCausalSystem, ReductionVariant};

use crate::demo;
use crate::error::{CliError, CliResult};
use crate::report::{analyze, render_json, render_text};
use crate::signal::{read_signal, write_trajectory};

pub struct Streams<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::io("<output>", e)
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn load(path: &Path) -> CliResult<PosetCausalSystem> {
    Ok(parse_system(&read_text(path)?)?)
}

/// Writes to `path`, or to the output stream when no path is given.
fn emit(path: Option<&Path>, text: &str, s: &mut Streams) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => s.out.write_all(text.as_bytes()).map_err(io_err),
    }
}

pub fn validate(path: &Path, s: &mut Streams) -> CliResult<u8> {
    let sys = parse_unvalidated(&read_text(path)?)?;
    let report = sys.validate();
    if report.is_valid() {
        writeln!(
            s.out,
            "valid: p = {}, n = {:?}, m = {:?}, r = {:?}",
            sys.p(),
            sys.n().sizes(),
            sys.m().sizes(),
            sys.r().sizes()
        )
        .map_err(io_err)?;
        return Ok(0);
    }
    writeln!(s.out, "invalid: {} violating block(s)", report.violations.len()).map_err(io_err)?;
    for v in &report.violations {
        writeln!(s.out, "  {v}").map_err(io_err)?;
    }
    Ok(1)
}

pub fn analyze_cmd(path: &Path, json: bool, skip_duality: bool, s: &mut Streams) -> CliResult<u8> {
    let sys = load(path)?;
    let report = analyze(&sys, !skip_duality)?;
    let text = if json { render_json(&report) } else { render_text(&report) };
    s.out.write_all(text.as_bytes()).map_err(io_err)?;
    let consistent = report.reachability.consistency_checks_passed
        && report.observability.consistency_checks_passed
        && report.duality.as_ref().is_none_or(|d| d.all_passed)
        && report.reduction.variants.iter().all(|v| v.moments_preserved);
    Ok(if consistent { 0 } else { 1 })
}

pub fn dual(path: &Path, out_path: Option<&Path>, s: &mut Streams) -> CliResult<u8> {
    let sys = load(path)?;
    emit(out_path, &write_system(&sys.dual()), s)?;
    Ok(0)
}

pub fn reduce(path: &Path, variant: ReductionVariant, out_path: Option<&Path>, s: &mut Streams) -> CliResult<u8> {
    let sys = load(path)?;
    let red = poset_reduce(&sys, variant)?;
    emit(out_path, &write_system(&red.system), s)?;
    let dims: Vec<usize> = red.blocks.iter().map(|b| b.dim()).collect();
    writeln!(
        s.err,
        "{variant}: state dimension {} -> {} (blocks {:?}); moments up to k = {} {}",
        sys.state_dim(),
        red.system.state_dim(),
        dims,
        red.horizon,
        if red.moments_preserved { "agree" } else { "DIFFER" }
    )
    .map_err(io_err)?;
    Ok(if red.moments_preserved { 0 } else { 1 })
}

pub struct SimulateArgs<'a> {
    pub signal: Option<&'a Path>,
    pub h: f64,
    pub steps: Option<usize>,
    pub check_lemma: bool,
    pub tolerance: f64,
    pub out_path: Option<&'a Path>,
}

pub fn simulate_cmd(path: &Path, args: &SimulateArgs, s: &mut Streams) -> CliResult<u8> {
    if !(args.h.is_finite() && args.h > 0.0) {
        return Err(CliError::Usage(format!("step size must be positive, got {}", args.h)));
    }
    let sys = load(path)?;
    let m = sys.m().total();
    let u = match args.signal {
        Some(p) => {
            let file = fs::File::open(p).map_err(|e| CliError::io(p, e))?;
            let u = read_signal(file, args.h, m)?;
            if let Some(k) = args.steps {
                if k != u.steps() {
                    return Err(CliError::Usage(format!(
                        "--steps {k} disagrees with the {} rows of the signal file",
                        u.steps()
                    )));
                }
            }
            u
        }
        None => InputSignal::zero(args.h, m, args.steps.unwrap_or(100))?,
    };
    let x0 = DVector::from_iterator(sys.state_dim(), sys.initial_state().iter().map(to_f64));
    let traj = simulate(&sys, &x0, &u)?;
    let mut buf = Vec::new();
    write_trajectory(&mut buf, &traj)?;
    emit(args.out_path, &String::from_utf8(buf).expect("csv output is UTF-8"), s)?;
    if !args.check_lemma {
        return Ok(0);
    }
    let rep = verify_trajectory_decomposition(&sys, &x0, &u, args.tolerance)?;
    writeln!(
        s.err,
        "trajectory decomposition: downstream sum {:.3e}, local component {:.3e}, node split {:.3e}, upstream {:.3e}; {} (tolerance {:e})",
        rep.downstream_sum,
        rep.local_component,
        rep.node_split,
        rep.upstream,
        if rep.passed() { "passed" } else { "FAILED" },
        rep.tolerance
    )
    .map_err(io_err)?;
    Ok(if rep.passed() { 0 } else { 1 })
}

pub fn demo_cmd(name: Option<&str>, list: bool, s: &mut Streams) -> CliResult<u8> {
    if list || name.is_none() {
        for n in demo::NAMES {
            writeln!(s.out, "{n}").map_err(io_err)?;
        }
        return Ok(0);
    }
    let names: Vec<&str> = match name {
        Some("all") => demo::NAMES.to_vec(),
        Some(n) => vec![n],
        None => unreachable!(),
    };
    let mut failed = Vec::new();
    for n in names {
        let d = demo::run(n)?;
        s.out.write_all(demo::render(&d).as_bytes()).map_err(io_err)?;
        if !d.passed() {
            failed.push(format!("{} ({} mismatched)", d.name, d.mismatches()));
        }
    }
    if failed.is_empty() {
        writeln!(s.out, "all published values reproduced").map_err(io_err)?;
        Ok(0)
    } else {
        writeln!(s.out, "mismatches in: {}", failed.join(", ")).map_err(io_err)?;
        Ok(1)
    }
}

pub fn corpus_cmd(name: Option<&str>, s: &mut Streams) -> CliResult<u8> {
    match name {
        None => {
            for (n, _) in corpus::SYSTEMS {
                writeln!(s.out, "{n}").map_err(io_err)?;
            }
        }
        Some(n) => {
            let text = corpus::system_text(n).ok_or_else(|| CliError::Usage(format!("no corpus system named {n:?}")))?;
            s.out.write_all(text.as_bytes()).map_err(io_err)?;
        }
    }
    Ok(0)
}
