//! Floating-point simulation under piecewise-constant inputs, and numerical
//! checks of how global trajectories split into downstream, local and
//! upstream trajectories.

mod expm;

pub use expm::expm;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::to_f64;
use crate::subspace::Subspace;
use crate::system::{DerivedSystem, PosetCausalSystem, SubsystemKind};

pub fn to_dmatrix(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| to_f64(&m[(i, j)]))
}

/// Input held constant at `values[k]` on [kh, (k+1)h).
#[derive(Debug, Clone, PartialEq)]
pub struct InputSignal {
    h: f64,
    dim: usize,
    values: Vec<DVector<f64>>,
}

impl InputSignal {
    pub fn new(h: f64, dim: usize, values: Vec<DVector<f64>>) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidSignal(format!("step {h} is not positive")));
        }
        if let Some(k) = values.iter().position(|v| v.len() != dim) {
            return Err(Error::InvalidSignal(format!(
                "sample {k} has {} components, expected {dim}",
                values[k].len()
            )));
        }
        if values.iter().any(|v| v.iter().any(|x| !x.is_finite())) {
            return Err(Error::NonFinite);
        }
        Ok(InputSignal { h, dim, values })
    }

    pub fn zero(h: f64, dim: usize, steps: usize) -> Result<Self> {
        Self::new(h, dim, vec![DVector::zeros(dim); steps])
    }

    pub fn constant(h: f64, value: DVector<f64>, steps: usize) -> Result<Self> {
        Self::new(h, value.len(), vec![value; steps])
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn steps(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[DVector<f64>] {
        &self.values
    }

    /// The signal restricted to the given components.
    pub fn restrict(&self, coords: &[usize]) -> Result<Self> {
        if let Some(&c) = coords.iter().find(|&&c| c >= self.dim) {
            return Err(Error::DimensionMismatch(format!(
                "component {c} of a {}-dimensional signal",
                self.dim
            )));
        }
        let values = self
            .values
            .iter()
            .map(|v| DVector::from_iterator(coords.len(), coords.iter().map(|&c| v[c])))
            .collect();
        Ok(InputSignal {
            h: self.h,
            dim: coords.len(),
            values,
        })
    }
}

/// States x(kh) for k = 0..=T and outputs y(kh) = Cx(kh) + Du_k for k < T.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub h: f64,
    pub states: Vec<DVector<f64>>,
    pub outputs: Vec<DVector<f64>>,
}

impl Trajectory {
    pub fn final_state(&self) -> &DVector<f64> {
        self.states.last().expect("a trajectory has at least its initial state")
    }
}

/// Exact one-step maps e^{Ah} and ∫₀^h e^{Aτ}dτ B, read off the exponential
/// of [[A, B], [0, 0]]h.
pub fn discretize(a: &DMatrix<f64>, b: &DMatrix<f64>, h: f64) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let (n, m) = (a.nrows(), b.ncols());
    let mut aug = DMatrix::zeros(n + m, n + m);
    aug.view_mut((0, 0), (n, n)).copy_from(&(a * h));
    aug.view_mut((0, n), (n, m)).copy_from(&(b * h));
    let e = expm(&aug)?;
    Ok((
        e.view((0, 0), (n, n)).into_owned(),
        e.view((0, n), (n, m)).into_owned(),
    ))
}

pub fn simulate_matrices(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    c: &DMatrix<f64>,
    d: &DMatrix<f64>,
    x0: &DVector<f64>,
    u: &InputSignal,
) -> Result<Trajectory> {
    let n = a.nrows();
    if !a.is_square()
        || b.nrows() != n
        || c.ncols() != n
        || d.nrows() != c.nrows()
        || d.ncols() != b.ncols()
        || x0.len() != n
        || u.dim() != b.ncols()
    {
        return Err(Error::DimensionMismatch(format!(
            "A {}x{}, B {}x{}, C {}x{}, D {}x{}, x0 {}, input {}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols(),
            c.nrows(),
            c.ncols(),
            d.nrows(),
            d.ncols(),
            x0.len(),
            u.dim()
        )));
    }
    let (ad, bd) = discretize(a, b, u.h())?;
    let mut states = Vec::with_capacity(u.steps() + 1);
    let mut outputs = Vec::with_capacity(u.steps());
    let mut x = x0.clone();
    for uk in u.values() {
        outputs.push(c * &x + d * uk);
        let next = &ad * &x + &bd * uk;
        states.push(std::mem::replace(&mut x, next));
    }
    states.push(x);
    Ok(Trajectory {
        h: u.h(),
        states,
        outputs,
    })
}

pub fn simulate(sys: &PosetCausalSystem, x0: &DVector<f64>, u: &InputSignal) -> Result<Trajectory> {
    simulate_matrices(
        &to_dmatrix(sys.a()),
        &to_dmatrix(sys.b()),
        &to_dmatrix(sys.c()),
        &to_dmatrix(sys.d()),
        x0,
        u,
    )
}

pub fn simulate_derived(sys: &DerivedSystem, x0: &DVector<f64>, u: &InputSignal) -> Result<Trajectory> {
    simulate_matrices(
        &to_dmatrix(&sys.a),
        &to_dmatrix(&sys.b),
        &to_dmatrix(&sys.c),
        &to_dmatrix(&sys.d),
        x0,
        u,
    )
}

fn select(v: &DVector<f64>, coords: &[usize]) -> DVector<f64> {
    DVector::from_iterator(coords.len(), coords.iter().map(|&c| v[c]))
}

fn max_abs(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Euclidean distance from `x` to a subspace given by a rational basis.
pub fn distance_to_subspace(x: &DVector<f64>, space: &Subspace) -> Result<f64> {
    if x.len() != space.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against subspace of R^{}",
            x.len(),
            space.ambient_dim()
        )));
    }
    if space.is_zero() {
        return Ok(x.norm());
    }
    let q = to_dmatrix(&space.basis_matrix()).qr().q();
    let proj = &q * (q.transpose() * x);
    Ok((x - proj).norm())
}

/// Largest deviation seen for each decomposition identity.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionReport {
    /// Global state and output against the sum of embedded downstream ones.
    pub downstream_sum: f64,
    /// Node i of the i-th downstream trajectory against the local trajectory.
    pub local_component: f64,
    /// x_i against the local trajectory plus strictly upstream contributions.
    pub node_split: f64,
    /// Upstream trajectories against the matching components of x.
    pub upstream: f64,
    pub tolerance: f64,
}

impl DecompositionReport {
    pub fn max_deviation(&self) -> f64 {
        self.downstream_sum
            .max(self.local_component)
            .max(self.node_split)
            .max(self.upstream)
    }

    pub fn passed(&self) -> bool {
        self.max_deviation() < self.tolerance
    }
}

/// Simulates the global, downstream, local and upstream systems separately
/// and compares them at every grid point.
pub fn verify_trajectory_decomposition(
    sys: &PosetCausalSystem,
    x0: &DVector<f64>,
    u: &InputSignal,
    tolerance: f64,
) -> Result<DecompositionReport> {
    let p = sys.p();
    let (n, m, r) = (sys.n(), sys.m(), sys.r());
    let global = simulate(sys, x0, u)?;
    let steps = u.steps();

    let mut down_states = Vec::with_capacity(p);
    let mut state_sum = vec![DVector::<f64>::zeros(sys.state_dim()); steps + 1];
    let mut output_sum = vec![DVector::<f64>::zeros(r.total()); steps];
    let mut local_component: f64 = 0.0;
    let mut locals = Vec::with_capacity(p);
    for i in 0..p {
        let ds = sys.derived(SubsystemKind::Downstream(i))?;
        // Initial state: x_{i,0} on block i, zero elsewhere in ↓i.
        let mut x0_down = DVector::zeros(ds.state_coords.len());
        for (k, &g) in ds.state_coords.iter().enumerate() {
            if n.range(i).contains(&g) {
                x0_down[k] = x0[g];
            }
        }
        let ui = u.restrict(&m.range(i).collect::<Vec<_>>())?;
        let traj = simulate_derived(&ds, &x0_down, &ui)?;
        for (acc, x) in state_sum.iter_mut().zip(&traj.states) {
            for (k, &g) in ds.state_coords.iter().enumerate() {
                acc[g] += x[k];
            }
        }
        for (acc, y) in output_sum.iter_mut().zip(&traj.outputs) {
            for (k, &g) in ds.output_coords.iter().enumerate() {
                acc[g] += y[k];
            }
        }

        let local = sys.derived(SubsystemKind::Local(i))?;
        let local_traj = simulate_derived(&local, &select(x0, &local.state_coords), &ui)?;
        let state_pos: Vec<usize> = local
            .state_coords
            .iter()
            .map(|g| ds.state_coords.iter().position(|h| h == g).expect("i ∈ ↓i"))
            .collect();
        let output_pos: Vec<usize> = local
            .output_coords
            .iter()
            .map(|g| ds.output_coords.iter().position(|h| h == g).expect("i ∈ ↓i"))
            .collect();
        for k in 0..=steps {
            let diff = select(&traj.states[k], &state_pos) - &local_traj.states[k];
            local_component = local_component.max(max_abs(&diff));
            if k < steps {
                let diff = select(&traj.outputs[k], &output_pos) - &local_traj.outputs[k];
                local_component = local_component.max(max_abs(&diff));
            }
        }
        down_states.push((ds.state_coords, traj));
        locals.push(local_traj);
    }

    let mut downstream_sum: f64 = 0.0;
    for k in 0..=steps {
        downstream_sum = downstream_sum.max(max_abs(&(&global.states[k] - &state_sum[k])));
        if k < steps {
            downstream_sum = downstream_sum.max(max_abs(&(&global.outputs[k] - &output_sum[k])));
        }
    }

    let mut node_split: f64 = 0.0;
    for i in 0..p {
        let coords: Vec<usize> = n.range(i).collect();
        for k in 0..=steps {
            let mut total = locals[i].states[k].clone();
            for j in sys.poset().strict_up(i) {
                let (ref state_coords, ref traj) = down_states[j];
                for (t, g) in coords.iter().enumerate() {
                    let pos = state_coords.iter().position(|h| h == g).expect("i ∈ ↓j");
                    total[t] += traj.states[k][pos];
                }
            }
            let diff = select(&global.states[k], &coords) - total;
            node_split = node_split.max(max_abs(&diff));
        }
    }

    let mut upstream: f64 = 0.0;
    for i in 0..p {
        let us = sys.derived(SubsystemKind::Upstream(i))?;
        let traj = simulate_derived(&us, &select(x0, &us.state_coords), &u.restrict(&us.input_coords)?)?;
        for k in 0..=steps {
            let diff = select(&global.states[k], &us.state_coords) - &traj.states[k];
            upstream = upstream.max(max_abs(&diff));
            if k < steps {
                let diff = select(&global.outputs[k], &us.output_coords) - &traj.outputs[k];
                upstream = upstream.max(max_abs(&diff));
            }
        }
    }

    Ok(DecompositionReport {
        downstream_sum,
        local_component,
        node_split,
        upstream,
        tolerance,
    })
}
