//! Poset-causal linear systems, their duals and derived subsystems.

use std::fmt;

use num_traits::Zero;

use crate::blockmat::{BlockMatrix, Partition};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poset::{NodeSet, Poset};
use crate::rational::{format_rational, Rational};

/// One block that is nonzero where the poset requires a zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub matrix: String,
    pub row_block: usize,
    pub col_block: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} block ({}, {}) must be zero",
            self.matrix,
            self.row_block + 1,
            self.col_block + 1
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// ẋ = Ax + Bu, y = Cx + Du with every matrix in the poset's incidence space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetCausalSystem {
    poset: Poset,
    a: BlockMatrix,
    b: BlockMatrix,
    c: BlockMatrix,
    d: BlockMatrix,
    x0: Option<Vec<Rational>>,
}

/// Which derived system to extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsystemKind {
    Global,
    Local(usize),
    Downstream(usize),
    Upstream(usize),
}

/// A derived state-space model together with the global blocks it lives on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedSystem {
    pub kind: SubsystemKind,
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub d: Matrix,
    pub state_blocks: NodeSet,
    pub input_blocks: NodeSet,
    pub output_blocks: NodeSet,
    /// Global state coordinates of the derived state, in order.
    pub state_coords: Vec<usize>,
    pub input_coords: Vec<usize>,
    pub output_coords: Vec<usize>,
}

impl PosetCausalSystem {
    /// Assembles a system after checking shapes but not structure.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        poset: Poset,
        n: Partition,
        m: Partition,
        r: Partition,
        a: Matrix,
        b: Matrix,
        c: Matrix,
        d: Matrix,
        x0: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let p = poset.size();
        for part in [&n, &m, &r] {
            if part.parts() != p {
                return Err(Error::PartitionMismatch {
                    expected: p,
                    found: part.parts(),
                });
            }
        }
        let named = |name: &str, e: Error| match e {
            Error::ShapeMismatch(msg) => Error::ShapeMismatch(format!("{name}: {msg}")),
            other => other,
        };
        let a = BlockMatrix::new(a, n.clone(), n.clone()).map_err(|e| named("A", e))?;
        let b = BlockMatrix::new(b, n.clone(), m.clone()).map_err(|e| named("B", e))?;
        let c = BlockMatrix::new(c, r.clone(), n.clone()).map_err(|e| named("C", e))?;
        let d = BlockMatrix::new(d, r, m).map_err(|e| named("D", e))?;
        if let Some(x) = &x0 {
            if x.len() != n.total() {
                return Err(Error::ShapeMismatch(format!(
                    "x0 has {} entries, state dimension is {}",
                    x.len(),
                    n.total()
                )));
            }
        }
        Ok(PosetCausalSystem {
            poset,
            a,
            b,
            c,
            d,
            x0,
        })
    }

    /// Assembles and validates a system.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        poset: Poset,
        n: Partition,
        m: Partition,
        r: Partition,
        a: Matrix,
        b: Matrix,
        c: Matrix,
        d: Matrix,
        x0: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let sys = Self::from_parts(poset, n, m, r, a, b, c, d, x0)?;
        let report = sys.validate();
        if !report.is_valid() {
            return Err(Error::Validation(report));
        }
        Ok(sys)
    }

    /// System with zero C and D and no outputs beyond the given partition.
    pub fn from_ab(poset: Poset, n: Partition, m: Partition, a: Matrix, b: Matrix) -> Result<Self> {
        let r = Partition::uniform(poset.size(), 0);
        let c = Matrix::zeros(0, n.total());
        let d = Matrix::zeros(0, m.total());
        Self::new(poset, n, m, r, a, b, c, d, None)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (name, mat) in [("A", &self.a), ("B", &self.b), ("C", &self.c), ("D", &self.d)] {
            let found = mat
                .incidence_violations(&self.poset)
                .expect("partitions checked at construction");
            violations.extend(found.into_iter().map(|(row_block, col_block)| Violation {
                matrix: name.to_string(),
                row_block,
                col_block,
            }));
        }
        ValidationReport { violations }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn p(&self) -> usize {
        self.poset.size()
    }

    pub fn n(&self) -> &Partition {
        self.a.row_partition()
    }

    pub fn m(&self) -> &Partition {
        self.b.col_partition()
    }

    pub fn r(&self) -> &Partition {
        self.c.row_partition()
    }

    pub fn state_dim(&self) -> usize {
        self.n().total()
    }

    pub fn a(&self) -> &Matrix {
        self.a.entries()
    }

    pub fn b(&self) -> &Matrix {
        self.b.entries()
    }

    pub fn c(&self) -> &Matrix {
        self.c.entries()
    }

    pub fn d(&self) -> &Matrix {
        self.d.entries()
    }

    pub fn a_blocks(&self) -> &BlockMatrix {
        &self.a
    }

    pub fn b_blocks(&self) -> &BlockMatrix {
        &self.b
    }

    pub fn c_blocks(&self) -> &BlockMatrix {
        &self.c
    }

    pub fn d_blocks(&self) -> &BlockMatrix {
        &self.d
    }

    pub fn x0(&self) -> Option<&[Rational]> {
        self.x0.as_deref()
    }

    /// Initial state, zero when absent.
    pub fn initial_state(&self) -> Vec<Rational> {
        self.x0
            .clone()
            .unwrap_or_else(|| vec![Rational::zero(); self.state_dim()])
    }

    pub fn with_x0(mut self, x0: Option<Vec<Rational>>) -> Result<Self> {
        if let Some(x) = &x0 {
            if x.len() != self.state_dim() {
                return Err(Error::ShapeMismatch("x0 length".into()));
            }
        }
        self.x0 = x0;
        Ok(self)
    }

    /// (Aᵀ, Cᵀ, Bᵀ, Dᵀ) over the dual poset.
    pub fn dual(&self) -> Self {
        PosetCausalSystem {
            poset: self.poset.dual(),
            a: self.a.transpose(),
            b: self.c.transpose(),
            c: self.b.transpose(),
            d: self.d.transpose(),
            x0: None,
        }
    }

    pub fn derived(&self, kind: SubsystemKind) -> Result<DerivedSystem> {
        let p = self.p();
        let node = match kind {
            SubsystemKind::Global => None,
            SubsystemKind::Local(i) | SubsystemKind::Downstream(i) | SubsystemKind::Upstream(i) => Some(i),
        };
        if let Some(index) = node.filter(|&i| i >= p) {
            return Err(Error::IndexOutOfRange { index, p });
        }
        let all: NodeSet = (0..p).collect();
        let (states, inputs, outputs) = match kind {
            SubsystemKind::Global => (all.clone(), all.clone(), all),
            SubsystemKind::Local(i) => {
                let s = NodeSet::from([i]);
                (s.clone(), s.clone(), s)
            }
            SubsystemKind::Downstream(i) => {
                let down: NodeSet = self.poset.down(i).into_iter().collect();
                (down.clone(), NodeSet::from([i]), down)
            }
            SubsystemKind::Upstream(i) => {
                let up: NodeSet = self.poset.up(i).into_iter().collect();
                (up.clone(), up, NodeSet::from([i]))
            }
        };
        Ok(DerivedSystem {
            kind,
            a: self.a.compress(&states, &states).into_entries(),
            b: self.b.compress(&states, &inputs).into_entries(),
            c: self.c.compress(&outputs, &states).into_entries(),
            d: self.d.compress(&outputs, &inputs).into_entries(),
            state_coords: self.n().indices(&states),
            input_coords: self.m().indices(&inputs),
            output_coords: self.r().indices(&outputs),
            state_blocks: states,
            input_blocks: inputs,
            output_blocks: outputs,
        })
    }

    /// F(s) = D + C(sI - A)⁻¹B, checked to lie in the incidence space.
    pub fn transfer_eval(&self, s: &Rational) -> Result<BlockMatrix> {
        let n = self.state_dim();
        let resolvent = Matrix::identity(n)
            .scale(s)
            .sub(self.a())?
            .inverse()
            .map_err(|_| Error::SingularResolvent(format_rational(s)))?;
        let f = self.d().add(&self.c().mul(&resolvent)?.mul(self.b())?)?;
        let f = BlockMatrix::new(f, self.r().clone(), self.m().clone())?;
        if let Some(&(row, col)) = f.incidence_violations(&self.poset)?.first() {
            return Err(Error::StructureViolation { row, col });
        }
        Ok(f)
    }
}
