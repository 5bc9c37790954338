//! Exact linear subspaces of Q^n.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::blockmat::Partition;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poset::NodeSet;
use crate::rational::{format_rational, parse_rational, Rational};

/// A subspace held in canonical form: the basis vectors are the nonzero rows
/// of a reduced row echelon matrix, so equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient: n,
            rows: Matrix::zeros(0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self::from_row_matrix(Matrix::identity(n))
    }

    fn from_row_matrix(m: Matrix) -> Self {
        let ambient = m.ncols();
        let (r, pivots) = m.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        let all: Vec<usize> = (0..ambient).collect();
        Subspace {
            ambient,
            rows: r.select(&keep, &all),
            pivots,
        }
    }

    pub fn span(n: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::AmbientMismatch {
                left: n,
                right: v.len(),
            });
        }
        let m = Matrix::from_rows(vectors.to_vec(), n)?;
        Ok(Self::from_row_matrix(m))
    }

    /// Span of unit vectors e_k (0-based indices).
    pub fn coordinate(n: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Matrix::zeros(0, n);
        for k in coords {
            let mut row = Matrix::zeros(1, n);
            row[(0, k)] = Rational::one();
            m = m.vstack(&row).expect("same width");
        }
        Self::from_row_matrix(m)
    }

    /// X_S: the coordinate blocks in S.
    pub fn blocks(n: &Partition, s: &NodeSet) -> Self {
        Self::coordinate(n.total(), n.indices(s))
    }

    /// X_i for a single block.
    pub fn block(n: &Partition, i: usize) -> Self {
        Self::coordinate(n.total(), n.range(i))
    }

    /// Sum of subspaces of Q^n; the empty sum is {0}.
    pub fn sum_of(n: usize, parts: impl IntoIterator<Item = Subspace>) -> Self {
        parts
            .into_iter()
            .fold(Self::zero(n), |acc, s| acc.sum(&s).expect("same ambient"))
    }

    /// Intersection of subspaces of Q^n; the empty intersection is Q^n.
    pub fn intersection_of(n: usize, parts: impl IntoIterator<Item = Subspace>) -> Self {
        parts
            .into_iter()
            .fold(Self::full(n), |acc, s| acc.intersect(&s).expect("same ambient"))
    }

    /// Column space.
    pub fn image(m: &Matrix) -> Self {
        Self::from_row_matrix(m.transpose())
    }

    /// Null space.
    pub fn kernel(m: &Matrix) -> Self {
        let ns = m.null_space();
        Self::span(m.ncols(), &ns).expect("null space vectors have the right length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis vectors.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows.to_rows()
    }

    /// Canonical basis as the columns of an n×k matrix.
    pub fn basis_matrix(&self) -> Matrix {
        self.rows.transpose()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut rest = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            if rest[pc].is_zero() {
                continue;
            }
            let f = rest[pc].clone();
            for (k, x) in self.rows.row(row).iter().enumerate() {
                if !x.is_zero() {
                    rest[k] -= &f * x;
                }
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok(other.basis().iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_row_matrix(self.rows.vstack(&other.rows)?))
    }

    /// Intersection by the Zassenhaus row reduction of [[U, U], [V, 0]].
    pub fn intersect(&self, other: &Subspace) -> Result<Self> {
        self.check(other)?;
        let n = self.ambient;
        let top = self.rows.hstack(&self.rows)?;
        let bottom = other.rows.hstack(&Matrix::zeros(other.dim(), n))?;
        let (r, pivots) = top.vstack(&bottom)?.rref();
        let left: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &pc)| pc >= n)
            .map(|(row, _)| row)
            .collect();
        Ok(Self::from_row_matrix(r.select(&rows, &left)))
    }

    /// Orthogonal complement for the standard inner product.
    pub fn complement(&self) -> Self {
        Self::kernel(&self.rows)
    }

    /// U ⊖ V := U ∩ V^⊥.
    pub fn ominus(&self, other: &Subspace) -> Result<Self> {
        self.check(other)?;
        self.intersect(&other.complement())
    }

    /// M·U.
    pub fn map(&self, m: &Matrix) -> Result<Self> {
        if m.ncols() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: m.ncols(),
                right: self.ambient,
            });
        }
        Ok(Self::image(&m.mul(&self.basis_matrix())?))
    }

    /// Orthogonal projection onto the coordinate blocks S, kept in global coordinates.
    pub fn project_blocks(&self, n: &Partition, s: &NodeSet) -> Result<Self> {
        if n.total() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: n.total(),
                right: self.ambient,
            });
        }
        let keep = n.indices(s);
        let mut rows = self.rows.clone();
        for row in 0..rows.nrows() {
            for k in 0..self.ambient {
                if keep.binary_search(&k).is_err() {
                    rows[(row, k)] = Rational::zero();
                }
            }
        }
        Ok(Self::from_row_matrix(rows))
    }

    pub fn project_block(&self, n: &Partition, i: usize) -> Result<Self> {
        self.project_blocks(n, &NodeSet::from([i]))
    }

    /// Orthogonal projection P_Y(U) with P_Y = Y (YᵀY)⁻¹ Yᵀ.
    pub fn project_onto(&self, y: &Subspace) -> Result<Self> {
        self.check(y)?;
        if y.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        let yb = y.basis_matrix();
        let gram = y.rows.mul(&yb)?;
        let p = yb.mul(&gram.inverse()?)?.mul(&y.rows)?;
        self.map(&p)
    }

    /// Span of the basis vectors restricted to `coords`, as a subspace of Q^coords.len().
    pub fn restrict_coordinates(&self, coords: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.dim()).collect();
        Self::from_row_matrix(self.rows.select(&all, coords))
    }

    /// Places a subspace of Q^k into Q^n at the given coordinates.
    pub fn embed_coordinates(&self, n: usize, coords: &[usize]) -> Self {
        assert_eq!(coords.len(), self.ambient);
        let mut rows = Matrix::zeros(self.dim(), n);
        for r in 0..self.dim() {
            for (k, &c) in coords.iter().enumerate() {
                rows[(r, c)] = self.rows[(r, k)].clone();
            }
        }
        Self::from_row_matrix(rows)
    }
}

fn format_vector(v: &[Rational]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        let mag = c.abs();
        if !mag.is_one() {
            if mag.is_integer() {
                out.push_str(&format_rational(&mag));
            } else {
                out.push_str(&format!("({})", format_rational(&mag)));
            }
        }
        out.push_str(&format!("e{}", k + 1));
    }
    out
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.basis().iter().map(|v| format_vector(v)).collect();
        write!(f, "span{{{}}}", terms.join(", "))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Q^{}", self.ambient)
    }
}

/// Parses `span{e1, -e2+e4, 2e3, (1/2)e5}` into vectors of length n.
/// `{0}` and `span{}` denote the zero subspace.
pub fn parse_span(n: usize, text: &str) -> Result<Subspace> {
    let bad = || Error::ParseRational(text.to_string());
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("span")
        .unwrap_or(&compact)
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(bad)?;
    if inner.is_empty() || inner == "0" {
        return Ok(Subspace::zero(n));
    }
    let mut vectors = Vec::new();
    for item in inner.split(',') {
        vectors.push(parse_vector(n, item).ok_or_else(bad)?);
    }
    Subspace::span(n, &vectors)
}

fn parse_vector(n: usize, text: &str) -> Option<Vec<Rational>> {
    let mut v = vec![Rational::zero(); n];
    let bytes: Vec<char> = text.chars().collect();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = Rational::one();
        if bytes[pos] == '+' || bytes[pos] == '-' {
            if bytes[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos] != 'e' {
            pos += 1;
        }
        let coeff: String = bytes[start..pos].iter().collect();
        let coeff = coeff.trim_start_matches('(').trim_end_matches(')').trim_end_matches('*');
        let coeff = if coeff.is_empty() {
            Rational::one()
        } else {
            parse_rational(coeff).ok()?
        };
        pos += 1;
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let index: usize = bytes[start..pos].iter().collect::<String>().parse().ok()?;
        if index == 0 || index > n {
            return None;
        }
        v[index - 1] += sign * coeff;
    }
    Some(v)
}

impl FromStr for Subspace {
    type Err = Error;

    /// Parses with the ambient dimension given as a prefix, e.g. `4:span{e1}`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::ParseRational(s.to_string()))?;
        let n: usize = n.trim().parse().map_err(|_| Error::ParseRational(s.to_string()))?;
        parse_span(n, rest)
    }
}
