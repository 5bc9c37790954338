//! Univariate polynomials with rational coefficients.

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{format_rational, int, Rational};

/// Polynomial stored by ascending powers with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Monic polynomial from the coefficients below the leading one, ascending.
    pub fn monic(lower: &[Rational]) -> Self {
        let mut c = lower.to_vec();
        c.push(Rational::one());
        Self::new(c)
    }

    pub fn one() -> Self {
        Self::new(vec![Rational::one()])
    }

    /// The polynomial λ - root.
    pub fn linear(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// p(M) by Horner's scheme.
    pub fn eval_matrix(&self, m: &Matrix) -> Result<Matrix> {
        if !m.is_square() {
            return Err(Error::ShapeMismatch("polynomial of a non-square matrix".into()));
        }
        let n = m.nrows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&Matrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Characteristic polynomial det(λI - M) by the Faddeev-LeVerrier recursion.
pub fn char_poly(m: &Matrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(
            "characteristic polynomial of a non-square matrix".into(),
        ));
    }
    let n = m.nrows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        // M_k = M (M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k)/k
        let shifted = mk.add(&Matrix::identity(n).scale(&coeffs[n - k + 1]))?;
        mk = m.mul(&shifted)?;
        coeffs[n - k] = -mk.trace() / int(k as i64);
    }
    Ok(Poly::new(coeffs))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let coeff = if mag.is_one() && k > 0 {
                String::new()
            } else {
                format_rational(&mag)
            };
            match k {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
