use std::fmt;

use super::Rational;
use crate::error::{Error, Result};

/// Univariate polynomial with exact coefficients, lowest degree first.
/// The leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// The unique polynomial of degree below `points.len()` through `points`.
///
/// Newton divided differences, then expansion into the monomial basis.
pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Poly> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if points[i].0 == points[j].0 {
                return Err(Error::RepeatedAbscissa(points[i].0.to_string()));
            }
        }
    }
    let xs: Vec<&Rational> = points.iter().map(|p| &p.0).collect();
    let mut dd: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    // Horner on the Newton form: p = dd[n-1]; p = p * (x - x_k) + dd[k].
    let mut coeffs: Vec<Rational> = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    Ok(Poly::new(coeffs))
}
