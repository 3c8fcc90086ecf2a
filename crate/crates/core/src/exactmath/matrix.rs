use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Rational, Scalar};
use crate::error::{Error, Result};

/// Largest dimension handled by first-row expansion in [`pfaffian`].
const EXPANSION_LIMIT: usize = 8;

/// Antisymmetric matrix of even dimension. Only the strict upper triangle is
/// stored; the diagonal is zero and the lower triangle is implied.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<S = Rational> {
    dim: usize,
    upper: Vec<S>,
}

impl<S: Scalar> SkewMatrix<S> {
    pub fn zeros(dim: usize) -> Result<Self> {
        if !dim.is_multiple_of(2) {
            return Err(Error::OddDimension(dim));
        }
        Ok(SkewMatrix {
            dim,
            upper: vec![S::zero(); dim * dim.saturating_sub(1) / 2],
        })
    }

    /// Builds the matrix from `entry(i, j)` evaluated for `i < j` only.
    pub fn from_upper<F>(dim: usize, mut entry: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<S>,
    {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in i + 1..dim {
                let k = m.slot(i, j);
                m.upper[k] = entry(i, j)?;
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.dim);
        i * self.dim - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.upper[self.slot(i, j)].clone(),
            Greater => -self.upper[self.slot(j, i)].clone(),
            Equal => S::zero(),
        }
    }

    /// Sets `A[i][j] = value` and `A[j][i] = -value`. Panics on `i == j`.
    pub fn set(&mut self, i: usize, j: usize, value: S) {
        assert!(i != j, "diagonal of a skew matrix is fixed at zero");
        if i < j {
            let k = self.slot(i, j);
            self.upper[k] = value;
        } else {
            let k = self.slot(j, i);
            self.upper[k] = -value;
        }
    }

    /// Simultaneous row/column permutation: `B[a][b] = A[perm[a]][perm[b]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim);
        let mut out = Self::zeros(self.dim).expect("dimension already even");
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                out.set(a, b, self.get(perm[a], perm[b]));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// Pfaffian; expansion for dimension up to 8, elimination above.
pub fn pfaffian<S: Scalar>(a: &SkewMatrix<S>) -> S {
    if a.dim() <= EXPANSION_LIMIT {
        pfaffian_by_expansion(a)
    } else {
        pfaffian_by_elimination(a)
    }
}

/// Recursive expansion along the first remaining row.
pub fn pfaffian_by_expansion<S: Scalar>(a: &SkewMatrix<S>) -> S {
    let idx: Vec<usize> = (0..a.dim()).collect();
    expand(a, &idx)
}

fn expand<S: Scalar>(a: &SkewMatrix<S>, idx: &[usize]) -> S {
    if idx.is_empty() {
        return S::one();
    }
    let first = idx[0];
    let mut acc = S::zero();
    let mut rest = Vec::with_capacity(idx.len() - 2);
    for k in 1..idx.len() {
        let entry = a.get(first, idx[k]);
        if entry.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(idx[1..].iter().enumerate().filter(|&(p, _)| p + 1 != k).map(|(_, &v)| v));
        let term = entry * expand(a, &rest);
        acc = if k % 2 == 1 { acc + term } else { acc - term };
    }
    acc
}

/// Skew Gaussian elimination: pivot on `A[k][k+1]` and replace the trailing
/// block by its skew Schur complement, two rows at a time.
pub fn pfaffian_by_elimination<S: Scalar>(a: &SkewMatrix<S>) -> S {
    let n = a.dim();
    let mut m = a.to_dense();
    let mut result = S::one();
    let mut k = 0;
    while k < n {
        // Largest nonzero pivot candidate in row k.
        let pivot = (k + 1..n)
            .filter(|&j| !m[k][j].is_zero())
            .max_by(|&x, &y| m[k][x].magnitude().total_cmp(&m[k][y].magnitude()));
        let Some(p) = pivot else {
            return S::zero();
        };
        if p != k + 1 {
            m.swap(p, k + 1);
            for row in m.iter_mut() {
                row.swap(p, k + 1);
            }
            result = -result;
        }
        let piv = m[k][k + 1].clone();
        result = result * piv.clone();
        for i in k + 2..n {
            for j in i + 1..n {
                let corr = (m[k + 1][i].clone() * m[k][j].clone() - m[k][i].clone() * m[k + 1][j].clone())
                    / piv.clone();
                let v = m[i][j].clone() + corr;
                m[j][i] = -v.clone();
                m[i][j] = v;
            }
        }
        k += 2;
    }
    result
}

/// Exact determinant by Bareiss fraction-free elimination. Each row is first
/// scaled to integers by its denominator lcm; the scale is divided out at the end.
pub fn determinant(a: &[Vec<Rational>]) -> Result<Rational> {
    let n = a.len();
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: row.len() });
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in a {
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        m.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        scale *= l;
    }

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    let det = if negate { -det } else { det };
    Rational::from_bigints(det, scale)
}
