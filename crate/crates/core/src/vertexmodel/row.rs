//! One-row transfer weights: the matrix elements of `T(u)` and `T*(v)`
//! between two signatures, built column by column from the vertex weights.

use crate::error::Result;
use crate::exactmath::Rational;
use crate::signatures::Signature;

use super::{ParamSet, WeightTables};

/// Column-0 treatment: plain weights or the `gamma`-refined ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Column0 {
    #[default]
    Plain,
    Refined,
}

impl Column0 {
    fn scale(self, params: &ParamSet, x: usize) -> Rational {
        match self {
            Column0::Refined if x == 0 => params.gamma.clone(),
            _ => Rational::one(),
        }
    }
}

/// Horizontal occupancies `h_0 = 1, h_{x+1} = h_x + a_x - b_x` over the
/// columns `0..=top`; `None` if any leaves `{0, 1}` or the last is not 0.
fn horizontal_edges(a: &[usize], b: &[usize], top: usize) -> Option<Vec<u8>> {
    let mut h = vec![1i64];
    for x in 0..=top {
        let next = h[x] + a.get(x).copied().unwrap_or(0) as i64 - b.get(x).copied().unwrap_or(0) as i64;
        if !(0..=1).contains(&next) {
            return None;
        }
        h.push(next);
    }
    if h[top + 1] != 0 {
        return None;
    }
    Some(h.into_iter().map(|v| v as u8).collect())
}

/// Matrix element `<mu| T(u) |nu>` with a path entering from the left.
/// Zero unless `mu` interlaces into `nu`.
pub fn row_weight_with(
    tables: &WeightTables,
    column0: Column0,
    params: &ParamSet,
    u: &Rational,
    mu: &Signature,
    nu: &Signature,
) -> Result<Rational> {
    let (a, b) = (mu.multiplicities(), nu.multiplicities());
    let top = mu.largest().max(nu.largest());
    let Some(h) = horizontal_edges(&a, &b, top) else {
        return Ok(Rational::zero());
    };
    let mut acc = Rational::one();
    for x in 0..=top {
        let (ax, bx) = (a.get(x).copied().unwrap_or(0), b.get(x).copied().unwrap_or(0));
        let scale = column0.scale(params, x);
        acc *= tables.w(u, params.s.at(x), &params.t, &scale, ax, h[x], bx, h[x + 1])?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

pub fn row_weight(params: &ParamSet, u: &Rational, mu: &Signature, nu: &Signature) -> Result<Rational> {
    row_weight_with(&WeightTables::default(), Column0::Plain, params, u, mu, nu)
}

/// [`row_weight`] with the `gamma`-refined column 0.
pub fn row_weight_refined(params: &ParamSet, u: &Rational, mu: &Signature, nu: &Signature) -> Result<Rational> {
    row_weight_with(&WeightTables::default(), Column0::Refined, params, u, mu, nu)
}

/// Matrix element of `T*(v)` from `mu` down to `nu` (one part fewer):
/// the column conjugation ratios times `row_weight(v, nu, mu)`, taken
/// vertex by vertex so removable poles of the ratio cancel.
pub fn row_weight_star_with(
    tables: &WeightTables,
    column0: Column0,
    params: &ParamSet,
    v: &Rational,
    mu: &Signature,
    nu: &Signature,
) -> Result<Rational> {
    let (a, b) = (mu.multiplicities(), nu.multiplicities());
    let top = mu.largest().max(nu.largest());
    let Some(h) = horizontal_edges(&b, &a, top) else {
        return Ok(Rational::zero());
    };
    let mut acc = Rational::one();
    for x in 0..=top {
        let (ax, bx) = (a.get(x).copied().unwrap_or(0), b.get(x).copied().unwrap_or(0));
        let scale = column0.scale(params, x);
        acc *= tables.wstar(v, params.s.at(x), &params.t, &scale, ax, h[x], bx, h[x + 1])?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

pub fn row_weight_star(params: &ParamSet, v: &Rational, mu: &Signature, nu: &Signature) -> Result<Rational> {
    row_weight_star_with(&WeightTables::default(), Column0::Plain, params, v, mu, nu)
}

/// [`row_weight_star`] with the `gamma`-refined column 0.
pub fn row_weight_star_refined(params: &ParamSet, v: &Rational, mu: &Signature, nu: &Signature) -> Result<Rational> {
    row_weight_star_with(&WeightTables::default(), Column0::Refined, params, v, mu, nu)
}

/// [`row_weight_star`] assembled directly from the closed-form `w*` table.
pub fn row_weight_star_closed(params: &ParamSet, v: &Rational, mu: &Signature, nu: &Signature) -> Result<Rational> {
    let (a, b) = (mu.multiplicities(), nu.multiplicities());
    let top = mu.largest().max(nu.largest());
    let Some(h) = horizontal_edges(&b, &a, top) else {
        return Ok(Rational::zero());
    };
    let mut acc = Rational::one();
    for x in 0..=top {
        let (ax, bx) = (a.get(x).copied().unwrap_or(0), b.get(x).copied().unwrap_or(0));
        acc *= WeightTables::wstar_closed(v, params.s.at(x), &params.t, ax, h[x], bx, h[x + 1])?;
    }
    Ok(acc)
}
