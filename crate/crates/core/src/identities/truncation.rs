use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::report::{Report, SubCheck, TracePoint};
use crate::signatures::{enumerate_even, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TruncationMode {
    /// Sum every signature with largest part up to `max_part`.
    Fixed,
    /// Grow the cutoff until `r_M < r_{M−2}` and `r_{M−1} < r_{M−3}` with the
    /// residual under the tolerance, or until `max_part` is reached.
    Adaptive,
}

/// How an infinite sum over even-multiplicity signatures is cut off: by the
/// largest part, for signatures with `2n` parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationPlan {
    pub max_part: usize,
    pub n: usize,
    pub mode: TruncationMode,
    /// Bound on the relative residual `|S_M - RHS| / |RHS|`.
    pub tolerance: Rational,
}

impl TruncationPlan {
    pub fn fixed(n: usize, max_part: usize, tolerance: Rational) -> Self {
        TruncationPlan {
            max_part,
            n,
            mode: TruncationMode::Fixed,
            tolerance,
        }
    }

    pub fn adaptive(n: usize, cap: usize, tolerance: Rational) -> Self {
        TruncationPlan {
            max_part: cap,
            n,
            mode: TruncationMode::Adaptive,
            tolerance,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParams("n must be positive".into()));
        }
        if self.tolerance.is_negative() || self.tolerance.is_zero() {
            return Err(Error::InvalidParams("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Signatures with `num_parts` parts, even multiplicities and largest part
/// exactly `m`.
pub fn even_signatures_with_largest(num_parts: usize, m: usize) -> Result<Vec<Signature>> {
    Ok(enumerate_even(num_parts, m)?
        .into_iter()
        .filter(|s| s.largest() == m)
        .collect())
}

/// Partial sums `S_0, S_1, …` of `term` over the even-multiplicity
/// signatures with `2n` parts; terms within one cutoff level are computed
/// in parallel.
pub fn partial_sums<F>(plan: &TruncationPlan, rhs: Option<&Rational>, term: F) -> Result<Vec<Rational>>
where
    F: Fn(&Signature) -> Result<Rational> + Sync,
{
    plan.validate()?;
    let mut sums: Vec<Rational> = Vec::new();
    let mut running = Rational::zero();
    for m in 0..=plan.max_part {
        let level = even_signatures_with_largest(2 * plan.n, m)?;
        let values = level.par_iter().map(&term).collect::<Result<Vec<_>>>()?;
        running += values.into_iter().sum::<Rational>();
        sums.push(running.clone());
        if plan.mode == TruncationMode::Adaptive {
            if let Some(rhs) = rhs {
                if adaptive_done(&sums, rhs, &plan.tolerance) {
                    break;
                }
            }
        }
    }
    Ok(sums)
}

fn abs_residual(s: &Rational, rhs: &Rational) -> Rational {
    (s - rhs).abs()
}

/// `|S - RHS| / |RHS|`, or the absolute residual when `RHS = 0`.
pub fn relative_residual(s: &Rational, rhs: &Rational) -> Rational {
    let r = abs_residual(s, rhs);
    if rhs.is_zero() {
        r
    } else {
        r / rhs.abs()
    }
}

fn adaptive_done(sums: &[Rational], rhs: &Rational, tol: &Rational) -> bool {
    if sums.len() < 4 {
        return false;
    }
    let r: Vec<Rational> = sums[sums.len() - 4..].iter().map(|s| abs_residual(s, rhs)).collect();
    // two-step comparisons, so a sign-alternating tail can still stop early
    let shrinking = r[2] < r[0] && r[3] < r[1];
    shrinking && &relative_residual(sums.last().expect("nonempty"), rhs) <= tol
}

/// `E_k = max_{j ≥ k} r_j`, the running tail maximum of a residual trace.
fn envelope<T: PartialOrd + Clone>(residuals: &[T]) -> Vec<T> {
    let mut out = residuals.to_vec();
    for k in (0..out.len().saturating_sub(1)).rev() {
        if out[k + 1] > out[k] {
            out[k] = out[k + 1].clone();
        }
    }
    out
}

/// Fills `report` from the partial sums of a truncated identity.
///
/// The tail of the sum may alternate in sign, so `|S_M − RHS|` can dip
/// where the partial sums cross the right side. Convergence is therefore
/// judged on the envelope `E_k = max_{j≥k} |S_j − RHS|`. Pass requires the
/// final relative residual to be within tolerance and `E` to drop strictly
/// at least every two steps from `M₀ = ⌈M/2⌉` on. The envelope rate
/// `(E_M / E_{M₀})^{1/(M−M₀)}` is recorded next to `rate` (ρ², the
/// asymptotic decay) but does not gate.
pub fn assess_truncation(report: &mut Report, plan: &TruncationPlan, sums: &[Rational], rhs: &Rational, rate: Option<&Rational>) {
    let residuals: Vec<Rational> = sums.iter().map(|s| abs_residual(s, rhs)).collect();
    report.trace = sums
        .iter()
        .enumerate()
        .map(|(m, s)| TracePoint {
            max_part: m,
            residual: relative_residual(s, rhs).approx(),
        })
        .collect();
    let last = sums.last().cloned().unwrap_or_else(Rational::zero);
    let reached = sums.len().saturating_sub(1);
    let rel = relative_residual(&last, rhs);
    report.lhs = Some((&last).into());
    report.rhs = Some(rhs.into());
    report.residual = Some((&last - rhs).into());
    report.push(SubCheck::flag(
        "relative residual within tolerance",
        rel <= plan.tolerance,
        format!("{:.3e} at M = {reached} against {:.3e}", rel.approx(), plan.tolerance.approx()),
    ));

    let m0 = reached.div_ceil(2);
    let env = envelope(&residuals);
    // A sum that terminates stays at residual zero, which counts as decreasing.
    let decreasing = env[m0..].windows(3).all(|w| w[2] < w[0] || w[0].is_zero());
    let observed = envelope_rate(&env.iter().map(Rational::approx).collect::<Vec<_>>(), m0);
    let mut note = format!("tail envelope decreasing from M = {m0}; envelope rate {observed:.5}");
    if let Some(rate) = rate {
        note.push_str(&format!(", asymptotic rate {:.5}", rate.approx()));
    }
    report.push(SubCheck::flag("residuals decreasing", decreasing, note));
}

fn envelope_rate(env: &[f64], from: usize) -> f64 {
    let last = env.len().saturating_sub(1);
    if last <= from || env[from] <= 0.0 {
        return 0.0;
    }
    (env[last] / env[from]).powf(1.0 / (last - from) as f64)
}

/// Geometric-mean decay `(E_M / E_from)^{1/(M−from)}` of the recorded
/// trace's tail envelope.
pub fn observed_ratio(report: &Report, from: usize) -> f64 {
    let residuals: Vec<f64> = report.trace.iter().map(|p| p.residual).collect();
    envelope_rate(&envelope(&residuals), from)
}
