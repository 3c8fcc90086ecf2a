//! The refined Littlewood identity, its lattice-convention form (the
//! partition function `P`), and its classical and unrefined specializations.
//! Left sides are truncated sums over even-multiplicity signatures; right
//! sides are exact Pfaffian expressions.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::exactmath::{pochhammer_t, Rational};
use crate::report::{Report, SubCheck};
use crate::shl::{f_alpha_prefactor, multiplicity_normalization, refined_params, SymmetrizationTables};
use crate::signatures::{c_weight, enumerate_even, GeneralizedState, Signature};
use crate::vertexmodel::{InhomogeneitySequence, ParamSet};

use super::truncation::{assess_truncation, partial_sums, TruncationPlan};
use super::zfunction::{pfaffian_expression, z2n_pfaffian_side, ZMutation};

fn even_multiplicities(lambda: &Signature) -> Result<Vec<usize>> {
    let m = lambda.multiplicities();
    if let Some((value, &mult)) = m.iter().enumerate().find(|(_, &c)| c % 2 != 0) {
        return Err(Error::OddMultiplicity {
            value,
            multiplicity: mult as i64,
        });
    }
    Ok(m)
}

/// `∏_{i≥1} ∏_{j=1}^{m_i/2} (1 − s_i² t^{2j−2})/(1 − t^{2j})`.
fn higher_column_factor(m: &[usize], params: &ParamSet) -> Result<Rational> {
    let t = &params.t;
    let mut acc = Rational::one();
    for (i, &mi) in m.iter().enumerate().skip(1) {
        let s2 = params.s.at(i) * params.s.at(i);
        for j in 1..=(mi / 2) as i32 {
            acc *= (1 - &s2 * t.pow(2 * j - 2)).checked_div(&(1 - t.pow(2 * j)), "1 - t^{2j}")?;
        }
    }
    Ok(acc)
}

/// Coefficient of `F_λ` in the refined identity:
/// `1/(t;t)_{m₀} ∏_{j≤m₀/2}(1−s₀²γ⁻¹t^{2j−2})(1−γt^{2j−1}) ∏_j(1−s₀u_j) ∏_{i≥1}(…)`.
pub fn littlewood_coefficient(lambda: &Signature, params: &ParamSet) -> Result<Rational> {
    let m = even_multiplicities(lambda)?;
    let (t, g, s0) = (&params.t, &params.gamma, params.s0());
    let m0 = m[0];
    let mut acc = pochhammer_t(t, t, m0).checked_recip("(t;t)_{m0}")?;
    let s0sq_over_g = s0 * s0 * g.checked_recip("gamma")?;
    for j in 1..=(m0 / 2) as i32 {
        acc *= (1 - &s0sq_over_g * t.pow(2 * j - 2)) * (1 - g * t.pow(2 * j - 1));
    }
    for u in &params.u {
        acc *= 1 - s0 * u;
    }
    Ok(acc * higher_column_factor(&m, params)?)
}

/// Coefficient of `P^{HL}_λ` in the classical identity:
/// `∏_{j≤m₀/2}(1−γt^{2j−1}) ∏_{i≥1}∏_{j≤m_i/2}(1−t^{2j−1})`.
pub fn classical_coefficient(lambda: &Signature, params: &ParamSet) -> Result<Rational> {
    let m = even_multiplicities(lambda)?;
    let (t, g) = (&params.t, &params.gamma);
    let mut acc = Rational::one();
    for (i, &mi) in m.iter().enumerate() {
        for j in 1..=(mi / 2) as i32 {
            let tj = t.pow(2 * j - 1);
            acc *= if i == 0 { 1 - g * tj } else { 1 - tj };
        }
    }
    Ok(acc)
}

/// Coefficient of `F_λ` in the unrefined identity:
/// `∏_{i≥0}∏_{j≤m_i/2}(1−s_i²t^{2j−2})/(1−t^{2j})`.
pub fn unrefined_coefficient(lambda: &Signature, params: &ParamSet) -> Result<Rational> {
    let m = even_multiplicities(lambda)?;
    let t = &params.t;
    let s2 = params.s0() * params.s0();
    let mut acc = higher_column_factor(&m, params)?;
    for j in 1..=(m[0] / 2) as i32 {
        acc *= (1 - &s2 * t.pow(2 * j - 2)).checked_div(&(1 - t.pow(2 * j)), "1 - t^{2j}")?;
    }
    Ok(acc)
}

/// Per-signature terms of the four truncated sums, with the `F_λ` factor
/// tables built once per parameter point.
pub struct TermEvaluator {
    params: ParamSet,
    tables: SymmetrizationTables,
    refined: Option<SymmetrizationTables>,
}

impl TermEvaluator {
    pub fn new(params: &ParamSet, max_part: usize) -> Result<Self> {
        Ok(TermEvaluator {
            params: params.clone(),
            tables: SymmetrizationTables::new(params, max_part)?,
            refined: None,
        })
    }

    /// Also tabulates `F_λ` at `s₀ → γs₀`, needed by [`Self::partition_term`].
    pub fn with_refined(mut self, max_part: usize) -> Result<Self> {
        self.refined = Some(SymmetrizationTables::new(&refined_params(&self.params), max_part)?);
        Ok(self)
    }

    pub fn f(&self, lambda: &Signature) -> Result<Rational> {
        self.tables.coset_sum(lambda)
    }

    pub fn littlewood_term(&self, lambda: &Signature) -> Result<Rational> {
        Ok(littlewood_coefficient(lambda, &self.params)? * self.f(lambda)?)
    }

    /// Needs `s ≡ 0`; the `F_λ` factor is turned into `P^{HL}_λ`.
    pub fn classical_term(&self, lambda: &Signature) -> Result<Rational> {
        let hl = self
            .f(lambda)?
            .checked_div(&multiplicity_normalization(lambda, &self.params.t), "(t;t)_{m_r}")?;
        Ok(classical_coefficient(lambda, &self.params)? * hl)
    }

    pub fn unrefined_term(&self, lambda: &Signature) -> Result<Rational> {
        Ok(unrefined_coefficient(lambda, &self.params)? * self.f(lambda)?)
    }

    /// `c_λ · F^α_λ`, the lattice-convention term of `P`.
    pub fn partition_term(&self, lambda: &Signature) -> Result<Rational> {
        let refined = self
            .refined
            .as_ref()
            .ok_or_else(|| Error::InvalidParams("refined tables were not built".into()))?;
        let c = c_weight(&GeneralizedState::from(lambda), &self.params)?;
        let f_alpha = f_alpha_prefactor(lambda.mult(0), &self.params)? * refined.coset_sum(lambda)?;
        Ok(c * f_alpha)
    }
}

fn rhs_of<F>(params: &ParamSet, numerator: F) -> Result<Rational>
where
    F: Fn(&Rational, &Rational) -> Rational,
{
    if !params.u.len().is_multiple_of(2) {
        return Err(Error::OddPartCount(params.u.len()));
    }
    pfaffian_expression(&params.u, &params.t, numerator, false, &ZMutation::default())
}

/// `∏_{i<j}(1−tu_iu_j)/(u_i−u_j) · Pf[(u_i−u_j)((1−t)(1−s₀u_i)(1−s₀u_j) + (1−γ)(t−s₀²/γ)(1−u_iu_j)) / ((1−u_iu_j)(1−tu_iu_j))]`.
pub fn littlewood_rhs(params: &ParamSet) -> Result<Rational> {
    let (t, g, s0) = (&params.t, &params.gamma, params.s0());
    let c = (1 - g) * (t - s0 * s0 * g.checked_recip("gamma")?);
    rhs_of(params, |a, b| (1 - t) * (1 - s0 * a) * (1 - s0 * b) + &c * (1 - a * b))
}

/// Classical right side: entry numerator `1 − γt + (γ−1)t u_iu_j`.
pub fn classical_rhs(params: &ParamSet) -> Result<Rational> {
    let (t, g) = (&params.t, &params.gamma);
    rhs_of(params, |a, b| 1 - g * t + (g - 1) * t * a * b)
}

/// Unrefined right side: entry numerator `1 − t`.
pub fn unrefined_rhs(params: &ParamSet) -> Result<Rational> {
    let t = &params.t;
    rhs_of(params, |_, _| 1 - t)
}

/// Right side of the lattice-convention identity:
/// `P = Z_{2n} / (∏_j (1−s₀u_j) ∏_{i<j} (1−u_iu_j))`.
pub fn partition_rhs(params: &ParamSet) -> Result<Rational> {
    let u = &params.u;
    let s0 = params.s0();
    let mut denom = Rational::one();
    for (i, ui) in u.iter().enumerate() {
        denom *= 1 - s0 * ui;
        for uj in &u[i + 1..] {
            denom *= 1 - ui * uj;
        }
    }
    z2n_pfaffian_side(params)?.checked_div(&denom, "(1 - s_0 u_j)(1 - u_i u_j)")
}

fn gate(params: &ParamSet, plan: &TruncationPlan) -> Result<()> {
    plan.validate()?;
    if params.u.len() != 2 * plan.n {
        return Err(Error::LengthMismatch(format!(
            "plan asks for 2n = {} variables, params carry {}",
            2 * plan.n,
            params.u.len()
        )));
    }
    params.check_admissible()?;
    params.check_pairwise_generic()
}

/// Truncated left side `S_M` of the refined identity.
pub fn littlewood_lhs(params: &ParamSet, plan: &TruncationPlan) -> Result<Rational> {
    gate(params, plan)?;
    let eval = TermEvaluator::new(params, plan.max_part)?;
    let sums = partial_sums(&TruncationPlan { mode: super::TruncationMode::Fixed, ..plan.clone() }, None, |l| {
        eval.littlewood_term(l)
    })?;
    Ok(sums.last().cloned().unwrap_or_else(Rational::zero))
}

/// Truncated `P` (lattice convention): `Σ c_λ F^α_λ`.
pub fn partition_p(params: &ParamSet, plan: &TruncationPlan) -> Result<Rational> {
    gate(params, plan)?;
    let eval = TermEvaluator::new(params, plan.max_part)?.with_refined(plan.max_part)?;
    let sums = partial_sums(&TruncationPlan { mode: super::TruncationMode::Fixed, ..plan.clone() }, None, |l| {
        eval.partition_term(l)
    })?;
    Ok(sums.last().cloned().unwrap_or_else(Rational::zero))
}

/// Admissibility ratio squared, the expected per-step decay of the tail.
pub fn decay_bound(params: &ParamSet) -> Result<Rational> {
    let r = params.admissibility_ratio()?;
    Ok(&r * &r)
}

fn truncated_report<T, R>(suite: &str, params: &ParamSet, plan: &TruncationPlan, prepare: impl FnOnce() -> Result<(T, R)>) -> Report
where
    T: Fn(&Signature) -> Result<Rational> + Sync,
    R: FnOnce() -> Result<Rational>,
{
    let started = Instant::now();
    let mut report = Report::new(suite);
    report.params = params.echo();
    report.plan = Some(plan.clone());
    let run = |report: &mut Report| -> Result<()> {
        gate(params, plan)?;
        let (term, rhs) = prepare()?;
        let rhs = rhs()?;
        let sums = partial_sums(plan, Some(&rhs), term)?;
        let rate = decay_bound(params)?;
        assess_truncation(report, plan, &sums, &rhs, Some(&rate));
        Ok(())
    };
    if let Err(e) = run(&mut report) {
        let mut r = Report::error(suite, &e);
        r.params = report.params;
        r.plan = report.plan;
        r.finish(started);
        return r;
    }
    report.finish(started);
    report
}

/// Truncated refined identity against its exact Pfaffian side.
pub fn check_littlewood(params: &ParamSet, plan: &TruncationPlan) -> Report {
    truncated_report("littlewood", params, plan, || {
        let eval = TermEvaluator::new(params, plan.max_part)?;
        Ok((move |l: &Signature| eval.littlewood_term(l), || littlewood_rhs(params)))
    })
}

/// Lattice-convention identity: truncated `P` against `Z_{2n}` normalized.
pub fn check_partition_p(params: &ParamSet, plan: &TruncationPlan) -> Report {
    truncated_report("pfp", params, plan, || {
        let eval = TermEvaluator::new(params, plan.max_part)?.with_refined(plan.max_part)?;
        Ok((move |l: &Signature| eval.partition_term(l), || partition_rhs(params)))
    })
}

/// Classical Hall–Littlewood identity; every `s_x` must be zero.
pub fn check_class_specialization(params: &ParamSet, plan: &TruncationPlan) -> Report {
    if !params.s.is_identically_zero() {
        let mut r = Report::error(
            "class",
            &Error::InvalidParams("the classical identity needs every s_x = 0".into()),
        );
        r.params = params.echo();
        return r;
    }
    let mut report = truncated_report("class", params, plan, || {
        let eval = TermEvaluator::new(params, plan.max_part)?;
        Ok((move |l: &Signature| eval.classical_term(l), || classical_rhs(params)))
    });
    if report.verdict != crate::Verdict::Error {
        // Each classical term is the refined term at s = 0 once F is
        // written as ∏_r (t;t)_{m_r} P^{HL}.
        let started = Instant::now();
        let check = (|| -> Result<SubCheck> {
            let eval = TermEvaluator::new(params, plan.max_part.min(4))?;
            let mut bad = 0usize;
            let all = enumerate_even(2 * plan.n, plan.max_part.min(4))?;
            for l in &all {
                if eval.littlewood_term(l)? != eval.classical_term(l)? {
                    bad += 1;
                }
            }
            Ok(SubCheck::flag(
                "termwise agreement with the refined identity at s = 0",
                bad == 0,
                format!("{bad} of {} signatures differ", all.len()),
            ))
        })();
        match check {
            Ok(c) => report.push(c),
            Err(e) => report.push(SubCheck::flag("termwise agreement with the refined identity at s = 0", false, e.to_string())),
        }
        let runtime = report.runtime_ms;
        report.finish(started);
        report.runtime_ms += runtime;
    }
    report
}

/// Unrefined identity; `gamma` is set to 1 whatever `params` carries.
pub fn check_unrefined(params: &ParamSet, plan: &TruncationPlan) -> Report {
    let p = params.with_gamma(Rational::one());
    let mut report = truncated_report("unrefined", &p, plan, || {
        let eval = TermEvaluator::new(&p, plan.max_part)?;
        Ok((move |l: &Signature| eval.unrefined_term(l), || unrefined_rhs(&p)))
    });
    if report.verdict != crate::Verdict::Error {
        let started = Instant::now();
        let runtime = report.runtime_ms;
        match (unrefined_rhs(&p), classical_rhs(&p), littlewood_rhs(&p)) {
            (Ok(unref), Ok(class), Ok(lw)) => {
                report.push(SubCheck::equality("unrefined side = classical side at gamma = 1", &unref, &class));
                let scale: Rational = p.u.iter().map(|u| 1 - p.s0() * u).product();
                report.push(SubCheck::equality("refined side at gamma = 1 = prod(1 - s_0 u_j) * unrefined side", &lw, &(scale * unref)));
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                report.push(SubCheck::flag("right sides at gamma = 1", false, e.to_string()));
            }
        }
        report.finish(started);
        report.runtime_ms += runtime;
    }
    report
}

/// The substitution `s₀ → γs₀` between the two conventions, per signature:
/// `c_λ F^α_λ · ∏_j(1−s₀u_j)` equals the refined-identity term at `γs₀`.
pub fn check_convention_audit(params: &ParamSet, n: usize, max_part: usize) -> Report {
    let started = Instant::now();
    let mut report = Report::new("convention-audit");
    report.params = params.echo();
    report.params.insert("max_part".into(), max_part.to_string());
    let run = || -> Result<Vec<SubCheck>> {
        if params.u.len() != 2 * n {
            return Err(Error::LengthMismatch(format!("need {} variables", 2 * n)));
        }
        let lattice = TermEvaluator::new(params, max_part)?.with_refined(max_part)?;
        let identity = TermEvaluator::new(&refined_params(params), max_part)?;
        let scale: Rational = params.u.iter().map(|u| 1 - params.s0() * u).product();
        enumerate_even(2 * n, max_part)?
            .iter()
            .map(|l| {
                let a = lattice.partition_term(l)? * &scale;
                let b = identity.littlewood_term(l)?;
                Ok(SubCheck::equality(format!("lambda = {l}"), &a, &b))
            })
            .collect()
    };
    match run() {
        Ok(checks) => checks.into_iter().for_each(|c| report.push(c)),
        Err(e) => {
            let mut r = Report::error("convention-audit", &e);
            r.params = report.params;
            r.finish(started);
            return r;
        }
    }
    report.finish(started);
    report
}

/// Same parameters with every `s_x` set to zero.
pub fn classical_params(params: &ParamSet) -> ParamSet {
    params.with_s(InhomogeneitySequence::zero())
}
