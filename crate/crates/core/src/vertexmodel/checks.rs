//! Exact finite checks on the vertex model: the Yang–Baxter (RLL) relation
//! between `w`, `w*` and `R`, and the "+" branch of the row-operator
//! relation on the even-multiplicity vector.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::report::{Report, SubCheck, Verdict};
use crate::shl::{f_symmetrization, EvalRequest};
use crate::signatures::{c_weight, enumerate_signatures, even_closure_down, even_closure_up, GeneralizedState, Signature};

use super::lattice::LatticeEvaluator;
use super::row::{row_weight_refined, row_weight_star_refined, Column0};
use super::{ParamSet, WeightTables};

/// Both sides of the RLL relation for one boundary tuple
/// `(i1, i2, i3; j1, j2, j3)`; internal occupancies run up to `k_max`.
#[allow(clippy::too_many_arguments)]
pub fn ybe_sides(
    tables: &WeightTables,
    u: &Rational,
    v: &Rational,
    s: &Rational,
    t: &Rational,
    (i1, i2, i3): (u8, u8, usize),
    (j1, j2, j3): (u8, u8, usize),
    k_max: usize,
) -> Result<(Rational, Rational)> {
    let z = u * v;
    let one = Rational::one();
    let mut lhs = Rational::zero();
    let mut rhs = Rational::zero();
    for k1 in 0..2u8 {
        for k2 in 0..2u8 {
            let r_left = tables.cross(&z, t, i2, i1, k2, k1)?;
            let r_right = tables.cross(&z, t, k2, k1, j2, j1)?;
            for k3 in 0..=k_max {
                if !r_left.is_zero() {
                    let a = tables.wstar(v, s, t, &one, i3, k1, k3, j1)?;
                    if !a.is_zero() {
                        lhs += &r_left * a * tables.w(u, s, t, &one, k3, k2, j3, j2)?;
                    }
                }
                if !r_right.is_zero() {
                    let b = tables.w(u, s, t, &one, i3, i2, k3, k2)?;
                    if !b.is_zero() {
                        rhs += tables.wstar(v, s, t, &one, k3, i1, j3, k1)? * b * &r_right;
                    }
                }
            }
        }
    }
    Ok((lhs, rhs))
}

/// RLL relation for all `i1, i2, j1, j2 ∈ {0,1}` and `i3 ≤ cutoff`, at
/// every distinct column value `s_x` of `params`.
pub fn check_ybe_rll(params: &ParamSet, u: &Rational, v: &Rational, cutoff: usize) -> Report {
    check_ybe_rll_with(&WeightTables::default(), params, u, v, cutoff)
}

pub fn check_ybe_rll_with(tables: &WeightTables, params: &ParamSet, u: &Rational, v: &Rational, cutoff: usize) -> Report {
    let started = Instant::now();
    let mut report = Report::new("ybe");
    report.params = params.echo();
    report.params.insert("ybe_u".into(), u.to_string());
    report.params.insert("ybe_v".into(), v.to_string());
    report.params.insert("cutoff".into(), cutoff.to_string());
    if let Err(e) = ybe_body(tables, params, u, v, cutoff, &mut report) {
        let mut r = Report::error("ybe", &e);
        r.params = report.params;
        r.finish(started);
        return r;
    }
    report.finish(started);
    report
}

fn ybe_body(
    tables: &WeightTables,
    params: &ParamSet,
    u: &Rational,
    v: &Rational,
    cutoff: usize,
    report: &mut Report,
) -> Result<()> {
    if (u * v).is_one() {
        return Err(Error::Pole("u v = 1 in the cross weight".into()));
    }
    let mut values: Vec<&Rational> = Vec::new();
    for s in params.s.values() {
        if !values.contains(&s) {
            values.push(s);
        }
    }
    let mut worst = Rational::zero();
    for s in values {
        let mut tuples = 0usize;
        let mut mismatches = 0usize;
        let mut first_bad: Option<(Rational, Rational, String)> = None;
        for i1 in 0..2u8 {
            for i2 in 0..2u8 {
                for j1 in 0..2u8 {
                    for j2 in 0..2u8 {
                        for i3 in 0..=cutoff {
                            let total = (i1 + i2) as i64 + i3 as i64 - (j1 + j2) as i64;
                            if total < 0 {
                                continue;
                            }
                            let j3 = total as usize;
                            let (l, r) =
                                ybe_sides(tables, u, v, s, &params.t, (i1, i2, i3), (j1, j2, j3), cutoff + 2)?;
                            tuples += 1;
                            let diff = (&l - &r).abs();
                            if !diff.is_zero() {
                                mismatches += 1;
                                if diff > worst {
                                    worst = diff;
                                }
                                if first_bad.is_none() {
                                    first_bad = Some((l, r, format!("({i1},{i2},{i3};{j1},{j2},{j3})")));
                                }
                            }
                        }
                    }
                }
            }
        }
        let name = format!("rll s={s}");
        let check = match first_bad {
            None => SubCheck::flag(name, true, format!("{tuples} boundary tuples, residual 0")),
            Some((l, r, at)) => SubCheck::equality(name, &l, &r)
                .with_note(format!("{mismatches} of {tuples} tuples differ; first at {at}")),
        };
        report.push(check);
    }
    report.residual = Some(worst.into());
    Ok(())
}

/// Lattice partition function against the symmetrization formula for every
/// signature with `N` parts and largest part at most `max_part`, for each
/// `N = 1..=len(u)` (using `u_1..u_N`).
pub fn check_lattice_vs_symmetrization(params: &ParamSet, max_part: usize) -> Report {
    check_lattice_vs_symmetrization_with(&WeightTables::default(), params, max_part)
}

pub fn check_lattice_vs_symmetrization_with(tables: &WeightTables, params: &ParamSet, max_part: usize) -> Report {
    let started = Instant::now();
    let mut report = Report::new("lattice-vs-sym");
    report.params = params.echo();
    report.params.insert("max_part".into(), max_part.to_string());
    if !tables.shift.is_identity() {
        report.params.insert("table_shift".into(), format!("{:?}", tables.shift));
    }
    let run = |report: &mut Report| -> Result<()> {
        if params.u.is_empty() {
            return Err(Error::InvalidParams("at least one spectral variable is required".into()));
        }
        params.check_pairwise_generic()?;
        for n in 1..=params.u.len() {
            let p = params.with_u(params.u[..n].to_vec());
            let mut lattice = LatticeEvaluator::new(&p, *tables, Column0::Plain);
            let all = enumerate_signatures(n, max_part);
            let mut first_bad = None;
            let mut bad = 0usize;
            for lambda in &all {
                let a = lattice.evaluate(lambda)?;
                let b = f_symmetrization(&EvalRequest::new(lambda.clone(), p.clone())?)?;
                if a != b {
                    bad += 1;
                    first_bad.get_or_insert((lambda.clone(), a, b));
                }
            }
            let name = format!("lattice = symmetrization, N = {n}");
            report.push(match first_bad {
                None => SubCheck::flag(name, true, format!("{} signatures agree exactly", all.len())),
                Some((lambda, a, b)) => SubCheck::equality(name, &a, &b)
                    .with_note(format!("{bad} of {} signatures differ; first at {lambda}", all.len())),
            });
        }
        Ok(())
    };
    if let Err(e) = run(&mut report) {
        let mut r = Report::error("lattice-vs-sym", &e);
        r.params = report.params;
        r.finish(started);
        return r;
    }
    report.finish(started);
    report
}

/// Both sides of the "+" relation for odd-length `mu`:
/// `c(mu_+) <mu|T(u)|mu_+>` and `c(mu_-) <mu|T*(u)|mu_->`, refined column 0.
pub fn lemma_plus_sides(mu: &Signature, params: &ParamSet, u: &Rational) -> Result<Option<(Rational, Rational)>> {
    let (Some(up), Some(down)) = (even_closure_up(mu), even_closure_down(mu)) else {
        return Ok(None);
    };
    let lhs = c_weight(&GeneralizedState::from(&up), params)? * row_weight_refined(params, u, mu, &up)?;
    let rhs = c_weight(&GeneralizedState::from(&down), params)? * row_weight_star_refined(params, u, mu, &down)?;
    Ok(Some((lhs, rhs)))
}

/// Checks the "+" relation at `u = params.u[0]`. Even-length `mu` has no
/// even-multiplicity neighbours and yields an `unsupported` verdict.
pub fn check_lemma_plus(mu: &Signature, params: &ParamSet) -> Report {
    let started = Instant::now();
    let mut report = Report::new("lemma-plus");
    report.params = params.echo();
    report.params.insert("mu".into(), mu.to_string());
    let Some(u) = params.u.first() else {
        let mut r = Report::error("lemma-plus", &Error::InvalidParams("one spectral variable is required".into()));
        r.params = report.params;
        return r;
    };
    match lemma_plus_sides(mu, params, u) {
        Ok(Some((lhs, rhs))) => {
            let up = even_closure_up(mu).expect("odd length");
            let down = even_closure_down(mu).expect("odd length");
            report.params.insert("mu_plus".into(), up.to_string());
            report.params.insert("mu_minus".into(), down.to_string());
            report.push(SubCheck::equality("c(mu+) T(mu,mu+) = c(mu-) T*(mu,mu-)", &lhs, &rhs));
        }
        Ok(None) => {
            report.verdict = Verdict::Unsupported;
            report.message = Some(format!(
                "{mu} has even length; only the odd-length branch of the relation is implemented"
            ));
        }
        Err(e) => {
            let mut r = Report::error("lemma-plus", &e);
            r.params = report.params;
            r.finish(started);
            return r;
        }
    }
    report.finish(started);
    report
}
