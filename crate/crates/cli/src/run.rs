//! Dispatch from a [`RunConfig`] to the library checks.

use std::time::Instant;

use shl_core::identities::{
    check_class_specialization, check_convention_audit, check_frozen_corollary_with, check_littlewood,
    check_partition_p, check_unrefined, check_z_properties_with, littlewood_rhs, FrozenEntries, Property4Form,
    ZCheckOptions,
};
use shl_core::shl::f_symmetrization;
use shl_core::vertexmodel::{check_lattice_vs_symmetrization, check_lemma_plus, check_ybe_rll, ParamSet};
use shl_core::{generate_params, EvalRequest, Report, SubCheck, Verdict};

use crate::args::{ParamSource, RunConfig, Suite};
use crate::defaults;

/// Runs the configured suite. Precondition failures come back as an
/// `error` report, never as a panic.
pub fn run_suite(cfg: &RunConfig) -> Report {
    if cfg.suite == Suite::All {
        return run_all(cfg);
    }
    let n = cfg.n.unwrap_or_else(|| match &cfg.params {
        ParamSource::Explicit(p) if p.u.len() >= 2 => p.u.len() / 2,
        _ => defaults::n(cfg.suite),
    });
    let params = match resolve_params(cfg, cfg.suite, n) {
        Ok(p) => p,
        Err(e) => {
            let mut r = Report::error(cfg.suite.name(), &e);
            if let ParamSource::Seed(seed) = cfg.params {
                r.params.insert("seed".into(), seed.to_string());
            }
            return r;
        }
    };
    let mut report = dispatch(cfg, cfg.suite, n, &params);
    if let ParamSource::Seed(seed) = cfg.params {
        report.params.insert("seed".into(), seed.to_string());
    }
    report
}

fn resolve_params(cfg: &RunConfig, suite: Suite, n: usize) -> shl_core::Result<ParamSet> {
    let mut p = match &cfg.params {
        ParamSource::Explicit(p) => (**p).clone(),
        ParamSource::Seed(seed) => {
            let vars = cfg.lambda.as_ref().map_or(0, |l| l.len());
            generate_params(*seed, &defaults::shape(suite, n, vars))?
        }
    };
    if let Some(eps) = &cfg.epsilon {
        p.epsilon = eps.clone();
    }
    Ok(p)
}

fn dispatch(cfg: &RunConfig, suite: Suite, n: usize, params: &ParamSet) -> Report {
    match suite {
        Suite::Littlewood => check_littlewood(params, &cfg.plan(n)),
        Suite::Class => check_class_specialization(params, &cfg.plan(n)),
        Suite::Unrefined => check_unrefined(params, &cfg.plan(n)),
        Suite::Pfp => {
            let mut report = check_partition_p(params, &cfg.plan(n));
            if report.verdict != Verdict::Error {
                let audit = check_convention_audit(params, n, defaults::SMALL_MAX_PART);
                absorb(&mut report, &audit, "convention audit");
            }
            report
        }
        Suite::ZProperties => {
            let options = ZCheckOptions {
                property4: if cfg.printed { Property4Form::Stated } else { Property4Form::Corrected },
                ..ZCheckOptions::default()
            };
            check_z_properties_with(params, n, &options)
        }
        Suite::Frozen => {
            let entries = if cfg.printed { FrozenEntries::Displayed } else { FrozenEntries::Corrected };
            check_frozen_corollary_with(params, n, entries)
        }
        Suite::Ybe => check_ybe_rll(params, &params.u[0], &params.u[1], cfg.cutoff.unwrap_or(defaults::YBE_CUTOFF)),
        Suite::LatticeVsSym => {
            check_lattice_vs_symmetrization(params, cfg.max_part.unwrap_or(defaults::SMALL_MAX_PART))
        }
        Suite::LemmaPlus => check_lemma_plus(cfg.mu.as_ref().unwrap_or(&defaults::mu()), params),
        Suite::EvalF => eval_f(cfg, params),
        Suite::EvalPf => eval_pf(params),
        Suite::All => unreachable!("handled by run_all"),
    }
}

fn eval_f(cfg: &RunConfig, params: &ParamSet) -> Report {
    let started = Instant::now();
    let lambda = cfg.lambda.clone().expect("validated by parse_args");
    let mut report = Report::new("eval-f");
    report.params = params.echo();
    report.params.insert("lambda".into(), lambda.to_string());
    match EvalRequest::new(lambda, params.clone()).and_then(|req| f_symmetrization(&req)) {
        Ok(v) => report.lhs = Some(v.into()),
        Err(e) => {
            report.verdict = Verdict::Error;
            report.message = Some(e.to_string());
        }
    }
    report.finish(started);
    report
}

fn eval_pf(params: &ParamSet) -> Report {
    let started = Instant::now();
    let mut report = Report::new("eval-pf");
    report.params = params.echo();
    match littlewood_rhs(params) {
        Ok(v) => report.rhs = Some(v.into()),
        Err(e) => {
            report.verdict = Verdict::Error;
            report.message = Some(e.to_string());
        }
    }
    report.finish(started);
    report
}

/// Copies `other`'s checks into `report` under `label` and merges verdicts.
fn absorb(report: &mut Report, other: &Report, label: &str) {
    for c in &other.checks {
        let mut c = c.clone();
        c.name = format!("{label}: {}", c.name);
        report.push(c);
    }
    if let Some(m) = &other.message {
        report.push(SubCheck::flag(label, other.verdict == Verdict::Pass, m.clone()));
    }
    report.verdict = report.verdict.combine(other.verdict);
    report.runtime_ms += other.runtime_ms;
}

/// One run of every suite at the configured seed, with acceptance sizes.
fn run_all(cfg: &RunConfig) -> Report {
    let started = Instant::now();
    let mut total = Report::new("all");
    let seed = match cfg.params {
        ParamSource::Seed(s) => s,
        ParamSource::Explicit(_) => defaults::SEED,
    };
    total.params.insert("seed".into(), seed.to_string());
    let runs: &[(Suite, usize)] = &[
        (Suite::LatticeVsSym, 0),
        (Suite::Ybe, 0),
        (Suite::LemmaPlus, 0),
        (Suite::ZProperties, 1),
        (Suite::ZProperties, 2),
        (Suite::ZProperties, 3),
        (Suite::Frozen, 1),
        (Suite::Frozen, 2),
        (Suite::Frozen, 3),
        (Suite::Littlewood, 1),
        (Suite::Littlewood, 2),
        (Suite::Littlewood, 3),
        (Suite::Pfp, 1),
        (Suite::Pfp, 2),
        (Suite::Class, 1),
        (Suite::Class, 2),
        (Suite::Unrefined, 1),
        (Suite::Unrefined, 2),
    ];
    for &(suite, n) in runs {
        let sub = RunConfig {
            suite,
            n: (n > 0).then_some(n),
            ..cfg.clone()
        };
        let report = run_suite(&sub);
        let label = if n > 0 { format!("{} n={n}", suite.name()) } else { suite.name().to_string() };
        let note = match (&report.message, &report.residual) {
            (Some(m), _) => format!("{:?}: {m}", report.verdict),
            (None, Some(r)) => format!("{:?}, residual {}", report.verdict, r.exact),
            (None, None) => format!("{:?}", report.verdict).to_lowercase(),
        };
        eprintln!("{label:<20} {:<11} {} ms", format!("{:?}", report.verdict).to_lowercase(), report.runtime_ms);
        total.push(SubCheck::flag(label, report.verdict == Verdict::Pass, note.to_lowercase()));
        total.verdict = total.verdict.combine(report.verdict);
    }
    total.finish(started);
    total
}
