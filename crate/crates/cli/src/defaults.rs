//! Suite defaults. They mirror the acceptance criteria, so `shl verify all`
//! with no flags reruns the acceptance regime at one seed.

use shl_core::sampling::{ParamShape, SMode};
use shl_core::{q, Rational, TruncationPlan};

use crate::args::Suite;

pub const SEED: u64 = 1;

/// Length of the random `s` prefix for suites that do not need convergence.
pub const S_PREFIX: usize = 6;

pub const YBE_CUTOFF: usize = 6;

/// Largest part for the lattice comparison and the convention audit.
pub const SMALL_MAX_PART: usize = 4;

pub fn truncation(n: usize) -> TruncationPlan {
    if n <= 2 {
        TruncationPlan::fixed(n, 16, q(1, 10_000_000_000))
    } else {
        TruncationPlan::fixed(n, 10, q(1, 1_000_000))
    }
}

/// Admissibility ratio cap for seeded identity runs. The tail of the sum
/// shrinks by about its square per unit of `M`.
pub fn max_ratio(n: usize) -> Rational {
    if n <= 2 {
        q(7, 20)
    } else {
        q(1, 2)
    }
}

pub fn n(suite: Suite) -> usize {
    match suite {
        Suite::Frozen => 2,
        _ => 1,
    }
}

pub fn mu() -> shl_core::Signature {
    shl_core::Signature::new(vec![3, 2, 2]).expect("decreasing")
}

/// Shape of a seeded parameter point for `suite` with `n` (or, for the
/// lattice, `vars`) variables.
pub fn shape(suite: Suite, n: usize, vars: usize) -> ParamShape {
    match suite {
        Suite::Littlewood | Suite::Pfp | Suite::EvalPf => {
            ParamShape::new(2 * n, SMode::Constant).with_max_ratio(max_ratio(n))
        }
        Suite::Class => ParamShape::new(2 * n, SMode::Zero).with_max_ratio(max_ratio(n)),
        Suite::Unrefined => ParamShape::new(2 * n, SMode::Constant)
            .with_max_ratio(max_ratio(n))
            .with_gamma(Rational::one()),
        Suite::ZProperties => ParamShape::new(2 * n, SMode::Constant).unrestricted(),
        Suite::Frozen => ParamShape::new(0, SMode::Constant).unrestricted(),
        Suite::Ybe => ParamShape::new(2, SMode::Prefix(S_PREFIX)),
        Suite::LatticeVsSym => ParamShape::new(3, SMode::Prefix(S_PREFIX)),
        Suite::LemmaPlus => ParamShape::new(1, SMode::Prefix(S_PREFIX)),
        Suite::EvalF => ParamShape::new(vars, SMode::Prefix(S_PREFIX)).unrestricted(),
        Suite::All => unreachable!("verify all dispatches per suite"),
    }
}
