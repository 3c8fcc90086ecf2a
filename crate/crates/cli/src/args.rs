//! `shl <verb> <suite> [flags]` parsed into a validated [`RunConfig`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use shl_core::vertexmodel::{InhomogeneitySequence, ParamSet};
use shl_core::{Rational, Signature, TruncationMode, TruncationPlan};

#[derive(Debug, Parser)]
#[command(name = "shl", version, about = "Exact checks of spin Hall-Littlewood identities")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Run a verification suite.
    Verify {
        suite: VerifySuite,
        #[command(flatten)]
        flags: Flags,
    },
    /// Evaluate one quantity exactly.
    Eval {
        target: EvalTarget,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifySuite {
    Littlewood,
    Class,
    Unrefined,
    Pfp,
    ZProperties,
    Frozen,
    Ybe,
    LatticeVsSym,
    LemmaPlus,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalTarget {
    /// `F_λ(u)` from the symmetrization formula.
    F,
    /// The Pfaffian side of the refined identity at `u`.
    Pf,
}

#[derive(Debug, Args)]
struct Flags {
    /// Half the number of spectral variables.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    t: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    gamma: Option<Rational>,
    /// One value for every column, or a comma-separated prefix `s_0,s_1,…`.
    #[arg(long, value_parser = rational_list, allow_hyphen_values = true)]
    s: Option<RationalList>,
    /// Value of `s_x` beyond the prefix (defaults to its last entry).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    s_tail: Option<Rational>,
    /// Comma-separated spectral variables.
    #[arg(long, value_parser = rational_list, allow_hyphen_values = true)]
    u: Option<RationalList>,
    #[arg(long, value_parser = rational)]
    epsilon: Option<Rational>,
    #[arg(long)]
    max_part: Option<usize>,
    #[arg(long, value_parser = rational)]
    tol: Option<Rational>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest vertical occupancy for the Yang-Baxter check.
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long, value_parser = signature)]
    mu: Option<Signature>,
    #[arg(long, value_parser = signature)]
    lambda: Option<Signature>,
    /// Check the literal frozen-pair closed forms instead of the corrected ones
    /// (z-properties and frozen only).
    #[arg(long)]
    printed: bool,
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Fixed,
    Adaptive,
}

fn rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: shl_core::Error| e.to_string())
}

/// A comma-separated list; clap would otherwise read `Vec` as repeated flags.
#[derive(Clone, Debug)]
struct RationalList(Vec<Rational>);

fn rational_list(s: &str) -> Result<RationalList, String> {
    s.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(rational)
        .collect::<Result<_, _>>()
        .map(RationalList)
}

fn signature(s: &str) -> Result<Signature, String> {
    s.parse().map_err(|e: shl_core::Error| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Littlewood,
    Class,
    Unrefined,
    Pfp,
    ZProperties,
    Frozen,
    Ybe,
    LatticeVsSym,
    LemmaPlus,
    All,
    EvalF,
    EvalPf,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Littlewood => "littlewood",
            Suite::Class => "class",
            Suite::Unrefined => "unrefined",
            Suite::Pfp => "pfp",
            Suite::ZProperties => "z-properties",
            Suite::Frozen => "frozen",
            Suite::Ybe => "ybe",
            Suite::LatticeVsSym => "lattice-vs-sym",
            Suite::LemmaPlus => "lemma-plus",
            Suite::All => "all",
            Suite::EvalF => "eval-f",
            Suite::EvalPf => "eval-pf",
        }
    }

    /// Suites whose variables come in `2n` pairs.
    fn needs_even_vars(self) -> bool {
        matches!(
            self,
            Suite::Littlewood | Suite::Class | Suite::Unrefined | Suite::Pfp | Suite::ZProperties | Suite::EvalPf
        )
    }

    fn needs_u(self) -> bool {
        !matches!(self, Suite::Frozen | Suite::All)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamSource {
    Explicit(Box<ParamSet>),
    Seed(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Output {
    Stdout,
    File(PathBuf),
}

/// Everything a run needs. Unset optional fields fall back to the
/// acceptance defaults for the suite (see [`crate::defaults`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub suite: Suite,
    pub params: ParamSource,
    pub n: Option<usize>,
    pub max_part: Option<usize>,
    pub tolerance: Option<Rational>,
    pub mode: TruncationMode,
    pub epsilon: Option<Rational>,
    pub cutoff: Option<usize>,
    pub mu: Option<Signature>,
    pub lambda: Option<Signature>,
    pub printed: bool,
    pub output: Output,
}

impl RunConfig {
    /// The truncation plan for identity suites, with defaults filled in.
    pub fn plan(&self, n: usize) -> TruncationPlan {
        let d = crate::defaults::truncation(n);
        TruncationPlan {
            max_part: self.max_part.unwrap_or(d.max_part),
            n,
            mode: self.mode,
            tolerance: self.tolerance.clone().unwrap_or(d.tolerance),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Help, version, or a malformed command line; clap prints it.
    Clap(clap::Error),
    /// A well-formed command line that fails validation.
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Clap(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `argv` (program name first) into a validated [`RunConfig`].
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
    let (suite, flags) = match cli.verb {
        Verb::Verify { suite, flags } => {
            let s = match suite {
                VerifySuite::Littlewood => Suite::Littlewood,
                VerifySuite::Class => Suite::Class,
                VerifySuite::Unrefined => Suite::Unrefined,
                VerifySuite::Pfp => Suite::Pfp,
                VerifySuite::ZProperties => Suite::ZProperties,
                VerifySuite::Frozen => Suite::Frozen,
                VerifySuite::Ybe => Suite::Ybe,
                VerifySuite::LatticeVsSym => Suite::LatticeVsSym,
                VerifySuite::LemmaPlus => Suite::LemmaPlus,
                VerifySuite::All => Suite::All,
            };
            (s, flags)
        }
        Verb::Eval { target, flags } => {
            let s = match target {
                EvalTarget::F => Suite::EvalF,
                EvalTarget::Pf => Suite::EvalPf,
            };
            (s, flags)
        }
    };
    validate(suite, flags)
}

fn validate(suite: Suite, f: Flags) -> Result<RunConfig, CliError> {
    let explicit = f.t.is_some() || f.gamma.is_some() || f.s.is_some() || f.s_tail.is_some() || f.u.is_some();
    let params = match (f.seed, explicit) {
        (Some(_), true) => return Err(usage("--seed cannot be combined with --t, --gamma, --s, --s-tail or --u")),
        (Some(seed), false) => ParamSource::Seed(seed),
        (None, false) => ParamSource::Seed(crate::defaults::SEED),
        (None, true) => ParamSource::Explicit(Box::new(explicit_params(suite, &f)?)),
    };
    if suite == Suite::All && matches!(params, ParamSource::Explicit(_)) {
        return Err(usage("verify all takes --seed, not explicit parameters"));
    }

    if let ParamSource::Explicit(p) = &params {
        let k = p.u.len();
        if suite.needs_even_vars() && k % 2 != 0 {
            return Err(usage(format!("--u needs an even number of variables for {}, got {k}", suite.name())));
        }
        if suite.needs_even_vars() {
            if let Some(n) = f.n {
                if 2 * n != k {
                    return Err(usage(format!("--n {n} needs {} values in --u, got {k}", 2 * n)));
                }
            }
        }
        if suite == Suite::EvalF {
            let lambda = f.lambda.as_ref().ok_or_else(|| usage("eval f requires --lambda"))?;
            if lambda.len() != k {
                return Err(usage(format!("--lambda has {} parts but --u has {k} values", lambda.len())));
            }
        }
        if suite == Suite::Ybe && k != 2 {
            return Err(usage(format!("ybe takes --u u,v (two values), got {k}")));
        }
    }
    if suite == Suite::EvalF && f.lambda.is_none() {
        return Err(usage("eval f requires --lambda"));
    }
    if f.n == Some(0) {
        return Err(usage("--n must be positive"));
    }
    if let Some(tol) = &f.tol {
        if tol.is_negative() || tol.is_zero() {
            return Err(usage("--tol must be positive"));
        }
    }
    if let Some(eps) = &f.epsilon {
        if eps.is_negative() || eps.is_zero() {
            return Err(usage("--epsilon must be positive"));
        }
    }
    if let Some(mu) = &f.mu {
        if mu.is_empty() {
            return Err(usage("--mu must have at least one part"));
        }
    }

    Ok(RunConfig {
        suite,
        params,
        n: f.n,
        max_part: f.max_part,
        tolerance: f.tol,
        mode: match f.mode {
            Some(ModeArg::Adaptive) => TruncationMode::Adaptive,
            _ => TruncationMode::Fixed,
        },
        epsilon: f.epsilon,
        cutoff: f.cutoff,
        mu: f.mu,
        lambda: f.lambda,
        printed: f.printed,
        output: f.json_out.map(Output::File).unwrap_or(Output::Stdout),
    })
}

fn explicit_params(suite: Suite, f: &Flags) -> Result<ParamSet, CliError> {
    let t = f.t.clone().ok_or_else(|| usage("missing required flag --t"))?;
    let gamma = f.gamma.clone().unwrap_or_else(Rational::one);
    let s = match (&f.s, &f.s_tail) {
        (None, None) => InhomogeneitySequence::zero(),
        (None, Some(tail)) => InhomogeneitySequence::constant(tail.clone()),
        (Some(RationalList(v)), None) if v.len() == 1 => InhomogeneitySequence::constant(v[0].clone()),
        (Some(RationalList(v)), tail) => {
            let tail = tail.clone().unwrap_or_else(|| v.last().expect("nonempty list").clone());
            InhomogeneitySequence::new(v.clone(), tail)
        }
    };
    let u = match &f.u {
        Some(RationalList(u)) => u.clone(),
        None if suite.needs_u() => return Err(usage("missing required flag --u")),
        None => Vec::new(),
    };
    let mut p = ParamSet::new(t, gamma, s, u).map_err(|e| usage(format!("--t/--gamma: {e}")))?;
    if let Some(eps) = &f.epsilon {
        p.epsilon = eps.clone();
    }
    Ok(p)
}
