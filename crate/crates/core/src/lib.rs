//! Exact evaluation of spin Hall–Littlewood functions and verification of
//! their refined Littlewood identity.
//!
//! `F_λ` is computed two independent ways, from its symmetrization formula
//! ([`shl`]) and as a higher spin six vertex partition function
//! ([`vertexmodel`]). The identity checks in [`identities`] compare a
//! truncated signature sum with an exact Pfaffian, or verify finite
//! statements with zero tolerance. All arithmetic behind a verdict is exact
//! ([`Rational`]).

pub mod error;
pub mod exactmath;
pub mod identities;
pub mod report;
pub mod sampling;
pub mod shl;
pub mod signatures;
pub mod vertexmodel;

pub use error::{Error, Result};
pub use exactmath::{q, Rational};
pub use identities::{TruncationMode, TruncationPlan};
pub use report::{Report, SubCheck, TracePoint, Verdict};
pub use sampling::{generate_params, ParamShape, SMode, Sampler};
pub use shl::EvalRequest;
pub use signatures::{GeneralizedState, Signature};
pub use vertexmodel::{InhomogeneitySequence, ParamSet, TableShift, WeightTables};
