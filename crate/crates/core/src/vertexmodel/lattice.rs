//! `F_λ` as the partition function of up-right paths: one row per spectral
//! variable, each adding one path, summed over interlacing chains
//! `∅ ≺ ν¹ ≺ … ≺ ν^N = λ`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::signatures::Signature;

use super::row::{row_weight_with, Column0};
use super::{ParamSet, WeightTables};

/// Lattice evaluator with a chain memo keyed by the intermediate signature
/// (its length is the row index).
pub struct LatticeEvaluator<'a> {
    params: &'a ParamSet,
    tables: WeightTables,
    column0: Column0,
    memo: HashMap<Signature, Rational>,
}

impl<'a> LatticeEvaluator<'a> {
    pub fn new(params: &'a ParamSet, tables: WeightTables, column0: Column0) -> Self {
        LatticeEvaluator {
            params,
            tables,
            column0,
            memo: HashMap::new(),
        }
    }

    /// Sum over chains ending at `nu`, using rows `u_1 .. u_{len(nu)}`.
    pub fn evaluate(&mut self, nu: &Signature) -> Result<Rational> {
        if nu.len() > self.params.u.len() {
            return Err(Error::LengthMismatch(format!(
                "signature {nu} has {} parts but only {} spectral variables",
                nu.len(),
                self.params.u.len()
            )));
        }
        if nu.is_empty() {
            return Ok(Rational::one());
        }
        if let Some(v) = self.memo.get(nu) {
            return Ok(v.clone());
        }
        let u = self.params.u[nu.len() - 1].clone();
        let mut acc = Rational::zero();
        for mu in nu.predecessors() {
            let w = row_weight_with(&self.tables, self.column0, self.params, &u, &mu, nu)?;
            if w.is_zero() {
                continue;
            }
            acc += self.evaluate(&mu)? * w;
        }
        self.memo.insert(nu.clone(), acc.clone());
        Ok(acc)
    }
}

fn check_length(lambda: &Signature, params: &ParamSet) -> Result<()> {
    if lambda.len() != params.u.len() {
        return Err(Error::LengthMismatch(format!(
            "signature {lambda} has {} parts, expected {}",
            lambda.len(),
            params.u.len()
        )));
    }
    Ok(())
}

/// `F_λ(u_1, …, u_N)` from the lattice, `N = len(λ)`.
pub fn lattice_f(lambda: &Signature, params: &ParamSet) -> Result<Rational> {
    lattice_f_with(lambda, params, WeightTables::default(), Column0::Plain)
}

/// Lattice partition function with the `gamma`-refined column 0; equal to
/// the refined `F^α_λ`.
pub fn lattice_f_refined(lambda: &Signature, params: &ParamSet) -> Result<Rational> {
    lattice_f_with(lambda, params, WeightTables::default(), Column0::Refined)
}

pub fn lattice_f_with(lambda: &Signature, params: &ParamSet, tables: WeightTables, column0: Column0) -> Result<Rational> {
    check_length(lambda, params)?;
    LatticeEvaluator::new(params, tables, column0).evaluate(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;
    use crate::vertexmodel::InhomogeneitySequence;

    fn sig(p: &[usize]) -> Signature {
        Signature::new(p.to_vec()).unwrap()
    }

    #[test]
    fn one_variable() {
        let p = ParamSet::new(q(1, 3), q(1, 1), InhomogeneitySequence::constant(q(1, 5)), vec![q(1, 2)]).unwrap();
        assert_eq!(lattice_f(&sig(&[0]), &p).unwrap(), q(20, 27));
    }

    #[test]
    fn two_zeros() {
        let (t, s0, u1, u2) = (q(1, 3), q(1, 5), q(1, 2), q(-1, 4));
        let p = ParamSet::new(
            t.clone(),
            q(1, 1),
            InhomogeneitySequence::constant(s0.clone()),
            vec![u1.clone(), u2.clone()],
        )
        .unwrap();
        let expected = (1 - &t) * (1 - &t) * (1 + &t) / ((1 - &s0 * &u1) * (1 - &s0 * &u2));
        assert_eq!(lattice_f(&sig(&[0, 0]), &p).unwrap(), expected);
    }

    #[test]
    fn classical_two_variables() {
        let (t, u1, u2) = (q(2, 5), q(1, 3), q(3, 7));
        let p = ParamSet::new(t.clone(), q(1, 1), InhomogeneitySequence::zero(), vec![u1.clone(), u2.clone()]).unwrap();
        let expected = (1 - &t) * (1 - &t) * (u1 + u2);
        assert_eq!(lattice_f(&sig(&[1, 0]), &p).unwrap(), expected);
    }

    #[test]
    fn length_must_match() {
        let p = ParamSet::new(q(1, 3), q(1, 1), InhomogeneitySequence::zero(), vec![q(1, 2)]).unwrap();
        assert!(matches!(lattice_f(&sig(&[1, 0]), &p), Err(Error::LengthMismatch(_))));
    }
}
