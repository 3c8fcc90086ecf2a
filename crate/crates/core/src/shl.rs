//! Direct evaluation of `F_λ` from its symmetrization formula
//!
//! `F_λ = Σ_σ σ[ ∏_{i<j} (u_i − t u_j)/(u_i − u_j) · ∏_i (1−t)/(1−s_{λ_i} u_i) ∏_{j<λ_i} (u_i − s_j)/(1 − s_j u_i) ]`,
//!
//! its refinement `F^α`, and classical Hall–Littlewood polynomials.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::{pochhammer_t, Rational, Scalar};
use crate::signatures::Signature;
use crate::vertexmodel::ParamSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalRequest {
    pub lambda: Signature,
    pub params: ParamSet,
}

impl EvalRequest {
    pub fn new(lambda: Signature, params: ParamSet) -> Result<Self> {
        if lambda.len() != params.u.len() {
            return Err(Error::LengthMismatch(format!(
                "signature {lambda} has {} parts but {} spectral variables were given",
                lambda.len(),
                params.u.len()
            )));
        }
        Ok(EvalRequest { lambda, params })
    }
}

/// The factors of the symmetrization formula at one parameter point:
/// `pair[i][j] = (u_i − t u_j)/(u_i − u_j)` and
/// `single[i][p] = (1−t)/(1−s_p u_i) ∏_{j<p} (u_i − s_j)/(1 − s_j u_i)`.
///
/// Built once in exact arithmetic (so poles are caught) and then shared by
/// every signature with parts up to `max_part`.
#[derive(Clone, Debug)]
pub struct SymmetrizationTables<S = Rational> {
    n: usize,
    t: S,
    pair: Vec<S>,
    single: Vec<Vec<S>>,
}

impl SymmetrizationTables<Rational> {
    pub fn new(params: &ParamSet, max_part: usize) -> Result<Self> {
        let (u, t) = (&params.u, &params.t);
        let n = u.len();
        let mut pair = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let den = &u[i] - &u[j];
                if den.is_zero() {
                    return Err(Error::CoincidentVariables(i.min(j) + 1, i.max(j) + 1));
                }
                pair[i * n + j] = (&u[i] - t * &u[j]) / den;
            }
        }
        let mut single = Vec::with_capacity(n);
        for (i, ui) in u.iter().enumerate() {
            let mut row = Vec::with_capacity(max_part + 1);
            let mut passes = Rational::one();
            for p in 0..=max_part {
                let sp = params.s.at(p);
                let turn = (1 - t).checked_div(&(1 - sp * ui), &format!("1 - s_{p} u_{}", i + 1))?;
                row.push(&passes * turn);
                passes *= (ui - sp).checked_div(&(1 - sp * ui), &format!("1 - s_{p} u_{}", i + 1))?;
            }
            single.push(row);
        }
        Ok(SymmetrizationTables {
            n,
            t: t.clone(),
            pair,
            single,
        })
    }

    /// Same tables in another scalar type.
    pub fn convert<S: Scalar>(&self) -> SymmetrizationTables<S> {
        SymmetrizationTables {
            n: self.n,
            t: S::from_rational(&self.t),
            pair: self.pair.iter().map(S::from_rational).collect(),
            single: self
                .single
                .iter()
                .map(|row| row.iter().map(S::from_rational).collect())
                .collect(),
        }
    }
}

impl<S: Scalar> SymmetrizationTables<S> {
    fn pair(&self, i: usize, j: usize) -> &S {
        &self.pair[i * self.n + j]
    }

    fn check(&self, lambda: &Signature) -> Result<()> {
        if lambda.len() != self.n {
            return Err(Error::LengthMismatch(format!("{lambda} against {} variables", self.n)));
        }
        if self.single.first().is_some_and(|row| lambda.largest() >= row.len()) {
            return Err(Error::InvalidParams(format!(
                "part {} exceeds the tabulated range {}",
                lambda.largest(),
                self.single[0].len() - 1
            )));
        }
        Ok(())
    }

    fn term(&self, sigma: &[usize], parts: &[usize]) -> S {
        let mut acc = S::one();
        for i in 0..sigma.len() {
            for j in i + 1..sigma.len() {
                acc = acc * self.pair(sigma[i], sigma[j]).clone();
            }
            acc = acc * self.single[sigma[i]][parts[i]].clone();
        }
        acc
    }

    /// The formula summed over all of `S_N`, permutations in Heap's
    /// minimal-change order, split across threads by `σ(1)`.
    pub fn full_sum(&self, lambda: &Signature) -> Result<S> {
        self.check(lambda)?;
        let n = self.n;
        if n == 0 {
            return Ok(S::one());
        }
        let parts = lambda.parts();
        let total = (0..n)
            .into_par_iter()
            .map(|first| {
                let mut sigma: Vec<usize> = std::iter::once(first).chain((0..n).filter(|&k| k != first)).collect();
                let mut acc = self.term(&sigma, parts);
                // Heap's algorithm on sigma[1..]
                let m = n - 1;
                let mut c = vec![0usize; m];
                let mut i = 0;
                while i < m {
                    if c[i] < i {
                        if i % 2 == 0 {
                            sigma.swap(1, 1 + i);
                        } else {
                            sigma.swap(1 + c[i], 1 + i);
                        }
                        acc = acc + self.term(&sigma, parts);
                        c[i] += 1;
                        i = 0;
                    } else {
                        c[i] = 0;
                        i += 1;
                    }
                }
                acc
            })
            .reduce(S::zero, |a, b| a + b);
        Ok(total)
    }

    /// The same sum with each block of equal parts collapsed:
    /// `∏_r [m_r]_t! · Σ_a ∏_{a(p) > a(q)} pair(p, q) ∏_p single(p, a(p))`
    /// over the distinct assignments `a` of the parts to the variables.
    pub fn coset_sum(&self, lambda: &Signature) -> Result<S> {
        self.check(lambda)?;
        let mut assign: Vec<usize> = lambda.parts().iter().rev().copied().collect();
        let mut total = S::zero();
        loop {
            let mut term = S::one();
            for p in 0..self.n {
                for q in 0..self.n {
                    if assign[p] > assign[q] {
                        term = term * self.pair(p, q).clone();
                    }
                }
                term = term * self.single[p][assign[p]].clone();
            }
            total = total + term;
            if !next_permutation(&mut assign) {
                break;
            }
        }
        // [m]_t! = ∏_{k=1}^{m} (1 - t^k)/(1 - t)
        let one = S::one();
        let denom = one.clone() - self.t.clone();
        for m in lambda.multiplicities() {
            let mut tk = one.clone();
            for _ in 0..m {
                tk = tk * self.t.clone();
                total = total * ((one.clone() - tk.clone()) / denom.clone());
            }
        }
        Ok(total)
    }
}

/// Lexicographic successor; false (and unchanged) at the last arrangement.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `F_λ` by the full symmetrization sum.
pub fn f_symmetrization(req: &EvalRequest) -> Result<Rational> {
    SymmetrizationTables::new(&req.params, req.lambda.largest())?.full_sum(&req.lambda)
}

/// `F_λ` in any scalar backend; the factor tables are formed exactly first.
pub fn f_symmetrization_in<S: Scalar>(req: &EvalRequest) -> Result<S> {
    SymmetrizationTables::new(&req.params, req.lambda.largest())?
        .convert::<S>()
        .full_sum(&req.lambda)
}

/// `F_λ` by the block-collapsed sum; cheaper when parts repeat.
pub fn f_symmetrization_reduced(req: &EvalRequest) -> Result<Rational> {
    SymmetrizationTables::new(&req.params, req.lambda.largest())?.coset_sum(&req.lambda)
}

/// Prefactor of the refined function:
/// `(γt;t)_{m₀}/(t;t)_{m₀} · ∏_j (1−γ s₀ u_j)/(1−s₀ u_j)`.
pub fn f_alpha_prefactor(m0: usize, params: &ParamSet) -> Result<Rational> {
    let (t, g, s0) = (&params.t, &params.gamma, params.s0());
    let mut acc = pochhammer_t(&(g * t), t, m0).checked_div(&pochhammer_t(t, t, m0), "(t;t)_{m0}")?;
    for (j, u) in params.u.iter().enumerate() {
        acc *= (1 - g * s0 * u).checked_div(&(1 - s0 * u), &format!("1 - s_0 u_{}", j + 1))?;
    }
    Ok(acc)
}

/// Parameters with `s_0` replaced by `gamma s_0`, as used inside `F^α`.
pub fn refined_params(params: &ParamSet) -> ParamSet {
    params.with_s(params.s.with_s0(&params.gamma * params.s0()))
}

/// Refined `F^α_λ`: the prefactor times `F_λ` with `s_0 → γ s_0`.
pub fn f_alpha(req: &EvalRequest) -> Result<Rational> {
    let pre = f_alpha_prefactor(req.lambda.mult(0), &req.params)?;
    let inner = EvalRequest::new(req.lambda.clone(), refined_params(&req.params))?;
    Ok(pre * f_symmetrization_reduced(&inner)?)
}

/// `∏_r (t;t)_{m_r(λ)}`.
pub fn multiplicity_normalization(lambda: &Signature, t: &Rational) -> Rational {
    lambda.multiplicities().iter().map(|&m| pochhammer_t(t, t, m)).product()
}

/// Classical `P_λ(u; t)`: `F_λ` at `s ≡ 0` divided by `∏_r (t;t)_{m_r}`.
pub fn hl_polynomial(lambda: &Signature, u: &[Rational], t: &Rational) -> Result<Rational> {
    let params = ParamSet::new(
        t.clone(),
        Rational::one(),
        crate::vertexmodel::InhomogeneitySequence::zero(),
        u.to_vec(),
    )?;
    let req = EvalRequest::new(lambda.clone(), params)?;
    f_symmetrization_reduced(&req)?.checked_div(&multiplicity_normalization(lambda, t), "(t;t)_{m_r}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;
    use crate::vertexmodel::InhomogeneitySequence;

    fn sig(p: &[usize]) -> Signature {
        Signature::new(p.to_vec()).unwrap()
    }

    fn req(lambda: &[usize], s: InhomogeneitySequence, u: Vec<Rational>) -> EvalRequest {
        EvalRequest::new(sig(lambda), ParamSet::new(q(1, 3), q(2, 1), s, u).unwrap()).unwrap()
    }

    #[test]
    fn one_variable() {
        let r = req(&[0], InhomogeneitySequence::constant(q(1, 5)), vec![q(1, 2)]);
        assert_eq!(f_symmetrization(&r).unwrap(), q(20, 27));
    }

    #[test]
    fn two_zeros() {
        let (t, s0, u1, u2) = (q(1, 3), q(1, 5), q(2, 7), q(-1, 4));
        let r = req(&[0, 0], InhomogeneitySequence::constant(s0.clone()), vec![u1.clone(), u2.clone()]);
        let expected = (1 - &t) * (1 - &t) * (1 + &t) / ((1 - &s0 * &u1) * (1 - &s0 * &u2));
        assert_eq!(f_symmetrization(&r).unwrap(), expected);
        assert_eq!(f_symmetrization_reduced(&r).unwrap(), expected);
    }

    #[test]
    fn classical_two_variables() {
        let (t, u1, u2) = (q(1, 3), q(2, 7), q(-1, 4));
        let r = req(&[1, 0], InhomogeneitySequence::zero(), vec![u1.clone(), u2.clone()]);
        assert_eq!(f_symmetrization(&r).unwrap(), (1 - &t) * (1 - &t) * (u1 + u2));
    }

    #[test]
    fn coincident_variables_rejected() {
        let r = req(&[1, 0], InhomogeneitySequence::zero(), vec![q(1, 2), q(1, 2)]);
        assert_eq!(f_symmetrization(&r), Err(Error::CoincidentVariables(1, 2)));
    }

    #[test]
    fn reduced_sum_matches_full_sum() {
        let s = InhomogeneitySequence::new(vec![q(1, 5), q(-1, 3), q(2, 9)], q(1, 7));
        let u = vec![q(1, 2), q(-1, 3), q(2, 5), q(1, 6), q(-3, 7)];
        for lambda in [
            vec![0, 0, 0, 0, 0],
            vec![3, 3, 1, 0, 0],
            vec![4, 2, 2, 2, 1],
            vec![5, 4, 3, 2, 1],
            vec![2, 2, 2, 2, 2],
        ] {
            let r = req(&lambda, s.clone(), u.clone());
            assert_eq!(f_symmetrization(&r).unwrap(), f_symmetrization_reduced(&r).unwrap(), "{lambda:?}");
        }
    }

    #[test]
    fn float_backend_tracks_exact() {
        let r = req(&[3, 1, 1, 0], InhomogeneitySequence::constant(q(1, 5)), vec![q(1, 2), q(-1, 3), q(2, 5), q(1, 6)]);
        let exact = f_symmetrization(&r).unwrap().approx();
        let approx: f64 = f_symmetrization_in(&r).unwrap();
        assert!((exact - approx).abs() <= 1e-12 * exact.abs());
    }

    #[test]
    fn alpha_collapses_at_gamma_one() {
        let s = InhomogeneitySequence::new(vec![q(1, 5)], q(1, 7));
        let r = req(&[2, 0, 0], s, vec![q(1, 2), q(-1, 3), q(2, 5)]);
        let r1 = EvalRequest::new(r.lambda.clone(), r.params.with_gamma(Rational::one())).unwrap();
        assert_eq!(f_alpha(&r1).unwrap(), f_symmetrization(&r1).unwrap());
    }

    #[test]
    fn hall_littlewood_examples() {
        let t = q(1, 3);
        assert_eq!(hl_polynomial(&sig(&[0, 0, 0]), &[q(1, 2), q(1, 3), q(1, 5)], &t).unwrap(), Rational::one());
        assert_eq!(hl_polynomial(&sig(&[1]), &[q(3, 7)], &t).unwrap(), q(3, 7));
        assert_eq!(hl_polynomial(&sig(&[1, 0]), &[q(3, 7), q(1, 4)], &t).unwrap(), q(3, 7) + q(1, 4));
    }

    #[test]
    fn next_permutation_visits_multiset_arrangements() {
        let mut v = vec![0, 0, 1, 1];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
