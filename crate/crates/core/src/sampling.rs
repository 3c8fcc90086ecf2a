//! Seeded generation of small rational parameter points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::{q, Rational};
use crate::signatures::Signature;
use crate::vertexmodel::{InhomogeneitySequence, ParamSet};

const RETRY_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SMode {
    /// Every `s_x = 0`.
    Zero,
    /// One random value for every column.
    Constant,
    /// Random `s_0 .. s_{L-1}` followed by a random tail.
    Prefix(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaMode {
    Random,
    Fixed(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamShape {
    pub n_vars: usize,
    /// Reject points whose admissibility ratio exceeds `1 − ε` (`ε = 1/10`).
    pub needs_admissible: bool,
    /// Optional stricter bound on the admissibility ratio.
    pub max_ratio: Option<Rational>,
    pub s_mode: SMode,
    pub gamma: GammaMode,
}

impl ParamShape {
    pub fn new(n_vars: usize, s_mode: SMode) -> Self {
        ParamShape {
            n_vars,
            needs_admissible: true,
            max_ratio: None,
            s_mode,
            gamma: GammaMode::Random,
        }
    }

    pub fn with_max_ratio(mut self, bound: Rational) -> Self {
        self.max_ratio = Some(bound);
        self
    }

    pub fn with_gamma(mut self, gamma: Rational) -> Self {
        self.gamma = GammaMode::Fixed(gamma);
        self
    }

    pub fn unrestricted(mut self) -> Self {
        self.needs_admissible = false;
        self
    }
}

/// Deterministic stream of small rationals and signatures.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Nonzero `p/q` with `2 <= q <= max_den` and `|p/q| < 1`.
    pub fn unit_interval(&mut self, max_den: i64) -> Rational {
        let den = self.rng.random_range(2..=max_den);
        let mut num = 0;
        while num == 0 {
            num = self.rng.random_range(-(den - 1)..=den - 1);
        }
        q(num, den)
    }

    /// `p/q` in `(0, 1)`.
    pub fn quantum_parameter(&mut self) -> Rational {
        let den = self.rng.random_range(2..=9);
        q(self.rng.random_range(1..den), den)
    }

    /// Nonzero `p/q` with `|p| <= 9`, `1 <= q <= 5`, excluding 1.
    pub fn refinement_parameter(&mut self) -> Rational {
        loop {
            let den = self.rng.random_range(1..=5);
            let num = self.rng.random_range(-9..=9);
            let g = q(num, den);
            if !g.is_zero() && !g.is_one() {
                return g;
            }
        }
    }

    pub fn signature(&mut self, len: usize, max_part: usize) -> Signature {
        let parts = (0..len).map(|_| self.rng.random_range(0..=max_part)).collect();
        Signature::from_unsorted(parts)
    }

    fn inhomogeneities(&mut self, mode: &SMode) -> InhomogeneitySequence {
        match mode {
            SMode::Zero => InhomogeneitySequence::zero(),
            SMode::Constant => InhomogeneitySequence::constant(self.unit_interval(12)),
            SMode::Prefix(len) => {
                let prefix = (0..*len).map(|_| self.unit_interval(12)).collect();
                InhomogeneitySequence::new(prefix, self.unit_interval(12))
            }
        }
    }

    /// One parameter point of the given shape, resampled until it is valid.
    pub fn params(&mut self, shape: &ParamShape) -> Result<ParamSet> {
        for _ in 0..RETRY_CAP {
            let t = self.quantum_parameter();
            let gamma = match &shape.gamma {
                GammaMode::Random => self.refinement_parameter(),
                GammaMode::Fixed(g) => g.clone(),
            };
            let s = self.inhomogeneities(&shape.s_mode);
            let u = (0..shape.n_vars).map(|_| self.unit_interval(12)).collect();
            let Ok(p) = ParamSet::new(t, gamma, s, u) else {
                continue;
            };
            if p.check_pairwise_generic().is_err() {
                continue;
            }
            // u_i = s_x makes every term through column x vanish, a trivial point.
            if p.u.iter().any(|u| p.s.values().any(|s| s == u)) {
                continue;
            }
            if shape.needs_admissible {
                if p.check_admissible().is_err() {
                    continue;
                }
                if let Some(bound) = &shape.max_ratio {
                    match p.admissibility_ratio() {
                        Ok(r) if &r <= bound => {}
                        _ => continue,
                    }
                }
            }
            return Ok(p);
        }
        Err(Error::SamplingExhausted(RETRY_CAP))
    }
}

/// Parameter point for `seed`; the same seed and shape always give the same point.
pub fn generate_params(seed: u64, shape: &ParamShape) -> Result<ParamSet> {
    Sampler::new(seed).params(shape)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let shape = ParamShape::new(4, SMode::Prefix(3));
        assert_eq!(generate_params(42, &shape).unwrap(), generate_params(42, &shape).unwrap());
        assert_ne!(generate_params(42, &shape).unwrap(), generate_params(43, &shape).unwrap());
    }

    #[test]
    fn admissible_with_margin() {
        let bound = q(7, 20);
        for seed in 0..20 {
            let p = generate_params(seed, &ParamShape::new(4, SMode::Constant).with_max_ratio(bound.clone())).unwrap();
            assert!(p.check_admissible().is_ok());
            assert!(p.admissibility_ratio().unwrap() <= bound);
            assert!(p.check_pairwise_generic().is_ok());
        }
    }

    #[test]
    fn zero_mode() {
        let p = generate_params(7, &ParamShape::new(2, SMode::Zero)).unwrap();
        assert!(p.s.is_identically_zero());
    }

    #[test]
    fn impossible_bound_exhausts() {
        let shape = ParamShape::new(2, SMode::Constant).with_max_ratio(Rational::zero());
        assert_eq!(generate_params(1, &shape), Err(Error::SamplingExhausted(RETRY_CAP)));
    }
}
