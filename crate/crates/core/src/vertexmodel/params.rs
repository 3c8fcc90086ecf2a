use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{q, Rational};

/// Column inhomogeneities `s_x`: an explicit prefix `s_0 .. s_{L-1}` and a
/// tail value used for every `x >= L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InhomogeneitySequence {
    pub prefix: Vec<Rational>,
    pub tail: Rational,
}

impl InhomogeneitySequence {
    pub fn new(prefix: Vec<Rational>, tail: Rational) -> Self {
        InhomogeneitySequence { prefix, tail }
    }

    pub fn constant(value: Rational) -> Self {
        InhomogeneitySequence {
            prefix: Vec::new(),
            tail: value,
        }
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn at(&self, x: usize) -> &Rational {
        self.prefix.get(x).unwrap_or(&self.tail)
    }

    /// Every value the sequence takes: the prefix followed by the tail.
    pub fn values(&self) -> impl Iterator<Item = &Rational> {
        self.prefix.iter().chain(std::iter::once(&self.tail))
    }

    pub fn is_identically_zero(&self) -> bool {
        self.values().all(Rational::is_zero)
    }

    /// Same sequence with `s_0` replaced.
    pub fn with_s0(&self, s0: Rational) -> Self {
        let mut prefix = self.prefix.clone();
        if prefix.is_empty() {
            prefix.push(s0);
        } else {
            prefix[0] = s0;
        }
        InhomogeneitySequence {
            prefix,
            tail: self.tail.clone(),
        }
    }

    pub fn s0(&self) -> &Rational {
        self.at(0)
    }
}

/// Model parameters: quantum parameter `t`, refinement `gamma = t^alpha`,
/// inhomogeneities, spectral variables, and the admissibility margin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSet {
    pub t: Rational,
    pub gamma: Rational,
    pub s: InhomogeneitySequence,
    pub u: Vec<Rational>,
    pub epsilon: Rational,
}

impl ParamSet {
    /// Validates `t ∉ {0, 1, -1}` and `gamma ≠ 0`; `epsilon` defaults to 1/10.
    pub fn new(t: Rational, gamma: Rational, s: InhomogeneitySequence, u: Vec<Rational>) -> Result<Self> {
        let p = ParamSet {
            t,
            gamma,
            s,
            u,
            epsilon: q(1, 10),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t.is_zero() || self.t.is_one() || self.t == Rational::from_integer(-1) {
            return Err(Error::InvalidParams(format!("t = {} must avoid 0 and ±1", self.t)));
        }
        if self.gamma.is_zero() {
            return Err(Error::InvalidParams("gamma must be nonzero".into()));
        }
        if self.epsilon.is_negative() || self.epsilon.is_zero() {
            return Err(Error::InvalidParams("epsilon must be positive".into()));
        }
        Ok(())
    }

    pub fn with_u(&self, u: Vec<Rational>) -> Self {
        ParamSet { u, ..self.clone() }
    }

    pub fn with_gamma(&self, gamma: Rational) -> Self {
        ParamSet { gamma, ..self.clone() }
    }

    pub fn with_s(&self, s: InhomogeneitySequence) -> Self {
        ParamSet { s, ..self.clone() }
    }

    pub fn n_vars(&self) -> usize {
        self.u.len()
    }

    pub fn s0(&self) -> &Rational {
        self.s.s0()
    }

    fn admissibility_ratio_of(&self, i: usize, s: &Rational) -> Result<Rational> {
        let u = &self.u[i];
        let den = 1 - s * u;
        (u - s)
            .checked_div(&den, &format!("1 - s u_{} with s = {s}", i + 1))
            .map(|r| r.abs())
    }

    /// `max_{i,x} |(u_i - s_x) / (1 - s_x u_i)|` over all distinct column values.
    pub fn admissibility_ratio(&self) -> Result<Rational> {
        let mut worst = Rational::zero();
        for i in 0..self.u.len() {
            for s in self.s.values() {
                let r = self.admissibility_ratio_of(i, s)?;
                if r > worst {
                    worst = r;
                }
            }
        }
        Ok(worst)
    }

    /// Checks `|(u_i - s_x)/(1 - s_x u_i)| <= 1 - epsilon` for every `i` and `x`.
    pub fn check_admissible(&self) -> Result<()> {
        let bound = 1 - &self.epsilon;
        for i in 0..self.u.len() {
            for (x, s) in self.s.values().enumerate() {
                let r = self.admissibility_ratio_of(i, s)?;
                if r > bound {
                    let column = if x < self.s.prefix.len() {
                        x.to_string()
                    } else {
                        format!("x>={}", self.s.prefix.len())
                    };
                    return Err(Error::Inadmissible {
                        var: i + 1,
                        column,
                        ratio: r.to_string(),
                        bound: bound.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Distinct `u_i`, and `u_i u_j ≠ 1`, `t u_i u_j ≠ 1` for `i ≠ j`.
    pub fn check_pairwise_generic(&self) -> Result<()> {
        for i in 0..self.u.len() {
            for j in i + 1..self.u.len() {
                if self.u[i] == self.u[j] {
                    return Err(Error::CoincidentVariables(i + 1, j + 1));
                }
                let prod = &self.u[i] * &self.u[j];
                if prod.is_one() {
                    return Err(Error::Pole(format!("1 - u_{} u_{}", i + 1, j + 1)));
                }
                if (&self.t * &prod).is_one() {
                    return Err(Error::Pole(format!("1 - t u_{} u_{}", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    /// Exact string echo of every field, for reports.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let list = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut m = BTreeMap::new();
        m.insert("t".into(), self.t.to_string());
        m.insert("gamma".into(), self.gamma.to_string());
        m.insert("s_prefix".into(), list(&self.s.prefix));
        m.insert("s_tail".into(), self.s.tail.to_string());
        m.insert("u".into(), list(&self.u));
        m.insert("epsilon".into(), self.epsilon.to_string());
        m
    }
}
