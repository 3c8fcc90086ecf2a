//! Signatures, multiplicities, even-multiplicity enumeration, one-row
//! interlacing, and the `mu_+` / `mu_-` closures with their `c`-weights.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::vertexmodel::ParamSet;

/// Weakly decreasing sequence of nonnegative integers (zeros count as parts).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Signature {
    parts: Vec<usize>,
}

impl Signature {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts));
        }
        Ok(Signature { parts })
    }

    /// Sorts `parts` into decreasing order.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Signature { parts }
    }

    pub fn empty() -> Self {
        Signature { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, 0 for the empty signature.
    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `m_i(λ)`.
    pub fn mult(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// `[m_0, m_1, ..., m_{λ_1}]`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.largest() + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    pub fn has_even_multiplicities(&self) -> bool {
        self.multiplicities().iter().all(|m| m % 2 == 0)
    }

    /// All `μ` with `interlace_up(μ, self)`.
    pub fn predecessors(&self) -> Vec<Signature> {
        if self.parts.is_empty() {
            return Vec::new();
        }
        let k = self.parts.len() - 1;
        let mut out = vec![Vec::with_capacity(k)];
        for i in 0..k {
            let (lo, hi) = (self.parts[i + 1], self.parts[i]);
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    (lo..=hi).rev().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(|parts| Signature { parts }).collect()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", body.join(","))
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Accepts `"[6,4,4,0]"`, `"6,4,4,0"` and `"[]"`.
    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        let body = s
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .unwrap_or(s)
            .trim();
        if body.is_empty() {
            return Ok(Signature::empty());
        }
        let parts = body
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("malformed signature {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Signature::new(parts)
    }
}

/// Every signature with exactly `num_parts` parts (zeros included), all
/// multiplicities even, and largest part at most `max_part`, in
/// lexicographically decreasing order. There are `C(max_part + n, n)` of
/// them for `num_parts = 2n`.
pub fn enumerate_even(num_parts: usize, max_part: usize) -> Result<Vec<Signature>> {
    if !num_parts.is_multiple_of(2) {
        return Err(Error::OddPartCount(num_parts));
    }
    let pairs = num_parts / 2;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(num_parts);
    fn rec(pairs_left: usize, cap: usize, current: &mut Vec<usize>, out: &mut Vec<Signature>) {
        if pairs_left == 0 {
            out.push(Signature {
                parts: current.clone(),
            });
            return;
        }
        for v in (0..=cap).rev() {
            current.push(v);
            current.push(v);
            rec(pairs_left - 1, v, current, out);
            current.truncate(current.len() - 2);
        }
    }
    rec(pairs, max_part, &mut current, &mut out);
    Ok(out)
}

/// Every signature with exactly `num_parts` parts and largest part at most
/// `max_part`, in lexicographically decreasing order.
pub fn enumerate_signatures(num_parts: usize, max_part: usize) -> Vec<Signature> {
    fn rec(left: usize, cap: usize, current: &mut Vec<usize>, out: &mut Vec<Signature>) {
        if left == 0 {
            out.push(Signature {
                parts: current.clone(),
            });
            return;
        }
        for v in (0..=cap).rev() {
            current.push(v);
            rec(left - 1, v, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(num_parts, max_part, &mut Vec::with_capacity(num_parts), &mut out);
    out
}

/// `ν₁ ≥ μ₁ ≥ ν₂ ≥ μ₂ ≥ … ≥ μ_k ≥ ν_{k+1} ≥ 0`; false unless `ν` has
/// exactly one more part than `μ`.
pub fn interlace_up(mu: &Signature, nu: &Signature) -> bool {
    if nu.len() != mu.len() + 1 {
        return false;
    }
    mu.parts
        .iter()
        .enumerate()
        .all(|(k, &m)| nu.parts[k] >= m && m >= nu.parts[k + 1])
}

/// The unique even-multiplicity `ν` with `interlace_up(μ, ν)`.
///
/// Pairing forces `ν_{2i-1} = ν_{2i} = μ_{2i-1}`; a solution exists exactly
/// when `μ` has odd length.
pub fn even_closure_up(mu: &Signature) -> Option<Signature> {
    if mu.len().is_multiple_of(2) {
        return None;
    }
    let parts = mu.parts.iter().step_by(2).flat_map(|&v| [v, v]).collect();
    Some(Signature { parts })
}

/// The unique even-multiplicity `ν` with `interlace_up(ν, μ)` and all parts
/// nonnegative: `ν_{2i-1} = ν_{2i} = μ_{2i}`. `None` for even-length `μ`,
/// whose only candidates would need a negative zero-multiplicity.
pub fn even_closure_down(mu: &Signature) -> Option<Signature> {
    if mu.len().is_multiple_of(2) {
        return None;
    }
    let parts = mu.parts.iter().skip(1).step_by(2).flat_map(|&v| [v, v]).collect();
    Some(Signature { parts })
}

/// Occupation numbers with a possibly negative zero slot: `m_0 ∈ ℤ`,
/// `m_i ≥ 0` for `i ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedState {
    pub m0: i64,
    higher: BTreeMap<usize, usize>,
}

impl GeneralizedState {
    /// `higher` lists `(i, m_i)` for `i >= 1`; zero entries are dropped.
    pub fn new(m0: i64, higher: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, m) in higher {
            if i == 0 {
                return Err(Error::InvalidParams("use m0 for the zero column".into()));
            }
            if m > 0 {
                *map.entry(i).or_insert(0) += m;
            }
        }
        Ok(GeneralizedState { m0, higher: map })
    }

    pub fn mult(&self, i: usize) -> usize {
        self.higher.get(&i).copied().unwrap_or(0)
    }
}

impl From<&Signature> for GeneralizedState {
    fn from(sig: &Signature) -> Self {
        let m = sig.multiplicities();
        let higher = m
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i, c))
            .collect();
        GeneralizedState {
            m0: m[0] as i64,
            higher,
        }
    }
}

/// Coefficient `c_λ` of `λ` in the even-multiplicity vector `|e; α⟩`, with
/// both branches of the zero-column factor.
pub fn c_weight(state: &GeneralizedState, params: &ParamSet) -> Result<Rational> {
    let t = &params.t;
    let gamma = &params.gamma;
    if gamma.is_zero() {
        return Err(Error::InvalidParams("gamma must be nonzero".into()));
    }
    let mut acc = Rational::one();
    for (&i, &m) in &state.higher {
        if m % 2 != 0 {
            return Err(Error::OddMultiplicity {
                value: i,
                multiplicity: m as i64,
            });
        }
        let s2 = params.s.at(i) * params.s.at(i);
        for j in 1..=(m / 2) as i32 {
            let num = 1 - &s2 * t.pow(2 * j - 2);
            let den = 1 - t.pow(2 * j);
            acc *= num.checked_div(&den, &format!("1 - t^{} (column {i})", 2 * j))?;
        }
    }
    if state.m0 % 2 != 0 {
        return Err(Error::OddMultiplicity {
            value: 0,
            multiplicity: state.m0,
        });
    }
    let s0sq_gamma = params.s0() * params.s0() * gamma;
    let half = (state.m0 / 2) as i32;
    if half >= 0 {
        for j in 1..=half {
            let num = 1 - &s0sq_gamma * t.pow(2 * j - 2);
            let den = 1 - gamma * t.pow(2 * j);
            acc *= num.checked_div(&den, &format!("1 - gamma t^{}", 2 * j))?;
        }
    } else {
        for j in 1..=-half {
            let num = 1 - gamma * t.pow(-2 * j + 2);
            let den = 1 - &s0sq_gamma * t.pow(-2 * j);
            acc *= num.checked_div(&den, &format!("1 - s_0^2 gamma t^{}", -2 * j))?;
        }
    }
    Ok(acc)
}
