//! The Pfaffian-side polynomial
//!
//! `Z_{2n} = ∏_{i<j} (1−u_iu_j)(1−tu_iu_j)/(u_i−u_j) · Pf[ Z₂(u_i,u_j)(u_i−u_j) / ((1−u_iu_j)(1−tu_iu_j)) ]`
//!
//! in the lattice convention, its limits at singular points, and the exact
//! check of its five characterizing properties.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::exactmath::{interpolate, pfaffian, q, Poly, Rational, SkewMatrix};
use crate::report::{Report, SubCheck};
use crate::vertexmodel::ParamSet;

/// `Z₂(u_i, u_j) = (1−t)(1−γs₀u_i)(1−γs₀u_j) + (1−γ)(t−γs₀²)(1−u_iu_j)`.
pub fn z2(params: &ParamSet, ui: &Rational, uj: &Rational) -> Rational {
    let (t, g, s0) = (&params.t, &params.gamma, params.s0());
    let gs = g * s0;
    (1 - t) * (1 - &gs * ui) * (1 - &gs * uj) + (1 - g) * (t - &gs * s0) * (1 - ui * uj)
}

/// Deliberate corruption of the Pfaffian side, for negative controls.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZMutation {
    /// Flip the sign of matrix entry `(i, j)`, `i < j`.
    pub negate_entry: Option<(usize, usize)>,
    /// Added to every `Z₂` entry numerator.
    pub z2_shift: Option<Rational>,
}

impl ZMutation {
    pub fn is_identity(&self) -> bool {
        self.negate_entry.is_none() && self.z2_shift.is_none()
    }
}

/// `∏_{i<j} pre(i,j)/(u_i−u_j) · Pf[(u_i−u_j) num(u_i,u_j) / ((1−u_iu_j)(1−tu_iu_j))]`
/// with `pre = (1−tu_iu_j)`, times `(1−u_iu_j)` when `with_unit_factor`.
pub fn pfaffian_expression<F>(
    u: &[Rational],
    t: &Rational,
    numerator: F,
    with_unit_factor: bool,
    mutation: &ZMutation,
) -> Result<Rational>
where
    F: Fn(&Rational, &Rational) -> Rational,
{
    let n = u.len();
    let mut prefactor = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            let diff = &u[i] - &u[j];
            if diff.is_zero() {
                return Err(Error::CoincidentVariables(i + 1, j + 1));
            }
            let uu = &u[i] * &u[j];
            let mut pre = 1 - t * &uu;
            if with_unit_factor {
                pre *= 1 - &uu;
            }
            prefactor *= pre / diff;
        }
    }
    let matrix = SkewMatrix::from_upper(n, |i, j| {
        let uu = &u[i] * &u[j];
        let d1 = 1 - &uu;
        let d2 = 1 - t * &uu;
        if d1.is_zero() {
            return Err(Error::Pole(format!("1 - u_{} u_{}", i + 1, j + 1)));
        }
        if d2.is_zero() {
            return Err(Error::Pole(format!("1 - t u_{} u_{}", i + 1, j + 1)));
        }
        let mut num = numerator(&u[i], &u[j]);
        if let Some(shift) = &mutation.z2_shift {
            num += shift;
        }
        let mut entry = (&u[i] - &u[j]) * num / (d1 * d2);
        if mutation.negate_entry == Some((i, j)) {
            entry = -entry;
        }
        Ok(entry)
    })?;
    Ok(prefactor * pfaffian(&matrix))
}

/// `Z_{2n}` at `params.u`, which must be a nonsingular point.
pub fn z2n_pfaffian_side(params: &ParamSet) -> Result<Rational> {
    z2n_at_point(params, &params.u, &ZMutation::default())
}

pub fn z2n_at_point(params: &ParamSet, u: &[Rational], mutation: &ZMutation) -> Result<Rational> {
    if !u.len().is_multiple_of(2) {
        return Err(Error::OddPartCount(u.len()));
    }
    pfaffian_expression(u, &params.t, |a, b| z2(params, a, b), true, mutation)
}

fn is_singular(e: &Error) -> bool {
    matches!(e, Error::Pole(_) | Error::CoincidentVariables(..))
}

/// Sample abscissae `start, start + step, …`, skipping points where `f` hits
/// a pole, until `count` values are collected.
fn sample<F>(count: usize, start: &Rational, step: &Rational, mut f: F) -> Result<Vec<(Rational, Rational)>>
where
    F: FnMut(&Rational) -> Result<Rational>,
{
    let cap = 8 * count + 64;
    let mut out = Vec::with_capacity(count);
    let mut x = start.clone();
    for _ in 0..cap {
        match f(&x) {
            Ok(y) => out.push((x.clone(), y)),
            Err(e) if is_singular(&e) => {}
            Err(e) => return Err(e),
        }
        if out.len() == count {
            return Ok(out);
        }
        x += step;
    }
    Err(Error::SamplingExhausted(cap))
}

/// `Z_{2n}` at any point, including the removable singularities of the
/// Pfaffian expression (coincident variables, `u_iu_j = 1`, `tu_iu_j = 1`).
///
/// At a singular point the value is recovered from the restriction to the
/// line `u₀ + h·d`, a polynomial in `h` of degree at most `2n(2n−1)`,
/// interpolated from one more sample than the degree needs and checked.
pub fn z2n_value(params: &ParamSet, u0: &[Rational], mutation: &ZMutation) -> Result<Rational> {
    match z2n_at_point(params, u0, mutation) {
        Err(e) if is_singular(&e) => {}
        other => return other,
    }
    let k = u0.len();
    let degree = k * (k - 1);
    let direction: Vec<Rational> = (0..k).map(|i| q((i * i + 2 * i + 3) as i64, 5)).collect();
    let points = sample(degree + 2, &q(1, 97), &q(1, 89), |h| {
        let u: Vec<Rational> = u0.iter().zip(&direction).map(|(a, d)| a + h * d).collect();
        z2n_at_point(params, &u, mutation)
    })?;
    let poly = interpolate(&points)?;
    if let Some(found) = poly.degree().filter(|&d| d > degree) {
        return Err(Error::DegreeExceeded { found, bound: degree });
    }
    Ok(poly.eval(&Rational::zero()))
}

/// `Z_{2n}` as a polynomial in the last variable, from `2n + 2` samples.
pub fn z2n_in_last_variable(params: &ParamSet, u: &[Rational], mutation: &ZMutation) -> Result<Poly> {
    let k = u.len();
    let mut point = u.to_vec();
    let points = sample(k + 2, &q(3, 17), &q(2, 13), |x| {
        point[k - 1] = x.clone();
        z2n_at_point(params, &point, mutation)
    })?;
    interpolate(&points)
}

/// The point `(t, 1/t², t, 1/t², …)` with `2n` entries.
pub fn frozen_pair_point(t: &Rational, n: usize) -> Vec<Rational> {
    (0..n).flat_map(|_| [t.clone(), t.pow(-2)]).collect()
}

/// The value at `(t, 1/t², …)` as printed with the properties:
/// `γⁿ(t−1)^{n²}t^{−2n}(−(t−1/t)²)^{n(n−1)/2}(1−s₀t^{−2})ⁿ(1−s₀t)ⁿ`.
pub fn property4_stated(params: &ParamSet, n: usize) -> Rational {
    let (t, g, s0) = (&params.t, &params.gamma, params.s0());
    let n_i = n as i32;
    let tt = t - t.pow(-1);
    let pairs = (n * (n - 1) / 2) as i32;
    g.pow(n_i)
        * (t - 1).pow(n_i * n_i)
        * t.pow(-2 * n_i)
        * (-(&tt * &tt)).pow(pairs)
        * (1 - s0 * t.pow(-2)).pow(n_i)
        * (1 - s0 * t).pow(n_i)
}

/// The exact value at `(t, 1/t², …)`:
/// `(−1)ⁿγⁿ(t−1)^{n²}(−(t−1/t)²(1+t^{−2}))^{n(n−1)/2}(1−s₀t^{−2})ⁿ(1−s₀t)ⁿ`.
/// It agrees with `Z₂(t, 1/t²)` at `n = 1`; the printed form does not.
pub fn property4_corrected(params: &ParamSet, n: usize) -> Rational {
    let (t, g, s0) = (&params.t, &params.gamma, params.s0());
    let n_i = n as i32;
    let tt = t - t.pow(-1);
    let pairs = (n * (n - 1) / 2) as i32;
    Rational::from_integer(-1).pow(n_i)
        * g.pow(n_i)
        * (t - 1).pow(n_i * n_i)
        * (-(&tt * &tt) * (1 + t.pow(-2))).pow(pairs)
        * (1 - s0 * t.pow(-2)).pow(n_i)
        * (1 - s0 * t).pow(n_i)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Property4Form {
    /// Compare against the closed form exactly as printed.
    Stated,
    /// Compare against the form consistent with `Z₂(t, 1/t²)`.
    #[default]
    Corrected,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZCheckOptions {
    pub property4: Property4Form,
    pub mutation: ZMutation,
}

/// Symmetry, degree, recursion, the frozen-pair value and the `n = 1` form
/// of `Z_{2n}` at `params.u` (which must hold `2n` generic values).
pub fn check_z_properties(params: &ParamSet, n: usize) -> Report {
    check_z_properties_with(params, n, &ZCheckOptions::default())
}

pub fn check_z_properties_with(params: &ParamSet, n: usize, options: &ZCheckOptions) -> Report {
    let started = Instant::now();
    let mut report = Report::new("z-properties");
    report.params = params.echo();
    report.params.insert("n".into(), n.to_string());
    if !options.mutation.is_identity() {
        report.params.insert("mutation".into(), format!("{:?}", options.mutation));
    }
    match z_body(params, n, options, &mut report) {
        // Z is not polynomial along a line: a failed property, not a bad point.
        Err(e @ Error::DegreeExceeded { .. }) => {
            report.push(SubCheck::flag("polynomial restriction to a line", false, e.to_string()));
        }
        Err(e) => {
            let mut r = Report::error("z-properties", &e);
        r.params = report.params;
            r.finish(started);
            return r;
        }
        Ok(()) => {}
    }
    report.finish(started);
    report
}

fn z_body(params: &ParamSet, n: usize, options: &ZCheckOptions, report: &mut Report) -> Result<()> {
    if n == 0 || params.u.len() != 2 * n {
        return Err(Error::LengthMismatch(format!("need 2n = {} spectral variables, got {}", 2 * n, params.u.len())));
    }
    params.check_pairwise_generic()?;
    let m = &options.mutation;
    let u = &params.u;
    let k = 2 * n;
    let base = z2n_at_point(params, u, m)?;

    // 1. symmetry under adjacent transpositions
    for i in 0..k - 1 {
        let mut v = u.clone();
        v.swap(i, i + 1);
        let swapped = z2n_value(params, &v, m)?;
        report.push(SubCheck::equality(format!("symmetry u{}<->u{}", i + 1, i + 2), &swapped, &base));
    }

    // 2. polynomial of degree 2n-1 in the last variable
    let poly = z2n_in_last_variable(params, u, m)?;
    let degree = poly.degree();
    report.push(SubCheck::flag(
        "degree in last variable",
        degree == Some(k - 1),
        format!("degree {degree:?} from {} samples, expected {}", k + 2, k - 1),
    ));
    report.push(SubCheck::equality("interpolant reproduces value", &poly.eval(&u[k - 1]), &base));

    // 3. recursion at u_{2n} = 1/u_{2n-1}
    let last = u[k - 2].checked_recip("u_{2n-1}")?;
    let at_inverse = poly.eval(&last);
    let (t, gs) = (&params.t, &params.gamma * params.s0());
    let mut expected = (1 - t) * (1 - &gs * &last) * (1 - &gs * &u[k - 2]);
    for uj in &u[..k - 2] {
        expected *= (1 - t * uj * &last) * (1 - t * uj * &u[k - 2]);
    }
    let smaller = if k == 2 {
        Rational::one()
    } else {
        z2n_value(params, &u[..k - 2], m)?
    };
    expected *= smaller;
    report.push(SubCheck::equality("recursion at u_2n = 1/u_2n-1", &at_inverse, &expected));

    // 4. value at (t, 1/t^2, ...)
    let frozen = z2n_value(params, &frozen_pair_point(t, n), m)?;
    let (label, closed) = match options.property4 {
        Property4Form::Stated => ("frozen-pair value (printed form)", property4_stated(params, n)),
        Property4Form::Corrected => ("frozen-pair value", property4_corrected(params, n)),
    };
    report.push(SubCheck::equality(label, &frozen, &closed));

    // 5. two-variable closed form
    let two = z2n_value(params, &u[..2], m)?;
    report.push(SubCheck::equality("n = 1 form", &two, &z2(params, &u[0], &u[1])));
    let pair = frozen_pair_point(t, 1);
    let z_frozen = z2(params, &pair[0], &pair[1]);
    let s0 = params.s0();
    let closed2 = &params.gamma * (1 - t) * (1 - s0 * t.pow(-2)) * (1 - s0 * t);
    report.push(SubCheck::equality("Z2(t, 1/t^2)", &z_frozen, &closed2));
    report.push(SubCheck::equality(
        "n = 1 form at (t, 1/t^2)",
        &z2n_value(params, &pair, m)?,
        &closed2,
    ));
    Ok(())
}
