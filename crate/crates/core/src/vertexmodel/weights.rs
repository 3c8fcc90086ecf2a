use crate::error::{Error, Result};
use crate::exactmath::{pochhammer_t, Rational};

use super::ParamSet;

/// Offsets added to the power of `t` in each weight entry. All zero for the
/// genuine model; a nonzero offset gives a deliberately corrupted table
/// for negative-control runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TableShift {
    /// `t^g` in `w(g,0;g,0)`.
    pub stay: i32,
    /// `t^g` in `w(g,1;g,1)`.
    pub pass: i32,
    /// `t^{g+1}` in `w(g,1;g+1,0)`.
    pub absorb: i32,
    /// `t^{g-1}` in `w(g,0;g-1,1)`.
    pub emit: i32,
    /// `t` in the two pass-through cross weights.
    pub cross_pass: i32,
    /// `t` in `R(1,1;1,1)`.
    pub cross_full: i32,
    /// `t` in `R(0,0;1,1)`.
    pub cross_turn_up: i32,
    /// `t` in `R(1,1;0,0)`.
    pub cross_turn_down: i32,
}

impl TableShift {
    pub fn is_identity(&self) -> bool {
        *self == TableShift::default()
    }

    /// Every single-entry mutation by `+1`, labelled.
    pub fn single_mutations() -> Vec<(&'static str, TableShift)> {
        let base = TableShift::default();
        vec![
            ("stay", TableShift { stay: 1, ..base }),
            ("pass", TableShift { pass: 1, ..base }),
            ("absorb", TableShift { absorb: 1, ..base }),
            ("emit", TableShift { emit: 1, ..base }),
            ("cross_pass", TableShift { cross_pass: 1, ..base }),
            ("cross_full", TableShift { cross_full: 1, ..base }),
            ("cross_turn_up", TableShift { cross_turn_up: 1, ..base }),
            ("cross_turn_down", TableShift { cross_turn_down: 1, ..base }),
        ]
    }
}

/// The weight tables `w`, `w*` and `R` as pure functions of their
/// arguments.
///
/// `scale` multiplies every occupancy power `t^g`; it is 1 except at the
/// refined column 0, where it is `gamma`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WeightTables {
    pub shift: TableShift,
}

fn tpow(t: &Rational, exp: i64, offset: i32) -> Rational {
    t.pow((exp + offset as i64) as i32)
}

impl WeightTables {
    pub fn new(shift: TableShift) -> Self {
        WeightTables { shift }
    }

    /// `w_{u,s}(g, j1; g2, j2)`.
    #[allow(clippy::too_many_arguments)]
    pub fn w(
        &self,
        u: &Rational,
        s: &Rational,
        t: &Rational,
        scale: &Rational,
        g: usize,
        j1: u8,
        g2: usize,
        j2: u8,
    ) -> Result<Rational> {
        let num = match (j1, j2) {
            (0, 0) if g2 == g => 1 - s * u * scale * tpow(t, g as i64, self.shift.stay),
            (1, 1) if g2 == g => u - s * scale * tpow(t, g as i64, self.shift.pass),
            (1, 0) if g2 == g + 1 => 1 - scale * tpow(t, g as i64 + 1, self.shift.absorb),
            (0, 1) if g >= 1 && g2 == g - 1 => {
                u * (1 - s * s * scale * tpow(t, g as i64 - 1, self.shift.emit))
            }
            _ => return Ok(Rational::zero()),
        };
        num.checked_div(&(1 - s * u), &format!("1 - s u with s = {s}, u = {u}"))
    }

    /// Conjugation factor of `w*`:
    /// `(s² scale;t)_{i1} (scale t;t)_{i2} / ((s² scale;t)_{i2} (scale t;t)_{i1})`.
    pub fn conjugation_ratio(
        &self,
        s: &Rational,
        t: &Rational,
        scale: &Rational,
        i1: usize,
        i2: usize,
    ) -> Result<Rational> {
        if i1 == i2 {
            return Ok(Rational::one());
        }
        let s2 = s * s * scale;
        let st = scale * t;
        let num = pochhammer_t(&s2, t, i1) * pochhammer_t(&st, t, i2);
        let den = pochhammer_t(&s2, t, i2) * pochhammer_t(&st, t, i1);
        num.checked_div(&den, &format!("(s^2;t) or (t;t) at occupancies {i1},{i2} with s = {s}"))
    }

    /// `w*_{v,s}(i1, j1; i2, j2)` from the conjugation relation with `w`.
    #[allow(clippy::too_many_arguments)]
    pub fn wstar(
        &self,
        v: &Rational,
        s: &Rational,
        t: &Rational,
        scale: &Rational,
        i1: usize,
        j1: u8,
        i2: usize,
        j2: u8,
    ) -> Result<Rational> {
        // At scale t^k = 1 the ratio has a pole that the factor carried by `w`
        // cancels; take that limit symbolically instead of returning 0.
        if let Some(limit) = self.wstar_cancelled(v, s, t, scale, i1, j1, i2, j2)? {
            return Ok(limit);
        }
        let w = self.w(v, s, t, scale, i2, j1, i1, j2)?;
        if w.is_zero() {
            return Ok(w);
        }
        Ok(self.conjugation_ratio(s, t, scale, i1, i2)? * w)
    }

    /// The removable 0/0 case of [`Self::wstar`]: adjacent occupancies where the
    /// single-factor ratio's denominator vanishes and, on an unshifted table,
    /// equals the numerator factor of `w`.
    #[allow(clippy::too_many_arguments)]
    fn wstar_cancelled(
        &self,
        v: &Rational,
        s: &Rational,
        t: &Rational,
        scale: &Rational,
        i1: usize,
        j1: u8,
        i2: usize,
        j2: u8,
    ) -> Result<Option<Rational>> {
        let s2 = s * s * scale;
        let num = match (j1, j2) {
            (1, 0) if i1 >= 1 && i2 + 1 == i1 && self.shift.absorb == 0 => {
                if !(1 - scale * t.pow(i1 as i32)).is_zero() {
                    return Ok(None);
                }
                1 - &s2 * t.pow(i2 as i32)
            }
            (0, 1) if i2 == i1 + 1 && self.shift.emit == 0 => {
                if !(1 - &s2 * t.pow(i1 as i32)).is_zero() {
                    return Ok(None);
                }
                v * (1 - scale * t.pow(i2 as i32))
            }
            _ => return Ok(None),
        };
        num.checked_div(&(1 - s * v), &format!("1 - s v with s = {s}, v = {v}")).map(Some)
    }

    /// `w*` from its closed-form table, independent of [`Self::wstar`].
    pub fn wstar_closed(
        v: &Rational,
        s: &Rational,
        t: &Rational,
        i1: usize,
        j1: u8,
        i2: usize,
        j2: u8,
    ) -> Result<Rational> {
        let num = match (j1, j2) {
            (0, 0) if i2 == i1 => 1 - s * v * t.pow(i1 as i32),
            (1, 1) if i2 == i1 => v - s * t.pow(i1 as i32),
            (1, 0) if i1 >= 1 && i2 == i1 - 1 => 1 - s * s * t.pow(i2 as i32),
            (0, 1) if i2 == i1 + 1 => v * (1 - t.pow(i2 as i32)),
            _ => return Ok(Rational::zero()),
        };
        num.checked_div(&(1 - s * v), &format!("1 - s v with s = {s}, v = {v}"))
    }

    /// Six-vertex cross weight `R_z(i1, j1; i2, j2)`; only the six
    /// path-conserving patterns are nonzero.
    pub fn cross(&self, z: &Rational, t: &Rational, i1: u8, j1: u8, i2: u8, j2: u8) -> Result<Rational> {
        let one_minus_z = 1 - z;
        if one_minus_z.is_zero() {
            return Err(Error::Pole("1 - z in the cross weight (z = 1)".into()));
        }
        let sh = &self.shift;
        Ok(match (i1, j1, i2, j2) {
            (0, 0, 0, 0) => Rational::one(),
            (1, 1, 1, 1) => tpow(t, 1, sh.cross_full),
            (0, 1, 0, 1) | (1, 0, 1, 0) => (1 - tpow(t, 1, sh.cross_pass) * z) / &one_minus_z,
            (0, 0, 1, 1) => (1 - tpow(t, 1, sh.cross_turn_up)) * z / &one_minus_z,
            (1, 1, 0, 0) => (1 - tpow(t, 1, sh.cross_turn_down)) / &one_minus_z,
            _ => Rational::zero(),
        })
    }
}

/// `w` at column `x` with `s = s_x`.
pub fn weight_w(params: &ParamSet, u: &Rational, x: usize, g: usize, j1: u8, g2: usize, j2: u8) -> Result<Rational> {
    WeightTables::default().w(u, params.s.at(x), &params.t, &Rational::one(), g, j1, g2, j2)
}

/// `w*` at column `x` with `s = s_x`.
pub fn weight_wstar(params: &ParamSet, v: &Rational, x: usize, g: usize, j1: u8, g2: usize, j2: u8) -> Result<Rational> {
    WeightTables::default().wstar(v, params.s.at(x), &params.t, &Rational::one(), g, j1, g2, j2)
}

/// Column-0 weight with every occupancy power `t^g` replaced by `gamma t^g`.
pub fn weight_w0gamma(params: &ParamSet, u: &Rational, g: usize, j1: u8, g2: usize, j2: u8) -> Result<Rational> {
    WeightTables::default().w(u, params.s0(), &params.t, &params.gamma, g, j1, g2, j2)
}

pub fn weight_cross(params: &ParamSet, z: &Rational, i1: u8, j1: u8, i2: u8, j2: u8) -> Result<Rational> {
    WeightTables::default().cross(z, &params.t, i1, j1, i2, j2)
}
