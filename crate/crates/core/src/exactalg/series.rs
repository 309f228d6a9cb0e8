//! Directional Laurent expansions and the residue at u = 1.
//!
//! A rational function has Laurent expansions around 0, ∞ and 1; the three
//! directions are tied together by the residue rule
//! Res_{u=1} u⁻¹f(u) = [u⁰](f₋ − f₊), where f₋, f₊ are the expansions at
//! ∞ and 0. Both that rule and an independent partial-fraction extraction
//! are implemented; they must always agree.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use super::{rat_string, ExactError, ExpansionPoint, LaurentPoly, Rat, RatFunc, Var};

/// A truncated Laurent expansion in a local parameter s:
/// s = u at 0, s = u⁻¹ at ∞, s = (1 − u) at 1.
///
/// `coeffs` holds the coefficients of s^valuation .. s^order, so
/// `coeffs.len() == order - valuation + 1`; the leading coefficient is
/// nonzero unless the series is identically zero to this order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesWindow {
    point: ExpansionPoint,
    valuation: i64,
    order: i64,
    coeffs: Vec<Rat>,
}

impl SeriesWindow {
    pub fn point(&self) -> ExpansionPoint {
        self.point
    }

    /// Valuation in the local parameter s.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of s^e within the window.
    pub fn coeff_at(&self, e: i64) -> Rat {
        if e < self.valuation || e > self.order {
            return Rat::zero();
        }
        self.coeffs[(e - self.valuation) as usize].clone()
    }

    /// Coefficient of uᵉ; only meaningful at points 0 and ∞ where the
    /// parameter is a power of u.
    pub fn coeff_u_exp(&self, e: i64) -> Rat {
        match self.point {
            ExpansionPoint::Zero => self.coeff_at(e),
            ExpansionPoint::Infinity => self.coeff_at(-e),
            ExpansionPoint::One => panic!("the expansion at 1 is not indexed by powers of u"),
        }
    }

    /// u-exponent of the leading term (at ∞ this is −valuation).
    pub fn leading_u_exp(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        match self.point {
            ExpansionPoint::Zero => Some(self.valuation),
            ExpansionPoint::Infinity => Some(-self.valuation),
            ExpansionPoint::One => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    fn param_symbol(&self) -> &'static str {
        match self.point {
            ExpansionPoint::Zero => Var::U.symbol(),
            ExpansionPoint::Infinity => Var::U.symbol(),
            ExpansionPoint::One => Var::OneMinusU.symbol(),
        }
    }

    /// Renders like `1+u+u^2` or `-u^-1-u^-2` (exponents in u-language at ∞).
    pub fn render(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        let sym = self.param_symbol();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let se = self.valuation + i as i64;
            let e = if self.point == ExpansionPoint::Infinity {
                -se
            } else {
                se
            };
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else if neg {
                out.push('-');
            } else {
                out.push('+');
            }
            let _ = match (e, abs.is_one()) {
                (0, _) => write!(out, "{}", rat_string(&abs)),
                (1, true) => write!(out, "{sym}"),
                (1, false) => write!(out, "{}*{sym}", rat_string(&abs)),
                (_, true) => write!(out, "{sym}^{e}"),
                (_, false) => write!(out, "{}*{sym}^{e}", rat_string(&abs)),
            };
        }
        out
    }
}

impl RatFunc {
    /// Truncated Laurent expansion in the requested direction.
    pub fn expand(&self, point: ExpansionPoint, order: i64) -> SeriesWindow {
        assert!(order >= 0, "expansion order must be nonnegative");
        let local = match point {
            ExpansionPoint::Zero => self.clone(),
            ExpansionPoint::Infinity => self.invert_var(),
            ExpansionPoint::One => self.compose_one_minus(),
        };
        let (valuation, coeffs) = series_at_zero(&local, order);
        SeriesWindow {
            point,
            valuation,
            order,
            coeffs,
        }
    }

    /// Exact finite Laurent polynomial in (1 − u) representing this function.
    ///
    /// Defined when the reduced denominator is a power of (u − 1) and the
    /// numerator has no pole at 0; any other pole (including u⁻¹-type
    /// monomial content, whose (1−u)-series does not terminate) is rejected.
    pub fn as_one_laurent(&self) -> Result<LaurentPoly, ExactError> {
        let b = self
            .one_pole_multiplicity()
            .ok_or(ExactError::PoleElsewhere)?;
        if self.num().min_exp().unwrap_or(0) < 0 {
            return Err(ExactError::PoleElsewhere);
        }
        let composed = self.num().compose_one_minus();
        let shifted = composed.shift(-(b as i64));
        Ok(if b % 2 == 0 {
            shifted
        } else {
            shifted.scale(&-Rat::one())
        })
    }

    /// Multiplicity of the root u = 1 in the reduced denominator, provided
    /// the denominator is exactly a power of (u − 1); `None` otherwise.
    pub(crate) fn one_pole_multiplicity(&self) -> Option<u32> {
        let mut d = self.den().clone();
        let u_minus_one = LaurentPoly::x_minus(1);
        let mut b = 0u32;
        while !d.is_constant() {
            let (q, r) = d.div_rem(&u_minus_one);
            if !r.is_zero() {
                return None;
            }
            d = q;
            b += 1;
        }
        // Canonical denominators are monic, so the leftover constant is 1.
        Some(b)
    }
}

/// Power-series data (valuation and coefficients up to `order`) of a
/// canonical rational function at 0. Identically-zero truncations come back
/// with valuation 0 and an all-zero coefficient list.
fn series_at_zero(f: &RatFunc, order: i64) -> (i64, Vec<Rat>) {
    let zero_window = || (0, vec![Rat::zero(); (order + 1) as usize]);
    if f.is_zero() {
        return zero_window();
    }
    let a = f.num().min_exp().unwrap_or(0);
    if a > order {
        return zero_window();
    }
    let n = f.num().shift(-a);
    let d = f.den();
    let d0 = d.coeff(0);
    debug_assert!(
        !d0.is_zero(),
        "canonical denominators have nonzero constant term"
    );
    let len = (order - a + 1) as usize;
    let mut c: Vec<Rat> = Vec::with_capacity(len);
    for k in 0..len as i64 {
        let mut acc = n.coeff(k);
        for j in 1..=k.min(d.degree()) {
            let dj = d.coeff(j);
            if !dj.is_zero() {
                acc -= &dj * &c[(k - j) as usize];
            }
        }
        c.push(acc / &d0);
    }
    (a, c)
}

/// Residue at u = 1 of u⁻¹·f(u)·du via the rule [u⁰](f₋ − f₊).
///
/// Requires all poles of f to lie in {0, 1, ∞}. Always agrees with
/// [`residue_at_one_partial_fractions`].
pub fn residue_at_one(f: &RatFunc) -> Result<Rat, ExactError> {
    if f.one_pole_multiplicity().is_none() {
        return Err(ExactError::PoleElsewhere);
    }
    let f_minus = f.expand(ExpansionPoint::Infinity, 0).coeff_u_exp(0);
    let f_plus = f.expand(ExpansionPoint::Zero, 0).coeff_u_exp(0);
    let r = f_minus - f_plus;
    debug_assert_eq!(Ok(&r), residue_at_one_partial_fractions(f).as_ref());
    Ok(r)
}

/// Residue at u = 1 of u⁻¹·f(u)·du by partial-fraction coefficient
/// extraction: with den(f) = (u−1)^b, the residue is the (b−1)-st Taylor
/// coefficient of u⁻¹·num(f) at u = 1.
pub fn residue_at_one_partial_fractions(f: &RatFunc) -> Result<Rat, ExactError> {
    let b = f.one_pole_multiplicity().ok_or(ExactError::PoleElsewhere)?;
    if b == 0 {
        return Ok(Rat::zero());
    }
    let mut h = f.num().shift(-1);
    let mut factorial = Rat::one();
    for k in 1..b {
        h = h.derivative();
        factorial *= super::rat_int(k as i64);
    }
    let value = h
        .eval(&Rat::one())
        .expect("u = 1 is never a pole of a Laurent polynomial");
    Ok(value / factorial)
}
