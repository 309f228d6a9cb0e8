//! Reduced rational functions in one variable.

use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExactError, LaurentPoly, Rat};

/// A rational function in canonical reduced form.
///
/// Invariants: the denominator is a monic ordinary polynomial with nonzero
/// constant term (monomial content is moved to the numerator, which may
/// therefore have negative exponents), and gcd(num, den) = 1. The zero
/// function is 0/1. Equality of canonical forms is structural equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Builds num/den in canonical form; `den` must be nonzero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: LaurentPoly::one(),
            };
        }
        // Strip monomial content so both parts are ordinary polynomials.
        let a = num.min_exp().unwrap_or(0);
        let b = den.min_exp().unwrap_or(0);
        let mut n = num.shift(-a);
        let mut d = den.shift(-b);
        let g = n.gcd(&d);
        if !g.is_constant() {
            n = n.div_rem(&g).0;
            d = d.div_rem(&g).0;
        }
        let lc = d.leading_coeff();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Self {
            num: n.shift(a - b),
            den: d,
        }
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self {
            num: LaurentPoly::constant(c),
            den: LaurentPoly::one(),
        }
    }

    /// c·xᵉ
    pub fn monomial(exp: i64, c: Rat) -> Self {
        Self {
            num: LaurentPoly::monomial(exp, c),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact division; errors on a zero divisor.
    pub fn div(&self, rhs: &Self) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        Self::one().div(self)
    }

    /// True iff the reduced denominator has no root at the given point and
    /// the numerator has no pole there (a pole at 0 hides in negative
    /// numerator exponents).
    pub fn regular_at(&self, x: &Rat) -> bool {
        if x.is_zero() && self.num.min_exp().unwrap_or(0) < 0 {
            return false;
        }
        !self
            .den
            .eval(x)
            .expect("canonical den is a polynomial")
            .is_zero()
    }

    /// No pole at x = 1, i.e. den(1) ≠ 0 in reduced form.
    pub fn regular_at_one(&self) -> bool {
        self.regular_at(&Rat::one())
    }

    /// Evaluates at a point where the function is regular.
    pub fn eval_at(&self, x: &Rat) -> Result<Rat, ExactError> {
        if !self.regular_at(x) {
            return Err(ExactError::PoleAtPoint);
        }
        let n = self.num.eval(x).ok_or(ExactError::PoleAtPoint)?;
        let d = self.den.eval(x).expect("canonical den is a polynomial");
        Ok(n / d)
    }

    /// Substitutes x ↦ x⁻¹ (used for expansions at infinity).
    pub fn invert_var(&self) -> Self {
        Self::normalize(self.num.invert_var(), self.den.invert_var())
    }

    /// Substitutes x ↦ 1 − x (used for expansions at u = 1).
    pub fn compose_one_minus(&self) -> Self {
        let a = self.num.min_exp().unwrap_or(0);
        let n = self.num.shift(-a).compose_one_minus();
        let d = self.den.compose_one_minus();
        let omx = LaurentPoly::from_terms([(0, Rat::one()), (1, -Rat::one())]);
        if a >= 0 {
            Self::normalize(&n * &omx.pow(a as u32), d)
        } else {
            Self::normalize(n, &d * &omx.pow((-a) as u32))
        }
    }

    /// q^e with e of either sign.
    pub fn var_pow(e: i64) -> Self {
        Self::monomial(e, Rat::one())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalize(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_ratfunc, rat, rat_int};
    use super::*;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap().func
    }

    #[test]
    fn additive_inverse_is_zero() {
        let f = rf("1/(q-1)");
        let g = rf("0-1/(q-1)");
        assert!((&f + &g).is_zero());
    }

    #[test]
    fn paper_epsilon_two_combination() {
        // 1/(q(q²−1)) − 1/(2q(q−1)) = −1/(2q(q+1))
        let a = rf("1/(q*(q^2-1))");
        let b = rf("1/(2*q*(q-1))");
        assert_eq!(&a - &b, rf("-1/(2*q*(q+1))"));
    }

    #[test]
    fn gcd_cancellation() {
        assert_eq!(rf("(q^2-1)/(q-1)"), rf("q+1"));
    }

    #[test]
    fn canonical_form_moves_monomial_content() {
        let f = rf("1/(q*(q^2-1))");
        // den is monic with nonzero constant term; the q sits in the numerator.
        assert_eq!(f.den().min_exp(), Some(0));
        assert!(f.den().leading_coeff().is_one());
        assert!(!f.den().coeff(0).is_zero());
        assert_eq!(f.num(), &LaurentPoly::monomial(-1, Rat::one()));
    }

    #[test]
    fn sign_normalization() {
        // 1/(1−q) = −1/(q−1)
        let f = rf("1/(1-q)");
        assert_eq!(f, rf("-1/(q-1)"));
        assert!(f.den().leading_coeff().is_one());
    }

    #[test]
    fn regularity_and_eval() {
        let f = rf("-1/(2*q*(q+1))");
        assert!(f.regular_at_one());
        assert_eq!(f.eval_at(&rat_int(1)).unwrap(), rat(-1, 4));

        assert!(!rf("1/(q-1)").regular_at_one());
        let g = rf("(q^2-1)/(q-1)");
        assert!(g.regular_at_one());
        assert_eq!(g.eval_at(&rat_int(1)).unwrap(), rat_int(2));
    }

    #[test]
    fn pole_at_zero_detected() {
        let f = rf("1/q");
        assert!(!f.regular_at(&rat_int(0)));
        assert_eq!(f.eval_at(&rat_int(0)), Err(ExactError::PoleAtPoint));
    }

    #[test]
    fn division_by_zero_rejected() {
        assert_eq!(
            rf("1").div(&RatFunc::zero()),
            Err(ExactError::DivisionByZero)
        );
    }
}
