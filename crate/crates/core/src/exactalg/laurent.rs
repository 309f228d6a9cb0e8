//! Sparse univariate Laurent polynomials over ℚ.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt::Write as _;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{rat_string, Rat, Var};

/// A sparse Laurent polynomial Σ cₑ·xᵉ, e ∈ ℤ, over exact rationals.
///
/// No zero coefficients are stored; the empty map is the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, c)
    }

    /// c·xᵉ
    pub fn monomial(exp: i64, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// x − c
    pub fn x_minus(c: i64) -> Self {
        Self::from_terms([(1, Rat::one()), (0, super::rat_int(-c))])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(iter: I) -> Self {
        let mut terms: BTreeMap<i64, Rat> = BTreeMap::new();
        for (e, c) in iter {
            if c.is_zero() {
                continue;
            }
            match terms.entry(e) {
                alloc::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                alloc::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&0))
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Degree of a polynomial (max exponent); zero polynomial reports 0.
    pub fn degree(&self) -> i64 {
        self.max_exp().unwrap_or(0)
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.max_exp()
            .map(|e| self.coeff(e))
            .unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Multiplies by xⁿ.
    pub fn shift(&self, n: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + n, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, k)| (e, k * c)).collect(),
        }
    }

    /// Substitutes x ↦ x⁻¹.
    pub fn invert_var(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Formal derivative d/dx (Laurent exponents allowed).
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&e, _)| e != 0)
                .map(|(&e, c)| (e - 1, c * super::rat_int(e))),
        )
    }

    /// Evaluates at a point; `None` when negative exponents meet x = 0.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        if x.is_zero() && self.min_exp().is_some_and(|m| m < 0) {
            return None;
        }
        let mut acc = Rat::zero();
        for (&e, c) in &self.terms {
            acc += c * &pow_rat(x, e);
        }
        Some(acc)
    }

    /// Substitutes x ↦ 1 − s, valid only for polynomials (min exponent ≥ 0).
    pub fn compose_one_minus(&self) -> Self {
        debug_assert!(self.min_exp().unwrap_or(0) >= 0);
        // Horner from the top degree down.
        let one_minus_s = Self::from_terms([(0, Rat::one()), (1, -Rat::one())]);
        let mut acc = Self::zero();
        for e in (0..=self.degree()).rev() {
            acc = &(&acc * &one_minus_s) + &Self::constant(self.coeff(e));
        }
        acc
    }

    /// Raises to a nonnegative power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Polynomial division with remainder; both operands must have
    /// nonnegative exponents and the divisor must be nonzero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        debug_assert!(self.min_exp().unwrap_or(0) >= 0 && d.min_exp().unwrap_or(0) >= 0);
        let dd = d.degree();
        let dlc = d.leading_coeff();
        let mut q = Self::zero();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= dd {
            let c = r.leading_coeff() / &dlc;
            let e = r.degree() - dd;
            let t = Self::monomial(e, c);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        (q, r)
    }

    /// Monic gcd of two polynomials (nonnegative exponents).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lc = a.leading_coeff();
        a.scale(&(Rat::one() / lc))
    }

    /// Renders in the `parse_ratfunc` grammar with the given variable.
    pub fn render(&self, var: Var) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        // Highest exponent first reads like the paper's displays.
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push('-');
            } else {
                out.push('+');
            }
            let _ = match (e, abs.is_one()) {
                (0, _) => write!(out, "{}", rat_string(&abs)),
                (1, true) => write!(out, "{}", var.symbol()),
                (1, false) => write!(out, "{}*{}", rat_string(&abs), var.symbol()),
                (_, true) => write!(out, "{}^{}", var.symbol(), e),
                (_, false) => write!(out, "{}*{}^{}", rat_string(&abs), var.symbol(), e),
            };
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(&e, c)| (e, c.clone()))
                .chain(rhs.terms.iter().map(|(&e, c)| (e, c.clone()))),
        )
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(&e, c)| (e, c.clone()))
                .chain(rhs.terms.iter().map(|(&e, c)| (e, -c.clone()))),
        )
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms: BTreeMap<i64, Rat> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                let e = e1 + e2;
                let p = c1 * c2;
                match terms.entry(e) {
                    alloc::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(p);
                    }
                    alloc::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += p;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
        }
        LaurentPoly { terms }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

fn pow_rat(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc = Rat::one() / acc;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int};
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat_int(c))))
    }

    #[test]
    fn arithmetic_cancels() {
        let a = p(&[(-1, 1), (2, 3)]);
        let b = p(&[(-1, -1), (0, 5)]);
        let s = &a + &b;
        assert_eq!(s, p(&[(0, 5), (2, 3)]));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn mul_expands() {
        // (x - 1)(x + 1) = x² - 1
        let a = p(&[(1, 1), (0, -1)]);
        let b = p(&[(1, 1), (0, 1)]);
        assert_eq!(&a * &b, p(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn div_rem_exact_and_remainder() {
        let num = p(&[(2, 1), (0, -1)]); // x² - 1
        let den = p(&[(1, 1), (0, -1)]); // x - 1
        let (q, r) = num.div_rem(&den);
        assert_eq!(q, p(&[(1, 1), (0, 1)]));
        assert!(r.is_zero());

        let (q2, r2) = p(&[(1, 1)]).div_rem(&p(&[(1, 1), (0, 1)]));
        assert_eq!(q2, p(&[(0, 1)]));
        assert_eq!(r2, p(&[(0, -1)]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = p(&[(3, 2), (1, -2)]); // 2x(x-1)(x+1)
        let b = p(&[(2, 4), (1, -4)]); // 4x(x-1)
        let g = a.gcd(&b);
        // x(x-1) = x² - x, monic
        assert_eq!(g, p(&[(2, 1), (1, -1)]));
    }

    #[test]
    fn derivative_and_eval() {
        let f = p(&[(-1, 1), (2, 3)]); // x⁻¹ + 3x²
        assert_eq!(f.derivative(), p(&[(-2, -1), (1, 6)]));
        assert_eq!(f.eval(&rat_int(2)).unwrap(), rat(25, 2));
        assert!(f.eval(&rat_int(0)).is_none());
    }

    #[test]
    fn compose_one_minus() {
        // x² ↦ (1-s)² = 1 - 2s + s²
        let f = p(&[(2, 1)]);
        assert_eq!(f.compose_one_minus(), p(&[(0, 1), (1, -2), (2, 1)]));
    }
}
