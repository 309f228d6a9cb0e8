//! Sparse multivariate Laurent polynomials in u₁..u_n over exact rationals:
//! constant-term extraction, the density Γ_{[n],−} = ∏_{i≠j}(1 − u_i/u_j),
//! and Λ_{−t} series of virtual sums of monomial line characters.
//!
//! The variable count is capped at [`MAX_VARS`]; the fully expanded Γ
//! density grows superexponentially and nothing here needs more.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exactalg::{rat_string, Rat};

/// Hard cap on the ambient variable count.
pub const MAX_VARS: usize = 6;

/// Errors for the multivariate layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiError {
    /// Operands live in different ambient tori.
    VarCountMismatch,
    /// The requested variable count exceeds [`MAX_VARS`].
    SizeCap,
}

impl core::fmt::Display for MultiError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MultiError::VarCountMismatch => write!(f, "variable count mismatch"),
            MultiError::SizeCap => write!(f, "variable count exceeds {MAX_VARS}"),
        }
    }
}

impl core::error::Error for MultiError {}

/// Exponent vector of a Laurent monomial, stored as a fixed-length array.
///
/// Ordering is lexicographic on the exponent vector (within a fixed
/// variable count), which is also the serialization order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Monomial {
    n: u8,
    exps: [i16; MAX_VARS],
}

impl Monomial {
    pub fn new(exps: &[i64]) -> Result<Self, MultiError> {
        if exps.len() > MAX_VARS {
            return Err(MultiError::SizeCap);
        }
        let mut a = [0i16; MAX_VARS];
        for (i, &e) in exps.iter().enumerate() {
            a[i] = i16::try_from(e).map_err(|_| MultiError::SizeCap)?;
        }
        Ok(Self {
            n: exps.len() as u8,
            exps: a,
        })
    }

    pub fn unit(nvars: usize) -> Self {
        Self {
            n: nvars as u8,
            exps: [0; MAX_VARS],
        }
    }

    /// uᵢ/uⱼ
    pub fn ratio(nvars: usize, i: usize, j: usize) -> Self {
        let mut m = Self::unit(nvars);
        m.exps[i] += 1;
        m.exps[j] -= 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.n as usize
    }

    pub fn exps(&self) -> &[i16] {
        &self.exps[..self.n as usize]
    }

    pub fn total_degree(&self) -> i64 {
        self.exps().iter().map(|&e| e as i64).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps().iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = *self;
        for i in 0..self.n as usize {
            out.exps[i] += other.exps[i];
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut out = *self;
        for e in out.exps.iter_mut() {
            *e = -*e;
        }
        out
    }

    /// Relabels variables: exponent of source variable i moves to `map[i]`.
    fn embedded(&self, nvars: usize, map: &[usize]) -> Self {
        let mut out = Self::unit(nvars);
        for (i, &e) in self.exps().iter().enumerate() {
            out.exps[map[i]] = e;
        }
        out
    }

    fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = Self::unit(self.n as usize);
        for (i, &e) in self.exps().iter().enumerate() {
            out.exps[perm[i]] = e;
        }
        out
    }
}

/// A sparse multivariate Laurent polynomial with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiLaurent {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiLaurent {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, Monomial::unit(nvars), c)
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rat) -> Self {
        debug_assert_eq!(m.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(nvars: usize, iter: I) -> Self {
        let mut out = Self::zero(nvars);
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of the all-zero exponent vector.
    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::unit(self.nvars))
    }

    /// Largest monomial in lexicographic order, with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, MultiError> {
        if self.nvars != rhs.nvars {
            return Err(MultiError::VarCountMismatch);
        }
        Ok(self + rhs)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, MultiError> {
        if self.nvars != rhs.nvars {
            return Err(MultiError::VarCountMismatch);
        }
        Ok(self - rhs)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, MultiError> {
        if self.nvars != rhs.nvars {
            return Err(MultiError::VarCountMismatch);
        }
        Ok(self * rhs)
    }

    /// True iff every monomial has total degree 0.
    pub fn is_weight_zero(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// Renames variables into a larger torus: source variable i becomes
    /// target variable `offsets[i]`. Offsets must be distinct and in range.
    pub fn block_embed(&self, nvars: usize, offsets: &[usize]) -> Result<Self, MultiError> {
        if offsets.len() != self.nvars || nvars > MAX_VARS || offsets.iter().any(|&o| o >= nvars) {
            return Err(MultiError::VarCountMismatch);
        }
        let mut seen = [false; MAX_VARS];
        for &o in offsets {
            if seen[o] {
                return Err(MultiError::VarCountMismatch);
            }
            seen[o] = true;
        }
        Ok(Self {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.embedded(nvars, offsets), c.clone()))
                .collect(),
        })
    }

    /// Applies a permutation of the variables (`perm[i]` is where i goes).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.nvars);
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.permuted(perm), c.clone()))
                .collect(),
        }
    }

    /// Invariance under the product of symmetric groups permuting variables
    /// within consecutive blocks of the given sizes.
    pub fn is_symmetric(&self, block_sizes: &[usize]) -> bool {
        debug_assert_eq!(block_sizes.iter().sum::<usize>(), self.nvars);
        // Adjacent transpositions within each block generate the group.
        let mut offset = 0;
        for &size in block_sizes {
            for k in 0..size.saturating_sub(1) {
                let mut perm: Vec<usize> = (0..self.nvars).collect();
                perm.swap(offset + k, offset + k + 1);
                if self.permuted(&perm) != *self {
                    return false;
                }
            }
            offset += size;
        }
        true
    }

    /// Renders like `2-u1*u2^-1-u1^-1*u2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
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
            let mut body = String::new();
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !body.is_empty() {
                    body.push('*');
                }
                if e == 1 {
                    let _ = write!(body, "u{}", v + 1);
                } else {
                    let _ = write!(body, "u{}^{}", v + 1, e);
                }
            }
            if body.is_empty() {
                let _ = write!(out, "{}", rat_string(&abs));
            } else if abs.is_one() {
                out.push_str(&body);
            } else {
                let _ = write!(out, "{}*{}", rat_string(&abs), body);
            }
        }
        out
    }
}

impl Add for &MultiLaurent {
    type Output = MultiLaurent;
    fn add(self, rhs: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiLaurent {
    type Output = MultiLaurent;
    fn sub(self, rhs: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &MultiLaurent {
    type Output = MultiLaurent;
    fn mul(self, rhs: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiLaurent::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        self.scale(&-Rat::one())
    }
}

/// The fully expanded density ∏_{1≤i≠j≤n}(1 − uᵢ/uⱼ).
pub fn gamma_minus(n: usize) -> Result<MultiLaurent, MultiError> {
    if n == 0 || n > MAX_VARS {
        return Err(MultiError::SizeCap);
    }
    let mut acc = MultiLaurent::one(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let factor = &MultiLaurent::one(n)
                - &MultiLaurent::monomial(n, Monomial::ratio(n, i, j), Rat::one());
            acc = &acc * &factor;
        }
    }
    Ok(acc)
}

/// Expansion direction for a Λ_{−t} series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaDirection {
    /// Power series in the auxiliary variable t.
    TZero,
    /// Series in t⁻¹; entry k is the coefficient of t^(rank − k).
    TInfinity,
}

/// A K-theory class written as an alternating sum of monomial line bundles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualLineSum {
    nvars: usize,
    lines: Vec<(Monomial, i8)>,
}

impl VirtualLineSum {
    pub fn new(nvars: usize, lines: Vec<(Monomial, i8)>) -> Result<Self, MultiError> {
        if lines
            .iter()
            .any(|(m, s)| m.nvars() != nvars || (*s != 1 && *s != -1))
        {
            return Err(MultiError::VarCountMismatch);
        }
        Ok(Self { nvars, lines })
    }

    pub fn rank(&self) -> i64 {
        self.lines.iter().map(|&(_, s)| s as i64).sum()
    }

    /// The determinant line ∏ mᵉ as a monomial.
    pub fn det(&self) -> Monomial {
        let mut out = Monomial::unit(self.nvars);
        for (m, s) in &self.lines {
            out = out.mul(&if *s > 0 { *m } else { m.inverse() });
        }
        out
    }

    /// Dual class: every line inverted, signs kept.
    pub fn dual(&self) -> Self {
        Self {
            nvars: self.nvars,
            lines: self.lines.iter().map(|(m, s)| (m.inverse(), *s)).collect(),
        }
    }

    /// Truncated coefficient list of Λ_{−t} = ∏(1 − t·m)^ε in the requested
    /// direction; t is a series index, never a polynomial variable.
    ///
    /// At t → 0 entry k is the coefficient of tᵏ. At t → ∞ entry k is the
    /// coefficient of t^(rank−k), read off from the symmetry
    /// Λ_{−t}(V) = (−t)^rk · Λ_{−t⁻¹}(V∨) ⊗ det V.
    pub fn lambda_series(&self, direction: LambdaDirection, order: usize) -> Vec<MultiLaurent> {
        match direction {
            LambdaDirection::TZero => self.series_at_zero(order),
            LambdaDirection::TInfinity => {
                let dual = self.dual().series_at_zero(order);
                let det = MultiLaurent::monomial(self.nvars, self.det(), Rat::one());
                let sign = if self.rank().rem_euclid(2) == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                };
                dual.iter().map(|c| (c * &det).scale(&sign)).collect()
            }
        }
    }

    fn series_at_zero(&self, order: usize) -> Vec<MultiLaurent> {
        let mut acc: Vec<MultiLaurent> = vec![MultiLaurent::one(self.nvars)];
        acc.resize(order + 1, MultiLaurent::zero(self.nvars));
        for (m, s) in &self.lines {
            let line = MultiLaurent::monomial(self.nvars, *m, Rat::one());
            if *s > 0 {
                // multiply by (1 − t·m)
                for k in (1..=order).rev() {
                    let lower = &acc[k - 1] * &line;
                    acc[k] = &acc[k] - &lower;
                }
            } else {
                // divide by (1 − t·m): new_k = old_k + m·new_{k−1}
                for k in 1..=order {
                    let lower = &acc[k - 1] * &line;
                    acc[k] = &acc[k] + &lower;
                }
            }
        }
        acc
    }

    /// Λ_{−1} = Σ (−1)ᵏ Λᵏ; only defined (finite) when all signs are +1.
    pub fn lambda_minus_one(&self) -> MultiLaurent {
        assert!(
            self.lines.iter().all(|&(_, s)| s > 0),
            "lambda_minus_one needs a genuine bundle"
        );
        let r = self.rank().max(0) as usize;
        let series = self.series_at_zero(r);
        let mut acc = MultiLaurent::zero(self.nvars);
        for c in &series {
            acc = &acc + c;
        }
        acc
    }
}
