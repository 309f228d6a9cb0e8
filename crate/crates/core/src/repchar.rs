//! Characters of GL_n irreducibles and invariant dimensions.
//!
//! Irreducible characters are computed by the Weyl character formula in
//! bialternant form, s_λ = det(uᵢ^{λⱼ+n−j}) / det(uᵢ^{n−j}), with exact
//! alternant division. The dimension of the invariant subspace is extracted
//! two independent ways: the constant-term functional
//! (1/n!)·[u⁰](Γ_{[n],−}·ch) and a highest-weight peeling oracle.
//! Weight-zero GL_n characters stand in for PGL_n representations.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::exactalg::{rat_int, Rat};
use crate::multilaurent::{gamma_minus, Monomial, MultiError, MultiLaurent, MAX_VARS};

/// Errors for the representation layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepError {
    /// Weight entries are not sorted non-increasingly.
    NonDominant,
    /// Peeling hit a negative or non-integer multiplicity.
    NotACharacter,
    /// The underlying polynomial is not S_n-symmetric.
    NotSymmetric,
    /// Size or variable-count violation from the polynomial layer.
    Multi(MultiError),
}

impl From<MultiError> for RepError {
    fn from(e: MultiError) -> Self {
        RepError::Multi(e)
    }
}

impl core::fmt::Display for RepError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RepError::NonDominant => write!(f, "weight is not dominant (sorted non-increasing)"),
            RepError::NotACharacter => write!(f, "not a genuine character"),
            RepError::NotSymmetric => write!(f, "polynomial is not symmetric"),
            RepError::Multi(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for RepError {}

/// A dominant integral weight of GL_n: a non-increasing integer vector
/// (negative entries allowed).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HighestWeight {
    parts: Vec<i64>,
}

impl HighestWeight {
    pub fn new(parts: Vec<i64>) -> Result<Self, RepError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(RepError::NonDominant);
        }
        Ok(Self { parts })
    }

    pub fn zero(n: usize) -> Self {
        Self { parts: vec![0; n] }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    pub fn total(&self) -> i64 {
        self.parts.iter().sum()
    }
}

/// The torus character of a (virtual) GL_n representation: an S_n-symmetric
/// sparse Laurent polynomial in n variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    poly: MultiLaurent,
    n: usize,
    weight_zero: bool,
}

impl Character {
    /// Wraps a symmetric polynomial; rejects asymmetric input.
    pub fn new(poly: MultiLaurent) -> Result<Self, RepError> {
        if !poly.is_symmetric(&[poly.nvars()]) {
            return Err(RepError::NotSymmetric);
        }
        Ok(Self::from_symmetric(poly))
    }

    fn from_symmetric(poly: MultiLaurent) -> Self {
        let n = poly.nvars();
        let weight_zero = poly.is_weight_zero();
        Self {
            poly,
            n,
            weight_zero,
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_symmetric(MultiLaurent::one(n))
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        Self::from_symmetric(MultiLaurent::constant(n, c))
    }

    pub fn poly(&self) -> &MultiLaurent {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_weight_zero(&self) -> bool {
        self.weight_zero
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, RepError> {
        Ok(Self::from_symmetric(self.poly.try_mul(&rhs.poly)?))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, RepError> {
        Ok(Self::from_symmetric(self.poly.try_add(&rhs.poly)?))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, RepError> {
        Ok(Self::from_symmetric(self.poly.try_sub(&rhs.poly)?))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_symmetric(self.poly.scale(c))
    }

    pub fn pow(&self, k: u32) -> Self {
        Self::from_symmetric(self.poly.pow(k))
    }
}

/// Irreducible GL_n character by exact bialternant division.
pub fn schur_char(weight: &HighestWeight) -> Result<Character, RepError> {
    let n = weight.len();
    if n == 0 || n > MAX_VARS {
        return Err(RepError::Multi(MultiError::SizeCap));
    }
    // Exponents λ_j + (n−1−j), shifted to be nonnegative.
    let staircase: Vec<i64> = (0..n).map(|j| (n - 1 - j) as i64).collect();
    let raw: Vec<i64> = weight
        .parts()
        .iter()
        .zip(&staircase)
        .map(|(&l, &d)| l + d)
        .collect();
    let shift = raw.iter().min().copied().unwrap_or(0).min(0).abs();
    let shifted: Vec<i64> = raw.iter().map(|&e| e + shift).collect();

    let numerator = alternant(n, &shifted)?;
    let vandermonde = alternant(n, &staircase)?;
    let quotient = div_exact(&numerator, &vandermonde)
        .expect("bialternant numerators are divisible by the Vandermonde alternant");

    // Undo the shift: multiply by (u₁⋯u_n)^{-shift}.
    let back = Monomial::new(&vec![-shift; n])?;
    let poly = quotient.try_mul(&MultiLaurent::monomial(n, back, Rat::one()))?;
    Ok(Character::from_symmetric(poly))
}

/// det(uᵢ^{e_j}) as a fully expanded polynomial.
fn alternant(n: usize, exps: &[i64]) -> Result<MultiLaurent, RepError> {
    let mut acc = MultiLaurent::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let sgn = permutation_sign(&perm);
        let term: Vec<i64> = (0..n).map(|i| exps[perm[i]]).collect();
        let m = Monomial::new(&term)?;
        let c = if sgn { rat_int(1) } else { rat_int(-1) };
        acc = &acc + &MultiLaurent::monomial(n, m, c);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(acc)
}

fn permutation_sign(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Exact division of polynomials with nonnegative exponents under the
/// lexicographic order; `None` when the division is not exact.
fn div_exact(num: &MultiLaurent, den: &MultiLaurent) -> Option<MultiLaurent> {
    let n = num.nvars();
    let (dlt, dlc) = den.leading()?;
    let dlt = *dlt;
    let dlc = dlc.clone();
    let mut rem = num.clone();
    let mut quot = MultiLaurent::zero(n);
    while !rem.is_zero() {
        let (rlt, rlc) = rem.leading().expect("nonzero remainder has a leading term");
        let diff: Vec<i64> = rlt
            .exps()
            .iter()
            .zip(dlt.exps())
            .map(|(&a, &b)| (a - b) as i64)
            .collect();
        if diff.iter().any(|&e| e < 0) {
            return None;
        }
        let qm = Monomial::new(&diff).ok()?;
        let qt = MultiLaurent::monomial(n, qm, rlc / &dlc);
        rem = &rem - &(&qt * den);
        quot = &quot + &qt;
    }
    Some(quot)
}

/// Invariant dimension via Weyl integration:
/// (1/n!)·constant_term(Γ_{[n],−} · ch). Exact rational; an integer for a
/// genuine character (callers can see `is_weight_zero` for the PGL_n case).
pub fn invariant_dim_ct(chi: &Character) -> Result<Rat, RepError> {
    let n = chi.n();
    let density = gamma_minus(n)?;
    let product = density.try_mul(chi.poly())?;
    let fact: i64 = (1..=n as i64).product();
    Ok(product.constant_term() / rat_int(fact))
}

/// Constant term of Γ_{[n],−}·s_λ, without the 1/n! normalization
/// (n! on the trivial weight, 0 on every other dominant weight).
pub fn weyl_constant_term(weight: &HighestWeight) -> Result<Rat, RepError> {
    let chi = schur_char(weight)?;
    let density = gamma_minus(weight.len())?;
    Ok(density.try_mul(chi.poly())?.constant_term())
}

/// Independent oracle for the invariant dimension: repeatedly peel off the
/// irreducible with lexicographically largest dominant monomial and report
/// the multiplicity of the trivial weight.
///
/// Only genuine (non-virtual) characters peel; a negative or non-integer
/// multiplicity is reported as [`RepError::NotACharacter`].
pub fn invariant_dim_peel(chi: &Character) -> Result<i64, RepError> {
    let mut rest = chi.poly().clone();
    let mut trivial_multiplicity = 0i64;
    while !rest.is_zero() {
        let (lead, coeff) = rest
            .leading()
            .expect("nonzero polynomial has a leading term");
        let weight: Vec<i64> = lead.exps().iter().map(|&e| e as i64).collect();
        if !coeff.is_integer() || coeff.is_negative() {
            return Err(RepError::NotACharacter);
        }
        let mult = coeff.to_integer();
        let mult_i64 = i64::try_from(&mult).map_err(|_| RepError::NotACharacter)?;
        // The lex-largest monomial of a symmetric polynomial is dominant.
        let hw = HighestWeight::new(weight).map_err(|_| RepError::NotSymmetric)?;
        if hw.is_zero() {
            trivial_multiplicity += mult_i64;
        }
        let irr = schur_char(&hw)?;
        rest = &rest - &irr.poly().scale(&Rat::from_integer(mult));
    }
    Ok(trivial_multiplicity)
}

/// All dominant weight-zero weights of length n with entries in
/// [−bound, bound], in deterministic order.
pub fn dominant_weight_zero_weights(n: usize, bound: i64) -> Vec<HighestWeight> {
    let mut out = Vec::new();
    let mut parts = vec![0i64; n];
    enumerate_dominant(&mut out, &mut parts, 0, bound, bound, 0);
    out
}

fn enumerate_dominant(
    out: &mut Vec<HighestWeight>,
    parts: &mut Vec<i64>,
    idx: usize,
    bound: i64,
    max_allowed: i64,
    partial_sum: i64,
) {
    let n = parts.len();
    if idx == n {
        if partial_sum == 0 {
            out.push(HighestWeight {
                parts: parts.clone(),
            });
        }
        return;
    }
    // Remaining entries are ≤ max_allowed, so the sum can still reach zero
    // only if partial_sum + remaining·(-bound) ≤ 0 ≤ partial_sum + remaining·max_allowed.
    let remaining = (n - idx) as i64;
    for v in (-bound..=max_allowed).rev() {
        let s = partial_sum + v;
        if s + (remaining - 1) * v < 0 || s - (remaining - 1) * bound > 0 {
            continue;
        }
        parts[idx] = v;
        enumerate_dominant(out, parts, idx + 1, bound, v, s);
    }
    parts[idx] = 0;
}
