//! Quivers, dimension vectors, Euler forms, slope stability with exact
//! integer comparisons, HN-type enumeration and stack Poincaré polynomials.
//!
//! Slopes μ(d) = θ·d / κ·d are never divided out: comparisons go through
//! integer cross-multiplication, optionally tier by tier for lexicographic
//! stabilities.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::One;

use crate::exactalg::{LaurentPoly, Rat, RatFunc};

/// Errors for the quiver layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverError {
    /// Vector lengths disagree with the vertex count.
    DimMismatch,
    /// κ·d vanished, i.e. a slope was requested for the zero class.
    ZeroDenominator,
    /// An arrow endpoint is not a declared vertex.
    BadArrow,
    /// κ has a non-positive entry.
    BadKappa,
}

impl core::fmt::Display for QuiverError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            QuiverError::DimMismatch => write!(f, "dimension vector length mismatch"),
            QuiverError::ZeroDenominator => write!(f, "slope of the zero class"),
            QuiverError::BadArrow => write!(f, "arrow endpoint is not a declared vertex"),
            QuiverError::BadKappa => write!(f, "kappa entries must be positive"),
        }
    }
}

impl core::error::Error for QuiverError {}

/// A dimension vector: a nonnegative integer vector indexed by vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DimVector {
    coords: Vec<i64>,
}

impl DimVector {
    pub fn new(coords: Vec<i64>) -> Result<Self, QuiverError> {
        if coords.iter().any(|&c| c < 0) {
            return Err(QuiverError::DimMismatch);
        }
        Ok(Self { coords })
    }

    pub fn zero(len: usize) -> Self {
        Self {
            coords: vec![0; len],
        }
    }

    /// Standard basis vector eᵢ.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut coords = vec![0; len];
        coords[i] = 1;
        Self { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn total(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise difference; `None` if any coordinate would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if self.len() != other.len() {
            return None;
        }
        let coords: Vec<i64> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        if coords.iter().any(|&c| c < 0) {
            return None;
        }
        Some(Self { coords })
    }

    /// Componentwise ≤.
    pub fn leq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// All nonzero vectors ≤ bound componentwise, in lexicographic order.
    pub fn nonzero_below(bound: &Self) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; bound.len()];
        loop {
            // advance odometer
            let mut i = bound.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < bound.coords[i] {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
            out.push(Self {
                coords: cur.clone(),
            });
        }
    }
}

/// A quiver: ordered vertex labels and a multiset of arrows.
///
/// Acyclicity is not required at construction but is flagged by
/// [`Quiver::is_acyclic`]; the invariant recursion demands it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self, QuiverError> {
        let n = vertices.len();
        if arrows.iter().any(|&(s, t)| s >= n || t >= n) {
            return Err(QuiverError::BadArrow);
        }
        Ok(Self { vertices, arrows })
    }

    /// One vertex, no arrows: the category of vector spaces.
    pub fn vect() -> Self {
        Self {
            vertices: vec![String::from("1")],
            arrows: Vec::new(),
        }
    }

    /// Two vertices with one arrow 1 → 2.
    pub fn a2() -> Self {
        Self {
            vertices: vec![String::from("1"), String::from("2")],
            arrows: vec![(0, 1)],
        }
    }

    /// Two vertices with k parallel arrows 1 → 2.
    pub fn kronecker(k: usize) -> Self {
        Self {
            vertices: vec![String::from("1"), String::from("2")],
            arrows: vec![(0, 1); k],
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm.
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen == n
    }

    pub fn euler_form(&self) -> EulerFormQ {
        EulerFormQ::from_quiver(self)
    }
}

/// The Euler form χ(d,e) = Σ_v d_v e_v − Σ_{a:i→j} d_i e_j of a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerFormQ {
    n: usize,
    /// Row-major matrix M with χ(d,e) = dᵀ·M·e.
    matrix: Vec<i64>,
}

impl EulerFormQ {
    pub fn from_quiver(q: &Quiver) -> Self {
        let n = q.num_vertices();
        let mut matrix = vec![0i64; n * n];
        for v in 0..n {
            matrix[v * n + v] = 1;
        }
        for &(s, t) in q.arrows() {
            matrix[s * n + t] -= 1;
        }
        Self { n, matrix }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn eval(&self, d: &DimVector, e: &DimVector) -> Result<i64, QuiverError> {
        if d.len() != self.n || e.len() != self.n {
            return Err(QuiverError::DimMismatch);
        }
        let mut acc = 0i64;
        for i in 0..self.n {
            for j in 0..self.n {
                acc += d.coords()[i] * self.matrix[i * self.n + j] * e.coords()[j];
            }
        }
        Ok(acc)
    }
}

/// A slope function μ(d) = θ·d / κ·d with optional extra tiers compared
/// lexicographically. κ must be componentwise positive so κ·d > 0 for every
/// nonzero effective class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeFunction {
    theta: Vec<i64>,
    kappa: Vec<i64>,
    tiers: Vec<Vec<i64>>,
}

impl SlopeFunction {
    pub fn new(
        theta: Vec<i64>,
        kappa: Vec<i64>,
        tiers: Vec<Vec<i64>>,
    ) -> Result<Self, QuiverError> {
        if kappa.len() != theta.len() || tiers.iter().any(|t| t.len() != theta.len()) {
            return Err(QuiverError::DimMismatch);
        }
        if kappa.iter().any(|&k| k <= 0) {
            return Err(QuiverError::BadKappa);
        }
        Ok(Self {
            theta,
            kappa,
            tiers,
        })
    }

    /// θ = 0, κ = 1: every class has the same slope.
    pub fn trivial(len: usize) -> Self {
        Self {
            theta: vec![0; len],
            kappa: vec![1; len],
            tiers: Vec::new(),
        }
    }

    pub fn from_theta(theta: Vec<i64>) -> Self {
        let kappa = vec![1; theta.len()];
        Self {
            theta,
            kappa,
            tiers: Vec::new(),
        }
    }

    pub fn theta(&self) -> &[i64] {
        &self.theta
    }

    pub fn kappa(&self) -> &[i64] {
        &self.kappa
    }

    pub fn tiers(&self) -> &[Vec<i64>] {
        &self.tiers
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    /// Compares μ(d) with μ(e) by cross-multiplication, tier by tier.
    pub fn slope_cmp(&self, d: &DimVector, e: &DimVector) -> Result<Ordering, QuiverError> {
        if d.len() != self.len() || e.len() != self.len() {
            return Err(QuiverError::DimMismatch);
        }
        let kd = dot(&self.kappa, d.coords());
        let ke = dot(&self.kappa, e.coords());
        if kd == 0 || ke == 0 {
            return Err(QuiverError::ZeroDenominator);
        }
        for tier in core::iter::once(&self.theta).chain(self.tiers.iter()) {
            let td = dot(tier, d.coords());
            let te = dot(tier, e.coords());
            let lhs = td * ke;
            let rhs = te * kd;
            match lhs.cmp(&rhs) {
                Ordering::Equal => continue,
                o => return Ok(o),
            }
        }
        Ok(Ordering::Equal)
    }

    pub fn same_slope(&self, d: &DimVector, e: &DimVector) -> Result<bool, QuiverError> {
        Ok(self.slope_cmp(d, e)? == Ordering::Equal)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// An ordered tuple of nonzero classes with strictly decreasing slope.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HNType {
    parts: Vec<DimVector>,
}

impl HNType {
    pub fn new(parts: Vec<DimVector>, mu: &SlopeFunction) -> Result<Self, QuiverError> {
        if parts.is_empty() || parts.iter().any(DimVector::is_zero) {
            return Err(QuiverError::ZeroDenominator);
        }
        for w in parts.windows(2) {
            if mu.slope_cmp(&w[0], &w[1])? != Ordering::Greater {
                return Err(QuiverError::ZeroDenominator);
            }
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[DimVector] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn class_sum(&self) -> DimVector {
        let mut acc = DimVector::zero(self.parts[0].len());
        for p in &self.parts {
            acc = acc.add(p);
        }
        acc
    }
}

/// All HN types of α under μ: ordered decompositions α = α₁+…+α_k into
/// nonzero classes with μ(α₁) > … > μ(α_k). When `same_slope_under` is
/// given, only tuples with every part of the same μ₀-slope as α survive
/// (the index set HN_α(μ/μ₀) of the dominant wall-crossing formula).
pub fn enumerate_hn_types(
    alpha: &DimVector,
    mu: &SlopeFunction,
    same_slope_under: Option<&SlopeFunction>,
) -> Result<Vec<HNType>, QuiverError> {
    if alpha.is_zero() {
        return Ok(Vec::new());
    }
    let candidates = DimVector::nonzero_below(alpha);
    // Pre-filter by the μ₀ equal-slope condition.
    let allowed: Vec<&DimVector> = match same_slope_under {
        None => candidates.iter().collect(),
        Some(mu0) => {
            let mut v = Vec::new();
            for c in &candidates {
                if mu0.same_slope(c, alpha)? {
                    v.push(c);
                }
            }
            v
        }
    };
    let mut out = Vec::new();
    let mut stack: Vec<DimVector> = Vec::new();
    descend(alpha, &allowed, mu, None, &mut stack, &mut out)?;
    Ok(out)
}

fn descend(
    remaining: &DimVector,
    allowed: &[&DimVector],
    mu: &SlopeFunction,
    last: Option<&DimVector>,
    stack: &mut Vec<DimVector>,
    out: &mut Vec<HNType>,
) -> Result<(), QuiverError> {
    if remaining.is_zero() {
        out.push(HNType {
            parts: stack.clone(),
        });
        return Ok(());
    }
    for &cand in allowed {
        if !cand.leq(remaining) {
            continue;
        }
        if let Some(prev) = last {
            if mu.slope_cmp(prev, cand)? != Ordering::Greater {
                continue;
            }
        }
        let rest = remaining.checked_sub(cand).expect("cand ≤ remaining");
        stack.push(cand.clone());
        descend(&rest, allowed, mu, Some(cand), stack, out)?;
        stack.pop();
    }
    Ok(())
}

/// All ordered decompositions of α into nonzero classes of the same μ-slope
/// as α (no decrease condition).
pub fn fixed_slope_decomps(
    alpha: &DimVector,
    mu: &SlopeFunction,
) -> Result<Vec<Vec<DimVector>>, QuiverError> {
    if alpha.is_zero() {
        return Ok(Vec::new());
    }
    let candidates = DimVector::nonzero_below(alpha);
    let mut allowed = Vec::new();
    for c in &candidates {
        if mu.same_slope(c, alpha)? {
            allowed.push(c.clone());
        }
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend_fixed(alpha, &allowed, &mut stack, &mut out);
    Ok(out)
}

fn descend_fixed(
    remaining: &DimVector,
    allowed: &[DimVector],
    stack: &mut Vec<DimVector>,
    out: &mut Vec<Vec<DimVector>>,
) {
    if remaining.is_zero() {
        out.push(stack.clone());
        return;
    }
    for cand in allowed {
        if !cand.leq(remaining) {
            continue;
        }
        let rest = remaining.checked_sub(cand).expect("cand ≤ remaining");
        stack.push(cand.clone());
        descend_fixed(&rest, allowed, stack, out);
        stack.pop();
    }
}

/// Virtual Poincaré polynomial of GL_n: ∏_{i=0}^{n−1}(qⁿ − qⁱ).
pub fn poincare_gl(n: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for i in 0..n {
        let factor = LaurentPoly::from_terms([(n, Rat::one()), (i, -Rat::one())]);
        acc = &acc * &factor;
    }
    acc
}

/// Virtual Poincaré polynomial of the stack of representations of class d:
/// q^{Σ_{a:i→j} dᵢdⱼ} / ∏_v P_q(GL_{d_v}), times (q−1) when rigidified.
pub fn stack_poincare(q: &Quiver, d: &DimVector, rigidified: bool) -> Result<RatFunc, QuiverError> {
    if d.len() != q.num_vertices() {
        return Err(QuiverError::DimMismatch);
    }
    let arrow_weight: i64 = q
        .arrows()
        .iter()
        .map(|&(s, t)| d.coords()[s] * d.coords()[t])
        .sum();
    let mut den = LaurentPoly::one();
    for &dv in d.coords() {
        den = &den * &poincare_gl(dv);
    }
    let mut num = LaurentPoly::monomial(arrow_weight, Rat::one());
    if rigidified {
        num = &num * &LaurentPoly::x_minus(1);
    }
    RatFunc::new(num, den).map_err(|_| QuiverError::DimMismatch)
}
