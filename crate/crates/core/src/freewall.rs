//! Free-associative-algebra engine over dimension-vector symbols.
//!
//! A dominant wall-crossing hop (wall μ₀, side μ) reads as a substitution
//! x_β ↦ Σ_{HN_β(μ/μ₀)} x_{β₁}⋯x_{β_k} in the free algebra: the left side
//! stands for δ^{μ₀}_β and the right side for δ^μ products. Hops compose —
//! forward onto a wall, inverted off it — into the coefficient table S of
//! the general wall-crossing formula. The ε-level tables U and Ũ follow by
//! conjugating with the formal log/exp over equal-slope decompositions and
//! projecting onto nested commutators.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactalg::{rat, rat_int, Rat};
use crate::quiver::{
    enumerate_hn_types, fixed_slope_decomps, DimVector, QuiverError, SlopeFunction,
};

/// Total-degree cap for path bounds; free-algebra components blow up fast.
pub const DEGREE_CAP: i64 = 8;

/// Errors for the free-algebra layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeError {
    /// The wall stability does not dominate the side stability; witness
    /// pair of classes whose slope order flips.
    DominanceViolated(DimVector, DimVector),
    /// The bound's total degree exceeds [`DEGREE_CAP`].
    DegreeOverflow,
    /// Consecutive hops do not share a wall/side endpoint.
    PathMismatch,
    /// An S coefficient fell outside {−1, 0, 1}.
    CoefficientOutOfRange(Vec<DimVector>),
    /// The ε-transform image is not in the nested-commutator span. The
    /// theory guarantees it is, so this signals an internal bug.
    NotLieElement(DimVector),
    /// Propagated slope error.
    Quiver(QuiverError),
}

impl From<QuiverError> for FreeError {
    fn from(e: QuiverError) -> Self {
        FreeError::Quiver(e)
    }
}

impl core::fmt::Display for FreeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FreeError::DominanceViolated(b, g) => {
                write!(f, "dominance violated on the pair {b:?}, {g:?}")
            }
            FreeError::DegreeOverflow => write!(f, "bound degree exceeds {DEGREE_CAP}"),
            FreeError::PathMismatch => write!(f, "consecutive hops do not share endpoints"),
            FreeError::CoefficientOutOfRange(t) => {
                write!(f, "S coefficient outside {{-1,0,1}} at {t:?}")
            }
            FreeError::NotLieElement(a) => {
                write!(f, "commutator-span solve failed in degree {a:?}")
            }
            FreeError::Quiver(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FreeError {}

/// A word in dimension-vector symbols; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<DimVector>,
}

impl Word {
    pub fn new(letters: Vec<DimVector>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self {
            letters: Vec::new(),
        }
    }

    pub fn letters(&self) -> &[DimVector] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the letters.
    pub fn multidegree(&self, len: usize) -> DimVector {
        let mut acc = DimVector::zero(len);
        for l in &self.letters {
            acc = acc.add(l);
        }
        acc
    }

    fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Self { letters }
    }
}

/// An exact-rational linear combination of words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeElem {
    terms: BTreeMap<Word, Rat>,
}

impl FreeElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Rat::one());
        Self { terms }
    }

    pub fn symbol(beta: DimVector) -> Self {
        Self::from_word(Word::new(vec![beta]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Shortest word among the terms, ties broken lexicographically.
    fn min_length_term(&self) -> Option<(&Word, &Rat)> {
        self.terms
            .iter()
            .min_by(|(w1, _), (w2, _)| w1.len().cmp(&w2.len()).then_with(|| w1.cmp(w2)))
    }
}

/// One dominant wall-crossing application: wall stability μ₀ and an
/// adjacent side stability μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopSpec {
    pub wall: SlopeFunction,
    pub side: SlopeFunction,
}

/// A substitution on dimension-vector symbols, complete below some bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subst {
    images: BTreeMap<DimVector, FreeElem>,
}

impl Subst {
    pub fn identity(classes: &[DimVector]) -> Self {
        Self {
            images: classes
                .iter()
                .map(|b| (b.clone(), FreeElem::symbol(b.clone())))
                .collect(),
        }
    }

    pub fn image(&self, beta: &DimVector) -> FreeElem {
        self.images
            .get(beta)
            .cloned()
            .unwrap_or_else(|| FreeElem::symbol(beta.clone()))
    }

    pub fn apply(&self, elem: &FreeElem) -> FreeElem {
        let mut out = FreeElem::zero();
        for (w, c) in elem.terms() {
            let mut prod = FreeElem::one();
            for letter in w.letters() {
                prod = prod.mul(&self.image(letter));
            }
            out = out.add(&prod.scale(c));
        }
        out
    }

    /// Composition (self ∘ inner): first substitute `inner`, then `self`.
    pub fn compose(&self, inner: &Subst) -> Subst {
        let mut images = BTreeMap::new();
        for (b, img) in &inner.images {
            images.insert(b.clone(), self.apply(img));
        }
        // Classes only known to `self` keep their images.
        for (b, img) in &self.images {
            images.entry(b.clone()).or_insert_with(|| img.clone());
        }
        Subst { images }
    }

    /// Inverse of a unitriangular substitution x_β ↦ x_β + longer words,
    /// by induction on the total degree.
    pub fn inverse(&self) -> Subst {
        let mut classes: Vec<DimVector> = self.images.keys().cloned().collect();
        classes.sort_by_key(|b| b.total());
        let mut inv = Subst {
            images: BTreeMap::new(),
        };
        for beta in classes {
            let mut image = FreeElem::symbol(beta.clone());
            for (w, c) in self.images[&beta].terms() {
                if w.len() == 1 && w.letters()[0] == beta {
                    continue;
                }
                // Each proper word has parts of smaller total degree, whose
                // inverse images are already known.
                let mut prod = FreeElem::one();
                for letter in w.letters() {
                    prod = prod.mul(&inv.image(letter));
                }
                image = image.sub(&prod.scale(c));
            }
            inv.images.insert(beta, image);
        }
        inv
    }
}

/// The substitution of one dominant hop: x_β ↦ Σ_{HN_β(μ/μ₀)} words, for
/// every nonzero β ≤ bound. Dominance is pre-checked pairwise.
pub fn hop_substitution(hop: &HopSpec, bound: &DimVector) -> Result<Subst, FreeError> {
    check_dominance(&hop.wall, &hop.side, bound)?;
    let mut images = BTreeMap::new();
    for beta in DimVector::nonzero_below(bound) {
        let mut image = FreeElem::zero();
        for t in enumerate_hn_types(&beta, &hop.side, Some(&hop.wall))? {
            image = image.add(&FreeElem::from_word(Word::new(t.parts().to_vec())));
        }
        images.insert(beta, image);
    }
    Ok(Subst { images })
}

fn check_dominance(
    mu0: &SlopeFunction,
    mu: &SlopeFunction,
    bound: &DimVector,
) -> Result<(), FreeError> {
    use core::cmp::Ordering;
    let classes = DimVector::nonzero_below(bound);
    for beta in &classes {
        for gamma in &classes {
            if !beta.add(gamma).leq(bound) {
                continue;
            }
            let side = mu.slope_cmp(beta, gamma)?;
            let wall = mu0.slope_cmp(beta, gamma)?;
            if side != Ordering::Less && wall == Ordering::Less {
                return Err(FreeError::DominanceViolated(beta.clone(), gamma.clone()));
            }
        }
    }
    Ok(())
}

/// A composed wall-crossing path with its endpoint stabilities.
#[derive(Clone, Debug)]
pub struct WallCrossPath {
    subst: Subst,
    initial: SlopeFunction,
    final_: SlopeFunction,
    bound: DimVector,
}

impl WallCrossPath {
    pub fn substitution(&self) -> &Subst {
        &self.subst
    }

    pub fn initial_stability(&self) -> &SlopeFunction {
        &self.initial
    }

    pub fn final_stability(&self) -> &SlopeFunction {
        &self.final_
    }

    pub fn bound(&self) -> &DimVector {
        &self.bound
    }

    /// S table: the coefficient of x_{γ₁}⋯x_{γ_k} in the image of x_{Σγ}.
    /// Coefficients outside {−1,0,1} are rejected.
    pub fn s_table(&self) -> Result<BTreeMap<Vec<DimVector>, i8>, FreeError> {
        let mut out = BTreeMap::new();
        for beta in DimVector::nonzero_below(&self.bound) {
            for (w, c) in self.subst.image(&beta).terms() {
                let tuple = w.letters().to_vec();
                let value: i8 = if *c == rat_int(1) {
                    1
                } else if *c == rat_int(-1) {
                    -1
                } else {
                    return Err(FreeError::CoefficientOutOfRange(tuple));
                };
                out.insert(tuple, value);
            }
        }
        Ok(out)
    }
}

/// Composes a hop path. Hops are listed along the path: the 1st, 3rd, …
/// hop carries its side stability onto the wall (forward substitution), the
/// 2nd, 4th, … leaves the shared wall onto its side (inverse substitution).
/// An odd-length path ends on a wall, an even-length one in a chamber.
pub fn compose_hops(hops: &[HopSpec], bound: &DimVector) -> Result<WallCrossPath, FreeError> {
    if hops.is_empty() {
        return Err(FreeError::PathMismatch);
    }
    if bound.total() > DEGREE_CAP {
        return Err(FreeError::DegreeOverflow);
    }
    for (i, pair) in hops.windows(2).enumerate() {
        let consistent = if i % 2 == 0 {
            pair[0].wall == pair[1].wall
        } else {
            pair[0].side == pair[1].side
        };
        if !consistent {
            return Err(FreeError::PathMismatch);
        }
    }
    let classes = DimVector::nonzero_below(bound);
    let mut total = Subst::identity(&classes);
    for (i, hop) in hops.iter().enumerate() {
        let sub = hop_substitution(hop, bound)?;
        let step = if i % 2 == 0 { sub } else { sub.inverse() };
        total = total.compose(&step);
    }
    let final_ = if hops.len() % 2 == 1 {
        hops[hops.len() - 1].wall.clone()
    } else {
        hops[hops.len() - 1].side.clone()
    };
    Ok(WallCrossPath {
        subst: total,
        initial: hops[0].side.clone(),
        final_,
        bound: bound.clone(),
    })
}

/// Memoized formal-logarithm elements ℓ^μ_β expressing ε^μ_β in the word
/// basis of δ^μ symbols.
struct LogBasis {
    mu: SlopeFunction,
    cache: BTreeMap<DimVector, FreeElem>,
}

impl LogBasis {
    fn new(mu: SlopeFunction) -> Self {
        Self {
            mu,
            cache: BTreeMap::new(),
        }
    }

    fn log_elem(&mut self, beta: &DimVector) -> Result<FreeElem, FreeError> {
        if let Some(e) = self.cache.get(beta) {
            return Ok(e.clone());
        }
        let mut acc = FreeElem::zero();
        for decomp in fixed_slope_decomps(beta, &self.mu)? {
            let k = decomp.len() as i64;
            let coeff = if (k - 1) % 2 == 0 {
                rat(1, k)
            } else {
                rat(-1, k)
            };
            acc = acc.add(&FreeElem::from_word(Word::new(decomp)).scale(&coeff));
        }
        self.cache.insert(beta.clone(), acc.clone());
        Ok(acc)
    }

    fn product(&mut self, tuple: &[DimVector]) -> Result<FreeElem, FreeError> {
        let mut acc = FreeElem::one();
        for part in tuple {
            acc = acc.mul(&self.log_elem(part)?);
        }
        Ok(acc)
    }

    /// Left-nested commutator [[…[ℓ_{γ₁}, ℓ_{γ₂}]…], ℓ_{γ_k}].
    fn nested_bracket(&mut self, tuple: &[DimVector]) -> Result<FreeElem, FreeError> {
        let mut acc = self.log_elem(&tuple[0])?;
        for part in &tuple[1..] {
            acc = acc.commutator(&self.log_elem(part)?);
        }
        Ok(acc)
    }
}

/// The ε-transform image E_α: ε^{μ'}_α written in the δ^μ word basis,
/// where μ' is the path's final stability and μ its initial one.
fn epsilon_transform(path: &WallCrossPath, alpha: &DimVector) -> Result<FreeElem, FreeError> {
    let mut acc = FreeElem::zero();
    for decomp in fixed_slope_decomps(alpha, &path.final_)? {
        let k = decomp.len() as i64;
        let coeff = if (k - 1) % 2 == 0 {
            rat(1, k)
        } else {
            rat(-1, k)
        };
        let mut prod = FreeElem::one();
        for part in &decomp {
            prod = prod.mul(&path.subst.image(part));
        }
        acc = acc.add(&prod.scale(&coeff));
    }
    Ok(acc)
}

/// U table: ε^{μ'}_α = Σ U(γ₁..γ_k)·ε^μ_{γ₁}∗…∗ε^μ_{γ_k}, solved per
/// multidegree in the (triangular) basis of ℓ-products.
pub fn u_from_s(path: &WallCrossPath) -> Result<BTreeMap<Vec<DimVector>, Rat>, FreeError> {
    let mut logs = LogBasis::new(path.initial.clone());
    let mut out = BTreeMap::new();
    for alpha in DimVector::nonzero_below(&path.bound) {
        let mut residue = epsilon_transform(path, &alpha)?;
        while let Some((w, c)) = residue.min_length_term() {
            let tuple = w.letters().to_vec();
            let c = c.clone();
            let basis = logs.product(&tuple)?;
            residue = residue.sub(&basis.scale(&c));
            out.insert(tuple, c);
        }
    }
    Ok(out)
}

/// Ũ table: the same ε-transform expressed in left-nested commutators of
/// the ℓ's. Nested brackets only span (they are not a basis), so the
/// word-coordinate linear system is solved exactly and the first solution
/// under the deterministic tuple order is returned; the boolean is true
/// when the solution was unique.
pub fn utilde_from_u(
    path: &WallCrossPath,
    u: &BTreeMap<Vec<DimVector>, Rat>,
) -> Result<(BTreeMap<Vec<DimVector>, Rat>, bool), FreeError> {
    let mut logs = LogBasis::new(path.initial.clone());
    let mut out = BTreeMap::new();
    let mut unique = true;
    for alpha in DimVector::nonzero_below(&path.bound) {
        // Rebuild E_α from the U table: Σ U(γ⃗)·ℓ-products.
        let mut target = FreeElem::zero();
        let tuples = ordered_decomps(&alpha);
        for t in &tuples {
            if let Some(c) = u.get(t) {
                target = target.add(&logs.product(t)?.scale(c));
            }
        }
        let brackets: Vec<FreeElem> = tuples
            .iter()
            .map(|t| logs.nested_bracket(t))
            .collect::<Result<_, _>>()?;
        let (solution, deg_unique) =
            solve_in_span(&brackets, &target).ok_or(FreeError::NotLieElement(alpha.clone()))?;
        unique &= deg_unique;
        for (t, c) in tuples.iter().zip(solution) {
            if !c.is_zero() {
                out.insert(t.clone(), c);
            }
        }
    }
    Ok((out, unique))
}

/// All ordered decompositions of α into nonzero classes, in deterministic
/// (BTree) order.
fn ordered_decomps(alpha: &DimVector) -> Vec<Vec<DimVector>> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(remaining: &DimVector, stack: &mut Vec<DimVector>, out: &mut Vec<Vec<DimVector>>) {
        if remaining.is_zero() {
            out.push(stack.clone());
            return;
        }
        for cand in DimVector::nonzero_below(remaining) {
            let rest = remaining.checked_sub(&cand).expect("cand ≤ remaining");
            stack.push(cand);
            rec(&rest, stack, out);
            stack.pop();
        }
    }
    rec(alpha, &mut stack, &mut out);
    out.sort();
    out
}

/// Exact Gaussian solve of Σ xⱼ·vⱼ = target in word coordinates. Returns
/// the coefficient vector (free variables set to zero) and whether the
/// solution was unique; `None` when the system is inconsistent.
// Indexed loops: rows are mutated while another row is read.
#[allow(clippy::needless_range_loop)]
fn solve_in_span(vectors: &[FreeElem], target: &FreeElem) -> Option<(Vec<Rat>, bool)> {
    // Collect the word coordinates that appear anywhere.
    let mut words: Vec<Word> = Vec::new();
    {
        let mut seen: BTreeMap<&Word, ()> = BTreeMap::new();
        for v in vectors.iter().chain(core::iter::once(target)) {
            for (w, _) in v.terms() {
                seen.entry(w).or_insert(());
            }
        }
        words.extend(seen.keys().map(|w| (*w).clone()));
    }
    let rows = words.len();
    let cols = vectors.len();
    let mut mat: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = vectors.iter().map(|v| v.coeff(&words[r])).collect();
            row.push(target.coeff(&words[r]));
            row
        })
        .collect();

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut next_row = 0usize;
    for col in 0..cols {
        let Some(p) = (next_row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(next_row, p);
        let inv = Rat::one() / mat[next_row][col].clone();
        for x in mat[next_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != next_row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in 0..=cols {
                    let delta = &factor * &mat[next_row][c];
                    mat[r][c] -= delta;
                }
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == rows {
            break;
        }
    }
    // Inconsistent if a zero row has a nonzero RHS.
    for r in next_row..rows {
        if mat[r][..cols].iter().all(Rat::is_zero) && !mat[r][cols].is_zero() {
            return None;
        }
    }
    let unique = pivot_of_col.iter().all(Option::is_some);
    let solution: Vec<Rat> = (0..cols)
        .map(|c| match pivot_of_col[c] {
            Some(r) => mat[r][cols].clone(),
            None => Rat::zero(),
        })
        .collect();
    Some((solution, unique))
}

/// Everything the coeffs surface reports for one path.
#[derive(Clone, Debug)]
pub struct CoeffTables {
    pub s: BTreeMap<Vec<DimVector>, i8>,
    pub u: BTreeMap<Vec<DimVector>, Rat>,
    pub utilde: BTreeMap<Vec<DimVector>, Rat>,
    pub bound: DimVector,
    /// False when some nested-commutator solve had free variables.
    pub utilde_unique: bool,
}

/// S, U and Ũ of a composed path in one shot.
pub fn coeff_tables(path: &WallCrossPath) -> Result<CoeffTables, FreeError> {
    let s = path.s_table()?;
    let u = u_from_s(path)?;
    let (utilde, utilde_unique) = utilde_from_u(path, &u)?;
    Ok(CoeffTables {
        s,
        u,
        utilde,
        bound: path.bound.clone(),
        utilde_unique,
    })
}

/// Rebuilds the S-substitution from a U table by the exponential sum and
/// compares with the path's own substitution (log/exp roundtrip).
pub fn s_recovered_from_u(
    path: &WallCrossPath,
    u: &BTreeMap<Vec<DimVector>, Rat>,
) -> Result<bool, FreeError> {
    let mut logs = LogBasis::new(path.initial.clone());
    for alpha in DimVector::nonzero_below(&path.bound) {
        // ε^{μ'}_β in the δ^μ word basis, from U.
        let mut eps: BTreeMap<DimVector, FreeElem> = BTreeMap::new();
        for beta in DimVector::nonzero_below(&alpha) {
            let mut acc = FreeElem::zero();
            for t in ordered_decomps(&beta) {
                if let Some(c) = u.get(&t) {
                    acc = acc.add(&logs.product(&t)?.scale(c));
                }
            }
            eps.insert(beta, acc);
        }
        let mut rebuilt = FreeElem::zero();
        for decomp in fixed_slope_decomps(&alpha, &path.final_)? {
            let k = decomp.len() as i64;
            let mut fact = 1i64;
            for j in 2..=k {
                fact *= j;
            }
            let mut prod = FreeElem::one();
            for part in &decomp {
                prod = prod.mul(&eps[part]);
            }
            rebuilt = rebuilt.add(&prod.scale(&rat(1, fact)));
        }
        if rebuilt != path.subst.image(&alpha) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The λ-weighted binomial coefficient identity:
/// Σ_{p=1}^n λ_p Σ_{k≥p, k+l=n} (−1)^{k−p}/(k!·l!)·C(k−1,p−1) = (Σλ)/n!.
pub fn lambda_binomial_identity(n: usize, lambda: &[i64]) -> bool {
    assert!(n >= 1 && lambda.len() == n);
    let mut lhs = rat_int(0);
    for (p, &lam) in lambda.iter().enumerate() {
        let p = p + 1;
        let mut inner = rat_int(0);
        for k in p..=n {
            let l = n - k;
            let sign = if (k - p) % 2 == 0 {
                rat_int(1)
            } else {
                rat_int(-1)
            };
            let denom = factorial(k as i64) * factorial(l as i64);
            inner += sign * binomial(k as i64 - 1, p as i64 - 1) / denom;
        }
        lhs += rat_int(lam) * inner;
    }
    let total: i64 = lambda.iter().sum();
    lhs == rat_int(total) / factorial(n as i64)
}

fn factorial(n: i64) -> Rat {
    let mut acc = rat_int(1);
    for k in 2..=n {
        acc *= rat_int(k);
    }
    acc
}

fn binomial(n: i64, k: i64) -> Rat {
    if k < 0 || k > n {
        return rat_int(0);
    }
    let mut acc = rat_int(1);
    for j in 0..k {
        acc = acc * rat_int(n - j) / rat_int(j + 1);
    }
    acc
}

/// Checks the λ-weighted bracket expansion: summed over all orderings of n
/// distinct symbols,
/// (−1)^{n−1}/n!·λ(x_{σ(1)})·[[…[x_{σ(1)},x_{σ(2)}]…],x_{σ(n)}]
/// equals Σ_p (−1)^{n−p}/n!·C(n−1,p−1)·λ(x_{σ(p)})·x_{σ(1)}⋯x_{σ(n)}.
///
/// Both sides are linear in λ, so equality at each indicator weight proves
/// the symbolic identity. The binomial weight on the word side is forced:
/// a left-nested bracket contributes its word with the first letter at
/// position p once per interleaving of the reversed prefix, C(n−1,p−1)
/// many — the same weight that appears in [`lambda_binomial_identity`].
pub fn bracket_expansion_check(n: usize) -> bool {
    assert!(n >= 1);
    let letters: Vec<DimVector> = (0..n).map(|i| DimVector::unit(n, i)).collect();
    let fact = factorial(n as i64);
    for marked in 0..n {
        let mut lhs = FreeElem::zero();
        let mut rhs = FreeElem::zero();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            // left side: weight sits on the first letter
            if perm[0] == marked {
                let mut acc = FreeElem::symbol(letters[perm[0]].clone());
                for &idx in &perm[1..] {
                    acc = acc.commutator(&FreeElem::symbol(letters[idx].clone()));
                }
                let sign = if (n - 1).is_multiple_of(2) {
                    rat_int(1)
                } else {
                    rat_int(-1)
                };
                lhs = lhs.add(&acc.scale(&(sign / fact.clone())));
            }
            // right side: weight may sit at any position p
            let word = Word::new(perm.iter().map(|&i| letters[i].clone()).collect());
            for (p0, &idx) in perm.iter().enumerate() {
                if idx == marked {
                    let p = (p0 + 1) as i64;
                    let sign = if (n as i64 - p) % 2 == 0 {
                        rat_int(1)
                    } else {
                        rat_int(-1)
                    };
                    let weight = sign * binomial(n as i64 - 1, p - 1) / fact.clone();
                    rhs = rhs.add(&FreeElem::from_word(word.clone()).scale(&weight));
                }
            }
            if !next_perm(&mut perm) {
                break;
            }
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}

fn next_perm(perm: &mut [usize]) -> bool {
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

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(c: &[i64]) -> DimVector {
        DimVector::new(c.to_vec()).unwrap()
    }

    fn word(parts: &[&[i64]]) -> Vec<DimVector> {
        parts.iter().map(|p| dv(p)).collect()
    }

    /// Simple-wall configuration on A₂ classes: wall θ=(1,1) between
    /// θ=(1,0) (α₁ on top) and θ=(0,1) (α₂ on top).
    fn simple_wall() -> (HopSpec, HopSpec) {
        let wall = SlopeFunction::from_theta(vec![1, 1]);
        let minus = HopSpec {
            wall: wall.clone(),
            side: SlopeFunction::from_theta(vec![1, 0]),
        };
        let plus = HopSpec {
            wall,
            side: SlopeFunction::from_theta(vec![0, 1]),
        };
        (minus, plus)
    }

    #[test]
    fn hop_images_on_simple_wall() {
        let (minus, plus) = simple_wall();
        let bound = dv(&[1, 1]);
        let sub = hop_substitution(&minus, &bound).unwrap();
        let expected = FreeElem::symbol(dv(&[1, 1]))
            .add(&FreeElem::from_word(Word::new(word(&[&[1, 0], &[0, 1]]))));
        assert_eq!(sub.image(&dv(&[1, 1])), expected);
        assert_eq!(sub.image(&dv(&[1, 0])), FreeElem::symbol(dv(&[1, 0])));

        let sub_plus = hop_substitution(&plus, &bound).unwrap();
        let expected = FreeElem::symbol(dv(&[1, 1]))
            .add(&FreeElem::from_word(Word::new(word(&[&[0, 1], &[1, 0]]))));
        assert_eq!(sub_plus.image(&dv(&[1, 1])), expected);
    }

    #[test]
    fn single_hop_s_is_hn_indicator() {
        let (minus, _) = simple_wall();
        let path = compose_hops(core::slice::from_ref(&minus), &dv(&[1, 1])).unwrap();
        let s = path.s_table().unwrap();
        assert_eq!(s.get(&word(&[&[1, 0], &[0, 1]])), Some(&1));
        assert_eq!(s.get(&word(&[&[0, 1], &[1, 0]])), None);
        assert_eq!(s.get(&word(&[&[1, 1]])), Some(&1));
    }

    #[test]
    fn cross_and_return_is_identity() {
        let (minus, _) = simple_wall();
        let path = compose_hops(&[minus.clone(), minus], &dv(&[1, 1])).unwrap();
        let classes = DimVector::nonzero_below(&dv(&[1, 1]));
        assert_eq!(*path.substitution(), Subst::identity(&classes));
    }

    #[test]
    fn full_crossing_gives_commutator_correction() {
        let (minus, plus) = simple_wall();
        let path = compose_hops(&[minus, plus], &dv(&[1, 1])).unwrap();
        let x1 = FreeElem::symbol(dv(&[1, 0]));
        let x2 = FreeElem::symbol(dv(&[0, 1]));
        let expected = FreeElem::symbol(dv(&[1, 1]))
            .add(&x1.mul(&x2))
            .sub(&x2.mul(&x1));
        assert_eq!(path.substitution().image(&dv(&[1, 1])), expected);
    }

    #[test]
    fn u_table_simple_wall() {
        let (minus, _) = simple_wall();
        let path = compose_hops(core::slice::from_ref(&minus), &dv(&[1, 1])).unwrap();
        let u = u_from_s(&path).unwrap();
        assert_eq!(u.get(&word(&[&[1, 1]])), Some(&rat_int(1)));
        assert_eq!(u.get(&word(&[&[1, 0], &[0, 1]])), Some(&rat(1, 2)));
        assert_eq!(u.get(&word(&[&[0, 1], &[1, 0]])), Some(&rat(-1, 2)));
    }

    #[test]
    fn utilde_reexpands_to_half_bracket() {
        let (minus, plus) = simple_wall();
        for (hop, sign) in [(minus, rat(1, 2)), (plus, rat(-1, 2))] {
            let path = compose_hops(core::slice::from_ref(&hop), &dv(&[1, 1])).unwrap();
            let u = u_from_s(&path).unwrap();
            let (utilde, unique) = utilde_from_u(&path, &u).unwrap();
            // Nested brackets are a spanning set only; this degree is 1-dim
            // redundant ([x₂,x₁] = −[x₁,x₂]).
            assert!(!unique);

            // Re-expand Ũ and compare against ℓ_α ± ½[ℓ_{α₁}, ℓ_{α₂}].
            let mut logs = LogBasis::new(path.initial_stability().clone());
            let mut total = FreeElem::zero();
            for (t, c) in utilde.iter().filter(|(t, _)| {
                let mut sum = DimVector::zero(2);
                for part in t.iter() {
                    sum = sum.add(part);
                }
                sum == dv(&[1, 1])
            }) {
                total = total.add(&logs.nested_bracket(t).unwrap().scale(c));
            }
            let l1 = FreeElem::symbol(dv(&[1, 0]));
            let l2 = FreeElem::symbol(dv(&[0, 1]));
            let expected = FreeElem::symbol(dv(&[1, 1])).add(&l1.commutator(&l2).scale(&sign));
            assert_eq!(total, expected);
        }
    }

    #[test]
    fn identity_path_tables_are_trivial() {
        let (minus, _) = simple_wall();
        let path = compose_hops(&[minus.clone(), minus], &dv(&[1, 1])).unwrap();
        let tables = coeff_tables(&path).unwrap();
        for (tuple, v) in &tables.s {
            assert_eq!(*v == 1, tuple.len() == 1, "{tuple:?}");
        }
        for (tuple, v) in &tables.u {
            assert_eq!(tuple.len(), 1);
            assert_eq!(v, &rat_int(1));
        }
    }

    #[test]
    fn a2_path_from_trivial_wall() {
        // Wall = trivial stability, side = θ=(1,0).
        let hop = HopSpec {
            wall: SlopeFunction::trivial(2),
            side: SlopeFunction::from_theta(vec![1, 0]),
        };
        let path = compose_hops(core::slice::from_ref(&hop), &dv(&[1, 1])).unwrap();
        let s = path.s_table().unwrap();
        assert_eq!(s.get(&word(&[&[1, 0], &[0, 1]])), Some(&1));
        assert_eq!(s.get(&word(&[&[0, 1], &[1, 0]])), None);
    }

    #[test]
    fn degree_preservation() {
        let (minus, plus) = simple_wall();
        let bound = dv(&[2, 2]);
        let path = compose_hops(&[minus, plus], &bound).unwrap();
        for beta in DimVector::nonzero_below(&bound) {
            for (w, _) in path.substitution().image(&beta).terms() {
                assert_eq!(w.multidegree(2), beta);
            }
        }
    }

    #[test]
    fn s_recovery_roundtrip() {
        let (minus, plus) = simple_wall();
        let path = compose_hops(&[minus, plus], &dv(&[2, 1])).unwrap();
        let u = u_from_s(&path).unwrap();
        assert!(s_recovered_from_u(&path, &u).unwrap());
    }

    #[test]
    fn dominance_rejected_for_non_wall() {
        let hop = HopSpec {
            wall: SlopeFunction::from_theta(vec![1, 0]),
            side: SlopeFunction::from_theta(vec![0, 1]),
        };
        assert!(matches!(
            hop_substitution(&hop, &dv(&[1, 1])),
            Err(FreeError::DominanceViolated(_, _))
        ));
    }

    #[test]
    fn path_validation() {
        let (minus, plus) = simple_wall();
        let other_wall = HopSpec {
            wall: SlopeFunction::from_theta(vec![2, 2]),
            side: plus.side.clone(),
        };
        // Second hop must share the first hop's wall.
        assert!(matches!(
            compose_hops(&[minus.clone(), other_wall], &dv(&[1, 1])),
            Err(FreeError::PathMismatch)
        ));
        assert!(matches!(
            compose_hops(&[], &dv(&[1, 1])),
            Err(FreeError::PathMismatch)
        ));
        assert!(matches!(
            compose_hops(core::slice::from_ref(&minus), &dv(&[5, 5])),
            Err(FreeError::DegreeOverflow)
        ));
    }

    #[test]
    fn double_wall_path_on_three_letters() {
        // Path A → W1 → B → W2 → C across two genuine walls in the slope
        // space of three vertices; W2 is the trivial stability, which
        // dominates everything.
        let side_a = SlopeFunction::from_theta(vec![5, 3, 0]);
        let wall_1 = SlopeFunction::from_theta(vec![4, 4, 0]);
        let side_b = SlopeFunction::from_theta(vec![3, 5, 0]);
        let wall_2 = SlopeFunction::trivial(3);
        let side_c = SlopeFunction::from_theta(vec![0, 3, 5]);
        let hops = [
            HopSpec {
                wall: wall_1.clone(),
                side: side_a,
            },
            HopSpec {
                wall: wall_1,
                side: side_b.clone(),
            },
            HopSpec {
                wall: wall_2.clone(),
                side: side_b,
            },
            HopSpec {
                wall: wall_2,
                side: side_c,
            },
        ];
        let bound = dv(&[1, 1, 1]);
        let path = compose_hops(&hops, &bound).unwrap();

        // The three-part multidegree solves in the commutator span and the
        // Ũ combination re-expands to the U combination exactly.
        let u = u_from_s(&path).unwrap();
        let (utilde, _unique) = utilde_from_u(&path, &u).unwrap();
        let mut logs = LogBasis::new(path.initial_stability().clone());
        for alpha in DimVector::nonzero_below(&bound) {
            let mut from_u = FreeElem::zero();
            let mut from_utilde = FreeElem::zero();
            for t in ordered_decomps(&alpha) {
                if let Some(c) = u.get(&t) {
                    from_u = from_u.add(&logs.product(&t).unwrap().scale(c));
                }
                if let Some(c) = utilde.get(&t) {
                    from_utilde = from_utilde.add(&logs.nested_bracket(&t).unwrap().scale(c));
                }
            }
            assert_eq!(from_u, from_utilde, "degree {alpha:?}");
        }
        // And the exponential reconstruction recovers the S substitution.
        assert!(s_recovered_from_u(&path, &u).unwrap());

        // The composed S coefficients stay within {−1, 0, 1}.
        let tables = coeff_tables(&path).unwrap();
        assert!(tables.s.values().all(|v| [-1i8, 0, 1].contains(v)));
    }

    #[test]
    fn lambda_binomial_identity_small() {
        assert!(lambda_binomial_identity(1, &[7]));
        assert!(lambda_binomial_identity(2, &[2, 5]));
        assert!(lambda_binomial_identity(4, &[1, 3, 2, 9]));
        assert!(lambda_binomial_identity(6, &[1, 2, 3, 4, 5, 6]));
    }

    #[test]
    fn bracket_expansion_small() {
        assert!(bracket_expansion_check(1));
        assert!(bracket_expansion_check(2));
        assert!(bracket_expansion_check(3));
    }

    #[test]
    fn inverse_is_two_sided() {
        let (minus, plus) = simple_wall();
        let bound = dv(&[2, 2]);
        let classes = DimVector::nonzero_below(&bound);
        for hop in [minus, plus] {
            let sub = hop_substitution(&hop, &bound).unwrap();
            let inv = sub.inverse();
            assert_eq!(sub.compose(&inv), Subst::identity(&classes));
            assert_eq!(inv.compose(&sub), Subst::identity(&classes));
        }
    }
}
