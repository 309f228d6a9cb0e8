//! The motivic quantum torus and its invariant families.
//!
//! Elements are finite sums Σ f_α(q)·e^α with the twisted product
//! e^α ∗ e^β = q^{−χ(β,α)}/(q−1) · e^{α+β}, following the rigidified
//! normalization: δ^μ_α is the virtual Poincaré polynomial of the
//! rigidified semistable stack times e^α, so every displayed value of the
//! Vect example is a literal golden value here. δ-invariants are solved
//! from the HN recursion
//!
//!   P_q(𝔐_α^rig)·e^α = Σ_{HN types (α₁..α_k)} δ^μ_{α₁} ∗ … ∗ δ^μ_{α_k},
//!
//! by strong induction on the total dimension; ε-invariants are the formal
//! logarithm over equal-slope decompositions, and generalized DT invariants
//! are their values at q = 1 (defined exactly when no pole survives there).

use alloc::collections::BTreeMap;

use num_traits::One;

use crate::exactalg::{rat, rat_int, ExactError, LaurentPoly, Rat, RatFunc};
use crate::quiver::{
    enumerate_hn_types, fixed_slope_decomps, stack_poincare, DimVector, EulerFormQ, HNType, Quiver,
    QuiverError, SlopeFunction,
};

/// Errors for the quantum-torus layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusError {
    /// Dimension vectors live over different quivers.
    DimMismatch,
    /// The invariant recursion needs an acyclic quiver.
    NotAcyclic,
    /// A family table is missing a required entry.
    MissingEntry(DimVector),
    /// The ε-invariant has a pole at q = 1.
    PoleAtOne,
    /// A δ-family was passed where an ε-family was required, or vice versa.
    WrongKind,
    /// The wall stability does not dominate the side stability; the witness
    /// is a two-part HN type whose μ-order and μ₀-order disagree.
    DominanceViolated(HNType),
    /// Propagated slope/quiver error.
    Quiver(QuiverError),
}

impl From<QuiverError> for TorusError {
    fn from(e: QuiverError) -> Self {
        TorusError::Quiver(e)
    }
}

impl core::fmt::Display for TorusError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TorusError::DimMismatch => write!(f, "dimension vector mismatch"),
            TorusError::NotAcyclic => write!(f, "quiver must be acyclic"),
            TorusError::MissingEntry(a) => write!(f, "family table missing entry {a:?}"),
            TorusError::PoleAtOne => write!(f, "pole at q = 1"),
            TorusError::WrongKind => write!(f, "wrong invariant family kind"),
            TorusError::DominanceViolated(t) => write!(f, "dominance violated by {t:?}"),
            TorusError::Quiver(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for TorusError {}

/// An element of the quantum torus: a finitely supported map from classes
/// to rational functions. No zero values are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TorusElem {
    support: BTreeMap<DimVector, RatFunc>,
}

impl TorusElem {
    pub fn zero() -> Self {
        Self::default()
    }

    /// f·e^α
    pub fn monomial(alpha: DimVector, f: RatFunc) -> Self {
        let mut support = BTreeMap::new();
        if !f.is_zero() {
            support.insert(alpha, f);
        }
        Self { support }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn coeff(&self, alpha: &DimVector) -> RatFunc {
        self.support
            .get(alpha)
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&DimVector, &RatFunc)> {
        self.support.iter()
    }

    fn add_term(&mut self, alpha: DimVector, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        match self.support.entry(alpha) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (a, f) in &rhs.support {
            out.add_term(a.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (a, f) in &rhs.support {
            out.add_term(a.clone(), -f);
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero();
        for (a, f) in &self.support {
            out.add_term(a.clone(), f * c);
        }
        out
    }

    /// Twisted product x ∗ y with e^α ∗ e^β = q^{−χ(β,α)}/(q−1)·e^{α+β},
    /// extended bilinearly.
    pub fn qt_mul(&self, rhs: &Self, chi: &EulerFormQ) -> Result<Self, TorusError> {
        let mut out = Self::zero();
        for (a, fa) in &self.support {
            for (b, fb) in &rhs.support {
                let twist = chi.eval(b, a).map_err(|_| TorusError::DimMismatch)?;
                let factor = RatFunc::new(
                    LaurentPoly::monomial(-twist, Rat::one()),
                    LaurentPoly::x_minus(1),
                )
                .expect("q−1 is nonzero");
                let f = &(fa * fb) * &factor;
                out.add_term(a.add(b), f);
            }
        }
        Ok(out)
    }
}

/// Which invariant a family table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantKind {
    Delta,
    Epsilon,
}

/// A table of invariants δ^μ_α or ε^μ_α indexed by effective classes.
#[derive(Clone, Debug)]
pub struct InvariantFamily {
    pub kind: InvariantKind,
    pub stability: SlopeFunction,
    table: BTreeMap<DimVector, RatFunc>,
}

impl InvariantFamily {
    pub fn get(&self, alpha: &DimVector) -> Result<&RatFunc, TorusError> {
        self.table
            .get(alpha)
            .ok_or_else(|| TorusError::MissingEntry(alpha.clone()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&DimVector, &RatFunc)> {
        self.table.iter()
    }
}

/// Memoized solver for δ-invariants of one (quiver, stability) context.
pub struct DeltaSolver<'q> {
    quiver: &'q Quiver,
    chi: EulerFormQ,
    mu: SlopeFunction,
    memo: BTreeMap<DimVector, RatFunc>,
}

impl<'q> DeltaSolver<'q> {
    pub fn new(quiver: &'q Quiver, mu: SlopeFunction) -> Result<Self, TorusError> {
        if !quiver.is_acyclic() {
            return Err(TorusError::NotAcyclic);
        }
        if mu.len() != quiver.num_vertices() {
            return Err(TorusError::DimMismatch);
        }
        Ok(Self {
            quiver,
            chi: quiver.euler_form(),
            mu,
            memo: BTreeMap::new(),
        })
    }

    pub fn stability(&self) -> &SlopeFunction {
        &self.mu
    }

    pub fn euler_form(&self) -> &EulerFormQ {
        &self.chi
    }

    /// δ^μ_α, solved from the HN recursion. Well-founded: every proper part
    /// of an HN type has strictly smaller total dimension.
    pub fn delta(&mut self, alpha: &DimVector) -> Result<RatFunc, TorusError> {
        if alpha.is_zero() {
            return Ok(RatFunc::one());
        }
        if let Some(f) = self.memo.get(alpha) {
            return Ok(f.clone());
        }
        let total = stack_poincare(self.quiver, alpha, true)?;
        let mut rest = TorusElem::zero();
        for t in enumerate_hn_types(alpha, &self.mu, None)? {
            if t.len() == 1 {
                continue;
            }
            rest = rest.add(&self.product_of(t.parts())?);
        }
        let value = &total - &rest.coeff(alpha);
        self.memo.insert(alpha.clone(), value.clone());
        Ok(value)
    }

    /// δ^μ_{β₁} ∗ … ∗ δ^μ_{β_k} as a torus element.
    fn product_of(&mut self, parts: &[DimVector]) -> Result<TorusElem, TorusError> {
        let mut acc: Option<TorusElem> = None;
        for part in parts {
            let d = self.delta(part)?;
            let term = TorusElem::monomial(part.clone(), d);
            acc = Some(match acc {
                None => term,
                Some(prev) => prev.qt_mul(&term, &self.chi)?,
            });
        }
        Ok(acc.expect("HN types are nonempty"))
    }

    /// Σ over full HN types of δ-products: must equal the total-stack
    /// Poincaré polynomial times e^α, independently of the stability.
    pub fn hn_sum(&mut self, alpha: &DimVector) -> Result<TorusElem, TorusError> {
        let mut acc = TorusElem::zero();
        for t in enumerate_hn_types(alpha, &self.mu, None)? {
            acc = acc.add(&self.product_of(t.parts())?);
        }
        Ok(acc)
    }

    /// The δ-family filled for every nonzero class ≤ bound.
    pub fn family(&mut self, bound: &DimVector) -> Result<InvariantFamily, TorusError> {
        let mut table = BTreeMap::new();
        for beta in DimVector::nonzero_below(bound) {
            let d = self.delta(&beta)?;
            table.insert(beta, d);
        }
        Ok(InvariantFamily {
            kind: InvariantKind::Delta,
            stability: self.mu.clone(),
            table,
        })
    }
}

/// δ^μ_α as a torus element supported at α.
pub fn delta_semistable(
    quiver: &Quiver,
    mu: &SlopeFunction,
    alpha: &DimVector,
) -> Result<TorusElem, TorusError> {
    let mut solver = DeltaSolver::new(quiver, mu.clone())?;
    Ok(TorusElem::monomial(alpha.clone(), solver.delta(alpha)?))
}

/// ε^μ_α = Σ_k (−1)^{k−1}/k Σ_{equal-slope decomps} δ^μ products.
pub fn epsilon_from_delta(
    chi: &EulerFormQ,
    fam: &InvariantFamily,
    alpha: &DimVector,
) -> Result<TorusElem, TorusError> {
    if fam.kind != InvariantKind::Delta {
        return Err(TorusError::WrongKind);
    }
    log_exp_sum(chi, fam, alpha, false)
}

/// δ^μ_α = Σ_k 1/k! Σ_{equal-slope decomps} ε^μ products.
pub fn delta_from_epsilon(
    chi: &EulerFormQ,
    fam: &InvariantFamily,
    alpha: &DimVector,
) -> Result<TorusElem, TorusError> {
    if fam.kind != InvariantKind::Epsilon {
        return Err(TorusError::WrongKind);
    }
    log_exp_sum(chi, fam, alpha, true)
}

fn log_exp_sum(
    chi: &EulerFormQ,
    fam: &InvariantFamily,
    alpha: &DimVector,
    exponential: bool,
) -> Result<TorusElem, TorusError> {
    let mut acc = TorusElem::zero();
    for decomp in fixed_slope_decomps(alpha, &fam.stability)? {
        let k = decomp.len() as i64;
        let coeff = if exponential {
            let mut fact = 1i64;
            for j in 2..=k {
                fact *= j;
            }
            rat(1, fact)
        } else if (k - 1) % 2 == 0 {
            rat(1, k)
        } else {
            rat(-1, k)
        };
        let mut term: Option<TorusElem> = None;
        for part in &decomp {
            let f = fam.get(part)?.clone();
            let m = TorusElem::monomial(part.clone(), f);
            term = Some(match term {
                None => m,
                Some(prev) => prev.qt_mul(&m, chi)?,
            });
        }
        let term = term.expect("decompositions are nonempty");
        acc = acc.add(&term.scale(&RatFunc::constant(coeff)));
    }
    Ok(acc)
}

/// The ε-family for every nonzero class ≤ bound.
pub fn epsilon_family(
    quiver: &Quiver,
    mu: &SlopeFunction,
    bound: &DimVector,
) -> Result<InvariantFamily, TorusError> {
    let mut solver = DeltaSolver::new(quiver, mu.clone())?;
    let deltas = solver.family(bound)?;
    let chi = quiver.euler_form();
    let mut table = BTreeMap::new();
    for beta in DimVector::nonzero_below(bound) {
        let e = epsilon_from_delta(&chi, &deltas, &beta)?.coeff(&beta);
        table.insert(beta, e);
    }
    Ok(InvariantFamily {
        kind: InvariantKind::Epsilon,
        stability: mu.clone(),
        table,
    })
}

/// Generalized DT invariant: the value of ε^μ_α at q = 1. The no-pole check
/// is a hard gate; a pole is reported, never silently dropped.
pub fn dt_extract(fam: &InvariantFamily, alpha: &DimVector) -> Result<Rat, TorusError> {
    if fam.kind != InvariantKind::Epsilon {
        return Err(TorusError::WrongKind);
    }
    let f = match fam.get(alpha) {
        Ok(f) => f.clone(),
        Err(TorusError::MissingEntry(_)) => RatFunc::zero(),
        Err(e) => return Err(e),
    };
    if !f.regular_at_one() {
        return Err(TorusError::PoleAtOne);
    }
    f.eval_at(&rat_int(1)).map_err(|e| match e {
        ExactError::PoleAtPoint => TorusError::PoleAtOne,
        _ => TorusError::PoleAtOne,
    })
}

/// Checks the dominant wall-crossing identity
/// δ^{μ₀}_α = Σ_{HN_α(μ/μ₀)} δ^μ_{α₁} ∗ … ∗ δ^μ_{α_n}
/// with both sides computed independently.
///
/// The dominance precondition is checked combinatorially on all classes
/// below α: μ(β) ≥ μ(γ) must imply μ₀(β) ≥ μ₀(γ) whenever β + γ ≤ α. A
/// violating pair is returned as a witness HN type.
pub fn dominant_wc_check(
    quiver: &Quiver,
    mu0: &SlopeFunction,
    mu: &SlopeFunction,
    alpha: &DimVector,
) -> Result<bool, TorusError> {
    check_dominance(mu0, mu, alpha)?;

    let mut wall = DeltaSolver::new(quiver, mu0.clone())?;
    let lhs = TorusElem::monomial(alpha.clone(), wall.delta(alpha)?);

    let mut side = DeltaSolver::new(quiver, mu.clone())?;
    let mut rhs = TorusElem::zero();
    for t in enumerate_hn_types(alpha, mu, Some(mu0))? {
        rhs = rhs.add(&side.product_of(t.parts())?);
    }
    Ok(lhs == rhs)
}

fn check_dominance(
    mu0: &SlopeFunction,
    mu: &SlopeFunction,
    alpha: &DimVector,
) -> Result<(), TorusError> {
    use core::cmp::Ordering;
    let classes = DimVector::nonzero_below(alpha);
    for beta in &classes {
        for gamma in &classes {
            if !beta.add(gamma).leq(alpha) {
                continue;
            }
            let side = mu.slope_cmp(beta, gamma)?;
            let wall = mu0.slope_cmp(beta, gamma)?;
            let violated = match side {
                Ordering::Greater | Ordering::Equal => wall == Ordering::Less,
                Ordering::Less => false,
            };
            if violated {
                // The wall orders γ strictly above β, so (γ, β) is a valid
                // type under μ₀ even when the side slopes tie.
                let witness = HNType::new(alloc::vec![beta.clone(), gamma.clone()], mu)
                    .or_else(|_| HNType::new(alloc::vec![gamma.clone(), beta.clone()], mu0))
                    .expect("the wall strictly orders the witness pair");
                return Err(TorusError::DominanceViolated(witness));
            }
        }
    }
    Ok(())
}
