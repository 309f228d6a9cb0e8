//! K-Hall functionals for the category of vector spaces, evaluated at
//! character level by constant-term extraction.
//!
//! δ_n sends a PGL_n-type (weight-zero) character to the dimension of its
//! invariant part. Block products δ_{n₁}∗…∗δ_{n_k} collapse to a single
//! constant term against Γ_{[N],−} with N = Σn_a, normalized by 1/∏n_a!;
//! an independent block-by-block construction of the density (per-block
//! Weyl factors times explicit cross-block Λ-factors) guards the collapse.
//! ε_n is the formal-logarithm combination over compositions of n.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::exactalg::{rat, rat_int, Rat};
use crate::multilaurent::{gamma_minus, Monomial, MultiError, MultiLaurent, VirtualLineSum};
use crate::repchar::{invariant_dim_ct, schur_char, Character, HighestWeight, RepError};

/// Total rank above which block products are refused.
pub const BLOCK_RANK_CAP: usize = 5;

/// Errors for the K-Hall layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KhError {
    /// Total block rank exceeds [`BLOCK_RANK_CAP`].
    SizeCap,
    /// Character lives in the wrong number of variables.
    VarCountMismatch,
    /// Schur-word expression error.
    Parse { pos: usize, msg: String },
    /// Propagated representation-layer error.
    Rep(RepError),
}

impl From<RepError> for KhError {
    fn from(e: RepError) -> Self {
        KhError::Rep(e)
    }
}

impl From<MultiError> for KhError {
    fn from(e: MultiError) -> Self {
        KhError::Rep(RepError::Multi(e))
    }
}

impl core::fmt::Display for KhError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            KhError::SizeCap => write!(f, "total rank exceeds {BLOCK_RANK_CAP}"),
            KhError::VarCountMismatch => write!(f, "character variable count mismatch"),
            KhError::Parse { pos, msg } => write!(f, "parse error at {pos}: {msg}"),
            KhError::Rep(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for KhError {}

/// Sizes n₁..n_k of the factors in a block product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockProfile {
    sizes: Vec<usize>,
}

impl BlockProfile {
    pub fn new(sizes: Vec<usize>) -> Result<Self, KhError> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(KhError::VarCountMismatch);
        }
        Ok(Self { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total_rank(&self) -> usize {
        self.sizes.iter().sum()
    }

    fn factorial_product(&self) -> Rat {
        let mut acc = Rat::one();
        for &s in &self.sizes {
            for k in 2..=s as i64 {
                acc *= rat_int(k);
            }
        }
        acc
    }
}

/// The value of a functional evaluation, with the profile it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectFunctionalResult {
    pub value: Rat,
    pub profile: BlockProfile,
    pub total_rank: usize,
}

/// Block-product evaluation packaged with its profile.
pub fn khall_product_result(
    blocks: &BlockProfile,
    chi: &Character,
) -> Result<VectFunctionalResult, KhError> {
    Ok(VectFunctionalResult {
        value: khall_product_eval(blocks, chi)?,
        total_rank: blocks.total_rank(),
        profile: blocks.clone(),
    })
}

/// δ_n(χ): dimension of the invariant part, via Weyl integration.
pub fn delta_eval(n: usize, chi: &Character) -> Result<Rat, KhError> {
    if chi.n() != n {
        return Err(KhError::VarCountMismatch);
    }
    Ok(invariant_dim_ct(chi)?)
}

/// (δ_{n₁}∗…∗δ_{n_k})(χ) = (1/∏n_a!)·[u⁰](Γ_{[N],−}·χ) with N = Σn_a.
pub fn khall_product_eval(blocks: &BlockProfile, chi: &Character) -> Result<Rat, KhError> {
    let total = blocks.total_rank();
    if total > BLOCK_RANK_CAP {
        return Err(KhError::SizeCap);
    }
    if chi.n() != total {
        return Err(KhError::VarCountMismatch);
    }
    let density = gamma_minus(total)?;
    let ct = density.try_mul(chi.poly())?.constant_term();
    Ok(ct / blocks.factorial_product())
}

/// Independent route for the same value: assemble the density block by
/// block as ∏_a Γ_{[n_a],−} × ∏_{a<b} cross-factors, where the cross factor
/// for an ordered pair of blocks is (−1)^rk·Λ_{−1}(ext₂₁∨+ext₁₂)⊗det(ext₁₂)∨
/// with line characters uⱼ/uᵢ, i in the earlier and j in the later block.
pub fn khall_product_eval_block_oracle(
    blocks: &BlockProfile,
    chi: &Character,
) -> Result<Rat, KhError> {
    let total = blocks.total_rank();
    if total > BLOCK_RANK_CAP {
        return Err(KhError::SizeCap);
    }
    if chi.n() != total {
        return Err(KhError::VarCountMismatch);
    }

    // Variable offsets per block.
    let mut offsets: Vec<Vec<usize>> = Vec::new();
    let mut next = 0usize;
    for &s in blocks.sizes() {
        offsets.push((next..next + s).collect());
        next += s;
    }

    let mut density = MultiLaurent::one(total);
    for off in &offsets {
        let per_block = gamma_minus(off.len())?.block_embed(total, off)?;
        density = density.try_mul(&per_block)?;
    }
    for a in 0..offsets.len() {
        for b in a + 1..offsets.len() {
            density = density.try_mul(&cross_factor(total, &offsets[a], &offsets[b])?)?;
        }
    }

    let ct = density.try_mul(chi.poly())?.constant_term();
    Ok(ct / blocks.factorial_product())
}

/// Cross-block Γ-factor for an ordered pair of blocks.
fn cross_factor(total: usize, earlier: &[usize], later: &[usize]) -> Result<MultiLaurent, KhError> {
    // ext₁₂ has lines uⱼ/uᵢ and ext₂₁∨ duplicates them, so the bundle is
    // two copies of each cross line.
    let mut lines = Vec::new();
    let mut det_inv = Monomial::unit(total);
    for &i in earlier {
        for &j in later {
            let line = Monomial::ratio(total, j, i);
            lines.push((line, 1i8));
            lines.push((line, 1i8));
            det_inv = Monomial::new(
                &(0..total)
                    .map(|v| {
                        det_inv.exps()[v] as i64
                            + if v == i {
                                1
                            } else if v == j {
                                -1
                            } else {
                                0
                            }
                    })
                    .collect::<Vec<_>>(),
            )?;
        }
    }
    let bundle = VirtualLineSum::new(total, lines)?;
    let lam = bundle.lambda_minus_one();
    let twisted = lam.try_mul(&MultiLaurent::monomial(total, det_inv, Rat::one()))?;
    let rk = earlier.len() * later.len();
    Ok(if rk.is_multiple_of(2) {
        twisted
    } else {
        twisted.scale(&-Rat::one())
    })
}

/// All compositions (ordered tuples of positive parts) of n, in
/// deterministic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            let mut c = vec![first];
            c.append(&mut rest);
            out.push(c);
        }
    }
    out
}

/// ε_n(χ) = Σ over compositions (n₁..n_k) of n of
/// (−1)^{k−1}/k · (δ_{n₁}∗…∗δ_{n_k})(χ).
pub fn epsilon_eval(n: usize, chi: &Character) -> Result<Rat, KhError> {
    if n == 0 {
        return Ok(rat_int(0));
    }
    let mut acc = rat_int(0);
    for comp in compositions(n) {
        let k = comp.len() as i64;
        let profile = BlockProfile::new(comp)?;
        let term = khall_product_eval(&profile, chi)?;
        let sign = if (k - 1) % 2 == 0 {
            rat(1, k)
        } else {
            rat(-1, k)
        };
        acc += sign * term;
    }
    Ok(acc)
}

/// Parses a Schur-word expression like `s[1,-1]^2 - 2*s[0,0]` into a
/// character in n variables.
///
/// ```text
/// expr := ['-'] term (('+'|'-') term)*
/// term := atom ('*' atom)*
/// atom := int | schur | '(' expr ')' ; followed by optional '^' uint
/// schur := 's' '[' int (',' int)* ']'
/// ```
pub fn parse_schur_expr(text: &str, n: usize) -> Result<Character, KhError> {
    let mut p = SchurParser {
        bytes: text.as_bytes(),
        pos: 0,
        n,
    };
    let c = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(c)
}

struct SchurParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> SchurParser<'a> {
    fn err(&self, msg: &str) -> KhError {
        KhError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expr(&mut self) -> Result<Character, KhError> {
        let mut acc = if self.peek() == Some(b'-') {
            self.bump();
            self.term()?.scale(&-Rat::one())
        } else {
            self.term()?
        };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.bump();
            let rhs = self.term()?;
            acc = if op == b'+' {
                acc.add(&rhs)?
            } else {
                acc.sub(&rhs)?
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Character, KhError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(b'*') {
            self.bump();
            acc = acc.mul(&self.atom()?)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Character, KhError> {
        let base = match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                inner
            }
            Some(b's') => {
                self.bump();
                if self.peek() != Some(b'[') {
                    return Err(self.err("expected '[' after s"));
                }
                self.bump();
                let mut parts = vec![self.int()?];
                while self.peek() == Some(b',') {
                    self.bump();
                    parts.push(self.int()?);
                }
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']'"));
                }
                self.bump();
                if parts.len() != self.n {
                    return Err(self.err("weight length must match the variable count"));
                }
                let hw = HighestWeight::new(parts).map_err(KhError::from)?;
                schur_char(&hw)?
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.int()?;
                Character::constant(self.n, rat_int(v))
            }
            _ => return Err(self.err("expected integer, s[..] or '('")),
        };
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.int()?;
            if e < 0 {
                return Err(self.err("negative powers of characters are not defined"));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn int(&mut self) -> Result<i64, KhError> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.bump();
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let v: i64 = core::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }
}
