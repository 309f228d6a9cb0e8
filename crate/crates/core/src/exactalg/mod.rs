//! Exact rationals, univariate sparse Laurent polynomials, reduced rational
//! functions, directional series expansions and residues at u = 1.
//!
//! The coefficient field is ℚ throughout, represented by [`Rat`]
//! (arbitrary-precision, always in lowest terms, positive denominator).
//! Rational functions are kept in a canonical reduced form so that equality
//! is structural equality; see [`RatFunc`].

mod laurent;
mod parse;
mod ratfunc;
mod series;

pub use laurent::LaurentPoly;
pub use parse::{parse_ratfunc, render_ratfunc, ParsedRatFunc};
pub use ratfunc::RatFunc;
pub use series::{residue_at_one, residue_at_one_partial_fractions, SeriesWindow};

use alloc::string::String;
use core::fmt;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// `n` as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// `n/d` as a [`Rat`] (reduced on construction).
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Renders a rational as `p` or `p/q`.
pub fn rat_string(r: &Rat) -> String {
    use alloc::format;
    use num_traits::One;
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The variable a univariate object is read in. Purely presentational:
/// arithmetic never depends on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    /// The motivic variable q.
    Q,
    /// The K-theoretic torus variable u.
    U,
    /// The local parameter 1 − u.
    OneMinusU,
}

impl Var {
    fn symbol(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::U => "u",
            Var::OneMinusU => "(1-u)",
        }
    }
}

/// Direction of a Laurent expansion of a rational function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionPoint {
    /// Power series in u around u = 0.
    Zero,
    /// Series in u⁻¹ around u = ∞.
    Infinity,
    /// Series in (1 − u) around u = 1.
    One,
}

/// Errors for the exact-arithmetic layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactError {
    /// Division by the zero rational function.
    DivisionByZero,
    /// Input text does not conform to the rational-function grammar.
    ParseError { pos: usize, msg: String },
    /// The denominator has a pole outside the allowed point set.
    PoleElsewhere,
    /// Evaluation requested at a pole.
    PoleAtPoint,
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::DivisionByZero => write!(f, "division by zero"),
            ExactError::ParseError { pos, msg } => write!(f, "parse error at {pos}: {msg}"),
            ExactError::PoleElsewhere => write!(f, "pole outside the allowed point set"),
            ExactError::PoleAtPoint => write!(f, "evaluation at a pole"),
        }
    }
}

impl core::error::Error for ExactError {}
