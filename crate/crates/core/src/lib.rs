//! Exact-arithmetic engines for quantum-torus wall-crossing computations:
//! rational functions in one variable over ℚ, sparse multivariate Laurent
//! polynomials, GL_n characters and Weyl-integration constant terms, quiver
//! slope stability and Harder–Narasimhan recursion, motivic quantum-torus
//! invariants with δ↔ε conversion, and a free-algebra engine that composes
//! wall-crossing hops into coefficient tables.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! all equality tests compare canonical forms. No floating point anywhere.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line tool live in the companion `hallcross-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod exactalg;
pub mod freewall;
pub mod khallvect;
pub mod multilaurent;
pub mod quiver;
pub mod repchar;
pub mod torus;

pub use exactalg::{ExpansionPoint, LaurentPoly, Rat, RatFunc, SeriesWindow, Var};

pub use multilaurent::{Monomial, MultiLaurent, VirtualLineSum};
pub use quiver::{DimVector, EulerFormQ, HNType, Quiver, SlopeFunction};
pub use repchar::{Character, HighestWeight};
pub use torus::{InvariantFamily, InvariantKind, TorusElem};
