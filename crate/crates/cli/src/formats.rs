//! Input file formats and deterministic output records.
//!
//! All numeric output is exact: rationals print as `p` or `p/q` strings and
//! rational functions additionally carry their sparse triple form
//! `[exponent, numerator, denominator]` sorted by exponent. Output structs
//! serialize their keys in declaration order, so identical inputs produce
//! byte-identical output.

use serde::{Deserialize, Serialize};

use hallcross_core::exactalg::{rat_string, Rat};
use hallcross_core::quiver::{DimVector, Quiver, QuiverError, SlopeFunction};
use hallcross_core::{LaurentPoly, RatFunc, Var};

/// An integer that may exceed the range of a JSON-safe i64; large values
/// degrade to decimal strings.
#[derive(Serialize, Debug, Clone)]
#[serde(untagged)]
pub enum BigIntOut {
    Small(i64),
    Big(String),
}

impl BigIntOut {
    fn from_decimal(s: String) -> Self {
        match s.parse::<i64>() {
            Ok(v) => BigIntOut::Small(v),
            Err(_) => BigIntOut::Big(s),
        }
    }
}

/// One sparse term `[exponent, numerator, denominator]`.
#[derive(Serialize, Debug, Clone)]
pub struct Triple(i64, BigIntOut, BigIntOut);

fn poly_triples(p: &LaurentPoly) -> Vec<Triple> {
    p.terms()
        .map(|(e, c)| {
            Triple(
                e,
                BigIntOut::from_decimal(c.numer().to_string()),
                BigIntOut::from_decimal(c.denom().to_string()),
            )
        })
        .collect()
}

/// Serialized rational function: numerator and denominator triple lists
/// plus a human-readable rendering in the parse grammar.
#[derive(Serialize, Debug, Clone)]
pub struct RatFuncOut {
    pub num: Vec<Triple>,
    pub den: Vec<Triple>,
    pub text: String,
}

impl RatFuncOut {
    pub fn new(f: &RatFunc, var: Var) -> Self {
        Self {
            num: poly_triples(f.num()),
            den: poly_triples(f.den()),
            text: hallcross_core::exactalg::render_ratfunc(f, var),
        }
    }
}

pub fn rat_out(r: &Rat) -> String {
    rat_string(r)
}

/// Quiver file: `{"vertices": ["1","2"], "arrows": [["1","2"]]}`.
#[derive(Deserialize, Debug)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
}

impl QuiverFile {
    pub fn build(&self) -> Result<Quiver, String> {
        let index_of = |label: &str| {
            self.vertices
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| format!("arrow endpoint '{label}' is not a declared vertex"))
        };
        let mut arrows = Vec::new();
        for (s, t) in &self.arrows {
            arrows.push((index_of(s)?, index_of(t)?));
        }
        Quiver::new(self.vertices.clone(), arrows).map_err(|e| e.to_string())
    }
}

/// Stability record: `{"theta": [...], "kappa": [...], "tiers": [[...]]}`;
/// kappa defaults to all ones, tiers to none.
#[derive(Deserialize, Debug, Clone)]
pub struct StabilityFile {
    pub theta: Vec<i64>,
    #[serde(default)]
    pub kappa: Option<Vec<i64>>,
    #[serde(default)]
    pub tiers: Vec<Vec<i64>>,
}

impl StabilityFile {
    pub fn build(&self) -> Result<SlopeFunction, QuiverError> {
        let kappa = self
            .kappa
            .clone()
            .unwrap_or_else(|| vec![1; self.theta.len()]);
        SlopeFunction::new(self.theta.clone(), kappa, self.tiers.clone())
    }
}

/// Path file for `coeffs`:
/// `{"hops": [{"wall": stability, "side": stability}, ...], "bound": [ints]}`.
#[derive(Deserialize, Debug)]
pub struct PathFile {
    pub hops: Vec<HopFile>,
    pub bound: Vec<i64>,
}

#[derive(Deserialize, Debug)]
pub struct HopFile {
    pub wall: StabilityFile,
    pub side: StabilityFile,
}

/// Comma-separated integers, e.g. `2,0,-2`.
pub fn parse_int_list(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad integer '{s}': {e}"))
        })
        .collect()
}

pub fn parse_dim_vector(text: &str) -> Result<DimVector, String> {
    DimVector::new(parse_int_list(text)?).map_err(|e| e.to_string())
}

/// `theta[;kappa]` tier lists are separated by `;`.
pub fn parse_tiers(text: &str) -> Result<Vec<Vec<i64>>, String> {
    text.split(';').map(parse_int_list).collect()
}

// ---- output records, field order fixed by declaration ----

#[derive(Serialize, Debug)]
pub struct QuiverDtOut {
    pub alpha: Vec<i64>,
    pub delta: RatFuncOut,
    pub epsilon: RatFuncOut,
    pub dt: String,
    pub regular_at_one: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon_at: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct HnCheckOut {
    pub alpha: Vec<i64>,
    pub hn_types: Vec<Vec<Vec<i64>>>,
    pub poincare: RatFuncOut,
    pub hn_sum: RatFuncOut,
    pub ok: bool,
}

#[derive(Serialize, Debug)]
pub struct WallcrossCheckOut {
    pub alpha: Vec<i64>,
    pub hn_types: Vec<Vec<Vec<i64>>>,
    pub wall_delta: RatFuncOut,
    pub side_sum: RatFuncOut,
    pub equal: bool,
}

#[derive(Serialize, Debug)]
pub struct TableEntryOut<V: Serialize> {
    pub tuple: Vec<Vec<i64>>,
    pub value: V,
}

#[derive(Serialize, Debug)]
pub struct CoeffsOut {
    pub bound: Vec<i64>,
    pub s: Vec<TableEntryOut<i8>>,
    pub u: Vec<TableEntryOut<String>>,
    pub utilde: Vec<TableEntryOut<String>>,
    pub utilde_unique: bool,
}

#[derive(Serialize, Debug)]
pub struct VectOut {
    pub op: String,
    pub n: usize,
    pub char_text: String,
    pub weight_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    pub value: String,
}

#[derive(Serialize, Debug)]
pub struct ResidueOut {
    pub f: String,
    pub residue: String,
    pub residue_partial_fractions: String,
}

#[derive(Serialize, Debug)]
pub struct WeylOut {
    pub n: usize,
    pub lambda: Vec<i64>,
    /// The Schur character as [exponent-vector, rational] pairs sorted
    /// lexicographically by exponent vector.
    pub character: Vec<(Vec<i64>, String)>,
    pub constant_term: String,
    pub invariant_dim: String,
}

/// Sparse serialization of a multivariate Laurent polynomial.
pub fn multi_laurent_pairs(p: &hallcross_core::MultiLaurent) -> Vec<(Vec<i64>, String)> {
    p.terms()
        .map(|(m, c)| (m.exps().iter().map(|&e| e as i64).collect(), rat_string(c)))
        .collect()
}

#[derive(Serialize, Debug)]
pub struct SeriesOut {
    pub point: String,
    pub valuation: i64,
    pub order: i64,
    pub coeffs: Vec<String>,
    pub text: String,
}

#[derive(Serialize, Debug)]
pub struct ParseOut {
    pub input: String,
    pub var: String,
    pub text: String,
    pub num: Vec<Triple>,
    pub den: Vec<Triple>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesOut>,
}

/// Machine-readable error record.
#[derive(Serialize, Debug)]
pub struct ErrorOut {
    pub error: String,
    pub kind: String,
}
