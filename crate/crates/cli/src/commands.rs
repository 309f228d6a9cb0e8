//! Implementations behind the CLI subcommands.

use hallcross_core::exactalg::{
    parse_ratfunc, render_ratfunc, residue_at_one, residue_at_one_partial_fractions, ExactError,
    Rat,
};
use hallcross_core::freewall::{coeff_tables, compose_hops, HopSpec};
use hallcross_core::khallvect::{
    compositions, khall_product_result, parse_schur_expr, BlockProfile, BLOCK_RANK_CAP,
};
use hallcross_core::multilaurent::gamma_minus;
use hallcross_core::quiver::{
    enumerate_hn_types, stack_poincare, DimVector, Quiver, SlopeFunction,
};
use hallcross_core::repchar::{schur_char, Character, HighestWeight};
use hallcross_core::torus::{dt_extract, epsilon_family, DeltaSolver, TorusElem, TorusError};
use hallcross_core::{ExpansionPoint, RatFunc, Var};

use crate::formats::*;
use crate::parallel::mul_jobs;

/// Failure modes with their exit codes: input problems exit 2, pole
/// failures (at q = 1 or a requested evaluation point) exit 3.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Pole(String),
}

impl CliError {
    pub fn record(&self) -> ErrorOut {
        match self {
            CliError::Input(m) => ErrorOut {
                error: m.clone(),
                kind: "input".into(),
            },
            CliError::Pole(m) => ErrorOut {
                error: m.clone(),
                kind: "pole_at_one".into(),
            },
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Pole(_) => 3,
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn fact(n: usize) -> Rat {
    let mut acc = hallcross_core::exactalg::rat_int(1);
    for k in 2..=n as i64 {
        acc *= hallcross_core::exactalg::rat_int(k);
    }
    acc
}

pub fn quiver_dt(
    quiver: &Quiver,
    mu: &SlopeFunction,
    alpha: &DimVector,
    q_at: Option<&Rat>,
) -> Result<QuiverDtOut, CliError> {
    let mut solver = DeltaSolver::new(quiver, mu.clone()).map_err(input_err)?;
    let delta = solver.delta(alpha).map_err(input_err)?;
    let eps_fam = epsilon_family(quiver, mu, alpha).map_err(input_err)?;
    let epsilon = eps_fam
        .get(alpha)
        .ok()
        .cloned()
        .unwrap_or_else(RatFunc::zero);
    let regular = epsilon.regular_at_one();
    let dt = match dt_extract(&eps_fam, alpha) {
        Ok(v) => rat_out(&v),
        Err(TorusError::PoleAtOne) => return Err(CliError::Pole("pole at q = 1".into())),
        Err(e) => return Err(input_err(e)),
    };
    let epsilon_at = match q_at {
        None => None,
        Some(q0) => Some(rat_out(&epsilon.eval_at(q0).map_err(|_| {
            CliError::Pole(format!("epsilon has a pole at q = {}", rat_out(q0)))
        })?)),
    };
    Ok(QuiverDtOut {
        alpha: alpha.coords().to_vec(),
        delta: RatFuncOut::new(&delta, Var::Q),
        epsilon: RatFuncOut::new(&epsilon, Var::Q),
        dt,
        regular_at_one: regular,
        epsilon_at,
    })
}

pub fn hn_check(
    quiver: &Quiver,
    mu: &SlopeFunction,
    alpha: &DimVector,
) -> Result<HnCheckOut, CliError> {
    let types = enumerate_hn_types(alpha, mu, None).map_err(input_err)?;
    let mut solver = DeltaSolver::new(quiver, mu.clone()).map_err(input_err)?;
    let hn_sum = solver.hn_sum(alpha).map_err(input_err)?;
    let poincare = stack_poincare(quiver, alpha, true).map_err(input_err)?;
    let ok = hn_sum == TorusElem::monomial(alpha.clone(), poincare.clone());
    Ok(HnCheckOut {
        alpha: alpha.coords().to_vec(),
        hn_types: types
            .iter()
            .map(|t| t.parts().iter().map(|p| p.coords().to_vec()).collect())
            .collect(),
        poincare: RatFuncOut::new(&poincare, Var::Q),
        hn_sum: RatFuncOut::new(&hn_sum.coeff(alpha), Var::Q),
        ok,
    })
}

pub fn wallcross_check(
    quiver: &Quiver,
    wall: &SlopeFunction,
    side: &SlopeFunction,
    alpha: &DimVector,
) -> Result<WallcrossCheckOut, CliError> {
    let types = enumerate_hn_types(alpha, side, Some(wall)).map_err(input_err)?;

    let mut wall_solver = DeltaSolver::new(quiver, wall.clone()).map_err(input_err)?;
    let lhs = wall_solver.delta(alpha).map_err(input_err)?;

    let equal =
        hallcross_core::torus::dominant_wc_check(quiver, wall, side, alpha).map_err(input_err)?;

    // Reassemble the side sum for display.
    let mut side_solver = DeltaSolver::new(quiver, side.clone()).map_err(input_err)?;
    let mut rhs = TorusElem::zero();
    let chi = quiver.euler_form();
    for t in &types {
        let mut term: Option<TorusElem> = None;
        for p in t.parts() {
            let d = side_solver.delta(p).map_err(input_err)?;
            let m = TorusElem::monomial(p.clone(), d);
            term = Some(match term {
                None => m,
                Some(prev) => prev.qt_mul(&m, &chi).map_err(input_err)?,
            });
        }
        rhs = rhs.add(&term.expect("HN types are nonempty"));
    }

    Ok(WallcrossCheckOut {
        alpha: alpha.coords().to_vec(),
        hn_types: types
            .iter()
            .map(|t| t.parts().iter().map(|p| p.coords().to_vec()).collect())
            .collect(),
        wall_delta: RatFuncOut::new(&lhs, Var::Q),
        side_sum: RatFuncOut::new(&rhs.coeff(alpha), Var::Q),
        equal,
    })
}

pub fn coeffs(path: &PathFile) -> Result<CoeffsOut, CliError> {
    let bound = DimVector::new(path.bound.clone()).map_err(input_err)?;
    let hops: Vec<HopSpec> = path
        .hops
        .iter()
        .map(|h| {
            Ok(HopSpec {
                wall: h.wall.build().map_err(input_err)?,
                side: h.side.build().map_err(input_err)?,
            })
        })
        .collect::<Result<_, CliError>>()?;
    let composed = compose_hops(&hops, &bound).map_err(input_err)?;
    let tables = coeff_tables(&composed).map_err(input_err)?;
    let tuple_out = |t: &[DimVector]| t.iter().map(|d| d.coords().to_vec()).collect();
    Ok(CoeffsOut {
        bound: bound.coords().to_vec(),
        s: tables
            .s
            .iter()
            .map(|(t, v)| TableEntryOut {
                tuple: tuple_out(t),
                value: *v,
            })
            .collect(),
        u: tables
            .u
            .iter()
            .map(|(t, v)| TableEntryOut {
                tuple: tuple_out(t),
                value: rat_out(v),
            })
            .collect(),
        utilde: tables
            .utilde
            .iter()
            .map(|(t, v)| TableEntryOut {
                tuple: tuple_out(t),
                value: rat_out(v),
            })
            .collect(),
        utilde_unique: tables.utilde_unique,
    })
}

/// Constant term of Γ_{[n],−}·χ with the product parallelized when
/// requested; bit-identical for every job count.
fn gamma_ct(chi: &Character, jobs: usize) -> Result<Rat, CliError> {
    let density = gamma_minus(chi.n()).map_err(input_err)?;
    Ok(mul_jobs(&density, chi.poly(), jobs).constant_term())
}

pub fn vect(
    op: &str,
    n: usize,
    char_expr: &str,
    blocks: Option<Vec<usize>>,
    jobs: usize,
) -> Result<VectOut, CliError> {
    if n == 0 || n > BLOCK_RANK_CAP {
        return Err(CliError::Input(format!(
            "n must be within 1..={BLOCK_RANK_CAP}"
        )));
    }
    let chi = parse_schur_expr(char_expr, n).map_err(input_err)?;
    let ct = gamma_ct(&chi, jobs)?;
    let (value, blocks_out) = match op {
        "delta" => (ct / fact(n), None),
        "epsilon" => {
            let mut acc = hallcross_core::exactalg::rat_int(0);
            for comp in compositions(n) {
                let k = comp.len() as i64;
                let sign = if (k - 1) % 2 == 0 {
                    hallcross_core::exactalg::rat(1, k)
                } else {
                    hallcross_core::exactalg::rat(-1, k)
                };
                let mut denom = hallcross_core::exactalg::rat_int(1);
                for &part in &comp {
                    denom *= fact(part);
                }
                acc += sign * &ct / denom;
            }
            (acc, None)
        }
        "product" => {
            let sizes = blocks
                .ok_or_else(|| CliError::Input("--blocks is required for op=product".into()))?;
            let profile = BlockProfile::new(sizes.clone()).map_err(input_err)?;
            if profile.total_rank() != n {
                return Err(CliError::Input("block sizes must sum to n".into()));
            }
            let result = khall_product_result(&profile, &chi).map_err(input_err)?;
            (result.value, Some(sizes))
        }
        other => return Err(CliError::Input(format!("unknown op '{other}'"))),
    };
    Ok(VectOut {
        op: op.to_string(),
        n,
        char_text: char_expr.to_string(),
        weight_zero: chi.is_weight_zero(),
        blocks: blocks_out,
        value: rat_out(&value),
    })
}

pub fn residue(f_text: &str) -> Result<ResidueOut, CliError> {
    let parsed = parse_ratfunc(f_text).map_err(input_err)?;
    let by_rule = residue_at_one(&parsed.func).map_err(|e| match e {
        ExactError::PoleElsewhere => {
            CliError::Input("poles must be contained in {0, 1, infinity}".into())
        }
        other => input_err(other),
    })?;
    let by_pf = residue_at_one_partial_fractions(&parsed.func).map_err(input_err)?;
    Ok(ResidueOut {
        f: render_ratfunc(&parsed.func, Var::U),
        residue: rat_out(&by_rule),
        residue_partial_fractions: rat_out(&by_pf),
    })
}

pub fn weyl(n: usize, lambda: Vec<i64>, jobs: usize) -> Result<WeylOut, CliError> {
    if lambda.len() != n {
        return Err(CliError::Input("lambda length must equal n".into()));
    }
    let weight = HighestWeight::new(lambda.clone()).map_err(input_err)?;
    let chi = schur_char(&weight).map_err(input_err)?;
    let ct = gamma_ct(&chi, jobs)?;
    let dim = &ct / fact(n);
    Ok(WeylOut {
        n,
        lambda,
        character: multi_laurent_pairs(chi.poly()),
        constant_term: rat_out(&ct),
        invariant_dim: rat_out(&dim),
    })
}

pub fn parse(f_text: &str, expand_at: Option<&str>, max_order: i64) -> Result<ParseOut, CliError> {
    let parsed = parse_ratfunc(f_text).map_err(input_err)?;
    let var_name = match parsed.var {
        Var::Q => "q",
        Var::U => "u",
        Var::OneMinusU => "(1-u)",
    };
    let series = match expand_at {
        None => None,
        Some(point_name) => {
            let point = match point_name {
                "zero" => ExpansionPoint::Zero,
                "infinity" => ExpansionPoint::Infinity,
                "one" => ExpansionPoint::One,
                other => {
                    return Err(CliError::Input(format!(
                        "unknown expansion point '{other}'"
                    )))
                }
            };
            if max_order < 0 {
                return Err(CliError::Input("max order must be nonnegative".into()));
            }
            let w = parsed.func.expand(point, max_order);
            Some(SeriesOut {
                point: point_name.to_string(),
                valuation: w.valuation(),
                order: w.order(),
                coeffs: w.coeffs().iter().map(rat_out).collect(),
                text: w.render(),
            })
        }
    };
    let record = RatFuncOut::new(&parsed.func, parsed.var);
    Ok(ParseOut {
        input: f_text.to_string(),
        var: var_name.to_string(),
        text: record.text.clone(),
        num: record.num,
        den: record.den,
        series,
    })
}
