//! Holomorphy of `U_l` across the characteristic curves `K1 = {x = 0}` and
//! `K2 = {x^q = (q/(n+2))^2 t^(n+2)}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuation::{integrate_polyline, LoopPath, LOOP_VERTICES};
use crate::error::{Error, Result};
use crate::solution::MonomialSolution;
use crate::specfun::{ghf_derivative, ghf_principal};
use crate::{near_integer, nonnegative_integer, nonpositive_integer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    ANonposInt,
    BNonposInt,
    CaNonposInt,
    CbNonposInt,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Curve {
    K1,
    K2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub case_tag: CaseTag,
    pub holomorphic_k1: bool,
    pub holomorphic_k2: bool,
    /// `c - a - b` when `U_l` is ramified around `K2`.
    pub k2_ramification_exponent: Option<Complex64>,
    pub witness: String,
}

/// Leading power of `x` near `K1` when it is an integer.
fn k1_holomorphic(exponents: &[Complex64]) -> bool {
    // With two candidates the larger one leads; both differ by an integer then.
    let best = exponents
        .iter()
        .copied()
        .max_by(|p, q| p.re.total_cmp(&q.re))
        .unwrap_or_default();
    nonnegative_integer(best).is_some()
}

fn fmt(z: Complex64) -> String {
    if z.im.abs() < 1e-12 {
        format!("{:.6}", z.re)
    } else {
        format!("{:.6}{:+.6}i", z.re, z.im)
    }
}

pub fn classify(u: &MonomialSolution) -> Result<ClassificationReport> {
    let dp = &u.dp;
    let (a, b, c) = (dp.a, dp.b, dp.c);
    let l = dp.l as f64;
    let q = dp.q as f64;
    let s = c - a - b;
    let xa = l + q * a;
    let xb = l + q * b;
    let a_term = nonpositive_integer(a).is_some();
    let b_term = nonpositive_integer(b).is_some();
    let ca_term = nonpositive_integer(c - a).is_some();
    let cb_term = nonpositive_integer(c - b).is_some();
    let ramified = |case: &str| -> Result<()> {
        if near_integer(s).is_some() {
            return Err(Error::DegenerateParams(format!(
                "{case}: c - a - b = {} is an integer",
                fmt(s)
            )));
        }
        Ok(())
    };

    let (case_tag, holomorphic_k1, witness) = if a_term || b_term {
        let tag = if a_term {
            CaseTag::ANonposInt
        } else {
            CaseTag::BNonposInt
        };
        let mut exps = Vec::new();
        if a_term {
            exps.push(xa);
        }
        if b_term {
            exps.push(xb);
        }
        let holo = k1_holomorphic(&exps);
        let which = if a_term { "a" } else { "b" };
        let shown = if a_term { xa } else { xb };
        (
            tag,
            holo,
            format!(
                "{which} = {} is a non-positive integer: F is a polynomial; l + q{which} = {}",
                fmt(if a_term { a } else { b }),
                fmt(shown)
            ),
        )
    } else if ca_term || cb_term {
        let case = if ca_term { "c - a" } else { "c - b" };
        ramified(case)?;
        let mut exps = Vec::new();
        if ca_term {
            exps.push(xb);
        }
        if cb_term {
            exps.push(xa);
        }
        let holo = k1_holomorphic(&exps);
        let (other, shown) = if ca_term { ("b", xb) } else { ("a", xa) };
        (
            if ca_term {
                CaseTag::CaNonposInt
            } else {
                CaseTag::CbNonposInt
            },
            holo,
            format!(
                "{case} = {} is a non-positive integer: Pfaff form terminates; l + q{other} = {}; c - a - b = {}",
                fmt(if ca_term { c - a } else { c - b }),
                fmt(shown),
                fmt(s)
            ),
        )
    } else {
        if near_integer(a - b).is_some() {
            return Err(Error::DegenerateParams(format!(
                "generic case: a - b = {} is an integer",
                fmt(a - b)
            )));
        }
        let alpha = dp.alpha();
        let other = 1.0 + alpha - u.spec.coef_a;
        let holo = nonnegative_integer(-alpha).is_some() && nonnegative_integer(other).is_some();
        let k2 = if near_integer(s).is_some() {
            "an integer, logarithmic branching at K2"
        } else {
            "ramified at K2"
        };
        (
            CaseTag::Generic,
            holo,
            format!(
                "generic parameters: -alpha = {}, 1 + alpha - A = {}; c - a - b = {} ({k2})",
                fmt(-alpha),
                fmt(other),
                fmt(s)
            ),
        )
    };
    let holomorphic_k2 = matches!(case_tag, CaseTag::ANonposInt | CaseTag::BNonposInt);
    Ok(ClassificationReport {
        case_tag,
        holomorphic_k1,
        holomorphic_k2,
        k2_ramification_exponent: (!holomorphic_k2).then_some(s),
        witness,
    })
}

/// `(l + q b, c - a - b)`: the powers of `x` and of `x^q - (q/(n+2))^2 t^(n+2)`
/// in the last term of the terminating Pfaff form, for `c - a` in `0, -1, ...`.
pub fn pfaff_lastterm_exponents(u: &MonomialSolution) -> Result<(Complex64, Complex64)> {
    let dp = &u.dp;
    if nonpositive_integer(dp.c - dp.a).is_none() {
        return Err(Error::PreconditionViolation(format!(
            "c - a = {} is not a non-positive integer",
            fmt(dp.c - dp.a)
        )));
    }
    Ok((dp.l as f64 + dp.q as f64 * dp.b, dp.c - dp.a - dp.b))
}

/// Relative change of `F` after one loop around the curve's image, by ODE
/// integration. `K2` loops once around `z = 1` from `z = 1/2`. `K1` loops `q`
/// times clockwise around both finite singular points from `z = -1`, the
/// image of one turn of `x` around `0`; `x^l` is single-valued.
pub fn ramification_witness(u: &MonomialSolution, curve: Curve) -> Result<f64> {
    let p = u.params();
    let (z0, path, turns) = match curve {
        Curve::K2 => {
            let z0 = Complex64::new(0.5, 0.0);
            (z0, LoopPath::around_one(z0, LOOP_VERTICES, true)?, 1)
        }
        Curve::K1 => {
            let z0 = Complex64::new(-1.0, 0.0);
            (
                z0,
                LoopPath::around_infinity(z0, 2 * LOOP_VERTICES, true)?,
                u.dp.q as usize,
            )
        }
    };
    let before = ghf_principal(p, z0)?;
    let mut state = (before, ghf_derivative(p, z0)?);
    for _ in 0..turns {
        state = integrate_polyline(p, &path.vertices, state.0, state.1)?;
    }
    Ok((state.0 - before).norm() / before.norm().max(1e-300))
}
