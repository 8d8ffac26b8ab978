//! Solution objects: the monomial solutions `U_l = x^l F(a, b; c; z)`, series
//! solutions `sum a_l U_l` for analytic data, and null solutions
//! `t^(1-gamma) V` when `gamma` is a negative integer.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuation::BranchContext;
use crate::error::{Error, Result};
use crate::problem::{
    char_distance, char_map, degeneracy_flags, derive_params, CharMap, DegeneracyFlags,
    DerivedParams, ProblemSpec, RootChoice,
};
use crate::specfun::{gamma, ghf_eval, ghf_principal, one_minus_pow, GhfParams};
use crate::nonpositive_integer;

/// Cap on the number of series terms.
pub const SERIES_TERM_CAP: usize = 500;
/// Relative tail at which series summation stops.
pub const SERIES_TAIL_TOL: f64 = 1e-10;

/// The solution of the problem with data `u(0, x) = x^l`, `u_t(0, x) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonomialSolution {
    pub spec: ProblemSpec,
    pub l: u32,
    pub dp: DerivedParams,
    pub map: CharMap,
    params: GhfParams,
    flags: DegeneracyFlags,
}

pub fn build_monomial(spec: &ProblemSpec, l: u32) -> Result<MonomialSolution> {
    build_monomial_with_root(spec, l, RootChoice::Plus)
}

/// Fails only when `c` is a non-positive integer, which can happen for
/// `gamma` in `{-1, -2, ...}`.
pub fn build_monomial_with_root(
    spec: &ProblemSpec,
    l: u32,
    root: RootChoice,
) -> Result<MonomialSolution> {
    spec.validate()?;
    let dp = derive_params(spec, l, root);
    let params = dp.ghf()?;
    Ok(MonomialSolution {
        spec: *spec,
        l,
        dp,
        map: char_map(spec),
        params,
        flags: degeneracy_flags(spec, &dp),
    })
}

impl MonomialSolution {
    pub fn params(&self) -> &GhfParams {
        &self.params
    }

    pub fn flags(&self) -> &DegeneracyFlags {
        &self.flags
    }

    /// True when `gamma` is a negative integer, so that null solutions exist
    /// and this solution is one member of a family.
    pub fn uniqueness_fails(&self) -> bool {
        self.flags.gamma_negative_integer
    }

    pub fn z(&self, t: Complex64, x: Complex64) -> Result<Complex64> {
        self.map.eval(t, x)
    }

    /// `x^l` times `F` on the principal branch.
    pub fn eval(&self, t: Complex64, x: Complex64) -> Result<Complex64> {
        eval_monomial(self, t, x, &BranchContext::principal())
    }
}

pub fn eval_monomial(
    u: &MonomialSolution,
    t: Complex64,
    x: Complex64,
    branch: &BranchContext,
) -> Result<Complex64> {
    let z = u.z(t, x)?;
    let f = ghf_eval(&u.params, z, branch)?;
    Ok(x.powi(u.l as i32) * f)
}

/// Radius of convergence of the Cauchy data; polynomials use `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Radius {
    Finite(f64),
    Infinite(InfiniteTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfiniteTag {
    #[serde(rename = "inf")]
    Inf,
}

impl Radius {
    pub const INFINITE: Radius = Radius::Infinite(InfiniteTag::Inf);
}

/// `u(t, x) = sum_l a_l U_l(t, x)` for data `u_0(x) = sum_l a_l x^l`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution {
    pub coefficients: Vec<Complex64>,
    pub radius: Radius,
    pub spec: ProblemSpec,
    pub truncation: usize,
}

/// Value of a series solution with its tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_estimate: f64,
    pub terms_used: usize,
}

impl SeriesSolution {
    pub fn new(spec: &ProblemSpec, coefficients: Vec<Complex64>, radius: Radius) -> Result<Self> {
        spec.validate()?;
        if let Radius::Finite(r) = radius {
            if r.is_nan() || r <= 0.0 {
                return Err(Error::PreconditionViolation(format!(
                    "radius {r} must be positive"
                )));
            }
        }
        Ok(Self {
            truncation: coefficients.len().clamp(1, SERIES_TERM_CAP),
            coefficients,
            radius,
            spec: *spec,
        })
    }

    pub fn with_truncation(mut self, truncation: usize) -> Self {
        self.truncation = truncation.max(1);
        self
    }

    pub fn eval(&self, t: Complex64, x: Complex64) -> Result<Complex64> {
        eval_series(self, t, x).map(|v| v.value)
    }
}

pub fn in_convergence_domain(s: &SeriesSolution, t: Complex64, x: Complex64) -> bool {
    match s.radius {
        Radius::Infinite(_) => true,
        Radius::Finite(r) => char_distance(&s.spec, t, x) < r.powi(s.spec.q() as i32) / 4.0,
    }
}

/// Geometric ratio and tail from the last ten terms: the largest magnitude in
/// the last five against the largest in the five before.
fn tail_from_window(mags: &[f64]) -> (f64, f64) {
    let k = mags.len();
    let older = mags[k - 10..k - 5].iter().cloned().fold(0.0, f64::max);
    let newer = mags[k - 5..].iter().cloned().fold(0.0, f64::max);
    if newer == 0.0 {
        return (0.0, 0.0);
    }
    if older == 0.0 {
        return (f64::INFINITY, f64::INFINITY);
    }
    let ratio = (newer / older).powf(0.2);
    if ratio >= 1.0 {
        (ratio, f64::INFINITY)
    } else {
        (ratio, newer * ratio / (1.0 - ratio))
    }
}

pub fn eval_series(s: &SeriesSolution, t: Complex64, x: Complex64) -> Result<SeriesValue> {
    if !in_convergence_domain(s, t, x) {
        let limit = match s.radius {
            Radius::Finite(r) => r.powi(s.spec.q() as i32) / 4.0,
            Radius::Infinite(_) => f64::INFINITY,
        };
        return Err(Error::OutsideDomain {
            distance: char_distance(&s.spec, t, x),
            limit,
        });
    }
    let exact = matches!(s.radius, Radius::Infinite(_)) || s.coefficients.len() <= s.truncation;
    let count = if exact {
        s.coefficients.len()
    } else {
        s.truncation
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mags = Vec::with_capacity(count);
    let mut ratio = 0.0;
    let mut tail = 0.0;
    for (l, &coef) in s.coefficients.iter().take(count).enumerate() {
        let term = if coef == Complex64::new(0.0, 0.0) {
            coef
        } else {
            coef * build_monomial(&s.spec, l as u32)?.eval(t, x)?
        };
        sum += term;
        mags.push(term.norm());
        if !exact && mags.len() >= 10 {
            (ratio, tail) = tail_from_window(&mags);
            if ratio < 1.0 && tail < SERIES_TAIL_TOL * sum.norm() {
                return Ok(SeriesValue {
                    value: sum,
                    tail_estimate: tail,
                    terms_used: l + 1,
                });
            }
        }
    }
    if exact {
        return Ok(SeriesValue {
            value: sum,
            tail_estimate: 0.0,
            terms_used: count,
        });
    }
    if mags.len() < 10 || ratio >= 1.0 {
        return Err(Error::NoConvergence { terms: count });
    }
    Ok(SeriesValue {
        value: sum,
        tail_estimate: tail,
        terms_used: count,
    })
}

/// `t^(1-gamma) V(t, x)` with `V` a monomial solution of `L_(2-gamma) V = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullSolution {
    pub spec: ProblemSpec,
    pub exponent: u32,
    pub v: MonomialSolution,
}

pub fn build_null_solution(spec: &ProblemSpec, l_v: u32) -> Result<NullSolution> {
    spec.validate()?;
    let k = match nonpositive_integer(spec.gamma) {
        Some(k) if k >= 1 => k as u32,
        _ => return Err(Error::NotDegenerate(spec.gamma)),
    };
    let companion = spec.with_gamma(Complex64::new(2.0 + k as f64, 0.0));
    Ok(NullSolution {
        spec: *spec,
        exponent: k + 1,
        v: build_monomial(&companion, l_v)?,
    })
}

impl NullSolution {
    pub fn eval(&self, t: Complex64, x: Complex64) -> Result<Complex64> {
        Ok(t.powi(self.exponent as i32) * self.v.eval(t, x)?)
    }

    /// `u_bar + lambda t^(1-gamma) V`: another solution with the data of `u_bar`.
    pub fn family_value(
        &self,
        u_bar: &MonomialSolution,
        lambda: Complex64,
        t: Complex64,
        x: Complex64,
    ) -> Result<Complex64> {
        Ok(u_bar.eval(t, x)? + lambda * self.eval(t, x)?)
    }
}

/// `((x + t)^l + (x - t)^l) / 2`, the wave-equation solution with data `x^l`.
pub fn dalembert_closed_form(l: u32, t: Complex64, x: Complex64) -> Complex64 {
    0.5 * ((x + t).powi(l as i32) + (x - t).powi(l as i32))
}

/// Checks `F(a, b; c; x) <= Gamma(c) Gamma(a+b-c) / (Gamma(a) Gamma(b)) (1-x)^(c-a-b)`
/// for `a >= b > c > 0`, `0 <= x < 1`, with relative slack `1e-12`.
pub fn majorant_bound_check(a: f64, b: f64, c: f64, x: f64) -> Result<bool> {
    if !(a >= b && b > c && c > 0.0) {
        return Err(Error::PreconditionViolation(format!(
            "need a >= b > c > 0, got ({a}, {b}, {c})"
        )));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::PreconditionViolation(format!("x = {x} outside [0, 1)")));
    }
    let (a, b, c, x) = (
        Complex64::from(a),
        Complex64::from(b),
        Complex64::from(c),
        Complex64::from(x),
    );
    let lhs = ghf_principal(&GhfParams::new(a, b, c)?, x)?.re;
    let constant = gamma(c)? * gamma(a + b - c)? / (gamma(a)? * gamma(b)?);
    let rhs = (constant * one_minus_pow(x, c - a - b)).re;
    Ok(lhs <= rhs * (1.0 + 1e-12))
}

/// `2^(2/q) |x^q - (q/(n+2))^2 t^(n+2)|^(1/q)`, the asymptotic growth bound for
/// `|U_l|^(1/l)`.
pub fn growth_bound(spec: &ProblemSpec, t: Complex64, x: Complex64) -> f64 {
    let q = spec.q() as f64;
    2f64.powf(2.0 / q) * char_distance(spec, t, x).powf(1.0 / q)
}

/// `max |U_l(t, x)|^(1/l)` over `l` in `[l_max/2, l_max]` (and `l >= 1`).
pub fn growth_rate_estimate(
    spec: &ProblemSpec,
    t: Complex64,
    x: Complex64,
    l_max: u32,
) -> Result<f64> {
    if l_max == 0 {
        return Err(Error::PreconditionViolation("l_max must be positive".into()));
    }
    let mut best = 0.0_f64;
    for l in (l_max / 2).max(1)..=l_max {
        let value = build_monomial(spec, l)?.eval(t, x)?;
        best = best.max(value.norm().powf(1.0 / l as f64));
    }
    Ok(best)
}
