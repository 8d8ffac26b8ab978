//! Gauss hypergeometric function `F(a, b; c; z)` on the principal branch.
//!
//! The evaluator picks one representation per point:
//!
//! * `z = 0`, or a terminating series (a or b in `0, -1, -2, ...`): polynomial.
//! * `c - a` or `c - b` in `0, -1, ...`: Pfaff transform, which terminates.
//! * `|z| <= 0.5`: the defining power series.
//! * `|z / (z - 1)| <= 0.5`: Pfaff transform `(1-z)^(-b) F(c-a, b; c; z/(z-1))`.
//! * `|1 - z| < 1`: the connection formula about `z = 1`.
//! * `|1 - z| > 1`: the connection formula about `z = infinity` in `1/(1-z)`.
//!
//! Near `exp(+-i pi/3)` neither connection formula has a convergent inner
//! series. Points there are reached by integrating the hypergeometric ODE
//! from a point where the power series converges fast.

use num_complex::Complex64;

use crate::continuation::{self, BranchContext};
use crate::error::{Error, Result};
use crate::specfun::gamma::{gamma, pochhammer, rgamma};
use crate::{nonpositive_integer, near_integer};

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 10_000;

/// Largest argument modulus accepted by the inner series evaluator before
/// it falls back to ODE continuation.
const INNER_SERIES_LIMIT: f64 = 0.8;

const DISPATCH_SERIES: f64 = 0.5;
const DISPATCH_PFAFF: f64 = 0.5;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `1/Gamma` with arguments within `TAU_INT` of a pole mapped to zero.
fn rgamma_lattice(z: Complex64) -> Complex64 {
    if nonpositive_integer(z).is_some() {
        Complex64::new(0.0, 0.0)
    } else {
        rgamma(z)
    }
}

/// Parameter triple of `F(a, b; c; z)`. `c` is never a non-positive integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhfParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl GhfParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::PreconditionViolation(
                "hypergeometric parameters must be finite".into(),
            ));
        }
        if nonpositive_integer(c).is_some() {
            return Err(Error::DegenerateParams(format!(
                "c = {c} is a non-positive integer"
            )));
        }
        Ok(Self { a, b, c })
    }

    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            c: self.c,
        }
    }

    /// Degree of the polynomial when the series terminates.
    pub fn terminating_degree(&self) -> Option<usize> {
        match (nonpositive_integer(self.a), nonpositive_integer(self.b)) {
            (Some(n), Some(m)) => Some(n.min(m)),
            (Some(n), None) | (None, Some(n)) => Some(n),
            (None, None) => None,
        }
    }
}

/// `A1..A4` of the connection formulas about `z = 1` and `z = infinity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionConstants {
    pub a1: Complex64,
    pub a2: Complex64,
    pub a3: Complex64,
    pub a4: Complex64,
}

/// Values at one point of the two Frobenius solutions about `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalPair {
    pub w1_value: Complex64,
    pub w2_value: Complex64,
}

/// Evaluation route chosen by [`select_route`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Zero,
    Polynomial,
    PfaffPolynomial,
    Series,
    Pfaff,
    KummerOne,
    KummerInfinity,
    Ode,
}

/// `(1 - z)^s` on the principal branch. On the cut `z > 1` the value is the
/// limit from `Im z > 0`, i.e. `arg(1 - z) = -pi`.
pub fn one_minus_pow(z: Complex64, s: Complex64) -> Complex64 {
    let w = one() - z;
    let log = if z.im == 0.0 && z.re > 1.0 {
        Complex64::new(w.norm().ln(), -std::f64::consts::PI)
    } else {
        w.ln()
    };
    (s * log).exp()
}

/// Partial sums of the defining series.
///
/// Terminating series are summed exactly. Otherwise summation stops when two
/// consecutive terms and the geometric tail estimate are all below
/// `tol * |sum|`.
pub fn ghf_series(p: &GhfParams, z: Complex64, tol: f64) -> Result<Complex64> {
    if let Some(n) = p.terminating_degree() {
        return Ok(polynomial(p, z, n));
    }
    let mut term = one();
    let mut sum = one();
    let mut max_term = 1.0_f64;
    let mut small_run = 0;
    for i in 0..MAX_TERMS {
        let k = i as f64;
        let factor = (p.a + k) * (p.b + k) / ((p.c + k) * (k + 1.0));
        term *= factor * z;
        sum += term;
        let mag = term.norm();
        max_term = max_term.max(mag);
        let reference = sum.norm().max(max_term * f64::EPSILON);
        if mag <= tol * reference {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 2 {
            let k1 = k + 1.0;
            let ratio = ((p.a + k1) * (p.b + k1) / ((p.c + k1) * (k1 + 1.0)) * z).norm();
            if ratio < 1.0 && mag * ratio / (1.0 - ratio) <= tol * reference {
                return Ok(sum);
            }
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(Error::NoConvergence { terms: MAX_TERMS })
}

fn polynomial(p: &GhfParams, z: Complex64, degree: usize) -> Complex64 {
    // Snap the terminating parameter onto the lattice so the top
    // coefficient cancels exactly.
    let snap = |v: Complex64| match nonpositive_integer(v) {
        Some(n) => Complex64::new(-(n as f64), 0.0),
        None => v,
    };
    let (a, b) = (snap(p.a), snap(p.b));
    let mut term = one();
    let mut sum = one();
    for i in 0..degree {
        let k = i as f64;
        term *= (a + k) * (b + k) / ((p.c + k) * (k + 1.0)) * z;
        sum += term;
    }
    sum
}

/// Pfaff route: `(1-z)^(-b) F(c-a, b; c; z/(z-1))` with the inner series
/// summed directly.
pub fn ghf_pfaff(p: &GhfParams, z: Complex64) -> Result<Complex64> {
    let inner = GhfParams::new(p.c - p.a, p.b, p.c)?;
    let w = z / (z - 1.0);
    Ok(one_minus_pow(z, -p.b) * ghf_series(&inner, w, f64::EPSILON)?)
}

fn pfaff_polynomial(p: &GhfParams, z: Complex64) -> Option<Result<Complex64>> {
    let w = z / (z - 1.0);
    if nonpositive_integer(p.c - p.a).is_some() {
        let inner = GhfParams {
            a: p.c - p.a,
            b: p.b,
            c: p.c,
        };
        return Some(ghf_series(&inner, w, f64::EPSILON).map(|v| one_minus_pow(z, -p.b) * v));
    }
    if nonpositive_integer(p.c - p.b).is_some() {
        let inner = GhfParams {
            a: p.a,
            b: p.c - p.b,
            c: p.c,
        };
        return Some(ghf_series(&inner, w, f64::EPSILON).map(|v| one_minus_pow(z, -p.a) * v));
    }
    None
}

/// Constants `A1`, `A2` of the expansion about `z = 1`.
pub fn kummer_one_constants(p: &GhfParams) -> Result<(Complex64, Complex64)> {
    let s = p.c - p.a - p.b;
    if near_integer(s).is_some() {
        return Err(Error::DegenerateParams(format!(
            "A1/A2 need c - a - b = {s} off the integers"
        )));
    }
    let gc = gamma(p.c)?;
    let a1 = gc * gamma(s)? * rgamma_lattice(p.c - p.a) * rgamma_lattice(p.c - p.b);
    let a2 = gc * gamma(-s)? * rgamma_lattice(p.a) * rgamma_lattice(p.b);
    Ok((a1, a2))
}

/// Constants `A3`, `A4` of the expansion about `z = infinity`.
pub fn kummer_infinity_constants(p: &GhfParams) -> Result<(Complex64, Complex64)> {
    let d = p.b - p.a;
    if near_integer(d).is_some() {
        return Err(Error::DegenerateParams(format!(
            "A3/A4 need a - b = {} off the integers",
            -d
        )));
    }
    let gc = gamma(p.c)?;
    let a3 = gc * gamma(d)? * rgamma_lattice(p.b) * rgamma_lattice(p.c - p.a);
    let a4 = gc * gamma(-d)? * rgamma_lattice(p.a) * rgamma_lattice(p.c - p.b);
    Ok((a3, a4))
}

pub fn connection_constants(p: &GhfParams) -> Result<ConnectionConstants> {
    let (a1, a2) = kummer_one_constants(p)?;
    let (a3, a4) = kummer_infinity_constants(p)?;
    Ok(ConnectionConstants { a1, a2, a3, a4 })
}

/// The two local solutions about `z = 1`, principal branch:
/// `F(a, b; a+b-c+1; 1-z)` and `(1-z)^(c-a-b) F(c-a, c-b; c-a-b+1; 1-z)`.
pub fn kummer_one_basis(p: &GhfParams, z: Complex64) -> Result<[Complex64; 2]> {
    let s = p.c - p.a - p.b;
    let w = one() - z;
    let f1 = inner_eval(&GhfParams::new(p.a, p.b, 1.0 - s)?, w)?;
    let f2 = one_minus_pow(z, s) * inner_eval(&GhfParams::new(p.c - p.a, p.c - p.b, 1.0 + s)?, w)?;
    Ok([f1, f2])
}

/// The two local solutions about `z = infinity`, principal branch:
/// `(1-z)^(-a) F(a, c-b; a-b+1; 1/(1-z))` and the same with `a <-> b`.
pub fn kummer_infinity_basis(p: &GhfParams, z: Complex64) -> Result<[Complex64; 2]> {
    let u = one() / (one() - z);
    let d = p.a - p.b;
    let g3 = one_minus_pow(z, -p.a) * inner_eval(&GhfParams::new(p.a, p.c - p.b, 1.0 + d)?, u)?;
    let g4 = one_minus_pow(z, -p.b) * inner_eval(&GhfParams::new(p.b, p.c - p.a, 1.0 - d)?, u)?;
    Ok([g3, g4])
}

/// Connection formula about `z = 1`.
pub fn ghf_kummer_one(p: &GhfParams, z: Complex64) -> Result<Complex64> {
    let (a1, a2) = kummer_one_constants(p)?;
    let s = p.c - p.a - p.b;
    let w = one() - z;
    let mut value = Complex64::new(0.0, 0.0);
    if a1 != Complex64::new(0.0, 0.0) {
        value += a1 * inner_eval(&GhfParams::new(p.a, p.b, 1.0 - s)?, w)?;
    }
    if a2 != Complex64::new(0.0, 0.0) {
        value += a2
            * one_minus_pow(z, s)
            * inner_eval(&GhfParams::new(p.c - p.a, p.c - p.b, 1.0 + s)?, w)?;
    }
    Ok(value)
}

/// Connection formula about `z = infinity`.
pub fn ghf_kummer_infinity(p: &GhfParams, z: Complex64) -> Result<Complex64> {
    let (a3, a4) = kummer_infinity_constants(p)?;
    let u = one() / (one() - z);
    let d = p.a - p.b;
    let mut value = Complex64::new(0.0, 0.0);
    if a3 != Complex64::new(0.0, 0.0) {
        value += a3
            * one_minus_pow(z, -p.a)
            * inner_eval(&GhfParams::new(p.a, p.c - p.b, 1.0 + d)?, u)?;
    }
    if a4 != Complex64::new(0.0, 0.0) {
        value += a4
            * one_minus_pow(z, -p.b)
            * inner_eval(&GhfParams::new(p.b, p.c - p.a, 1.0 - d)?, u)?;
    }
    Ok(value)
}

/// Series-only evaluator used for the inner functions of the connection
/// formulas. Never recurses into a connection formula.
fn inner_eval(p: &GhfParams, w: Complex64) -> Result<Complex64> {
    if w == Complex64::new(0.0, 0.0) {
        return Ok(one());
    }
    if let Some(n) = p.terminating_degree() {
        return Ok(polynomial(p, w, n));
    }
    if let Some(v) = pfaff_polynomial(p, w) {
        return v;
    }
    let direct = w.norm();
    let pfaff = (w / (w - 1.0)).norm();
    if direct.min(pfaff) <= INNER_SERIES_LIMIT {
        if direct <= pfaff {
            ghf_series(p, w, f64::EPSILON)
        } else {
            ghf_pfaff(p, w)
        }
    } else if w.norm() < 2.0 {
        ode_principal(p, w)
    } else {
        ghf_principal(p, w)
    }
}

/// Principal value reached by integrating the ODE radially outward from a
/// point with `|z| = 0.5`.
fn ode_principal(p: &GhfParams, z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::PreconditionViolation(format!(
            "z = {z} lies on the branch cut"
        )));
    }
    let start = z * (DISPATCH_SERIES / z.norm());
    let w0 = ghf_series(p, start, f64::EPSILON)?;
    let dw0 = series_derivative(p, start)?;
    let (w, _) = continuation::integrate_polyline(p, &[start, z], w0, dw0)?;
    Ok(w)
}

fn series_derivative(p: &GhfParams, z: Complex64) -> Result<Complex64> {
    let shifted = GhfParams::new(p.a + 1.0, p.b + 1.0, p.c + 1.0)?;
    Ok(p.a * p.b / p.c * ghf_series(&shifted, z, f64::EPSILON)?)
}

/// `F(a, b; c; 1)`: finite for polynomials and when `Re(c - a - b) > 0`.
fn gauss_sum(p: &GhfParams) -> Result<Complex64> {
    if let Some(n) = p.terminating_degree() {
        return Ok(polynomial(p, one(), n));
    }
    let s = p.c - p.a - p.b;
    if s.re <= 0.0 {
        return Err(Error::PreconditionViolation(
            "z = 1 is a singular point".into(),
        ));
    }
    Ok(gamma(p.c)? * gamma(s)? * rgamma_lattice(p.c - p.a) * rgamma_lattice(p.c - p.b))
}

/// The representation [`ghf_principal`] uses at `z`.
pub fn select_route(p: &GhfParams, z: Complex64) -> Route {
    if z == Complex64::new(0.0, 0.0) {
        return Route::Zero;
    }
    if p.terminating_degree().is_some() {
        return Route::Polynomial;
    }
    if nonpositive_integer(p.c - p.a).is_some() || nonpositive_integer(p.c - p.b).is_some() {
        return Route::PfaffPolynomial;
    }
    if z.norm() <= DISPATCH_SERIES {
        return Route::Series;
    }
    if (z / (z - 1.0)).norm() <= DISPATCH_PFAFF {
        return Route::Pfaff;
    }
    let one_minus = (one() - z).norm();
    let r_one = one_minus.min(one_minus / z.norm());
    let r_inf = (1.0 / one_minus).min(1.0 / z.norm());
    let (preferred, preferred_r, other, other_r) = if one_minus < 1.0 {
        (Route::KummerOne, r_one, Route::KummerInfinity, r_inf)
    } else {
        (Route::KummerInfinity, r_inf, Route::KummerOne, r_one)
    };
    if preferred_r <= INNER_SERIES_LIMIT {
        preferred
    } else if other_r <= INNER_SERIES_LIMIT {
        other
    } else {
        Route::Ode
    }
}

/// `F(a, b; c; z)` on the principal branch `|arg(1 - z)| < pi`.
pub fn ghf_principal(p: &GhfParams, z: Complex64) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::PreconditionViolation(format!("z = {z} is not finite")));
    }
    if z == one() {
        return gauss_sum(p);
    }
    match select_route(p, z) {
        Route::Zero => Ok(one()),
        Route::Polynomial => Ok(polynomial(p, z, p.terminating_degree().unwrap_or(0))),
        Route::PfaffPolynomial => pfaff_polynomial(p, z).unwrap_or_else(|| ghf_pfaff(p, z)),
        Route::Series => ghf_series(p, z, f64::EPSILON),
        Route::Pfaff => ghf_pfaff(p, z),
        Route::KummerOne => ghf_kummer_one(p, z),
        Route::KummerInfinity => ghf_kummer_infinity(p, z),
        Route::Ode => ode_principal(p, z),
    }
}

/// `F(a, b; c; z)` on the branch selected by `branch`; the empty loop word
/// is the principal branch.
pub fn ghf_eval(p: &GhfParams, z: Complex64, branch: &BranchContext) -> Result<Complex64> {
    if branch.is_principal() {
        ghf_principal(p, z)
    } else {
        continuation::branch_value(p, z, branch)
    }
}

/// `d/dz F(a, b; c; z) = (ab/c) F(a+1, b+1; c+1; z)`, principal branch.
pub fn ghf_derivative(p: &GhfParams, z: Complex64) -> Result<Complex64> {
    let shifted = GhfParams::new(p.a + 1.0, p.b + 1.0, p.c + 1.0)?;
    Ok(p.a * p.b / p.c * ghf_principal(&shifted, z)?)
}

/// `w1 = F(a, b; c; z)` and `w2 = z^(1-c) F(1-c+a, 1-c+b; 2-c; z)`.
pub fn fundamental_pair(p: &GhfParams, z: Complex64) -> Result<FundamentalPair> {
    if near_integer(p.c).is_some() {
        return Err(Error::DegenerateParams(format!(
            "c = {} is an integer; the second solution is logarithmic",
            p.c
        )));
    }
    let w1_value = ghf_principal(p, z)?;
    let second = GhfParams::new(1.0 - p.c + p.a, 1.0 - p.c + p.b, 2.0 - p.c)?;
    let w2_value = principal_pow(z, one() - p.c) * ghf_principal(&second, z)?;
    Ok(FundamentalPair { w1_value, w2_value })
}

/// `base^s` with the principal logarithm; `0^s = 0`.
pub fn principal_pow(base: Complex64, s: Complex64) -> Complex64 {
    if base == Complex64::new(0.0, 0.0) {
        return Complex64::new(0.0, 0.0);
    }
    (s * base.ln()).exp()
}

/// Residual of `F(a, a+1/2; 1/2; z^2) = ((1+z)^(-2a) + (1-z)^(-2a)) / 2`.
pub fn dalembert_identity_check(a: Complex64, z: Complex64) -> Result<f64> {
    if z.norm() >= 1.0 {
        return Err(Error::PreconditionViolation(format!("|z| = {} >= 1", z.norm())));
    }
    let p = GhfParams::new(a, a + 0.5, Complex64::new(0.5, 0.0))?;
    let lhs = ghf_principal(&p, z * z)?;
    let rhs = 0.5 * (principal_pow(one() + z, -2.0 * a) + principal_pow(one() - z, -2.0 * a));
    Ok((lhs - rhs).norm())
}

/// `(a)_i (b)_i / ((c)_i i!)`, the `i`-th series coefficient.
pub fn series_coefficient(p: &GhfParams, i: usize) -> Complex64 {
    let fact: f64 = (1..=i).map(|k| k as f64).product();
    pochhammer(p.a, i) * pochhammer(p.b, i) / (pochhammer(p.c, i) * fact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn value_at_origin_is_one() {
        let p = GhfParams::new(Complex64::new(0.3, 1.0), c(-2.2), c(1.7)).unwrap();
        assert_eq!(ghf_principal(&p, c(0.0)).unwrap(), c(1.0));
        assert_eq!(ghf_series(&p, c(0.0), 1e-16).unwrap(), c(1.0));
    }

    #[test]
    fn two_term_terminating_series() {
        // F(-1, -1/2; 7/9; z) = 1 + (9/14) z
        let p = GhfParams::real(-1.0, -0.5, 7.0 / 9.0).unwrap();
        for &z in &[c(0.3), c(-7.0), Complex64::new(4.0, 3.0)] {
            let expected = 1.0 + z * (9.0 / 14.0);
            assert!(rel(ghf_series(&p, z, 1e-16).unwrap(), expected) < 1e-15);
            assert!(rel(ghf_principal(&p, z).unwrap(), expected) < 1e-15);
        }
    }

    #[test]
    fn binomial_case() {
        // F(a, b; b; z) = (1 - z)^(-a); direct 200-term partial sum as oracle
        let p = GhfParams::real(-1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap();
        let z = 0.5;
        let mut term = 1.0;
        let mut oracle = 1.0;
        for i in 0..200 {
            let k = i as f64;
            term *= (-1.0 / 3.0 + k) / (k + 1.0) * z;
            oracle += term;
        }
        assert!((oracle - 0.5f64.powf(1.0 / 3.0)).abs() < 1e-15);
        let v = ghf_series(&p, c(z), 1e-16).unwrap();
        assert!((v.re - 0.793_700_525_984_099_7).abs() < 1e-14);
        assert!((v.re - oracle).abs() < 1e-14);
    }

    #[test]
    fn pole_in_c_rejected() {
        assert!(matches!(
            GhfParams::real(0.5, 0.25, -2.0),
            Err(Error::DegenerateParams(_))
        ));
        assert!(GhfParams::real(0.5, 0.25, 2.0).is_ok());
    }

    #[test]
    fn no_convergence_outside_disk() {
        let p = GhfParams::real(0.3, 0.4, 0.6).unwrap();
        assert!(matches!(
            ghf_series(&p, c(1.5), 1e-16),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn routes_cover_the_plane() {
        let p = GhfParams::real(-1.0 / 3.0, 0.45, 7.0 / 9.0).unwrap();
        assert_eq!(select_route(&p, c(0.2)), Route::Series);
        assert_eq!(select_route(&p, c(-0.8)), Route::Pfaff);
        assert_eq!(select_route(&p, c(0.9)), Route::KummerOne);
        assert_eq!(select_route(&p, c(-3.0)), Route::KummerInfinity);
        let pocket = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        assert_eq!(select_route(&p, pocket), Route::Ode);
    }

    #[test]
    fn kummer_one_against_slow_series() {
        let p = GhfParams::real(-1.0 / 3.0, 1.0 / 3.0, 7.0 / 9.0).unwrap();
        let slow = ghf_series(&p, c(0.9), 1e-17).unwrap();
        let fast = ghf_kummer_one(&p, c(0.9)).unwrap();
        assert!(rel(fast, slow) < 1e-8);
    }

    #[test]
    fn kummer_infinity_against_pfaff() {
        let p = GhfParams::real(-1.0 / 3.0, 1.0 / 3.0, 7.0 / 9.0).unwrap();
        let z = c(-3.0);
        assert!(((z / (z - 1.0)).norm() - 0.75).abs() < 1e-15);
        let pf = ghf_pfaff(&p, z).unwrap();
        let inf = ghf_kummer_infinity(&p, z).unwrap();
        assert!(rel(inf, pf) < 1e-8);
    }

    #[test]
    fn constants_worked_examples() {
        let (a3, a4) = kummer_infinity_constants(&GhfParams::real(-1.0, -0.5, 0.5).unwrap()).unwrap();
        assert!((a3 - c(-1.0)).norm() < 1e-13);
        let (b3, b4) = kummer_infinity_constants(&GhfParams::real(-0.5, -1.0, 0.5).unwrap()).unwrap();
        assert!((a3 - b4).norm() < 1e-14 && (a4 - b3).norm() < 1e-14);
        let (a1, a2) = kummer_one_constants(&GhfParams::real(-1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap()).unwrap();
        assert_eq!(a1, c(0.0));
        assert!((a2 - c(1.0)).norm() < 1e-13);
        // c - a - b = 2 for the wave case l = 2
        let wave = GhfParams::real(-1.0, -0.5, 0.5).unwrap();
        assert!(matches!(kummer_one_constants(&wave), Err(Error::DegenerateParams(_))));
        assert!(matches!(connection_constants(&wave), Err(Error::DegenerateParams(_))));
    }

    #[test]
    fn cut_is_approached_from_above() {
        let p = GhfParams::real(0.3, 0.55, 1.2).unwrap();
        let on_cut = ghf_principal(&p, c(2.5)).unwrap();
        let above = ghf_principal(&p, Complex64::new(2.5, 1e-9)).unwrap();
        let below = ghf_principal(&p, Complex64::new(2.5, -1e-9)).unwrap();
        assert!(rel(on_cut, above) < 1e-7);
        assert!(rel(on_cut, below) > 1e-3);
    }

    #[test]
    fn pocket_points_continuous_with_neighbours() {
        let p = GhfParams::new(Complex64::new(0.2, 0.3), c(-0.7), c(1.35)).unwrap();
        let z = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let via_ode = ghf_principal(&p, z).unwrap();
        let near = z * 0.999;
        assert!(rel(ghf_principal(&p, near).unwrap(), via_ode) < 5e-3);
        let via_inf = ghf_kummer_infinity(&p, z).unwrap();
        assert!(rel(via_inf, via_ode) < 1e-8, "{via_inf} vs {via_ode}");
    }

    #[test]
    fn dalembert_identity_cases() {
        assert!(dalembert_identity_check(c(-1.0), c(0.3)).unwrap() < 1e-15);
        assert!(dalembert_identity_check(c(0.25), c(0.5)).unwrap() < 1e-10);
        assert!(dalembert_identity_check(c(-0.5), Complex64::new(0.2, 0.4)).unwrap() < 1e-15);
    }

    #[test]
    fn fundamental_pair_near_origin() {
        let p = GhfParams::real(0.3, -0.4, 0.35).unwrap();
        let z = c(1e-6);
        let pair = fundamental_pair(&p, z).unwrap();
        assert!((pair.w1_value - 1.0).norm() < 1e-6);
        let leading = z.powf(1.0 - 0.35);
        assert!(rel(pair.w2_value, leading) < 1e-5);
        assert!(fundamental_pair(&GhfParams::real(0.3, 0.4, 2.0).unwrap(), z).is_err());
    }
}
