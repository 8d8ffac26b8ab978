//! Residual oracle: applies the operator to any evaluatable `u(t, x)` with
//! derivatives from Cauchy integrals on small circles.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::{char_map, ProblemSpec};
use crate::solution::{MonomialSolution, NullSolution, SeriesSolution};

/// Nodes of the base trapezoidal rule; the check uses twice as many.
pub const CONTOUR_NODES: usize = 32;
/// Agreement required between the base rule and the doubled rule.
pub const NODE_AGREEMENT: f64 = 1e-8;
const MAX_RADIUS: f64 = 0.1;
/// Time at which Cauchy data are compared.
pub const CAUCHY_T: f64 = 1e-4;
/// Contour radius for `u_t` at `t = 0`.
pub const CAUCHY_RADIUS: f64 = 1e-3;

/// Something that can be evaluated at `(t, x)`.
pub trait Evaluatable {
    fn value(&self, t: Complex64, x: Complex64) -> Result<Complex64>;
}

impl<F> Evaluatable for F
where
    F: Fn(Complex64, Complex64) -> Result<Complex64>,
{
    fn value(&self, t: Complex64, x: Complex64) -> Result<Complex64> {
        self(t, x)
    }
}

impl Evaluatable for MonomialSolution {
    fn value(&self, t: Complex64, x: Complex64) -> Result<Complex64> {
        self.eval(t, x)
    }
}

impl Evaluatable for SeriesSolution {
    fn value(&self, t: Complex64, x: Complex64) -> Result<Complex64> {
        self.eval(t, x)
    }
}

impl Evaluatable for NullSolution {
    fn value(&self, t: Complex64, x: Complex64) -> Result<Complex64> {
        self.eval(t, x)
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Derivatives of orders `0..=max_order` at `z0` from samples on the circle
/// of the given radius.
fn contour_derivatives<F>(f: F, z0: Complex64, radius: f64, max_order: usize) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::SingularityTooClose(format!(
            "contour radius {radius} is not positive"
        )));
    }
    let n = 2 * CONTOUR_NODES;
    let mut samples = Vec::with_capacity(n);
    for j in 0..n {
        let node = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64);
        let v = f(z0 + radius * node).map_err(|e| {
            Error::SingularityTooClose(format!("sample at radius {radius} failed: {e}"))
        })?;
        samples.push(v);
    }
    let fmax = samples.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut out = Vec::with_capacity(max_order + 1);
    for k in 0..=max_order {
        let weight = factorial(k) / radius.powi(k as i32);
        let rule = |stride: usize| -> Complex64 {
            let m = n / stride;
            let sum: Complex64 = (0..m)
                .map(|i| {
                    let j = i * stride;
                    samples[j] * Complex64::from_polar(1.0, -2.0 * PI * (k * j) as f64 / n as f64)
                })
                .sum();
            sum * (weight / m as f64)
        };
        let coarse = rule(2);
        let fine = rule(1);
        let reference = (fmax * weight).max(f64::MIN_POSITIVE);
        out.push(if (coarse - fine).norm() <= NODE_AGREEMENT * reference {
            coarse
        } else {
            fine
        });
    }
    Ok(out)
}

/// `order`-th derivative of `f` at `z0` by the trapezoidal rule on a circle.
pub fn contour_derivative<F>(f: F, z0: Complex64, order: usize, radius: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(1..=2).contains(&order) {
        return Err(Error::PreconditionViolation(format!(
            "derivative order {order} not in 1..=2"
        )));
    }
    Ok(contour_derivatives(f, z0, radius, order)?[order])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    pub t: Complex64,
    pub x: Complex64,
    pub residual: Complex64,
    /// Largest magnitude among the operator's individual terms.
    pub scale: f64,
    pub relative: f64,
    pub radius_t: f64,
    pub radius_x: f64,
}

fn min_root_distance(v: Complex64, rhs: Complex64, degree: u32) -> f64 {
    if rhs == Complex64::new(0.0, 0.0) {
        return v.norm();
    }
    let base = rhs.powf(1.0 / degree as f64);
    (0..degree)
        .map(|j| {
            let root = base * Complex64::from_polar(1.0, 2.0 * PI * j as f64 / degree as f64);
            (v - root).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

fn cut_distance(z: Complex64) -> f64 {
    if z.re >= 1.0 {
        z.im.abs()
    } else {
        (z - 1.0).norm()
    }
}

/// Contour radii in `t` and `x` keeping both circles clear of `t = 0`,
/// `x = 0`, the curve `K2` and the preimage of the cut `[1, inf)`.
pub fn contour_radii(spec: &ProblemSpec, t: Complex64, x: Complex64) -> Result<(f64, f64)> {
    let map = char_map(spec);
    let z0 = map.eval(t, x)?;
    let te = map.t_exponent;
    let xe = map.x_exponent;
    let d_t = min_root_distance(t, x.powi(xe as i32) / map.coefficient, te);
    let d_x = min_root_distance(x, map.coefficient * t.powi(te as i32), xe);
    let mut r_t = MAX_RADIUS.min(0.5 * t.norm()).min(0.25 * d_t);
    let mut r_x = MAX_RADIUS.min(0.5 * x.norm()).min(0.25 * d_x);
    if z0.norm() > 0.0 {
        let growth = 1.0 + cut_distance(z0) / (2.0 * z0.norm());
        r_t = r_t.min(t.norm() * (growth.powf(1.0 / te as f64) - 1.0));
        r_x = r_x.min(x.norm() * (1.0 - growth.powf(-1.0 / xe as f64)));
    }
    if !(r_t > 0.0 && r_x > 0.0) {
        return Err(Error::SingularityTooClose(format!(
            "no admissible contour at (t, x) = ({t}, {x})"
        )));
    }
    Ok((r_t, r_x))
}

/// `x^m (u_tt + (gamma/t) u_t) - t^n x^(p-2) (x^2 u_xx + A x u_x + B u)` at
/// `(t, x)`.
pub fn residual<U: Evaluatable + ?Sized>(
    u: &U,
    spec: &ProblemSpec,
    t: Complex64,
    x: Complex64,
) -> Result<ResidualReport> {
    if t.norm() == 0.0 || x.norm() == 0.0 {
        return Err(Error::SingularityTooClose("t and x must be nonzero".into()));
    }
    let (r_t, r_x) = contour_radii(spec, t, x)?;
    let dt = contour_derivatives(|s| u.value(s, x), t, r_t, 2)?;
    let dx = contour_derivatives(|s| u.value(t, s), x, r_x, 2)?;
    let value = u.value(t, x)?;
    let xm = x.powi(spec.m as i32);
    let tn = t.powi(spec.n as i32);
    let xp = x.powi(spec.p as i32 - 2);
    let terms = [
        xm * dt[2],
        xm * spec.gamma / t * dt[1],
        -tn * xp * x * x * dx[2],
        -tn * xp * spec.coef_a * x * dx[1],
        -tn * xp * spec.coef_b * value,
    ];
    let residual: Complex64 = terms.iter().sum();
    let scale = terms.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let relative = if scale > 0.0 {
        residual.norm() / scale
    } else {
        0.0
    };
    Ok(ResidualReport {
        t,
        x,
        residual,
        scale,
        relative,
        radius_t: r_t,
        radius_x: r_x,
    })
}

/// Largest of `|u(1e-4, x) - x^l|` and `|u_t(0, x)|` over the samples.
pub fn cauchy_data_check<U: Evaluatable + ?Sized>(u: &U, l: u32, x_samples: &[Complex64]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &x in x_samples {
        let datum = x.powi(l as i32);
        let value = u.value(Complex64::new(CAUCHY_T, 0.0), x)?;
        let ut = contour_derivative(|s| u.value(s, x), Complex64::new(0.0, 0.0), 1, CAUCHY_RADIUS)?;
        worst = worst.max((value - datum).norm()).max(ut.norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::{build_monomial, build_null_solution};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn cubic_spec() -> ProblemSpec {
        ProblemSpec::new(4, 1, 3, c(1.0 / 3.0), c(-0.5), c(0.0)).unwrap()
    }

    #[test]
    fn polynomial_derivatives() {
        let d = contour_derivative(|z| Ok(z * z * z), c(1.0), 2, 0.1).unwrap();
        assert!((d - 6.0).norm() < 1e-12);
        let d = contour_derivative(|_| Ok(c(4.2)), c(1.0), 1, 0.1).unwrap();
        assert!(d.norm() < 1e-14);
        assert!(contour_derivative(Ok, c(0.0), 3, 0.1).is_err());
    }

    #[test]
    fn cube_root_derivative() {
        let d = contour_derivative(|z: Complex64| Ok((1.0 - z).powf(1.0 / 3.0)), c(0.5), 1, 0.1).unwrap();
        let expected = -(1.0 / 3.0) * 0.5f64.powf(-2.0 / 3.0);
        assert!((d - expected).norm() < 1e-12);
    }

    #[test]
    fn residual_selects_coefficient() {
        let spec = cubic_spec();
        let good = |t: Complex64, x: Complex64| Ok(x.powi(3) + 9.0 / 14.0 * t.powi(3));
        let bad = |t: Complex64, x: Complex64| Ok(x.powi(3) + 2.0 / 7.0 * t.powi(3));
        let wrong = |t: Complex64, x: Complex64| Ok(x * x + t.powi(3));
        let (t, x) = (c(0.4), Complex64::new(1.2, 0.3));
        assert!(residual(&good, &spec, t, x).unwrap().relative < 1e-10);
        assert!(residual(&bad, &spec, t, x).unwrap().relative > 1e-2);
        assert!(residual(&wrong, &spec, t, x).unwrap().relative > 1e-2);
    }

    #[test]
    fn null_solution_residual() {
        let spec = ProblemSpec::new(4, 1, 3, c(-1.0), c(-1.0), c(0.0)).unwrap();
        let null = build_null_solution(&spec, 0).unwrap();
        let r = residual(&null, &spec, Complex64::new(0.3, 0.2), c(1.1)).unwrap();
        assert!(r.relative < 1e-12, "{}", r.relative);
    }

    #[test]
    fn monomial_residual_and_data() {
        let spec = ProblemSpec::new(3, 0, 2, c(-1.0 / 3.0), c(-1.0), c(0.0)).unwrap();
        let u = build_monomial(&spec, 1).unwrap();
        let r = residual(&u, &spec, c(0.2), Complex64::new(0.9, 0.1)).unwrap();
        assert!(r.relative < 1e-9);
        let samples = [c(1.0), Complex64::new(0.0, 1.0), c(-1.0)];
        assert!(cauchy_data_check(&u, 1, &samples).unwrap() < 1e-8);
        let corrupted = |t: Complex64, x: Complex64| Ok(u.eval(t, x)? + t);
        assert!(cauchy_data_check(&corrupted, 1, &samples).unwrap() >= 1e-4);
    }

    #[test]
    fn radii_shrink_near_k2() {
        let spec = ProblemSpec::wave();
        let (rt, rx) = contour_radii(&spec, c(0.99), c(1.0)).unwrap();
        assert!(rt <= 0.0025 + 1e-15 && rx <= 0.0025 + 1e-15);
        assert!(contour_radii(&spec, c(1.5), c(1.0)).is_err());
    }
}
