//! The operator `L_gamma`, its reduction to the hypergeometric equation, and
//! the characteristic map `z(t, x)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::GhfParams;
use crate::{near_integer, nonpositive_integer};

/// Coefficients of
/// `x^m (d_t^2 + (gamma/t) d_t) u - t^n x^(p-2) (x^2 d_x^2 + A x d_x + B) u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub m: u32,
    pub n: u32,
    pub p: u32,
    pub gamma: Complex64,
    #[serde(rename = "A")]
    pub coef_a: Complex64,
    #[serde(rename = "B")]
    pub coef_b: Complex64,
}

impl ProblemSpec {
    pub fn new(
        m: u32,
        n: u32,
        p: u32,
        gamma: Complex64,
        coef_a: Complex64,
        coef_b: Complex64,
    ) -> Result<Self> {
        let spec = Self {
            m,
            n,
            p,
            gamma,
            coef_a,
            coef_b,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks `q = m - p + 2 > 0` and finiteness. Deserialized specs must be
    /// validated before use.
    pub fn validate(&self) -> Result<()> {
        if self.m as i64 - self.p as i64 + 2 <= 0 {
            return Err(Error::InvalidSpec(format!(
                "q = m - p + 2 = {} must be positive",
                self.m as i64 - self.p as i64 + 2
            )));
        }
        if !(self.gamma.is_finite() && self.coef_a.is_finite() && self.coef_b.is_finite()) {
            return Err(Error::InvalidSpec("coefficients must be finite".into()));
        }
        Ok(())
    }

    pub fn q(&self) -> u32 {
        self.m + 2 - self.p
    }

    /// Same operator with `gamma` replaced.
    pub fn with_gamma(&self, gamma: Complex64) -> Self {
        Self { gamma, ..*self }
    }

    /// The Euler-Poisson-Darboux case `A = B = n = 0`, `m = p`.
    pub fn epd(m: u32, gamma: f64) -> Self {
        Self {
            m,
            n: 0,
            p: m,
            gamma: gamma.into(),
            coef_a: 0.0.into(),
            coef_b: 0.0.into(),
        }
    }

    /// The wave equation `u_tt = u_xx`.
    pub fn wave() -> Self {
        Self::epd(2, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootChoice {
    #[default]
    Plus,
    Minus,
}

/// Parameters of the reduced hypergeometric equation for `u = x^l w(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub q: u32,
    pub alpha_plus: Complex64,
    pub alpha_minus: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub l: u32,
    pub root_choice: RootChoice,
}

impl DerivedParams {
    pub fn alpha(&self) -> Complex64 {
        match self.root_choice {
            RootChoice::Plus => self.alpha_plus,
            RootChoice::Minus => self.alpha_minus,
        }
    }

    pub fn ghf(&self) -> Result<GhfParams> {
        GhfParams::new(self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyFlags {
    pub gamma_negative_integer: bool,
    pub c_integer: bool,
    pub cab_integer: bool,
    pub ab_integer: bool,
}

/// `z = coefficient * t^t_exponent / x^x_exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharMap {
    pub coefficient: f64,
    pub t_exponent: u32,
    pub x_exponent: u32,
}

/// Roots of `rho^2 + (1 - A) rho + B = 0` as `(plus, minus)`, where `plus`
/// carries `+sqrt` of the principal square root of the discriminant.
pub fn alpha_roots(coef_a: Complex64, coef_b: Complex64) -> (Complex64, Complex64) {
    let beta = coef_a - 1.0;
    let disc = (beta * beta - 4.0 * coef_b).sqrt();
    let plus_big = (beta + disc).norm() >= (beta - disc).norm();
    let big = if plus_big { beta + disc } else { beta - disc } * 0.5;
    let small = if big == Complex64::new(0.0, 0.0) {
        big
    } else {
        coef_b / big
    };
    if plus_big {
        (big, small)
    } else {
        (small, big)
    }
}

pub fn derive_params(spec: &ProblemSpec, l: u32, root: RootChoice) -> DerivedParams {
    let q = spec.q();
    let qf = q as f64;
    let lf = l as f64;
    let (alpha_plus, alpha_minus) = alpha_roots(spec.coef_a, spec.coef_b);
    let alpha = match root {
        RootChoice::Plus => alpha_plus,
        RootChoice::Minus => alpha_minus,
    };
    let n2 = (spec.n + 2) as f64;
    DerivedParams {
        q,
        alpha_plus,
        alpha_minus,
        a: -(alpha + lf) / qf,
        b: (1.0 + alpha - spec.coef_a - lf) / qf,
        c: (spec.gamma + spec.n as f64 + 1.0) / n2,
        l,
        root_choice: root,
    }
}

pub fn char_map(spec: &ProblemSpec) -> CharMap {
    let q = spec.q();
    let ratio = q as f64 / (spec.n + 2) as f64;
    CharMap {
        coefficient: ratio * ratio,
        t_exponent: spec.n + 2,
        x_exponent: q,
    }
}

impl CharMap {
    pub fn eval(&self, t: Complex64, x: Complex64) -> Result<Complex64> {
        eval_z(self, t, x)
    }

    /// The principal-root `t` with `z(t, x) = z`.
    pub fn solve_t(&self, z: Complex64, x: Complex64) -> Complex64 {
        let rhs = z * x.powi(self.x_exponent as i32) / self.coefficient;
        if rhs == Complex64::new(0.0, 0.0) {
            return rhs;
        }
        rhs.powf(1.0 / self.t_exponent as f64)
    }
}

pub fn eval_z(map: &CharMap, t: Complex64, x: Complex64) -> Result<Complex64> {
    if x.norm() < 1e-300 {
        return Err(Error::DivisionByZero("z(t, x) is undefined at x = 0".into()));
    }
    Ok(map.coefficient * t.powi(map.t_exponent as i32) / x.powi(map.x_exponent as i32))
}

pub fn degeneracy_flags(spec: &ProblemSpec, dp: &DerivedParams) -> DegeneracyFlags {
    DegeneracyFlags {
        gamma_negative_integer: nonpositive_integer(spec.gamma).is_some_and(|k| k >= 1),
        c_integer: near_integer(dp.c).is_some(),
        cab_integer: near_integer(dp.c - dp.a - dp.b).is_some(),
        ab_integer: near_integer(dp.a - dp.b).is_some(),
    }
}

/// `|x^q - (q/(n+2))^2 t^(n+2)|`, the distance used to define `Omega_r`.
pub fn char_distance(spec: &ProblemSpec, t: Complex64, x: Complex64) -> f64 {
    let map = char_map(spec);
    (x.powi(map.x_exponent as i32) - map.coefficient * t.powi(map.t_exponent as i32)).norm()
}
