//! Explicit hypergeometric solutions of the characteristic Cauchy problem
//!
//! ```text
//! x^m (u_tt + (gamma/t) u_t) - t^n x^(p-2) (x^2 u_xx + A x u_x + B u) = 0,
//! u(0, x) = x^l,   u_t(0, x) = 0,
//! ```
//!
//! whose solution is `U_l = x^l F(a, b; c; z)` with
//! `z = (q/(n+2))^2 t^(n+2) / x^q` and `q = m - p + 2`.
//!
//! Modules:
//! * [`specfun`]: complex gamma, Pochhammer, `2F1` with connection formulas.
//! * [`problem`]: the operator, derived hypergeometric parameters, the map `z(t, x)`.
//! * [`solution`]: monomial, series and null solutions.
//! * [`continuation`]: ODE continuation, loop words and monodromy.
//! * [`classify`]: holomorphy and ramification on the characteristic curves.
//! * [`verify`]: residual and Cauchy-data checks by contour differentiation.
//! * [`cli`]: file formats and the command implementations.

pub mod classify;
pub mod cli;
pub mod continuation;
pub mod error;
pub mod problem;
pub mod solution;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Distance below which a value counts as lying on an integer lattice.
pub const TAU_INT: f64 = 1e-9;

/// The integer nearest to `z` when `z` is within [`TAU_INT`] of it.
pub fn near_integer(z: Complex64) -> Option<i64> {
    let k = z.re.round();
    if (z.re - k).abs() < TAU_INT && z.im.abs() < TAU_INT && k.abs() < 9.0e15 {
        Some(k as i64)
    } else {
        None
    }
}

/// `Some(N)` when `z` is (within tolerance) `-N` for `N = 0, 1, 2, ...`.
pub fn nonpositive_integer(z: Complex64) -> Option<usize> {
    near_integer(z).filter(|&k| k <= 0).map(|k| (-k) as usize)
}

/// `Some(N)` when `z` is (within tolerance) `N` for `N = 0, 1, 2, ...`.
pub fn nonnegative_integer(z: Complex64) -> Option<usize> {
    near_integer(z).filter(|&k| k >= 0).map(|k| k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_membership() {
        assert_eq!(near_integer(Complex64::new(3.0 + 1e-10, -1e-10)), Some(3));
        assert_eq!(near_integer(Complex64::new(3.0 + 1e-8, 0.0)), None);
        assert_eq!(near_integer(Complex64::new(3.0, 1e-8)), None);
        assert_eq!(nonpositive_integer(Complex64::new(0.0, 0.0)), Some(0));
        assert_eq!(nonpositive_integer(Complex64::new(-4.0, 0.0)), Some(4));
        assert_eq!(nonpositive_integer(Complex64::new(2.0, 0.0)), None);
        assert_eq!(nonnegative_integer(Complex64::new(2.0, 0.0)), Some(2));
    }
}
