//! Complex gamma function, its reciprocal, and the Pochhammer symbol.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::TAU_INT;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(pi x)` for real `x`, exactly zero at the integers.
fn sinpi_real(x: f64) -> f64 {
    let n = (2.0 * x).round();
    let r = x - 0.5 * n;
    let (s, c) = (PI * r).sin_cos();
    match (n as i64).rem_euclid(4) {
        0 => s,
        1 => c,
        2 => -s,
        _ => -c,
    }
}

fn cospi_real(x: f64) -> f64 {
    sinpi_real(x + 0.5)
}

/// `sin(pi z)` for complex `z`.
pub fn sinpi(z: Complex64) -> Complex64 {
    let (sh, ch) = ((PI * z.im).sinh(), (PI * z.im).cosh());
    Complex64::new(sinpi_real(z.re) * ch, cospi_real(z.re) * sh)
}

/// Gamma on the half plane `Re z >= 1/2`.
fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let log_part = (z + 0.5) * t.ln() - t;
    (2.0 * PI).sqrt() * log_part.exp() * acc
}

/// Distance from `z` to the nearest non-positive integer, or `None` when
/// `Re z` is positive enough that no pole is nearby.
fn pole_distance(z: Complex64) -> Option<f64> {
    let k = z.re.round();
    if k > 0.0 {
        return None;
    }
    Some(Complex64::new(z.re - k, z.im).norm())
}

/// Complex gamma function. Reflection is used for `Re z < 1/2`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if let Some(d) = pole_distance(z) {
        if d < TAU_INT {
            return Err(Error::Pole(z));
        }
    }
    if z.re < 0.5 {
        Ok(PI / (sinpi(z) * lanczos(1.0 - z)))
    } else {
        Ok(lanczos(z))
    }
}

/// Reciprocal gamma, an entire function: exactly zero at `0, -1, -2, ...`.
pub fn rgamma(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        sinpi(z) * lanczos(1.0 - z) / PI
    } else {
        1.0 / lanczos(z)
    }
}

/// Rising factorial `lam (lam + 1) ... (lam + i - 1)` by direct product.
pub fn pochhammer(lam: Complex64, i: usize) -> Complex64 {
    (0..i).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (lam + k as f64))
}
