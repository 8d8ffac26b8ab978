#![allow(dead_code)]

use hypercauchy::problem::{derive_params, ProblemSpec, RootChoice};
use hypercauchy::solution::{build_monomial, MonomialSolution};
use hypercauchy::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Minimum distance of the excluded parameter combinations from the integers.
pub const LATTICE_MARGIN: f64 = 0.05;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Uniform in the disk of the given radius.
pub fn disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
}

pub fn lattice_distance(z: Complex64) -> f64 {
    Complex64::new(z.re - z.re.round(), z.im).norm()
}

fn nonpositive_lattice_distance(z: Complex64) -> f64 {
    if z.re > 0.5 {
        f64::INFINITY
    } else {
        lattice_distance(z)
    }
}

/// True when `c`, `c - a - b` and `a - b` are off the integers and `gamma`
/// is off the negative integers, for every `l <= l_max` and both roots.
pub fn admissible(spec: &ProblemSpec, l_max: u32) -> bool {
    if nonpositive_lattice_distance(spec.gamma) < LATTICE_MARGIN {
        return false;
    }
    for l in 0..=l_max {
        for root in [RootChoice::Plus, RootChoice::Minus] {
            let dp = derive_params(spec, l, root);
            let checks = [dp.c, dp.c - dp.a - dp.b, dp.a - dp.b];
            if checks.iter().any(|&v| lattice_distance(v) < LATTICE_MARGIN) {
                return false;
            }
        }
    }
    true
}

/// Random spec with `m, n, p <= 6`, `q > 0` and `|gamma|, |A|, |B| <= 3`, off
/// the degenerate lattices for `l <= 5`.
pub fn random_spec(rng: &mut ChaCha8Rng) -> ProblemSpec {
    loop {
        let m = rng.gen_range(0..=6u32);
        let n = rng.gen_range(0..=6u32);
        let p = rng.gen_range(0..=6u32);
        if m + 2 <= p {
            continue;
        }
        let spec = ProblemSpec {
            m,
            n,
            p,
            gamma: disk(rng, 3.0),
            coef_a: disk(rng, 3.0),
            coef_b: disk(rng, 3.0),
        };
        if admissible(&spec, 5) {
            return spec;
        }
    }
}

pub fn random_specs(seed: u64, count: usize) -> Vec<ProblemSpec> {
    let mut r = rng(seed);
    (0..count).map(|_| random_spec(&mut r)).collect()
}

/// Four points with `|z| <= 0.4` and one in the disk about `z = 1`.
pub fn panel(u: &MonomialSolution, rng: &mut ChaCha8Rng) -> Vec<(Complex64, Complex64)> {
    let zs = [
        Complex64::from_polar(0.05, rng.gen_range(-3.0..3.0)),
        Complex64::from_polar(0.2, rng.gen_range(-3.0..3.0)),
        Complex64::from_polar(0.3, rng.gen_range(-3.0..3.0)),
        Complex64::from_polar(0.4, rng.gen_range(-3.0..3.0)),
        Complex64::new(0.75, 0.15),
    ];
    zs.iter()
        .map(|&z| {
            let x = Complex64::from_polar(rng.gen_range(0.6..1.4), rng.gen_range(-3.0..3.0));
            (u.map.solve_t(z, x), x)
        })
        .collect()
}

pub fn monomial(spec: &ProblemSpec, l: u32) -> MonomialSolution {
    build_monomial(spec, l).expect("admissible spec")
}
