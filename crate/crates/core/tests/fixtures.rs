mod common;

use common::{c, rel};
use hypercauchy::classify::classify;
use hypercauchy::problem::{char_map, ProblemSpec};
use hypercauchy::solution::{build_monomial, build_null_solution};
use hypercauchy::verify::{cauchy_data_check, residual};
use hypercauchy::{Complex64, Result};
use serde::Deserialize;

#[derive(Deserialize)]
struct Point {
    t: [f64; 2],
    x: [f64; 2],
}

#[derive(Deserialize)]
struct Candidate {
    form: String,
    accepted: bool,
}

#[derive(Deserialize)]
struct Fixture {
    name: String,
    spec: ProblemSpec,
    l: u32,
    candidates: Vec<Candidate>,
    selected_coefficient: Option<f64>,
    coefficient_discrepancy: Option<f64>,
    case_tag: String,
    holomorphic_k1: bool,
    holomorphic_k2: bool,
    values: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct FixtureFile {
    points: Vec<Point>,
    fixtures: Vec<Fixture>,
}

fn load() -> FixtureFile {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/closed_forms.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn cplx(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

/// Plain hypergeometric series, independent of the library's summation.
fn series_oracle(a: Complex64, b: Complex64, cc: Complex64, z: Complex64) -> Complex64 {
    let (mut term, mut sum) = (c(1.0), c(1.0));
    for i in 0..400 {
        let i = i as f64;
        term *= (a + i) * (b + i) / ((cc + i) * (i + 1.0)) * z;
        sum += term;
    }
    sum
}

fn candidate(spec: &ProblemSpec, form: &str) -> impl Fn(Complex64, Complex64) -> Result<Complex64> {
    let map = char_map(spec);
    let form = form.to_string();
    move |t: Complex64, x: Complex64| {
        let z = map.eval(t, x)?;
        Ok(match form.as_str() {
            "x^3 + (2/7) t^3" => x.powi(3) + 2.0 / 7.0 * t.powi(3),
            "x^3 + (9/14) t^3" => x.powi(3) + 9.0 / 14.0 * t.powi(3),
            "x^2 + 2 t^3 / (5 x)" => x * x + 2.0 * t.powi(3) / (5.0 * x),
            "x (1 - z/2) (1 - z)^(-2/3)" => x * (1.0 - z / 2.0) * (1.0 - z).powf(-2.0 / 3.0),
            "x (1 - z)^(1/3)" => x * (1.0 - z).powf(1.0 / 3.0),
            "(x^3 - t^3)^(5/6) / sqrt(x)" => (x.powi(3) - t.powi(3)).powf(5.0 / 6.0) / x.sqrt(),
            other => panic!("unknown form {other}"),
        })
    }
}

#[test]
fn frozen_values_match_library_and_oracle() {
    let file = load();
    for f in &file.fixtures {
        let u = build_monomial(&f.spec, f.l).unwrap();
        let p = u.params();
        for (pt, v) in file.points.iter().zip(&f.values) {
            let (t, x) = (cplx(pt.t), cplx(pt.x));
            let frozen = cplx(*v);
            let oracle = x.powi(f.l as i32) * series_oracle(p.a, p.b, p.c, u.z(t, x).unwrap());
            assert!(rel(oracle, frozen) < 1e-14, "{}: oracle drifted", f.name);
            assert!(rel(u.eval(t, x).unwrap(), frozen) < 1e-13, "{}", f.name);
        }
    }
}

#[test]
fn candidates_adjudicated_by_residual() {
    let file = load();
    for f in &file.fixtures {
        for cand in &f.candidates {
            let g = candidate(&f.spec, &cand.form);
            for pt in &file.points {
                let r = residual(&g, &f.spec, cplx(pt.t), cplx(pt.x)).unwrap().relative;
                if cand.accepted {
                    assert!(r <= 1e-10, "{} {}: {r:e}", f.name, cand.form);
                } else {
                    assert!(r >= 1e-2, "{} {}: {r:e}", f.name, cand.form);
                }
            }
        }
        let u = build_monomial(&f.spec, f.l).unwrap();
        for pt in &file.points {
            let r = residual(&u, &f.spec, cplx(pt.t), cplx(pt.x)).unwrap().relative;
            assert!(r <= 1e-10, "{}: {r:e}", f.name);
        }
    }
}

#[test]
fn selected_cubic_coefficient() {
    let file = load();
    let f = file.fixtures.iter().find(|f| f.name == "terminating_cubic").unwrap();
    let u = build_monomial(&f.spec, f.l).unwrap();
    let t = c(0.5);
    let x = c(1.0);
    let selected = (u.eval(t, x).unwrap() - 1.0) / t.powi(3);
    assert!((selected.re - f.selected_coefficient.unwrap()).abs() < 1e-14);
    assert!((selected.re - 2.0 / 7.0 - f.coefficient_discrepancy.unwrap()).abs() < 1e-14);
}

#[test]
fn classification_matches_fixture() {
    for f in load().fixtures {
        let r = classify(&build_monomial(&f.spec, f.l).unwrap()).unwrap();
        let tag = serde_json::to_value(r.case_tag).unwrap();
        assert_eq!(tag, f.case_tag.as_str(), "{}", f.name);
        assert_eq!(r.holomorphic_k1, f.holomorphic_k1, "{}", f.name);
        assert_eq!(r.holomorphic_k2, f.holomorphic_k2, "{}", f.name);
    }
}

#[test]
fn null_solution_family() {
    let spec = ProblemSpec::new(4, 1, 3, c(-1.0), c(-1.0), c(0.0)).unwrap();
    let pts = [(c(0.3), c(1.0)), (Complex64::new(0.2, 0.1), Complex64::new(0.9, -0.2))];
    let v0 = build_null_solution(&spec, 0).unwrap();
    let u1 = build_monomial(&spec, 1).unwrap();
    for &(t, x) in &pts {
        assert!((v0.eval(t, x).unwrap() - t * t).norm() < 1e-15);
        assert!(residual(&v0, &spec, t, x).unwrap().relative <= 1e-12);
        let closed = (x.powi(3) - t.powi(3)).powf(1.0 / 3.0);
        assert!(rel(u1.eval(t, x).unwrap(), closed) < 1e-13);
        for lambda in [-1.5, 0.0, 2.5] {
            let family = |t: Complex64, x: Complex64| Ok((x.powi(3) - t.powi(3)).powf(1.0 / 3.0) + lambda * t * t);
            assert!(residual(&family, &spec, t, x).unwrap().relative <= 1e-10);
        }
    }
    // The null solution carries zero Cauchy data.
    for x in [c(1.0), Complex64::new(0.0, 1.0)] {
        assert_eq!(v0.eval(c(0.0), x).unwrap(), c(0.0));
    }
    assert!(cauchy_data_check(&u1, 1, &[c(1.0), Complex64::new(0.0, 1.0)]).unwrap() < 1e-8);
}
