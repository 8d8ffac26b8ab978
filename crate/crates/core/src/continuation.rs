//! Analytic continuation of `F(a, b; c; z)` and of `U_l` along paths in the
//! `z`-plane avoiding `{0, 1}`.
//!
//! Branches are named by loop words. Every loop is based in the upper half
//! plane: `around_1` circles `z = 1` alone, `around_inf` circles both finite
//! singular points, positively about `z = infinity` (clockwise in `z`). After
//! the loops the germ is carried back to the evaluation point inside
//! `C \ [1, inf)`.
//!
//! Closed-form monodromy acts diagonally on the local bases
//!
//! ```text
//! about z = 1:   f1 = F(a, b; 1-s; 1-z),          f2 = (1-z)^s F(c-a, c-b; 1+s; 1-z)
//! about z = inf: g3 = (1-z)^(-a) F(a, c-b; 1+a-b; 1/(1-z)),
//!                g4 = (1-z)^(-b) F(b, c-a; 1-a+b; 1/(1-z))
//! ```
//!
//! with `s = c - a - b`. The ODE integrator is an independent oracle.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::near_integer;
use crate::solution::MonomialSolution;
use crate::specfun::{
    ghf_derivative, ghf_principal, kummer_infinity_basis, kummer_infinity_constants,
    kummer_one_basis, kummer_one_constants, GhfParams,
};

/// Minimum distance from a path to `z = 0` and `z = 1`.
pub const PATH_MARGIN: f64 = 1e-3;
/// Step radius as a fraction of the distance to the nearest singular point.
const STEP_FRACTION: f64 = 0.5;
const TAYLOR_MAX_TERMS: usize = 500;
const TAYLOR_TOL: f64 = 1e-17;
const MAX_STEPS: usize = 200_000;
/// Default number of polyline vertices on a loop.
pub const LOOP_VERTICES: usize = 128;

/// Two points in the upper half plane where the local bases are matched.
const MATCH_POINTS: [Complex64; 2] = [Complex64::new(1.0, 0.7), Complex64::new(1.4, 1.6)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopKind {
    #[serde(rename = "around_1_pos")]
    Around1Pos,
    #[serde(rename = "around_1_neg")]
    Around1Neg,
    AroundInfPos,
    AroundInfNeg,
}

impl LoopKind {
    pub fn inverse(self) -> Self {
        match self {
            Self::Around1Pos => Self::Around1Neg,
            Self::Around1Neg => Self::Around1Pos,
            Self::AroundInfPos => Self::AroundInfNeg,
            Self::AroundInfNeg => Self::AroundInfPos,
        }
    }

    fn about_one(self) -> bool {
        matches!(self, Self::Around1Pos | Self::Around1Neg)
    }

    fn sign(self) -> f64 {
        match self {
            Self::Around1Pos | Self::AroundInfPos => 1.0,
            Self::Around1Neg | Self::AroundInfNeg => -1.0,
        }
    }
}

/// A branch of a multivalued value: the loops traversed, in order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BranchContext {
    pub loop_word: Vec<LoopKind>,
}

impl BranchContext {
    pub fn principal() -> Self {
        Self::default()
    }

    pub fn new(loop_word: Vec<LoopKind>) -> Self {
        Self { loop_word }
    }

    pub fn is_principal(&self) -> bool {
        self.loop_word.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopTarget {
    K1,
    K2,
    Trivial,
}

/// Closed polyline in the `z`-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopPath {
    pub basepoint_z: Complex64,
    pub vertices: Vec<Complex64>,
    pub target: LoopTarget,
}

fn circle(center: Complex64, basepoint: Complex64, n: usize, positive: bool) -> Vec<Complex64> {
    let offset = basepoint - center;
    let dir = if positive { 1.0 } else { -1.0 };
    let mut v: Vec<Complex64> = (0..n)
        .map(|k| center + offset * Complex64::from_polar(1.0, dir * 2.0 * PI * k as f64 / n as f64))
        .collect();
    v[0] = basepoint;
    v.push(basepoint);
    v
}

impl LoopPath {
    pub fn new(basepoint_z: Complex64, vertices: Vec<Complex64>, target: LoopTarget) -> Result<Self> {
        let path = Self {
            basepoint_z,
            vertices,
            target,
        };
        path.validate()?;
        Ok(path)
    }

    /// Circle centred at `1` through `z0`, counter-clockwise when `positive`.
    pub fn around_one(z0: Complex64, n: usize, positive: bool) -> Result<Self> {
        if (z0 - 1.0).norm() >= 1.0 - PATH_MARGIN {
            return Err(Error::BasepointInvalid(format!(
                "|1 - z| = {} must be below 1 for a loop around z = 1 only",
                (z0 - 1.0).norm()
            )));
        }
        Self::new(z0, circle(Complex64::new(1.0, 0.0), z0, n, positive), LoopTarget::K2)
    }

    /// Circle centred at `1` through `z0`, clockwise when `positive`.
    pub fn around_infinity(z0: Complex64, n: usize, positive: bool) -> Result<Self> {
        if (z0 - 1.0).norm() <= 1.0 + PATH_MARGIN {
            return Err(Error::BasepointInvalid(format!(
                "|1 - z| = {} must exceed 1 for a loop around z = infinity",
                (z0 - 1.0).norm()
            )));
        }
        Self::new(z0, circle(Complex64::new(1.0, 0.0), z0, n, !positive), LoopTarget::K1)
    }

    /// A contractible circle through `z0` enclosing neither singular point.
    pub fn trivial(z0: Complex64, n: usize) -> Result<Self> {
        let radius = 0.25 * z0.norm().min((z0 - 1.0).norm());
        let center = z0 + radius * (z0 / z0.norm());
        Self::new(z0, circle(center, z0, n, true), LoopTarget::Trivial)
    }

    pub fn validate(&self) -> Result<()> {
        let (first, last) = match (self.vertices.first(), self.vertices.last()) {
            (Some(f), Some(l)) if self.vertices.len() >= 3 => (*f, *l),
            _ => return Err(Error::BasepointInvalid("a loop needs at least three vertices".into())),
        };
        if first != last || first != self.basepoint_z {
            return Err(Error::BasepointInvalid(
                "a loop must start and end at its basepoint".into(),
            ));
        }
        for w in self.vertices.windows(2) {
            for s in [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)] {
                let d = segment_distance(w[0], w[1], s);
                if d < PATH_MARGIN {
                    return Err(Error::SingularityTooClose(format!(
                        "path passes within {d:e} of z = {}",
                        s.re
                    )));
                }
            }
        }
        Ok(())
    }
}

fn segment_distance(p: Complex64, q: Complex64, s: Complex64) -> f64 {
    let d = q - p;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (s - p).norm();
    }
    let t = (((s - p) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p + d * t - s).norm()
}

/// One Taylor step of the hypergeometric equation from `z0` to `z0 + h`,
/// carrying value and derivative.
pub fn taylor_step(
    p: &GhfParams,
    z0: Complex64,
    h: Complex64,
    w: Complex64,
    dw: Complex64,
) -> Result<(Complex64, Complex64)> {
    let p0 = z0 * (1.0 - z0);
    let p1 = 1.0 - 2.0 * z0;
    let q0 = p.c - (1.0 + p.a + p.b) * z0;
    let q1 = -(1.0 + p.a + p.b);
    let r = -p.a * p.b;
    if p0.norm() == 0.0 {
        return Err(Error::StepFailure(format!("step centred on singular point {z0}")));
    }
    let (mut v_prev, mut v_cur) = (w, dw * h);
    let mut value = v_prev + v_cur;
    let mut deriv = v_cur;
    let scale = w.norm().max(v_cur.norm());
    let mut small = 0;
    for k in 0..TAYLOR_MAX_TERMS {
        let kf = k as f64;
        let num = (p1 * (kf + 1.0) * kf + q0 * (kf + 1.0)) * h * v_cur
            + (-kf * (kf - 1.0) + q1 * kf + r) * h * h * v_prev;
        let v_next = -num / (p0 * (kf + 2.0) * (kf + 1.0));
        value += v_next;
        deriv += (kf + 2.0) * v_next;
        let reference = value.norm().max(scale);
        if v_next.norm() <= TAYLOR_TOL * reference {
            small += 1;
            if small >= 3 {
                if !(value.is_finite() && deriv.is_finite()) {
                    break;
                }
                return Ok((value, deriv / h));
            }
        } else {
            small = 0;
        }
        v_prev = v_cur;
        v_cur = v_next;
    }
    Err(Error::StepFailure(format!(
        "Taylor series from {z0} with step {h} did not settle"
    )))
}

/// Integrates the hypergeometric equation along a polyline with adaptive
/// Taylor steps. Returns value and derivative at the last vertex.
pub fn integrate_polyline(
    p: &GhfParams,
    vertices: &[Complex64],
    mut w: Complex64,
    mut dw: Complex64,
) -> Result<(Complex64, Complex64)> {
    let mut steps = 0;
    for seg in vertices.windows(2) {
        let (mut z, end) = (seg[0], seg[1]);
        loop {
            let remaining = end - z;
            if remaining.norm() == 0.0 {
                break;
            }
            let dist = z.norm().min((z - 1.0).norm());
            if dist < 0.5 * PATH_MARGIN {
                return Err(Error::StepFailure(format!(
                    "path reaches {z}, too close to a singular point"
                )));
            }
            let hmax = STEP_FRACTION * dist;
            let (h, last) = if remaining.norm() <= hmax {
                (remaining, true)
            } else {
                (remaining * (hmax / remaining.norm()), false)
            };
            (w, dw) = taylor_step(p, z, h, w, dw)?;
            z = if last { end } else { z + h };
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::StepFailure("step budget exhausted".into()));
            }
            if last {
                break;
            }
        }
    }
    Ok((w, dw))
}

/// Continues the solution with value `w0.0` and derivative `w0.1` at the
/// basepoint once around `path`. Returns the value at the end.
pub fn continue_ode(p: &GhfParams, path: &LoopPath, w0: (Complex64, Complex64)) -> Result<Complex64> {
    path.validate()?;
    integrate_polyline(p, &path.vertices, w0.0, w0.1).map(|(w, _)| w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Basis {
    One,
    Infinity,
}

fn is_polynomial(p: &GhfParams) -> bool {
    p.terminating_degree().is_some()
}

fn basis_values(p: &GhfParams, basis: Basis, z: Complex64) -> Result<[Complex64; 2]> {
    match basis {
        Basis::One => kummer_one_basis(p, z),
        Basis::Infinity => kummer_infinity_basis(p, z),
    }
}

fn solve2(m: [[Complex64; 2]; 2], rhs: [Complex64; 2]) -> Result<[Complex64; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let size = m.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
    if det.norm() <= 1e-14 * size * size {
        return Err(Error::DegenerateParams("local basis is degenerate".into()));
    }
    Ok([
        (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det,
        (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det,
    ])
}

/// Rewrites coordinates in `from` as coordinates in the other basis, matching
/// the two bases in the upper half plane.
fn change_basis(p: &GhfParams, from: Basis, coords: [Complex64; 2]) -> Result<[Complex64; 2]> {
    let to = match from {
        Basis::One => Basis::Infinity,
        Basis::Infinity => Basis::One,
    };
    let mut src = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut dst = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, &z) in MATCH_POINTS.iter().enumerate() {
        src[i] = basis_values(p, from, z)?;
        dst[i] = basis_values(p, to, z)?;
    }
    let rhs = [
        src[0][0] * coords[0] + src[0][1] * coords[1],
        src[1][0] * coords[0] + src[1][1] * coords[1],
    ];
    solve2(dst, rhs)
}

fn one_available(p: &GhfParams) -> bool {
    near_integer(p.c - p.a - p.b).is_none()
}

fn infinity_available(p: &GhfParams) -> bool {
    near_integer(p.a - p.b).is_none()
}

struct BranchState {
    basis: Basis,
    coords: [Complex64; 2],
}

impl BranchState {
    fn principal(p: &GhfParams, prefer: Basis) -> Result<Self> {
        let order = match prefer {
            Basis::One => [Basis::One, Basis::Infinity],
            Basis::Infinity => [Basis::Infinity, Basis::One],
        };
        for basis in order {
            match basis {
                Basis::One if one_available(p) => {
                    let (a1, a2) = kummer_one_constants(p)?;
                    return Ok(Self { basis, coords: [a1, a2] });
                }
                Basis::Infinity if infinity_available(p) => {
                    let (a3, a4) = kummer_infinity_constants(p)?;
                    return Ok(Self { basis, coords: [a3, a4] });
                }
                _ => {}
            }
        }
        Err(Error::DegenerateParams(format!(
            "c - a - b = {} and a - b = {} are both integers",
            p.c - p.a - p.b,
            p.a - p.b
        )))
    }

    fn switch_basis(&mut self, p: &GhfParams, basis: Basis) -> Result<()> {
        if self.basis == basis {
            return Ok(());
        }
        let ok = match basis {
            Basis::One => one_available(p),
            Basis::Infinity => infinity_available(p),
        };
        if !ok {
            return Err(Error::DegenerateParams(match basis {
                Basis::One => format!("c - a - b = {} is an integer", p.c - p.a - p.b),
                Basis::Infinity => format!("a - b = {} is an integer", p.a - p.b),
            }));
        }
        self.coords = change_basis(p, self.basis, self.coords)?;
        self.basis = basis;
        Ok(())
    }

    fn apply(&mut self, p: &GhfParams, kind: LoopKind) -> Result<()> {
        let mult = loop_multipliers(p, kind);
        self.switch_basis(p, if kind.about_one() { Basis::One } else { Basis::Infinity })?;
        self.coords[0] *= mult[0];
        self.coords[1] *= mult[1];
        Ok(())
    }
}

fn cis(theta: Complex64) -> Complex64 {
    (Complex64::i() * theta).exp()
}

/// Multipliers of the local basis elements for one loop: `(1, e^(2 pi i s))`
/// about `z = 1` and `(e^(2 pi i a), e^(2 pi i b))` about infinity; negative
/// loops give the inverses.
pub fn loop_multipliers(p: &GhfParams, kind: LoopKind) -> [Complex64; 2] {
    let sign = kind.sign();
    if kind.about_one() {
        [
            Complex64::new(1.0, 0.0),
            cis(sign * 2.0 * PI * (p.c - p.a - p.b)),
        ]
    } else {
        [cis(sign * 2.0 * PI * p.a), cis(sign * 2.0 * PI * p.b)]
    }
}

/// `F(a, b; c; z)` on the branch reached by the loop word.
pub fn branch_value(p: &GhfParams, z: Complex64, branch: &BranchContext) -> Result<Complex64> {
    if branch.is_principal() || is_polynomial(p) {
        return ghf_principal(p, z);
    }
    if z == Complex64::new(1.0, 0.0) || z == Complex64::new(0.0, 0.0) {
        return Err(Error::PreconditionViolation(format!("z = {z} is a singular point")));
    }
    let first_about_one = branch.loop_word[0].about_one();
    let mut state = BranchState::principal(
        p,
        if first_about_one { Basis::One } else { Basis::Infinity },
    )?;
    for &kind in &branch.loop_word {
        state.apply(p, kind)?;
    }
    let on_unit_segment = z.im == 0.0 && (0.0..1.0).contains(&z.re);
    let on_negative_axis = z.im == 0.0 && z.re < 0.0;
    let target = if on_unit_segment {
        Basis::One
    } else if on_negative_axis {
        Basis::Infinity
    } else if (1.0 - z).norm() < 1.0 {
        if one_available(p) || state.basis == Basis::One {
            Basis::One
        } else {
            Basis::Infinity
        }
    } else if infinity_available(p) || state.basis == Basis::Infinity {
        Basis::Infinity
    } else {
        Basis::One
    };
    state.switch_basis(p, target)?;
    let values = basis_values(p, target, z)?;
    Ok(state.coords[0] * values[0] + state.coords[1] * values[1])
}

/// `U_l` on the branch reached by the loop word.
pub fn continue_value(
    u: &MonomialSolution,
    t: Complex64,
    x: Complex64,
    branch: &BranchContext,
) -> Result<Complex64> {
    let z = u.z(t, x)?;
    Ok(x.powi(u.l as i32) * branch_value(u.params(), z, branch)?)
}

/// One branch component of `U_l` at the basepoint and the factor a loop
/// applies to it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub label: String,
    pub value: Complex64,
    pub multiplier: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonodromyResult {
    pub basepoint_z: Complex64,
    pub value_before: Complex64,
    pub value_after: Complex64,
    pub components: Vec<Component>,
    pub oracle_value_after: Complex64,
    /// `|value_after - oracle| / max(|value_after|, |value_before|)`.
    pub oracle_discrepancy: f64,
}

impl MonodromyResult {
    /// `|value_after - value_before| / |value_before|`.
    pub fn relative_change(&self) -> f64 {
        (self.value_after - self.value_before).norm() / self.value_before.norm().max(1e-300)
    }
}

fn oracle(
    p: &GhfParams,
    path: &LoopPath,
    z0: Complex64,
    prefactor: Complex64,
) -> Result<Complex64> {
    let w0 = ghf_principal(p, z0)?;
    let dw0 = ghf_derivative(p, z0)?;
    Ok(prefactor * continue_ode(p, path, (w0, dw0))?)
}

fn finish(
    z0: Complex64,
    before: Complex64,
    components: Vec<Component>,
    oracle_after: Complex64,
) -> MonodromyResult {
    let after: Complex64 = components.iter().map(|c| c.value * c.multiplier).sum();
    let scale = after.norm().max(before.norm()).max(1e-300);
    MonodromyResult {
        basepoint_z: z0,
        value_before: before,
        value_after: after,
        components,
        oracle_value_after: oracle_after,
        oracle_discrepancy: (after - oracle_after).norm() / scale,
    }
}

/// Loop around `K2` (`z = 1`) based at `P`, where `z(P)` must lie in `(0, 1)`.
pub fn monodromy_k2(u: &MonomialSolution, t: Complex64, x: Complex64) -> Result<MonodromyResult> {
    let z0 = u.z(t, x)?;
    if z0.im.abs() > 1e-12 || !(z0.re > 0.0 && z0.re < 1.0) {
        return Err(Error::BasepointInvalid(format!(
            "z(P) = {z0} must be real and in (0, 1)"
        )));
    }
    let z0 = Complex64::new(z0.re, 0.0);
    let p = u.params();
    if !one_available(p) {
        return Err(Error::DegenerateParams(format!(
            "c - a - b = {} is an integer",
            p.c - p.a - p.b
        )));
    }
    let xl = x.powi(u.l as i32);
    let (a1, a2) = kummer_one_constants(p)?;
    let [f1, f2] = kummer_one_basis(p, z0)?;
    let mult = loop_multipliers(p, LoopKind::Around1Pos);
    let components = vec![
        Component {
            label: "U1".into(),
            value: xl * a1 * f1,
            multiplier: mult[0],
        },
        Component {
            label: "U2".into(),
            value: xl * a2 * f2,
            multiplier: mult[1],
        },
    ];
    let path = LoopPath::around_one(z0, LOOP_VERTICES, true)?;
    let oracle_after = oracle(p, &path, z0, xl)?;
    Ok(finish(z0, u.eval(t, x)?, components, oracle_after))
}

/// Loop around `K1` (`z = infinity`) based at `P`, where `|1 - z(P)| > 1` and
/// `z(P)` is off the cut `[1, inf)`.
pub fn monodromy_k1(u: &MonomialSolution, t: Complex64, x: Complex64) -> Result<MonodromyResult> {
    let z0 = u.z(t, x)?;
    if (1.0 - z0).norm() <= 1.0 + PATH_MARGIN {
        return Err(Error::BasepointInvalid(format!(
            "|1 - z(P)| = {} must exceed 1",
            (1.0 - z0).norm()
        )));
    }
    if z0.im == 0.0 && z0.re > 1.0 {
        return Err(Error::BasepointInvalid(format!("z(P) = {z0} lies on the branch cut")));
    }
    let p = u.params();
    if !infinity_available(p) {
        return Err(Error::DegenerateParams(format!(
            "a - b = {} is an integer",
            p.a - p.b
        )));
    }
    let xl = x.powi(u.l as i32);
    let (a3, a4) = kummer_infinity_constants(p)?;
    let [g3, g4] = kummer_infinity_basis(p, z0)?;
    let mult = loop_multipliers(p, LoopKind::AroundInfPos);
    let components = vec![
        Component {
            label: "U3".into(),
            value: xl * a3 * g3,
            multiplier: mult[0],
        },
        Component {
            label: "U4".into(),
            value: xl * a4 * g4,
            multiplier: mult[1],
        },
    ];
    let path = LoopPath::around_infinity(z0, 2 * LOOP_VERTICES, true)?;
    let oracle_after = oracle(p, &path, z0, xl)?;
    Ok(finish(z0, u.eval(t, x)?, components, oracle_after))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::ProblemSpec;
    use crate::solution::build_monomial;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    fn cube_root() -> GhfParams {
        GhfParams::real(-1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap()
    }

    fn cube_root_solution() -> MonomialSolution {
        let spec = ProblemSpec::new(3, 0, 2, c(-1.0 / 3.0), c(-1.0), c(0.0)).unwrap();
        build_monomial(&spec, 1).unwrap()
    }

    fn start(p: &GhfParams, z: Complex64) -> (Complex64, Complex64) {
        (ghf_principal(p, z).unwrap(), ghf_derivative(p, z).unwrap())
    }

    #[test]
    fn taylor_step_matches_closed_form() {
        let p = cube_root();
        let z0 = c(0.3);
        let (w, dw) = taylor_step(&p, z0, c(0.1), 0.7f64.powf(1.0 / 3.0).into(), c(-1.0 / 3.0 * 0.7f64.powf(-2.0 / 3.0))).unwrap();
        assert!((w - 0.6f64.powf(1.0 / 3.0)).norm() < 1e-15);
        assert!((dw + 1.0 / 3.0 * 0.6f64.powf(-2.0 / 3.0)).norm() < 1e-14);
    }

    #[test]
    fn trivial_loop_closes() {
        let p = GhfParams::new(Complex64::new(0.3, -0.4), c(1.7), Complex64::new(0.6, 0.2)).unwrap();
        for z0 in [c(0.4), Complex64::new(-1.5, 2.0), Complex64::new(3.0, -0.5)] {
            let path = LoopPath::trivial(z0, 64).unwrap();
            let w0 = start(&p, z0);
            let w = continue_ode(&p, &path, w0).unwrap();
            assert!(rel(w, w0.0) < 1e-9);
        }
    }

    #[test]
    fn cube_root_loop_about_one() {
        let p = cube_root();
        let z0 = c(0.5);
        let path = LoopPath::around_one(z0, 64, true).unwrap();
        let w0 = start(&p, z0);
        let w = continue_ode(&p, &path, w0).unwrap();
        let expected = w0.0 * cis(c(2.0 * PI / 3.0));
        assert!(rel(w, expected) < 1e-9);
    }

    #[test]
    fn polynomial_loop_is_identity() {
        let p = GhfParams::real(-1.0, -0.5, 7.0 / 9.0).unwrap();
        let z0 = c(0.5);
        let path = LoopPath::around_one(z0, 64, true).unwrap();
        let w0 = start(&p, z0);
        assert!(rel(continue_ode(&p, &path, w0).unwrap(), w0.0) < 1e-9);
    }

    #[test]
    fn path_validation() {
        assert!(matches!(LoopPath::around_one(c(2.5), 32, true), Err(Error::BasepointInvalid(_))));
        assert!(matches!(
            LoopPath::around_infinity(c(0.5), 32, true),
            Err(Error::BasepointInvalid(_))
        ));
        let through_zero = vec![c(-0.5), c(0.5), Complex64::new(0.0, 0.5), c(-0.5)];
        assert!(matches!(
            LoopPath::new(c(-0.5), through_zero, LoopTarget::Trivial),
            Err(Error::SingularityTooClose(_))
        ));
        let open = vec![c(-0.5), Complex64::new(-0.5, 1.0), c(-1.0)];
        assert!(LoopPath::new(c(-0.5), open, LoopTarget::Trivial).is_err());
    }

    #[test]
    fn k2_cube_root() {
        let u = cube_root_solution();
        let t = u.map.solve_t(c(0.5), c(1.0));
        let r = monodromy_k2(&u, t, c(1.0)).unwrap();
        assert_eq!(r.components[0].value, c(0.0));
        let expected = r.value_before * cis(c(2.0 * PI / 3.0));
        assert!(rel(r.value_after, expected) < 1e-10);
        assert!(r.oracle_discrepancy < 1e-9);
    }

    #[test]
    fn k1_cube_root() {
        let u = cube_root_solution();
        let t = u.map.solve_t(c(-5.0), c(1.0));
        let r = monodromy_k1(&u, t, c(1.0)).unwrap();
        assert!(r.oracle_discrepancy < 1e-6, "{}", r.oracle_discrepancy);
    }

    #[test]
    fn k2_basepoint_rules() {
        let u = cube_root_solution();
        let t = u.map.solve_t(c(1.5), c(1.0));
        assert!(matches!(monodromy_k2(&u, t, c(1.0)), Err(Error::BasepointInvalid(_))));
        let t = u.map.solve_t(Complex64::new(0.5, 0.1), c(1.0));
        assert!(matches!(monodromy_k2(&u, t, c(1.0)), Err(Error::BasepointInvalid(_))));
    }

    #[test]
    fn words_match_power_monodromy() {
        let p = cube_root();
        let z = Complex64::new(0.4, 0.3);
        let principal = ghf_principal(&p, z).unwrap();
        let once = branch_value(&p, z, &BranchContext::new(vec![LoopKind::Around1Pos])).unwrap();
        assert!(rel(once, principal * cis(c(2.0 * PI / 3.0))) < 1e-10);
        let back = branch_value(
            &p,
            z,
            &BranchContext::new(vec![LoopKind::Around1Pos, LoopKind::Around1Neg]),
        )
        .unwrap();
        assert!(rel(back, principal) < 1e-10);
        let inf = branch_value(
            &p,
            z,
            &BranchContext::new(vec![LoopKind::AroundInfPos, LoopKind::AroundInfNeg]),
        )
        .unwrap();
        assert!(rel(inf, principal) < 1e-8);
    }

    #[test]
    fn mixed_word_against_ode() {
        let p = GhfParams::new(Complex64::new(0.21, 0.1), c(-0.63), c(0.47)).unwrap();
        let z0 = Complex64::new(0.6, 0.2);
        let word = [LoopKind::Around1Pos, LoopKind::AroundInfPos, LoopKind::Around1Neg];
        // ODE path: each loop based at a common upper-half-plane point.
        let base = Complex64::new(1.0, 0.5);
        let inner = circle(c(1.0), base, 96, true);
        let outer_base = Complex64::new(1.0, 2.0);
        let mut path = vec![z0, base];
        path.extend(inner.iter().skip(1));
        path.push(outer_base);
        path.extend(circle(c(1.0), outer_base, 192, false).iter().skip(1));
        path.push(base);
        path.extend(circle(c(1.0), base, 96, false).iter().skip(1));
        path.push(z0);
        let (w0, dw0) = start(&p, z0);
        let (w, _) = integrate_polyline(&p, &path, w0, dw0).unwrap();
        let closed = branch_value(&p, z0, &BranchContext::new(word.to_vec())).unwrap();
        assert!(rel(closed, w) < 1e-8, "{closed} vs {w}");
    }

    #[test]
    fn branch_on_negative_axis_and_cut() {
        let p = GhfParams::new(Complex64::new(0.21, 0.1), c(-0.63), c(0.47)).unwrap();
        let word = BranchContext::new(vec![LoopKind::Around1Pos]);
        for z in [c(-0.7), c(1.6), c(4.0)] {
            let above = branch_value(&p, z + Complex64::new(0.0, 1e-9), &word).unwrap();
            let on = branch_value(&p, z, &word).unwrap();
            assert!(rel(on, above) < 1e-7);
        }
    }

    #[test]
    fn continue_value_principal() {
        let u = cube_root_solution();
        let (t, x) = (c(0.3), Complex64::new(1.1, 0.2));
        assert_eq!(
            continue_value(&u, t, x, &BranchContext::principal()).unwrap(),
            u.eval(t, x).unwrap()
        );
    }
}
