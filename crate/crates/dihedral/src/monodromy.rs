//! Numerical monodromy of the connection restricted to a line, and the
//! dihedral representations `ρ_{u,v}`.
//!
//! A generic line `y = αx + β` is parametrized by `s` with
//! `x = -βs/α, y = β(1 - s)`, so that `x = 0` and `y = 0` sit at `s = 0` and
//! `s = 1`, the conic at `t1, t2`, and the line at infinity at `s = ∞`.

use crate::connection::{build_connection, CONIC};
use crate::params::ParameterPoint;
use cas_kernel::forms::Mat2;
use cas_kernel::{rational_to_f64, rf, CasError, Context, Polynomial, Rational, Substitution, RF};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum MonodromyError {
    #[error("degenerate line: {0}")]
    DegenerateLine(String),
    #[error("step size underflow near s = {0}")]
    StepUnderflow(C64),
    #[error("step budget exhausted near s = {0}")]
    TooManySteps(C64),
    #[error("loop `{label}` passes within {dist:.3e} of puncture `{puncture}` (safety radius {safety:.3e})")]
    LoopTooClose { label: String, puncture: String, dist: f64, safety: f64 },
    #[error("no base point keeps all loops clear of the punctures")]
    NoBasePoint,
    #[error(transparent)]
    Cas(#[from] CasError),
}

/// A complex 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexMatrix2 {
    pub m: [[C64; 2]; 2],
}

impl ComplexMatrix2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        ComplexMatrix2 { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        Self::new(o, z, z, o)
    }

    pub fn zero() -> Self {
        let z = C64::new(0.0, 0.0);
        Self::new(z, z, z, z)
    }

    pub fn diag(a: C64, d: C64) -> Self {
        let z = C64::new(0.0, 0.0);
        Self::new(a, z, z, d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.m;
        let b = &o.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = *self;
        for i in 0..2 {
            for j in 0..2 {
                r.m[i][j] += o.m[i][j];
            }
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, k: C64) -> Self {
        let mut r = *self;
        for row in r.m.iter_mut() {
            for e in row.iter_mut() {
                *e *= k;
            }
        }
        r
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        Self::new(self.m[1][1] / d, -self.m[0][1] / d, -self.m[1][0] / d, self.m[0][0] / d)
    }

    /// Largest entry modulus.
    pub fn norm(&self) -> f64 {
        self.m.iter().flatten().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn dist(&self, o: &Self) -> f64 {
        self.sub(o).norm()
    }

    fn axpy(&self, k: C64, x: &Self) -> Self {
        self.add(&x.scale(k))
    }
}

/// One piece of a loop, parametrized by `τ ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Piece {
    Segment { a: (f64, f64), b: (f64, f64) },
    Arc { center: (f64, f64), radius: f64, theta0: f64, theta1: f64 },
}

fn c(p: (f64, f64)) -> C64 {
    C64::new(p.0, p.1)
}

fn pair(z: C64) -> (f64, f64) {
    (z.re, z.im)
}

impl Piece {
    pub fn point(&self, t: f64) -> C64 {
        match *self {
            Piece::Segment { a, b } => c(a) + (c(b) - c(a)) * t,
            Piece::Arc { center, radius, theta0, theta1 } => {
                c(center) + C64::from_polar(radius, theta0 + (theta1 - theta0) * t)
            }
        }
    }

    pub fn derivative(&self, t: f64) -> C64 {
        match *self {
            Piece::Segment { a, b } => c(b) - c(a),
            Piece::Arc { radius, theta0, theta1, .. } => {
                let th = theta0 + (theta1 - theta0) * t;
                C64::new(0.0, theta1 - theta0) * C64::from_polar(radius, th)
            }
        }
    }

    pub fn reversed(&self) -> Piece {
        match *self {
            Piece::Segment { a, b } => Piece::Segment { a: b, b: a },
            Piece::Arc { center, radius, theta0, theta1 } => Piece::Arc { center, radius, theta0: theta1, theta1: theta0 },
        }
    }

    /// Splits into `k` consecutive pieces of the same shape.
    pub fn split(&self, k: usize) -> Vec<Piece> {
        (0..k)
            .map(|i| {
                let (t0, t1) = (i as f64 / k as f64, (i + 1) as f64 / k as f64);
                match *self {
                    Piece::Segment { .. } => Piece::Segment { a: pair(self.point(t0)), b: pair(self.point(t1)) },
                    Piece::Arc { center, radius, theta0, theta1 } => Piece::Arc {
                        center,
                        radius,
                        theta0: theta0 + (theta1 - theta0) * t0,
                        theta1: theta0 + (theta1 - theta0) * t1,
                    },
                }
            })
            .collect()
    }

    /// Distance from `p` to the piece.
    pub fn distance_to(&self, p: C64) -> f64 {
        match *self {
            Piece::Segment { a, b } => {
                let (a, b) = (c(a), c(b));
                let d = b - a;
                let t = if d.norm_sqr() == 0.0 { 0.0 } else { (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0) };
                (a + d * t - p).norm()
            }
            Piece::Arc { .. } => {
                // dense sampling is enough for safety checks
                (0..=256).map(|i| (self.point(i as f64 / 256.0) - p).norm()).fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// A closed path based at `base`, encircling the puncture `label`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Loop {
    pub label: String,
    pub base: (f64, f64),
    pub pieces: Vec<Piece>,
}

impl Loop {
    /// Goes straight towards `center`, around the circle of radius `r`
    /// (`turns` times, negative for clockwise), and back.
    pub fn lasso(label: &str, base: C64, center: C64, r: f64, turns: f64) -> Loop {
        let dir = (base - center) / (base - center).norm();
        let touch = center + dir * r;
        let th = dir.arg();
        Loop {
            label: label.into(),
            base: pair(base),
            pieces: vec![
                Piece::Segment { a: pair(base), b: pair(touch) },
                Piece::Arc { center: pair(center), radius: r, theta0: th, theta1: th + 2.0 * PI * turns },
                Piece::Segment { a: pair(touch), b: pair(base) },
            ],
        }
    }

    pub fn reversed(&self) -> Loop {
        Loop {
            label: format!("{}^-1", self.label),
            base: self.base,
            pieces: self.pieces.iter().rev().map(Piece::reversed).collect(),
        }
    }

    /// Each piece split into `k` pieces.
    pub fn refined(&self, k: usize) -> Loop {
        Loop { label: self.label.clone(), base: self.base, pieces: self.pieces.iter().flat_map(|p| p.split(k)).collect() }
    }

    /// Polyline through the piece endpoints, arcs sampled every 15 degrees.
    pub fn waypoints(&self) -> Vec<(f64, f64)> {
        let mut out = vec![self.base];
        for p in &self.pieces {
            let n = match p {
                Piece::Segment { .. } => 1,
                Piece::Arc { theta0, theta1, .. } => ((theta1 - theta0).abs() / (PI / 12.0)).ceil().max(1.0) as usize,
            };
            out.extend((1..=n).map(|i| pair(p.point(i as f64 / n as f64))));
        }
        out
    }

    pub fn distance_to(&self, p: C64) -> f64 {
        self.pieces.iter().map(|q| q.distance_to(p)).fold(f64::INFINITY, f64::min)
    }

    /// Checks that the loop stays `safety` away from every puncture.
    pub fn validate(&self, punctures: &[(String, C64)], safety: f64) -> Result<(), MonodromyError> {
        for (name, p) in punctures {
            let dist = self.distance_to(*p);
            if dist < safety {
                return Err(MonodromyError::LoopTooClose { label: self.label.clone(), puncture: name.clone(), dist, safety });
            }
        }
        Ok(())
    }
}

/// `dZ/ds = -M(s) Z`.
pub trait LinearSystem: Sync {
    fn matrix(&self, s: C64) -> ComplexMatrix2;
}

/// A system given by a closure.
pub struct FnSystem<F: Fn(C64) -> ComplexMatrix2 + Sync>(pub F);

impl<F: Fn(C64) -> ComplexMatrix2 + Sync> LinearSystem for FnSystem<F> {
    fn matrix(&self, s: C64) -> ComplexMatrix2 {
        (self.0)(s)
    }
}

/// Univariate rational function with complex Horner evaluation.
#[derive(Clone, Debug)]
struct Horner {
    num: Vec<C64>,
    den: Vec<C64>,
}

fn poly_coeffs(p: &Polynomial, v: usize) -> Vec<C64> {
    p.coefficients_in(v)
        .iter()
        .map(|q| C64::new(q.as_constant().map(|r| rational_to_f64(&r)).expect("univariate"), 0.0))
        .collect()
}

fn horner(cs: &[C64], s: C64) -> C64 {
    cs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &k| acc * s + k)
}

impl Horner {
    fn new(f: &RF) -> Self {
        Horner { num: poly_coeffs(f.num(), 0), den: poly_coeffs(f.den(), 0) }
    }

    fn eval(&self, s: C64) -> C64 {
        horner(&self.num, s) / horner(&self.den, s)
    }
}

/// A system `M(s)` with exact rational entries in one variable.
#[derive(Clone, Debug)]
pub struct RationalSystem {
    pub exact: Mat2<RF>,
    entries: [[Horner; 2]; 2],
}

impl RationalSystem {
    pub fn new(exact: Mat2<RF>) -> Self {
        let h = |i: usize, j: usize| Horner::new(&exact.m[i][j]);
        let entries = [[h(0, 0), h(0, 1)], [h(1, 0), h(1, 1)]];
        RationalSystem { exact, entries }
    }
}

impl LinearSystem for RationalSystem {
    fn matrix(&self, s: C64) -> ComplexMatrix2 {
        let e = &self.entries;
        ComplexMatrix2::new(e[0][0].eval(s), e[0][1].eval(s), e[1][0].eval(s), e[1][1].eval(s))
    }
}

/// `riccati_to_system`: the numeric system of a Riccati equation on a line.
pub fn riccati_to_system(r: &crate::riccati::RiccatiCoefficients) -> RationalSystem {
    RationalSystem::new(r.matrix())
}

/// Result of transporting a fundamental solution around a loop.
#[derive(Clone, Debug, Serialize)]
pub struct MonodromyRecord {
    pub label: String,
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: ComplexMatrix2,
    #[serde(serialize_with = "ser_c")]
    pub det: C64,
    #[serde(serialize_with = "ser_c")]
    pub trace: C64,
    pub error_estimate: f64,
    pub steps: usize,
    #[serde(skip)]
    pub lp: Loop,
}

fn ser_c<S: serde::Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
    (z.re, z.im).serialize(s)
}

fn ser_matrix<S: serde::Serializer>(m: &ComplexMatrix2, s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<(f64, f64)> = m.m.iter().flatten().map(|z| (z.re, z.im)).collect();
    v.serialize(s)
}

// Dormand–Prince 5(4)
const DP_C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const DP_B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

fn rhs(sys: &dyn LinearSystem, piece: &Piece, t: f64, z: &ComplexMatrix2) -> ComplexMatrix2 {
    let s = piece.point(t);
    sys.matrix(s).mul(z).scale(-piece.derivative(t))
}

/// One Dormand–Prince step; returns the fifth-order solution and the
/// difference to the embedded fourth-order one.
fn dp_step(sys: &dyn LinearSystem, piece: &Piece, t: f64, h: f64, z: &ComplexMatrix2) -> (ComplexMatrix2, ComplexMatrix2) {
    let mut k = [ComplexMatrix2::zero(); 7];
    for i in 0..7 {
        let mut zi = *z;
        for (j, kj) in k.iter().enumerate().take(i) {
            if DP_A[i][j] != 0.0 {
                zi = zi.axpy(C64::new(h * DP_A[i][j], 0.0), kj);
            }
        }
        k[i] = rhs(sys, piece, t + DP_C[i] * h, &zi);
    }
    let mut y5 = *z;
    let mut err = ComplexMatrix2::zero();
    for i in 0..7 {
        y5 = y5.axpy(C64::new(h * DP_B5[i], 0.0), &k[i]);
        err = err.axpy(C64::new(h * (DP_B5[i] - DP_B4[i]), 0.0), &k[i]);
    }
    (y5, err)
}

/// Options for [`transport`].
#[derive(Clone, Copy, Debug)]
pub struct TransportOptions {
    pub tol: f64,
    pub max_steps: usize,
    pub h_min: f64,
}

impl TransportOptions {
    pub fn new(tol: f64) -> Self {
        TransportOptions { tol, max_steps: 2_000_000, h_min: 1e-13 }
    }
}

/// Adaptive integration over one piece; appends the accepted step sizes.
fn integrate_piece(
    sys: &dyn LinearSystem,
    piece: &Piece,
    z0: ComplexMatrix2,
    opts: &TransportOptions,
    steps: &mut Vec<(f64, f64)>,
) -> Result<ComplexMatrix2, MonodromyError> {
    let mut z = z0;
    let mut t = 0.0f64;
    let mut h = 0.01f64;
    let mut count = 0usize;
    while t < 1.0 {
        if count > opts.max_steps {
            return Err(MonodromyError::TooManySteps(piece.point(t)));
        }
        count += 1;
        let hh = h.min(1.0 - t);
        let (y, e) = dp_step(sys, piece, t, hh, &z);
        let scale = 1.0 + z.norm().max(y.norm());
        let err = e.norm() / (opts.tol * scale);
        if err <= 1.0 {
            steps.push((t, hh));
            t += hh;
            z = y;
        }
        let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h = hh * fac;
        if h < opts.h_min {
            return Err(MonodromyError::StepUnderflow(piece.point(t)));
        }
    }
    Ok(z)
}

/// Replays the accepted steps with each one halved.
fn replay_halved(sys: &dyn LinearSystem, piece: &Piece, z0: ComplexMatrix2, steps: &[(f64, f64)]) -> ComplexMatrix2 {
    let mut z = z0;
    for &(t, h) in steps {
        let (m, _) = dp_step(sys, piece, t, h / 2.0, &z);
        let (y, _) = dp_step(sys, piece, t + h / 2.0, h / 2.0, &m);
        z = y;
    }
    z
}

/// Transports the identity around `lp`. The error estimate compares with a
/// replay of the same step sequence with every step halved.
pub fn transport(sys: &dyn LinearSystem, lp: &Loop, tol: f64) -> Result<MonodromyRecord, MonodromyError> {
    let opts = TransportOptions::new(tol);
    let mut z = ComplexMatrix2::identity();
    let mut zh = ComplexMatrix2::identity();
    let mut total = 0;
    for piece in &lp.pieces {
        let mut steps = Vec::new();
        let start_h = zh;
        z = integrate_piece(sys, piece, z, &opts, &mut steps)?;
        zh = replay_halved(sys, piece, start_h, &steps);
        total += steps.len();
    }
    Ok(MonodromyRecord {
        label: lp.label.clone(),
        matrix: z,
        det: z.det(),
        trace: z.trace(),
        error_estimate: z.dist(&zh),
        steps: total,
        lp: lp.clone(),
    })
}

// ---------------------------------------------------------------------------
// Line restriction

/// The connection restricted to `y = αx + β`, in the parameter `s`.
#[derive(Clone, Debug)]
pub struct LineRestriction {
    pub params: ParameterPoint,
    pub alpha: Rational,
    pub beta: Rational,
    /// `z² = β(1 - α) + α`.
    pub z_squared: Rational,
    pub system: RationalSystem,
    /// `s(s - 1)q(s)` with `q` the conic restricted to the line.
    pub pole_polynomial: Polynomial,
    /// `(label, position)` for `0, 1, t1, t2`.
    pub punctures: Vec<(String, C64)>,
}

fn line_ctx() -> Context {
    Context::new(&["s"])
}

pub fn line_restriction(p: &ParameterPoint, alpha: &Rational, beta: &Rational) -> Result<LineRestriction, MonodromyError> {
    use num_traits::{One, Zero};
    if p.is_symbolic() {
        return Err(MonodromyError::DegenerateLine("parameters must be rational".into()));
    }
    if alpha.is_zero() || beta.is_zero() || alpha.is_one() {
        return Err(MonodromyError::DegenerateLine("need α ∉ {0, 1} and β ≠ 0".into()));
    }
    let c = build_connection(p);
    let plane = c.omega.m[0][0].ctx().clone();
    let lc = line_ctx();
    let s = RF::named(&lc, "s");
    let x = s.scale(&(-beta / alpha));
    let y = RF::one(&lc).sub(&s).scale(beta);
    let sub = Substitution::by_name(&plane, &lc, &[("x", x), ("y", y), ("l0", RF::zero(&lc)), ("l1", RF::zero(&lc))]);
    let om = c.omega.pullback(&sub, &[0])?;
    let exact = om.component(0);
    let conic = sub.apply(&rf(&plane, CONIC))?;
    let q = conic.num().coefficients_in(0);
    if q.len() != 3 {
        return Err(MonodromyError::DegenerateLine("the conic meets the line at infinity".into()));
    }
    let k: Vec<C64> = q.iter().map(|e| C64::new(rational_to_f64(&e.as_constant().unwrap()), 0.0)).collect();
    let disc = (k[1] * k[1] - k[0] * k[2] * 4.0).sqrt();
    let t1 = (-k[1] + disc) / (k[2] * 2.0);
    let t2 = (-k[1] - disc) / (k[2] * 2.0);
    let punctures = vec![
        ("0".to_string(), C64::new(0.0, 0.0)),
        ("1".to_string(), C64::new(1.0, 0.0)),
        ("t1".to_string(), t1),
        ("t2".to_string(), t2),
    ];
    for i in 0..4 {
        for j in i + 1..4 {
            if (punctures[i].1 - punctures[j].1).norm() < 1e-9 {
                return Err(MonodromyError::DegenerateLine(format!(
                    "punctures {} and {} coincide",
                    punctures[i].0, punctures[j].0
                )));
            }
        }
    }
    let z_squared = beta * (Rational::one() - alpha) + alpha;
    let sp = Polynomial::var(&lc, 0);
    let pole_polynomial = &(&sp * &(&sp - &Polynomial::one(&lc))) * conic.num();
    Ok(LineRestriction {
        params: p.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        z_squared,
        system: RationalSystem::new(exact),
        pole_polynomial,
        punctures,
    })
}

impl LineRestriction {
    pub fn min_distance(&self) -> f64 {
        let mut d = f64::INFINITY;
        for i in 0..self.punctures.len() {
            for j in i + 1..self.punctures.len() {
                d = d.min((self.punctures[i].1 - self.punctures[j].1).norm());
            }
        }
        d
    }

    pub fn safety_radius(&self) -> f64 {
        0.1 * self.min_distance()
    }

    /// Lasso loops around the finite punctures and a clockwise circle
    /// enclosing all of them, ordered by angle as seen from `base`.
    pub fn loops(&self, base: C64) -> Result<Vec<Loop>, MonodromyError> {
        let safety = self.safety_radius();
        let mut loops = Vec::new();
        for (name, p) in &self.punctures {
            let near = self
                .punctures
                .iter()
                .filter(|(n, _)| n != name)
                .map(|(_, q)| (q - p).norm())
                .fold(f64::INFINITY, f64::min);
            let r = 0.25 * near.min(2.0 * (base - p).norm());
            loops.push(Loop::lasso(name, base, *p, r, 1.0));
        }
        let big = self.punctures.iter().map(|(_, p)| p.norm()).fold(base.norm(), f64::max);
        let r_inf = 2.0 * big + 1.0;
        loops.push(Loop::lasso("inf", base, C64::new(0.0, 0.0), r_inf, -1.0));
        // the big circle is centered at the origin; its spoke must avoid the punctures
        for lp in &loops {
            let others: Vec<(String, C64)> = self.punctures.iter().filter(|(n, _)| *n != lp.label).cloned().collect();
            lp.validate(&others, safety)?;
        }
        loops.sort_by(|a, b| angle_from(base, self.position(&a.label)).total_cmp(&angle_from(base, self.position(&b.label))));
        Ok(loops)
    }

    fn position(&self, label: &str) -> Option<C64> {
        self.punctures.iter().find(|(n, _)| n == label).map(|(_, p)| *p)
    }

    /// A base point all of whose loops respect the safety radius.
    pub fn default_base(&self) -> Result<C64, MonodromyError> {
        let spread = self.punctures.iter().map(|(_, p)| p.norm()).fold(1.0f64, f64::max);
        let candidates = [
            C64::new(0.5, 2.0),
            C64::new(0.5, -2.0),
            C64::new(0.37, 0.61 * spread),
            C64::new(-0.29, 1.3 * spread),
            C64::new(0.71, -0.83 * spread),
        ];
        candidates
            .into_iter()
            .find(|b| self.loops(*b).is_ok())
            .ok_or(MonodromyError::NoBasePoint)
    }
}

fn angle_from(base: C64, p: Option<C64>) -> f64 {
    match p {
        Some(p) => (p - base).arg(),
        // the spoke to the big circle around the origin points away from it
        None => base.arg(),
    }
}

/// One record per puncture, in angular order, loops based at `base`.
pub fn monodromy_representation(lr: &LineRestriction, base: Option<C64>, tol: f64) -> Result<Vec<MonodromyRecord>, MonodromyError> {
    let base = match base {
        Some(b) => b,
        None => lr.default_base()?,
    };
    let loops = lr.loops(base)?;
    loops.par_iter().map(|lp| transport(&lr.system, lp, tol)).collect()
}

// ---------------------------------------------------------------------------
// Dihedral structure

/// Outcome of [`verify_dihedral`].
#[derive(Clone, Debug, Serialize)]
pub struct DihedralReport {
    /// `|trace|` at `t1`, `t2`.
    pub anti_diagonal_traces: Vec<f64>,
    /// Largest `‖[A, B] - I‖` among the loops at `0`, `1`, `∞`.
    pub commutator_residual: f64,
    /// Best product ordering and its residual `‖Π - I‖`.
    pub ordering: Vec<String>,
    pub product_residual: f64,
    pub max_det_error: f64,
}

impl DihedralReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.anti_diagonal_traces.iter().all(|t| *t < tol) && self.commutator_residual < tol && self.product_residual < tol
    }
}

fn find<'a>(recs: &'a [MonodromyRecord], label: &str) -> &'a MonodromyRecord {
    recs.iter().find(|r| r.label == label).unwrap_or_else(|| panic!("missing loop {label}"))
}

pub fn verify_dihedral(records: &[MonodromyRecord]) -> DihedralReport {
    let anti = ["t1", "t2"].iter().map(|l| find(records, l).trace.norm()).collect();
    let diag: Vec<&ComplexMatrix2> = ["0", "1", "inf"].iter().map(|l| &find(records, l).matrix).collect();
    let mut comm: f64 = 0.0;
    for i in 0..3 {
        for j in i + 1..3 {
            let (a, b) = (diag[i], diag[j]);
            let k = a.mul(b).mul(&a.inverse()).mul(&b.inverse());
            comm = comm.max(k.dist(&ComplexMatrix2::identity()));
        }
    }
    // cyclic rotations of the angular order, both composition orders
    let n = records.len();
    let mut best = (f64::INFINITY, Vec::new());
    for rot in 0..n {
        let order: Vec<&MonodromyRecord> = (0..n).map(|k| &records[(rot + k) % n]).collect();
        for rev in [false, true] {
            let prod = if rev {
                order.iter().rev().fold(ComplexMatrix2::identity(), |acc, r| acc.mul(&r.matrix))
            } else {
                order.iter().fold(ComplexMatrix2::identity(), |acc, r| acc.mul(&r.matrix))
            };
            let res = prod.dist(&ComplexMatrix2::identity());
            if res < best.0 {
                let mut labels: Vec<String> = order.iter().map(|r| r.label.clone()).collect();
                if rev {
                    labels.reverse();
                }
                best = (res, labels);
            }
        }
    }
    let max_det_error = records.iter().map(|r| (r.det - 1.0).norm()).fold(0.0, f64::max);
    DihedralReport { anti_diagonal_traces: anti, commutator_residual: comm, ordering: best.1, product_residual: best.0, max_det_error }
}

/// Trace of each local monodromy: the published closed form, the value
/// implied by the residue eigenvalues, and the computed one.
#[derive(Clone, Debug, Serialize)]
pub struct TraceComparison {
    pub label: String,
    pub printed: f64,
    pub from_residues: f64,
    pub computed: (f64, f64),
}

/// Published generic-line traces with `a_j = e^{-iπλ_j}`:
/// `a1 + 1/a1, -(a0 + 1/a0), 0, 0, a0/a1 + a1/a0`.
pub fn printed_traces(l0: f64, l1: f64) -> [f64; 5] {
    [2.0 * (PI * l1).cos(), -2.0 * (PI * l0).cos(), 0.0, 0.0, 2.0 * (PI * (l0 - l1)).cos()]
}

/// Traces `2cos(2π e)` with `±e` the residue eigenvalues
/// `λ1/2, (λ0-1)/2, 1/4, 1/4, (λ0+λ1)/2`.
pub fn residue_traces(l0: f64, l1: f64) -> [f64; 5] {
    [2.0 * (PI * l1).cos(), 2.0 * (PI * (l0 - 1.0)).cos(), 0.0, 0.0, 2.0 * (PI * (l0 + l1)).cos()]
}

pub const TRACE_LABELS: [&str; 5] = ["0", "1", "t1", "t2", "inf"];

pub fn compare_traces(records: &[MonodromyRecord], l0: f64, l1: f64) -> Vec<TraceComparison> {
    let p = printed_traces(l0, l1);
    let r = residue_traces(l0, l1);
    TRACE_LABELS
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let t = find(records, l).trace;
            TraceComparison { label: l.to_string(), printed: p[k], from_residues: r[k], computed: (t.re, t.im) }
        })
        .collect()
}

/// Largest deviation between the computed trace multiset and `expected`,
/// matching labels in a fixed way.
pub fn trace_deviation(cmp: &[TraceComparison], printed: bool) -> f64 {
    cmp.iter()
        .map(|c| {
            let e = if printed { c.printed } else { c.from_residues };
            (C64::new(c.computed.0, c.computed.1) - e).norm()
        })
        .fold(0.0, f64::max)
}

/// Multiset distance: the best matching of computed traces to `expected`.
pub fn multiset_deviation(computed: &[C64], expected: &[f64]) -> f64 {
    fn go(c: &[C64], e: &mut Vec<f64>) -> f64 {
        match c.split_first() {
            None => 0.0,
            Some((x, rest)) => {
                let mut best = f64::INFINITY;
                for i in 0..e.len() {
                    let v = e.remove(i);
                    best = best.min((x - v).norm().max(go(rest, e)));
                    e.insert(i, v);
                }
                best
            }
        }
    }
    go(computed, &mut expected.to_vec())
}

// ---------------------------------------------------------------------------
// ρ_{u,v}

/// `ρ_{u,v}(a), ρ_{u,v}(b), ρ_{u,v}(c)` over any context, given `u, v`.
pub fn rho_uv(u: &RF, v: &RF) -> [Mat2<RF>; 3] {
    let ctx = u.ctx();
    let (o, z) = (RF::one(ctx), RF::zero(ctx));
    [
        Mat2::new(z.clone(), o.clone(), o.neg(), z.clone()),
        Mat2::new(u.clone(), z.clone(), z.clone(), u.inv()),
        Mat2::new(v.clone(), z.clone(), z, v.inv()),
    ]
}

/// The relations `(ab)²(ba)⁻²`, `(ac)²(ca)⁻²`, `[b,c]`, `(ba)²(ab)⁻²` and the
/// product `d1⋯d5` with `d = (b, a, bab⁻¹, c, (abac)⁻¹)`.
pub fn relation_words(a: &Mat2<RF>, b: &Mat2<RF>, c: &Mat2<RF>) -> Vec<(&'static str, Mat2<RF>)> {
    let inv = |m: &Mat2<RF>| m.inverse().expect("invertible");
    let sq = |m: &Mat2<RF>| m.mul(m);
    let ab = a.mul(b);
    let ba = b.mul(a);
    let ac = a.mul(c);
    let ca = c.mul(a);
    let abac = ab.mul(&ac);
    let d = [b.clone(), a.clone(), b.mul(a).mul(&inv(b)), c.clone(), inv(&abac)];
    let prod = d.iter().skip(1).fold(d[0].clone(), |acc, m| acc.mul(m));
    vec![
        ("(ab)^2(ba)^-2", sq(&ab).mul(&inv(&sq(&ba)))),
        ("(ac)^2(ca)^-2", sq(&ac).mul(&inv(&sq(&ca)))),
        ("[b,c]", b.mul(c).mul(&inv(b)).mul(&inv(c))),
        ("(ba)^2(ab)^-2", sq(&ba).mul(&inv(&sq(&ab)))),
        ("d1...d5", prod),
    ]
}

/// Whether every relation word is the identity.
pub fn rho_uv_relations(a: &Mat2<RF>, b: &Mat2<RF>, c: &Mat2<RF>) -> Vec<(&'static str, bool)> {
    let id = Mat2::identity(a.m[0][0].ctx());
    relation_words(a, b, c).into_iter().map(|(n, m)| (n, m == id)).collect()
}

/// Symbolic check over `Q(u, v)`.
pub fn rho_uv_relations_symbolic() -> Vec<(&'static str, bool)> {
    let ctx = Context::new(&["u", "v"]);
    let [a, b, c] = rho_uv(&RF::named(&ctx, "u"), &RF::named(&ctx, "v"));
    rho_uv_relations(&a, &b, &c)
}

pub fn rho_uv_numeric(u: C64, v: C64) -> [ComplexMatrix2; 3] {
    let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    [ComplexMatrix2::new(z, o, -o, z), ComplexMatrix2::diag(u, 1.0 / u), ComplexMatrix2::diag(v, 1.0 / v)]
}

/// Residual `‖w - I‖` of each relation word at numeric `(u, v)`.
pub fn rho_uv_relations_numeric(u: C64, v: C64) -> Vec<(&'static str, f64)> {
    let [a, b, c] = rho_uv_numeric(u, v);
    let sq = |m: &ComplexMatrix2| m.mul(m);
    let ab = a.mul(&b);
    let ba = b.mul(&a);
    let ac = a.mul(&c);
    let ca = c.mul(&a);
    let abac = ab.mul(&ac);
    let d = [b, a, b.mul(&a).mul(&b.inverse()), c, abac.inverse()];
    let prod = d.iter().fold(ComplexMatrix2::identity(), |acc, m| acc.mul(m));
    let id = ComplexMatrix2::identity();
    vec![
        ("(ab)^2(ba)^-2", sq(&ab).mul(&sq(&ba).inverse()).dist(&id)),
        ("(ac)^2(ca)^-2", sq(&ac).mul(&sq(&ca).inverse()).dist(&id)),
        ("[b,c]", b.mul(&c).mul(&b.inverse()).mul(&c.inverse()).dist(&id)),
        ("(ba)^2(ab)^-2", sq(&ba).mul(&sq(&ab).inverse()).dist(&id)),
        ("d1...d5", prod.dist(&id)),
    ]
}

/// The parameters `u = -e^{-iπλ0}, v = e^{-iπλ1}`.
pub fn uv_of(l0: f64, l1: f64) -> (C64, C64) {
    (-C64::from_polar(1.0, -PI * l0), C64::from_polar(1.0, -PI * l1))
}
