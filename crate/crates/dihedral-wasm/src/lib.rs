//! Browser bindings. Every entry point takes exact rationals as `p/q`
//! strings and returns a JSON document; errors come back as strings.

use cas_kernel::{parse_rational, Rational};
use dihedral::connection::{build_connection, residue_table, verify_flatness};
use dihedral::foliation::invariant_curve_n;
use dihedral::monodromy::{line_restriction, monodromy_representation, printed_traces, residue_traces, verify_dihedral};
use dihedral::ParameterPoint;
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn exact(name: &str, s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| format!("{name}: {e}"))
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Puncture {
    label: String,
    at: (f64, f64),
}

#[derive(Serialize)]
struct LoopTrace {
    label: String,
    path: Vec<(f64, f64)>,
    trace: (f64, f64),
    from_residues: f64,
    published: f64,
    det: (f64, f64),
}

#[derive(Serialize)]
struct MonodromyView {
    punctures: Vec<Puncture>,
    base: (f64, f64),
    loops: Vec<LoopTrace>,
    commutator_residual: f64,
    product_residual: f64,
    product_ordering: Vec<String>,
}

const TRACE_LABELS: [&str; 5] = ["0", "1", "t1", "t2", "inf"];

/// Loops, local traces and the dihedral residuals on `y = αx + β`.
pub fn monodromy_view(l0: &str, l1: &str, alpha: &str, beta: &str) -> Result<String, String> {
    let p = ParameterPoint::rational(exact("l0", l0)?, exact("l1", l1)?);
    let lr = line_restriction(&p, &exact("alpha", alpha)?, &exact("beta", beta)?).map_err(|e| e.to_string())?;
    let recs = monodromy_representation(&lr, None, 1e-9).map_err(|e| e.to_string())?;
    let (x0, x1) = p.as_f64().expect("rational");
    let (fr, pr) = (residue_traces(x0, x1), printed_traces(x0, x1));
    let d = verify_dihedral(&recs);
    let loops = recs
        .iter()
        .map(|r| {
            let k = TRACE_LABELS.iter().position(|l| *l == r.label).expect("known label");
            LoopTrace {
                label: r.label.clone(),
                path: r.lp.waypoints(),
                trace: (r.trace.re, r.trace.im),
                from_residues: fr[k],
                published: pr[k],
                det: (r.det.re, r.det.im),
            }
        })
        .collect();
    to_json(&MonodromyView {
        punctures: lr.punctures.iter().map(|(l, z)| Puncture { label: l.clone(), at: (z.re, z.im) }).collect(),
        base: recs.first().map(|r| r.lp.base).unwrap_or_default(),
        loops,
        commutator_residual: d.commutator_residual,
        product_residual: d.product_residual,
        product_ordering: d.ordering,
    })
}

#[derive(Serialize)]
struct ResidueRow {
    divisor: String,
    det: String,
    expected: String,
    matches: bool,
}

#[derive(Serialize)]
struct SpectrumView {
    flat: bool,
    trace_free: bool,
    residues: Vec<ResidueRow>,
}

/// Flatness, trace and residue determinants at exact `(λ0, λ1)`.
pub fn spectrum_view(l0: &str, l1: &str) -> Result<String, String> {
    let p = ParameterPoint::rational(exact("l0", l0)?, exact("l1", l1)?);
    let c = build_connection(&p);
    let table = residue_table(&c).map_err(|e| e.to_string())?;
    to_json(&SpectrumView {
        flat: verify_flatness(&c).is_zero(),
        trace_free: c.trace().is_zero(),
        residues: table
            .iter()
            .map(|e| ResidueRow {
                divisor: e.divisor.into(),
                det: e.det.render(),
                expected: e.expected_det.render(),
                matches: e.matches(),
            })
            .collect(),
    })
}

#[derive(Serialize)]
struct CurveView {
    curve: String,
    quotient: Option<String>,
    invariant: bool,
    curve_degree: u32,
    /// Grid cells `(u0, u1)` crossed by the real curve.
    cells: Vec<(f64, f64)>,
}

/// Sign changes of `u0^n(u0-1) - u1^n(u1-1)` on a `size × size` grid over
/// `[lo, hi]²`.
pub fn real_points(n: u32, lo: f64, hi: f64, size: usize) -> Vec<(f64, f64)> {
    let f = |u: f64, v: f64| u.powi(n as i32) * (u - 1.0) - v.powi(n as i32) * (v - 1.0);
    let h = (hi - lo) / size as f64;
    let mut out = Vec::new();
    for i in 0..size {
        for j in 0..size {
            let (u, v) = (lo + i as f64 * h, lo + j as f64 * h);
            let s = [f(u, v), f(u + h, v), f(u, v + h), f(u + h, v + h)];
            let pos = s.iter().any(|x| *x > 0.0);
            let neg = s.iter().any(|x| *x < 0.0);
            if pos && neg {
                out.push((u + h / 2.0, v + h / 2.0));
            }
        }
    }
    out
}

/// The certificate for `C_n` with its real points.
pub fn curve_view(n: u32) -> Result<String, String> {
    if !(1..=40).contains(&n) {
        return Err("n must be between 1 and 40".into());
    }
    let c = invariant_curve_n(n).map_err(|e| e.to_string())?;
    to_json(&CurveView {
        curve: c.curve,
        quotient: c.quotient,
        invariant: c.invariant && c.reverified,
        curve_degree: c.curve_degree,
        cells: real_points(n, -1.5, 2.5, 160),
    })
}

#[wasm_bindgen]
pub fn monodromy(l0: &str, l1: &str, alpha: &str, beta: &str) -> Result<String, JsError> {
    monodromy_view(l0, l1, alpha, beta).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn spectrum(l0: &str, l1: &str) -> Result<String, JsError> {
    spectrum_view(l0, l1).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn curve(n: u32) -> Result<String, JsError> {
    curve_view(n).map_err(|e| JsError::new(&e))
}
