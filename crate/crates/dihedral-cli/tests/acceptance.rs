//! Acceptance criteria, one line each. Exits non-zero if any fails.

use cas_kernel::{ratio, rf, Context};
use dihedral::connection::*;
use dihedral::foliation::*;
use dihedral::isomonodromy::*;
use dihedral::monodromy::*;
use dihedral::ParameterPoint;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn sym() -> ParameterPoint {
    ParameterPoint::symbolic()
}

fn flatness() -> Outcome {
    // ∇ = d - Θ with Θ = -Ω
    let c = build_connection(&sym());
    let mut theta = c.clone();
    theta.omega = c.omega.map(|f| f.neg());
    let r = flatness_residual_other_sign(&theta);
    outcome(r.is_zero(), format!("dΘ - Θ∧Θ = {} for Θ = -Ω", render_residual(&r).trim()))
}

fn trace_free() -> Outcome {
    let t = build_connection(&sym()).trace();
    outcome(t.is_zero(), format!("trace(Ω) = {}", t.render()))
}

fn residue_spectra() -> Outcome {
    let table = match residue_table(&build_connection(&sym())) {
        Ok(t) => t,
        Err(e) => return outcome(false, e.to_string()),
    };
    let cc = Context::new(&["s", "l0", "l1"]);
    let want = ["-(l0-1)^2/4", "-l1^2/4", "-1/16", "-(l0+l1)^2/4"];
    let plane = table.len() == 4 && table.iter().zip(want).all(|(e, w)| e.det == rf(&cc, w) && e.matches());
    let line = match verify_line_residues(&sym(), &ChartPoint::symbolic()) {
        Ok(r) => r.residues.len() == 5 && r.all_match(),
        Err(e) => return outcome(false, e.to_string()),
    };
    let dets: Vec<String> = table.iter().map(|e| format!("{}: {}", e.divisor, e.det.render())).collect();
    outcome(plane && line, format!("{}; line family (0, 1, t1, t2, inf) {}", dets.join(", "), if line { "match" } else { "mismatch" }))
}

fn construction_chain() -> Outcome {
    let p = sym();
    let up = UpstairsData::new(&p);
    let holds = [
        verify_eta_invariance(&up),
        verify_pullback_identity(&up).unwrap_or(false),
        verify_phi_conjugation(&p),
    ];
    let controls = [
        verify_eta_invariance(&UpstairsData::build(&p, Omega0::Symmetric, Variant::Corrected, false)),
        verify_pullback_identity(&UpstairsData::build(&p, Omega0::Antisymmetric, Variant::Corrected, true)).unwrap_or(false),
        phi_conjugation(&p, FiberMap::Unshifted, Variant::Corrected, Variant::Corrected),
    ];
    let pass = holds.iter().all(|b| *b) && controls.iter().all(|b| !*b);
    outcome(pass, format!("identities {holds:?}, controls hold {controls:?}"))
}

fn pvi() -> Outcome {
    let d = pvi_data(&sym());
    let zero = pvi_residual(&d).is_zero();
    let same = q_from_residues(&sym()).map(|h| h.q == d.q).unwrap_or(false);
    outcome(zero && same, format!("residual zero: {zero}, q from residues matches: {same}"))
}

fn garnier() -> Outcome {
    let rep = match verify_garnier_relations(&sym()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let verified = rep.ledger.iter().filter(|e| e.convention != SignConvention::Neither).count();
    let one_each = rep.ledger.len() == 2 && verified == 2;
    let r = &rep.residuals;
    let pass = one_each && r.symmetrized_zero() && r.all_zero() && r.symmetrized.len() == 8;
    let ledger: Vec<String> = rep.ledger.iter().map(|e| format!("{} [{:?}]", e.relation, e.convention)).collect();
    outcome(pass, format!("{}; {} symmetrized residuals zero in Q(δ)", ledger.join("; "), r.symmetrized.iter().filter(|(_, z)| *z).count()))
}

fn quartic() -> Outcome {
    let q = match elimination_quartic(&sym()) {
        Ok(q) => q,
        Err(e) => return outcome(false, e.to_string()),
    };
    let deg = q.degree_in(q.ctx().var("X"));
    let vanishes = quartic_vanishes_on_parametrization(&sym(), &q).unwrap_or(false);
    let p = ParameterPoint::ints(2, 3);
    let qs = specialize_quartic(&p, &q);
    let tol = 1e-6;
    let pats = [
        (quartic_probe(&qs, Locus::T1To(0.0), 7.0, tol).pattern, vec![2, 2]),
        (quartic_probe(&qs, Locus::T1To(1.0), 7.0, tol).pattern, vec![2, 2]),
        (quartic_probe(&qs, Locus::T1ToInfinity, 7.0, tol).pattern, vec![4]),
        (quartic_probe(&qs, Locus::Diagonal(1.0 / 3.0), 1.0 / 3.0, tol).pattern, vec![1, 1, 1, 1]),
    ];
    let ok = pats.iter().all(|(a, b)| a == b);
    let shown: Vec<String> = pats.iter().map(|(a, _)| format!("{a:?}")).collect();
    outcome(deg == 4 && vanishes && ok, format!("deg {deg}, vanishes {vanishes}, patterns t1→0,1,∞,diag {}", shown.join(" ")))
}

fn monodromy() -> Outcome {
    let p = ParameterPoint::rational(ratio(1, 3), ratio(1, 5));
    let recs = match line_restriction(&p, &ratio(2, 1), &ratio(1, 3)).and_then(|lr| monodromy_representation(&lr, None, 1e-10)) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let expected = [2.0 * (PI / 5.0).cos(), -2.0 * (PI / 3.0).cos(), 0.0, 0.0, 2.0 * (2.0 * PI / 15.0).cos()];
    let traces: Vec<C64> = recs.iter().map(|r| r.trace).collect();
    let trace_dev = multiset_deviation(&traces, &expected);
    let d = verify_dihedral(&recs);
    let checks = [
        trace_dev <= 1e-6,
        d.max_det_error <= 1e-9,
        d.commutator_residual <= 1e-7,
        d.product_residual <= 1e-6,
    ];
    let (l0, l1) = (1.0 / 3.0, 1.0 / 5.0);
    let from_residues = multiset_deviation(&traces, &residue_traces(l0, l1));
    outcome(
        checks.iter().all(|b| *b),
        format!(
            "trace multiset dev {trace_dev:.3e} (vs residue-derived traces {from_residues:.3e}), det {:.1e}, commutator {:.1e}, product {:.1e} over {:?}",
            d.max_det_error, d.commutator_residual, d.product_residual, d.ordering
        ),
    )
}

fn rho_relations() -> Outcome {
    let r = rho_uv_relations_symbolic();
    let bad: Vec<&str> = r.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    outcome(bad.is_empty() && r.len() == 5, format!("{} relations, failing {bad:?}", r.len()))
}

fn foliation() -> Outcome {
    let f = FoliationForm::new(&sym());
    let pts = singular_points(&f).map(|v| v.len() == 7 && v.iter().all(|s| s.vanishes)).unwrap_or(false);
    let lv = lv_equivalence(&sym());
    let (wedge, abc) = match &lv {
        Ok(r) => (r.wedge.is_zero() && r.contractions_vanish, r.abc_product_is_one),
        Err(_) => (false, false),
    };
    let j = j_orbit_check(&sym());
    let certs = invariant_curves(&[1, 2, 3, 4, 5, 6]);
    let curves = certs.iter().zip(1u32..).all(|(c, n)| matches!(c, Ok(c) if c.invariant && c.reverified && c.curve_degree == n + 1));
    let deg6 = certs[5].as_ref().map(|c| c.curve_degree).unwrap_or(0);
    outcome(
        pts && wedge && abc && j && curves && deg6 == 7,
        format!("points {pts}, wedge {wedge}, ABC = 1 {abc}, J-orbit {j}, curves n=1..6 {curves} (n = 6 degree {deg6})"),
    )
}

fn determinism() -> Outcome {
    let run = || Command::new(env!("CARGO_BIN_EXE_verify")).args(["report", "--all", "--json"]).output();
    let (a, b) = match (run(), run()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return outcome(false, e.to_string()),
    };
    let same = a.stdout == b.stdout;
    let code = a.status.code();
    let statuses_ok = serde_json::from_slice::<Vec<dihedral_cli::CheckReport>>(&a.stdout)
        .map(|r| !r.is_empty() && r.iter().all(|c| c.status.ok()))
        .unwrap_or(false);
    outcome(
        same && statuses_ok && code == Some(0) && b.status.code() == Some(0),
        format!("byte-identical {same}, {} bytes, all pass/reconciled {statuses_ok}, exit {code:?}", a.stdout.len()),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 11] = [
        ("flatness", flatness, Some(Duration::from_secs(60))),
        ("trace-free", trace_free, None),
        ("residue spectra", residue_spectra, None),
        ("construction chain", construction_chain, None),
        ("Painlevé VI", pvi, None),
        ("Garnier system", garnier, Some(Duration::from_secs(600))),
        ("elimination quartic", quartic, None),
        ("numerical monodromy", monodromy, Some(Duration::from_secs(60))),
        ("representation relations", rho_relations, None),
        ("foliation", foliation, None),
        ("full-suite determinism", determinism, None),
    ];
    let mut failed = 0;
    for (k, (name, f, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut o = f();
        let dt = t.elapsed();
        if let Some(limit) = limit {
            if dt > *limit {
                o.pass = false;
                o.detail.push_str(&format!("; over the {:?} budget", limit));
            }
        }
        if !o.pass {
            failed += 1;
        }
        println!("{} {:>2}. {name} ({:.1} s): {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, dt.as_secs_f64(), o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
