use dihedral_wasm::*;
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn monodromy_view_has_five_loops() {
    let v = parse(monodromy_view("1/3", "1/5", "2", "1/3"));
    let loops = v["loops"].as_array().unwrap();
    assert_eq!(loops.len(), 5);
    for l in loops {
        let (re, im) = (l["trace"][0].as_f64().unwrap(), l["trace"][1].as_f64().unwrap());
        assert!((re - l["from_residues"].as_f64().unwrap()).abs() < 1e-6 && im.abs() < 1e-6, "{l}");
        assert!(l["path"].as_array().unwrap().len() > 10);
    }
    assert_eq!(v["punctures"].as_array().unwrap().len(), 4);
    assert!(v["product_residual"].as_f64().unwrap() < 1e-6);
}

#[test]
fn errors_are_messages() {
    assert!(monodromy_view("1/0", "1", "2", "1/3").unwrap_err().contains("l0"));
    assert!(monodromy_view("1/3", "1/5", "1", "1/3").unwrap_err().contains("degenerate"));
    assert!(curve_view(0).is_err());
}

#[test]
fn spectrum_at_two_three() {
    let v = parse(spectrum_view("2", "3"));
    assert_eq!(v["flat"], true);
    assert_eq!(v["trace_free"], true);
    let dets: Vec<&str> = v["residues"].as_array().unwrap().iter().map(|r| r["det"].as_str().unwrap()).collect();
    assert_eq!(dets, ["-1/4", "-9/4", "-1/16", "-25/4"]);
}

#[test]
fn curve_points_lie_near_the_curve() {
    let v = parse(curve_view(3));
    assert_eq!(v["invariant"], true);
    assert_eq!(v["curve_degree"], 4);
    // the diagonal u0 = u1 is a component
    let cells = real_points(3, -1.5, 2.5, 160);
    assert!(cells.iter().any(|(u, w)| (u - w).abs() < 0.05 && *u > 2.0));
    for (u, w) in cells {
        let f = |x: f64| x.powi(3) * (x - 1.0);
        assert!((f(u) - f(w)).abs() < 2.0, "({u}, {w})");
    }
}
