use dihedral_cli::{CheckReport, Status};
use std::path::PathBuf;
use std::process::{Command, Output};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("runs")
}

fn reports(o: &Output) -> Vec<CheckReport> {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

#[test]
fn flatness_at_two_three() {
    let o = verify(&["flatness", "--l0", "2", "--l1", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = reports(&o);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].residual, "0");
    assert_eq!(r[0].params["l0"], "2");
    // the sign convention is recorded
    assert_eq!(r[0].status, Status::Reconciled);
    assert!(r[0].notes.starts_with("sign ledger: "));
}

#[test]
fn malformed_rationals_exit_two() {
    for bad in ["2/0", "1.5", "x", "1/"] {
        let o = verify(&["flatness", "--l0", bad, "--l1", "3"]);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        assert!(o.stdout.is_empty());
    }
    assert_eq!(verify(&["flatness", "--l0", "-2/4", "--l1", "3", "--json"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(verify(&["nosuch"]).status.code(), Some(2));
    assert_eq!(verify(&["curve"]).status.code(), Some(2));
    assert_eq!(verify(&["curve", "--n", "0"]).status.code(), Some(2));
    assert_eq!(verify(&["pvi", "--beta", "1"]).status.code(), Some(2));
    assert_eq!(verify(&["report"]).status.code(), Some(2));
    assert_eq!(verify(&["report", "--all", "--l0", "1"]).status.code(), Some(2));
    assert_eq!(verify(&["monodromy", "--l0", "sym"]).status.code(), Some(2));
    assert_eq!(verify(&["flatness", "--tol", "abc"]).status.code(), Some(2));
}

#[test]
fn monodromy_five_records() {
    let o = verify(&["monodromy", "--l0", "1/3", "--l1", "1/5", "--alpha", "2", "--beta", "1/3", "--tol", "1e-10", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = reports(&o);
    let data = r[0].data.as_ref().unwrap();
    let labels: Vec<&str> = data["records"].as_array().unwrap().iter().map(|x| x["label"].as_str().unwrap()).collect();
    assert_eq!(labels.len(), 5);
    for l in ["0", "1", "t1", "t2", "inf"] {
        assert!(labels.contains(&l));
    }
    let residual: f64 = r[0].residual.parse().unwrap();
    assert!(residual <= 1e-10);
    // reconciled: the trace at infinity departs from the published closed form
    assert_eq!(r[0].status, Status::Reconciled);
}

#[test]
fn monodromy_perturbed_fails() {
    let o = verify(&["monodromy", "--perturb", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(reports(&o)[0].status, Status::Fail);
}

#[test]
fn curve_reports_quotient() {
    let o = verify(&["curve", "--n", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = reports(&o);
    assert_eq!(r[0].status, Status::Pass);
    assert!(r[0].notes.contains("quotient 16*u0*u1 - 12*u0 - 12*u1 + 9"), "{}", r[0].notes);
    assert_eq!(r[0].data.as_ref().unwrap()["curve_degree"], 4);
}

#[test]
fn fixtures_exit_codes() {
    let table = std::fs::read_to_string(fixture("exit_codes.txt")).unwrap();
    for line in table.lines().filter(|l| !l.trim().is_empty()) {
        let (name, code) = line.split_once(' ').unwrap();
        let path = fixture(name);
        let o = verify(&["report", "--config", path.to_str().unwrap(), "--json"]);
        assert_eq!(o.status.code(), Some(code.trim().parse().unwrap()), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn empty_config_gives_empty_array() {
    let o = verify(&["report", "--config", fixture("empty.json").to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(reports(&o), Vec::<CheckReport>::new());
}

#[test]
fn two_points_golden_values() {
    let o = verify(&["report", "--config", fixture("two_points.json").to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = reports(&o);
    // sorted by id then params
    let ids: Vec<&str> = r.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, ["flatness", "flatness", "monodromy", "pvi", "pvi", "pvi", "pvi", "residues", "residues", "sign_ledger"]);
    let find = |id: &str, l0: &str, l1: &str| {
        r.iter().find(|c| c.id == id && c.params["l0"] == l0 && c.params["l1"] == l1).unwrap()
    };
    // -(λ0-1)²/4, -λ1²/4, -1/16, -(λ0+λ1)²/4
    for (l0, l1, want) in [("2", "3", ["-1/4", "-9/4", "-1/16", "-25/4"]), ("1/3", "1/5", ["-1/9", "-1/100", "-1/16", "-16/225"])] {
        let c = find("residues", l0, l1);
        assert_eq!(c.residual, "0");
        let d = &c.data.as_ref().unwrap()["plane_determinants"];
        let got = ["y = 0", "x = 0", "conic", "line at infinity"].map(|k| d[k].as_str().unwrap().to_string());
        assert_eq!(got, want);
        // the line family: λ1 at 0, λ0 - 1 at 1, (λ0 + λ1) at infinity
        let d = &c.data.as_ref().unwrap()["line_determinants"];
        let got = ["0", "1", "t1", "t2", "inf"].map(|k| d[k].as_str().unwrap().to_string());
        assert_eq!(got, [want[1], want[0], "-1/16", "-1/16", want[3]]);
    }
    let pvi = find("pvi", "2", "3");
    assert_eq!(pvi.residual, "0");
    let abcd: Vec<&str> = pvi.data.as_ref().unwrap()["alpha_beta_gamma_delta"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(abcd, ["49/2", "-9/2", "1/8", "3/8"]);
    let pvi = find("pvi", "1/3", "1/5");
    let abcd: Vec<&str> = pvi.data.as_ref().unwrap()["alpha_beta_gamma_delta"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(abcd, ["169/450", "-1/50", "1/8", "3/8"]);
    // mixed grid points are valid too
    assert_eq!(find("pvi", "2", "1/5").status, Status::Pass);
}

#[test]
fn human_output_and_out_file() {
    let dir = std::env::temp_dir().join(format!("verify-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let o = verify(&["pvi", "--l0", "2", "--l1", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written: Vec<CheckReport> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written[0].id, "pvi");
    let o = verify(&["pvi", "--l0", "2", "--l1", "3"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("pass       pvi"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_bound_does_not_change_output() {
    let cfg = fixture("two_points.json");
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_verify"))
            .args(["report", "--config", cfg.to_str().unwrap(), "--json"])
            .env("DIHEDRAL_THREADS", threads)
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run("many").status.code(), Some(2));
}
