//! Config files for `report` and the parallel full run.
//!
//! ```json
//! { "tol": 1e-6,
//!   "checks": [ { "id": "flatness", "params": { "l0": ["1/3", "2"], "l1": "sym" } },
//!               { "id": "curve", "params": [{ "n": 1 }, { "n": 6 }], "perturb": true } ] }
//! ```
//!
//! `params` is one map or a list of maps; a list-valued entry expands to
//! the cartesian product. `tol` and `perturb` may also be set per check.

use crate::checks::{run_check, validate, CheckId, CheckSpec, Params};
use crate::report::{sort_reports, CheckReport, Status};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;
use std::collections::BTreeMap;

pub const DEFAULT_CONFIG: &str = include_str!("default_config.json");
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub perturb: bool,
    pub checks: Vec<ConfigCheck>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigCheck {
    pub id: String,
    #[serde(default)]
    pub params: Option<Value>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub perturb: Option<bool>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, String> {
        serde_json::from_str(text).map_err(|e| format!("config: {e}"))
    }

    pub fn default_all() -> Config {
        Config::parse(DEFAULT_CONFIG).expect("built-in config parses")
    }

    /// Expands grids into individual checks, validating each.
    pub fn specs(&self) -> Result<Vec<CheckSpec>, String> {
        let mut out = Vec::new();
        for c in &self.checks {
            let id = CheckId::parse(&c.id).ok_or_else(|| format!("unknown check id `{}`", c.id))?;
            let tol = c.tol.or(self.tol).unwrap_or(DEFAULT_TOL);
            let perturb = c.perturb.unwrap_or(self.perturb);
            for map in expand(c.params.as_ref())? {
                let spec = CheckSpec { id, params: Params::from_map(id, &map)?, tol, perturb };
                validate(&spec)?;
                out.push(spec);
            }
        }
        Ok(out)
    }
}

fn scalar(v: &Value) -> Result<String, String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        other => Err(format!("parameter values are \"p/q\" strings or integers, got {other}")),
    }
}

fn expand(params: Option<&Value>) -> Result<Vec<BTreeMap<String, String>>, String> {
    match params {
        None => Ok(vec![BTreeMap::new()]),
        Some(Value::Array(items)) => {
            let mut all = Vec::new();
            for it in items {
                all.extend(expand(Some(it))?);
            }
            Ok(all)
        }
        Some(Value::Object(map)) => {
            let mut rows = vec![BTreeMap::new()];
            for (k, v) in map {
                let values: Vec<String> = match v {
                    Value::Array(vs) => vs.iter().map(scalar).collect::<Result<_, _>>()?,
                    v => vec![scalar(v)?],
                };
                rows = rows
                    .into_iter()
                    .flat_map(|row| {
                        values.iter().map(move |val| {
                            let mut r = row.clone();
                            r.insert(k.clone(), val.clone());
                            r
                        })
                    })
                    .collect();
            }
            Ok(rows)
        }
        Some(other) => Err(format!("params must be an object or a list of objects, got {other}")),
    }
}

/// Thread pool bounded by `DIHEDRAL_THREADS` when set.
pub fn pool() -> Result<rayon::ThreadPool, String> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("DIHEDRAL_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| format!("DIHEDRAL_THREADS = {v}: not a number"))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| e.to_string())
}

/// Runs the checks in parallel and returns the reports in canonical order.
pub fn run_specs(specs: &[CheckSpec]) -> Result<Vec<CheckReport>, String> {
    let mut reports: Vec<CheckReport> = pool()?.install(|| specs.par_iter().map(run_check).collect());
    sort_reports(&mut reports);
    Ok(reports)
}

/// The full run: every check of `config`, plus one `sign_ledger` record
/// collecting the ledger notes of the reconciled checks.
pub fn run_all(config: &Config) -> Result<Vec<CheckReport>, String> {
    let specs = config.specs()?;
    let mut reports = run_specs(&specs)?;
    if reports.is_empty() {
        return Ok(reports);
    }
    let mut entries: Vec<String> = Vec::new();
    for r in reports.iter().filter(|r| r.status == Status::Reconciled) {
        for line in r.notes.lines().filter(|l| l.starts_with("sign ledger: ")) {
            let e = format!("{}: {}", r.id, &line["sign ledger: ".len()..]);
            if !entries.contains(&e) {
                entries.push(e);
            }
        }
    }
    reports.push(CheckReport {
        id: "sign_ledger".into(),
        params: BTreeMap::new(),
        status: if entries.is_empty() { Status::Pass } else { Status::Reconciled },
        residual: "0".into(),
        notes: entries.join("\n"),
        data: None,
    });
    sort_reports(&mut reports);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_expand_to_products() {
        let c = Config::parse(r#"{"checks":[{"id":"pvi","params":{"l0":["1","2"],"l1":["3","4","5"]}}]}"#).unwrap();
        assert_eq!(c.specs().unwrap().len(), 6);
        let c = Config::parse(r#"{"checks":[{"id":"curve","params":[{"n":1},{"n":[2,3]}]}]}"#).unwrap();
        let ns: Vec<u32> = c.specs().unwrap().iter().map(|s| s.params.n.unwrap()).collect();
        assert_eq!(ns, [1, 2, 3]);
    }

    #[test]
    fn bad_configs_are_rejected() {
        for text in [
            r#"{"checks":[{"id":"nope"}]}"#,
            r#"{"checks":[{"id":"pvi","params":{"l0":"2/0"}}]}"#,
            r#"{"checks":[{"id":"pvi","params":{"beta":"1"}}]}"#,
            r#"{"checks":[{"id":"monodromy","params":{"l0":"1/3"}}]}"#,
            r#"{"checks":[{"id":"pvi","params":{"l0":0.5}}]}"#,
        ] {
            let r = Config::parse(text).and_then(|c| c.specs());
            assert!(r.is_err(), "{text}");
        }
        assert!(Config::parse(r#"{"checks":[], "extra": 1}"#).is_err());
    }

    #[test]
    fn empty_list_gives_empty_report() {
        let c = Config::parse(r#"{"checks":[]}"#).unwrap();
        assert!(run_all(&c).unwrap().is_empty());
    }

    #[test]
    fn default_config_is_valid() {
        let specs = Config::default_all().specs().unwrap();
        assert_eq!(specs.iter().filter(|s| s.id == CheckId::Curve).count(), 6);
        for id in CheckId::ALL {
            assert!(specs.iter().any(|s| s.id == id), "{id}");
        }
    }
}
