use clap::{Args, Parser, Subcommand};
use dihedral_cli::checks::{parse_value, validate};
use dihedral_cli::config::{run_all, run_specs, Config, DEFAULT_TOL};
use dihedral_cli::report::{exit_code, to_json, CheckReport};
use dihedral_cli::{CheckId, CheckSpec, Params};
use cas_kernel::{ratio, Rational};
use std::process::ExitCode;

/// Verify the dihedral connection family: exact identities, numerical
/// monodromy and the associated foliation.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Curvature of Ω and the sign convention.
    Flatness,
    /// Residue determinants on the plane and on the line family.
    Residues,
    /// Loop monodromy on the line y = αx + β.
    Monodromy,
    /// The algebraic Painlevé VI solution.
    Pvi,
    /// The Garnier system and the sign ledger.
    Garnier,
    /// Singular points, Lotka–Volterra equivalence and the quintic.
    Foliation,
    /// The invariant curve C_n upstairs.
    Curve {
        #[arg(long)]
        n: u32,
    },
    /// Several checks at once.
    Report {
        /// The built-in configuration covering every check.
        #[arg(long, conflicts_with = "config")]
        all: bool,
        /// A JSON configuration file.
        #[arg(long)]
        config: Option<std::path::PathBuf>,
    },
}

/// An exact rational, or `sym`.
#[derive(Clone, Debug)]
struct Exact(Option<Rational>);

fn value(s: &str) -> Result<Exact, String> {
    parse_value(s).map(Exact)
}

#[derive(Args, Debug)]
struct Opts {
    /// λ0 as "p/q" (symbolic when omitted)
    #[arg(long, global = true, value_parser = value, allow_hyphen_values = true)]
    l0: Option<Exact>,
    #[arg(long, global = true, value_parser = value, allow_hyphen_values = true)]
    l1: Option<Exact>,
    #[arg(long, global = true, value_parser = value, allow_hyphen_values = true)]
    alpha: Option<Exact>,
    #[arg(long, global = true, value_parser = value, allow_hyphen_values = true)]
    beta: Option<Exact>,
    #[arg(long, global = true, value_parser = value, allow_hyphen_values = true)]
    z: Option<Exact>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Print the JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Run the negative control of each check.
    #[arg(long, global = true)]
    perturb: bool,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("verify: {msg}");
    ExitCode::from(2)
}

fn single(id: CheckId, o: &Opts, n: Option<u32>) -> CheckSpec {
    let pick = |v: &Option<Exact>, default: Option<Rational>| match v {
        Some(v) => v.0.clone(),
        None => default,
    };
    let mono = id == CheckId::Monodromy;
    let d = |r: Rational| if mono { Some(r) } else { None };
    let params = Params {
        l0: pick(&o.l0, d(ratio(1, 3))),
        l1: pick(&o.l1, d(ratio(1, 5))),
        alpha: pick(&o.alpha, d(ratio(2, 1))),
        beta: pick(&o.beta, d(ratio(1, 3))),
        z: pick(&o.z, None),
        n,
    };
    CheckSpec { id, params, tol: o.tol.unwrap_or(DEFAULT_TOL), perturb: o.perturb }
}

fn ignored_flags(o: &Opts, id: CheckId) -> Vec<&'static str> {
    let given = [
        ("l0", o.l0.is_some()),
        ("l1", o.l1.is_some()),
        ("alpha", o.alpha.is_some()),
        ("beta", o.beta.is_some()),
        ("z", o.z.is_some()),
    ];
    given.into_iter().filter(|(k, g)| *g && !id.keys().contains(k)).map(|(k, _)| k).collect()
}

fn emit(reports: &[CheckReport], o: &Opts) -> ExitCode {
    let text = to_json(reports);
    if let Some(path) = &o.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("verify: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if o.json {
        print!("{text}");
    } else if o.out.is_none() {
        for r in reports {
            println!("{}", r.line());
        }
    }
    ExitCode::from(exit_code(reports) as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let o = &cli.opts;
    let (id, n) = match &cli.command {
        Command::Report { all, config } => {
            if o.l0.is_some() || o.l1.is_some() || o.alpha.is_some() || o.beta.is_some() || o.z.is_some() || o.tol.is_some() {
                return usage("report takes its parameters from the configuration");
            }
            let mut cfg = match (all, config) {
                (true, _) => Config::default_all(),
                (false, Some(path)) => match std::fs::read_to_string(path) {
                    Ok(text) => match Config::parse(&text) {
                        Ok(c) => c,
                        Err(e) => return usage(e),
                    },
                    Err(e) => return usage(format!("{}: {e}", path.display())),
                },
                (false, None) => return usage("report needs --all or --config FILE"),
            };
            cfg.perturb |= o.perturb;
            return match run_all(&cfg) {
                Ok(r) => emit(&r, o),
                Err(e) => usage(e),
            };
        }
        Command::Flatness => (CheckId::Flatness, None),
        Command::Residues => (CheckId::Residues, None),
        Command::Monodromy => (CheckId::Monodromy, None),
        Command::Pvi => (CheckId::Pvi, None),
        Command::Garnier => (CheckId::Garnier, None),
        Command::Foliation => (CheckId::Foliation, None),
        Command::Curve { n } => (CheckId::Curve, Some(*n)),
    };
    let bad = ignored_flags(o, id);
    if !bad.is_empty() {
        return usage(format!("`{id}` does not take --{}", bad.join(", --")));
    }
    let spec = single(id, o, n);
    if let Err(e) = validate(&spec) {
        return usage(e);
    }
    match run_specs(&[spec]) {
        Ok(r) => emit(&r, o),
        Err(e) => usage(e),
    }
}
