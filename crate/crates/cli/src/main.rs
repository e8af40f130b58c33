//! Command-line interface for volumetric simplex moments.
//!
//! Exit codes: 0 = success, 1 = verify tolerance breach, 2 = error.
//! Thread count is controlled by the `RAYON_NUM_THREADS` environment
//! variable (the default uses all cores).

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use simplex_moments::catalog;
use simplex_moments::moments::{ball_moment, even_moment};
use simplex_moments::montecarlo::{efron_mean, mc_moment};
use simplex_moments::report::{
    polytope_to_json, render_value, reports_to_csv, reports_to_json, run_suite, sig15,
    suite_names, Report,
};
use simplex_moments::section::config_contribution;
use simplex_moments::symmetry::{build_genealogy, export_dot, Configuration};
use simplex_moments::{ClosedFormValue, Error, QuadratureSpec};

#[derive(Parser)]
#[command(
    name = "simplex-moments",
    about = "Moments of the volume of a random simplex in a convex polytope",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the configuration table of a catalog solid.
    Configs {
        /// Solid name (e.g. T3, cube, octahedron).
        solid: String,
        /// Emit JSON instead of a text table.
        #[arg(long)]
        json: bool,
    },
    /// Export the configuration genealogy as a Graphviz DOT file.
    Genealogy {
        solid: String,
        /// Output path for the DOT graph ("-" for stdout).
        #[arg(long)]
        dot: String,
    },
    /// Exact even volumetric moment (rational output).
    EvenMoment {
        solid: String,
        /// Even moment order.
        #[arg(short)]
        k: usize,
    },
    /// Odd volumetric moment via the section integral.
    OddMoment {
        solid: String,
        /// Odd moment order.
        #[arg(short)]
        k: usize,
        /// Quadrature nodes per axis.
        #[arg(long)]
        nodes: Option<usize>,
        /// Relative tolerance for the convergence check.
        #[arg(long)]
        tol: Option<f64>,
        /// Compute a single configuration (label as printed by `configs`).
        #[arg(long)]
        config: Option<String>,
        /// Stream per-configuration progress as line-delimited JSON (stderr).
        #[arg(long)]
        telemetry: bool,
    },
    /// Monte Carlo estimate of E[vol^k] / vol^k for the hull of n points.
    Mc {
        solid: String,
        /// Number of points (n = d+1 is the simplex moment).
        #[arg(short)]
        n: usize,
        /// Moment order.
        #[arg(short)]
        k: usize,
        /// Sample count.
        #[arg(short = 'N', long = "samples")]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo mean simplex volume via the exact-Gamma identity.
    Efron {
        solid: String,
        /// Number of points.
        #[arg(short)]
        n: usize,
        #[arg(short = 'N', long = "samples")]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Closed-form moment of a random simplex in the unit ball.
    Ball {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
    },
    /// Export a catalog polytope (vertices and symmetry) as JSON.
    Export { solid: String },
    /// Run a named verification suite and emit reports.
    Verify {
        /// Suite name; use `list` to print the available suites.
        suite: String,
        /// Emit CSV instead of JSON.
        #[arg(long)]
        csv: bool,
        /// Relative-discrepancy threshold for the exit status
        /// (default 1e-3; 1e-2 for the Monte Carlo suite).
        #[arg(long)]
        tol: Option<f64>,
        /// Quadrature nodes per axis for numerical suites.
        #[arg(long)]
        nodes: Option<usize>,
        /// Seed for Monte Carlo suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(hint) = hint_for(&e) {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(2)
        }
    }
}

fn hint_for(e: &Error) -> Option<String> {
    match e {
        Error::UnknownPolytope(_) => Some(format!(
            "available solids: {}",
            catalog::catalog()
                .iter()
                .map(|e| e.name)
                .collect::<Vec<_>>()
                .join(", ")
        )),
        Error::ExpansionTooLarge { .. } => Some(
            "the exact even-moment expansion grows as ((m+1)!)^(k-1); \
             reduce the moment order or the dimension"
                .into(),
        ),
        Error::TooManyVertices { .. } => Some(
            "configuration enumeration supports at most 31 vertices; \
             this solid only supports even moments"
                .into(),
        ),
        _ => None,
    }
}

fn quad_spec(nodes: Option<usize>, tol: Option<f64>) -> QuadratureSpec {
    let mut spec = QuadratureSpec::default();
    if let Some(n) = nodes {
        spec.points_per_axis = n;
    }
    if let Some(t) = tol {
        spec.rel_tol = t;
    }
    spec
}

/// Display labels: published labels where the match is unambiguous, the
/// enumeration's own labels otherwise.
fn display_labels(entry: &catalog::CatalogEntry, configs: &[Configuration]) -> Vec<String> {
    let matched = entry.label_match(configs);
    configs
        .iter()
        .zip(matched.labels)
        .map(|(c, m)| m.unwrap_or_else(|| c.label.clone()))
        .collect()
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Configs { solid, json } => {
            let entry = catalog::find(&solid)?;
            let configs = entry.configurations()?;
            let labels = display_labels(&entry, &configs);
            if json {
                let rows: Vec<serde_json::Value> = configs
                    .iter()
                    .zip(&labels)
                    .filter(|(c, _)| !c.is_empty_separation())
                    .map(|(c, label)| {
                        serde_json::json!({
                            "label": label,
                            "representative": c.rep,
                            "orbit_size": c.orbit_size,
                            "weight": c.weight.to_string(),
                            "section_order": c.order,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else {
                println!("{:<8} {:<20} {:>7} {:>7} {:>5}", "label", "S", "o_C", "w_C", "n_C");
                for (c, label) in configs.iter().zip(&labels) {
                    println!(
                        "{:<8} {:<20} {:>7} {:>7} {:>5}",
                        label,
                        format!("{:?}", c.rep),
                        c.orbit_size,
                        c.weight.to_string(),
                        c.order
                    );
                }
                let m = entry.label_match(&configs);
                for f in &m.flags {
                    eprintln!("note: {f}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Genealogy { solid, dot } => {
            let entry = catalog::find(&solid)?;
            let configs = entry.configurations()?;
            let genealogy = build_genealogy(&configs, &entry.group);
            let text = export_dot(entry.name, &configs, &genealogy);
            if dot == "-" {
                print!("{text}");
            } else {
                std::fs::write(&dot, text)
                    .map_err(|e| Error::Invalid(format!("cannot write {dot}: {e}")))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::EvenMoment { solid, k } => {
            if k == 0 || k % 2 != 0 {
                return Err(Error::Unsupported(format!(
                    "even-moment requires a positive even order, got {k}; \
                     use `odd-moment` for odd orders"
                )));
            }
            let entry = catalog::find(&solid)?;
            println!("{}", even_moment(&entry.polytope, k)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::OddMoment { solid, k, nodes, tol, config, telemetry } => {
            if k % 2 == 0 {
                return Err(Error::Unsupported(format!(
                    "odd-moment requires an odd order, got {k}; \
                     use `even-moment` for even orders"
                )));
            }
            let entry = catalog::find(&solid)?;
            let spec = quad_spec(nodes, tol);
            let configs = entry.configurations()?;
            let labels = display_labels(&entry, &configs);
            let selected: Vec<usize> = match &config {
                Some(want) => {
                    let found: Vec<usize> = (0..configs.len())
                        .filter(|&i| {
                            !configs[i].is_empty_separation()
                                && (labels[i] == *want || configs[i].label == *want)
                        })
                        .collect();
                    if found.is_empty() {
                        return Err(Error::Invalid(format!(
                            "no configuration labelled '{want}'; \
                             run `configs {solid}` to list labels"
                        )));
                    }
                    found
                }
                None => (0..configs.len())
                    .filter(|&i| !configs[i].is_empty_separation())
                    .collect(),
            };
            let mut total = 0.0;
            let mut error = 0.0;
            let mut all_converged = true;
            for &i in &selected {
                let est = config_contribution(&entry.polytope, &configs[i], k, &spec)?;
                let w = simplex_moments::rat::to_f64(&est.weight);
                total += w * est.value;
                error += w * est.error;
                all_converged &= est.converged;
                if telemetry {
                    let line = serde_json::json!({
                        "config": labels[i],
                        "weight": est.weight.to_string(),
                        "value": est.value,
                        "error": est.error,
                        "nodes": est.nodes,
                        "converged": est.converged,
                        "partial_total": total,
                    });
                    let mut err = std::io::stderr().lock();
                    let _ = writeln!(err, "{line}");
                }
                if config.is_some() {
                    println!("{} = {}", labels[i], sig15(est.value));
                }
            }
            if config.is_none() {
                println!("{}", sig15(total));
                println!("error estimate: {}", sig15(error));
                if !all_converged {
                    eprintln!(
                        "note: some configurations did not meet the relative \
                         tolerance; increase --nodes"
                    );
                }
                if let Some(r) = entry.reference(&format!("v{k}")) {
                    let reference = r.value.to_f64();
                    println!("reference: {}", render_value(&r.value));
                    println!(
                        "relative discrepancy: {}",
                        sig15((total - reference).abs() / reference.abs())
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mc { solid, n, k, samples, seed } => {
            if n == 0 {
                return Err(Error::Invalid("need at least one point".into()));
            }
            let entry = catalog::find(&solid)?;
            // the library indexes hulls by n where the hull has n+1 points
            let est = mc_moment(&entry.polytope, n - 1, k, samples, seed)?;
            println!("{}", sig15(est.mean));
            println!("ci95: [{}, {}]", sig15(est.ci95.0), sig15(est.ci95.1));
            Ok(ExitCode::SUCCESS)
        }
        Command::Efron { solid, n, samples, seed } => {
            if n == 0 {
                return Err(Error::Invalid("need at least one point".into()));
            }
            let entry = catalog::find(&solid)?;
            let est = efron_mean(&entry.polytope, n - 1, samples, seed)?;
            println!("{}", sig15(est.mean));
            println!("ci95: [{}, {}]", sig15(est.ci95.0), sig15(est.ci95.1));
            Ok(ExitCode::SUCCESS)
        }
        Command::Ball { d, k } => {
            let v = ball_moment(d, k);
            match v {
                ClosedFormValue::Approx(x) => println!("{}", sig15(x)),
                other => println!("{other}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { solid } => {
            let entry = catalog::find(&solid)?;
            let gens = entry.group.elements().to_vec();
            println!("{}", polytope_to_json(entry.name, &entry.polytope, &gens)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, csv, tol, nodes, seed } => {
            if suite == "list" {
                for s in suite_names() {
                    println!("{s}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let spec = quad_spec(nodes, None);
            let tol = tol.unwrap_or(if suite == "mc-seeded" { 1e-2 } else { 1e-3 });
            let reports = run_suite(&suite, &spec, seed)?;
            if csv {
                print!("{}", reports_to_csv(&reports));
            } else {
                println!("{}", reports_to_json(&reports));
            }
            let breached = reports.iter().any(|r: &Report| r.breaches(tol));
            Ok(if breached { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
    }
}
