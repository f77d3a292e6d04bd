//! `rainbow`: batch verification CLI for rainbow regularity of rational
//! matrices, kernel colorings, Ehrhart counts, and graph flows.
//!
//! Exit codes: 0 success / positive verdict, 1 negative verdict (per
//! subcommand: not regular, no rainbow found, failed trials, failed
//! checks), 2 malformed input or infeasible parameters. Reports are JSON
//! with sorted keys and no timing, so identical inputs and seeds produce
//! byte-identical output; elapsed time goes to stderr.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use rainbow_core::coloring::{anti_rainbow_coloring, enumerate_equinumerous, Coloring};
use rainbow_core::graph::{check_corollary, rainbow_flow, OrientedGraph};
use rainbow_core::lattice::{count_dilation, ehrhart, polytope, reciprocity_check};
use rainbow_core::linalg::parse_rational;
use rainbow_core::rainbow_number::{check_fibonacci_claims, estimate_rainbow_number};
use rainbow_core::regularity::{is_rainbow_regular, robust_constant};
use rainbow_core::search::{count_non_rainbow, find_rainbow, robust_experiment};
use rainbow_core::{acceptance, Error, RationalMatrix};

const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "rainbow",
    about = "Decide rainbow regularity of rational matrices and verify the combinatorics around it",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for parallel trials (output is deterministic
    /// regardless of the job count).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide rainbow regularity; exit 1 when the matrix is not regular.
    Check { matrix: PathBuf },
    /// Certificate search for the rainbow number at desk scale.
    RainbowNumber {
        matrix: PathBuf,
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        nmax: usize,
    },
    /// Emit the anti-rainbow coloring of [N] for a 1x2 matrix
    /// (coloring text format, not JSON).
    Color {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// List all canonical equinumerous k-colorings of [N].
    EnumerateColorings {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Search a colored box for a rainbow kernel vector; exit 1 when none
    /// exists.
    Search {
        matrix: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Robust experiment: seeded bounded colorings, rainbow search in each;
    /// exit 1 if any trial fails.
    Robust {
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long = "N")]
        n: usize,
        /// Epsilon as a fraction of C (e.g. 1/100 means eps = C/100).
        #[arg(long)]
        eps: String,
        #[arg(long)]
        trials: u64,
    },
    /// Ehrhart quasi-polynomial of the kernel polytope, with reciprocity
    /// checks for t up to --tmax.
    Ehrhart {
        matrix: PathBuf,
        #[arg(long)]
        tmax: u64,
    },
    /// Verify the Fibonacci family claims for one dimension; exit 1 when a
    /// check fails.
    Fib {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        tmax: u64,
    },
    /// Check the flow corollary on a graph; with --coloring also search for
    /// a rainbow flow.
    Graph {
        graph: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Run the full acceptance suite; exit 1 when any criterion fails.
    Selftest,
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<RationalMatrix, Error> {
    RationalMatrix::parse(&read_file(path)?)
}

fn load_coloring(path: &Path) -> Result<Coloring, Error> {
    Coloring::parse(&read_file(path)?)
}

/// Deliver output to stdout or --output; returns the exit code.
fn emit(common: &Common, text: &str, code: u8) -> Result<u8, Error> {
    match &common.output {
        None => print!("{text}"),
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?,
    }
    Ok(code)
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Check { matrix } => {
            let a = load_matrix(matrix)?;
            let v = is_rainbow_regular(&a);
            let mut payload = report::verdict(&v);
            let (c_squared, c_approx) = if v.regular {
                let rc = robust_constant(&a)?;
                (
                    report::rational(&rc.c_squared),
                    serde_json::Value::String(format!("{:.9}", rc.c_approx)),
                )
            } else {
                (serde_json::Value::Null, serde_json::Value::Null)
            };
            payload["c_squared"] = c_squared;
            payload["c_approx"] = c_approx;
            let doc = report::envelope(
                "check",
                json!({ "matrix": a.to_text() }),
                payload,
            );
            emit(&cli.common, &report::to_pretty_string(&doc), u8::from(!v.regular))
        }
        Command::RainbowNumber { matrix, kmax, nmax } => {
            let a = load_matrix(matrix)?;
            match estimate_rainbow_number(&a, *kmax, *nmax) {
                Ok(est) => {
                    let doc = report::envelope(
                        "rainbow-number",
                        json!({ "matrix": a.to_text(), "kmax": kmax, "nmax": nmax }),
                        report::estimate(&est),
                    );
                    emit(&cli.common, &report::to_pretty_string(&doc), 0)
                }
                Err(Error::NotRainbowRegular(why)) => {
                    let doc = report::envelope(
                        "rainbow-number",
                        json!({ "matrix": a.to_text(), "kmax": kmax, "nmax": nmax }),
                        json!({ "rejected": true, "reason": why,
                                "verdict": report::verdict(&is_rainbow_regular(&a)) }),
                    );
                    emit(&cli.common, &report::to_pretty_string(&doc), 1)
                }
                Err(e) => Err(e),
            }
        }
        Command::Color { matrix, n, k } => {
            let a = load_matrix(matrix)?;
            let (coloring, case) = anti_rainbow_coloring(&a, *n, *k)?;
            eprintln!("# construction case: {case:?}");
            emit(&cli.common, &coloring.to_text(), 0)
        }
        Command::EnumerateColorings { n, k } => {
            let all: Vec<Coloring> = enumerate_equinumerous(*n, *k)?.collect();
            let doc = report::envelope(
                "enumerate-colorings",
                json!({ "N": n, "k": k }),
                json!({
                    "count": all.len(),
                    "colorings": all.iter()
                        .map(|c| c.assignment().to_vec())
                        .collect::<Vec<_>>(),
                }),
            );
            emit(&cli.common, &report::to_pretty_string(&doc), 0)
        }
        Command::Search { matrix, coloring } => {
            let a = load_matrix(matrix)?;
            let c = load_coloring(coloring)?;
            let quick = find_rainbow(&a, &c);
            let census = count_non_rainbow(&a, &c);
            let doc = report::envelope(
                "search",
                json!({ "matrix": a.to_text(), "N": c.n(), "k": c.k() }),
                json!({
                    "first_scan": report::rainbow(&quick),
                    "census": report::rainbow(&census),
                }),
            );
            emit(&cli.common, &report::to_pretty_string(&doc), u8::from(!quick.found))
        }
        Command::Robust { matrix, k, n, eps, trials } => {
            let a = load_matrix(matrix)?;
            let eps = parse_rational(eps, 1, 1)
                .map_err(|_| Error::Invalid(format!("invalid --eps value `{eps}`")))?;
            let rep = robust_experiment(&a, *k, *n, &eps, *trials, cli.common.seed)?;
            let all_found = rep.successes == rep.trials;
            let doc = report::envelope(
                "robust",
                json!({ "matrix": a.to_text(), "k": k, "N": n,
                        "eps_over_c": eps.to_string(), "trials": trials,
                        "seed": cli.common.seed }),
                report::robust(&rep),
            );
            emit(&cli.common, &report::to_pretty_string(&doc), u8::from(!all_found))
        }
        Command::Ehrhart { matrix, tmax } => {
            let a = load_matrix(matrix)?;
            let p = polytope(&a);
            let qp = ehrhart(&p, 2)?;
            let counts: Vec<_> = (1..=*tmax)
                .map(|t| {
                    json!({
                        "t": t,
                        "closed": count_dilation(&p, t, false),
                        "interior": count_dilation(&p, t, true),
                        "reciprocity": reciprocity_check(&qp, &p, t),
                    })
                })
                .collect();
            let constant = robust_constant(&a).ok();
            let doc = report::envelope(
                "ehrhart",
                json!({ "matrix": a.to_text(), "tmax": tmax }),
                json!({
                    "polytope_dim": p.dim,
                    "vertices": p.vertices.iter()
                        .map(|v| report::rational_vector(v))
                        .collect::<Vec<_>>(),
                    "quasi_polynomial": report::quasi_polynomial(&qp),
                    "nu": report::rational(&qp.leading_coefficient()),
                    "c_squared": constant.as_ref().map(|rc| report::rational(&rc.c_squared)),
                    "c_approx": constant.as_ref().map(|rc| format!("{:.9}", rc.c_approx)),
                    "dilations": counts,
                }),
            );
            emit(&cli.common, &report::to_pretty_string(&doc), 0)
        }
        Command::Fib { d, tmax } => {
            let rep = check_fibonacci_claims(*d, *tmax)?;
            let ok = rep.all_ok();
            let doc = report::envelope(
                "fib",
                json!({ "d": d, "tmax": tmax }),
                report::fibonacci(&rep),
            );
            emit(&cli.common, &report::to_pretty_string(&doc), u8::from(!ok))
        }
        Command::Graph { graph, coloring } => {
            let g = OrientedGraph::parse(&read_file(graph)?)?;
            let rep = check_corollary(&g);
            let mut ok = rep.agree;
            let flow_json = match coloring {
                None => serde_json::Value::Null,
                Some(path) => {
                    let c = load_coloring(path)?;
                    match rainbow_flow(&g, &c) {
                        Some(f) => json!({ "found": true, "values": f.values }),
                        None => {
                            ok = false;
                            json!({ "found": false })
                        }
                    }
                }
            };
            let doc = report::envelope(
                "graph",
                json!({ "graph": g.to_text(), "coloring": coloring.is_some() }),
                json!({
                    "corollary": report::corollary(&rep),
                    "rainbow_flow": flow_json,
                }),
            );
            emit(&cli.common, &report::to_pretty_string(&doc), u8::from(!ok))
        }
        Command::Selftest => {
            let results = acceptance::run_all();
            let mut text = String::new();
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("criterion {:02} [{status}] {}\n", r.id, r.name));
            }
            let all = results.iter().all(|r| r.passed);
            text.push_str(&report::to_pretty_string(&report::envelope(
                "selftest",
                json!({}),
                report::criteria(&results),
            )));
            emit(&cli.common, &text, u8::from(!all))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.common.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(2);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.common.jobs)
        .build_global()
        .ok();
    let start = Instant::now();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    eprintln!("# elapsed: {} ms", start.elapsed().as_millis());
    ExitCode::from(code)
}
