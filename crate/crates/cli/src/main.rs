//! `fusionkit`: command-line front end.
//!
//! Exit codes: 0 affirmative, 1 negative, 2 input or usage error, 3 budget
//! exhausted.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fusionkit_core::foelner::{self, FoelnerReport, Strategy};
use fusionkit_core::spectral::{self, AmenabilityConfig, TruncationWindow};
use fusionkit_core::{specs, verify_axioms, FusionError, FusionRing, Label, LoadOptions, RingFile};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "fusionkit", version, about = "Fusion rings: axioms, Følner sets, spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Balls,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionArg {
    Fc1,
    Fc2,
    Fc3,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fusion ring axioms on a ball around the unit.
    Axioms {
        /// Ring document (JSON file, or inline JSON text).
        ring: String,
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// Search for a Følner set.
    Foelner {
        ring: String,
        /// Comma-separated labels S.
        #[arg(long, allow_hyphen_values = true)]
        support: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Balls)]
        strategy: StrategyArg,
        /// Maximal number of labels in F.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Top of the spectrum of compressed convolution operators.
    Spectrum {
        ring: String,
        /// uniform-gens | delta:L | uniform:a,b | decomp:L=k,...
        #[arg(long)]
        measure: String,
        /// Comma-separated radii.
        #[arg(long)]
        radii: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Maximal window size.
        #[arg(long, default_value_t = 50_000)]
        cap: usize,
        #[arg(long, default_value_t = 200_000)]
        max_iter: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Evaluate one Følner condition at a given set.
    Check {
        ring: String,
        #[arg(long, value_enum)]
        condition: ConditionArg,
        /// interval:a..b | set:a,b,c | ball:r
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, allow_hyphen_values = true)]
        support: Option<String>,
        #[arg(long)]
        measure: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
    },
    /// Dirichlet r-norm of a function and its ratio to the σ-weighted r-norm.
    Dirichlet {
        ring: String,
        #[arg(long)]
        measure: String,
        /// A set form (indicator) or values:a=x,b=y.
        #[arg(long = "fn", allow_hyphen_values = true)]
        function: String,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
    },
    /// Write the table of the ring restricted to a ball as a ring document.
    Export {
        ring: String,
        #[arg(long)]
        radius: usize,
        #[arg(long, allow_hyphen_values = true)]
        support: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Ring(FusionError),
}

impl From<FusionError> for Failure {
    fn from(e: FusionError) -> Self {
        Failure::Ring(e)
    }
}

type Outcome = Result<u8, Failure>;

fn load(ring: &str, options: LoadOptions) -> Result<FusionRing, FusionError> {
    let doc = if ring.trim_start().starts_with('{') {
        RingFile::parse(ring)?
    } else {
        RingFile::read(ring)?
    };
    doc.build(options)
}

fn positive_eps(eps: f64) -> Result<(), Failure> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--eps must be positive, got {eps}")))
    }
}

fn default_generators(ring: &FusionRing) -> Vec<Label> {
    ring.generators()
}

fn axioms(ring: &str, radius: usize) -> Outcome {
    // axiom failures are reported, not rejected at load time
    let ring = load(ring, LoadOptions { verify_axioms: false, require_closure: true })?;
    let gens = default_generators(&ring);
    let window = if gens.is_empty() {
        TruncationWindow::from_labels(&ring, [ring.unit()])?
    } else {
        spectral::build_window(&ring, &gens, radius, specs::BALL_CAP)?
    };
    println!("ring: {}", ring.description());
    let report = verify_axioms(&ring, window.labels())?;
    print!("{report}");
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_NEGATIVE })
}

#[allow(clippy::too_many_arguments)]
fn search(ring: &str, support: &str, eps: f64, strategy: StrategyArg, budget: usize, csv: Option<PathBuf>) -> Outcome {
    positive_eps(eps)?;
    let ring = load(ring, LoadOptions::default())?;
    let s = specs::parse_label_list(&ring, support)?;
    let strategy = match strategy {
        StrategyArg::Balls => Strategy::Balls,
        StrategyArg::Greedy => Strategy::Greedy,
    };
    let res = foelner::foelner_search(&ring, &s, eps, strategy, budget)?;
    if let Some(path) = csv {
        output::write_curve_csv(&path, &res.curve).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let last = res.curve.iter().find(|p| p.set_size == res.set.len());
    println!("strategy: {}", res.strategy);
    println!("found: {}", res.found);
    println!("F: {}", output::label_set(&res.set));
    println!("|F|: {}", res.set.len());
    if let Some(p) = last {
        println!("weight_F: {}", output::weight(&p.weight_f));
        println!("weight_boundary: {}", output::weight(&p.weight_boundary));
    }
    println!("ratio: {}", output::num(res.report.ratio));
    println!("steps: {}", res.curve.len());
    Ok(if res.found { EXIT_OK } else { EXIT_BUDGET })
}

fn parse_radii(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad radius `{s}`"))))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn spectrum(ring: &str, measure: &str, radii: &str, tol: f64, cap: usize, max_iter: usize, csv: Option<PathBuf>) -> Outcome {
    let ring = load(ring, LoadOptions::default())?;
    let mu = specs::parse_measure(&ring, measure)?;
    let radii = parse_radii(radii)?;
    let config = AmenabilityConfig {
        cap,
        tol,
        max_iter,
        ..AmenabilityConfig::default()
    };
    let report = spectral::amenability_estimate(&ring, &mu, &radii, &config)?;
    if let Some(path) = csv {
        output::write_spectrum_csv(&path, &report.estimates).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    println!("radius  window_size  lambda_max");
    for e in &report.estimates {
        println!("{:>6}  {:>11}  {}", e.radius, e.window_size, output::num(e.lambda_max));
    }
    println!("monotone: {}", report.monotone);
    println!("gap: {}", output::num(report.gap));
    println!("verdict: {}", report.verdict);
    println!("note: {}", report.note);
    Ok(EXIT_OK)
}

fn print_report(report: &FoelnerReport) {
    println!("condition: {}", report.condition);
    println!("F: {}", output::label_set(&report.set));
    for (xi, v) in &report.per_generator {
        println!("  xi={xi}: {}", output::quantity(v));
    }
    if let Some(same) = report.support_identity {
        println!("support identity: {same}");
    }
    println!("lhs: {}", output::quantity(&report.lhs));
    println!("rhs: {}", output::quantity(&report.rhs));
    println!("ratio: {}", output::num(report.ratio));
    println!("satisfied: {}", report.satisfied);
}

fn check(
    ring: &str,
    condition: ConditionArg,
    set: &str,
    support: Option<String>,
    measure: Option<String>,
    eps: f64,
) -> Outcome {
    positive_eps(eps)?;
    let ring = load(ring, LoadOptions::default())?;
    let report = match condition {
        ConditionArg::Fc1 => {
            let spec = measure.ok_or_else(|| Failure::Usage("fc1 needs --measure".into()))?;
            let mu = specs::parse_measure(&ring, &spec)?;
            let gens: Vec<Label> = mu.support().cloned().collect();
            let f = specs::parse_set(&ring, set, &gens)?;
            foelner::fc1_check(&ring, &mu, &f, eps)?
        }
        ConditionArg::Fc2 | ConditionArg::Fc3 => {
            let s = match (support, measure) {
                (Some(s), _) => specs::parse_label_list(&ring, &s)?,
                (None, Some(m)) => specs::parse_measure(&ring, &m)?.support().cloned().collect(),
                (None, None) => return Err(Failure::Usage("fc2/fc3 need --support or --measure".into())),
            };
            let f = specs::parse_set(&ring, set, &s)?;
            if matches!(condition, ConditionArg::Fc2) {
                foelner::fc2_check(&ring, &s, &f, eps)?
            } else {
                foelner::fc3_check(&ring, &s, &f, eps)?
            }
        }
    };
    print_report(&report);
    Ok(if report.satisfied { EXIT_OK } else { EXIT_NEGATIVE })
}

fn dirichlet(ring: &str, measure: &str, function: &str, r: f64) -> Outcome {
    let ring = load(ring, LoadOptions::default())?;
    let mu = specs::parse_measure(&ring, measure)?;
    let gens: Vec<Label> = mu.support().cloned().collect();
    let f = specs::parse_function(&ring, function, &gens)?;
    let d = foelner::dirichlet_norm(&mu, &f, r)?;
    let norm = f.norm_sigma(r)?;
    println!("dirichlet: {}", output::num(d));
    println!("norm: {}", output::num(norm));
    if norm > 0.0 {
        println!("ratio: {}", output::num(d / norm));
    }
    if r == 2.0 && mu.is_symmetric() {
        println!("energy residual: {}", output::num(foelner::energy_residual(&mu, &f)?));
    }
    Ok(EXIT_OK)
}

fn export(ring: &str, radius: usize, support: Option<String>, out: Option<PathBuf>) -> Outcome {
    let ring = load(ring, LoadOptions::default())?;
    let gens = match support {
        Some(s) => specs::parse_label_list(&ring, &s)?,
        None => default_generators(&ring),
    };
    let window = if gens.is_empty() {
        TruncationWindow::from_labels(&ring, [ring.unit()])?
    } else {
        spectral::build_window(&ring, &gens, radius, specs::BALL_CAP)?
    };
    let json = fusionkit_core::ringfile::export_window(&ring, &window)?.to_json();
    match out {
        Some(path) => std::fs::write(&path, json + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    Ok(EXIT_OK)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("FUSIONKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::Usage(format!("FUSIONKIT_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    match cli.command {
        Command::Axioms { ring, radius } => axioms(&ring, radius),
        Command::Foelner { ring, support, eps, strategy, budget, csv } => search(&ring, &support, eps, strategy, budget, csv),
        Command::Spectrum { ring, measure, radii, tol, cap, max_iter, csv } => {
            spectrum(&ring, &measure, &radii, tol, cap, max_iter, csv)
        }
        Command::Check { ring, condition, set, support, measure, eps } => check(&ring, condition, &set, support, measure, eps),
        Command::Dirichlet { ring, measure, function, r } => dirichlet(&ring, &measure, &function, r),
        Command::Export { ring, radius, support, out } => export(&ring, radius, support, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Ring(e)) => {
            eprintln!("error: {e}");
            match e {
                FusionError::BudgetExceeded { .. } | FusionError::NoConvergence { .. } => EXIT_BUDGET,
                _ => EXIT_USAGE,
            }
        }
    };
    ExitCode::from(code)
}
