//! Command line front end: homology of r-equal arrangement complements,
//! lattice exports, Taylor tower connectivity reports, and verification
//! suites, in human-readable or JSON form.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use rconf_core::arrangement::{
    rconf_homology, ArrangementError, ArrangementHomology, HomologyRoute,
};
use rconf_core::calculus::{
    tower_report, CalculusError, ConnLabel, Status, TowerParams, TowerReport,
};
use rconf_core::homology::{BettiTable, HomologyGroup};
use rconf_core::poset::{count_r_valid_partitions, r_equal_poset, PosetError, PosetExport};
use rconf_core::suites::{run_all, run_suite, SuiteName, SuiteReport};

const DEFAULT_MAX_K: u32 = 7;

#[derive(Parser)]
#[command(
    name = "rconf",
    version,
    about = "Homology of no-r-equal configuration spaces and r-immersion tower connectivity"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Number of worker threads (defaults to the logical CPU count).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Integral homology of rConf(k, R^n), the complement in (R^n)^k of all
    /// r-fold coincidences.
    Homology {
        /// Number of points.
        #[arg(long)]
        k: u32,
        /// Dimension of the ambient factor R^n.
        #[arg(long)]
        n: u32,
        /// Coincidence multiplicity (at least 2).
        #[arg(long)]
        r: u32,
        /// Raise the safety cap on k (the RCONF_MAX_K environment variable
        /// does the same).
        #[arg(long)]
        max_k: Option<u32>,
        /// Include the per-partition summand tables in the output.
        #[arg(long)]
        summands: bool,
    },
    /// Export the intersection lattice of the r-equal arrangement.
    Poset {
        /// Number of points.
        #[arg(long)]
        k: u32,
        /// Coincidence multiplicity (at least 2).
        #[arg(long)]
        r: u32,
        /// Raise the safety cap on k.
        #[arg(long)]
        max_k: Option<u32>,
    },
    /// Connectivity report for the Taylor tower of r-immersions of an
    /// m-manifold into R^n.
    Tower {
        /// Source dimension.
        #[arg(long)]
        m: u32,
        /// Target dimension (at least m).
        #[arg(long)]
        n: u32,
        /// Coincidence multiplicity (at least 2).
        #[arg(long)]
        r: u32,
        /// Highest tower stage to report.
        #[arg(long, default_value_t = 3)]
        k_max: u32,
        /// Include conjectural estimates beyond the proved range, visibly
        /// marked as such.
        #[arg(long)]
        conjectural: bool,
    },
    /// Run a verification suite (all suites when omitted).
    Verify {
        #[arg(value_enum)]
        suite: Option<SuiteArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Spheres,
    Crosscheck,
    #[value(name = "conf_poincare")]
    ConfPoincare,
    #[value(name = "calculus_coherence")]
    CalculusCoherence,
}

impl From<SuiteArg> for SuiteName {
    fn from(arg: SuiteArg) -> SuiteName {
        match arg {
            SuiteArg::Spheres => SuiteName::Spheres,
            SuiteArg::Crosscheck => SuiteName::Crosscheck,
            SuiteArg::ConfPoincare => SuiteName::ConfPoincare,
            SuiteArg::CalculusCoherence => SuiteName::CalculusCoherence,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error(
        "k = {k} exceeds the safety cap {cap} (the r-equal lattice would hold {estimate}); \
         raise it with --max-k {k} or RCONF_MAX_K={k}"
    )]
    OverCap { k: u32, cap: u32, estimate: String },
    #[error("RCONF_MAX_K must be an unsigned integer, got `{0}`")]
    BadEnvCap(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error("could not serialize output: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// Dying quietly on a closed pipe beats a panic from `println!` when the
/// output is fed to `head` or a pager.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: could not size the thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn effective_cap(flag: Option<u32>) -> Result<u32, CliError> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("RCONF_MAX_K") {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| CliError::BadEnvCap(value.clone())),
        Err(_) => Ok(DEFAULT_MAX_K),
    }
}

fn enforce_cap(k: u32, r: u32, flag: Option<u32>) -> Result<(), CliError> {
    let cap = effective_cap(flag)?;
    if k <= cap {
        return Ok(());
    }
    let estimate = if r >= 2 && r <= k && k <= 40 {
        format!("{} elements", count_r_valid_partitions(k, r))
    } else {
        "a partition lattice beyond feasible size".to_string()
    };
    Err(CliError::OverCap { k, cap, estimate })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Homology {
            k,
            n,
            r,
            max_k,
            summands,
        } => {
            enforce_cap(k, r, max_k)?;
            let mut answer = rconf_homology(k, n, r)?;
            if !summands {
                answer.summands.clear();
            }
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&answer)?),
                Format::Human => print_homology(&answer),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Poset { k, r, max_k } => {
            enforce_cap(k, r, max_k)?;
            let export = r_equal_poset(k, r)?.export();
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&export)?),
                Format::Human => print_poset(k, r, &export),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tower {
            m,
            n,
            r,
            k_max,
            conjectural,
        } => {
            let params = TowerParams::new(m, n, r, k_max)?.with_conjectural(conjectural);
            let report = tower_report(&params)?;
            report.validate()?;
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                Format::Human => print_tower(&report),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => {
            let reports = match suite {
                Some(arg) => vec![run_suite(arg.into())],
                None => run_all(),
            };
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
                Format::Human => print_verify(&reports),
            }
            if reports.iter().all(SuiteReport::passed) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn render_group(g: &HomologyGroup) -> String {
    let mut parts = Vec::new();
    match g.rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        rank => parts.push(format!("Z^{rank}")),
    }
    for t in &g.torsion {
        parts.push(format!("Z/{t}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn render_table(table: &BettiTable) -> String {
    let parts: Vec<String> = table
        .iter()
        .map(|(d, g)| format!("degree {d}: {}", render_group(g)))
        .collect();
    if parts.is_empty() {
        "trivial".to_string()
    } else {
        parts.join("; ")
    }
}

fn route_str(route: HomologyRoute) -> &'static str {
    match route {
        HomologyRoute::Contractible => "contractible",
        HomologyRoute::SphereAtMultiplicity => "sphere at the multiplicity bound",
        HomologyRoute::LatticeSum => "lattice sum",
    }
}

fn print_homology(answer: &ArrangementHomology) {
    println!(
        "rConf(k = {}, R^{}) with r = {}  [{}]",
        answer.k,
        answer.n,
        answer.r,
        route_str(answer.route)
    );
    println!(
        "ambient dimension {}, connectivity {}",
        answer.ambient_dim, answer.connectivity
    );
    for (d, g) in answer.unreduced.iter() {
        println!("H_{d} = {}", render_group(g));
    }
    for note in &answer.notes {
        println!("note: {note}");
    }
    for s in &answer.summands {
        println!(
            "summand {} (shape {:?}, codim {}): {}",
            s.partition,
            s.shape,
            s.codim,
            render_table(&s.contribution)
        );
    }
}

fn print_poset(k: u32, r: u32, export: &PosetExport) {
    println!(
        "r-equal lattice for k = {k}, r = {r}: {} elements, bottom {}",
        export.size,
        export.bottom.map_or("none".to_string(), |b| b.to_string())
    );
    for (i, element) in export.elements.iter().enumerate() {
        println!("{i:>4}: {element}");
    }
    println!("covers ({}):", export.covers.len());
    for (a, b) in &export.covers {
        println!("  {a} < {b}");
    }
}

fn status_str(status: Status) -> &'static str {
    match status {
        Status::Proved => "proved",
        Status::Conjectural => "conjectural",
    }
}

fn label_str(label: &ConnLabel) -> String {
    let vacuous = if label.vacuous { "vacuous, " } else { "" };
    format!("{} ({vacuous}{})", label.value, status_str(label.status))
}

fn print_tower(report: &TowerReport) {
    let p = &report.params;
    println!(
        "r-immersion tower: m = {}, n = {}, r = {}, stages 1..={}  [{}]",
        p.m,
        p.n,
        p.r,
        p.k_max,
        status_str(report.status)
    );
    println!("rImm -> Imm: {}", label_str(&report.rimm_to_imm));
    for stage in &report.stages {
        let mut parts = Vec::new();
        if let Some(label) = &stage.derivative {
            parts.push(format!("derivative {}", label_str(label)));
        }
        if let Some(label) = &stage.layer {
            parts.push(format!("layer {}", label_str(label)));
        }
        if let Some(label) = &stage.stage_map {
            parts.push(format!("stage map {}", label_str(label)));
        }
        if let Some(label) = &stage.approx {
            parts.push(format!("approx {}", label_str(label)));
        }
        if parts.is_empty() {
            parts.push("no labels emitted".to_string());
        }
        println!("stage {}: {}", stage.k, parts.join(", "));
        for note in &stage.notes {
            println!("  note: {note}");
        }
    }
}

fn print_verify(reports: &[SuiteReport]) {
    for report in reports {
        if report.passed() {
            println!("suite {}: {} cases, PASS", report.suite, report.cases);
        } else {
            println!(
                "suite {}: {} cases, {} FAILED",
                report.suite,
                report.cases,
                report.failures.len()
            );
            for failure in &report.failures {
                println!("  {failure}");
            }
        }
    }
}
