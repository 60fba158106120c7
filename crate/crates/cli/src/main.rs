//! `galshadow`: run scenario files against the finite-group workbench.
//!
//! Exit codes: 0 positive result, 1 negative result, 2 input error, 3 search
//! budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use galshadow::embed::EmbedError;
use galshadow::freeprod::FreeProdError;
use galshadow::search::{SearchError, MAX_GENERATED_ORDER};
use galshadow::Budget;
use thiserror::Error;

mod catalog_io;
mod groups;
mod report;
mod run;
mod scenario;

use report::{Report, Stats};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("search budget of {0} nodes exceeded")]
    Budget(u64),
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded(b) => CliError::Budget(b.limit),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<EmbedError> for CliError {
    fn from(e: EmbedError) -> Self {
        match e {
            EmbedError::Search(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<FreeProdError> for CliError {
    fn from(e: FreeProdError) -> Self {
        match e {
            FreeProdError::Search(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "galshadow",
    version,
    about = "Finite-group workbench: embedding problems, free-product quotients, ramification and twisted Galois actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        /// Largest group order in the catalog.
        #[arg(long)]
        catalog_max: Option<usize>,
        /// Catalog manifest to use instead of the generated catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Search node budget.
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate the catalog of all groups up to an order as group files and
    /// a manifest.
    Catalog {
        #[arg(long, default_value_t = MAX_GENERATED_ORDER)]
        max: usize,
        #[arg(long)]
        dir: PathBuf,
    },
    /// Print the order, element orders and Cayley table of a group file.
    Show {
        group: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct RunArgs {
    scenario: PathBuf,
    catalog_max: Option<usize>,
    catalog: Option<PathBuf>,
    budget: Option<u64>,
    jobs: Option<usize>,
    format: Format,
    out: Option<PathBuf>,
}

fn run_scenario(a: &RunArgs) -> i32 {
    let start = Instant::now();
    let loaded = scenario::Scenario::load(&a.scenario);
    let sc = match loaded {
        Ok(sc) => sc,
        Err(e) => return finish(a, Report::error("input-error", 2, e.to_string()), None, None, None),
    };
    let bound = a.catalog_max.or(sc.limits.catalog_max).unwrap_or(MAX_GENERATED_ORDER);
    let jobs = a.jobs.or(sc.limits.jobs).unwrap_or(0);
    let limit = a.budget.or(sc.limits.budget).unwrap_or(Budget::DEFAULT_NODES);
    let budget = Budget::new(limit);
    let kind = sc.task.kind();
    let echo = serde_json::to_value(&sc.echo).ok();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => {
            return finish(
                a,
                Report::error("input-error", 2, format!("--jobs: {e}")),
                Some(kind),
                echo,
                None,
            )
        }
    };
    let outcome = pool.install(|| {
        let cat = catalog_io::resolve_catalog(a.catalog.as_deref(), bound)?;
        let ctx = run::Context {
            scenario: &sc,
            catalog: &cat,
            budget: &budget,
        };
        run::run(&ctx)
    });
    let report = match outcome {
        Ok(r) => r,
        Err(CliError::Input(m)) => Report::error("input-error", 2, m),
        Err(e @ CliError::Budget(_)) => Report::error("budget-exceeded", 3, e.to_string()),
    };
    let stats = Stats {
        search_nodes: budget.used(),
        budget: limit,
        elapsed_ms: start.elapsed().as_millis(),
        catalog_bound: bound,
        jobs: pool.current_num_threads(),
    };
    finish(a, report, Some(kind), echo, Some(stats))
}

fn finish(
    a: &RunArgs,
    report: Report,
    kind: Option<&str>,
    echo: Option<serde_json::Value>,
    stats: Option<Stats>,
) -> i32 {
    let text = match a.format {
        Format::Text => {
            let mut t = report.text(kind);
            if let Some(s) = &stats {
                t.push_str(&format!("search nodes: {} of {}\n", s.search_nodes, s.budget));
            }
            t
        }
        Format::Structured => report.structured(kind, echo, stats.as_ref()),
    };
    if let Err(e) = emit(&text, a.out.as_deref()) {
        eprintln!("error: {e}");
        return 2;
    }
    report.exit_code
}

fn show(path: &Path, format: Format) -> i32 {
    let g = match groups::load_group_file(path) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = match format {
        Format::Text => {
            let mut t = format!("name: {}\norder: {}\n", g.label().unwrap_or("-"), g.order());
            t.push_str(&format!("element orders: {:?}\n", g.element_orders()));
            for row in g.rows() {
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                t.push_str(&cells.join(" "));
                t.push('\n');
            }
            t
        }
        Format::Structured => {
            let v = serde_json::json!({
                "name": g.label(),
                "order": g.order(),
                "element_orders": g.element_orders(),
                "table": g.rows(),
            });
            serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
        }
    };
    print!("{text}");
    0
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run {
            scenario,
            catalog_max,
            catalog,
            budget,
            jobs,
            format,
            out,
        } => run_scenario(&RunArgs {
            scenario,
            catalog_max,
            catalog,
            budget,
            jobs,
            format,
            out,
        }),
        Command::Catalog { max, dir } => match catalog_io::write_catalog(&dir, max) {
            Ok(cat) => {
                println!("wrote {} groups of order at most {max} to {}", cat.len(), dir.display());
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Command::Show { group, format } => show(&group, format),
    };
    ExitCode::from(code as u8)
}
