use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use polyext::format::render_presentation;
use polyext::report::{build, export_presentation, run_job, Job, Level, Report, Which};
use polyext::suite::Suite;
use polyext_core::catalog::{catalog, Family};

#[derive(Parser)]
#[command(
    name = "polyext",
    version,
    about = "Extensions and halvings of centrally symmetric regular polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog of supported families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Build an extension and print its presentation.
    Build(JobArgs),
    /// Build the halving of an extension and print its presentation.
    Halve(JobArgs),
    /// Run verification up to a level and emit the JSON report.
    Verify {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long, value_enum, default_value = "relations")]
        level: Level,
    },
    /// Write a presentation in the text format.
    Export {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long, value_enum, default_value = "extension")]
        which: Which,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the acceptance suite.
    Suite,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print the descriptor table.
    List {
        #[arg(long, default_value_t = 8)]
        max_p: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Args)]
struct JobArgs {
    /// polygon, orthoplex, cube, icosahedron, dodecahedron, cell24, cell600 or cell120.
    #[arg(long)]
    family: String,
    /// Polygon parameter: the base is the 2p-gon.
    #[arg(long)]
    p: Option<usize>,
    /// Rank of a cube or orthoplex.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long)]
    coset_limit: Option<usize>,
    #[arg(long)]
    geometry_bound: Option<usize>,
    /// Write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Record wall-clock timings in the report. Makes reports nondeterministic.
    #[arg(long)]
    timings: bool,
}

impl JobArgs {
    fn job(&self, level: Level) -> Result<Job> {
        let parameter = match (self.p, self.n) {
            (Some(_), Some(_)) => bail!("give at most one of --p and --n"),
            (p, n) => p.or(n),
        };
        let family = Family::from_name(&self.family, parameter)?;
        let mut job = Job::new(family, self.s, level);
        if let Some(l) = self.coset_limit {
            job.limits.coset_limit = l;
        }
        if let Some(b) = self.geometry_bound {
            job.limits.geometry_bound = b;
        }
        job.timings = self.timings;
        Ok(job)
    }

    /// Runs the job and writes the report if requested.
    fn run(&self, level: Level) -> Result<Report> {
        let report = run_job(&self.job(level)?)?;
        if let Some(path) = &self.json {
            fs::write(path, report.to_json()).with_context(|| format!("cannot write {}", path.display()))?;
        }
        Ok(report)
    }
}

fn print_failures(report: &Report) {
    for f in &report.failures {
        eprintln!("failure: {}", f);
    }
}

fn status(report: &Report) -> ExitCode {
    print_failures(report);
    if report.is_fatal() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

/// Prints the presentation of a job, with the orders-level report written
/// when `--json` is given.
fn print_presentation(args: &JobArgs, which: Which) -> Result<ExitCode> {
    let b = build(&args.job(Level::Orders)?)?;
    let (pres, order) = match which {
        Which::Extension => (&b.extension.presentation, b.extension.concrete.order()),
        Which::Halving => (&b.halving.presentation, b.halving.concrete.order()),
    };
    println!("# {} s={}: order {}", b.polytope.descriptor.family, args.s, order);
    print!("{}", render_presentation(pres));
    if args.json.is_some() {
        return Ok(status(&args.run(Level::Orders)?));
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Catalog {
            action: CatalogAction::List { max_p, max_n },
        } => {
            println!(
                "{:<16} {:<14} {:>8} {:>6} {:>12}",
                "family", "type", "vertices", "alpha", "order"
            );
            for d in catalog(max_p, max_n) {
                println!(
                    "{:<16} {:<14} {:>8} {:>6} {:>12}",
                    d.family.to_string(),
                    d.schlafli_string(),
                    d.vertex_count,
                    d.alpha_exponent,
                    d.expected_order,
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Build(args) => print_presentation(&args, Which::Extension),
        Command::Halve(args) => print_presentation(&args, Which::Halving),
        Command::Verify { job, level } => {
            let r = job.run(level)?;
            if job.json.is_none() {
                print!("{}", r.to_json());
            }
            Ok(status(&r))
        }
        Command::Export { job, which, out } => {
            if job.json.is_some() {
                bail!("export writes a presentation; use verify for a report");
            }
            export_presentation(&job.job(Level::Orders)?, which, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite => {
            let mut ok = true;
            for c in Suite::new().run() {
                println!("{}", c);
                ok &= c.gates_ok();
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
