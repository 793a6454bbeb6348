mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use commands::Options;
use report::{Failure, Report};

/// Exact tropicalization checks for matrices, building points, fans and chains.
#[derive(Parser)]
#[command(name = "buildtrop", version)]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized self-checks; without it no random checks run.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap on lattice points examined by monoid enumeration.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Files {
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// λ of a matrix over Q(t^{1/d}), by elimination and by minors.
    Trop(Files),
    /// A Cartan decomposition g · t^λ · h.
    Cartan(Files),
    /// Dominant projection of a building point.
    Pi(Files),
    /// Checks π ∘ trop_build = trop_spherical on a triple (g, λ, h).
    Diagram(Files),
    /// Validates a fan, optionally with smoothness, stacky and Weyl checks.
    Fan {
        #[arg(required_unless_present = "group")]
        files: Vec<PathBuf>,
        /// Use the Weyl fan of a builtin group such as PGL(3).
        #[arg(long, conflicts_with = "files")]
        group: Option<String>,
        #[arg(long)]
        stacky: bool,
        #[arg(long)]
        smooth: bool,
        #[arg(long)]
        weyl: bool,
        /// Root datum for --weyl.
        #[arg(long)]
        root_datum: Option<String>,
    },
    /// Realizes a decorated metric chain in its fan.
    Chain(Files),
    /// Decides equality of two Goldman–Iwahori norms.
    NormEq(Files),
}

/// One unit of work: a display name, the raw bytes, and the command.
struct Job {
    name: String,
    bytes: Vec<u8>,
}

fn run(cli: &Cli) -> (Vec<Report>, bool) {
    let mut opts = Options {
        seed: cli.seed,
        ..Options::default()
    };
    if let Some(b) = cli.budget {
        opts.budget.max_points = b;
    }
    let (name, files, group) = match &cli.command {
        Command::Trop(f) => ("trop", f.files.clone(), None),
        Command::Cartan(f) => ("cartan", f.files.clone(), None),
        Command::Pi(f) => ("pi", f.files.clone(), None),
        Command::Diagram(f) => ("diagram", f.files.clone(), None),
        Command::Chain(f) => ("chain", f.files.clone(), None),
        Command::NormEq(f) => ("norm-eq", f.files.clone(), None),
        Command::Fan {
            files,
            group,
            stacky,
            smooth,
            weyl,
            root_datum,
        } => {
            opts.stacky = *stacky;
            opts.smooth = *smooth;
            opts.weyl = *weyl;
            opts.root_datum = root_datum.clone();
            ("fan", files.clone(), group.clone())
        }
    };

    if let Some(g) = group {
        let start = Instant::now();
        let outcome = commands::group_fan(&g, opts.budget).and_then(|(spec, r)| {
            let text = serde_json::to_string(&spec).expect("fan JSON serializes");
            commands::fan(&text, &opts, Some(&r))
        });
        let us = start.elapsed().as_micros() as u64;
        let input = format!("group:{g}");
        return (vec![Report::build(name, &input, g.as_bytes(), outcome, us)], true);
    }

    let jobs: Vec<Job> = files
        .iter()
        .map(|p| Job {
            name: p.display().to_string(),
            bytes: std::fs::read(p).unwrap_or_default(),
        })
        .collect();
    let readable: Vec<bool> = files.iter().map(|p| p.is_file()).collect();
    let reports = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .zip(&readable)
            .map(|(job, &ok)| {
                let opts = &opts;
                s.spawn(move || {
                    let start = Instant::now();
                    let outcome = if !ok {
                        Err(Failure::input(format!("cannot read {}", job.name)))
                    } else {
                        match std::str::from_utf8(&job.bytes) {
                            Err(_) => Err(Failure::input("input is not UTF-8")),
                            Ok(text) => match name {
                                "trop" => commands::trop(text, opts),
                                "cartan" => commands::cartan(text, opts),
                                "pi" => commands::pi_cmd(text, opts),
                                "diagram" => commands::diagram(text, opts),
                                "chain" => commands::chain(text, opts),
                                "norm-eq" => commands::norm_eq(text, opts),
                                _ => commands::fan(text, opts, None),
                            },
                        }
                    };
                    let us = start.elapsed().as_micros() as u64;
                    Report::build(name, &job.name, &job.bytes, outcome, us)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker thread panicked"))
            .collect::<Vec<_>>()
    });
    let single = reports.len() == 1;
    (reports, single)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (reports, single) = run(&cli);
    if cli.json {
        let text = if single {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(&reports)
        };
        println!("{}", text.expect("reports serialize"));
    } else {
        for r in &reports {
            print!("{}", r.render_text());
        }
    }
    let code = reports.iter().map(|r| r.exit_code).max().unwrap_or(0);
    ExitCode::from(code)
}
