use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tango_cli::dsl::{parse_scenario, Profile};
use tango_cli::jobs::run_jobs;
use tango_cli::{run_verification_suite, CliError, Fixtures, Report, Result, SuiteOptions};
use tango_core::bbw::{bbw_cohomology, weyl_dimension, BbwResult, Weight};

#[derive(Parser)]
#[command(name = "tango", version, about = "Tango bundle on P^5 in characteristic 2: scenarios and verification")]
struct Cli {
    /// quick or full
    #[arg(long, global = true, default_value = "quick")]
    profile: Profile,
    /// Run only this claim (repeatable); overrides the profile.
    #[arg(long = "claim", global = true)]
    claims: Vec<String>,
    /// Twist window lo..hi for cohomology tables.
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i32, i32)>,
    /// Emit the verification report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = default_threads())]
    threads: usize,
    /// Scenario file to use instead of the shipped fixtures.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite (the default).
    Verify,
    /// Parse a scenario file and execute its jobs.
    Run { file: PathBuf },
    /// Parse a scenario file and report problems without running jobs.
    Check { file: PathBuf },
    /// Borel-Bott-Weil cohomology of a homogeneous bundle on the G2 quadric.
    Bbw {
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Weight,
    },
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn parse_window(s: &str) -> std::result::Result<(i32, i32), String> {
    let (a, b) = s.split_once("..").ok_or("expected lo..hi")?;
    let lo = a.trim().parse::<i32>().map_err(|e| e.to_string())?;
    let hi = b.trim().parse::<i32>().map_err(|e| e.to_string())?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn parse_weight(s: &str) -> std::result::Result<Weight, String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    Ok(Weight::new(a.trim().parse().map_err(|_| "bad a")?, b.trim().parse().map_err(|_| "bad b")?))
}

fn load(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Scenario(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<bool> {
    let opts = SuiteOptions { profile: cli.profile, claims: cli.claims.clone(), window: cli.window, threads: cli.threads };
    match cli.command.unwrap_or(Command::Verify) {
        Command::Verify => {
            let fixtures = match &cli.fixtures {
                Some(p) => Fixtures::from_scenario(parse_scenario(&load(p)?)?)?,
                None => Fixtures::shipped()?,
            };
            let report = Report::new(run_verification_suite(fixtures, &opts)?);
            if cli.json {
                println!("{}", report.to_json()?);
            } else {
                print!("{}", report.to_text());
            }
            Ok(report.all_pass())
        }
        Command::Run { file } => {
            let sc = parse_scenario(&load(&file)?)?;
            let (text, ok) = run_jobs(&sc, &opts)?;
            print!("{text}");
            Ok(ok)
        }
        Command::Check { file } => {
            let sc = parse_scenario(&load(&file)?)?;
            println!("{}: {} declarations, {} jobs", file.display(), sc.names().len(), sc.jobs.len());
            Ok(true)
        }
        Command::Bbw { weight } => {
            let (lo, hi) = cli.window.unwrap_or((-5, 3));
            match weyl_dimension(weight) {
                Ok(d) => println!("weight ({}, {}): dim {d}", weight.a, weight.b),
                Err(_) => println!("weight ({}, {}): not dominant", weight.a, weight.b),
            }
            for t in lo..=hi {
                match bbw_cohomology(weight, t as i64) {
                    BbwResult::Singular => println!("  t = {t:>3}: all cohomology vanishes"),
                    BbwResult::Cohomology { degree, dim } => println!("  t = {t:>3}: h^{degree} = {dim}"),
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
