//! CLI over the catalg library: build the categories, report invariants,
//! run closed-form-vs-counted crosschecks, verify quiver presentations, and
//! count monoid elements.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource limit.

use catalg::report::{
    count_output, crosscheck_output, default_invariants_cap, default_presentation_cap,
    invariants_output, verify_presentation_output, CommandOutput, DEFAULT_MAX_PATHS,
};
use catalg::{Error, Family};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "catalg",
    about = "Invariants of the algebras of onto order-preserving/decreasing partial maps",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Loewy length, blocks, quiver, Cartan matrix and radical dimensions.
    Invariants(CommonArgs),
    /// Run every closed-form count against its brute-force counterpart.
    Crosscheck(CommonArgs),
    /// Verify the quiver presentation by congruence closure on paths.
    VerifyPresentation(CommonArgs),
    /// Number of monoid elements (equivalently, category morphisms).
    Count(CommonArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Po,
    Pf,
    Pc,
}

impl From<FamilyArg> for Family {
    fn from(arg: FamilyArg) -> Family {
        match arg {
            FamilyArg::Po => Family::Po,
            FamilyArg::Pf => Family::Pf,
            FamilyArg::Pc => Family::Pc,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct CommonArgs {
    /// Monoid family: order-preserving, order-decreasing, or both.
    #[arg(long)]
    family: FamilyArg,
    /// Ambient set size.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the size cap (also settable via CATALG_MAX_N).
    #[arg(long)]
    max_n: Option<usize>,
}

fn resolve_cap(args: &CommonArgs, default: usize) -> usize {
    if let Some(cap) = args.max_n {
        return cap;
    }
    if let Ok(var) = std::env::var("CATALG_MAX_N") {
        if let Ok(cap) = var.parse() {
            return cap;
        }
    }
    default
}

fn run(cli: &Cli) -> Result<CommandOutput, Error> {
    match &cli.command {
        Command::Invariants(args) => {
            let family = args.family.into();
            invariants_output(
                family,
                args.n,
                resolve_cap(args, default_invariants_cap(family)),
            )
        }
        Command::Crosscheck(args) => {
            let family = args.family.into();
            crosscheck_output(
                family,
                args.n,
                resolve_cap(args, default_invariants_cap(family)),
            )
        }
        Command::VerifyPresentation(args) => {
            let family = args.family.into();
            verify_presentation_output(
                family,
                args.n,
                resolve_cap(args, default_presentation_cap(family)),
                DEFAULT_MAX_PATHS,
            )
        }
        Command::Count(args) => {
            let family = args.family.into();
            count_output(
                family,
                args.n,
                resolve_cap(args, default_invariants_cap(family)),
            )
        }
    }
}

fn emit(args: &CommonArgs, output: &CommandOutput) -> std::io::Result<()> {
    let rendered = match args.format {
        Format::Json => output.render_json(),
        Format::Csv => output.csv.clone(),
        Format::Text => output.text.clone(),
    };
    match &args.out {
        Some(path) => std::fs::write(path, rendered),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn exit_code(result: &Result<CommandOutput, Error>) -> u8 {
    match result {
        Ok(output) if output.ok => 0,
        Ok(_) => 1,
        Err(Error::ResourceLimit { .. }) => 3,
        Err(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    match &result {
        Ok(output) => {
            let args = match &cli.command {
                Command::Invariants(a)
                | Command::Crosscheck(a)
                | Command::VerifyPresentation(a)
                | Command::Count(a) => a,
            };
            if let Err(e) = emit(args, output) {
                eprintln!("error writing output: {e}");
                return ExitCode::from(2);
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&result))
}
