use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use elpoints::config::Case;
use elpoints::pipeline::{run, RunOptions, Stage};
use elpoints::report::{render, Format};
use elpoints::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StageArg {
    Periods,
    Heights,
    Bound,
    Reduce,
    Search,
    Pipeline,
}

impl From<StageArg> for Stage {
    fn from(s: StageArg) -> Stage {
        match s {
            StageArg::Periods => Stage::Periods,
            StageArg::Heights => Stage::Heights,
            StageArg::Bound => Stage::Bound,
            StageArg::Reduce => Stage::Reduce,
            StageArg::Search => Stage::Search,
            StageArg::Pipeline => Stage::Pipeline,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

/// Integral points on the cubic and quartic families by elliptic logarithms.
#[derive(Debug, Parser)]
#[command(name = "elpoints", version)]
struct Cli {
    /// Case file (TOML).
    case: PathBuf,

    #[arg(long, value_enum, default_value = "pipeline")]
    stage: StageArg,

    /// Decimal digits for every stage; by default chosen from the initial bound.
    #[arg(long)]
    precision: Option<u32>,

    /// Coefficient bound of the search.
    #[arg(long, default_value_t = 3)]
    mmax: i64,

    /// Search threads; defaults to the available cores.
    #[arg(long)]
    workers: Option<usize>,

    /// Search up to the reduced bound, checkpointing to `<case id>.ckpt`
    /// (or `--checkpoint`). Hours to days of CPU.
    #[arg(long)]
    long_run: bool,

    #[arg(long)]
    checkpoint: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,

    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ConfigInvalid(_) => 2,
        Error::Precision(_) => 3,
        Error::ReductionStall { .. } => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("elpoints: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn execute(cli: &Cli) -> elpoints::Result<()> {
    let case = Case::load(&cli.case)?;
    let mut opts = RunOptions {
        precision: cli.precision,
        m_max: cli.mmax,
        long_run: cli.long_run,
        ..Default::default()
    };
    if let Some(w) = cli.workers {
        opts.workers = w;
    }
    if cli.long_run {
        opts.checkpoint = Some(
            cli.checkpoint
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("{}.ckpt", case.id()))),
        );
    } else {
        opts.checkpoint = cli.checkpoint.clone();
    }
    let report = run(&case, cli.stage.into(), &opts)?;
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Csv => Format::Csv,
    };
    let text = render(&report, format)?;
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
