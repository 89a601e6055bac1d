use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pcg_core::document::{
    emit_report, load_gallery, parse_structure_file, print_structure, run_suite, ReportFormat, StructureDocument, Suite,
    SuiteOptions,
};
use pcg_core::exact::{parse_rational, Point};
use pcg_core::Error;

/// Exact verification of contact, paracontact and bi-Legendrian structures.
#[derive(Parser)]
#[command(name = "pcg", version)]
struct Cli {
    /// Sample point for pointwise probes, e.g. "x=0,y=1,z=0".
    #[arg(long, global = true)]
    point: Option<String>,
    /// Report format: text or tree.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Pencil parameter on the unit circle, e.g. "t=1/2".
    #[arg(long, global = true)]
    pencil: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every structure declared in FILE.
    Check { file: PathBuf },
    /// Classify the bi-Legendrian pair and the paracontact structure.
    Classify { file: PathBuf },
    /// Levi-Civita, canonical paracontact and bi-Legendrian connections.
    Connections {
        file: PathBuf,
        /// Compare the two canonical connections coefficient-wise.
        #[arg(long)]
        compare: bool,
    },
    /// Run a named suite.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Run or print a built-in example.
    Gallery {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        /// Print the structure document instead of running it.
        #[arg(long)]
        emit: bool,
    },
}

fn parse_pencil(s: &str) -> Result<pcg_core::exact::Rational, Error> {
    let value = s.strip_prefix("t=").unwrap_or(s).trim();
    parse_rational(value).ok_or_else(|| Error::Format(format!("pencil parameter `{s}` is not a rational number")))
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let format: ReportFormat = cli.format.parse()?;
    let pencil = cli.pencil.as_deref().map(parse_pencil).transpose()?;
    let (doc, suite, source, compare): (StructureDocument, Suite, String, bool) = match &cli.command {
        Command::Check { file } => (parse_structure_file(file)?, Suite::Validate, file.display().to_string(), false),
        Command::Classify { file } => (parse_structure_file(file)?, Suite::Classify, file.display().to_string(), false),
        Command::Connections { file, compare } => {
            (parse_structure_file(file)?, Suite::Connections, file.display().to_string(), *compare)
        }
        Command::Verify { file, suite } => (parse_structure_file(file)?, suite.parse()?, file.display().to_string(), false),
        Command::Gallery { name, n, emit } => {
            let doc = load_gallery(name, *n)?;
            if *emit {
                print!("{}", print_structure(&doc));
                return Ok(ExitCode::SUCCESS);
            }
            let source = match n {
                Some(n) => format!("gallery {name} (n = {n})"),
                None => format!("gallery {name}"),
            };
            let suite = doc.suite.unwrap_or(Suite::All);
            (doc, suite, source, true)
        }
    };
    let point = cli.point.as_deref().map(|p| Point::parse(&doc.chart, p)).transpose()?;
    let opts = SuiteOptions { point, pencil, compare };
    let mut report = run_suite(&doc, suite, &opts)?;
    report.source = source;
    print!("{}", emit_report(&report, format));
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
