use std::fs::File;
use std::io::{self, BufRead, BufReader, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use miniadapton::sheet::{repl, ReplMode, Sheet};
use miniadapton::Scalar;
use num_rational::BigRational;

/// Incremental spreadsheet REPL.
///
/// Commands: `set <cell> = <formula>`, `get <cell>`, `cells`, `stats`, `quit`.
#[derive(Parser)]
#[command(name = "sheet", version)]
struct Args {
    /// Run commands from FILE instead of reading stdin interactively.
    #[arg(long, value_name = "FILE")]
    script: Option<PathBuf>,

    /// Use exact rational arithmetic instead of 64-bit floats.
    #[arg(long)]
    exact: bool,
}

fn run<N: Scalar>(input: Box<dyn BufRead>, mode: ReplMode) -> io::Result<i32> {
    let mut sheet: Sheet<N> = Sheet::new();
    repl(&mut sheet, input, io::stdout().lock(), mode)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (input, mode): (Box<dyn BufRead>, ReplMode) = match &args.script {
        Some(path) => match File::open(path) {
            Ok(f) => (Box::new(BufReader::new(f)), ReplMode::Script),
            Err(err) => {
                eprintln!("sheet: {}: {err}", path.display());
                return ExitCode::from(2);
            }
        },
        None => {
            let stdin = io::stdin();
            let mode = if stdin.is_terminal() {
                ReplMode::Interactive
            } else {
                ReplMode::Script
            };
            (Box::new(stdin.lock()), mode)
        }
    };
    let outcome = if args.exact {
        run::<BigRational>(input, mode)
    } else {
        run::<f64>(input, mode)
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("sheet: {err}");
            ExitCode::from(2)
        }
    }
}
