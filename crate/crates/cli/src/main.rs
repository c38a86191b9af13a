use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use relpsi_cli::cli::Cli;
use relpsi_cli::commands::{run, EXIT_INPUT};
use relpsi_cli::report::ReportDocument;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INPUT),
            };
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    let started = Instant::now();
    let outcome = match run(&cli.command, cli.seed) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let json_to_stdout = cli.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if !json_to_stdout {
        print!("{}", outcome.text);
    }
    if let Some(path) = &cli.json {
        let document = ReportDocument::new(
            std::env::args().skip(1).collect(),
            outcome.results,
            started.elapsed().as_millis() as u64,
        );
        let json = document.to_json();
        if json_to_stdout {
            print!("{json}");
        } else if let Err(e) = std::fs::write(path, json) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT);
        }
    }
    ExitCode::from(outcome.exit)
}
