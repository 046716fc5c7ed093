use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use blowup_cli::{run_script, to_json, RunOptions};
use clap::Parser;

/// Run a blowup session script.
#[derive(Debug, Parser)]
#[command(name = "blowup", version)]
struct Opts {
    /// Script file; stdin when absent or `-`.
    script: Option<PathBuf>,
    /// Print the JSON trace document instead of text.
    #[arg(long)]
    json: bool,
    /// Also write the JSON trace document to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock timings in the document.
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let opts = Opts::parse();
    let text = match &opts.script {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error[io]: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = run_script(&text, RunOptions { timings: opts.timings });
    let json = to_json(&outcome.document);
    if let Some(path) = &opts.out {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("error[io]: {e}");
            return ExitCode::from(2);
        }
    }
    if opts.json {
        print!("{json}");
    } else if outcome.exit_code == 2 && outcome.document.status == "error" && outcome.document.result.is_null() {
        eprint!("{}", outcome.text);
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.exit_code as u8)
}
