use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gxe_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let result = RunConfig::resolve(&cli.command).and_then(|cfg| run(&cfg, &mut out, &mut err));
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(err, "{}", e.line());
            ExitCode::from(e.exit_code())
        }
    }
}
