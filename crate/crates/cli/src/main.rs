mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

use commands::{Failure, USAGE};
use config::{Cli, Opts};

fn load_config(cli: Cli) -> Result<(config::Command, Opts), Failure> {
    let Some(path) = &cli.config else {
        return Ok((cli.command, cli.opts));
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: USAGE, message: format!("cannot read {}: {e}", path.display()) })?;
    let file: Opts = toml::from_str(&text)
        .map_err(|e| Failure { code: USAGE, message: format!("cannot parse {}: {e}", path.display()) })?;
    Ok((cli.command, cli.opts.or(file)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match load_config(cli).and_then(|(command, opts)| commands::run(command, &opts)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
