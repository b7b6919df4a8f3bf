mod args;
mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use output::{CommandResult, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::Constants => "constants",
        Command::Bound(_) => "bound",
        Command::OptimizePartition(_) => "optimize-partition",
        Command::PrimeSplit(_) => "prime-split",
        Command::Compose(_) => "compose",
        Command::Embed(_) => "embed",
        Command::Verify(_) => "verify",
    };
    let outcome = config::load(cli.config_file.as_deref()).and_then(|cfg| match &cli.command {
        Command::Constants => commands::constants(),
        Command::Bound(a) => commands::bound(a),
        Command::OptimizePartition(a) => commands::optimize(a, &cfg),
        Command::PrimeSplit(a) => commands::prime_split(a),
        Command::Compose(a) => commands::compose(a),
        Command::Embed(a) => commands::embed(a),
        Command::Verify(a) => commands::verify(a, &cfg),
    });
    let (result, code) = match outcome {
        Ok(o) => (
            CommandResult { subcommand: name.into(), inputs: o.inputs, outputs: o.outputs, status: Status::Ok },
            0,
        ),
        Err(e) => {
            let status = Status::Error { kind: output::error_kind(&e).into(), message: e.to_string() };
            (
                CommandResult { subcommand: name.into(), inputs: serde_json::Value::Null, outputs: Vec::new(), status },
                output::exit_code(&e),
            )
        }
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&result).expect("results serialize"));
    } else if let Status::Error { message, .. } = &result.status {
        eprintln!("error: {message}");
    } else {
        output::print_table(&result);
    }
    ExitCode::from(code as u8)
}
