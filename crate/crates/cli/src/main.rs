//! `evidence` — posterior calculator and paradox mapper for weak/strong
//! study evidence observed through publication bias.

mod args;
mod commands;
mod config;
mod error;
mod output;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    let result = match cli.command {
        args::Command::Ppv(a) => commands::ppv::run(a),
        args::Command::Posterior(a) => commands::posterior::run(a),
        args::Command::Region(a) => commands::region::run(a),
        args::Command::Simulate(a) => commands::simulate::run(a),
        args::Command::Homogeneous(a) => commands::homogeneous::run(a),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
