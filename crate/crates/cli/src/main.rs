mod args;
mod commands;
mod error;
mod output;
mod source;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, out) = match &cli.command {
        Command::Validate(c) => (commands::validate(c), c.out.clone()),
        Command::Contract { common, every, cuts } => (commands::contract(common, *every, cuts.clone()), common.out.clone()),
        Command::Perron(c) => (commands::perron_cmd(c), c.out.clone()),
        Command::Towers(c) => (commands::towers(c), c.out.clone()),
        Command::FiniteLaw(c) => (commands::finite_law(c), c.out.clone()),
        Command::LimitLaw(c) => (commands::limit_law(c), c.out.clone()),
        Command::Compare(c) => (commands::compare(c), c.out.clone()),
        Command::Fdd(c) => (commands::fdd(c), c.out.clone()),
        Command::Gen { name, params, out } => (commands::gen(name, params, out.as_deref()), out.clone()),
    };
    match report.and_then(|r| output::emit(&r, out.as_deref())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e);
            e.exit_code()
        }
    }
}
