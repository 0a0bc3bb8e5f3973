use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = gridrk_cli::Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    ExitCode::from(gridrk_cli::run(cli, &mut out, &mut io::stderr()))
}
