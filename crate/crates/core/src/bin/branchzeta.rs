use branchzeta::cli::{run, Cli};
use clap::Parser;
use std::io::Write;

fn main() {
    let outcome = run(Cli::parse());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}
