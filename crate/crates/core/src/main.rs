use std::io;

use clap::Parser;
use tame_torsion::cli::{run, RunConfig};

fn main() {
    let config = RunConfig::parse();
    let code = run(&config, &mut io::stdin().lock(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
