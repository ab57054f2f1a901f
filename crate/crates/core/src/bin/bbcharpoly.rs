use std::io::Write;

use bbcharpoly::cli::{run, Cli};
use clap::Parser;

fn main() {
    let cli = Cli::parse();
    let out = run(&cli, &mut std::io::stdin().lock());
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    std::process::exit(out.code);
}
