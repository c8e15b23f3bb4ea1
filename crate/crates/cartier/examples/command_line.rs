// Driving the command-line front end from code.

use cartier::cli::{emit, run, Cli};
use clap::Parser;

pub fn run_example() -> cartier::Result<()> {
    let cli = Cli::try_parse_from(["cartier", "tau", "--p", "3", "--vars", "x,y", "--f", "x^2+y^3", "--t", "5/6"])
        .expect("valid arguments");
    let out = run(&cli)?;
    print!("{}", emit(&out.report, false));
    println!("{}", emit(&out.report, true));
    assert!(out.ok);

    let cli = Cli::try_parse_from(["cartier", "repro", "ex712"]).expect("valid arguments");
    let out = run(&cli)?;
    println!("{}", out.report.result["verdict"]);
    assert!(out.ok);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
