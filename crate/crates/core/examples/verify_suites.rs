// Runs every verification suite at quick limits and summarises the report.

use std::error::Error;

use pontableau::verify::{run, Limits, Suite};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let report = run(Suite::All, &Limits::quick(), 7);
    for s in &report.suites {
        println!("{:<11} {:>6} cases {:>4} failures", s.suite.to_string(), s.cases, s.failure_count);
        for note in &s.notes {
            println!("  {note}");
        }
    }
    println!("total: {} cases, {} failures", report.cases, report.failure_count);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
