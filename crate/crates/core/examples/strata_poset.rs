// The poset of pontableaux for a small family, checked against its drawing.

use std::error::Error;

use pontableau::figures::{compare, figure_four};
use pontableau::pontableaux::StrataPoset;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let drawing = figure_four();
    let strata = StrataPoset::new(&drawing.data);
    for (p, s) in strata.nodes.iter().zip(strata.statistics()) {
        println!("dim {} mu {:>2} chi {:>2}  {}", s.dim, s.mu, s.chi, p.labeling());
    }
    let cmp = compare(&drawing, &strata);
    println!(
        "{} strata, {} covers, drawing matches: {}",
        strata.nodes.len(),
        strata.poset.covers().len(),
        cmp.matches()
    );
    assert!(cmp.matches());
    println!("{}", strata.to_dot(true));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
