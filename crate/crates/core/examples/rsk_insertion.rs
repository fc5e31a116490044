// Skew set-valued RSK: the worked example frame by frame, then back again.

use std::error::Error;

use pontableau::rsk::{check_worked_example, rsk_forward_traced, rsk_inverse, worked_example};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let input = worked_example();
    let (output, frames) = rsk_forward_traced(&input)?;
    for (i, f) in frames.iter().enumerate() {
        println!("frame {}: row {} moves {} to {}", i + 1, f.stage, f.moved, f.new_box);
    }
    println!("tableau:\n{}\nbelow sigma:\n{}", output.tableau, output.below);
    assert!(check_worked_example().is_empty());
    assert_eq!(rsk_inverse(&output)?, input);
    println!("inverse recovers the input");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
