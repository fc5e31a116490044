// A row-refined Grothendieck polynomial against its skew-Schur expansion.

use std::error::Error;

use pontableau::shapes::SkewShape;
use pontableau::symfunc::{counting_identity_sides, row_refined_grothendieck, verify_refined_expansion};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // A horizontal domino over a box, shifted right: columns 1..3 and 0..1.
    let sigma = SkewShape::from_row_ranges(&[(1, 3), (0, 1)])?;
    let rg = row_refined_grothendieck(&sigma, 2, sigma.row_span(), 4)?;
    println!("RG = {rg}");
    verify_refined_expansion(&sigma, 3, 5)?;
    println!("expansion agrees up to degree 5 in 3 variables");
    let (lhs, rhs) = counting_identity_sides(&sigma, &[1, 1, 1, 1], &[1, 0]);
    println!("counting identity at content (1,1,1,1), excess (1,0): {lhs} = {rhs}");
    assert_eq!(lhs, rhs);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
