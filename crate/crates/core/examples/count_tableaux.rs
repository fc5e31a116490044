// Standard and semistandard set-valued tableaux on a small skew shape.

use std::error::Error;

use pontableau::shapes::SkewShape;
use pontableau::tableaux::{count_ssvt, count_standard_svt};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // Two boxes in a column.
    let shape = SkewShape::from_row_ranges(&[(0, 1), (0, 1)])?;
    for n in 0..=4 {
        println!("labels 1..={n}: {} standard", count_standard_svt(&shape, n));
    }
    // One box per label, so only the standard Young tableau remains.
    assert_eq!(count_standard_svt(&shape, 2), 1);
    println!("content (1,1,1): {} semistandard", count_ssvt(&shape, &[1, 1, 1], None));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
