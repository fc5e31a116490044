// Mobius functions and signed G-sequence sums on small posets.

use std::error::Error;

use pontableau::posets::{CoverPartition, FinitePoset};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // The bowtie: 0, 1 below 2, 3.
    let bowtie = FinitePoset::from_covers(4, &[(0, 2), (0, 3), (1, 2), (1, 3)])?;
    println!("mobius from a bottom: {:?}", bowtie.with_bottom().mobius());
    let all_bad = CoverPartition::all_bad();
    println!("all covers bad: signed sum {}", bowtie.g_sequence_signed_sum(&all_bad)?);
    let good = CoverPartition::new(&bowtie, [(0, 2), (1, 3)])?;
    let sum = bowtie.g_sequence_signed_sum(&good)?;
    println!("good covers 0<2, 1<3: signed sum {sum}, claimed {}", good.claimed_signed_sum(&bowtie));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
