// Intersection arrays of three flags over F_p and the dimension formulas.

use std::error::Error;

use pontableau::flagcomb::{
    almost_transverse_array, array_from_flag_triple, check_almost_transverse_bound, dim_y_first_version, FourTerms,
    PrimeField,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for seed in 0..3 {
        let a = array_from_flag_triple(4, PrimeField::DEFAULT_PRIME, seed)?;
        let terms = FourTerms::of(&a);
        println!("seed {seed}: first version {}, four terms {:?} = {}", dim_y_first_version(&a), terms, terms.value());
        assert_eq!(dim_y_first_version(&a), terms.value());
        assert!(a.difference_bounds_hold());
    }
    let a = almost_transverse_array(4, 2, PrimeField::DEFAULT_PRIME, 1)?;
    println!("almost transverse, t = 2: {:?}", check_almost_transverse_bound(&a, 2));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
