// Coherent permutation pairs and the move class of (reversal, identity).

use std::error::Error;

use pontableau::flagcomb::{is_coherent, moves_from, verify_coherence_equals_move_class, Permutation};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (w, id) = (Permutation::reversal(3), Permutation::identity(3));
    println!("({w}, {id}) coherent: {}", is_coherent(&w, &id)?);
    for (s, t) in moves_from(&w, &id) {
        println!("  one move to ({s}, {t})");
    }
    for d in 1..=4 {
        let report = verify_coherence_equals_move_class(d)?;
        println!("d = {d}: {} coherent of {} pairs, reachable {}", report.coherent, report.pairs, report.reachable);
        assert!(report.passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
