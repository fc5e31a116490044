// The skew shape sigma of a family, with rho and rho_hat.

use std::error::Error;

use pontableau::shapes::BnData;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let data = BnData::new(2, 1, 4, vec![0, 0], vec![0, 2])?;
    let sigma = data.sigma();
    print!("{}", sigma.diagram());
    println!("|sigma| = {}, rho = {}, rho_hat = {}", sigma.len(), data.rho(), data.rho_hat());
    assert_eq!(sigma.len(), 1);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
