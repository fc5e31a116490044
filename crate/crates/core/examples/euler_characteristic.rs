// Euler characteristics by both routes, which must agree.

use std::error::Error;

use pontableau::pontableaux::{euler_characteristic, Route};
use pontableau::shapes::BnData;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let families = [
        BnData::new(2, 1, 4, vec![0, 0], vec![0, 2])?,
        BnData::new(5, 1, 4, vec![0, 0], vec![0, 0])?,
        BnData::new(4, 2, 6, vec![0, 0, 0], vec![0, 1, 1])?,
    ];
    for data in &families {
        let chi = euler_characteristic(data, Route::Both)?;
        println!("g={} r={} d={} alpha={:?} beta={:?}: chi = {chi}", data.g, data.r, data.d, data.alpha, data.beta);
    }
    assert_eq!(euler_characteristic(&families[0], Route::Both)?, -1);
    assert_eq!(euler_characteristic(&families[1], Route::Both)?, -10);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
