pub mod figures;
pub mod flagcomb;
pub mod poly;
pub mod pontableaux;
pub mod posets;
pub mod rsk;
pub mod shapes;
pub mod symfunc;
pub mod tableaux;
pub mod verify;
