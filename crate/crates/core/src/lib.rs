pub mod algebraic;
pub mod arith;
pub mod cli;
pub mod cmcurve;
pub mod dimgroup;
pub mod error;
pub mod factor;
pub mod ffield;
pub mod linalg;
pub mod poly;
pub mod pseudolattice;
pub mod roots;
pub mod variety;
pub mod weil;
pub mod zeta;

pub use error::{Error, Result};
