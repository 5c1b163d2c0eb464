pub mod arith;
pub mod certify;
pub mod cli;
pub mod construct;
pub mod cyclo;
pub mod error;
pub mod frobenius;
pub mod poly;

pub use error::{Error, Result};
