pub mod algebra;
pub mod arith;
pub mod classno;
pub mod curves;
pub mod cusps;
pub mod divisor;
pub mod error;
pub mod existence;
pub mod family;
pub mod gonality;
pub mod hecke;
pub mod tables;

pub use error::{Error, Result};
