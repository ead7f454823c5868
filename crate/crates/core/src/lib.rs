//! Exact parity and cyclic-symmetry analysis of polynomial compositions.

pub mod bipoly;
pub mod cli;
pub mod cyclic;
pub mod error;
pub mod explorer;
pub mod numeric;
pub mod oracle;
pub mod parity;
pub mod parse;
pub mod poly;
pub mod ratfn;

pub use error::Error;
pub use poly::{CyclicClass, Parity, Rational, UniPoly};
