pub mod channels;
pub mod cli;
pub mod error;
pub mod frames;
pub mod hw;
pub mod linalg;
pub mod negativity;
pub mod oracles;
pub mod random;
pub mod report;
pub mod sic;
pub mod suite;
pub mod symmetry;
pub mod tol;

pub use error::{Error, Result};
