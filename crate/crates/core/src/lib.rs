pub mod cli;
pub mod error;
pub mod fintwist;
pub mod grouplab;
pub mod ncpoly;
pub mod qgroup;
pub mod scalar;
pub mod spectra;

pub use error::{Error, Result};
pub use scalar::Scalar;
