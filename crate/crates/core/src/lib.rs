pub mod classifier;
pub mod error;
pub mod linalg;
pub mod one_mode;
pub mod pollaczek;
pub mod quadrature;
pub mod specfun;
pub mod two_mode;
pub mod verify;

pub use error::{Error, Result};
