pub mod ap;
pub mod asym;
pub mod coeffs;
pub mod error;
pub mod regime;
pub mod report;
pub mod series;
pub mod wright;

pub use error::{Error, Result};
