pub mod cli;
pub mod error;
pub mod groebner;
pub mod hkanalysis;
pub mod modpres;
pub mod oracle;
pub mod poly;

pub use error::{Error, Result};
