pub mod boolfn;
pub mod error;
pub mod fraction;

pub use error::{Error, Result};
pub mod addressing;
pub mod approxdeg;
pub mod cli;
pub mod discrimination;
pub mod qsim;
pub mod report;
pub mod tails;
