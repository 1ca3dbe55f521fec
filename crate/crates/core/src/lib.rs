pub mod bessel;
pub mod error;
pub mod exec;
pub mod experiment;
pub mod limits;
pub mod numeric;
pub mod oracle;
pub mod partitions;
pub mod selftest;
pub mod symfun;
pub mod vk;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use symfun::{JackParam, PExpansion};
