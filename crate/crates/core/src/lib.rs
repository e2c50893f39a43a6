//! Separability criteria for the three-qubit mixture of white noise, GHZ and W states.

pub mod bipartite;
pub mod classify;
pub mod concurrence;
pub mod config;
pub mod error;
pub mod linalg;
pub mod scan;
pub mod states;
pub mod tripartite;
pub mod verdict;

pub use config::Config;
pub use error::{Error, Result};
pub use states::SimplexPoint;
