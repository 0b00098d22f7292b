pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod fastpath;
pub mod group;
pub mod linalg;
pub mod rigidity;
pub mod structure;

pub use error::{Error, Result};
