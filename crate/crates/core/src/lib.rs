pub mod error;
pub mod fan;
pub mod fano_data;
pub mod intersect;
pub mod io;
pub mod mmp;
pub mod polytope;
pub mod ratlin;

pub use error::{Error, Result};
