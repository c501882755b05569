pub mod bijection;
pub mod book;
pub mod cli;
pub mod dot;
pub mod error;
pub mod mobile;
pub mod orientation;
pub mod planar;
pub mod rotation;
pub mod series;
pub mod tandem;
pub mod tamari;
pub mod verify;
pub mod walk;

pub use error::{Error, Result};
