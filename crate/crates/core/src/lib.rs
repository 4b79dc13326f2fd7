pub mod error;
pub mod exactnum;
pub mod autgroup;
pub mod classify;
pub mod folding;
pub mod gcm;
pub mod quantumtorus;
pub mod verify;

pub use error::{Error, Result};
