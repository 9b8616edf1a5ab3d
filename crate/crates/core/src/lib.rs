//! Construction, counting and verification of right conjugacy closed (RCC)
//! loops of order `2p`, the `GL(2,q)` loop series, and the loop-folder
//! machinery connecting loops with permutation groups.

pub mod algebra;
pub mod brute;
pub mod constructions;
pub mod counting;
pub mod error;
pub mod folder;
pub mod gl2_series;
pub mod inventory;
pub mod loops;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
