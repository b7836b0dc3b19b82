//! Files, curve lookup and reports around [`isoscan_core`].
//!
//! Curves come from the fixtures compiled into the binary, an on-disk cache
//! of LMFDB records, or (with explicit permission) the LMFDB API itself.
//! Scans are written as JSON Lines, one record per prime, and can be resumed.

pub mod curves;
pub mod error;
pub mod profile;
pub mod records;
pub mod render;

pub use error::{CliError, Result};
