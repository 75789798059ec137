//! Exact-integer checks for the two-ray game on blowups of Fano threefolds
//! of Picard rank one.
//!
//! [`lattice`] holds the intersection algebra, [`raytypes`] the extremal-ray
//! constants and curated prune rules, and [`engine`] the bounded enumerators
//! built on both. [`report`] and [`verify`] drive the command-line tool.

mod checked;
pub mod engine;
pub mod error;
pub mod golden;
pub mod lattice;
pub mod raytypes;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
