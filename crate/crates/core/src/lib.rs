//! Exact verification engine for contact and paracontact structures on a
//! single coordinate chart.
//!
//! Every tensor component is a rational function over ℚ and every identity
//! is decided exactly. Point evaluation is only used for signatures and
//! numeric cross-checks.

pub mod check;
pub mod connections;
pub mod contact;
pub mod correspondence;
pub mod document;
pub mod error;
pub mod exact;
pub mod paracontact;

pub use error::{Error, Result};
