//! Trace codes over the dual numbers `F_q + u F_q` and the Galois rings
//! `GR(p^2, m)`, with closed-form weight predictions, exhaustive weight
//! enumeration and Gray images.

pub mod construct;
pub mod dualring;
pub mod error;
pub mod galoisring;
pub mod gf;
pub mod gray;
pub mod par;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
