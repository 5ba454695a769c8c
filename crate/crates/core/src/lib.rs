//! Photon coincidence rates in linear interferometers through the representation
//! theory of the symmetric group.

pub mod error;
pub mod immanant;
pub mod linalg;
pub mod oracle;
pub mod photonics;
pub mod repthy;
pub mod symgroup;
pub mod verify;

pub use error::{Error, Result};
