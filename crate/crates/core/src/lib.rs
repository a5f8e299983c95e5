//! Convertible designated confirmer signatures and verifiable signcryption.

mod error;
pub mod groups;
pub mod primitives;
pub mod analysis;
pub mod cdcs;
pub mod sigma;
pub mod signcrypt;
pub mod wire;

pub use error::Error;
