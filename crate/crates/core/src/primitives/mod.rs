//! The three ingredient classes: a signature whose verification is a
//! homomorphism check (BLS), encryptions with a ciphertext group law
//! (ElGamal, KEM/DEM, Paillier), and a commitment with a homomorphic opening
//! relation (Pedersen).

pub mod bls;
pub mod elgamal;
pub mod paillier;
pub mod pedersen;

pub use bls::{BlsKeys, BlsPublic, ClassSSignature};
pub use elgamal::{Ciphertext, ElGamalKeys};
pub use paillier::{PaillierKeys, PaillierPublic};
pub use pedersen::Pedersen;
