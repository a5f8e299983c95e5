//! Security experiments run as repeated trials against concrete
//! adversaries, plus the attack on the DP scheme.

pub mod attacks;
pub mod commit_encrypt;
pub mod dp;
pub mod games;
pub mod signcrypt_games;
pub mod stats;
pub mod zk;
