//! Hall-property decisions (`E_pi`, `C_pi`, `D_pi`, `U_pi`) for finite simple
//! groups of Lie type, with a brute-force permutation-group cross-check.

pub mod arith;
pub mod error;
pub mod lie;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
