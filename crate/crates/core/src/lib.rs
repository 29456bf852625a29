//! Spin Calogero-Moser systems obtained by reducing free motion on Hermitian
//! matrices by the conjugation action of `SU(n)`.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod orbits;
pub mod reduction;
pub mod rmatrix;
pub mod sample;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
