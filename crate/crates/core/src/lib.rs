//! Homological shift ideals, linear quotients and projective dimension of
//! powers of complementary edge ideals, with a brute-force Betti oracle.

pub mod betti;
pub mod comp_edge;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod hs;
pub mod linalg;
pub mod monomial;
pub mod verify;

pub use error::{Error, Result};
