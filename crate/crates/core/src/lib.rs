//! Exact computations for the quantum Euclidean 2n-space `O_q(oK^{2n})` at
//! an odd root of unity: a normal-form rewriter for the algebra, its
//! PI-degree via the associated quasipolynomial algebra, explicit simple
//! modules, and a verification suite for them.

pub mod config;
pub mod error;
pub mod pidegree;
pub mod repmod;
pub mod rewriter;
pub mod scalars;
pub mod verify;

pub use error::{Error, Result};
