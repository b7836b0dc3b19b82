//! Anomalous primes for pairs of rationally 2-isogenous elliptic curves.
//!
//! A good prime `p` is anomalous for a 2-isogenous pair `(E, E')` when
//! `E(F_p) ≅ E'(F_p)` but `E(F_{p²}) ≇ E'(F_{p²})`. This crate scans primes
//! to find them, classifies them by defect, and computes the exact predicted
//! proportion `P(E, E')` from Galois image data.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! - [`numtheory`]: `F_p`, `F_{p²}`, polynomials over them, square roots, primes.
//! - [`elliptic`]: curve models, the group law, point counting, 2-Sylow shapes.
//! - [`torsion_isogeny`]: exact-order polynomials, Vélu 2-isogenies, volcanoes.
//! - [`scanner`]: per-prime classification and coefficient estimation.
//! - [`theory`]: exact head/tail predictions and the CM rule.

#![no_std]
#![forbid(unsafe_code)]

#[cfg(test)]
extern crate std;

extern crate alloc;

pub mod elliptic;
pub mod error;
pub mod numtheory;
pub mod scanner;
pub mod theory;
pub mod torsion_isogeny;

pub use error::{Error, Result};
