//! Exact arithmetic for the Ramanujan τ function.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: primality, budgeted factorization, valuations, Legendre symbols
//!   and small modular helpers.
//! - [`tau`]: the q-expansion of Δ (fast multi-modular builder and a slow
//!   pentagonal oracle), prime-power recurrences and multiplicative evaluation.
//! - [`lucas`]: the normalized Lucas sequences attached to each prime, ranks of
//!   apparition and primitive divisors.
//! - [`symforms`]: the symmetric forms `F_a`/`H_a` and exact `Z[√3]` arithmetic
//!   used to generate the degree-11 Thue forms.
//! - [`orbit`]: iteration of τ as a dynamical system and the orbit checks.
//! - [`congruence`]: the classical congruences for τ and the smoothness screen
//!   for `τ(p²)`.
//!
//! Inner sweeps are data-parallel through rayon when the `parallel` feature is
//! enabled (the default); every such entry point also accepts
//! [`Parallelism::Sequential`].

pub mod arith;
pub mod congruence;
mod error;
pub mod lucas;
pub mod orbit;
mod par;
pub mod symforms;
pub mod tau;

pub use error::{Error, Result};
pub use par::Parallelism;
