//! Certificates for residue counts of integer linear recurrences.
//!
//! Given a monic `g` divisible by a quadratic `f = X^2 - tX + c` with `c = ±1`,
//! the crate searches for a prime `p` and a residue `a` with `p | f(a)` and
//! `ord_p(a) = m`. The recurrence with characteristic polynomial `g` and
//! initial terms `1, a, ..., a^(r-1)` then takes exactly `m` residues modulo
//! `p`. Candidates for `p` come from primitive divisors of Lehmer sequences,
//! and every certificate is re-checked by simulating the recurrence.
//!
//! Modules, bottom-up:
//!
//! - [`nt`]: primality, factoring, orders, Legendre symbols.
//! - [`poly`]: dense integer polynomials, cyclotomic polynomials, resultants.
//! - [`lehmer`]: Lehmer sequences through their invariants `(R, Q)`.
//! - [`aurifeuille`]: Aurifeuillian pairs and sums of two squares.
//! - [`recsim`]: exact simulation of recurrences modulo `M`.
//! - [`witness`]: the search pipeline producing [`witness::Witness`] values.
//! - [`suite`]: the end-to-end acceptance checks, shared by tests and the CLI.

pub mod aurifeuille;
pub mod error;
pub mod lehmer;
pub mod nt;
pub mod poly;
pub mod recsim;
pub mod suite;
pub mod witness;

pub use error::{Error, Result};
