//! Exact arithmetic for level structures on elliptic curves.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: rationals, prime fields, extension fields and the rank-two
//!   Galois rings used by the quaternion computations.
//! * [`curve`]: Weierstrass curves, point counting, division polynomials and
//!   torsion bases over extension fields.
//! * [`isogeny`] and [`pairing`]: cyclic subgroups, Vélu quotients and the
//!   Weil pairing.
//! * [`moduli`]: points `(E, (P, Q), C)` together with the operators acting on
//!   them (determinant index, `[n]`, `GL₂` action, degeneracy maps,
//!   Atkin–Lehner operators, Frobenius matrices).
//! * [`congruence`]: mod-N congruence evidence between curves over `Q`.
//! * [`polyalg`]: sparse multivariate polynomials, Buchberger, radical
//!   membership and projective smoothness.
//! * [`charp`]: endomorphisms of `μ_N × Z/N`, quaternion-order quotients and
//!   supersingular j-invariants in characteristic p.

pub mod arith;
pub mod charp;
pub mod congruence;
pub mod curve;
pub mod error;
pub mod field;
pub mod isogeny;
pub mod moduli;
pub mod pairing;
pub mod polyalg;

pub use error::{Error, Result};
