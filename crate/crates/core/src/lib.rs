//! Monomial-ideal engine for constructing flat local morphisms
//! `(A, m) -> (B, n)` with prescribed dimension and depth, and for
//! certifying every invariant of the construction from first principles.
//!
//! * [`monomial`]: exact arithmetic of monomials and monomial ideals.
//! * [`decomposition`]: irreducible decomposition, associated and minimal
//!   primes, Krull dimension.
//! * [`homology`]: multigraded Betti numbers, depth, Hilbert series.
//! * [`constructions`]: the ring and morphism builders and their verification.

pub mod constructions;
pub mod decomposition;
pub mod error;
pub mod homology;
pub mod monomial;
pub mod sample;

pub use error::{Error, Result};
pub use homology::FieldSpec;
pub use monomial::{join_ideals, Monomial, MonomialIdeal, RingContext};
