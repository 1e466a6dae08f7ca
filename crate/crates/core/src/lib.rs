//! Exact two-parameter invariants of links and tied links.
//!
//! The pipeline: a link enters as a braid word with optional tie
//! information ([`tiedbraid`]), is mapped into a diagram algebra spanned by
//! set-partition/permutation pairs ([`btalgebra`]), collapsed to a scalar
//! by a Markov trace and normalized into the two-variable invariant
//! ([`invariants`]), and optionally specialized or evaluated through the
//! closed combinatorial formula for the one-variable quotient ([`omega`]).
//! All arithmetic is exact ([`coeff`]); every randomized check is seeded.

pub mod btalgebra;
pub mod coeff;
pub mod invariants;
pub mod omega;
pub mod tiedbraid;
