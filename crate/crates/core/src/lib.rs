//! Pushouts of difunctional (Mal'cev) spans in finite sets and finite pointed
//! sets, computed by the equivalence-matrix construction and by a three-stage
//! decomposition, together with brute-force certificates that each resulting
//! square is a pushout, a pullback, and stable under pullback.
//!
//! Module map:
//!
//! - [`finset`]: finite sets, functions, pullbacks, coproducts, quotients.
//! - [`relcalc`]: relations as boolean matrices, difunctionality.
//! - [`exactness`]: the pushout constructions.
//! - [`verify`]: oracles, certificates, and the property suites.
//! - [`pointedset`]: the same constructions for pointed sets.
//! - [`cli`]: the text format and command front-ends.

pub mod cli;
pub mod exactness;
pub mod finset;
pub mod mutant;
pub mod pointedset;
pub mod relcalc;
pub mod verify;

pub use mutant::Mutant;
