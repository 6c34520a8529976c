//! Finite posets and finitely presented posets on ℕ.
//!
//! - [`poset`]: finite strict orders, closure, extensions, sums, realizers.
//! - [`recognition`]: interval orders and semiorders, by forbidden patterns
//!   and by quasi-order totality, with interval and threshold representations.
//! - [`ordinal`]: Cantor normal form arithmetic.
//! - [`structure`]: levels, uniformity, spectra, autonomous sets.
//! - [`omega`]: presentations on ℕ and window certificates.
//! - [`symdyn`]: substitution words and their factor posets.
//!
//! Checks return a [`Certificate`]: a verdict, the route that produced it
//! and a witness that can be re-checked.

pub mod bitset;
pub mod certificate;
pub mod document;
pub mod error;
pub mod generate;
pub mod omega;
pub mod ordinal;
pub mod poset;
pub mod recognition;
pub mod report;
pub mod structure;
pub mod symdyn;

pub use certificate::{Certificate, Verdict, Witness};
pub use error::{Error, Result};
pub use poset::FinitePoset;
pub use report::Report;

pub type Ordinal = ordinal::Cnf<u64>;
pub type BigOrdinal = ordinal::Cnf<num_bigint::BigUint>;
