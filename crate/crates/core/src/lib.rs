//! Exact decision procedures and witness constructions for the
//! Deligne–Simpson problem.
//!
//! * [`exactmat`]: rational matrices, ranks, characteristic polynomials,
//!   generated algebras and the gluing solver.
//! * [`jnf`]: Jordan forms as labeled partitions, their invariants and the
//!   special-case taxonomy.
//! * [`reduction`]: the Ψ-reduction chain, goodness and the verdict table.
//! * [`spectra`]: rational eigenvalue exponents and genericity.
//! * [`constructions`]: explicit nilpotent tuples and their verifier.
//! * [`catalog`]: enumeration of diagonal tuples by index of rigidity.

pub mod catalog;
pub mod constructions;
pub mod error;
pub mod exactmat;
pub mod jnf;
pub mod reduction;
pub mod spectra;

pub use error::{DspError, Result};
