//! Jordan-normal-form combinatorics.
//!
//! Eigenvalue labels are opaque strings; numeric eigenvalue data lives in
//! [`crate::spectra`]. `d_of` uses the centralizer formula
//! Σ min(bᵢ, bᵢ') over pairs of blocks with the same label.

mod form;
mod ops;
mod partition;
mod taxonomy;

pub use form::{JnfTuple, JordanForm, NILPOTENT_LABEL};
pub use ops::{
    apply_op_sl, corresponding_diagonal, corresponding_single, d_of, dominates, is_omega0,
    omega0, op_neighbours, op_on_partition, partition_dominates, r_of,
};
pub use partition::Partition;
pub use taxonomy::{classify_family, classify_profile, AlmostCase, CaseLabel, SpecialCase};
