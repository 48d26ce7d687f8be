//! Homotopy invariants of nanowords.

pub mod based_matrix;
pub mod canonical;
pub mod linking;

pub use based_matrix::{based_matrix, reduce_based_matrix, BasedMatrix, Element};
pub use canonical::{canonical_form, m_profile, theta, CanonicalPbm};
pub use linking::{
    covering, covering_radii, linking, n_values, u_polynomial, LetterStats, UPolynomial,
};

use crate::nanoword::Nanoword;

/// Canonical description of the primitive based matrix of `nw`.
pub fn pbm(nw: &Nanoword) -> CanonicalPbm {
    canonical_form(&reduce_based_matrix(&based_matrix(nw)))
}
