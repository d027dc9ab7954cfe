//! Dense complex linear algebra used by every walk construction.
//!
//! Everything here is double precision and row-major. The eigensolvers are
//! small and self-contained: cyclic complex Jacobi for Hermitian input and
//! Householder–Hessenberg reduction followed by single-shift QR for the
//! general case.

mod hermitian;
mod matrix;
mod multiset;
mod schur;

pub use hermitian::{eig_hermitian, HermitianEigen};
pub use matrix::{ComplexMatrix, C64};
pub use multiset::{multiset_equal, Cluster, EigenMultiset, MatchReport};
pub use schur::{eig_general, eig_general_with_vectors, GeneralEigen};

/// `‖*a·a − I‖_max ≤ tol`.
pub fn is_isometry(a: &ComplexMatrix, tol: f64) -> bool {
    a.is_isometry(tol)
}
