//! Exact invariants of natural automorphisms of Hilbert schemes of points on
//! surfaces.
//!
//! Given the action `f*` of a surface automorphism on `H*(S)` and the local
//! linearizations of `f` at its fixed points, this crate computes
//!
//! * graded traces and Lefschetz numbers of `f^[n]` on `H*(S^[n])` through
//!   the Fock-space description of `⊕_n H*(S^[n])` ([`fock`]),
//! * twisted Hodge generating functions and `dim Aut(S^[n])` ([`hodge`]),
//! * the fixed locus of `f^[n]` assembled from monomial, curvilinear and
//!   periodic pieces, with exact tangent weights ([`fixed`]),
//!
//! all over exact cyclotomic arithmetic ([`algebra`]).

pub mod algebra;
pub mod error;
pub mod fixed;
pub mod fock;
pub mod hodge;
pub mod surface;

pub use error::{Error, Result};
