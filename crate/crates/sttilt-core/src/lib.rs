//! Support τ-tilting posets of bound-quiver algebras.
//!
//! This crate computes the support τ-tilting poset of a basic
//! finite-dimensional algebra `Λ = KQ/I` presented by a quiver with
//! relations, entirely through the two-term silting picture:
//!
//! * [`algebra`] builds an exact structure-constant model of `Λ` from a
//!   presentation, working over arbitrary-precision rationals or a prime
//!   field ([`scalar`], [`linalg`]).
//! * [`complex`] and [`silting`] model two-term complexes of projectives,
//!   compute Hom-spaces in the homotopy category, perform irreducible left
//!   mutation, and enumerate the whole poset by breadth-first search,
//!   deduplicating by g-vectors.
//! * [`poset`] analyzes the resulting finite posets: regularity, lattice
//!   structure, atoms/coatoms, the fork correspondence κ±/υ±, interval
//!   filters, isomorphism search, and a necessary realizability test.
//! * [`reconstruct`] goes the other way: from an unlabeled poset it
//!   recovers supports and the loop-free arrow skeleton of the quiver, and
//!   decides the support/path-set equivalence between two presentations.
//! * [`families`] emits the presentations and fixture posets used by the
//!   test suite (Nakayama, preprojective type A, generalized Brauer tree,
//!   two-point algebras, a 25-entry three-vertex catalogue, and stored
//!   Hasse diagrams).
//! * [`io`] serializes presentations and posets as JSON/DOT and provides a
//!   content-addressed result cache.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod poset;
pub mod presentation;
pub mod reconstruct;
pub mod scalar;
pub mod silting;

pub use error::{Error, Result};
pub use scalar::{FieldSpec, Scalar};
