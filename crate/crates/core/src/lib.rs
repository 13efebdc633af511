//! Exact-arithmetic machinery for thin posets: structural predicates
//! (thinness, Eulerian-ness, diamond transitivity), balanced and central
//! edge colorings over GF(2), and cohomology of free-module-valued functors,
//! with Khovanov homology and cellular homology as built-in applications.
//!
//! Everything here is pure and deterministic: elements are kept in sorted
//! id order, solvers pivot on the lowest index, and all arithmetic is exact
//! (i64 fast paths promote to arbitrary precision where they could
//! overflow). The crate is `no_std` (with `alloc`); IO, JSON formats, and
//! the command-line front end live in the companion `thincoh` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod coloring;
pub mod complex;
pub mod constructors;
pub mod diamonds;
pub mod gf2;
pub mod khovanov;
pub mod laurent;
pub mod matrix;
pub mod poset;

pub use coloring::{CoverEmbedding, EdgeColoring, Potential};
pub use complex::{BaseRing, CochainComplex, CohomologyResult, FreeFunctor};
pub use diamonds::{Diamond, DiamondSpace, Transitivity};
pub use khovanov::{KauffmanState, LinkDiagram};
pub use laurent::LaurentPoly;
pub use matrix::Mat;
pub use poset::{Chain, Interval, Poset, PosetError};

pub use num_bigint::BigInt;
