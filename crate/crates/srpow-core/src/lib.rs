//! Core library for computing with Stanley-Reisner ideals of simplicial
//! complexes: symbolic, ordinary and mixed powers, polarization, matroid
//! certificates, simplicial homology over exact fields, Hochster-Huneke
//! graphs, linear quotients and regularity, plus exhaustive desk-scale
//! theorem replays.

pub mod catalog;
pub mod complex;
pub mod error;
pub mod hhgraph;
pub mod homology;
pub mod hypergraph;
pub mod io;
pub mod matroid;
pub mod monomial;

pub mod oracles;
pub mod powers;
pub mod quotients;

pub use complex::{Face, SimplicialComplex};
pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialIdeal};
