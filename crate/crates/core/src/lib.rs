//! Exact computations for simply-laced hyperbolic Kac–Moody and Steinberg groups.
//!
//! Everything in the core works in exact integer or rational arithmetic:
//!
//! - [`diagram`]: simply-laced Dynkin diagrams, the finite/affine/indefinite
//!   trichotomy, the catalog of the 18 hyperbolic diagrams and an exhaustive
//!   re-derivation of it at ranks up to 7.
//! - [`lattice`]: the root lattice with the Cartan form, reflections, real
//!   roots, fundamental weights and reduction into the fundamental chamber.
//! - [`geometry`]: Minkowski-model distances (stored as exact `cosh²`), the
//!   facet-distance bound and the closed form used in the root splitting.
//! - [`pairs`]: prenilpotency of real-root pairs, commutator forms and
//!   reduction certificates with an independent checker.
//! - [`ring`], [`presentation`], [`matrixcheck`]: coefficient rings, emission
//!   of the Steinberg / Kac–Moody presentations and their verification in
//!   `SL₂`/`SL₃` matrix models.
//!
//! Batch workloads go through [`par`], which uses rayon when the `parallel`
//! feature is enabled and runs sequentially otherwise.

#![allow(clippy::needless_range_loop)]

pub mod diagram;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod linalg;
pub mod matrixcheck;
pub mod pairs;
pub mod par;
pub mod presentation;
pub mod rational;
pub mod ring;

pub use diagram::{Diagram, DiagramType};
pub use error::{Error, Result};
pub use lattice::{LatticeVector, RationalVector, RootLattice, WeylWord};
pub use par::Execution;
pub use rational::Rational;
pub use ring::{RingElement, RingSpec};

