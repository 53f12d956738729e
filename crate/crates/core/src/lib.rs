//! Exact integral homology for complements of r-equal diagonal subspace
//! arrangements (partial configuration spaces of `R^n`), together with a
//! symbolic connectivity calculus for the Taylor tower of the r-immersion
//! functor.
//!
//! The crate is organised bottom-up:
//!
//! * [`poset`] - finite posets, set partitions, and the r-equal partition
//!   lattice with its open intervals and order complexes.
//! * [`complex`] - abstract simplicial complexes (joins, wedges, sphere
//!   models) and their integral chain complexes.
//! * [`homology`] - sparse Smith normal form over arbitrary-precision
//!   integers, reduced homology tables, homological connectivity.
//! * [`arrangement`] - the two homology models for the complement
//!   `rConf(k, R^n)`: the intersection-lattice sum and the wedge model,
//!   plus fast paths and cross-checking.
//! * [`calculus`] - connectivity values, composition rules, and traced
//!   derivations of Taylor-tower connectivity labels.
//! * [`suites`] - batch verification suites used by the CLI and the
//!   acceptance tests.

pub mod arrangement;
pub mod calculus;
pub mod complex;
pub mod homology;
pub mod poset;
pub mod suites;
