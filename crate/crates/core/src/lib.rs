//! # finstoch
//!
//! Finite probability spaces and stochastic maps with exact rational
//! arithmetic, and the information measures that live on them.
//!
//! - [`ProbSpace`], [`StochMap`] and [`Morphism`] model finite sets with
//!   distributions, column-stochastic matrices, and measure-preserving maps.
//!   Composition, products, copy/discard/swap, joint distributions and convex
//!   sums are exact.
//! - [`measures`] evaluates Shannon entropy, conditional entropy `H(f|p)`,
//!   conditional information loss `K(f) = H(p) − H(q) + H(f|p)`, and the
//!   deviation from functoriality of a composable pair.
//! - [`bayes`] computes Bayesian inverses with a uniform fill on null outputs.
//! - [`structure`] covers bloom-shriek factorization, mediators and
//!   coalescability, disintegrations and correctable codes.
//! - [`harness`] generates seeded random instances and runs the property
//!   suites; trials run on rayon when the `parallel` feature is on.
//! - [`document`] reads and writes the text and JSON input formats.
//!
//! ```
//! use finstoch::{rational::ratio, label::labels, measures, LogBase, Morphism, ProbSpace, StochMap};
//!
//! let f = StochMap::from_columns(
//!     labels(["x0", "x1"]).unwrap(),
//!     labels(["y0", "y1"]).unwrap(),
//!     vec![vec![ratio(1, 1), ratio(0, 1)], vec![ratio(1, 2), ratio(1, 2)]],
//! ).unwrap();
//! let m = Morphism::new(f, ProbSpace::uniform(labels(["x0", "x1"]).unwrap()).unwrap()).unwrap();
//! assert_eq!(m.tgt().probs(), &[ratio(3, 4), ratio(1, 4)]);
//! let k = measures::conditional_information_loss(&m, LogBase::BITS);
//! assert!((k - 0.688722).abs() < 1e-6);
//! ```

pub mod bayes;
pub mod document;
mod error;
pub mod harness;
pub mod label;
pub mod map;
pub mod measures;
pub mod morphism;
pub mod rational;
pub mod space;
pub mod structure;

#[cfg(test)]
pub(crate) mod fixtures;

pub use error::{CoreError, Result};
pub use label::Label;
pub use map::StochMap;
pub use measures::LogBase;
pub use morphism::Morphism;
pub use rational::Rational;
pub use space::ProbSpace;
