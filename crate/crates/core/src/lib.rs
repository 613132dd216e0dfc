//! Exact-arithmetic computational algebra for weak bialgebras, bialgebroids
//! and monoidal functor fragments.
//!
//! Everything is finite-dimensional over the rationals or a prime field, and
//! every verification is a literal matrix equality: there are no tolerances
//! anywhere. The layers, bottom to top:
//!
//! - [`scalar`], [`space`], [`linmap`], [`subspace`]: exact linear algebra
//!   with canonical echelon forms, kernels, quotients and coequalizers;
//! - [`algebra`], [`module`], [`tensor_over`]: structure-constant algebras,
//!   modules and bimodules, and tensor products over an algebra realised as
//!   coequalizer quotients;
//! - [`frobenius`]: separable Frobenius structures and the induced section of
//!   the bimodule tensor projection;
//! - [`bialgebroid`]: right bialgebroids, the Takeuchi product, module
//!   products and base reconstruction;
//! - [`wba`]: weak bialgebras and both directions of the dictionary with
//!   bialgebroids over a separable Frobenius base;
//! - [`fragment`]: finite monoidal-functor fragments, their canonical
//!   factorization through bimodules, essential strength and separable
//!   Frobenius structures on functors;
//! - [`corpus`]: generators for groupoid algebras, matrix Frobenius
//!   structures and forgetful/invariants fragments.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything can be shared freely across threads. The brute-force axiom
//! scans run on a rayon pool when the default `parallel` feature is on; build
//! with `--no-default-features` for the sequential fallback. Results are
//! byte-identical either way.

pub mod algebra;
pub mod bialgebroid;
pub mod corpus;
pub mod error;
pub mod fragment;
pub mod frobenius;
pub mod linmap;
pub mod module;
pub mod par;
pub mod report;
pub mod scalar;
pub mod space;
pub mod subspace;
pub mod tensor_over;
pub mod wba;

pub use error::Error;
pub use report::{CheckResult, Report, Witness};
pub use scalar::{Field, Scalar};
pub use space::BasedSpace;
pub use linmap::LinMap;
pub use subspace::{coequalizer, Quotient, SubSpace};
