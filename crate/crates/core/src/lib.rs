//! Polynomial relations on Cartesian powers of a dynamical orbit.
//!
//! Given an analytic self-map `f` of the unit disc over a complete discretely
//! valued field with an attracting fixed point at `0`, a basepoint `a`, and a
//! polynomial `G`, the [`classifier`] describes every `t` in `N^n` with
//! `G(f^t1(a), ..., f^tn(a)) = 0` as a finite union of special families:
//! iterational families (superattracting case) or lattice cosets pulled back
//! through the Koenigs linearization (attracting case).

pub mod error;
pub mod field;
pub mod series;
pub mod dynamics;
pub mod solvers;
pub mod classifier;
pub mod cli;

pub use error::{Error, Result};
pub use field::{Backend, FieldSpec, ValuedElement, Valuation, ZeroTest};
pub use series::{MultiIndex, MultiPoly, TruncatedSeries};
