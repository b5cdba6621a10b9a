//! Numerical laboratory for random real algebraic submanifolds.
//!
//! The crate has three layers:
//!
//! * exact-coefficient polynomial arithmetic and closed-form Gamma-function
//!   constants ([`poly`], [`constants`], [`chern`]);
//! * random ensembles and Monte Carlo estimators — GOE-type symmetric
//!   matrices, Ginibre-type square matrices, complex symmetric matrices and
//!   the Kostlan section ensemble ([`ensembles`]);
//! * counting pipelines over random zero sets: real roots on the projective
//!   line, common zeros in RP², connected components of plane curves,
//!   critical points of a fixed Morse function restricted to random curves,
//!   Lefschetz tangency counts on complex curves, and the quantitative
//!   transversality pipeline τ → m_τ → log c for explicit regular pairs
//!   ([`zero_locus`], [`morse_crit`], [`regular_pairs`]).
//!
//! Everything stochastic is driven by a master seed through a counter-based
//! splitting scheme (see [`exec`]), so runs are reproducible bit-for-bit and
//! trials can be replayed in isolation. Monte Carlo loops are data-parallel
//! via rayon when the `parallel` feature (default) is enabled, with a
//! sequential fallback otherwise; aggregation is order-independent either way.

pub mod bivar;
pub mod chern;
pub mod constants;
pub mod cpoly;
pub mod ensembles;
pub mod exec;
pub mod grid_components;
pub mod harness;
pub mod linalg;
pub mod morse_crit;
pub mod poly;
pub mod regular_pairs;
pub mod report;
pub mod sphere_mesh;
pub mod sturm;
pub mod zero_locus;

pub use poly::{MultiPoly, PolyMap};
pub use report::MomentEstimate;
