//! Spectral simulation and verification toolkit for lag-s sample
//! autocovariance matrices in the `p/T -> 0` regime.
//!
//! Given a panel of i.i.d. standardized entries `eps[i][t]` (p rows,
//! T + lag columns), the lag-s autocovariance matrix is
//!
//! ```text
//! X = (1/T) * sum_{t=s+1..s+T} eps_t eps_{t-s}^T          (p x p, non-symmetric)
//! A = (T/p) * X X^T                                        (p x p, PSD)
//! ```
//!
//! As `p -> inf`, `T -> inf` with `p/T -> 0`, the eigenvalue distribution of
//! `A` converges to the squared semicircle law on `(0, 4]` (density
//! `sqrt(1/x - 1/4) / pi`, k-th moment the k-th Catalan number) and the
//! singular value distribution of `sqrt(T/p) X` converges to the quarter law
//! on `(0, 2]` (density `sqrt(4 - x^2) / pi`). The largest eigenvalue of `A`
//! converges to 4, the right edge of the limit law.
//!
//! The crate provides:
//!
//! - [`ensemble`]: counter-based reproducible sampling of entry laws
//!   (Gaussian, Rademacher, uniform, Student t) plus the
//!   clip-center-rescale transform that bounds entries without changing
//!   the limiting spectrum;
//! - [`acv`]: construction of `X` and `A` from a sampled panel;
//! - [`eigensolve`]: a dependency-free symmetric eigensolver
//!   (Householder tridiagonalization + implicit-shift QL) and a Jacobi
//!   rotation reference solver used as a cross-check oracle;
//! - [`laws`]: the three analytic limit laws with pdf/cdf/quantile/moments
//!   and the Stieltjes transform of the squared law;
//! - [`combinatorics`]: exact big-integer moment combinatorics (Catalan
//!   numbers, Dyck path enumeration, isomorphism-class counts and bounds);
//! - [`stats`]: empirical spectral statistics (Kolmogorov-Smirnov distance
//!   to a limit law, trace moments, extremes, histogram export);
//! - [`harness`]: seeded replicated runs, ultra-vs-ratio regime sweeps,
//!   CSV/JSONL export, and a self-verification suite.

pub mod acv;
pub mod combinatorics;
pub mod ensemble;
pub mod eigensolve;
mod error;
pub mod harness;
pub mod laws;
pub mod mat;
pub mod numeric;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
