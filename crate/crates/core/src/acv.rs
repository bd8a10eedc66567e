//! Lag-s autocovariance matrix construction.
//!
//! From a p x (T + s) panel, the embedding matrices are the two p x T
//! column slices
//!
//! ```text
//! E1 = (eps_1 ... eps_T),    E2 = (eps_{s+1} ... eps_{s+T}),
//! ```
//!
//! the autocovariance matrix is `X = (1/T) E2 E1^T` (entrywise equal to the
//! lagged cross-product sum), and the normalized Gram matrix is
//! `A = (T/p) X X^T`, symmetrized after the product to absorb floating-point
//! asymmetry. `E[(1/p) tr A] = 1` for any p, T and lag >= 1.

use crate::eigensolve;
use crate::ensemble::EpsilonPanel;
use crate::error::Result;
use crate::mat::Mat;
use crate::stats::{Spectrum, SpectrumMeta};

/// The p x p lag-s autocovariance matrix X = (1/T) E2 E1^T.
/// Not symmetric in general (lag > 0).
#[derive(Clone, Debug)]
pub struct AcvMatrix {
    pub p: usize,
    pub t: usize,
    pub lag: usize,
    pub x: Mat,
}

/// The normalized Gram matrix A = (T/p) X X^T: symmetric PSD.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub p: usize,
    pub t: usize,
    pub lag: usize,
    pub a: Mat,
}

/// Slice the panel into its two p x T embeddings (E1, E2).
pub fn build_embeddings(panel: &EpsilonPanel) -> (Mat, Mat) {
    let (p, t, lag) = (panel.p(), panel.t(), panel.lag());
    let e1 = Mat::from_fn(p, t, |i, j| panel.entry(i, j));
    let e2 = Mat::from_fn(p, t, |i, j| panel.entry(i, j + lag));
    (e1, e2)
}

/// X = (1/T) E2 E1^T.
pub fn build_acv(e1: &Mat, e2: &Mat, t: usize, lag: usize) -> AcvMatrix {
    assert_eq!(e1.rows(), e2.rows());
    assert_eq!(e1.cols(), t);
    assert_eq!(e2.cols(), t);
    let mut x = e2.mul_transpose(e1);
    x.scale(1.0 / t as f64);
    AcvMatrix { p: e1.rows(), t, lag, x }
}

/// A = (T/p) X X^T, symmetrized as (A + A^T)/2.
pub fn normalized_gram(acv: &AcvMatrix) -> GramMatrix {
    let mut a = acv.x.mul_transpose(&acv.x);
    a.scale(acv.t as f64 / acv.p as f64);
    a.symmetrize();
    GramMatrix { p: acv.p, t: acv.t, lag: acv.lag, a }
}

/// Convenience composition: panel -> X -> A.
pub fn gram_from_panel(panel: &EpsilonPanel) -> GramMatrix {
    let (e1, e2) = build_embeddings(panel);
    let x = build_acv(&e1, &e2, panel.t(), panel.lag());
    normalized_gram(&x)
}

/// Full pipeline: panel -> X -> A -> sorted eigenvalues of A.
///
/// The eigenvalues are the squared singular values of `sqrt(T/p) X`; the
/// singular values themselves are recovered from the returned spectrum via
/// [`Spectrum::sqrt_spectrum`]. `dist_tag` is carried into the spectrum
/// metadata (the panel does not record which law produced it).
pub fn spectrum_pipeline(panel: &EpsilonPanel, dist_tag: &str) -> Result<Spectrum> {
    let gram = gram_from_panel(panel);
    let values = eigensolve::eigvals_sym_psd(&gram.a)?;
    Spectrum::new(
        values,
        SpectrumMeta {
            p: panel.p(),
            t: panel.t(),
            lag: panel.lag(),
            dist: dist_tag.to_string(),
            seed: panel.seed(),
        },
    )
}
