//! The three analytic limit laws and the Stieltjes transform.
//!
//! ```text
//! semicircle on [-2, 2]:   pdf  sqrt(4 - x^2) / (2 pi)
//! quarter    on (0, 2]:    pdf  sqrt(4 - x^2) / pi        (= |semicircle|)
//! squared    on (0, 4]:    pdf  sqrt(1/x - 1/4) / pi      (= semicircle^2)
//! ```
//!
//! The quarter law is the pushforward of the semicircle law by x -> |x| and
//! the squared law its pushforward by x -> x^2, so their cdfs satisfy
//! `Q(x) = 2 H(x) - 1` and `F(x) = Q(sqrt(x))` with H the semicircle cdf.
//! The k-th moment of the squared law is the k-th Catalan number, equal to
//! the number of Dyck paths of length 2k. The squared-law density is
//! unbounded at the origin; evaluation at x <= 0 returns 0 by convention
//! and no cdf/quantile/moment routine ever samples the pdf there.
//!
//! The Stieltjes transform of the squared law, with the convention
//! `s(z) = integral dF(x) / (x - z)`, is
//!
//! ```text
//! s(z) = -1/2 + sqrt(1/4 - 1/z),       z outside [0, 4],
//! ```
//!
//! where the square root is the principal branch. That branch is the one
//! compatible with the defining integral: it gives `s(z) ~ -1/z` at
//! infinity, and satisfies `z s^2 + z s + 1 = 0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::combinatorics;
use crate::error::{Error, Result};
use crate::numeric;

/// Quadrature tolerance for law moments.
const MOMENT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitLaw {
    Semicircle,
    Quarter,
    Squared,
}

impl LimitLaw {
    pub fn name(self) -> &'static str {
        match self {
            LimitLaw::Semicircle => "semicircle",
            LimitLaw::Quarter => "quarter",
            LimitLaw::Squared => "squared",
        }
    }

    pub fn support(self) -> (f64, f64) {
        match self {
            LimitLaw::Semicircle => (-2.0, 2.0),
            LimitLaw::Quarter => (0.0, 2.0),
            LimitLaw::Squared => (0.0, 4.0),
        }
    }

    /// Density; zero outside the support.
    pub fn pdf(self, x: f64) -> f64 {
        match self {
            LimitLaw::Semicircle => {
                if x.abs() > 2.0 {
                    0.0
                } else {
                    (4.0 - x * x).sqrt() / (2.0 * PI)
                }
            }
            LimitLaw::Quarter => {
                if x <= 0.0 || x > 2.0 {
                    0.0
                } else {
                    (4.0 - x * x).sqrt() / PI
                }
            }
            LimitLaw::Squared => {
                if x <= 0.0 || x > 4.0 {
                    0.0
                } else {
                    (1.0 / x - 0.25).sqrt() / PI
                }
            }
        }
    }

    /// Closed-form cdf.
    pub fn cdf(self, x: f64) -> f64 {
        match self {
            LimitLaw::Semicircle => semicircle_cdf(x),
            LimitLaw::Quarter => {
                if x <= 0.0 {
                    0.0
                } else if x >= 2.0 {
                    1.0
                } else {
                    2.0 * semicircle_cdf(x) - 1.0
                }
            }
            LimitLaw::Squared => {
                if x <= 0.0 {
                    0.0
                } else if x >= 4.0 {
                    1.0
                } else {
                    (x * (4.0 - x)).sqrt() / (2.0 * PI) + (2.0 / PI) * (x.sqrt() / 2.0).asin()
                }
            }
        }
    }

    /// Inverse cdf by bisection (absolute tolerance 1e-12).
    pub fn quantile(self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::Domain(format!("quantile level {u} outside [0, 1]")));
        }
        let (mut lo, mut hi) = self.support();
        if u == 0.0 {
            return Ok(lo);
        }
        if u == 1.0 {
            return Ok(hi);
        }
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// k-th moment. Exact (Catalan) for the squared law; adaptive quadrature
    /// after a trigonometric substitution for the other two.
    pub fn moment(self, k: u32) -> f64 {
        match self {
            LimitLaw::Squared => combinatorics::catalan_f64(k as u64),
            LimitLaw::Quarter => {
                // x = 2 sin(theta): pdf dx = (4/pi) cos^2(theta) dtheta
                numeric::integrate(
                    |th: f64| (2.0 * th.sin()).powi(k as i32) * (4.0 / PI) * th.cos().powi(2),
                    0.0,
                    FRAC_PI_2,
                    MOMENT_TOL,
                )
            }
            LimitLaw::Semicircle => numeric::integrate(
                |th: f64| (2.0 * th.sin()).powi(k as i32) * (2.0 / PI) * th.cos().powi(2),
                -FRAC_PI_2,
                FRAC_PI_2,
                MOMENT_TOL,
            ),
        }
    }
}

fn semicircle_cdf(x: f64) -> f64 {
    if x <= -2.0 {
        0.0
    } else if x >= 2.0 {
        1.0
    } else {
        0.5 + x * (4.0 - x * x).sqrt() / (4.0 * PI) + (x / 2.0).asin() / PI
    }
}

/// Stieltjes transform of the squared law, `s(z) = -1/2 + sqrt(1/4 - 1/z)`,
/// principal branch (so that `s(z) -> -1/z` as |z| -> infinity).
///
/// Errors for real z on the support [0, 4], where the transform has its
/// branch cut.
pub fn stieltjes_squared(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && (0.0..=4.0).contains(&z.re) {
        return Err(Error::Domain(format!(
            "stieltjes transform undefined on the support cut, z = {}",
            z.re
        )));
    }
    let w = Complex64::new(0.25, 0.0) - Complex64::new(1.0, 0.0) / z;
    Ok(-0.5 + w.sqrt())
}

/// Quadrature of `f(x) / (x - z)` against the squared-law density, used as
/// the independent cross-check of [`stieltjes_squared`].
///
/// Uses the substitution x = 4 sin^2(theta), which removes the 1/sqrt(x)
/// endpoint singularity of the density.
pub fn stieltjes_squared_by_quadrature(z: Complex64, tol: f64) -> Complex64 {
    let re = numeric::integrate(
        |th: f64| {
            let x = 4.0 * th.sin().powi(2);
            let w = (4.0 / PI) * th.cos().powi(2);
            let d = Complex64::new(x, 0.0) - z;
            (w / d).re
        },
        0.0,
        FRAC_PI_2,
        tol,
    );
    let im = numeric::integrate(
        |th: f64| {
            let x = 4.0 * th.sin().powi(2);
            let w = (4.0 / PI) * th.cos().powi(2);
            let d = Complex64::new(x, 0.0) - z;
            (w / d).im
        },
        0.0,
        FRAC_PI_2,
        tol,
    );
    Complex64::new(re, im)
}

/// Quadrature of the density over its support; equals 1 for each law.
/// Kept public as the normalization oracle for the verification suite.
pub fn pdf_mass_by_quadrature(law: LimitLaw, tol: f64) -> f64 {
    match law {
        LimitLaw::Squared => numeric::integrate(
            |th: f64| (4.0 / PI) * th.cos().powi(2),
            0.0,
            FRAC_PI_2,
            tol,
        ),
        _ => {
            let (lo, hi) = law.support();
            numeric::integrate(|x| law.pdf(x), lo, hi, tol)
        }
    }
}

/// Quadrature of the density from the left support edge to x; the
/// cross-check oracle for the closed-form cdfs.
pub fn cdf_by_quadrature(law: LimitLaw, x: f64, tol: f64) -> f64 {
    let (lo, hi) = law.support();
    let x = x.clamp(lo, hi);
    match law {
        LimitLaw::Squared => {
            // integrate in theta up to arcsin(sqrt(x)/2)
            let theta = (x.sqrt() / 2.0).asin();
            numeric::integrate(|th: f64| (4.0 / PI) * th.cos().powi(2), 0.0, theta, tol)
        }
        _ => numeric::integrate(|v| law.pdf(v), lo, x, tol),
    }
}

/// Quadrature of x^k against the density; cross-check oracle for `moment`.
pub fn moment_by_quadrature(law: LimitLaw, k: u32, tol: f64) -> f64 {
    match law {
        LimitLaw::Squared => numeric::integrate(
            |th: f64| {
                let x = 4.0 * th.sin().powi(2);
                x.powi(k as i32) * (4.0 / PI) * th.cos().powi(2)
            },
            0.0,
            FRAC_PI_2,
            tol,
        ),
        _ => law.moment(k),
    }
}
