//! Dependency-free symmetric eigenvalue solver.
//!
//! [`eigvals_sym`] reduces the matrix to tridiagonal form with Householder
//! reflections (eigenvectors are never accumulated; every consumer in this
//! crate needs values only) and diagonalizes the tridiagonal form with
//! implicit-Wilkinson-shift QL iteration. An off-diagonal entry deflates
//! when `|e_i| <= eps * (|d_i| + |d_{i+1}|)` with eps the double-precision
//! machine epsilon; more than 30 QL sweeps for a single eigenvalue is
//! reported as a hard error, never silently accepted.
//!
//! [`jacobi_eigvals`] is a slow cyclic Jacobi rotation solver kept as an
//! independent cross-check oracle.

use crate::error::{Error, Result};
use crate::mat::Mat;

/// Maximum QL sweeps per eigenvalue before giving up.
const MAX_QL_ITER: usize = 30;

/// Relative Frobenius asymmetry accepted by `tridiagonalize`.
const SYMMETRY_TOL: f64 = 1e-8;

/// Symmetric tridiagonal matrix: `diag` of length n, `offdiag` of length n-1.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalForm {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

/// Householder reduction of a symmetric matrix to tridiagonal form.
///
/// The result is orthogonally similar to the input, so the diagonal sum
/// preserves the trace to round-off.
pub fn tridiagonalize(m: &Mat) -> Result<TridiagonalForm> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "square matrix required");
    let asym = m.relative_asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric(asym));
    }

    if n == 1 {
        return Ok(TridiagonalForm { diag: vec![m[(0, 0)]], offdiag: vec![] });
    }

    // work on a symmetrized copy; only the lower triangle is referenced
    let mut a = m.clone();
    a.symmetrize();
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += a[(i, k)].abs();
            }
            if scale == 0.0 {
                e[i] = a[(i, l)];
            } else {
                for k in 0..=l {
                    a[(i, k)] /= scale;
                    h += a[(i, k)] * a[(i, k)];
                }
                let f = a[(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[(i, l)] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    // form (A u)_j / h using the lower triangle
                    let mut g_j = 0.0;
                    for k in 0..=j {
                        g_j += a[(j, k)] * a[(i, k)];
                    }
                    for k in (j + 1)..=l {
                        g_j += a[(k, j)] * a[(i, k)];
                    }
                    e[j] = g_j / h;
                    f_acc += e[j] * a[(i, j)];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f_j = a[(i, j)];
                    let g_j = e[j] - hh * f_j;
                    e[j] = g_j;
                    for k in 0..=j {
                        let delta = f_j * e[k] + g_j * a[(i, k)];
                        a[(j, k)] -= delta;
                    }
                }
            }
        } else {
            e[i] = a[(i, l)];
        }
        d[i] = h;
    }

    for i in 0..n {
        d[i] = a[(i, i)];
    }
    let offdiag = e[1..].to_vec();
    Ok(TridiagonalForm { diag: d, offdiag })
}

/// Eigenvalues of a symmetric tridiagonal matrix, ascending.
/// Implicit-shift QL with deflation.
pub fn eig_tridiagonal(t: &TridiagonalForm) -> Result<Vec<f64>> {
    let n = t.diag.len();
    assert_eq!(t.offdiag.len(), n.saturating_sub(1), "offdiag length must be n-1");
    let mut d = t.diag.clone();
    if n <= 1 {
        return Ok(d);
    }
    // e[i] couples d[i] and d[i+1]; e[n-1] is a guard slot
    let mut e = t.offdiag.clone();
    e.push(0.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITER {
                return Err(Error::NoConvergence(MAX_QL_ITER));
            }
            // Wilkinson shift from the leading 2x2
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            if g < 0.0 {
                r = -r;
            }
            g = d[m] - d[l] + e[l] / (g + r);
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn eigvals_sym(m: &Mat) -> Result<Vec<f64>> {
    eig_tridiagonal(&tridiagonalize(m)?)
}

/// Eigenvalues of a matrix declared positive semidefinite.
///
/// Round-off eigenvalues in `[-tol, 0)` with `tol = 1e-10 * max(1, l_max)`
/// are clamped to zero; anything below `-tol` means the input was not PSD
/// and is a hard error.
pub fn eigvals_sym_psd(m: &Mat) -> Result<Vec<f64>> {
    let mut vals = eigvals_sym(m)?;
    let lmax = vals.last().copied().unwrap_or(0.0);
    let tol = 1e-10 * lmax.max(1.0);
    for v in &mut vals {
        if *v < -tol {
            return Err(Error::NotPositiveSemidefinite { value: *v, tol });
        }
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    Ok(vals)
}

/// Cyclic Jacobi rotation eigensolver, used only as a reference oracle.
///
/// Sweeps until the off-diagonal Frobenius norm falls below
/// `1e-14 * max(1, ||A||_F)`; this is the round-off floor reachable in
/// doubles for O(1)-norm inputs.
pub fn jacobi_eigvals(m: &Mat) -> Result<Vec<f64>> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a = m.clone();
    a.symmetrize();
    let target = 1e-14 * a.frobenius_sq().sqrt().max(1.0);

    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += 2.0 * a[(i, j)] * a[(i, j)];
            }
        }
        if off.sqrt() <= target {
            let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
            d.sort_by(|x, y| x.partial_cmp(y).unwrap());
            return Ok(d);
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = {
                    let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                a[(p, p)] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                a[(q, q)] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    if k != p && k != q {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = c * akp - s * akq;
                        a[(p, k)] = a[(k, p)];
                        a[(k, q)] = s * akp + c * akq;
                        a[(q, k)] = a[(k, q)];
                    }
                }
            }
        }
    }
    Err(Error::NoConvergence(100))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Deterministic pseudo-random symmetric matrix with entries in [-1, 1].
    pub(crate) fn random_symmetric(n: usize, seed: u64) -> Mat {
        use crate::ensemble::mix2;
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let bits = mix2(seed, (i * n + j) as u64);
                let v = ((bits >> 11) as f64 / 9007199254740992.0) * 2.0 - 1.0;
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }

    fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn tridiagonal_input_passes_through() {
        let m = Mat::from_rows(&[
            &[1.0, 2.0, 0.0],
            &[2.0, 3.0, -1.0],
            &[0.0, -1.0, 5.0],
        ]);
        let t = tridiagonalize(&m).unwrap();
        assert_eq!(t.diag, vec![1.0, 3.0, 5.0]);
        let off: Vec<f64> = t.offdiag.iter().map(|v| v.abs()).collect();
        assert_eq!(off, vec![2.0, 1.0]);
    }

    #[test]
    fn tridiagonalization_preserves_trace() {
        for n in [2, 3, 6, 17, 40] {
            let m = random_symmetric(n, n as u64);
            let t = tridiagonalize(&m).unwrap();
            let tr: f64 = t.diag.iter().sum();
            assert!(
                (tr - m.trace()).abs() <= 1e-10 * m.trace().abs().max(1.0),
                "n={n}"
            );
        }
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let m = Mat::from_rows(&[&[1.0, 5.0], &[0.0, 1.0]]);
        assert!(matches!(tridiagonalize(&m), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn decoupled_tridiagonal_eigenvalues() {
        let t = TridiagonalForm { diag: vec![2.0, 2.0], offdiag: vec![0.0] };
        assert_eq!(eig_tridiagonal(&t).unwrap(), vec![2.0, 2.0]);
    }

    #[test]
    fn two_by_two_exact() {
        let t = TridiagonalForm { diag: vec![0.0, 0.0], offdiag: vec![1.0] };
        let e = eig_tridiagonal(&t).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-15);
        assert!((e[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_matrix_eigenvalues() {
        let m = Mat::diag(&[3.0, 1.0, 2.0]);
        assert_eq!(eigvals_sym(&m).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn off_diagonal_pair() {
        let m = Mat::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = eigvals_sym(&m).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-15 && (e[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ql_matches_jacobi_on_random_matrices() {
        for seed in 0..100u64 {
            let n = 2 + (seed % 11) as usize; // up to 12
            let m = random_symmetric(n, seed);
            let a = eigvals_sym(&m).unwrap();
            let b = jacobi_eigvals(&m).unwrap();
            assert!(max_abs_diff(&a, &b) < 1e-10, "seed={seed} n={n}");
        }
    }

    #[test]
    fn ql_matches_jacobi_n50() {
        let m = random_symmetric(50, 999);
        let a = eigvals_sym(&m).unwrap();
        let b = jacobi_eigvals(&m).unwrap();
        assert!(max_abs_diff(&a, &b) < 1e-10);
    }

    #[test]
    fn tridiagonal_form_keeps_jacobi_spectrum() {
        let m = random_symmetric(6, 42);
        let t = tridiagonalize(&m).unwrap();
        let from_t = eig_tridiagonal(&t).unwrap();
        let oracle = jacobi_eigvals(&m).unwrap();
        assert!(max_abs_diff(&from_t, &oracle) < 1e-10);
    }

    #[test]
    fn trace_and_frobenius_invariants_up_to_256() {
        for n in [32, 128, 256] {
            let m = random_symmetric(n, 7 * n as u64);
            let e = eigvals_sym(&m).unwrap();
            let sum: f64 = e.iter().sum();
            let sum2: f64 = e.iter().map(|l| l * l).sum();
            assert!((sum - m.trace()).abs() <= 1e-9 * m.trace().abs().max(1.0), "n={n}");
            assert!((sum2 - m.frobenius_sq()).abs() <= 1e-9 * m.frobenius_sq(), "n={n}");
        }
    }

    #[test]
    fn psd_clamp_zeroes_round_off_negatives() {
        // rank-1 PSD matrix: eigenvalues (0, 0, something)
        let v = [0.3, -1.2, 0.7];
        let m = Mat::from_fn(3, 3, |i, j| v[i] * v[j]);
        let e = eigvals_sym_psd(&m).unwrap();
        assert_eq!(e[0], 0.0);
        assert_eq!(e[1], 0.0);
        let norm2: f64 = v.iter().map(|x| x * x).sum();
        assert!((e[2] - norm2).abs() < 1e-12);
    }

    #[test]
    fn genuinely_indefinite_input_fails_psd() {
        let m = Mat::diag(&[1.0, -0.5]);
        assert!(matches!(
            eigvals_sym_psd(&m),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }
}
