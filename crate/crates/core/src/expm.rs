//! Krylov evaluation of `exp(-i tau A) psi` for real symmetric operators.
//!
//! A short Lanczos recurrence projects A onto a small Krylov space; the
//! exponential of the projected tridiagonal matrix is exact (via its
//! eigendecomposition), so each step is unitary up to the orthonormality
//! of the basis — the norm of psi is preserved to rounding regardless of
//! the step size. The Krylov dimension grows adaptively until the
//! standard residual estimate drops below `tol`; if the cap is hit first
//! the step is split in half recursively.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_traits::Zero;

const MAX_KRYLOV: usize = 48;
const TOL: f64 = 1e-12;
const MAX_SPLIT_DEPTH: usize = 40;

fn cdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn cnorm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `y = exp(-i tau T) e1` for the symmetric tridiagonal T given by
/// `alphas` (diagonal) and `betas` (off-diagonal).
fn tridiag_exp_e1(alphas: &[f64], betas: &[f64], tau: f64) -> Vec<Complex64> {
    let m = alphas.len();
    let mut t = DMatrix::<f64>::zeros(m, m);
    for (i, &a) in alphas.iter().enumerate() {
        t[(i, i)] = a;
    }
    for (i, &b) in betas.iter().enumerate() {
        t[(i, i + 1)] = b;
        t[(i + 1, i)] = b;
    }
    let eig = SymmetricEigen::new(t);
    let mut y = vec![Complex64::zero(); m];
    for k in 0..m {
        let phase = Complex64::from_polar(1.0, -tau * eig.eigenvalues[k]);
        let weight = phase * eig.eigenvectors[(0, k)];
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += eig.eigenvectors[(i, k)] * weight;
        }
    }
    y
}

/// Apply `exp(-i tau A)` to `psi` in place, where `apply` computes the
/// action of the real symmetric operator A.
pub(crate) fn expm_apply<F>(apply: &mut F, tau: f64, psi: &mut [Complex64])
where
    F: FnMut(&[Complex64], &mut [Complex64]),
{
    expm_inner(apply, tau, psi, 0);
}

fn expm_inner<F>(apply: &mut F, tau: f64, psi: &mut [Complex64], depth: usize)
where
    F: FnMut(&[Complex64], &mut [Complex64]),
{
    assert!(depth < MAX_SPLIT_DEPTH, "Krylov step splitting did not terminate");
    let dim = psi.len();
    let beta0 = cnorm(psi);
    if beta0 == 0.0 || tau == 0.0 {
        return;
    }

    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(16);
    let inv = 1.0 / beta0;
    basis.push(psi.iter().map(|x| x * inv).collect());

    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![Complex64::zero(); dim];
    let max_dim = MAX_KRYLOV.min(dim);

    for j in 0..max_dim {
        apply(&basis[j], &mut w);
        let alpha = cdot(&basis[j], &w).re;
        alphas.push(alpha);
        for (wi, qi) in w.iter_mut().zip(&basis[j]) {
            *wi -= qi * alpha;
        }
        if j > 0 {
            let b = betas[j - 1];
            for (wi, qi) in w.iter_mut().zip(&basis[j - 1]) {
                *wi -= qi * b;
            }
        }
        for q in &basis {
            let c = cdot(q, &w);
            if c != Complex64::zero() {
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= qi * c;
                }
            }
        }
        let beta = cnorm(&w);

        let y = tridiag_exp_e1(&alphas, &betas, tau);
        let err = beta * y[j].norm();
        if err <= TOL || beta <= 1e-14 || j + 1 == dim {
            for slot in psi.iter_mut() {
                *slot = Complex64::zero();
            }
            for (q, yi) in basis.iter().zip(&y) {
                let c = yi * beta0;
                for (slot, qi) in psi.iter_mut().zip(q) {
                    *slot += qi * c;
                }
            }
            return;
        }

        betas.push(beta);
        let invb = 1.0 / beta;
        basis.push(w.iter().map(|x| x * invb).collect());
    }

    // Krylov cap reached without convergence: halve the step.
    expm_inner(apply, tau * 0.5, psi, depth + 1);
    expm_inner(apply, tau * 0.5, psi, depth + 1);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_xy_chain, XyParams};

    #[test]
    fn matches_dense_exponential_on_small_system() {
        let h = build_xy_chain(&XyParams::new(3, 0.6, 0.8)).unwrap();
        let dense = h.to_dense().unwrap();
        let dim = h.dimension();
        let tau = 0.7;

        // dense reference: exp(-i tau H) e0 via eigendecomposition
        let eig = SymmetricEigen::new(dense);
        let mut reference = vec![Complex64::zero(); dim];
        for k in 0..dim {
            let phase = Complex64::from_polar(1.0, -tau * eig.eigenvalues[k]);
            let w = phase * eig.eigenvectors[(0, k)];
            for (i, r) in reference.iter_mut().enumerate() {
                *r += eig.eigenvectors[(i, k)] * w;
            }
        }

        let mut psi = vec![Complex64::zero(); dim];
        psi[0] = Complex64::new(1.0, 0.0);
        let mut apply = |v: &[Complex64], out: &mut [Complex64]| h.apply_into(v, out);
        expm_apply(&mut apply, tau, &mut psi);

        let err: f64 = psi
            .iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(err < 1e-11, "err = {err}");
    }

    #[test]
    fn preserves_norm_for_large_tau() {
        let h = build_xy_chain(&XyParams::new(4, 1.0, 1.3)).unwrap();
        let dim = h.dimension();
        let mut psi: Vec<Complex64> = (0..dim)
            .map(|i| Complex64::new(1.0 + i as f64, 0.3 * i as f64))
            .collect();
        let n0 = cnorm(&psi);
        psi.iter_mut().for_each(|x| *x /= n0);
        let mut apply = |v: &[Complex64], out: &mut [Complex64]| h.apply_into(v, out);
        // tau large enough to force step splitting
        expm_apply(&mut apply, 50.0, &mut psi);
        assert!((cnorm(&psi) - 1.0).abs() < 1e-10);
    }
}
