//! Restarted Lanczos eigensolver for real symmetric matrix-free operators.
//!
//! The solver finds the k algebraically smallest eigenvalues, counting
//! multiplicity. A single Krylov sequence can only ever see one copy of a
//! degenerate eigenvalue, so the outer loop locks exactly one converged
//! eigenpair per round and deflates it explicitly; repeated eigenvalues
//! surface again in later rounds. Within a round the solver uses thick
//! restarts: the lowest Ritz pairs and the trailing residual direction are
//! carried into the next cycle, which keeps the basis bounded while
//! preserving convergence. All basis vectors are kept fully
//! reorthogonalized (two classical Gram-Schmidt passes per step).

use nalgebra::{DMatrix, SymmetricEigen};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::SpectralError;

/// Tuning knobs for the restarted Lanczos solver.
#[derive(Debug, Clone)]
pub struct LanczosOpts {
    /// Seed for the start vectors. Fixed by default so that sweeps are
    /// reproducible run to run and across worker counts.
    pub seed: u64,
    /// Residual tolerance relative to the coefficient-norm scale of the
    /// operator; the absolute eigenvalue error is bounded by the residual.
    pub rel_tol: f64,
    /// Maximum basis size per restart cycle.
    pub max_basis: usize,
    /// Restart cycles allowed per locked eigenpair before giving up.
    pub max_cycles: usize,
    /// Number of Ritz pairs carried across a thick restart.
    pub thick_window: usize,
}

impl Default for LanczosOpts {
    fn default() -> Self {
        LanczosOpts {
            seed: 0x5350_494e,
            rel_tol: 1e-11,
            max_basis: 160,
            max_cycles: 400,
            thick_window: 12,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.random::<f64>() - 0.5).collect()
}

/// Remove the components of `v` along each vector in `against` (two passes),
/// then normalize. Returns false if `v` was numerically inside their span.
fn orthonormalize(v: &mut [f64], against: &[Vec<f64>]) -> bool {
    for _ in 0..2 {
        for w in against {
            let c = dot(w, v);
            if c != 0.0 {
                axpy(-c, w, v);
            }
        }
    }
    let n = norm(v);
    if n < 1e-8 {
        return false;
    }
    let inv = 1.0 / n;
    v.iter_mut().for_each(|x| *x *= inv);
    true
}

/// Compute the k smallest eigenvalues (ascending, with multiplicity) and
/// the corresponding orthonormal eigenvectors of a real symmetric operator
/// given by its action `apply(v, out)`.
///
/// `scale` should bound the spectral norm (for Hamiltonians, the sum of
/// absolute term coefficients); it sets the absolute convergence tolerance
/// `rel_tol * max(scale, 1)`.
pub(crate) fn lowest_eigenpairs<F>(
    dim: usize,
    scale: f64,
    k: usize,
    opts: &LanczosOpts,
    mut apply: F,
) -> Result<(Vec<f64>, Vec<Vec<f64>>), SpectralError>
where
    F: FnMut(&[f64], &mut [f64]),
{
    if k == 0 {
        return Err(SpectralError::ZeroEigenvalues);
    }
    if k > dim {
        return Err(SpectralError::TooManyEigenvalues { k, dim });
    }
    let tol = opts.rel_tol * scale.max(1.0);
    let breakdown = 1e-14 * scale.max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut locked_vals: Vec<f64> = Vec::with_capacity(k);
    let mut locked_vecs: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut carry: Option<Vec<f64>> = None;

    while locked_vals.len() < k {
        let round = Round {
            dim,
            tol,
            breakdown,
            opts,
            locked: &locked_vecs,
        };
        let (val, vec, next_carry) = round.converge_lowest(&mut rng, carry.take(), &mut apply)?;
        locked_vals.push(val);
        locked_vecs.push(vec);
        carry = next_carry;
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| locked_vals[a].partial_cmp(&locked_vals[b]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| locked_vals[i]).collect();
    let mut vecs_opt: Vec<Option<Vec<f64>>> = locked_vecs.into_iter().map(Some).collect();
    let vecs: Vec<Vec<f64>> = order.iter().map(|&i| vecs_opt[i].take().unwrap()).collect();
    Ok((vals, vecs))
}

struct Round<'a> {
    dim: usize,
    tol: f64,
    breakdown: f64,
    opts: &'a LanczosOpts,
    locked: &'a [Vec<f64>],
}

impl Round<'_> {
    /// Run thick-restart Lanczos on the operator deflated against the
    /// locked vectors until the lowest Ritz pair converges. Returns the
    /// pair plus the next-lowest Ritz vector as a warm start for the
    /// following round.
    fn converge_lowest<F>(
        &self,
        rng: &mut ChaCha8Rng,
        carry: Option<Vec<f64>>,
        apply: &mut F,
    ) -> Result<(f64, Vec<f64>, Option<Vec<f64>>), SpectralError>
    where
        F: FnMut(&[f64], &mut [f64]),
    {
        let cap = self.opts.max_basis.min(self.dim - self.locked.len()).max(1);

        let mut start = self.initial_start(rng, carry);
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(cap);
        let mut kept_vals: Vec<f64> = Vec::new();
        let mut kept_coup: Vec<f64> = Vec::new();
        let mut tmat = DMatrix::<f64>::zeros(cap, cap);

        for _cycle in 0..self.opts.max_cycles {
            let kept = basis.len();
            basis.push(start);
            tmat.fill(0.0);
            for i in 0..kept {
                tmat[(i, i)] = kept_vals[i];
                tmat[(i, kept)] = kept_coup[i];
                tmat[(kept, i)] = kept_coup[i];
            }

            // Lanczos chain from position `kept`
            let mut j = kept;
            let mut beta_last = 0.0f64;
            let mut residual: Option<Vec<f64>> = None;
            let mut exhausted = false;
            loop {
                let mut w = vec![0.0f64; self.dim];
                apply(&basis[j], &mut w);
                for lv in self.locked {
                    let c = dot(lv, &w);
                    if c != 0.0 {
                        axpy(-c, lv, &mut w);
                    }
                }
                tmat[(j, j)] = dot(&basis[j], &w);
                for _ in 0..2 {
                    for b in &basis {
                        let c = dot(b, &w);
                        if c != 0.0 {
                            axpy(-c, b, &mut w);
                        }
                    }
                }
                let beta = norm(&w);
                if j + 1 >= cap {
                    beta_last = beta;
                    if beta > self.breakdown {
                        let inv = 1.0 / beta;
                        w.iter_mut().for_each(|x| *x *= inv);
                        residual = Some(w);
                    }
                    break;
                }
                if beta <= self.breakdown {
                    // invariant subspace: the projected problem is exact
                    exhausted = true;
                    break;
                }
                let inv = 1.0 / beta;
                w.iter_mut().for_each(|x| *x *= inv);
                tmat[(j, j + 1)] = beta;
                tmat[(j + 1, j)] = beta;
                basis.push(w);
                j += 1;
            }

            let m = basis.len();
            let eig = SymmetricEigen::new(tmat.view((0, 0), (m, m)).into_owned());
            let mut idx: Vec<usize> = (0..m).collect();
            idx.sort_by(|&a, &b| {
                eig.eigenvalues[a]
                    .partial_cmp(&eig.eigenvalues[b])
                    .unwrap()
            });

            let theta0 = eig.eigenvalues[idx[0]];
            let res0 = if exhausted {
                0.0
            } else {
                beta_last * eig.eigenvectors[(m - 1, idx[0])].abs()
            };

            if res0 <= self.tol || exhausted {
                let x0 = self.ritz_vector(&basis, &eig.eigenvectors, idx[0]);
                let next = if m >= 2 {
                    Some(self.ritz_vector(&basis, &eig.eigenvectors, idx[1]))
                } else {
                    None
                };
                return Ok((theta0, x0, next));
            }

            let Some(resid) = residual else {
                // beta collapsed exactly at the cap boundary; restart fresh
                basis.clear();
                kept_vals.clear();
                kept_coup.clear();
                start = self.initial_start(rng, None);
                continue;
            };

            // thick restart: carry the lowest Ritz pairs plus the residual;
            // the +1 residual slot must still fit under the basis cap
            let thick = self
                .opts
                .thick_window
                .min(m - 1)
                .min(cap / 2)
                .max(1)
                .min(cap - 1);
            let mut new_basis = Vec::with_capacity(cap);
            kept_vals.clear();
            kept_coup.clear();
            for &col in idx.iter().take(thick) {
                new_basis.push(self.ritz_vector(&basis, &eig.eigenvectors, col));
                kept_vals.push(eig.eigenvalues[col]);
                kept_coup.push(beta_last * eig.eigenvectors[(m - 1, col)]);
            }
            basis = new_basis;
            start = resid;
        }

        Err(SpectralError::NoConvergence {
            locked: self.locked.len(),
            needed: self.locked.len() + 1,
            cycles: self.opts.max_cycles,
        })
    }

    /// Warm-started vectors are blended with noise: the Krylov space of the
    /// previous round is exactly orthogonal to any eigendirections it never
    /// saw (degenerate partners), so a pure carry could not find them.
    fn initial_start(&self, rng: &mut ChaCha8Rng, carry: Option<Vec<f64>>) -> Vec<f64> {
        let mut v = match carry {
            Some(mut c) => {
                let mut noise = random_vector(rng, self.dim);
                let n = norm(&noise);
                noise.iter_mut().for_each(|x| *x /= n);
                axpy(0.2, &noise, &mut c);
                c
            }
            None => random_vector(rng, self.dim),
        };
        loop {
            if orthonormalize(&mut v, self.locked) {
                return v;
            }
            v = random_vector(rng, self.dim);
        }
    }

    fn ritz_vector(&self, basis: &[Vec<f64>], u: &DMatrix<f64>, col: usize) -> Vec<f64> {
        let mut x = vec![0.0f64; self.dim];
        for (i, q) in basis.iter().enumerate() {
            axpy(u[(i, col)], q, &mut x);
        }
        let n = norm(&x);
        if n > 0.0 {
            let inv = 1.0 / n;
            x.iter_mut().for_each(|xi| *xi *= inv);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // dense symmetric test operator
    fn apply_dense(m: &DMatrix<f64>) -> impl FnMut(&[f64], &mut [f64]) + '_ {
        move |v, out| {
            for (r, slot) in out.iter_mut().enumerate() {
                *slot = (0..m.ncols()).map(|c| m[(r, c)] * v[c]).sum();
            }
        }
    }

    #[test]
    fn diagonal_with_degeneracies() {
        let diag = [-3.0, -3.0, -3.0, 0.5, 0.5, 2.0, 7.0, 7.0];
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&diag));
        let (vals, vecs) =
            lowest_eigenpairs(8, 10.0, 6, &LanczosOpts::default(), apply_dense(&m)).unwrap();
        let expect = [-3.0, -3.0, -3.0, 0.5, 0.5, 2.0];
        for (v, e) in vals.iter().zip(expect) {
            assert!((v - e).abs() < 1e-9, "{vals:?}");
        }
        // eigenvectors orthonormal
        for i in 0..vecs.len() {
            for j in 0..vecs.len() {
                let d = dot(&vecs[i], &vecs[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-8, "overlap {i},{j} = {d}");
            }
        }
    }

    #[test]
    fn random_dense_matches_full_eigh() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for trial in 0..5 {
            let n = 60 + 10 * trial;
            let a = DMatrix::from_fn(n, n, |_, _| rng.random::<f64>() - 0.5);
            let sym = (&a + a.transpose()) * 0.5;
            let mut reference: Vec<f64> = SymmetricEigen::new(sym.clone())
                .eigenvalues
                .iter()
                .copied()
                .collect();
            reference.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let scale = sym.abs().max();
            let (vals, _) = lowest_eigenpairs(
                n,
                scale * n as f64,
                5,
                &LanczosOpts::default(),
                apply_dense(&sym),
            )
            .unwrap();
            for (got, want) in vals.iter().zip(&reference[..5]) {
                assert!((got - want).abs() < 1e-9, "trial {trial}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn full_spectrum_of_tiny_operator() {
        // k equal to the dimension forces repeated exhaustion/deflation
        let diag = [1.0, 1.0, 2.0, 4.0];
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&diag));
        let (vals, _) =
            lowest_eigenpairs(4, 4.0, 4, &LanczosOpts::default(), apply_dense(&m)).unwrap();
        for (v, e) in vals.iter().zip([1.0, 1.0, 2.0, 4.0]) {
            assert!((v - e).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_k() {
        let m = DMatrix::<f64>::identity(4, 4);
        assert!(matches!(
            lowest_eigenpairs(4, 1.0, 0, &LanczosOpts::default(), apply_dense(&m)),
            Err(SpectralError::ZeroEigenvalues)
        ));
        assert!(matches!(
            lowest_eigenpairs(4, 1.0, 5, &LanczosOpts::default(), apply_dense(&m)),
            Err(SpectralError::TooManyEigenvalues { .. })
        ));
    }

    #[test]
    fn reports_nonconvergence_instead_of_truncating() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = DMatrix::from_fn(40, 40, |_, _| rng.random::<f64>() - 0.5);
        let sym = (&a + a.transpose()) * 0.5;
        let opts = LanczosOpts {
            max_cycles: 1,
            max_basis: 3,
            ..Default::default()
        };
        assert!(matches!(
            lowest_eigenpairs(40, 40.0, 2, &opts, apply_dense(&sym)),
            Err(SpectralError::NoConvergence { .. })
        ));
    }
}
