//! Low-lying spectra and the gap diagnostics derived from them.
//!
//! The production path computes the k smallest eigenvalues with the
//! matrix-free restarted Lanczos solver; [`dense_spectrum`] assembles the
//! full matrix and diagonalizes it instead, which serves both as the
//! small-system oracle and as the route to full-spectrum quantities.

use nalgebra::SymmetricEigen;

use crate::error::SpectralError;
use crate::lanczos::{self, LanczosOpts};
use crate::pauli::Hamiltonian;
use crate::schedule::ScheduleKind;
use crate::state::StateVector;

/// Where in parameter space a spectrum slice was taken.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SlicePoint {
    pub n_sites: usize,
    pub gamma: Option<f64>,
    pub lambda: Option<f64>,
    pub s: Option<f64>,
    pub schedule: Option<ScheduleKind>,
}

/// The k lowest eigenvalues at one parameter point, with gap accessors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSlice {
    params: SlicePoint,
    eigenvalues: Vec<f64>,
}

impl SpectrumSlice {
    /// Build a slice; eigenvalues are sorted ascending on construction.
    pub fn new(params: SlicePoint, mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
        SpectrumSlice {
            params,
            eigenvalues,
        }
    }

    pub fn params(&self) -> &SlicePoint {
        &self.params
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// E1 - E0, if at least two levels are present.
    pub fn delta01(&self) -> Option<f64> {
        (self.eigenvalues.len() >= 2).then(|| self.eigenvalues[1] - self.eigenvalues[0])
    }

    /// E2 - E1, if at least three levels are present.
    pub fn delta12(&self) -> Option<f64> {
        (self.eigenvalues.len() >= 3).then(|| self.eigenvalues[2] - self.eigenvalues[1])
    }
}

/// Both gaps of a slice; requires at least three eigenvalues.
pub fn gaps(slice: &SpectrumSlice) -> Result<(f64, f64), SpectralError> {
    if slice.eigenvalues.len() < 3 {
        return Err(SpectralError::NotEnoughLevels(slice.eigenvalues.len()));
    }
    Ok((slice.delta01().unwrap(), slice.delta12().unwrap()))
}

/// The k smallest eigenvalues (ascending, with multiplicity) via the
/// matrix-free Lanczos path with default options.
pub fn lowest_eigenvalues(h: &Hamiltonian, k: usize) -> Result<Vec<f64>, SpectralError> {
    lowest_eigenvalues_with(h, k, &LanczosOpts::default())
}

/// As [`lowest_eigenvalues`] with explicit solver options.
pub fn lowest_eigenvalues_with(
    h: &Hamiltonian,
    k: usize,
    opts: &LanczosOpts,
) -> Result<Vec<f64>, SpectralError> {
    let (vals, _) = lanczos::lowest_eigenpairs(
        h.dimension(),
        h.coefficient_norm(),
        k,
        opts,
        |v, out| h.apply_into(v, out),
    )?;
    Ok(vals)
}

/// The k smallest eigenpairs. Eigenvectors are real (the Hamiltonian is
/// a real symmetric matrix) and only computed through this entry point.
pub fn lowest_eigenpairs(
    h: &Hamiltonian,
    k: usize,
    opts: &LanczosOpts,
) -> Result<(Vec<f64>, Vec<StateVector>), SpectralError> {
    let (vals, vecs) = lanczos::lowest_eigenpairs(
        h.dimension(),
        h.coefficient_norm(),
        k,
        opts,
        |v, out| h.apply_into(v, out),
    )?;
    let states = vecs
        .into_iter()
        .map(|v| {
            StateVector::from_amplitudes_unchecked(
                h.num_sites(),
                v.into_iter()
                    .map(|x| num_complex::Complex64::new(x, 0.0))
                    .collect(),
            )
        })
        .collect();
    Ok((vals, states))
}

/// The full spectrum (ascending) by dense diagonalization of the assembled
/// matrix. Subject to the dense-assembly site cap; intended for small
/// systems and as the independent check on the Lanczos path.
pub fn dense_spectrum(h: &Hamiltonian) -> Result<Vec<f64>, SpectralError> {
    let m = h.to_dense()?;
    let eig = SymmetricEigen::new(m);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(vals)
}
