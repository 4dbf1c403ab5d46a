//! Shared fixtures for the kernel benchmarks.

use num_complex::Complex64;
use spinsweep_core::{build_xy_chain, make_paramagnetic, Hamiltonian, XyParams};

pub fn xy_ring(n: usize, gamma: f64, lambda: f64) -> Hamiltonian {
    build_xy_chain(&XyParams::new(n, gamma, lambda)).unwrap()
}

/// A normalized complex vector with nonuniform structure (the uniform
/// superposition rotated site by site), so kernels see realistic data.
pub fn probe_state(n: usize) -> Vec<Complex64> {
    let base = make_paramagnetic(n).unwrap();
    base.amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| a * Complex64::from_polar(1.0, 0.1 * i as f64))
        .collect()
}
