//! State vectors over the computational basis, the canonical product and
//! cat states, and the observables evaluated on them.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::StateError;
use crate::pauli::{Hamiltonian, SiteIndex, MAX_SITES};

/// Ferromagnet orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinDirection {
    Up,
    Down,
}

/// A pure state of N spins: 2^N complex amplitudes in the basis described
/// in [`crate::pauli`] (site 1 = least significant bit, 0 = up).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_sites: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wrap an amplitude vector, checking only the dimension.
    pub fn from_amplitudes(
        num_sites: usize,
        amplitudes: Vec<Complex64>,
    ) -> Result<Self, StateError> {
        check_sites(num_sites)?;
        let dim = 1usize << num_sites;
        if amplitudes.len() != dim {
            return Err(StateError::WrongDimension {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        Ok(StateVector {
            num_sites,
            amplitudes,
        })
    }

    pub(crate) fn from_amplitudes_unchecked(num_sites: usize, amplitudes: Vec<Complex64>) -> Self {
        StateVector {
            num_sites,
            amplitudes,
        }
    }

    /// The basis state |b>.
    pub fn basis_state(num_sites: usize, index: usize) -> Result<Self, StateError> {
        check_sites(num_sites)?;
        let dim = 1usize << num_sites;
        if index >= dim {
            return Err(StateError::WrongDimension {
                expected: dim,
                got: index,
            });
        }
        let mut amplitudes = vec![Complex64::zero(); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            num_sites,
            amplitudes,
        })
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// |norm^2 - 1|, the quantity tracked as `norm_error` in evolution traces.
    pub fn norm_error(&self) -> f64 {
        (self.norm_sqr() - 1.0).abs()
    }
}

fn check_sites(num_sites: usize) -> Result<(), StateError> {
    if num_sites == 0 || num_sites > MAX_SITES {
        return Err(StateError::TooManySites {
            requested: num_sites,
            max: MAX_SITES,
        });
    }
    Ok(())
}

/// The paramagnetic state |P> = prod_i |+>_i: a uniform superposition with
/// every amplitude 2^(-N/2). Ground state of the driver -sum X_i.
pub fn make_paramagnetic(num_sites: usize) -> Result<StateVector, StateError> {
    check_sites(num_sites)?;
    let dim = 1usize << num_sites;
    // exact for even N (sqrt of an even power of two), correctly rounded otherwise
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    Ok(StateVector::from_amplitudes_unchecked(
        num_sites,
        vec![amp; dim],
    ))
}

/// The all-up or all-down product state.
pub fn make_ferromagnet(
    num_sites: usize,
    direction: SpinDirection,
) -> Result<StateVector, StateError> {
    check_sites(num_sites)?;
    let dim = 1usize << num_sites;
    let index = match direction {
        SpinDirection::Up => 0,
        SpinDirection::Down => dim - 1,
    };
    StateVector::basis_state(num_sites, index)
}

/// The N-spin cat state (|all up> + |all down>)/sqrt(2), with the positive
/// relative phase. On a flattened grid this is also the 2D version: the
/// row-major site mapping leaves the two fully polarized configurations at
/// basis indices 0 and 2^N - 1 regardless of lattice shape.
pub fn make_ghz(num_sites: usize) -> Result<StateVector, StateError> {
    check_sites(num_sites)?;
    let dim = 1usize << num_sites;
    let mut amplitudes = vec![Complex64::zero(); dim];
    let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amplitudes[0] = w;
    amplitudes[dim - 1] = w;
    Ok(StateVector::from_amplitudes_unchecked(
        num_sites,
        amplitudes,
    ))
}

/// <a|b>
pub fn inner(a: &StateVector, b: &StateVector) -> Result<Complex64, StateError> {
    if a.dimension() != b.dimension() {
        return Err(StateError::DimensionMismatch(a.dimension(), b.dimension()));
    }
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// |<a|b>|^2, invariant under a global phase of either argument.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64, StateError> {
    Ok(inner(a, b)?.norm_sqr())
}

/// Re <v|H|v>. The imaginary part must vanish (within 1e-10) for a
/// Hermitian operator; a larger residue is reported as an error since it
/// signals a broken Hamiltonian rather than a numerical artifact.
pub fn energy_expectation(h: &Hamiltonian, v: &StateVector) -> Result<f64, StateError> {
    let hv = h.apply(v)?;
    let e = inner(v, &hv)?;
    if e.im.abs() > 1e-10 {
        return Err(StateError::NonRealExpectation(e.im));
    }
    Ok(e.re)
}

/// The single-site reduced density matrix, indexed [up, down].
pub fn single_site_density(
    v: &StateVector,
    site: SiteIndex,
) -> Result<[[Complex64; 2]; 2], StateError> {
    if site.get() > v.num_sites() {
        return Err(StateError::InvalidSite {
            site: site.get(),
            n_sites: v.num_sites(),
        });
    }
    let mask = 1usize << site.bit();
    let mut r00 = 0.0f64;
    let mut r11 = 0.0f64;
    let mut r01 = Complex64::zero();
    for b in 0..v.dimension() {
        if b & mask == 0 {
            let up = v.amplitudes[b];
            let down = v.amplitudes[b | mask];
            r00 += up.norm_sqr();
            r11 += down.norm_sqr();
            r01 += up * down.conj();
        }
    }
    Ok([
        [Complex64::new(r00, 0.0), r01],
        [r01.conj(), Complex64::new(r11, 0.0)],
    ])
}

/// Von Neumann entropy (base-2 logarithm) of one spin's reduced density
/// matrix: 0 for product states, 1 for a maximally mixed site.
///
/// Eigenvalues in [-1e-12, 0) are clipped to zero before taking the log.
pub fn single_site_entropy(v: &StateVector, site: SiteIndex) -> Result<f64, StateError> {
    let rho = single_site_density(v, site)?;
    let r00 = rho[0][0].re;
    let r11 = rho[1][1].re;
    let half_trace = 0.5 * (r00 + r11);
    let radius = (0.25 * (r00 - r11) * (r00 - r11) + rho[0][1].norm_sqr()).sqrt();
    let entropy = [half_trace + radius, half_trace - radius]
        .into_iter()
        .map(|p| {
            let p = if (-1e-12..0.0).contains(&p) { 0.0 } else { p };
            if p <= 0.0 {
                0.0
            } else {
                -p * p.log2()
            }
        })
        .sum();
    Ok(entropy)
}
