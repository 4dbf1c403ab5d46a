//! Matrix-free simulation of finite spin-1/2 lattices undergoing slow
//! parameter sweeps.
//!
//! The crate builds transverse-field XY rings and 2D Ising grids as
//! Pauli-string Hamiltonians, computes their low-lying spectra with a
//! restarted Lanczos solver, and integrates the time-dependent
//! Schrödinger equation along linear, square, and round-trip
//! interpolation schedules between a driver and a problem Hamiltonian.
//! Observables along the sweep — energy gaps, fidelities against the
//! paramagnetic and cat states, single-site entanglement entropy — are the
//! standard diagnostics of the quantum phase transition these models cross
//! at unit field.
//!
//! ```
//! use spinsweep_core::{
//!     build_xy_chain, lowest_eigenvalues, make_ghz, make_paramagnetic,
//!     fidelity, XyParams,
//! };
//!
//! let h = build_xy_chain(&XyParams::new(8, 1.0, 2.0))?;
//! let levels = lowest_eigenvalues(&h, 3)?;
//! assert!(levels[1] - levels[0] > 1.0); // paramagnetic phase is gapped
//!
//! let overlap = fidelity(&make_ghz(8)?, &make_paramagnetic(8)?)?;
//! assert!((overlap - 2f64.powi(-7)).abs() < 1e-12);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod error;
pub mod evolution;
mod expm;
mod lanczos;
pub mod model;
pub mod pauli;
pub mod schedule;
pub mod spectral;
pub mod state;

pub use error::{EvolutionError, ModelError, ScheduleError, SpectralError, StateError};
pub use evolution::{
    default_num_steps, evolve, evolve_roundtrip, EvolutionParams, EvolutionTrace, TraceSample,
};
pub use lanczos::LanczosOpts;
pub use model::{
    build_ising_grid, build_xy_chain, split_driver_problem, GridParams, ModelParams, XyParams,
};
pub use pauli::{Axis, Hamiltonian, PauliTerm, SiteIndex, DEFAULT_DENSE_CAP, MAX_SITES};
pub use schedule::{Schedule, ScheduleKind};
pub use spectral::{
    dense_spectrum, gaps, lowest_eigenpairs, lowest_eigenvalues, lowest_eigenvalues_with,
    SlicePoint, SpectrumSlice,
};
pub use state::{
    energy_expectation, fidelity, inner, make_ferromagnet, make_ghz, make_paramagnetic,
    single_site_density, single_site_entropy, SpinDirection, StateVector,
};
