//! Error types for the simulator crate.

use thiserror::Error;

/// Errors from Hamiltonian construction and application.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("site index must be >= 1")]
    ZeroSite,
    #[error("grid coordinate ({row}, {col}) outside a {rows}x{cols} lattice")]
    SiteOutsideGrid {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("Pauli term must act on 1 or 2 sites, got {0}")]
    BadTermLength(usize),
    #[error("Pauli term repeats site {0}")]
    RepeatedSite(usize),
    #[error("coefficient is not finite")]
    NonFiniteCoefficient,
    #[error("term references site {site} but the lattice has {n_sites} sites")]
    SiteOutOfRange { site: usize, n_sites: usize },
    #[error("term has an odd number of Y factors; matrix elements would be imaginary")]
    ImaginaryTerm,
    #[error("periodic chain needs at least 3 sites, got {0}")]
    ChainTooShort(usize),
    #[error("grid needs at least 2 rows and 2 columns, got {rows}x{cols}")]
    GridTooSmall { rows: usize, cols: usize },
    #[error("{requested} sites exceeds the configured maximum of {max}")]
    TooManySites { requested: usize, max: usize },
    #[error("dimension mismatch: operator is {expected}, vector is {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dense assembly of {n_sites} sites exceeds the cap of {cap} sites")]
    DenseCapExceeded { n_sites: usize, cap: usize },
    #[error("cannot combine Hamiltonians on {0} and {1} sites")]
    IncompatibleLattices(usize, usize),
}

/// Errors from state construction and observables.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("{requested} sites exceeds the configured maximum of {max}")]
    TooManySites { requested: usize, max: usize },
    #[error("amplitude vector has length {got}, expected {expected}")]
    WrongDimension { expected: usize, got: usize },
    #[error("dimension mismatch between states ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("site {site} outside lattice of {n_sites} sites")]
    InvalidSite { site: usize, n_sites: usize },
    #[error("state is not normalized: |norm^2 - 1| = {0:.3e}")]
    NotNormalized(f64),
    #[error("expectation value has imaginary part {0:.3e}; Hamiltonian is not Hermitian")]
    NonRealExpectation(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Errors from schedule evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScheduleError {
    #[error("dimensionless time s = {0} outside [0, 1]")]
    OutOfRange(f64),
}

/// Errors from eigenvalue computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("requested {k} eigenvalues of a dimension-{dim} operator")]
    TooManyEigenvalues { k: usize, dim: usize },
    #[error("k must be at least 1")]
    ZeroEigenvalues,
    #[error("eigensolver did not converge: locked {locked} of {needed} pairs after {cycles} restart cycles")]
    NoConvergence {
        locked: usize,
        needed: usize,
        cycles: usize,
    },
    #[error("gap extraction needs at least 3 eigenvalues, slice has {0}")]
    NotEnoughLevels(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Errors from time evolution.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvolutionError {
    #[error("total_time must be positive and finite, got {0}")]
    BadTotalTime(f64),
    #[error("num_steps must be at least 1")]
    ZeroSteps,
    #[error("sample_count must be at least 2")]
    TooFewSamples,
    #[error("initial state is not normalized: |norm^2 - 1| = {0:.3e}")]
    NotNormalized(f64),
    #[error(
        "norm drift {drift:.3e} exceeded 1e-4 at s = {s}; \
         increase num_steps (current {num_steps}, effective step {step:.3e})"
    )]
    NormDrift {
        s: f64,
        drift: f64,
        num_steps: usize,
        step: f64,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
