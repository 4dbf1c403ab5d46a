//! Pauli-string Hamiltonians with a matrix-free application kernel.
//!
//! A [`Hamiltonian`] is an immutable list of weighted Pauli strings over an
//! N-site spin-1/2 lattice. Terms are restricted to one- and two-site
//! strings whose matrix elements are real (σy appears only in pairs), so
//! every Hamiltonian here is a real symmetric matrix in the computational
//! basis. The operator is applied to state vectors term by term with bit
//! operations; the full 2^N x 2^N matrix is materialized only on request.
//!
//! Basis convention: the basis index `b` runs over `0..2^N`. Bit `i-1` of
//! `b` is 0 when site `i` points up (σz = +1) and 1 when it points down.
//! Site 1 is the least significant bit.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use crate::error::ModelError;
use crate::state::StateVector;

/// Hard cap on lattice sizes accepted by builders and state constructors.
pub const MAX_SITES: usize = 20;

/// Default cap for dense assembly (2^14 squared doubles is ~2 GB).
pub const DEFAULT_DENSE_CAP: usize = 14;

/// A 1-based lattice site label.
///
/// Two-dimensional (row, col) coordinates map onto the linear label
/// `k = (row-1)*cols + (col-1) + 1`, which realizes the usual row-major
/// flattening of a grid onto a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SiteIndex(usize);

impl SiteIndex {
    /// Label a site directly by its 1-based linear index.
    pub fn linear(value: usize) -> Result<Self, ModelError> {
        if value == 0 {
            return Err(ModelError::ZeroSite);
        }
        Ok(SiteIndex(value))
    }

    /// Label a site on a `rows` x `cols` grid by 1-based coordinates.
    pub fn from_grid(
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    ) -> Result<Self, ModelError> {
        if row == 0 || col == 0 || row > rows || col > cols {
            return Err(ModelError::SiteOutsideGrid {
                row,
                col,
                rows,
                cols,
            });
        }
        Ok(SiteIndex((row - 1) * cols + (col - 1) + 1))
    }

    /// The 1-based linear index.
    pub fn get(self) -> usize {
        self.0
    }

    /// The 0-based bit position in the basis index.
    pub fn bit(self) -> usize {
        self.0 - 1
    }
}

impl std::fmt::Display for SiteIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Single-site Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// One weighted Pauli string: `coefficient * P_{site_1} ... P_{site_m}`.
///
/// Coefficients are real; within the scope of this crate a term acts on one
/// or two distinct sites (Zeeman term or two-site coupling).
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    coefficient: f64,
    axes: Vec<(SiteIndex, Axis)>,
}

impl PauliTerm {
    pub fn new(coefficient: f64, axes: Vec<(SiteIndex, Axis)>) -> Result<Self, ModelError> {
        if !coefficient.is_finite() {
            return Err(ModelError::NonFiniteCoefficient);
        }
        if axes.is_empty() || axes.len() > 2 {
            return Err(ModelError::BadTermLength(axes.len()));
        }
        if axes.len() == 2 && axes[0].0 == axes[1].0 {
            return Err(ModelError::RepeatedSite(axes[0].0.get()));
        }
        Ok(PauliTerm { coefficient, axes })
    }

    /// `coefficient * X_site`
    pub fn x(site: SiteIndex, coefficient: f64) -> Result<Self, ModelError> {
        Self::new(coefficient, vec![(site, Axis::X)])
    }

    /// `coefficient * Z_a Z_b`
    pub fn zz(a: SiteIndex, b: SiteIndex, coefficient: f64) -> Result<Self, ModelError> {
        Self::new(coefficient, vec![(a, Axis::Z), (b, Axis::Z)])
    }

    /// `coefficient * Y_a Y_b`
    pub fn yy(a: SiteIndex, b: SiteIndex, coefficient: f64) -> Result<Self, ModelError> {
        Self::new(coefficient, vec![(a, Axis::Y), (b, Axis::Y)])
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn axes(&self) -> &[(SiteIndex, Axis)] {
        &self.axes
    }

    fn scaled(&self, factor: f64) -> Self {
        PauliTerm {
            coefficient: factor * self.coefficient,
            axes: self.axes.clone(),
        }
    }
}

/// Precompiled action of one term on basis indices.
///
/// Every in-scope string reduces to `out[b] += c * (-1)^popcount(b & sign) * v[b ^ flip]`:
/// Z contributes its bit to `sign`, X its bit to `flip`, and Y both (a YY
/// pair additionally folds the factor i*i = -1 into `c`).
#[derive(Debug, Clone, Copy)]
struct CompiledTerm {
    coeff: f64,
    flip: usize,
    sign: usize,
}

/// Scalar types the matrix-free kernel can act on.
///
/// Eigensolvers run on `f64` vectors (the operator is real symmetric);
/// time evolution runs on `Complex64`.
pub trait Amplitude:
    Copy + Zero + std::ops::AddAssign + std::ops::Mul<f64, Output = Self>
{
}

impl Amplitude for f64 {}
impl Amplitude for Complex64 {}

/// An immutable sum of weighted Pauli strings on an N-site lattice.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    num_sites: usize,
    terms: Vec<PauliTerm>,
    compiled: Vec<CompiledTerm>,
}

impl Hamiltonian {
    /// Build from a term list, validating that every term fits the lattice
    /// and has real matrix elements.
    pub fn new(num_sites: usize, terms: Vec<PauliTerm>) -> Result<Self, ModelError> {
        if num_sites == 0 || num_sites > MAX_SITES {
            return Err(ModelError::TooManySites {
                requested: num_sites,
                max: MAX_SITES,
            });
        }
        let mut compiled = Vec::with_capacity(terms.len());
        for term in &terms {
            let mut flip = 0usize;
            let mut sign = 0usize;
            let mut y_count = 0usize;
            for &(site, axis) in &term.axes {
                if site.get() > num_sites {
                    return Err(ModelError::SiteOutOfRange {
                        site: site.get(),
                        n_sites: num_sites,
                    });
                }
                let mask = 1usize << site.bit();
                match axis {
                    Axis::X => flip |= mask,
                    Axis::Y => {
                        flip |= mask;
                        sign |= mask;
                        y_count += 1;
                    }
                    Axis::Z => sign |= mask,
                }
            }
            if y_count % 2 != 0 {
                return Err(ModelError::ImaginaryTerm);
            }
            // i^2 = -1 per Y pair
            let base = if y_count % 4 == 2 { -1.0 } else { 1.0 };
            compiled.push(CompiledTerm {
                coeff: base * term.coefficient,
                flip,
                sign,
            });
        }
        Ok(Hamiltonian {
            num_sites,
            terms,
            compiled,
        })
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    /// Hilbert-space dimension 2^N.
    pub fn dimension(&self) -> usize {
        1usize << self.num_sites
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Sum of |coefficients|, an upper bound on the spectral norm.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.abs()).sum()
    }

    /// `a * ha + b * hb` as a new term list; zero-coefficient terms are dropped.
    pub fn linear_combination(
        a: f64,
        ha: &Hamiltonian,
        b: f64,
        hb: &Hamiltonian,
    ) -> Result<Hamiltonian, ModelError> {
        if ha.num_sites != hb.num_sites {
            return Err(ModelError::IncompatibleLattices(ha.num_sites, hb.num_sites));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(ModelError::NonFiniteCoefficient);
        }
        let mut terms = Vec::with_capacity(ha.terms.len() + hb.terms.len());
        for t in &ha.terms {
            if a * t.coefficient != 0.0 {
                terms.push(t.scaled(a));
            }
        }
        for t in &hb.terms {
            if b * t.coefficient != 0.0 {
                terms.push(t.scaled(b));
            }
        }
        Hamiltonian::new(ha.num_sites, terms)
    }

    /// `out += coeff * H v`, computed term by term.
    ///
    /// For each amplitude the contributions accumulate in term-list order,
    /// so the result is bitwise deterministic for a fixed term list.
    pub fn accumulate_scaled<T: Amplitude>(&self, coeff: f64, v: &[T], out: &mut [T]) {
        debug_assert_eq!(v.len(), self.dimension());
        debug_assert_eq!(out.len(), self.dimension());
        for term in &self.compiled {
            let c = coeff * term.coeff;
            if term.flip == 0 {
                for (b, slot) in out.iter_mut().enumerate() {
                    let s = if (b & term.sign).count_ones() & 1 == 1 {
                        -c
                    } else {
                        c
                    };
                    *slot += v[b] * s;
                }
            } else {
                for (b, slot) in out.iter_mut().enumerate() {
                    let s = if (b & term.sign).count_ones() & 1 == 1 {
                        -c
                    } else {
                        c
                    };
                    *slot += v[b ^ term.flip] * s;
                }
            }
        }
    }

    /// `out = H v` on raw slices.
    pub fn apply_into<T: Amplitude>(&self, v: &[T], out: &mut [T]) {
        for slot in out.iter_mut() {
            *slot = T::zero();
        }
        self.accumulate_scaled(1.0, v, out);
    }

    /// `H v` on a state vector.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector, ModelError> {
        if v.dimension() != self.dimension() {
            return Err(ModelError::DimensionMismatch {
                expected: self.dimension(),
                got: v.dimension(),
            });
        }
        let mut out = vec![Complex64::zero(); self.dimension()];
        self.accumulate_scaled(1.0, v.amplitudes(), &mut out);
        Ok(StateVector::from_amplitudes_unchecked(self.num_sites, out))
    }

    /// Assemble the full real symmetric matrix, guarded by [`DEFAULT_DENSE_CAP`].
    pub fn to_dense(&self) -> Result<DMatrix<f64>, ModelError> {
        self.to_dense_with_cap(DEFAULT_DENSE_CAP)
    }

    /// Assemble the full matrix with an explicit site cap.
    pub fn to_dense_with_cap(&self, cap: usize) -> Result<DMatrix<f64>, ModelError> {
        if self.num_sites > cap {
            return Err(ModelError::DenseCapExceeded {
                n_sites: self.num_sites,
                cap,
            });
        }
        let dim = self.dimension();
        let mut m = DMatrix::<f64>::zeros(dim, dim);
        for term in &self.compiled {
            for row in 0..dim {
                let s = if (row & term.sign).count_ones() & 1 == 1 {
                    -term.coeff
                } else {
                    term.coeff
                };
                m[(row, row ^ term.flip)] += s;
            }
        }
        Ok(m)
    }
}
