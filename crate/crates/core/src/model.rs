//! Lattice models: the anisotropic XY ring in a transverse field and the
//! two-dimensional Ising grid, plus the driver/problem split used by the
//! interpolating sweeps.
//!
//! Couplings are dimensionless (J = 1, hbar = 1). Following the usual
//! convention for this family of models the spin-spin couplings act along
//! z (and y) while the field acts along x.

use crate::error::ModelError;
use crate::pauli::{Hamiltonian, PauliTerm, SiteIndex, MAX_SITES};

/// Parameters of the periodic XY chain in a transverse field.
///
/// `H = -sum_i [ (1+gamma)/2 Z_i Z_{i+1} + (1-gamma)/2 Y_i Y_{i+1} ] - lambda sum_i X_i`
/// with site N+1 identified with site 1. `gamma = 1` is the Ising model,
/// `gamma = 0` the XX model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XyParams {
    pub n_sites: usize,
    pub gamma: f64,
    pub lambda: f64,
}

impl XyParams {
    pub fn new(n_sites: usize, gamma: f64, lambda: f64) -> Self {
        XyParams {
            n_sites,
            gamma,
            lambda,
        }
    }

    fn validate(&self) -> Result<(), ModelError> {
        // A periodic 2-ring would traverse the single bond twice.
        if self.n_sites < 3 {
            return Err(ModelError::ChainTooShort(self.n_sites));
        }
        if self.n_sites > MAX_SITES {
            return Err(ModelError::TooManySites {
                requested: self.n_sites,
                max: MAX_SITES,
            });
        }
        if !self.gamma.is_finite() || !self.lambda.is_finite() {
            return Err(ModelError::NonFiniteCoefficient);
        }
        Ok(())
    }
}

/// Parameters of the open-boundary 2D Ising grid in a transverse field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridParams {
    pub rows: usize,
    pub cols: usize,
    pub lambda: f64,
}

impl GridParams {
    pub fn new(rows: usize, cols: usize, lambda: f64) -> Self {
        GridParams { rows, cols, lambda }
    }

    pub fn n_sites(&self) -> usize {
        self.rows * self.cols
    }

    fn validate(&self) -> Result<(), ModelError> {
        if self.rows < 2 || self.cols < 2 {
            return Err(ModelError::GridTooSmall {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.n_sites() > MAX_SITES {
            return Err(ModelError::TooManySites {
                requested: self.n_sites(),
                max: MAX_SITES,
            });
        }
        if !self.lambda.is_finite() {
            return Err(ModelError::NonFiniteCoefficient);
        }
        Ok(())
    }
}

/// Either in-scope lattice model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    Xy(XyParams),
    Grid(GridParams),
}

impl ModelParams {
    pub fn n_sites(&self) -> usize {
        match self {
            ModelParams::Xy(p) => p.n_sites,
            ModelParams::Grid(p) => p.n_sites(),
        }
    }

    pub fn lambda(&self) -> f64 {
        match self {
            ModelParams::Xy(p) => p.lambda,
            ModelParams::Grid(p) => p.lambda,
        }
    }

    /// The same model with the field replaced.
    pub fn with_lambda(&self, lambda: f64) -> Self {
        match *self {
            ModelParams::Xy(p) => ModelParams::Xy(XyParams { lambda, ..p }),
            ModelParams::Grid(p) => ModelParams::Grid(GridParams { lambda, ..p }),
        }
    }

    pub fn build(&self) -> Result<Hamiltonian, ModelError> {
        match self {
            ModelParams::Xy(p) => build_xy_chain(p),
            ModelParams::Grid(p) => build_ising_grid(p),
        }
    }
}

/// Build the periodic XY chain Hamiltonian.
///
/// Zero-coefficient terms are dropped: `gamma = 1` produces no YY terms and
/// `lambda = 0` no field terms.
pub fn build_xy_chain(params: &XyParams) -> Result<Hamiltonian, ModelError> {
    params.validate()?;
    let n = params.n_sites;
    let zz_coeff = -(1.0 + params.gamma) / 2.0;
    let yy_coeff = -(1.0 - params.gamma) / 2.0;
    let mut terms = Vec::with_capacity(3 * n);
    if zz_coeff != 0.0 {
        for i in 1..=n {
            let j = i % n + 1;
            terms.push(PauliTerm::zz(
                SiteIndex::linear(i)?,
                SiteIndex::linear(j)?,
                zz_coeff,
            )?);
        }
    }
    if yy_coeff != 0.0 {
        for i in 1..=n {
            let j = i % n + 1;
            terms.push(PauliTerm::yy(
                SiteIndex::linear(i)?,
                SiteIndex::linear(j)?,
                yy_coeff,
            )?);
        }
    }
    if params.lambda != 0.0 {
        for i in 1..=n {
            terms.push(PauliTerm::x(SiteIndex::linear(i)?, -params.lambda)?);
        }
    }
    Hamiltonian::new(n, terms)
}

/// Build the open-boundary 2D Ising grid Hamiltonian, flattened row-major
/// onto a chain (which turns it into a 1D Ising model with long-range
/// couplings).
pub fn build_ising_grid(params: &GridParams) -> Result<Hamiltonian, ModelError> {
    params.validate()?;
    let (rows, cols) = (params.rows, params.cols);
    let n = params.n_sites();
    let mut terms = Vec::with_capacity(2 * n + n);
    for r in 1..=rows {
        for c in 1..=cols {
            let here = SiteIndex::from_grid(r, c, rows, cols)?;
            if c < cols {
                let right = SiteIndex::from_grid(r, c + 1, rows, cols)?;
                terms.push(PauliTerm::zz(here, right, -1.0)?);
            }
            if r < rows {
                let below = SiteIndex::from_grid(r + 1, c, rows, cols)?;
                terms.push(PauliTerm::zz(here, below, -1.0)?);
            }
        }
    }
    if params.lambda != 0.0 {
        for k in 1..=n {
            terms.push(PauliTerm::x(SiteIndex::linear(k)?, -params.lambda)?);
        }
    }
    Hamiltonian::new(n, terms)
}

/// Split a model into the driver `H0 = -sum_i X_i` and the problem
/// Hamiltonian `HP` (the model with its field term removed), so that
/// `lambda * H0 + HP` reproduces the full model at field `lambda`.
pub fn split_driver_problem(model: &ModelParams) -> Result<(Hamiltonian, Hamiltonian), ModelError> {
    let hp = model.with_lambda(0.0).build()?;
    let n = model.n_sites();
    let mut driver_terms = Vec::with_capacity(n);
    for i in 1..=n {
        driver_terms.push(PauliTerm::x(SiteIndex::linear(i)?, -1.0)?);
    }
    let h0 = Hamiltonian::new(n, driver_terms)?;
    Ok((h0, hp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Axis;

    #[test]
    fn ising_ring_n3_terms_and_spectrum() {
        // gamma=1, lambda=0: three ZZ bonds, diagonal matrix.
        let h = build_xy_chain(&XyParams::new(3, 1.0, 0.0)).unwrap();
        assert_eq!(h.num_terms(), 3);
        let m = h.to_dense().unwrap();
        // enumerate all 8 classical configurations: E = -(s1 s2 + s2 s3 + s3 s1)
        let mut diag: Vec<f64> = (0..8).map(|b| m[(b, b)]).collect();
        for b in 0..8usize {
            let s = |i: usize| if b >> i & 1 == 0 { 1.0 } else { -1.0 };
            let expect = -(s(0) * s(1) + s(1) * s(2) + s(2) * s(0));
            assert_eq!(m[(b, b)], expect);
        }
        diag.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(diag[0], -3.0);
        assert_eq!(diag[1], -3.0);
        assert!(diag[2..].iter().all(|&e| e == 1.0));
    }

    #[test]
    fn xx_ring_n3_has_six_half_coefficient_terms() {
        let h = build_xy_chain(&XyParams::new(3, 0.0, 0.0)).unwrap();
        assert_eq!(h.num_terms(), 6);
        for t in h.terms() {
            assert_eq!(t.coefficient(), -0.5);
        }
    }

    #[test]
    fn ising_reduction_drops_yy() {
        let h = build_xy_chain(&XyParams::new(6, 1.0, 0.4)).unwrap();
        assert!(h
            .terms()
            .iter()
            .all(|t| t.axes().iter().all(|&(_, a)| a != Axis::Y)));
    }

    #[test]
    fn chain_rejects_degenerate_ring() {
        assert_eq!(
            build_xy_chain(&XyParams::new(2, 0.5, 1.0)).unwrap_err(),
            ModelError::ChainTooShort(2)
        );
        assert!(build_xy_chain(&XyParams::new(4, f64::INFINITY, 1.0)).is_err());
        assert!(build_xy_chain(&XyParams::new(4, 0.5, f64::NAN)).is_err());
    }

    #[test]
    fn grid_term_counts() {
        let h = build_ising_grid(&GridParams::new(3, 3, 0.0)).unwrap();
        assert_eq!(h.num_terms(), 12);
        let h = build_ising_grid(&GridParams::new(3, 3, 2.0)).unwrap();
        assert_eq!(h.num_terms(), 21);
        // rows*(cols-1) + cols*(rows-1) bonds in general
        let h = build_ising_grid(&GridParams::new(2, 4, 0.0)).unwrap();
        assert_eq!(h.num_terms(), 2 * 3 + 4 * 1);
    }

    #[test]
    fn grid_ground_energy_by_enumeration() {
        for (rows, cols, bonds) in [(3usize, 3usize, 12.0f64), (2, 2, 4.0)] {
            let h = build_ising_grid(&GridParams::new(rows, cols, 0.0)).unwrap();
            let m = h.to_dense().unwrap();
            let mut diag: Vec<f64> = (0..h.dimension()).map(|b| m[(b, b)]).collect();
            diag.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert_eq!(diag[0], -bonds);
            assert_eq!(diag[1], -bonds);
            assert!(diag[2] > -bonds);
        }
    }

    #[test]
    fn grid_rejects_bad_shapes() {
        assert!(build_ising_grid(&GridParams::new(1, 5, 0.0)).is_err());
        assert!(build_ising_grid(&GridParams::new(5, 5, 0.0)).is_err()); // 25 > MAX_SITES
    }

    #[test]
    fn split_counts() {
        let (h0, hp) =
            split_driver_problem(&ModelParams::Xy(XyParams::new(3, 1.0, 0.7))).unwrap();
        assert_eq!(h0.num_terms(), 3);
        assert_eq!(hp.num_terms(), 3);
        let (h0, hp) =
            split_driver_problem(&ModelParams::Grid(GridParams::new(3, 3, 1.0))).unwrap();
        assert_eq!(h0.num_terms(), 9);
        assert_eq!(hp.num_terms(), 12);
    }

    #[test]
    fn split_recombines_exactly() {
        // dense(lambda*h0 + hp) must equal dense(build(lambda)) to 0 ulp
        for &lambda in &[0.0, 0.3, 1.0, 1.7] {
            let params = XyParams::new(5, 0.62, lambda);
            let full = build_xy_chain(&params).unwrap().to_dense().unwrap();
            let (h0, hp) =
                split_driver_problem(&ModelParams::Xy(params)).unwrap();
            let combined = Hamiltonian::linear_combination(lambda, &h0, 1.0, &hp)
                .unwrap()
                .to_dense()
                .unwrap();
            assert_eq!(full, combined);
        }
    }
}
