use crate::error::{Error, Result};
use crate::gf::{Automorphism, Elem, Field};

use super::matrix::Matrix;
use super::subspace::{Subspace, Vector, MAX_DIM};

fn check_invertible(matrix: &Matrix, f: &Field) -> Result<()> {
    if !matrix.is_square() || matrix.rows() > MAX_DIM {
        return Err(Error::Dimension(format!("{}x{} map matrix", matrix.rows(), matrix.cols())));
    }
    matrix.inverse(f).map(|_| ())
}

fn twisted_row_product(v: &Vector, sigma: &Automorphism, matrix: &Matrix, f: &Field) -> Vector {
    let n = matrix.rows();
    let mut out = [Elem::ZERO; MAX_DIM];
    for k in 0..n {
        let a = sigma.apply(v[k]);
        if a.is_zero() {
            continue;
        }
        for (c, o) in out.iter_mut().enumerate().take(n) {
            *o = f.add(*o, f.mul(a, matrix[(k, c)]));
        }
    }
    out
}

/// A semilinear bijection `v ↦ σ(v)·M` of `F^n` (σ entrywise, then the
/// matrix acting on row vectors from the right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    matrix: Matrix,
    sigma: Automorphism,
}

impl SemilinearMap {
    pub fn new(matrix: Matrix, sigma: Automorphism, f: &Field) -> Result<SemilinearMap> {
        check_invertible(&matrix, f)?;
        Ok(SemilinearMap { matrix, sigma })
    }

    pub fn linear(matrix: Matrix, f: &Field) -> Result<SemilinearMap> {
        SemilinearMap::new(matrix, f.identity_automorphism(), f)
    }

    pub fn identity(n: usize, f: &Field) -> SemilinearMap {
        SemilinearMap { matrix: Matrix::identity(n), sigma: f.identity_automorphism() }
    }

    /// Entrywise application of a field automorphism.
    pub fn field_automorphism(n: usize, sigma: Automorphism) -> SemilinearMap {
        SemilinearMap { matrix: Matrix::identity(n), sigma }
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn sigma(&self) -> &Automorphism {
        &self.sigma
    }

    pub fn apply_vector(&self, v: &Vector, f: &Field) -> Vector {
        twisted_row_product(v, &self.sigma, &self.matrix, f)
    }

    pub fn apply(&self, u: &Subspace, f: &Field) -> Result<Subspace> {
        if u.n() != self.n() {
            return Err(Error::Dimension(format!("map on F^{} applied to a subspace of F^{}", self.n(), u.n())));
        }
        Ok(self.image(u, f))
    }

    /// Unchecked [`SemilinearMap::apply`].
    pub fn image(&self, u: &Subspace, f: &Field) -> Subspace {
        Subspace::from_vectors(self.n(), u.basis().iter().map(|v| self.apply_vector(v, f)), f)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SemilinearMap, f: &Field) -> Result<SemilinearMap> {
        let matrix = self.matrix.map_entries(&next.sigma).mul(&next.matrix, f)?;
        Ok(SemilinearMap { matrix, sigma: next.sigma.compose(&self.sigma, f) })
    }

    pub fn inverse(&self, f: &Field) -> SemilinearMap {
        let sigma_inv = self.sigma.inverse(f);
        let matrix = self.matrix.inverse(f).expect("invertible by construction").map_entries(&sigma_inv);
        SemilinearMap { matrix, sigma: sigma_inv }
    }
}

/// A correlation of `PG(n-1, q)`: `U ↦ {w : σ(u)·M·wᵀ = 0 for all u ∈ U}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correlation {
    matrix: Matrix,
    sigma: Automorphism,
}

impl Correlation {
    pub fn new(matrix: Matrix, sigma: Automorphism, f: &Field) -> Result<Correlation> {
        check_invertible(&matrix, f)?;
        Ok(Correlation { matrix, sigma })
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, u: &Subspace, f: &Field) -> Result<Subspace> {
        if u.n() != self.n() {
            return Err(Error::Dimension(format!(
                "correlation on F^{} applied to a subspace of F^{}",
                self.n(),
                u.n()
            )));
        }
        let rows = u.basis().iter().map(|v| twisted_row_product(v, &self.sigma, &self.matrix, f));
        Ok(Subspace::from_vectors(self.n(), rows, f).annihilator(f))
    }
}
