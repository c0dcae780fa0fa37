use super::{herm_eig, ComplexMatrix, Spectrum, C64};
use crate::error::{Error, Result};

/// Hermitian matrix with its spectrum computed once at construction.
#[derive(Clone, Debug)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
    spectrum: Spectrum,
}

impl HermitianOperator {
    /// Validates Hermiticity, symmetrizes away roundoff, and diagonalizes.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let spectrum = herm_eig(&matrix)?;
        Ok(Self {
            matrix: matrix.hermitian_part(),
            spectrum,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(ComplexMatrix::identity(dim)).expect("identity is Hermitian")
    }

    /// Rank-one projector onto `v` (normalized first).
    pub fn projector(v: &[C64]) -> Self {
        let norm = super::vector_norm(v);
        let unit: Vec<C64> = v.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&unit)).expect("projector is Hermitian")
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `U H U^dagger`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(self.matrix.conjugate_by(u))
    }

    /// `a * self + b * 1`.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        Self::new(self.matrix.scale_real(a).shift(b)).expect("affine map keeps Hermiticity")
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

/// `tr(AB)` for Hermitian `A`, `B` (real).
pub fn hs_inner(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.matrix.trace_product(&b.matrix).re)
}
