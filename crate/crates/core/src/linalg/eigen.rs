//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use super::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};
use crate::tol;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted nonincreasing with column-aligned eigenvectors.
#[derive(Clone, Debug)]
pub struct Spectrum {
    values: Vec<f64>,
    basis: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Eigenvalues in nonincreasing order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvalues in nondecreasing order.
    pub fn ascending(&self) -> Vec<f64> {
        self.values.iter().rev().copied().collect()
    }

    /// Unitary whose `r`-th column is the eigenvector of `values()[r]`.
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn eigenvector(&self, r: usize) -> Vec<C64> {
        self.basis.column(r)
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Trace norm `sum_r |lambda_r|`.
    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|x| x.abs()).sum()
    }

    /// Eigenvector of the smallest eigenvalue. Within a degenerate cluster
    /// (values within `tol::SUPPORT` of the minimum) the one with the smallest
    /// sort index is returned.
    pub fn min_eigenvector(&self) -> Vec<C64> {
        let min = self.min();
        let r = self
            .values
            .iter()
            .position(|&v| v - min <= tol::SUPPORT)
            .unwrap_or(self.dim() - 1);
        self.eigenvector(r)
    }

    /// Eigenvector of the largest eigenvalue (first in sort order).
    pub fn max_eigenvector(&self) -> Vec<C64> {
        self.eigenvector(0)
    }

    /// `sum_r lambda_r |v_r><v_r|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let b = &self.basis;
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|r| b[(i, r)] * b[(j, r)].conj() * self.values[r])
                .sum()
        })
    }

    /// Applies `f` to each eigenvalue: `sum_r f(lambda_r) |v_r><v_r|`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped = Spectrum {
            values: self.values.iter().map(|&x| f(x)).collect(),
            basis: self.basis.clone(),
        };
        mapped.reconstruct()
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Fails if the input deviates from Hermiticity by more than
/// [`tol::HERMITICITY`] (relative to its largest entry when that exceeds 1).
pub fn herm_eig(h: &ComplexMatrix) -> Result<Spectrum> {
    let deviation = h.hermiticity_deviation();
    if deviation > tol::HERMITICITY * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(jacobi(h.hermitian_part()))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

pub(crate) fn jacobi(mut a: ComplexMatrix) -> Spectrum {
    let n = a.dim();
    let mut v = ComplexMatrix::identity(n);
    let target = tol::JACOBI_OFF_DIAGONAL * a.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag < f64::MIN_POSITIVE {
                    continue;
                }
                // Phase the (p,q) entry real, then apply the real rotation.
                let phase = (apq / mag).conj();
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let jpp = C64::new(c, 0.0);
                let jpq = C64::new(s, 0.0);
                let jqp = phase * (-s);
                let jqq = phase * c;

                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;

                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    let raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal eigenvalues keep their Jacobi order
    order.sort_by(|&i, &j| raw[j].total_cmp(&raw[i]));
    let values = order.iter().map(|&i| raw[i]).collect();
    let basis = ComplexMatrix::from_fn(n, |i, r| v[(i, order[r])]);
    Spectrum { values, basis }
}
