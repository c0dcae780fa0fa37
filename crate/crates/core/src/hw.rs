//! Heisenberg-Weyl shift and clock operators, displacements, and the parity
//! operator that seeds odd-prime phase-point bases.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator, C64, ONE};

/// Shift `X|q> = |q+1 mod d>` and clock `Z = diag(1, w, ..., w^(d-1))`,
/// `w = exp(2 pi i / d)`.
#[derive(Clone, Debug)]
pub struct WeylPair {
    dim: usize,
    x: ComplexMatrix,
    z: ComplexMatrix,
}

impl WeylPair {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x
    }

    pub fn z(&self) -> &ComplexMatrix {
        &self.z
    }

    /// `exp(2 pi i / d)`.
    pub fn omega(&self) -> C64 {
        root_of_unity(self.dim, 1)
    }

    /// `X^j Z^k`; indices are taken mod `d`. No extra phase is attached since
    /// displacements are only ever used by conjugation.
    pub fn displacement(&self, j: i64, k: i64) -> ComplexMatrix {
        let d = self.dim as i64;
        let (j, k) = (j.rem_euclid(d) as usize, k.rem_euclid(d) as usize);
        // X^j Z^k |q> = w^(kq) |q + j>
        let mut m = ComplexMatrix::zeros(self.dim);
        for q in 0..self.dim {
            m[((q + j) % self.dim, q)] = root_of_unity(self.dim, (k * q) % self.dim);
        }
        m
    }

    /// All `d^2` displacements in `(j, k)` lexicographic order.
    pub fn displacements(&self) -> Vec<((usize, usize), ComplexMatrix)> {
        let d = self.dim;
        (0..d)
            .flat_map(|j| (0..d).map(move |k| (j, k)))
            .map(|(j, k)| ((j, k), self.displacement(j as i64, k as i64)))
            .collect()
    }
}

fn root_of_unity(d: usize, power: usize) -> C64 {
    if power == 0 {
        return ONE;
    }
    C64::from_polar(1.0, 2.0 * PI * power as f64 / d as f64)
}

pub fn weyl_pair(dim: usize) -> Result<WeylPair> {
    if dim < 2 {
        return Err(Error::InvalidDimension {
            dim,
            reason: "Heisenberg-Weyl pair needs d >= 2".into(),
        });
    }
    let x = ComplexMatrix::from_fn(dim, |i, j| {
        if i == (j + 1) % dim {
            ONE
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let z = ComplexMatrix::from_fn(dim, |i, j| {
        if i == j {
            root_of_unity(dim, i)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    Ok(WeylPair { dim, x, z })
}

/// `X^j Z^k` for the given pair.
pub fn displacement(j: i64, k: i64, pair: &WeylPair) -> ComplexMatrix {
    pair.displacement(j, k)
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Prime factors in nondecreasing order, repeated primes kept separate.
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
        if p * p > n && n > 1 {
            out.push(n);
            break;
        }
    }
    out
}

/// Parity `|q> -> |-q mod p>` for an odd prime `p`.
pub fn parity(dim: usize) -> Result<HermitianOperator> {
    if dim.is_multiple_of(2) || !is_prime(dim) {
        return Err(Error::InvalidDimension {
            dim,
            reason: "parity phase-point operator needs an odd prime".into(),
        });
    }
    let m = ComplexMatrix::from_fn(dim, |i, j| {
        if i == (dim - j) % dim {
            ONE
        } else {
            C64::new(0.0, 0.0)
        }
    });
    HermitianOperator::new(m)
}

/// Tensor products of the displacements of each prime factor of `dim`, in
/// mixed-radix order with the first factor most significant. For prime `dim`
/// these are the ordinary displacements.
pub fn factor_displacements(dim: usize) -> Result<Vec<ComplexMatrix>> {
    if dim < 2 {
        return Err(Error::InvalidDimension {
            dim,
            reason: "displacements need d >= 2".into(),
        });
    }
    let mut acc = vec![ComplexMatrix::identity(1)];
    for p in prime_factors(dim) {
        let factor: Vec<ComplexMatrix> = weyl_pair(p)?
            .displacements()
            .into_iter()
            .map(|(_, m)| m)
            .collect();
        acc = acc
            .iter()
            .flat_map(|a| factor.iter().map(move |b| a.kron(b)))
            .collect();
    }
    Ok(acc)
}
