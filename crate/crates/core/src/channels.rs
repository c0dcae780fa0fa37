//! Channels in Kraus form and their quasistochastic transfer matrices.
//!
//! In a frame `{Q_j}` a channel acts on quasiprobabilities through
//! `Lambda^Q_jk = tr[Q_j Lambda(Q_k)] / d`. Columns always sum to one; rows
//! sum to one exactly when the channel is unital.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::NqprFrame;
use crate::linalg::{ComplexMatrix, HermitianOperator, C64};
use crate::tol;

#[derive(Clone, Debug)]
pub struct Channel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct ChannelJson {
    dim: usize,
    kraus: Vec<Vec<[f64; 2]>>,
    label: String,
}

fn kraus_sum(kraus: &[ComplexMatrix], dagger_first: bool) -> ComplexMatrix {
    let d = kraus[0].dim();
    let mut acc = ComplexMatrix::zeros(d);
    for k in kraus {
        let term = if dagger_first {
            &k.adjoint() * k
        } else {
            k * &k.adjoint()
        };
        acc = &acc + &term;
    }
    acc
}

impl Channel {
    /// Validates `sum_i K_i^dagger K_i = 1` to [`tol::TRACE_PRESERVING`].
    pub fn new(kraus: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        let dim = kraus
            .first()
            .map(|k| k.dim())
            .ok_or_else(|| Error::InvalidChannel("no Kraus operators".into()))?;
        if let Some(bad) = kraus.iter().find(|k| k.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        let ch = Self {
            dim,
            kraus,
            label: label.into(),
        };
        let dev = ch.trace_preserving_deviation();
        if dev > tol::TRACE_PRESERVING {
            return Err(Error::InvalidChannel(format!(
                "sum K^dagger K deviates from identity by {dev:.3e}"
            )));
        }
        Ok(ch)
    }

    pub fn identity(d: usize) -> Self {
        Self::new(vec![ComplexMatrix::identity(d)], "identity").expect("identity is a channel")
    }

    /// Conjugation by a unitary.
    pub fn unitary(u: &ComplexMatrix) -> Result<Self> {
        let deviation = u.unitarity_deviation();
        if deviation > tol::UNITARY {
            return Err(Error::NotUnitary { deviation });
        }
        Self::new(vec![u.clone()], "unitary")
    }

    /// `X -> tr(X) 1 / d`, with Kraus operators `|a><b| / sqrt(d)`.
    pub fn completely_depolarizing(d: usize) -> Self {
        let s = 1.0 / (d as f64).sqrt();
        let kraus = (0..d * d)
            .map(|ab| {
                let mut k = ComplexMatrix::zeros(d);
                k[(ab / d, ab % d)] = C64::new(s, 0.0);
                k
            })
            .collect();
        Self::new(kraus, "depolarizing").expect("depolarizing is a channel")
    }

    /// Qubit amplitude damping with decay probability `gamma`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        let k0 = ComplexMatrix::diagonal(&[1.0, (1.0 - gamma).sqrt()]);
        let k1 = ComplexMatrix::from_real(2, &[0.0, gamma.sqrt(), 0.0, 0.0]);
        Self::new(vec![k0, k1], format!("amplitude-damping({gamma})"))
    }

    /// `rho -> sum_i p_i U_i rho U_i^dagger`.
    pub fn mixture_of_unitaries(weights: &[f64], unitaries: &[ComplexMatrix]) -> Result<Self> {
        let kraus = weights
            .iter()
            .zip(unitaries)
            .map(|(&p, u)| u.scale_real(p.sqrt()))
            .collect();
        Self::new(kraus, "unitary-mixture")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn trace_preserving_deviation(&self) -> f64 {
        kraus_sum(&self.kraus, true).max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// Largest entry of `|sum_i K_i K_i^dagger - 1|`.
    pub fn unital_deviation(&self) -> f64 {
        kraus_sum(&self.kraus, false).max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// `sum_i K_i X K_i^dagger` on a bare matrix.
    pub fn apply_matrix(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim);
        for k in &self.kraus {
            acc = &acc + &x.conjugate_by(k);
        }
        acc
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ChannelJson {
            dim: self.dim,
            kraus: self
                .kraus
                .iter()
                .map(|k| k.entries().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            label: self.label.clone(),
        })
        .expect("channel serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: ChannelJson = serde_json::from_str(text)?;
        let kraus = j
            .kraus
            .into_iter()
            .map(|entries| {
                let m = ComplexMatrix::from_row_major(
                    entries
                        .into_iter()
                        .map(|[re, im]| C64::new(re, im))
                        .collect(),
                )?;
                if m.dim() != j.dim {
                    return Err(Error::DimensionMismatch {
                        expected: j.dim,
                        found: m.dim(),
                    });
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(kraus, j.label)
    }
}

/// `Lambda(X)` for Hermitian `X`.
pub fn apply(ch: &Channel, x: &HermitianOperator) -> Result<HermitianOperator> {
    if x.dim() != ch.dim {
        return Err(Error::DimensionMismatch {
            expected: ch.dim,
            found: x.dim(),
        });
    }
    HermitianOperator::new(ch.apply_matrix(x.matrix()))
}

pub fn is_unital(ch: &Channel) -> bool {
    ch.unital_deviation() <= tol::TRACE_PRESERVING
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransferKind {
    Unitary,
    Channel,
}

/// Real `d^2 x d^2` matrix representing a unitary or channel in a frame.
#[derive(Clone, Debug)]
pub struct TransferMatrix {
    size: usize,
    entries: Vec<f64>,
    kind: TransferKind,
    frame: String,
}

impl TransferMatrix {
    pub fn from_entries(
        size: usize,
        entries: Vec<f64>,
        kind: TransferKind,
        frame: impl Into<String>,
    ) -> Self {
        assert_eq!(entries.len(), size * size);
        Self {
            size,
            entries,
            kind,
            frame: frame.into(),
        }
    }

    /// `M_jk = tr(Q_j image(Q_k)) / d` for an arbitrary linear map `image`.
    pub(crate) fn from_images(f: &NqprFrame, images: &[ComplexMatrix], kind: TransferKind) -> Self {
        let n = f.len();
        let d = f.dim() as f64;
        let mut entries = vec![0.0; n * n];
        for (k, img) in images.iter().enumerate() {
            for (j, q) in f.elements().iter().enumerate() {
                entries[j * n + k] = q.matrix().trace_product(img).re / d;
            }
        }
        Self::from_entries(n, entries, kind, f.provenance())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> TransferKind {
        self.kind
    }

    pub fn frame(&self) -> &str {
        &self.frame
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.entries[j * self.size + k]
    }

    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.size)
            .map(|k| (0..self.size).map(|j| self.get(j, k)).sum())
            .collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.size)
            .map(|j| (0..self.size).map(|k| self.get(j, k)).sum())
            .collect()
    }

    pub fn column_sum_deviation(&self) -> f64 {
        self.column_sums()
            .iter()
            .map(|s| (s - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn row_sum_deviation(&self) -> f64 {
        self.row_sums()
            .iter()
            .map(|s| (s - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Smallest entry with its `(j, k)` position; first in row-major order on
    /// ties.
    pub fn min_entry(&self) -> (f64, (usize, usize)) {
        let mut best = (f64::INFINITY, (0, 0));
        for j in 0..self.size {
            for k in 0..self.size {
                let v = self.get(j, k);
                if v < best.0 {
                    best = (v, (j, k));
                }
            }
        }
        best
    }

    /// Largest entry of `|M^T M - 1|`.
    pub fn orthogonality_deviation(&self) -> f64 {
        let n = self.size;
        let mut dev = 0.0f64;
        for a in 0..n {
            for b in a..n {
                let dot: f64 = (0..n).map(|j| self.get(j, a) * self.get(j, b)).sum();
                dev = dev.max((dot - if a == b { 1.0 } else { 0.0 }).abs());
            }
        }
        dev
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &TransferMatrix) -> TransferMatrix {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                for k in 0..n {
                    entries[i * n + k] += a * other.get(l, k);
                }
            }
        }
        let kind = if self.kind == TransferKind::Unitary && other.kind == TransferKind::Unitary {
            TransferKind::Unitary
        } else {
            TransferKind::Channel
        };
        Self::from_entries(n, entries, kind, self.frame.clone())
    }

    pub fn max_abs_diff(&self, other: &TransferMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `Lambda^Q_jk = tr[Q_j Lambda(Q_k)] / d`.
pub fn transfer_matrix(ch: &Channel, f: &NqprFrame) -> Result<TransferMatrix> {
    if ch.dim != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: ch.dim,
        });
    }
    let images: Vec<ComplexMatrix> = f
        .elements()
        .iter()
        .map(|q| ch.apply_matrix(q.matrix()))
        .collect();
    Ok(TransferMatrix::from_images(
        f,
        &images,
        TransferKind::Channel,
    ))
}

/// Channel attaining the `(j, k)` term of the channel-negativity formula.
///
/// With `P_1` the projector onto the positive part of `Q_k` and `P_2 = 1 - P_1`,
/// the channel measures `{P_1, P_2}` and prepares the minimal-eigenvalue
/// eigenstate of `Q_j` on outcome 1, the maximal one on outcome 2. Kraus
/// operators are `|u_min><b|` for `b` spanning `P_1` and `|u_max><b|` for `b`
/// spanning `P_2`.
pub fn saturating_channel(f: &NqprFrame, j: usize, k: usize) -> Result<Channel> {
    let n = f.len();
    for idx in [j, k] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, len: n });
        }
    }
    let qj = f.elements()[j].spectrum();
    let qk = f.elements()[k].spectrum();
    let u_min = qj.min_eigenvector();
    let u_max = qj.max_eigenvector();
    let kraus = (0..f.dim())
        .map(|r| {
            let b = qk.eigenvector(r);
            let target = if qk.values()[r] > tol::SUPPORT {
                &u_min
            } else {
                &u_max
            };
            ComplexMatrix::ket_bra(target, &b)
        })
        .collect();
    Channel::new(kraus, format!("saturating({j},{k})"))
}

/// The `(j, k)` term `[l_j^max (|l_k|_1 - 1) - l_j^min (|l_k|_1 + 1)] / 2`.
pub fn channel_bound_term(f: &NqprFrame, j: usize, k: usize) -> f64 {
    let sj = f.elements()[j].spectrum();
    let l1 = f.elements()[k].spectrum().l1_norm();
    (sj.max() * (l1 - 1.0) - sj.min() * (l1 + 1.0)) / 2.0
}
