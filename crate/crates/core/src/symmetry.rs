//! Unitary transfer matrices and frame symmetries.
//!
//! A unitary `U` acts on quasiprobabilities through the orthogonal, doubly
//! quasistochastic matrix `U^Q_jk = tr(Q_j U Q_k U^dagger) / d`. It has no
//! negative entry exactly when it is a permutation, which happens exactly when
//! conjugation by `U` permutes the frame.

use serde::Serialize;

use crate::channels::{TransferKind, TransferMatrix};
use crate::error::{Error, Result};
use crate::frames::NqprFrame;
use crate::hw::WeylPair;
use crate::linalg::ComplexMatrix;
use crate::tol;

/// `U^Q` for a unitary `U` (checked to [`tol::UNITARY`]).
pub fn unitary_transfer(u: &ComplexMatrix, f: &NqprFrame) -> Result<TransferMatrix> {
    if u.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: u.dim(),
        });
    }
    let deviation = u.unitarity_deviation();
    if deviation > tol::UNITARY {
        return Err(Error::NotUnitary { deviation });
    }
    let images: Vec<ComplexMatrix> = f
        .elements()
        .iter()
        .map(|q| q.matrix().conjugate_by(u))
        .collect();
    Ok(TransferMatrix::from_images(
        f,
        &images,
        TransferKind::Unitary,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VerdictKind {
    /// `sigma[k] = j` where column `k` has its unit entry in row `j`.
    Permutation {
        sigma: Vec<usize>,
    },
    HasNegativeEntries {
        min_entry: f64,
        at: (usize, usize),
    },
    /// No entry below `-tol`, yet not within `tol` of a permutation. Cannot
    /// occur for a genuine orthogonal doubly stochastic matrix; reported
    /// instead of being forced into one of the other two.
    Ambiguous {
        min_entry: f64,
        max_snap_error: f64,
    },
}

#[derive(Clone, Debug)]
pub struct SymmetryVerdict {
    pub kind: VerdictKind,
    pub transfer: TransferMatrix,
}

impl SymmetryVerdict {
    pub fn permutation(&self) -> Option<&[usize]> {
        match &self.kind {
            VerdictKind::Permutation { sigma } => Some(sigma),
            _ => None,
        }
    }
}

/// Sorts a transfer matrix into permutation / negative-entry cases.
pub fn classify(t: &TransferMatrix, tol: f64) -> SymmetryVerdict {
    let (min_entry, at) = t.min_entry();
    let kind = if min_entry < -tol {
        VerdictKind::HasNegativeEntries { min_entry, at }
    } else {
        snap_permutation(t, tol).map_or_else(
            |max_snap_error| VerdictKind::Ambiguous {
                min_entry,
                max_snap_error,
            },
            |sigma| VerdictKind::Permutation { sigma },
        )
    };
    SymmetryVerdict {
        kind,
        transfer: t.clone(),
    }
}

/// Snaps every entry to 0 or 1 and reads off a bijection; on failure returns
/// the largest snapping error.
#[allow(clippy::needless_range_loop)]
fn snap_permutation(t: &TransferMatrix, tol: f64) -> std::result::Result<Vec<usize>, f64> {
    let n = t.size();
    let mut worst = 0.0f64;
    let mut sigma = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    for k in 0..n {
        for j in 0..n {
            let v = t.get(j, k);
            let snapped = if v > 0.5 { 1.0 } else { 0.0 };
            worst = worst.max((v - snapped).abs());
            if snapped == 1.0 {
                if sigma[k] != usize::MAX || hit[j] {
                    worst = worst.max(1.0);
                }
                sigma[k] = j;
                hit[j] = true;
            }
        }
    }
    if worst <= tol && sigma.iter().all(|&s| s != usize::MAX) {
        Ok(sigma)
    } else {
        Err(worst)
    }
}

/// Permutation `sigma` with `U Q_k U^dagger = Q_sigma(k)` when conjugation by
/// `u` permutes the frame.
///
/// Elements are matched by Hilbert-Schmidt distance below
/// [`tol::ELEMENT_MATCH`]; a match must be unique, and the recovered map is
/// then rechecked entrywise to [`tol::SYMMETRY_VERIFY`].
pub fn is_symmetry(u: &ComplexMatrix, f: &NqprFrame) -> Option<Vec<usize>> {
    if u.dim() != f.dim() || u.unitarity_deviation() > tol::UNITARY {
        return None;
    }
    let n = f.len();
    let mut sigma = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for q in f.elements() {
        let image = q.matrix().conjugate_by(u);
        let mut found = None;
        for (j, target) in f.elements().iter().enumerate() {
            if (&image - target.matrix()).frobenius_norm() < tol::ELEMENT_MATCH {
                if found.is_some() {
                    return None;
                }
                found = Some(j);
            }
        }
        let j = found?;
        if used[j] || image.max_abs_diff(f.elements()[j].matrix()) > tol::SYMMETRY_VERIFY {
            return None;
        }
        used[j] = true;
        sigma.push(j);
    }
    Some(sigma)
}

/// True when both the shift and the clock permute the frame.
pub fn hw_covariant(f: &NqprFrame, pair: &WeylPair) -> bool {
    pair.dim() == f.dim()
        && is_symmetry(pair.x(), f).is_some()
        && is_symmetry(pair.z(), f).is_some()
}

/// Unitary attaining `tr(Q_j U Q_k U^dagger) = <lambda_j ascending, lambda_k descending>`.
///
/// Sends the `r`-th eigenvector of `Q_k` (nonincreasing order) to the `r`-th
/// eigenvector of `Q_j` taken in nondecreasing order.
pub fn saturating_unitary(f: &NqprFrame, j: usize, k: usize) -> Result<ComplexMatrix> {
    let n = f.len();
    for idx in [j, k] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, len: n });
        }
    }
    let d = f.dim();
    let vj = f.elements()[j].spectrum().basis();
    let vk = f.elements()[k].spectrum().basis();
    Ok(ComplexMatrix::from_fn(d, |a, b| {
        (0..d).map(|r| vj[(a, d - 1 - r)] * vk[(b, r)].conj()).sum()
    }))
}

/// Symmetry information attached to a negativity report.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetrySummary {
    pub group: &'static str,
    pub hw_covariant: bool,
    pub shift_permutation: Option<Vec<usize>>,
    pub clock_permutation: Option<Vec<usize>>,
}

pub fn summarize(f: &NqprFrame, pair: &WeylPair) -> SymmetrySummary {
    let shift = is_symmetry(pair.x(), f);
    let clock = is_symmetry(pair.z(), f);
    SymmetrySummary {
        group: "heisenberg-weyl",
        hw_covariant: shift.is_some() && clock.is_some(),
        shift_permutation: shift,
        clock_permutation: clock,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{sic_frame, wootters_frame, SicSign};
    use crate::hw::weyl_pair;
    use crate::linalg::C64;
    use crate::random::{random_unitary, stream_rng};
    use crate::sic::{d2_fiducial, hesse, sic_from_fiducial};
    use proptest::prelude::*;
    use rand::Rng;

    fn sic_frames() -> Vec<NqprFrame> {
        let d2 = sic_from_fiducial(&d2_fiducial()).unwrap();
        vec![
            sic_frame(&d2, SicSign::Minus).unwrap(),
            sic_frame(&d2, SicSign::Plus).unwrap(),
            sic_frame(&hesse(), SicSign::Minus).unwrap(),
            sic_frame(&hesse(), SicSign::Plus).unwrap(),
        ]
    }

    #[test]
    fn identity_is_identity_permutation() {
        for f in sic_frames() {
            let t = unitary_transfer(&ComplexMatrix::identity(f.dim()), &f).unwrap();
            let v = classify(&t, 1e-9);
            let n = f.len();
            assert_eq!(v.permutation(), Some((0..n).collect::<Vec<_>>().as_slice()));
        }
    }

    #[test]
    fn unitary_transfer_is_orthogonal_and_doubly_quasistochastic() {
        let mut rng = stream_rng(4, 0);
        for f in sic_frames().into_iter().chain([wootters_frame(4).unwrap()]) {
            let u = random_unitary(f.dim(), &mut rng);
            let t = unitary_transfer(&u, &f).unwrap();
            assert!(t.orthogonality_deviation() < 1e-12);
            assert!(t.row_sum_deviation() < 1e-12);
            assert!(t.column_sum_deviation() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_unitary() {
        let f = wootters_frame(2).unwrap();
        let m = ComplexMatrix::diagonal(&[1.0, 1.1]);
        assert!(matches!(
            unitary_transfer(&m, &f),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn displacements_permute_sic_frames() {
        for f in sic_frames() {
            let pair = weyl_pair(f.dim()).unwrap();
            for ((a, b), dab) in pair.displacements() {
                let t = unitary_transfer(&dab, &f).unwrap();
                let v = classify(&t, 1e-9);
                let sigma = v
                    .permutation()
                    .expect("displacement is a symmetry")
                    .to_vec();
                assert_eq!(is_symmetry(&dab, &f).unwrap(), sigma);
                let d = f.dim();
                for (k, &s) in sigma.iter().enumerate() {
                    let (p, q) = (k / d, k % d);
                    assert_eq!(s, ((p + a) % d) * d + (q + b) % d);
                }
            }
        }
    }

    #[test]
    fn random_unitaries_have_negative_entries() {
        let f = sic_frame(&hesse(), SicSign::Minus).unwrap();
        for i in 0..50 {
            let u = random_unitary(3, &mut stream_rng(21, i));
            let v = classify(&unitary_transfer(&u, &f).unwrap(), 1e-9);
            assert!(
                matches!(v.kind, VerdictKind::HasNegativeEntries { min_entry, .. } if min_entry < -1e-6)
            );
            assert!(is_symmetry(&u, &f).is_none());
        }
    }

    #[test]
    fn global_phase_is_identity_symmetry() {
        let f = sic_frame(&hesse(), SicSign::Plus).unwrap();
        let u = ComplexMatrix::identity(3).scale(C64::from_polar(1.0, 0.7));
        assert_eq!(is_symmetry(&u, &f).unwrap(), (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn negative_entry_classification() {
        let mut entries = vec![0.0; 4];
        entries[0] = 1.2;
        entries[1] = -0.2;
        entries[2] = -0.2;
        entries[3] = 1.2;
        let t = TransferMatrix::from_entries(2, entries, TransferKind::Unitary, "test");
        assert!(matches!(
            classify(&t, 1e-9).kind,
            VerdictKind::HasNegativeEntries { at: (0, 1), .. }
        ));
    }

    #[test]
    fn hw_covariance() {
        for f in sic_frames() {
            assert!(hw_covariant(&f, &weyl_pair(f.dim()).unwrap()));
        }
        let w3 = wootters_frame(3).unwrap();
        assert!(hw_covariant(&w3, &weyl_pair(3).unwrap()));
    }

    #[test]
    fn broken_orbit_is_not_covariant() {
        let f = sic_frame(&hesse(), SicSign::Minus).unwrap();
        let u = random_unitary(3, &mut stream_rng(8, 0));
        let rotated = f.elements()[4].conjugate_by(&u).unwrap();
        let broken = f.with_element(4, rotated);
        assert!(!hw_covariant(&broken, &weyl_pair(3).unwrap()));
    }

    #[test]
    fn saturating_unitary_attains_rearrangement_bound() {
        let cases = [
            (sic_frame(&hesse(), SicSign::Minus).unwrap(), 0, 0, -1.0),
            (wootters_frame(5).unwrap(), 3, 11, -3.0),
            (wootters_frame(2).unwrap(), 1, 1, -1.0),
        ];
        for (f, j, k, expected) in cases {
            let u = saturating_unitary(&f, j, k).unwrap();
            assert!(u.unitarity_deviation() < 1e-12);
            let image = f.elements()[k].matrix().conjugate_by(&u);
            let value = f.elements()[j].matrix().trace_product(&image).re;
            assert!((value - expected).abs() < 1e-10, "{value}");
        }
    }

    #[test]
    fn transfer_is_a_representation() {
        let mut rng = stream_rng(12, 3);
        for f in sic_frames()
            .into_iter()
            .chain([wootters_frame(3).unwrap(), wootters_frame(4).unwrap()])
        {
            for _ in 0..5 {
                let u = random_unitary(f.dim(), &mut rng);
                let v = random_unitary(f.dim(), &mut rng);
                let uv = unitary_transfer(&(&u * &v), &f).unwrap();
                let prod = unitary_transfer(&u, &f)
                    .unwrap()
                    .compose(&unitary_transfer(&v, &f).unwrap());
                assert!(uv.max_abs_diff(&prod) < 1e-8);
            }
        }
    }

    /// Orthogonal matrix fixing the all-ones vector: a random rotation of the
    /// complement, optionally followed by a permutation.
    fn doubly_stochastic_orthogonal(n: usize, angle: f64, seed: u64) -> TransferMatrix {
        let mut rng = stream_rng(seed, 0);
        // orthonormal basis whose first vector is 1/sqrt(n)
        let mut basis: Vec<Vec<f64>> = vec![vec![1.0 / (n as f64).sqrt(); n]];
        while basis.len() < n {
            let mut v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
            for b in &basis {
                let p: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-6 {
                basis.push(v.into_iter().map(|x| x / norm).collect());
            }
        }
        let (c, s) = (angle.cos(), angle.sin());
        let (b1, b2) = (&basis[1], &basis[2]);
        // rotation by `angle` in the plane spanned by b1, b2
        let mut r = vec![0.0; n * n];
        for a in 0..n {
            for b in 0..n {
                let id = if a == b { 1.0 } else { 0.0 };
                r[a * n + b] = id
                    + (c - 1.0) * (b1[a] * b1[b] + b2[a] * b2[b])
                    + s * (b2[a] * b1[b] - b1[a] * b2[b]);
            }
        }
        let shift = rng.gen_range(0..n);
        let mut entries = vec![0.0; n * n];
        for a in 0..n {
            for b in 0..n {
                entries[((a + shift) % n) * n + b] = r[a * n + b];
            }
        }
        TransferMatrix::from_entries(n, entries, TransferKind::Unitary, "fuzz")
    }

    proptest! {
        #[test]
        fn nonnegative_orthogonal_stochastic_is_permutation(
            n in 3usize..8,
            angle in prop_oneof![Just(0.0), -1e-3..1e-3f64, -3.2..3.2f64],
            seed in any::<u64>(),
        ) {
            let t = doubly_stochastic_orthogonal(n, angle, seed);
            prop_assert!(t.orthogonality_deviation() < 1e-10);
            prop_assert!(t.row_sum_deviation() < 1e-10);
            let v = classify(&t, 1e-9);
            prop_assert!(!matches!(v.kind, VerdictKind::Ambiguous { .. }), "{:?}", v.kind);
            if angle == 0.0 {
                prop_assert!(v.permutation().is_some());
            }
        }
    }

    #[test]
    fn non_frame_unitary_is_rejected_by_is_symmetry() {
        let f = wootters_frame(2).unwrap();
        assert!(is_symmetry(&ComplexMatrix::identity(3), &f).is_none());
    }
}
