//! Normal quasiprobability representations (NQPRs).
//!
//! An NQPR in dimension `d` is a set of `d^2` Hermitian operators `Q_j` with
//! `tr(Q_j) = 1`, `tr(Q_j Q_k) = d delta_jk` and `sum_j Q_j = d 1`. States map
//! to quasiprobabilities `mu_j(rho) = tr(rho Q_j) / d` and effects to
//! conditional quasiprobabilities `nu_j(M) = tr(M Q_j)`, so that the Born
//! rule reads `tr(rho M) = sum_j mu_j(rho) nu_j(M)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hw::{parity, prime_factors, weyl_pair};
use crate::linalg::{herm_eig, ComplexMatrix, HermitianOperator, C64};
use crate::sic::{validate_sic, SicSet};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameKind {
    SicMinus,
    SicPlus,
    Wootters,
    Custom,
}

impl FrameKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FrameKind::SicMinus => "sic-minus",
            FrameKind::SicPlus => "sic-plus",
            FrameKind::Wootters => "wootters",
            FrameKind::Custom => "custom",
        }
    }
}

impl fmt::Display for FrameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FrameKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sic-minus" => Ok(FrameKind::SicMinus),
            "sic-plus" => Ok(FrameKind::SicPlus),
            "wootters" => Ok(FrameKind::Wootters),
            "custom" => Ok(FrameKind::Custom),
            other => Err(format!("unknown frame kind `{other}`")),
        }
    }
}

/// Sign choice in `Q_j = -/+ sqrt(d+1) P_j + (1 +/- sqrt(d+1)) / d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SicSign {
    /// `Q_j = sqrt(d+1) P_j + (1 - sqrt(d+1)) / d`: minimal negativity.
    Minus,
    /// `Q_j = -sqrt(d+1) P_j + (1 + sqrt(d+1)) / d`.
    Plus,
}

#[derive(Clone, Debug)]
pub struct NqprFrame {
    dim: usize,
    elements: Vec<HermitianOperator>,
    kind: FrameKind,
    provenance: String,
    tolerance: f64,
}

impl NqprFrame {
    /// Wraps `d^2` operators of a common dimension. Nothing beyond the shape
    /// is checked; run [`validate_nqpr`] for the frame conditions.
    pub fn custom(elements: Vec<HermitianOperator>, provenance: impl Into<String>) -> Result<Self> {
        Self::assemble(
            elements,
            FrameKind::Custom,
            provenance.into(),
            tol::FRAME_EXACT,
        )
    }

    fn assemble(
        elements: Vec<HermitianOperator>,
        kind: FrameKind,
        provenance: String,
        tolerance: f64,
    ) -> Result<Self> {
        let dim = elements.first().map_or(0, |e| e.dim());
        if dim < 2 {
            return Err(Error::InvalidDimension {
                dim,
                reason: "frame elements must be at least 2 x 2".into(),
            });
        }
        if elements.len() != dim * dim {
            return Err(Error::InvalidFrame(format!(
                "{} elements for dimension {dim} (expected {})",
                elements.len(),
                dim * dim
            )));
        }
        if let Some(bad) = elements.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self {
            dim,
            elements,
            kind,
            provenance,
            tolerance,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Validation tolerance appropriate for how the frame was built.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// `{U Q_j U^dagger}`: an equivalent frame with recomputed spectra.
    pub fn rotated(&self, u: &ComplexMatrix) -> Result<Self> {
        let elements = self
            .elements
            .iter()
            .map(|q| q.conjugate_by(u))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            elements,
            provenance: format!("{} (rotated)", self.provenance),
            ..self.clone()
        })
    }

    /// Replaces one element, turning the frame into a custom one.
    pub fn with_element(&self, index: usize, q: HermitianOperator) -> Self {
        let mut out = self.clone();
        out.elements[index] = q;
        out.kind = FrameKind::Custom;
        out.provenance = format!("{} (element {index} replaced)", self.provenance);
        out
    }

    /// JSON export: dim, kind, provenance, then each element as a row-major
    /// list of `[re, im]` pairs.
    pub fn to_json_value(&self) -> serde_json::Value {
        let elements: Vec<Vec<[f64; 2]>> = self
            .elements
            .iter()
            .map(|e| e.matrix().entries().iter().map(|z| [z.re, z.im]).collect())
            .collect();
        serde_json::json!({
            "dim": self.dim,
            "kind": self.kind,
            "provenance": self.provenance,
            "elements": elements,
        })
    }
}

/// `Q_j^-/+` from a validated SIC.
pub fn sic_frame(s: &SicSet, sign: SicSign) -> Result<NqprFrame> {
    let report = validate_sic(s, s.tolerance());
    if !report.passed {
        return Err(Error::InvalidFrame(format!(
            "`{}` is not a SIC (rank-one {:.2e}, fidelity {:.2e})",
            s.label(),
            report.rank_one_deviation,
            report.fidelity_deviation
        )));
    }
    let d = s.dim() as f64;
    let r = (d + 1.0).sqrt();
    let (scale, shift, kind, tag) = match sign {
        SicSign::Minus => (r, (1.0 - r) / d, FrameKind::SicMinus, "minus"),
        SicSign::Plus => (-r, (1.0 + r) / d, FrameKind::SicPlus, "plus"),
    };
    let elements = s
        .projectors()
        .iter()
        .map(|p| p.affine(scale, shift))
        .collect();
    let tolerance = if s.tolerance() > tol::EXACT {
        tol::FRAME_INGESTED
    } else {
        tol::FRAME_EXACT
    };
    NqprFrame::assemble(
        elements,
        kind,
        format!("sic-{tag}:{}", s.label()),
        tolerance,
    )
}

/// Recovers `P_j` from a frame assumed to have the `Q^-/+` form. Validate the
/// result with [`validate_sic`] to decide whether it really is a SIC.
pub fn projectors_from_frame(f: &NqprFrame, sign: SicSign) -> SicSet {
    let d = f.dim() as f64;
    let r = (d + 1.0).sqrt();
    let projectors = f
        .elements()
        .iter()
        .map(|q| match sign {
            SicSign::Minus => q.affine(1.0 / r, -(1.0 - r) / (d * r)),
            SicSign::Plus => q.affine(-1.0 / r, (1.0 + r) / (d * r)),
        })
        .collect();
    SicSet::from_projectors(f.dim(), projectors, format!("from {}", f.provenance()))
}

/// Phase-point operators of one prime factor.
fn prime_phase_points(p: usize) -> Result<Vec<ComplexMatrix>> {
    if p == 2 {
        let one = ComplexMatrix::identity(2);
        let sx = ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]);
        let sy = ComplexMatrix::from_row_major(vec![
            C64::new(0.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.0),
        ])?;
        let sz = ComplexMatrix::diagonal(&[1.0, -1.0]);
        let sign = |e: usize| if e.is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut out = Vec::with_capacity(4);
        for j1 in 0..2 {
            for j2 in 0..2 {
                let m = &(&(&one + &sz.scale_real(sign(j1))) + &sx.scale_real(sign(j2)))
                    + &sy.scale_real(sign(j1 + j2));
                out.push(m.scale_real(0.5));
            }
        }
        return Ok(out);
    }
    let origin = parity(p)?;
    let pair = weyl_pair(p)?;
    Ok(pair
        .displacements()
        .into_iter()
        .map(|(_, dis)| origin.matrix().conjugate_by(&dis))
        .collect())
}

/// Wootters phase-point operators: the qubit basis for `p = 2`, parity
/// displacements for odd primes, tensor products over the prime
/// factorization otherwise (factors in nondecreasing order, mixed-radix
/// indexing with the first factor most significant).
pub fn wootters_frame(d: usize) -> Result<NqprFrame> {
    if d < 2 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "Wootters frame needs d >= 2".into(),
        });
    }
    let mut acc = vec![ComplexMatrix::identity(1)];
    for p in prime_factors(d) {
        let base = prime_phase_points(p)?;
        acc = acc
            .iter()
            .flat_map(|a| base.iter().map(move |b| a.kron(b)))
            .collect();
    }
    let elements = acc
        .into_iter()
        .map(HermitianOperator::new)
        .collect::<Result<Vec<_>>>()?;
    let factors: Vec<String> = prime_factors(d).iter().map(|p| p.to_string()).collect();
    NqprFrame::assemble(
        elements,
        FrameKind::Wootters,
        format!("wootters:{}", factors.join("x")),
        tol::FRAME_EXACT,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameReport {
    pub dim: usize,
    pub kind: FrameKind,
    pub count: usize,
    pub trace_deviation: f64,
    pub orthogonality_deviation: f64,
    pub orthogonality_worst: (usize, usize),
    pub resolution_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn validate_nqpr(f: &NqprFrame, tol: f64) -> FrameReport {
    let d = f.dim;
    let n = f.elements.len();
    let trace_deviation = f
        .elements
        .iter()
        .map(|q| (q.trace() - 1.0).abs())
        .fold(0.0, f64::max);

    let mut orthogonality_deviation = 0.0f64;
    let mut orthogonality_worst = (0, 0);
    for j in 0..n {
        for k in j..n {
            let g = f.elements[j]
                .matrix()
                .trace_product(f.elements[k].matrix())
                .re;
            let target = if j == k { d as f64 } else { 0.0 };
            let dev = (g - target).abs();
            if dev > orthogonality_deviation {
                orthogonality_deviation = dev;
                orthogonality_worst = (j, k);
            }
        }
    }

    let mut sum = ComplexMatrix::zeros(d);
    for q in &f.elements {
        sum = &sum + q.matrix();
    }
    let resolution_deviation = sum.max_abs_diff(&ComplexMatrix::identity(d).scale_real(d as f64));

    FrameReport {
        dim: d,
        kind: f.kind,
        count: n,
        trace_deviation,
        orthogonality_deviation,
        orthogonality_worst,
        resolution_deviation,
        tolerance: tol,
        passed: n == d * d
            && trace_deviation <= tol
            && orthogonality_deviation <= tol
            && resolution_deviation <= tol,
    }
}

/// Quasiprobabilities `mu_j(rho)` of a state.
#[derive(Clone, Debug, Serialize)]
pub struct QuasiProbVector {
    pub values: Vec<f64>,
    pub frame: String,
}

impl QuasiProbVector {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Smallest entry and its index (first on ties).
    pub fn min(&self) -> (usize, f64) {
        self.values
            .iter()
            .copied()
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |best, (i, v)| if v < best.1 { (i, v) } else { best },
            )
    }
}

/// Checks `tr(rho) = 1` and `rho >= -tol::PSD`.
pub fn validate_state(rho: &HermitianOperator) -> Result<()> {
    let tr = rho.trace();
    if (tr - 1.0).abs() > tol::FRAME_EXACT {
        return Err(Error::InvalidState(format!("trace {tr}")));
    }
    let min = rho.spectrum().min();
    if min < -tol::PSD {
        return Err(Error::InvalidState(format!("eigenvalue {min:.3e}")));
    }
    Ok(())
}

/// Checks `0 <= M <= 1` up to `tol::PSD`.
pub fn validate_effect(m: &HermitianOperator) -> Result<()> {
    let (lo, hi) = (m.spectrum().min(), m.spectrum().max());
    if lo < -tol::PSD || hi > 1.0 + tol::PSD {
        return Err(Error::InvalidEffect(format!(
            "spectrum in [{lo:.3e}, {hi:.3e}]"
        )));
    }
    Ok(())
}

fn check_dim(f: &NqprFrame, op: &HermitianOperator) -> Result<()> {
    if op.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: op.dim(),
        });
    }
    Ok(())
}

/// `mu_j(rho) = tr(rho Q_j) / d`.
pub fn mu(rho: &HermitianOperator, f: &NqprFrame) -> Result<QuasiProbVector> {
    check_dim(f, rho)?;
    validate_state(rho)?;
    let d = f.dim() as f64;
    Ok(QuasiProbVector {
        values: f
            .elements
            .iter()
            .map(|q| rho.matrix().trace_product(q.matrix()).re / d)
            .collect(),
        frame: f.provenance.clone(),
    })
}

/// `nu_j(M) = tr(M Q_j)` for an effect `M`.
pub fn nu(effect: &HermitianOperator, f: &NqprFrame) -> Result<Vec<f64>> {
    check_dim(f, effect)?;
    validate_effect(effect)?;
    Ok(f.elements
        .iter()
        .map(|q| effect.matrix().trace_product(q.matrix()).re)
        .collect())
}

/// `max_xi |tr(rho M_xi) - sum_j mu_j(rho) nu_j(M_xi)|`.
pub fn born_check(
    rho: &HermitianOperator,
    povm: &[HermitianOperator],
    f: &NqprFrame,
) -> Result<f64> {
    let d = f.dim();
    let mut total = ComplexMatrix::zeros(d);
    for m in povm {
        check_dim(f, m)?;
        total = &total + m.matrix();
    }
    let deviation = total.max_abs_diff(&ComplexMatrix::identity(d));
    if deviation > tol::TRACE_PRESERVING {
        return Err(Error::InvalidPovm { deviation });
    }
    let mu = mu(rho, f)?;
    let mut worst = 0.0f64;
    for m in povm {
        let nu = nu(m, f)?;
        let born = rho.matrix().trace_product(m.matrix()).re;
        let quasi: f64 = mu.values.iter().zip(&nu).map(|(a, b)| a * b).sum();
        worst = worst.max((born - quasi).abs());
    }
    Ok(worst)
}

/// A basis of `d^2` Hermitian operators, not necessarily orthogonal.
#[derive(Clone, Debug)]
pub struct MinimalFrame {
    dim: usize,
    elements: Vec<HermitianOperator>,
}

impl MinimalFrame {
    pub fn new(elements: Vec<HermitianOperator>) -> Result<Self> {
        let dim = elements.first().map_or(0, |e| e.dim());
        if dim == 0 || elements.len() != dim * dim {
            return Err(Error::InvalidFrame(format!(
                "minimal frame needs d^2 elements, got {} of dimension {dim}",
                elements.len()
            )));
        }
        if let Some(bad) = elements.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self { dim, elements })
    }

    /// `F_j = Q_j / d` for an NQPR.
    pub fn from_nqpr(f: &NqprFrame) -> Self {
        let d = f.dim() as f64;
        Self {
            dim: f.dim(),
            elements: f
                .elements()
                .iter()
                .map(|q| q.affine(1.0 / d, 0.0))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    /// `G_jk = tr(F_j F_k)`, row-major.
    pub fn gram(&self) -> Vec<f64> {
        let n = self.elements.len();
        let mut g = vec![0.0; n * n];
        for j in 0..n {
            for k in j..n {
                let v = self.elements[j]
                    .matrix()
                    .trace_product(self.elements[k].matrix())
                    .re;
                g[j * n + k] = v;
                g[k * n + j] = v;
            }
        }
        g
    }

    /// Ratio of extreme absolute Gram eigenvalues.
    pub fn condition_number(&self) -> f64 {
        let n = self.elements.len();
        let spec =
            herm_eig(&ComplexMatrix::from_real(n, &self.gram())).expect("Gram matrix is symmetric");
        condition(spec.values())
    }
}

fn condition(values: &[f64]) -> f64 {
    let hi = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let lo = values.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    if lo == 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    }
}

/// Largest Gram condition number accepted by [`dual_of_minimal`].
pub const MAX_GRAM_CONDITION: f64 = 1e8;

/// The unique dual `{D_k}` with `tr(F_j D_k) = delta_jk`:
/// `D_k = sum_l (G^-1)_lk F_l`.
pub fn dual_of_minimal(basis: &MinimalFrame) -> Result<MinimalFrame> {
    let n = basis.elements.len();
    let spec = herm_eig(&ComplexMatrix::from_real(n, &basis.gram()))?;
    let condition = condition(spec.values());
    if condition.is_nan() || condition >= MAX_GRAM_CONDITION {
        return Err(Error::IllConditioned { condition });
    }
    let v = spec.basis();
    let inv = |l: usize, k: usize| -> f64 {
        (0..n)
            .map(|r| (v[(l, r)] * v[(k, r)].conj()).re / spec.values()[r])
            .sum()
    };
    let d = basis.dim;
    let elements = (0..n)
        .map(|k| {
            let mut acc = ComplexMatrix::zeros(d);
            for l in 0..n {
                acc = &acc + &basis.elements[l].matrix().scale_real(inv(l, k));
            }
            HermitianOperator::new(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MinimalFrame { dim: d, elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sic::{d2_fiducial, hesse, sic_from_fiducial};

    fn spectrum_close(q: &HermitianOperator, expected: &[f64], tol: f64) -> bool {
        q.spectrum()
            .values()
            .iter()
            .zip(expected)
            .all(|(a, b)| (a - b).abs() < tol)
    }

    #[test]
    fn hesse_minus_spectra() {
        let f = sic_frame(&hesse(), SicSign::Minus).unwrap();
        assert!(validate_nqpr(&f, 1e-9).passed);
        for q in f.elements() {
            assert!(spectrum_close(
                q,
                &[5.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0],
                1e-12
            ));
        }
    }

    #[test]
    fn hesse_plus_spectra() {
        let f = sic_frame(&hesse(), SicSign::Plus).unwrap();
        assert!(validate_nqpr(&f, 1e-9).passed);
        for q in f.elements() {
            assert!(spectrum_close(q, &[1.0, 1.0, -1.0], 1e-12));
        }
    }

    #[test]
    fn qubit_plus_and_minus_share_spectra() {
        let s = sic_from_fiducial(&d2_fiducial()).unwrap();
        let m = sic_frame(&s, SicSign::Minus).unwrap();
        let p = sic_frame(&s, SicSign::Plus).unwrap();
        assert!(validate_nqpr(&m, 1e-12).passed);
        assert!(validate_nqpr(&p, 1e-12).passed);
        let r3 = 3f64.sqrt();
        for q in m.elements().iter().chain(p.elements()) {
            assert!(spectrum_close(
                q,
                &[(1.0 + r3) / 2.0, (1.0 - r3) / 2.0],
                1e-12
            ));
        }
    }

    #[test]
    fn wootters_qubit_matches_bloch_form() {
        let f = wootters_frame(2).unwrap();
        assert!(validate_nqpr(&f, 1e-12).passed);
        let r3 = 3f64.sqrt();
        for q in f.elements() {
            assert!((q.spectrum().min() + (r3 - 1.0) / 2.0).abs() < 1e-12);
        }
        // A_00 = (1 + z + x + y) / 2
        let a00 = f.elements()[0].matrix();
        assert!((a00[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((a00[(0, 1)] - C64::new(0.5, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn wootters_odd_prime_spectra() {
        for p in [3usize, 5, 7] {
            let f = wootters_frame(p).unwrap();
            assert!(validate_nqpr(&f, 1e-9).passed, "p = {p}");
            for q in f.elements() {
                let vals = q.spectrum().values();
                let plus = vals.iter().filter(|v| (*v - 1.0).abs() < 1e-10).count();
                assert_eq!(plus, p.div_ceil(2));
                assert!((vals[p - 1] + 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn wootters_composite_dimensions_validate() {
        for d in [4usize, 6, 8, 9, 10] {
            let f = wootters_frame(d).unwrap();
            assert_eq!(f.len(), d * d);
            assert!(validate_nqpr(&f, 1e-9).passed, "d = {d}");
        }
    }

    #[test]
    fn tensor_of_origin_points_d6() {
        let a2 = wootters_frame(2).unwrap();
        let a3 = wootters_frame(3).unwrap();
        let a = a2.elements()[0].matrix().kron(a3.elements()[0].matrix());
        assert!((a.trace().re - 1.0).abs() < 1e-14);
        assert!((a.trace_product(&a).re - 6.0).abs() < 1e-12);
        let f6 = wootters_frame(6).unwrap();
        assert!(f6.elements()[0].matrix().max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn doubled_element_fails_orthogonality() {
        let f = wootters_frame(3).unwrap();
        let bad = f.with_element(1, f.elements()[0].clone());
        let r = validate_nqpr(&bad, 1e-9);
        assert!(!r.passed);
        assert!(r.orthogonality_deviation > 1.0);
    }

    #[test]
    fn mu_of_maximally_mixed_state_is_flat() {
        let rho = HermitianOperator::identity(3).affine(1.0 / 3.0, 0.0);
        for f in [
            wootters_frame(3).unwrap(),
            sic_frame(&hesse(), SicSign::Minus).unwrap(),
        ] {
            let m = mu(&rho, &f).unwrap();
            assert!(m.values.iter().all(|v| (v - 1.0 / 9.0).abs() < 1e-14));
        }
    }

    #[test]
    fn mu_of_sic_projector_on_minus_frame() {
        let s = hesse();
        let f = sic_frame(&s, SicSign::Minus).unwrap();
        let m = mu(&s.projectors()[0], &f).unwrap();
        assert!((m.values[0] - 5.0 / 9.0).abs() < 1e-14);
        assert!((m.sum() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mu_rejects_non_states() {
        let f = wootters_frame(2).unwrap();
        let not_normalized = HermitianOperator::identity(2);
        assert!(matches!(
            mu(&not_normalized, &f),
            Err(Error::InvalidState(_))
        ));
        let negative = HermitianOperator::new(ComplexMatrix::diagonal(&[1.5, -0.5])).unwrap();
        assert!(matches!(mu(&negative, &f), Err(Error::InvalidState(_))));
        let wrong_dim = HermitianOperator::identity(3).affine(1.0 / 3.0, 0.0);
        assert!(matches!(
            mu(&wrong_dim, &f),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn nu_of_identity_is_one() {
        let f = wootters_frame(3).unwrap();
        let v = nu(&HermitianOperator::identity(3), &f).unwrap();
        assert!(v.iter().all(|x| (x - 1.0).abs() < 1e-14));
    }

    #[test]
    fn nu_of_ground_state_on_qubit_wootters() {
        let f = wootters_frame(2).unwrap();
        let ground = HermitianOperator::projector(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let v = nu(&ground, &f).unwrap();
        let expected = [1.0, 1.0, 0.0, 0.0];
        for (a, b) in v.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn nu_over_sic_povm_sums_to_one() {
        let s = hesse();
        let f = sic_frame(&s, SicSign::Minus).unwrap();
        let mut total = [0.0; 9];
        for p in s.projectors() {
            let effect = p.affine(1.0 / 3.0, 0.0);
            for (t, v) in total.iter_mut().zip(nu(&effect, &f).unwrap()) {
                *t += v;
            }
        }
        assert!(total.iter().all(|t| (t - 1.0).abs() < 1e-13));
    }

    #[test]
    fn nu_rejects_non_effect() {
        let f = wootters_frame(2).unwrap();
        let two = HermitianOperator::identity(2).affine(2.0, 0.0);
        assert!(matches!(nu(&two, &f), Err(Error::InvalidEffect(_))));
    }

    #[test]
    fn born_rule_on_sic_povm_with_mixed_state() {
        let s = hesse();
        let f = sic_frame(&s, SicSign::Plus).unwrap();
        let povm: Vec<_> = s
            .projectors()
            .iter()
            .map(|p| p.affine(1.0 / 3.0, 0.0))
            .collect();
        let rho = HermitianOperator::identity(3).affine(1.0 / 3.0, 0.0);
        assert!(born_check(&rho, &povm, &f).unwrap() < 1e-14);
    }

    #[test]
    fn born_check_rejects_incomplete_povm() {
        let f = wootters_frame(2).unwrap();
        let rho = HermitianOperator::identity(2).affine(0.5, 0.0);
        let half = vec![HermitianOperator::identity(2).affine(0.5, 0.0)];
        assert!(matches!(
            born_check(&rho, &half, &f),
            Err(Error::InvalidPovm { .. })
        ));
    }

    #[test]
    fn orthonormal_basis_is_self_dual() {
        // (1, x, y, z) / sqrt(2)
        let f = wootters_frame(2).unwrap();
        let paulis: Vec<HermitianOperator> = [(0, 0), (1, 0), (0, 1), (1, 1)]
            .iter()
            .map(|&(a, b)| {
                // combinations of the phase points give the Pauli basis
                let s = |i: usize| -> f64 {
                    let (j1, j2) = (i / 2, i % 2);
                    let sign = |e: usize| if e.is_multiple_of(2) { 1.0 } else { -1.0 };
                    sign(a * j1 + b * j2)
                };
                let mut acc = ComplexMatrix::zeros(2);
                for (i, q) in f.elements().iter().enumerate() {
                    acc = &acc + &q.matrix().scale_real(s(i) / (2.0 * 2f64.sqrt()));
                }
                HermitianOperator::new(acc).unwrap()
            })
            .collect();
        let basis = MinimalFrame::new(paulis).unwrap();
        let g = basis.gram();
        for j in 0..4 {
            for k in 0..4 {
                assert!((g[j * 4 + k] - if j == k { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
        let dual = dual_of_minimal(&basis).unwrap();
        for (a, b) in dual.elements().iter().zip(basis.elements()) {
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-13);
        }
    }

    #[test]
    fn nqpr_dual_is_d_times_frame() {
        let f = sic_frame(&hesse(), SicSign::Minus).unwrap();
        let basis = MinimalFrame::from_nqpr(&f);
        assert!((basis.condition_number() - 1.0).abs() < 1e-10);
        let dual = dual_of_minimal(&basis).unwrap();
        for (dk, q) in dual.elements().iter().zip(f.elements()) {
            assert!(dk.matrix().max_abs_diff(q.matrix()) < 1e-12);
        }
    }

    #[test]
    fn singular_gram_is_rejected() {
        let f = wootters_frame(2).unwrap();
        let mut elems = f.elements().to_vec();
        elems[3] = elems[2].clone();
        let basis = MinimalFrame::new(elems).unwrap();
        assert!(matches!(
            dual_of_minimal(&basis),
            Err(Error::IllConditioned { .. })
        ));
    }

    #[test]
    fn projectors_recovered_from_frames() {
        let s = hesse();
        let minus = sic_frame(&s, SicSign::Minus).unwrap();
        let plus = sic_frame(&s, SicSign::Plus).unwrap();
        for (f, sign) in [(minus, SicSign::Minus), (plus, SicSign::Plus)] {
            let back = projectors_from_frame(&f, sign);
            for (a, b) in back.projectors().iter().zip(s.projectors()) {
                assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-14);
            }
        }
    }

    #[test]
    fn wootters_d3_is_plus_form_of_hesse() {
        // P_j = (1 - A_j) / 2
        let f = wootters_frame(3).unwrap();
        let s = projectors_from_frame(&f, SicSign::Plus);
        assert!(validate_sic(&s, 1e-10).passed);
        let hesse = hesse();
        assert!(
            s.projectors()[0]
                .matrix()
                .max_abs_diff(hesse.projectors()[0].matrix())
                < 1e-14
        );
    }

    #[test]
    fn frame_shape_errors() {
        let three = vec![HermitianOperator::identity(2); 3];
        assert!(matches!(
            NqprFrame::custom(three, "x"),
            Err(Error::InvalidFrame(_))
        ));
        let mut mixed = vec![HermitianOperator::identity(2); 3];
        mixed.push(HermitianOperator::identity(3));
        assert!(matches!(
            NqprFrame::custom(mixed, "x"),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn frame_json_shape() {
        let f = wootters_frame(2).unwrap();
        let v = f.to_json_value();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["dim", "kind", "provenance", "elements"]);
        assert_eq!(v["kind"], "wootters");
        assert_eq!(v["elements"].as_array().unwrap().len(), 4);
        assert_eq!(v["elements"][0].as_array().unwrap().len(), 4);
        assert_eq!(v["elements"][0][1][0], 0.5);
        assert_eq!(v["elements"][0][1][1], -0.5);
    }
}
