//! State, unitary and channel negativity, for single objects and for frames,
//! together with their closed forms.

use serde::Serialize;

use crate::channels::{channel_bound_term, transfer_matrix, Channel};
use crate::error::{Error, Result};
use crate::frames::{validate_state, FrameKind, NqprFrame};
use crate::linalg::{ComplexMatrix, HermitianOperator};
use crate::symmetry::{unitary_transfer, SymmetrySummary};
use crate::tol;

/// Relative window inside which two candidate extrema count as tied; the
/// smaller index then wins.
const TIE: f64 = 1e-12;

/// A value together with the index (or index pair) that realizes it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Witnessed<W> {
    pub value: f64,
    pub witness: W,
}

fn better(candidate: f64, best: f64, maximize: bool) -> bool {
    let margin = TIE * best.abs().max(1.0);
    if maximize {
        candidate > best + margin
    } else {
        candidate < best - margin
    }
}

/// Extremum over `0..n` with ties going to the smallest index.
fn extremum(n: usize, maximize: bool, f: impl Fn(usize) -> f64) -> (f64, usize) {
    let mut best = (f(0), 0);
    for i in 1..n {
        let v = f(i);
        if better(v, best.0, maximize) {
            best = (v, i);
        }
    }
    best
}

/// `max(0, -min_j tr(rho Q_j))`.
pub fn state_negativity(rho: &HermitianOperator, f: &NqprFrame) -> Result<f64> {
    if rho.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: rho.dim(),
        });
    }
    validate_state(rho)?;
    let min = f
        .elements()
        .iter()
        .map(|q| q.matrix().trace_product(rho.matrix()).re)
        .fold(f64::INFINITY, f64::min);
    Ok((-min).max(0.0))
}

/// Largest state negativity over all states: `|min_j lambda_min(Q_j)|`.
pub fn frame_negativity(f: &NqprFrame) -> Witnessed<usize> {
    let el = f.elements();
    let (min, j) = extremum(el.len(), false, |j| el[j].spectrum().min());
    Witnessed {
        value: min.abs(),
        witness: j,
    }
}

/// `-d min_jk U^Q_jk`, clamped at zero against rounding.
pub fn unitary_negativity(u: &ComplexMatrix, f: &NqprFrame) -> Result<f64> {
    let t = unitary_transfer(u, f)?;
    Ok((-(f.dim() as f64) * t.min_entry().0).max(0.0))
}

/// `<lambda_j ascending, lambda_k descending>`, the smallest value
/// `tr(Q_j U Q_k U^dagger)` can take over unitaries.
pub fn rearrangement_minimum(f: &NqprFrame, j: usize, k: usize) -> f64 {
    let a = f.elements()[j].spectrum().values();
    let b = f.elements()[k].spectrum().values();
    let d = a.len();
    (0..d).map(|r| a[d - 1 - r] * b[r]).sum()
}

/// Largest unitary negativity over all unitaries, with the minimizing pair.
pub fn frame_unitary_negativity(f: &NqprFrame) -> Witnessed<(usize, usize)> {
    let n = f.len();
    let (min, idx) = extremum(n * n, false, |i| rearrangement_minimum(f, i / n, i % n));
    Witnessed {
        value: min.abs(),
        witness: (idx / n, idx % n),
    }
}

/// `max(0, -d min_jk Lambda^Q_jk)`.
pub fn channel_negativity(ch: &Channel, f: &NqprFrame) -> Result<f64> {
    let t = transfer_matrix(ch, f)?;
    Ok((-(f.dim() as f64) * t.min_entry().0).max(0.0))
}

/// Largest channel negativity over all channels, with the maximizing pair.
pub fn frame_channel_negativity(f: &NqprFrame) -> Witnessed<(usize, usize)> {
    let n = f.len();
    let (max, idx) = extremum(n * n, true, |i| channel_bound_term(f, i / n, i % n));
    Witnessed {
        value: max,
        witness: (idx / n, idx % n),
    }
}

/// Exponent of 2 in `d`.
pub fn two_adic_valuation(d: usize) -> u32 {
    d.trailing_zeros()
}

/// Negativities of the tensor-product phase-point frame in dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WoottersValues {
    pub two_adic: u32,
    #[serde(rename = "N")]
    pub n: f64,
    #[serde(rename = "N_U")]
    pub nu: f64,
    #[serde(rename = "N_C")]
    pub nc: f64,
}

/// Reference values in dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClosedForms {
    pub dim: usize,
    /// Smallest possible frame negativity, attained by SIC-minus frames.
    #[serde(rename = "N_minus")]
    pub n_minus: f64,
    /// Largest possible frame negativity, attained by SIC-plus frames.
    #[serde(rename = "N_plus")]
    pub n_plus: f64,
    #[serde(rename = "NU_sic")]
    pub nu_sic: f64,
    #[serde(rename = "NC_minus")]
    pub nc_minus: f64,
    #[serde(rename = "NC_plus")]
    pub nc_plus: f64,
    #[serde(rename = "NU_lower")]
    pub nu_lower: f64,
    #[serde(rename = "NU_upper")]
    pub nu_upper: f64,
    #[serde(rename = "NC_lower")]
    pub nc_lower: f64,
    #[serde(rename = "NC_upper")]
    pub nc_upper: f64,
    pub wootters: WoottersValues,
}

pub fn closed_forms(d: usize) -> ClosedForms {
    assert!(d >= 2, "closed forms need d >= 2");
    let df = d as f64;
    let r = (df + 1.0).sqrt();
    let nc_minus = (df * df - 2.0 - (df - 2.0) * r) / df;
    ClosedForms {
        dim: d,
        n_minus: (r - 1.0) / df,
        n_plus: ((df - 1.0) * r - 1.0) / df,
        nu_sic: 1.0,
        nc_minus,
        nc_plus: (df * df - 2.0 + (df - 2.0) * r) / df,
        nu_lower: 1.0,
        nu_upper: df - 2.0 / df,
        nc_lower: nc_minus,
        nc_upper: (df - 1.0) / (std::f64::consts::SQRT_2 * df)
            * ((df + 1.0) * (df * df + df + 2.0)).sqrt()
            - 1.0 / df,
        wootters: wootters_closed_forms(d),
    }
}

pub fn wootters_closed_forms(d: usize) -> WoottersValues {
    let n = two_adic_valuation(d);
    let ni = n as i32;
    let s3 = 3f64.sqrt();
    let power_of_two = d.is_power_of_two();
    let big_n = if power_of_two {
        2f64.powi(1 - ni) * (s3 + 1.0).powi(ni - 2)
    } else {
        2f64.powi(-ni) * (s3 + 1.0).powi(ni)
    };
    let nu = d as f64 - 2f64.powi((ni - 1).abs());
    let nc = if power_of_two {
        2f64.powi(-ni) * (s3 + 1.0).powi(ni - 1) * (3f64.powf((n as f64 + 1.0) / 2.0) - 1.0)
    } else {
        4f64.powi(-ni) * (s3 + 3.0).powi(ni) * d as f64
    };
    WoottersValues {
        two_adic: n,
        n: big_n,
        nu,
        nc,
    }
}

/// States of maximal negativity `N+` found in a frame.
#[derive(Clone, Debug)]
pub struct MaxNegativityStates {
    /// Frame indices whose element has the extremal minimum eigenvalue.
    pub indices: Vec<usize>,
    /// Distinct minimal-eigenvalue eigenstates of those elements.
    pub states: Vec<HermitianOperator>,
}

impl MaxNegativityStates {
    pub fn count(&self) -> usize {
        self.states.len()
    }
}

/// Frame elements with a nondegenerate minimal eigenvalue equal to `-N+`
/// (within `tol`), and their minimal eigenstates. Witnesses closer than
/// [`tol::SYMMETRY_VERIFY`] in Hilbert-Schmidt distance are merged.
pub fn count_max_negativity_states(f: &NqprFrame, tol: f64) -> MaxNegativityStates {
    let d = f.dim();
    let n_plus = closed_forms(d).n_plus;
    let mut indices = Vec::new();
    let mut states: Vec<HermitianOperator> = Vec::new();
    for (j, q) in f.elements().iter().enumerate() {
        let s = q.spectrum();
        let v = s.values();
        let nondegenerate = d < 2 || v[d - 2] - v[d - 1] > tol;
        if (s.min() + n_plus).abs() > tol || !nondegenerate {
            continue;
        }
        indices.push(j);
        let state = HermitianOperator::projector(&s.eigenvector(d - 1));
        let duplicate = states
            .iter()
            .any(|w| (w.matrix() - state.matrix()).frobenius_norm() < tol::SYMMETRY_VERIFY);
        if !duplicate {
            states.push(state);
        }
    }
    MaxNegativityStates { indices, states }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumClass {
    /// One large eigenvalue, the other `d - 1` equal to `-N-`.
    LowerExtremal,
    /// `d - 1` equal eigenvalues and a smallest one equal to `-N+`.
    UpperExtremal,
    Other,
}

/// Compares the spectrum of a frame-like operator (`tr Q = 1`, `tr Q^2 = d`)
/// against the two extremal templates. In `d = 2` they coincide and the lower
/// class is reported.
pub fn spectrum_class(q: &HermitianOperator, tol: f64) -> Result<SpectrumClass> {
    let d = q.dim();
    let trace = q.trace();
    let square = q.matrix().trace_product(q.matrix()).re;
    if (trace - 1.0).abs() > tol || (square - d as f64).abs() > tol * d as f64 {
        return Err(Error::ConstraintViolation(format!(
            "tr Q = {trace}, tr Q^2 = {square}, expected 1 and {d}"
        )));
    }
    let v = q.spectrum().values();
    let matches = |template: &[f64]| v.iter().zip(template).all(|(a, b)| (a - b).abs() <= tol);
    if matches(&lower_extremal_spectrum(d)) {
        Ok(SpectrumClass::LowerExtremal)
    } else if matches(&upper_extremal_spectrum(d)) {
        Ok(SpectrumClass::UpperExtremal)
    } else {
        Ok(SpectrumClass::Other)
    }
}

/// Nonincreasing spectrum `(1 + (d-1) N-, -N-, ..., -N-)`.
pub fn lower_extremal_spectrum(d: usize) -> Vec<f64> {
    let n_minus = closed_forms(d).n_minus;
    let mut v = vec![-n_minus; d];
    v[0] = 1.0 + (d as f64 - 1.0) * n_minus;
    v
}

/// Nonincreasing spectrum `(a, ..., a, -N+)` with `a = (1 + N+) / (d - 1)`.
pub fn upper_extremal_spectrum(d: usize) -> Vec<f64> {
    let n_plus = closed_forms(d).n_plus;
    let mut v = vec![(1.0 + n_plus) / (d as f64 - 1.0); d];
    v[d - 1] = -n_plus;
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    #[serde(rename = "N_minus")]
    pub n_minus: f64,
    #[serde(rename = "N_plus")]
    pub n_plus: f64,
    #[serde(rename = "NU_lower")]
    pub nu_lower: f64,
    #[serde(rename = "NU_upper")]
    pub nu_upper: f64,
    #[serde(rename = "NC_lower")]
    pub nc_lower: f64,
    #[serde(rename = "NC_upper")]
    pub nc_upper: f64,
}

impl From<&ClosedForms> for Bounds {
    fn from(c: &ClosedForms) -> Self {
        Self {
            n_minus: c.n_minus,
            n_plus: c.n_plus,
            nu_lower: c.nu_lower,
            nu_upper: c.nu_upper,
            nc_lower: c.nc_lower,
            nc_upper: c.nc_upper,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witnesses {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "N_U")]
    pub nu: (usize, usize),
    #[serde(rename = "N_C")]
    pub nc: (usize, usize),
}

pub const REPORT_SCHEMA: u32 = 1;

/// Every frame-level negativity with bounds and witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct NegativityReport {
    pub schema: u32,
    pub dim: usize,
    pub kind: FrameKind,
    pub provenance: String,
    #[serde(rename = "N")]
    pub n: f64,
    #[serde(rename = "N_U")]
    pub nu: f64,
    #[serde(rename = "N_C")]
    pub nc: f64,
    pub bounds: Bounds,
    pub witnesses: Witnesses,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetrySummary>,
}

impl NegativityReport {
    pub fn new(f: &NqprFrame, symmetry: Option<SymmetrySummary>) -> Self {
        let n = frame_negativity(f);
        let nu = frame_unitary_negativity(f);
        let nc = frame_channel_negativity(f);
        Self {
            schema: REPORT_SCHEMA,
            dim: f.dim(),
            kind: f.kind(),
            provenance: f.provenance().to_string(),
            n: n.value,
            nu: nu.value,
            nc: nc.value,
            bounds: Bounds::from(&closed_forms(f.dim())),
            witnesses: Witnesses {
                n: n.witness,
                nu: nu.witness,
                nc: nc.witness,
            },
            symmetry,
        }
    }

    /// Whether every value lies within its bounds (to `tol`).
    pub fn within_bounds(&self, tol: f64) -> bool {
        let b = &self.bounds;
        b.n_minus - tol <= self.n
            && self.n <= b.n_plus + tol
            && b.nu_lower - tol <= self.nu
            && self.nu <= b.nu_upper + tol
            && b.nc_lower - tol <= self.nc
    }

    pub const CSV_HEADER: &'static str = "dim,kind,provenance,N,N_U,N_C";

    pub fn csv_fields(&self) -> Vec<String> {
        vec![
            self.dim.to_string(),
            self.kind.to_string(),
            self.provenance.clone(),
            crate::report::fmt_f64(self.n),
            crate::report::fmt_f64(self.nu),
            crate::report::fmt_f64(self.nc),
        ]
    }
}

/// Bloch vector `(tr(rho X), tr(rho Y), tr(rho Z))` of a qubit operator.
pub fn bloch_vector(rho: &HermitianOperator) -> Result<[f64; 3]> {
    if rho.dim() != 2 {
        return Err(Error::InvalidDimension {
            dim: rho.dim(),
            reason: "Bloch vectors are defined for qubits".into(),
        });
    }
    let m = rho.matrix();
    let off = m[(1, 0)];
    Ok([2.0 * off.re, 2.0 * off.im, (m[(0, 0)] - m[(1, 1)]).re])
}
