//! Verification suites: each bound and equality case checked numerically on
//! the frames available in one dimension.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::channels::saturating_channel;
use crate::error::{Error, Result};
use crate::frames::{
    born_check, projectors_from_frame, sic_frame, validate_nqpr, wootters_frame, FrameKind,
    NqprFrame, SicSign,
};
use crate::hw::{factor_displacements, weyl_pair, WeylPair};
use crate::linalg::{ComplexMatrix, HermitianOperator};
use crate::negativity::{
    channel_negativity, closed_forms, count_max_negativity_states, frame_channel_negativity,
    frame_negativity, frame_unitary_negativity, spectrum_class, state_negativity,
    unitary_negativity, SpectrumClass,
};
use crate::oracles::{all_lemmas, theorem1_spectrum_check, ClimbConfig, OracleReport};
use crate::random::{random_channel, random_povm, random_state, random_unitary, stream_rng};
use crate::sic::{
    builtin_sic, d3_family, load_fiducial, sic_from_fiducial, validate_sic, SicSet, D3_FAMILY_MAX_T,
};
use crate::symmetry::{classify, hw_covariant, is_symmetry, saturating_unitary, unitary_transfer};
use crate::tol;

/// Number of Haar-rotated copies of each frame used by the bound checks.
pub const ROTATED_COPIES: usize = 100;
/// Random (state, POVM) pairs per frame in the Born-rule check.
pub const BORN_PAIRS: usize = 100;
/// Grid size of the qutrit family scan.
pub const SCAN_POINTS: usize = 50;
/// A random unitary must have an entry below this to count as a clear
/// non-symmetry.
pub const NEGATIVE_ENTRY: f64 = -1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Which {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
    Lemmas,
    Born,
    All,
}

impl Which {
    pub const EACH: [Which; 8] = [
        Which::Thm1,
        Which::Thm2,
        Which::Thm3,
        Which::Thm4,
        Which::Thm5,
        Which::Thm6,
        Which::Lemmas,
        Which::Born,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Which::Thm1 => "thm1",
            Which::Thm2 => "thm2",
            Which::Thm3 => "thm3",
            Which::Thm4 => "thm4",
            Which::Thm5 => "thm5",
            Which::Thm6 => "thm6",
            Which::Lemmas => "lemmas",
            Which::Born => "born",
            Which::All => "all",
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Which::EACH
            .into_iter()
            .chain([Which::All])
            .find(|w| w.as_str() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("unknown suite `{s}`"),
            })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    /// Overrides the per-frame comparison tolerance.
    pub tol: Option<f64>,
    pub data_dir: Option<PathBuf>,
    pub climb: ClimbConfig,
}

impl SuiteConfig {
    pub fn new(dim: usize, samples: usize, seed: u64) -> Self {
        Self {
            dim,
            samples,
            seed,
            tol: None,
            data_dir: None,
            climb: ClimbConfig::default(),
        }
    }

    fn tol_for(&self, f: &NqprFrame) -> f64 {
        self.tol.unwrap_or(f.tolerance())
    }
}

/// One named pass/fail result with the quantity it was decided on.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, measured: f64) -> Self {
        Self {
            name: name.into(),
            passed,
            measured,
            expected: None,
            detail: String::new(),
        }
    }

    fn expecting(mut self, expected: f64) -> Self {
        self.expected = Some(expected);
        self
    }

    fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// `|measured - expected| <= tol`.
    fn close(name: impl Into<String>, measured: f64, expected: f64, tol: f64) -> Self {
        Self::new(name, (measured - expected).abs() <= tol, measured).expecting(expected)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub which: Which,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub const CSV_HEADER: &'static str = "name,passed,measured,expected";

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// SIC fixture for `d` in `dir`: `sic_d{d}.json` or `sic_d{d}.txt`.
pub fn fixture_path(dir: &Path, d: usize) -> Option<PathBuf> {
    ["json", "txt"]
        .iter()
        .map(|ext| dir.join(format!("sic_d{d}.{ext}")))
        .find(|p| p.is_file())
}

/// Exact SIC for `d` in {2, 3}; otherwise the fixture from `data_dir`, if any.
pub fn available_sic(d: usize, t: f64, data_dir: Option<&Path>) -> Result<Option<SicSet>> {
    if let Some(s) = builtin_sic(d, t) {
        return Ok(Some(s));
    }
    match data_dir.and_then(|dir| fixture_path(dir, d)) {
        Some(path) => Ok(Some(sic_from_fiducial(&load_fiducial(&path)?)?)),
        None => Ok(None),
    }
}

/// Every frame this crate can build in dimension `d`: both SIC frames when a
/// SIC is available, and the Wootters frame.
pub fn available_frames(d: usize, data_dir: Option<&Path>) -> Result<Vec<NqprFrame>> {
    let mut frames = Vec::new();
    if let Some(s) = available_sic(d, 0.0, data_dir)? {
        frames.push(sic_frame(&s, SicSign::Minus)?);
        frames.push(sic_frame(&s, SicSign::Plus)?);
    }
    frames.push(wootters_frame(d)?);
    Ok(frames)
}

fn label(f: &NqprFrame) -> String {
    f.provenance().to_string()
}

/// The frames plus `copies` Haar-rotated versions of each.
fn with_rotations(frames: &[NqprFrame], copies: usize, seed: u64) -> Result<Vec<NqprFrame>> {
    let mut out = frames.to_vec();
    for (i, f) in frames.iter().enumerate() {
        for c in 0..copies {
            let u = random_unitary(f.dim(), &mut stream_rng(seed, (i * copies + c) as u64));
            out.push(f.rotated(&u)?);
        }
    }
    Ok(out)
}

fn is_perfect(f: &NqprFrame, tol: f64) -> bool {
    let all_lower = f
        .elements()
        .iter()
        .all(|q| matches!(spectrum_class(q, tol), Ok(SpectrumClass::LowerExtremal)));
    all_lower && validate_sic(&projectors_from_frame(f, SicSign::Minus), tol).passed
}

/// Frame negativity bounds and the equality case at the lower bound.
pub fn check_thm1(cfg: &SuiteConfig, frames: &[NqprFrame]) -> Result<Vec<Check>> {
    let cf = closed_forms(cfg.dim);
    let mut checks = Vec::new();
    let all = with_rotations(frames, ROTATED_COPIES.min(cfg.samples), cfg.seed)?;
    let mut worst_low = f64::INFINITY;
    let mut worst_high = f64::INFINITY;
    for f in &all {
        let n = frame_negativity(f).value;
        let tol = cfg.tol_for(f);
        worst_low = worst_low.min(n - cf.n_minus + tol);
        worst_high = worst_high.min(cf.n_plus + tol - n);
    }
    checks.push(
        Check::new("thm1/lower-bound", worst_low >= 0.0, worst_low).detail(format!(
            "{} frames, slack above N- (with tolerance)",
            all.len()
        )),
    );
    checks.push(
        Check::new("thm1/upper-bound", worst_high >= 0.0, worst_high).detail(format!(
            "{} frames, slack below N+ (with tolerance)",
            all.len()
        )),
    );
    for f in frames {
        let tol = cfg.tol_for(f);
        let n = frame_negativity(f).value;
        let attains = (n - cf.n_minus).abs() <= tol;
        let perfect = is_perfect(f, tol);
        checks.push(
            Check::new(
                format!("thm1/equality-iff-perfect/{}", label(f)),
                attains == perfect,
                n,
            )
            .expecting(cf.n_minus)
            .detail(format!(
                "attains N- = {attains}, SIC-minus form = {perfect}"
            )),
        );
        if f.kind() == FrameKind::SicMinus {
            checks.push(Check::close(
                format!("thm1/sic-minus-attains/{}", label(f)),
                n,
                cf.n_minus,
                tol,
            ));
        }
        if f.kind() == FrameKind::SicPlus {
            checks.push(Check::close(
                format!("thm1/sic-plus-attains/{}", label(f)),
                n,
                cf.n_plus,
                tol,
            ));
        }
    }
    Ok(checks)
}

/// At most `d^2` maximally negative states; exactly `d^2` for SIC-plus.
pub fn check_thm2(cfg: &SuiteConfig, frames: &[NqprFrame]) -> Vec<Check> {
    let d = cfg.dim;
    let mut checks = Vec::new();
    for f in frames {
        let tol = cfg.tol_for(f);
        let found = count_max_negativity_states(f, tol);
        let count = found.count();
        checks.push(
            Check::new(
                format!("thm2/at-most-d2/{}", label(f)),
                count <= d * d,
                count as f64,
            )
            .expecting((d * d) as f64),
        );
        match f.kind() {
            FrameKind::SicPlus => checks.push(
                Check::new(
                    format!("thm2/sic-plus-count/{}", label(f)),
                    count == d * d,
                    count as f64,
                )
                .expecting((d * d) as f64),
            ),
            FrameKind::SicMinus if d >= 3 => checks.push(
                Check::new(
                    format!("thm2/sic-minus-count/{}", label(f)),
                    count == 0,
                    count as f64,
                )
                .expecting(0.0),
            ),
            _ => {}
        }
        if f.kind() == FrameKind::SicPlus {
            let n_plus = closed_forms(d).n_plus;
            let worst = found
                .states
                .iter()
                .map(|rho| (state_negativity(rho, f).unwrap_or(f64::NAN) - n_plus).abs())
                .fold(0.0, f64::max);
            checks.push(Check::new(
                format!("thm2/witnesses-attain-N+/{}", label(f)),
                worst <= tol,
                worst,
            ));
        }
    }
    checks
}

/// Largest `f(stream)` over `samples` consecutive streams from `offset`.
fn max_over_samples(samples: usize, offset: u64, f: impl Fn(u64) -> f64 + Sync) -> f64 {
    (0..samples as u64)
        .into_par_iter()
        .map(|i| f(offset + i))
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

/// Unitary negativity bounds, random-unitary envelope, and the saturating
/// unitary.
pub fn check_thm3(cfg: &SuiteConfig, frames: &[NqprFrame]) -> Result<Vec<Check>> {
    let cf = closed_forms(cfg.dim);
    let mut checks = Vec::new();
    for (fi, f) in frames.iter().enumerate() {
        let tol = cfg.tol_for(f);
        let nu = frame_unitary_negativity(f);
        checks.push(
            Check::new(
                format!("thm3/bounds/{}", label(f)),
                cf.nu_lower - tol <= nu.value && nu.value <= cf.nu_upper + tol,
                nu.value,
            )
            .detail(format!("[{}, {}]", cf.nu_lower, cf.nu_upper)),
        );
        if matches!(f.kind(), FrameKind::SicMinus | FrameKind::SicPlus) {
            checks.push(Check::close(
                format!("thm3/sic-equals-one/{}", label(f)),
                nu.value,
                1.0,
                tol,
            ));
        }
        let u = saturating_unitary(f, nu.witness.0, nu.witness.1)?;
        let attained = unitary_negativity(&u, f)?;
        checks.push(Check::close(
            format!("thm3/saturating-unitary/{}", label(f)),
            attained,
            nu.value,
            tol,
        ));
        let d = f.dim();
        let offset = (fi as u64) << 32;
        let worst = max_over_samples(cfg.samples, offset, |s| {
            let u = random_unitary(d, &mut stream_rng(cfg.seed, s));
            unitary_negativity(&u, f).unwrap_or(f64::INFINITY)
        });
        checks.push(
            Check::new(
                format!("thm3/random-envelope/{}", label(f)),
                worst <= nu.value + tol,
                worst,
            )
            .expecting(nu.value)
            .detail(format!("{} Haar unitaries", cfg.samples)),
        );
    }
    Ok(checks)
}

/// Channel negativity lower bound with its equality case, random-channel
/// envelope, and the saturating channel.
pub fn check_thm4(cfg: &SuiteConfig, frames: &[NqprFrame]) -> Result<Vec<Check>> {
    let cf = closed_forms(cfg.dim);
    let mut checks = Vec::new();
    for (fi, f) in frames.iter().enumerate() {
        let tol = cfg.tol_for(f);
        let nc = frame_channel_negativity(f);
        checks.push(
            Check::new(
                format!("thm4/lower-bound/{}", label(f)),
                nc.value >= cf.nc_lower - tol,
                nc.value,
            )
            .expecting(cf.nc_lower),
        );
        let attains = (nc.value - cf.nc_lower).abs() <= tol;
        let perfect = (frame_negativity(f).value - cf.n_minus).abs() <= tol && is_perfect(f, tol);
        checks.push(
            Check::new(
                format!("thm4/equality-iff-perfect/{}", label(f)),
                attains == perfect,
                nc.value,
            )
            .detail(format!("attains = {attains}, perfect = {perfect}")),
        );
        let ch = saturating_channel(f, nc.witness.0, nc.witness.1)?;
        let attained = channel_negativity(&ch, f)?;
        checks.push(Check::close(
            format!("thm4/saturating-channel/{}", label(f)),
            attained,
            nc.value,
            tol,
        ));
        let d = f.dim();
        let samples = (cfg.samples / 10).max(1);
        let offset = ((fi as u64) << 32) | (1 << 31);
        let worst = max_over_samples(samples, offset, |s| {
            let ch = random_channel(d, &mut stream_rng(cfg.seed, s));
            channel_negativity(&ch, f).unwrap_or(f64::INFINITY)
        });
        checks.push(
            Check::new(
                format!("thm4/random-envelope/{}", label(f)),
                worst <= nc.value + tol,
                worst,
            )
            .expecting(nc.value)
            .detail(format!("{samples} random channels")),
        );
    }
    Ok(checks)
}

/// Displacements expected to permute the elements of `f`: the HW group when
/// `f` is covariant under it, the factor-wise displacements for Wootters
/// frames, none otherwise.
fn frame_displacements(
    f: &NqprFrame,
    pair: &WeylPair,
) -> Result<Option<(&'static str, Vec<ComplexMatrix>)>> {
    if hw_covariant(f, pair) {
        let all = pair.displacements().into_iter().map(|(_, m)| m).collect();
        return Ok(Some(("displacements", all)));
    }
    if f.kind() == FrameKind::Wootters {
        return Ok(Some((
            "factor-displacements",
            factor_displacements(f.dim())?,
        )));
    }
    Ok(None)
}

/// Nonnegative transfer matrix exactly for frame symmetries: displacements
/// on covariant frames, and random unitaries.
pub fn check_thm5(cfg: &SuiteConfig, frames: &[NqprFrame]) -> Result<Vec<Check>> {
    let pair = weyl_pair(cfg.dim)?;
    let mut checks = Vec::new();
    for (fi, f) in frames.iter().enumerate() {
        if let Some((group, unitaries)) = frame_displacements(f, &pair)? {
            let mut bad = 0usize;
            for u in &unitaries {
                let verdict = classify(&unitary_transfer(u, f)?, tol::CLOSED_FORM);
                let ok = match (verdict.permutation(), is_symmetry(u, f)) {
                    (Some(a), Some(b)) => a == b.as_slice(),
                    _ => false,
                };
                bad += usize::from(!ok);
            }
            checks.push(
                Check::new(
                    format!("thm5/{group}-permute/{}", label(f)),
                    bad == 0,
                    bad as f64,
                )
                .detail(format!("{} unitaries", unitaries.len())),
            );
        }
        let offset = ((fi as u64) << 32) | (1 << 30);
        let results: Vec<(f64, bool)> = (0..cfg.samples as u64)
            .into_par_iter()
            .map(|i| {
                let u = random_unitary(f.dim(), &mut stream_rng(cfg.seed, offset + i));
                let min = unitary_transfer(&u, f)
                    .map(|t| t.min_entry().0)
                    .unwrap_or(f64::NAN);
                (min, is_symmetry(&u, f).is_some())
            })
            .collect();
        let worst = results
            .iter()
            .map(|r| r.0)
            .fold(f64::NEG_INFINITY, f64::max);
        let symmetric = results.iter().filter(|r| r.1).count();
        checks.push(
            Check::new(
                format!("thm5/random-negative/{}", label(f)),
                worst < NEGATIVE_ENTRY && symmetric == 0,
                worst,
            )
            .detail(format!(
                "largest min entry over {} Haar unitaries",
                cfg.samples
            )),
        );
    }
    Ok(checks)
}

/// One row of the qutrit family scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub t: f64,
    #[serde(rename = "N")]
    pub n: f64,
    #[serde(rename = "N_U")]
    pub nu: f64,
    #[serde(rename = "N_C")]
    pub nc: f64,
    pub sic_ok: bool,
    pub hw_covariant: bool,
    pub label: String,
}

pub const SCAN_CSV_HEADER: &str = "t,N,N_U,N_C,sic_ok,hw_covariant,label";

/// SIC-minus negativities along `t = i (pi/9) / (steps - 1)`.
pub fn scan_d3(steps: usize) -> Result<Vec<ScanRow>> {
    if steps < 2 {
        return Err(Error::InvalidDimension {
            dim: steps,
            reason: "scan needs at least 2 steps".into(),
        });
    }
    let pair = weyl_pair(3)?;
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let t = D3_FAMILY_MAX_T * i as f64 / (steps - 1) as f64;
            let fiducial = d3_family(t);
            let row = match sic_from_fiducial(&fiducial) {
                Ok(s) => {
                    let f = sic_frame(&s, SicSign::Minus)?;
                    ScanRow {
                        t,
                        n: frame_negativity(&f).value,
                        nu: frame_unitary_negativity(&f).value,
                        nc: frame_channel_negativity(&f).value,
                        sic_ok: validate_nqpr(&f, tol::FRAME_EXACT).passed,
                        hw_covariant: hw_covariant(&f, &pair),
                        label: s.label().to_string(),
                    }
                }
                Err(_) => ScanRow {
                    t,
                    n: f64::NAN,
                    nu: f64::NAN,
                    nc: f64::NAN,
                    sic_ok: false,
                    hw_covariant: false,
                    label: fiducial.source,
                },
            };
            Ok(row)
        })
        .collect()
}

/// Distance between the minimal eigenstate of the Wootters origin operator
/// in `d = 3` and the Hesse fiducial `(0, 1, -1)/sqrt(2)`, insensitive to
/// global phase.
pub fn wootters_fiducial_distance() -> Result<f64> {
    let w = wootters_frame(3)?;
    let s = w.elements()[0].spectrum();
    let from_frame = HermitianOperator::projector(&s.eigenvector(2));
    let hesse = HermitianOperator::projector(&d3_family(0.0).normalized());
    Ok(from_frame.matrix().max_abs_diff(hesse.matrix()))
}

/// Qutrit family scan plus the Wootters-to-Hesse link. Always runs in `d = 3`.
pub fn check_thm6() -> Result<Vec<Check>> {
    let cf = closed_forms(3);
    let rows = scan_d3(SCAN_POINTS)?;
    let tol = tol::CLOSED_FORM;
    let worst = rows
        .iter()
        .map(|r| {
            (r.n - cf.n_minus)
                .abs()
                .max((r.nu - 1.0).abs())
                .max((r.nc - cf.nc_minus).abs())
        })
        .fold(0.0, f64::max);
    let all_ok = rows.iter().all(|r| r.sic_ok && r.hw_covariant);
    Ok(vec![
        Check::new("thm6/family-values-constant", worst <= tol, worst)
            .detail(format!("{} grid points", rows.len())),
        Check::new(
            "thm6/family-sic-and-covariant",
            all_ok,
            rows.iter().filter(|r| r.sic_ok && r.hw_covariant).count() as f64,
        )
        .expecting(rows.len() as f64),
        {
            let dist = wootters_fiducial_distance()?;
            Check::new(
                "thm6/wootters-origin-is-hesse-fiducial",
                dist <= tol::EXACT,
                dist,
            )
        },
    ])
}

fn oracle_check(r: &OracleReport) -> Check {
    Check::new(
        format!("lemmas/{}/d{}", r.lemma, r.d),
        r.passed(),
        r.best_found,
    )
    .expecting(r.bound)
    .detail(format!(
        "gap {:.3e}, violations {}, extremal attained {}",
        r.gap, r.violations, r.extremal_attained
    ))
}

/// The vector inequalities, including the spectrum-level frame negativity
/// bounds.
pub fn check_lemmas(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut reports = all_lemmas(cfg.dim, cfg.samples, cfg.seed, &cfg.climb)?;
    reports.extend(theorem1_spectrum_check(
        cfg.dim,
        cfg.samples,
        cfg.seed,
        &cfg.climb,
    )?);
    Ok(reports.iter().map(oracle_check).collect())
}

/// Born-rule reproduction for random states and POVMs.
pub fn check_born(cfg: &SuiteConfig, frames: &[NqprFrame]) -> Result<Vec<Check>> {
    let pairs = BORN_PAIRS.min(cfg.samples);
    let mut checks = Vec::new();
    for (fi, f) in frames.iter().enumerate() {
        let d = f.dim();
        let offset = ((fi as u64) << 32) | (1 << 29);
        let worst = (0..pairs as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(cfg.seed, offset + i);
                let rho = random_state(d, &mut rng);
                let povm = random_povm(d, d + 1, &mut rng);
                born_check(&rho, &povm, f)
            })
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        checks.push(
            Check::new(
                format!("born/{}", label(f)),
                worst < tol::FRAME_EXACT.max(cfg.tol_for(f)),
                worst,
            )
            .detail(format!("{pairs} (state, POVM) pairs")),
        );
    }
    Ok(checks)
}

/// Runs the selected suite in `cfg.dim`.
pub fn run_suite(which: Which, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.dim < 2 {
        return Err(Error::InvalidDimension {
            dim: cfg.dim,
            reason: "verification needs d >= 2".into(),
        });
    }
    let frames = available_frames(cfg.dim, cfg.data_dir.as_deref())?;
    let selected: Vec<Which> = if which == Which::All {
        Which::EACH.to_vec()
    } else {
        vec![which]
    };
    let mut checks = Vec::new();
    for w in selected {
        checks.extend(match w {
            Which::Thm1 => check_thm1(cfg, &frames)?,
            Which::Thm2 => check_thm2(cfg, &frames),
            Which::Thm3 => check_thm3(cfg, &frames)?,
            Which::Thm4 => check_thm4(cfg, &frames)?,
            Which::Thm5 => check_thm5(cfg, &frames)?,
            Which::Thm6 => check_thm6()?,
            Which::Lemmas => check_lemmas(cfg)?,
            Which::Born => check_born(cfg, &frames)?,
            Which::All => unreachable!(),
        });
    }
    Ok(SuiteReport {
        schema: 1,
        which,
        dim: cfg.dim,
        samples: cfg.samples,
        seed: cfg.seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(d: usize) -> SuiteConfig {
        let mut c = SuiteConfig::new(d, 200, 7);
        c.climb.restarts = 40;
        c
    }

    #[test]
    fn every_suite_passes_at_three() {
        for w in Which::EACH {
            let r = run_suite(w, &cfg(3)).unwrap();
            let failures: Vec<_> = r.failures().collect();
            assert!(r.passed, "{w}: {failures:#?}");
        }
    }

    #[test]
    fn every_suite_passes_at_two() {
        let r = run_suite(Which::All, &cfg(2)).unwrap();
        let failures: Vec<_> = r.failures().collect();
        assert!(r.passed, "{failures:#?}");
    }

    #[test]
    fn wootters_only_dimension() {
        let r = run_suite(Which::Thm3, &cfg(5)).unwrap();
        assert!(r.passed);
        assert_eq!(available_frames(5, None).unwrap().len(), 1);
    }

    #[test]
    fn thm2_counts_on_hesse() {
        let r = run_suite(Which::Thm2, &cfg(3)).unwrap();
        let plus = r
            .checks
            .iter()
            .find(|c| c.name.starts_with("thm2/sic-plus-count"))
            .unwrap();
        assert_eq!(plus.measured, 9.0);
    }

    #[test]
    fn scan_rows() {
        let rows = scan_d3(10).unwrap();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[0].label, "hesse");
        assert!((rows[9].t - D3_FAMILY_MAX_T).abs() < 1e-15);
        assert!(scan_d3(1).is_err());
    }

    #[test]
    fn which_parses() {
        assert_eq!("thm5".parse::<Which>().unwrap(), Which::Thm5);
        assert_eq!("all".parse::<Which>().unwrap(), Which::All);
        assert!("thm7".parse::<Which>().is_err());
    }
}
