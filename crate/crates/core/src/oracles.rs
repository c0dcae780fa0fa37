//! Brute-force checks of the vector inequalities behind the frame bounds.
//!
//! Each inequality concerns real vectors `v` with `sum v = 1` and
//! `sum v^2 = d`, the possible spectra of a frame element. A check samples the
//! feasible set, refines the best points by random-restart hill climbing, and
//! separately confirms that the known extremal vector is feasible and attains
//! the bound.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::negativity::{closed_forms, lower_extremal_spectrum, upper_extremal_spectrum};
use crate::random::stream_rng;

/// Tolerance for a sampled point to count as violating a bound.
pub const VIOLATION: f64 = 1e-8;
/// Tolerance for an extremal vector to attain its bound.
pub const ATTAIN: f64 = 1e-10;
/// Largest accepted distance between the best point found and the bound.
pub const MAX_GAP: f64 = 1e-4;
/// Dimension up to which [`MAX_GAP`] is enforced.
pub const GAP_ENFORCED_UP_TO: usize = 6;

/// A real vector with `sum v = 1` and `sum v^2 = d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintVector {
    pub v: Vec<f64>,
}

impl ConstraintVector {
    /// Checks both constraints to `tol`.
    pub fn new(v: Vec<f64>, tol: f64) -> Result<Self> {
        let (s, q) = moments(&v);
        let d = v.len() as f64;
        if (s - 1.0).abs() > tol || (q - d).abs() > tol {
            return Err(Error::ConstraintViolation(format!(
                "sum = {s}, sum of squares = {q}, expected 1 and {d}"
            )));
        }
        Ok(Self { v })
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.v
    }

    pub fn min(&self) -> f64 {
        self.v.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn l1_norm(&self) -> f64 {
        self.v.iter().map(|x| x.abs()).sum()
    }

    /// Largest deviation from the two constraints.
    pub fn constraint_deviation(&self) -> f64 {
        let (s, q) = moments(&self.v);
        (s - 1.0).abs().max((q - self.v.len() as f64).abs())
    }
}

fn moments(v: &[f64]) -> (f64, f64) {
    (v.iter().sum(), v.iter().map(|x| x * x).sum())
}

/// Restores both constraints: shift to `sum = 1`, then rescale the part
/// orthogonal to the all-ones vector to squared norm `d - 1/d`.
pub fn reproject(v: &mut [f64]) {
    let d = v.len() as f64;
    let mean = v.iter().sum::<f64>() / d;
    let mut norm2 = 0.0;
    for x in v.iter_mut() {
        *x -= mean;
        norm2 += *x * *x;
    }
    let scale = if norm2 > 0.0 {
        ((d - 1.0 / d) / norm2).sqrt()
    } else {
        0.0
    };
    for x in v.iter_mut() {
        *x = 1.0 / d + *x * scale;
    }
}

/// Uniformly random feasible vector.
pub fn sample_constraint_vector_with(d: usize, rng: &mut impl Rng) -> ConstraintVector {
    let mut v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
    reproject(&mut v);
    ConstraintVector { v }
}

pub fn sample_constraint_vector(d: usize, seed: u64) -> ConstraintVector {
    sample_constraint_vector_with(d, &mut stream_rng(seed, 0))
}

/// Hill-climb settings.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClimbConfig {
    pub restarts: usize,
    pub steps: usize,
    pub initial_step: f64,
    pub decay: f64,
}

impl Default for ClimbConfig {
    fn default() -> Self {
        Self {
            restarts: 200,
            steps: 500,
            initial_step: 0.3,
            decay: 0.97,
        }
    }
}

/// Which way an inequality points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sense {
    /// `objective(v) <= bound` for every feasible `v`.
    Upper,
    /// `objective(v) >= bound`.
    Lower,
}

struct Inequality {
    name: &'static str,
    sense: Sense,
    bound: f64,
    objective: fn(&ConstraintVector) -> f64,
    extremal: Vec<f64>,
}

impl Inequality {
    /// Score to maximize: the objective itself for upper bounds, its negative
    /// for lower bounds.
    fn score(&self, v: &ConstraintVector) -> f64 {
        let x = (self.objective)(v);
        match self.sense {
            Sense::Upper => x,
            Sense::Lower => -x,
        }
    }

    fn violates(&self, x: f64) -> bool {
        match self.sense {
            Sense::Upper => x > self.bound + VIOLATION,
            Sense::Lower => x < self.bound - VIOLATION,
        }
    }
}

/// Outcome of one inequality check.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub lemma: String,
    pub d: usize,
    pub bound: f64,
    pub best_found: f64,
    pub gap: f64,
    pub extremal_attained: bool,
    pub samples: usize,
    pub seed: u64,
    pub violations: usize,
    pub restarts: usize,
    pub extremal_value: f64,
    pub extremal_constraint_deviation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_consistent: Option<bool>,
}

impl OracleReport {
    pub fn gap_ok(&self) -> bool {
        self.d > GAP_ENFORCED_UP_TO || self.gap < MAX_GAP
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
            && self.extremal_attained
            && self.gap_ok()
            && self.closed_form_consistent.unwrap_or(true)
    }
}

/// Best point of a scan: larger score wins, then the smaller index, so the
/// parallel reduction does not depend on scheduling.
fn pick(a: (f64, usize, f64), b: (f64, usize, f64)) -> (f64, usize, f64) {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    }
}

fn climb(
    ineq: &Inequality,
    start: ConstraintVector,
    cfg: &ClimbConfig,
    rng: &mut impl Rng,
) -> ConstraintVector {
    let d = start.dim();
    let mut best = start;
    let mut best_score = ineq.score(&best);
    let mut step = cfg.initial_step;
    let mut trial = vec![0.0; d];
    for _ in 0..cfg.steps {
        for (t, x) in trial.iter_mut().zip(&best.v) {
            let g: f64 = rng.sample(StandardNormal);
            *t = x + step * g;
        }
        reproject(&mut trial);
        let candidate = ConstraintVector { v: trial.clone() };
        let s = ineq.score(&candidate);
        if s > best_score {
            best = candidate;
            best_score = s;
        } else {
            step *= cfg.decay;
        }
    }
    best
}

fn run(ineq: Inequality, d: usize, samples: usize, seed: u64, cfg: &ClimbConfig) -> OracleReport {
    // streams 0..samples draw the raw samples, the following ones the climbs
    let raw: Vec<(f64, usize, f64, bool)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let v = sample_constraint_vector_with(d, &mut stream_rng(seed, i as u64));
            let x = (ineq.objective)(&v);
            (ineq.score(&v), i, x, ineq.violates(x))
        })
        .collect();
    let mut violations = raw.iter().filter(|r| r.3).count();
    let mut best = raw
        .iter()
        .map(|&(s, i, x, _)| (s, i, x))
        .reduce(pick)
        .unwrap_or((f64::NEG_INFINITY, 0, f64::NAN));

    // half the restarts begin at the best raw samples, half at fresh points
    let mut ranked: Vec<_> = raw.iter().map(|&(s, i, _, _)| (s, i)).collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let climbs: Vec<(f64, usize, f64, bool)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(seed, (samples + r) as u64);
            let start = match ranked.get(r / 2) {
                Some(&(_, i)) if r % 2 == 0 => {
                    sample_constraint_vector_with(d, &mut stream_rng(seed, i as u64))
                }
                _ => sample_constraint_vector_with(d, &mut rng),
            };
            let v = climb(&ineq, start, cfg, &mut rng);
            let x = (ineq.objective)(&v);
            (ineq.score(&v), samples + r, x, ineq.violates(x))
        })
        .collect();
    violations += climbs.iter().filter(|r| r.3).count();
    if let Some(c) = climbs.iter().map(|&(s, i, x, _)| (s, i, x)).reduce(pick) {
        best = pick(best, c);
    }

    let ext = ConstraintVector {
        v: ineq.extremal.clone(),
    };
    let extremal_value = (ineq.objective)(&ext);
    let extremal_constraint_deviation = ext.constraint_deviation();
    OracleReport {
        lemma: ineq.name.to_string(),
        d,
        bound: ineq.bound,
        best_found: best.2,
        gap: (best.2 - ineq.bound).abs(),
        extremal_attained: (extremal_value - ineq.bound).abs() <= ATTAIN
            && extremal_constraint_deviation <= ATTAIN,
        samples,
        seed,
        violations,
        restarts: cfg.restarts,
        extremal_value,
        extremal_constraint_deviation,
        closed_form_consistent: None,
    }
}

fn check_dim(d: usize, min: usize) -> Result<()> {
    if d < min {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: format!("needs d >= {min}"),
        });
    }
    Ok(())
}

/// `||v||_1 <= d` for odd `d`, `<= sqrt(d^2 - 1)` for even `d`.
pub fn l1_bound(d: usize) -> f64 {
    let df = d as f64;
    if d % 2 == 1 {
        df
    } else {
        (df * df - 1.0).sqrt()
    }
}

/// Maximizer of the trace norm: `(d+1)/2` ones and `(d-1)/2` minus ones for
/// odd `d`; half the entries `(1 + sqrt(d^2-1))/d` and half `(1 - sqrt(d^2-1))/d`
/// for even `d`.
pub fn l1_extremal(d: usize) -> Vec<f64> {
    if d % 2 == 1 {
        (0..d)
            .map(|i| if i < d.div_ceil(2) { 1.0 } else { -1.0 })
            .collect()
    } else {
        let df = d as f64;
        let s = (df * df - 1.0).sqrt();
        (0..d)
            .map(|i| {
                if i < d / 2 {
                    (1.0 + s) / df
                } else {
                    (1.0 - s) / df
                }
            })
            .collect()
    }
}

pub fn lemma_l1_check(
    d: usize,
    samples: usize,
    seed: u64,
    cfg: &ClimbConfig,
) -> Result<OracleReport> {
    check_dim(d, 2)?;
    Ok(run(
        Inequality {
            name: "l1-norm",
            sense: Sense::Upper,
            bound: l1_bound(d),
            objective: ConstraintVector::l1_norm,
            extremal: l1_extremal(d),
        },
        d,
        samples,
        seed,
        cfg,
    ))
}

/// Diagonal term of the channel-negativity formula for a spectrum `v`:
/// `[v_max (|v|_1 - 1) + |v_min| (|v|_1 + 1)] / 2`.
pub fn channel_diagonal_term(v: &ConstraintVector) -> f64 {
    let l1 = v.l1_norm();
    (v.max() * (l1 - 1.0) + v.min().abs() * (l1 + 1.0)) / 2.0
}

/// `d - sqrt(d+1) + (2/d) sqrt(d+1) - 2/d`.
pub fn channel_lower_bound(d: usize) -> f64 {
    let df = d as f64;
    let r = (df + 1.0).sqrt();
    df - r + 2.0 / df * r - 2.0 / df
}

/// Value of the diagonal term at the best spectrum with `m` positive and `n`
/// negative entries.
pub fn channel_split_value(d: usize, m: usize, n: usize) -> f64 {
    let (df, mf, nf) = (d as f64, m as f64, n as f64);
    (mf - nf) / (mf + nf) * ((df * mf + df * nf - 1.0) / (mf * nf)).sqrt() - 2.0 / (mf + nf) + df
}

/// One eigenvalue `((d-1) sqrt(d+1) + 1)/d`, the rest `(1 - sqrt(d+1))/d`.
pub fn channel_lower_extremal(d: usize) -> Vec<f64> {
    lower_extremal_spectrum(d)
}

pub fn lemma_channel_lower_check(
    d: usize,
    samples: usize,
    seed: u64,
    cfg: &ClimbConfig,
) -> Result<OracleReport> {
    check_dim(d, 2)?;
    let bound = channel_lower_bound(d);
    let mut report = run(
        Inequality {
            name: "channel-lower",
            sense: Sense::Lower,
            bound,
            objective: channel_diagonal_term,
            extremal: channel_lower_extremal(d),
        },
        d,
        samples,
        seed,
        cfg,
    );
    let split_matches = (channel_split_value(d, 1, d - 1) - bound).abs() <= ATTAIN;
    let split_grows = d < 4 || channel_split_value(d, 2, d - 2) > channel_split_value(d, 1, d - 1);
    report.closed_form_consistent = Some(split_matches && split_grows);
    Ok(report)
}

/// `[(d-1) v_max - (d+1) v_min] / 2`.
pub fn channel_upper_objective(v: &ConstraintVector) -> f64 {
    let d = v.dim() as f64;
    ((d - 1.0) * v.max() - (d + 1.0) * v.min()) / 2.0
}

pub fn channel_upper_bound(d: usize) -> f64 {
    closed_forms(d).nc_upper
}

/// Three-level maximizer `(a, b, ..., b, c)` with
/// `k = sqrt((d+1) / (2 (d^2+d+2)))`, `a = 1/d + (d^2-d+2) k/d`,
/// `b = 1/d + 2k/d`, `c = 1/d - (d^2+d-2) k/d`.
pub fn channel_upper_extremal(d: usize) -> Vec<f64> {
    let df = d as f64;
    let k = ((df + 1.0) / (2.0 * (df * df + df + 2.0))).sqrt();
    let mut v = vec![1.0 / df + 2.0 / df * k; d];
    v[0] = 1.0 / df + (df * df - df + 2.0) / df * k;
    v[d - 1] = 1.0 / df - (df * df + df - 2.0) / df * k;
    v
}

pub fn lemma_negc2_check(
    d: usize,
    samples: usize,
    seed: u64,
    cfg: &ClimbConfig,
) -> Result<OracleReport> {
    check_dim(d, 2)?;
    Ok(run(
        Inequality {
            name: "channel-upper",
            sense: Sense::Upper,
            bound: channel_upper_bound(d),
            objective: channel_upper_objective,
            extremal: channel_upper_extremal(d),
        },
        d,
        samples,
        seed,
        cfg,
    ))
}

/// Both sides of the frame-negativity bounds at the level of spectra:
/// `v_min >= -N+` everywhere (attained by the upper template) and
/// `v_min <= -N-` everywhere (attained by the lower template).
pub fn theorem1_spectrum_check(
    d: usize,
    samples: usize,
    seed: u64,
    cfg: &ClimbConfig,
) -> Result<Vec<OracleReport>> {
    check_dim(d, 2)?;
    let cf = closed_forms(d);
    let lower = run(
        Inequality {
            name: "min-eigenvalue-floor",
            sense: Sense::Lower,
            bound: -cf.n_plus,
            objective: ConstraintVector::min,
            extremal: upper_extremal_spectrum(d),
        },
        d,
        samples,
        seed,
        cfg,
    );
    let upper = run(
        Inequality {
            name: "min-eigenvalue-ceiling",
            sense: Sense::Upper,
            bound: -cf.n_minus,
            objective: ConstraintVector::min,
            extremal: lower_extremal_spectrum(d),
        },
        d,
        samples,
        seed,
        cfg,
    );
    Ok(vec![lower, upper])
}

/// The three vector inequalities at dimension `d`.
pub fn all_lemmas(
    d: usize,
    samples: usize,
    seed: u64,
    cfg: &ClimbConfig,
) -> Result<Vec<OracleReport>> {
    Ok(vec![
        lemma_l1_check(d, samples, seed, cfg)?,
        lemma_channel_lower_check(d, samples, seed, cfg)?,
        lemma_negc2_check(d, samples, seed, cfg)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn quick() -> ClimbConfig {
        ClimbConfig {
            restarts: 40,
            ..ClimbConfig::default()
        }
    }

    #[test]
    fn qubit_feasible_set_is_two_points() {
        let s3 = 3f64.sqrt();
        for seed in 0..20 {
            let mut v = sample_constraint_vector(2, seed).v;
            v.sort_by(f64::total_cmp);
            assert!((v[0] - (1.0 - s3) / 2.0).abs() < 1e-12);
            assert!((v[1] - (1.0 + s3) / 2.0).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn samples_meet_constraints(d in 2usize..12, seed in any::<u64>()) {
            let v = sample_constraint_vector(d, seed);
            prop_assert!(v.constraint_deviation() < 1e-12);
        }

        #[test]
        fn reprojection_restores_constraints(v in prop::collection::vec(-5.0..5.0f64, 2..10)) {
            let mut v = v;
            prop_assume!(v.iter().any(|x| (x - v[0]).abs() > 1e-6));
            reproject(&mut v);
            prop_assert!(ConstraintVector::new(v, 1e-10).is_ok());
        }
    }

    #[test]
    fn extremal_vectors() {
        assert_eq!(l1_extremal(3), vec![1.0, 1.0, -1.0]);
        for d in 2..10 {
            for (v, value, bound) in [
                (
                    l1_extremal(d),
                    ConstraintVector::l1_norm as fn(&ConstraintVector) -> f64,
                    l1_bound(d),
                ),
                (
                    channel_lower_extremal(d),
                    channel_diagonal_term,
                    channel_lower_bound(d),
                ),
                (
                    channel_upper_extremal(d),
                    channel_upper_objective,
                    channel_upper_bound(d),
                ),
            ] {
                let v = ConstraintVector::new(v, 1e-12).unwrap();
                assert!((value(&v) - bound).abs() < 1e-10, "d={d}");
            }
        }
        assert!((l1_bound(4) - 15f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn channel_bound_values() {
        assert!((channel_lower_bound(3) - 5.0 / 3.0).abs() < 1e-12);
        for d in 3..=8 {
            assert!((channel_split_value(d, 1, d - 1) - channel_lower_bound(d)).abs() < 1e-12);
        }
        for d in 4..=8 {
            assert!(channel_split_value(d, 2, d - 2) > channel_split_value(d, 1, d - 1));
        }
        assert!((channel_upper_bound(2) - (3f64.sqrt() - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn qubit_upper_objective_equals_bound() {
        let v = sample_constraint_vector(2, 5);
        assert!((channel_upper_objective(&v) - channel_upper_bound(2)).abs() < 1e-12);
    }

    #[test]
    fn lemma_checks_pass_at_three() {
        for r in all_lemmas(3, 2000, 1, &quick()).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn min_eigenvalue_checks() {
        let reports = theorem1_spectrum_check(3, 2000, 2, &quick()).unwrap();
        assert!((reports[0].bound + 1.0).abs() < 1e-12);
        assert!((reports[1].bound + 1.0 / 3.0).abs() < 1e-12);
        for r in reports {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = lemma_l1_check(4, 500, 9, &quick()).unwrap();
        let b = lemma_l1_check(4, 500, 9, &quick()).unwrap();
        assert_eq!(a.best_found.to_bits(), b.best_found.to_bits());
    }

    #[test]
    fn rejects_tiny_dimension() {
        assert!(lemma_l1_check(1, 10, 0, &quick()).is_err());
    }
}
