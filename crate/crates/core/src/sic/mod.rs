//! SICs generated as Heisenberg-Weyl orbits of fiducial vectors.
//!
//! A SIC in dimension `d` is a set of `d^2` rank-one projectors `P_j` with
//! `tr(P_j P_k) = (d delta_jk + 1) / (d + 1)`. Dimensions 2 and 3 have exact
//! built-in fiducials; anything larger has to be ingested from a file (see
//! [`fiducial`]).

pub mod fiducial;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::Serialize;

pub use fiducial::{load_fiducial, parse_fiducial, FiducialRecord};

use crate::error::{Error, Result};
use crate::hw::weyl_pair;
use crate::linalg::{ComplexMatrix, HermitianOperator, C64};
use crate::tol;

/// `d^2` projectors ordered by `(j, k)` lexicographically, `index = j d + k`.
#[derive(Clone, Debug)]
pub struct SicSet {
    dim: usize,
    projectors: Vec<HermitianOperator>,
    fiducial: Option<FiducialRecord>,
    label: String,
}

impl SicSet {
    /// Wraps projectors without validating them; see [`validate_sic`].
    pub fn from_projectors(
        dim: usize,
        projectors: Vec<HermitianOperator>,
        label: impl Into<String>,
    ) -> Self {
        Self {
            dim,
            projectors,
            fiducial: None,
            label: label.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn projectors(&self) -> &[HermitianOperator] {
        &self.projectors
    }

    pub fn fiducial(&self) -> Option<&FiducialRecord> {
        self.fiducial.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Tolerance the set was built with: the fiducial's when known.
    pub fn tolerance(&self) -> f64 {
        self.fiducial.as_ref().map_or(tol::EXACT, |f| f.tolerance)
    }

    /// `(j, k)` pair of a linear projector index.
    pub fn index_pair(&self, index: usize) -> (usize, usize) {
        (index / self.dim, index % self.dim)
    }

    pub fn with_projector(mut self, index: usize, p: HermitianOperator) -> Self {
        self.projectors[index] = p;
        self.fiducial = None;
        self
    }
}

/// Worst-case deviations of the three SIC conditions.
#[derive(Clone, Debug, Serialize)]
pub struct SicReport {
    pub dim: usize,
    pub label: String,
    pub count: usize,
    pub rank_one_deviation: f64,
    pub rank_one_worst: (usize, usize),
    pub fidelity_deviation: f64,
    pub fidelity_worst: ((usize, usize), (usize, usize)),
    pub resolution_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Checks rank-one, equal-fidelity and `sum_j P_j = d 1` conditions
/// independently, reporting the infinity-norm deviation of each.
pub fn validate_sic(s: &SicSet, tol: f64) -> SicReport {
    let d = s.dim;
    let n = s.projectors.len();
    let pair = |i: usize| (i / d, i % d);

    let mut rank_one_deviation = 0.0f64;
    let mut rank_one_worst = 0;
    for (i, p) in s.projectors.iter().enumerate() {
        let dev = p
            .spectrum()
            .values()
            .iter()
            .enumerate()
            .map(|(r, &v)| (v - if r == 0 { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max);
        if dev > rank_one_deviation {
            rank_one_deviation = dev;
            rank_one_worst = i;
        }
    }

    let same = 1.0;
    let cross = 1.0 / (d as f64 + 1.0);
    let mut fidelity_deviation = 0.0f64;
    let mut fidelity_worst = (0, 0);
    for j in 0..n {
        for k in j..n {
            let f = s.projectors[j]
                .matrix()
                .trace_product(s.projectors[k].matrix())
                .re;
            let target = if j == k { same } else { cross };
            let dev = (f - target).abs();
            if dev > fidelity_deviation {
                fidelity_deviation = dev;
                fidelity_worst = (j, k);
            }
        }
    }

    let mut sum = ComplexMatrix::zeros(d);
    for p in &s.projectors {
        sum = &sum + p.matrix();
    }
    let resolution_deviation = sum.max_abs_diff(&ComplexMatrix::identity(d).scale_real(d as f64));

    let passed = n == d * d
        && rank_one_deviation <= tol
        && fidelity_deviation <= tol
        && resolution_deviation <= tol;
    SicReport {
        dim: d,
        label: s.label.clone(),
        count: n,
        rank_one_deviation,
        rank_one_worst: pair(rank_one_worst),
        fidelity_deviation,
        fidelity_worst: (pair(fidelity_worst.0), pair(fidelity_worst.1)),
        resolution_deviation,
        tolerance: tol,
        passed,
    }
}

/// Builds the orbit `X^j Z^k |psi><psi| (X^j Z^k)^dagger` and validates it at
/// the fiducial's tolerance.
pub fn sic_from_fiducial(psi: &FiducialRecord) -> Result<SicSet> {
    psi.check_norm()?;
    let d = psi.dim;
    let pair = weyl_pair(d)?;
    let base = ComplexMatrix::outer(&psi.normalized());
    let projectors = pair
        .displacements()
        .into_iter()
        .map(|(_, dis)| HermitianOperator::new(base.conjugate_by(&dis)))
        .collect::<Result<Vec<_>>>()?;
    let set = SicSet {
        dim: d,
        projectors,
        fiducial: Some(psi.clone()),
        label: psi.source.clone(),
    };
    let report = validate_sic(&set, psi.tolerance);
    if !report.passed {
        return Err(Error::NotSicFiducial(format!(
            "rank-one {:.3e}, fidelity {:.3e}, resolution {:.3e} (tolerance {:.1e})",
            report.rank_one_deviation,
            report.fidelity_deviation,
            report.resolution_deviation,
            psi.tolerance
        )));
    }
    Ok(set)
}

/// Qubit fiducial with Bloch vector `(1, 1, 1) / sqrt(3)`; its orbit is the
/// tetrahedral SIC.
pub fn d2_fiducial() -> FiducialRecord {
    let theta = (1.0 / 3f64.sqrt()).acos();
    let amplitudes = vec![
        C64::new((theta / 2.0).cos(), 0.0),
        C64::from_polar((theta / 2.0).sin(), PI / 4.0),
    ];
    FiducialRecord {
        dim: 2,
        amplitudes,
        source: "tetrahedron".into(),
        tolerance: tol::EXACT,
    }
}

/// One-parameter qutrit family `(0, 1, -exp(i t)) / sqrt(2)`. Every real `t`
/// gives a fiducial; `0 <= t <= pi/9` is the range of inequivalent ones, and
/// `t = 0` is the Hesse SIC.
pub fn d3_family(t: f64) -> FiducialRecord {
    let amplitudes = vec![
        C64::new(0.0, 0.0),
        C64::new(FRAC_1_SQRT_2, 0.0),
        -C64::from_polar(FRAC_1_SQRT_2, t),
    ];
    let source = if t == 0.0 {
        "hesse".to_string()
    } else {
        format!("d3-family(t={t})")
    };
    FiducialRecord {
        dim: 3,
        amplitudes,
        source,
        tolerance: tol::EXACT,
    }
}

/// Upper end of the canonical qutrit family range.
pub const D3_FAMILY_MAX_T: f64 = PI / 9.0;

/// The Hesse SIC.
pub fn hesse() -> SicSet {
    sic_from_fiducial(&d3_family(0.0)).expect("Hesse fiducial is exact")
}

/// Built-in exact SIC for `d` in {2, 3} (`t` selects the qutrit family member).
pub fn builtin_sic(d: usize, t: f64) -> Option<SicSet> {
    match d {
        2 => Some(sic_from_fiducial(&d2_fiducial()).expect("qubit fiducial is exact")),
        3 => sic_from_fiducial(&d3_family(t)).ok(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hesse_passes() {
        let s = hesse();
        let r = validate_sic(&s, 1e-10);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.count, 9);
        assert_eq!(s.label(), "hesse");
    }

    #[test]
    fn hesse_pairwise_fidelity_is_quarter() {
        let s = hesse();
        let f = s.projectors()[0]
            .matrix()
            .trace_product(s.projectors()[4].matrix())
            .re;
        assert!((f - 0.25).abs() < 1e-14);
    }

    #[test]
    fn qubit_tetrahedron_passes() {
        let s = sic_from_fiducial(&d2_fiducial()).unwrap();
        assert!(validate_sic(&s, 1e-12).passed);
        for (j, p) in s.projectors().iter().enumerate() {
            for (k, q) in s.projectors().iter().enumerate() {
                let f = p.matrix().trace_product(q.matrix()).re;
                let expected = if j == k { 1.0 } else { 1.0 / 3.0 };
                assert!((f - expected).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn family_member_outside_canonical_range_is_still_a_sic() {
        let s = sic_from_fiducial(&d3_family(PI / 4.0)).unwrap();
        assert!(validate_sic(&s, 1e-10).passed);
    }

    #[test]
    fn family_endpoints() {
        let f0 = d3_family(0.0);
        assert_eq!(f0.amplitudes[2], C64::new(-FRAC_1_SQRT_2, -0.0));
        let f9 = d3_family(D3_FAMILY_MAX_T);
        let expected = -C64::from_polar(1.0, PI / 9.0) * FRAC_1_SQRT_2;
        assert!((f9.amplitudes[2] - expected).norm() < 1e-16);
        for i in 0..20 {
            let t = i as f64 * 0.37;
            assert!((d3_family(t).norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn family_grid_all_valid() {
        for i in 0..50 {
            let t = D3_FAMILY_MAX_T * i as f64 / 49.0;
            let s = sic_from_fiducial(&d3_family(t)).unwrap();
            assert!(validate_sic(&s, 1e-10).passed, "t = {t}");
        }
    }

    #[test]
    fn identical_projectors_fail_fidelity() {
        let zero = HermitianOperator::projector(&[
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ]);
        let s = SicSet::from_projectors(3, vec![zero; 9], "degenerate");
        let r = validate_sic(&s, 1e-10);
        assert!(!r.passed);
        assert!(r.rank_one_deviation < 1e-12);
        assert!((r.fidelity_deviation - 0.75).abs() < 1e-12);
    }

    #[test]
    fn mixed_element_fails_rank_one() {
        let third = HermitianOperator::identity(3).affine(1.0 / 3.0, 0.0);
        let s = hesse().with_projector(4, third);
        let r = validate_sic(&s, 1e-10);
        assert!(!r.passed);
        assert_eq!(r.rank_one_worst, (1, 1));
        assert!((r.rank_one_deviation - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn non_fiducial_is_rejected() {
        let rec = FiducialRecord::new(
            vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)],
            "basis",
            1e-10,
        )
        .unwrap();
        assert!(matches!(
            sic_from_fiducial(&rec),
            Err(Error::NotSicFiducial(_))
        ));
    }

    #[test]
    fn orbit_is_displacement_covariant() {
        // D_ab P_jk D_ab^dagger = P_(j+a, k+b)
        let s = hesse();
        let w = weyl_pair(3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let dis = w.displacement(a as i64, b as i64);
                for j in 0..3 {
                    for k in 0..3 {
                        let moved = s.projectors()[j * 3 + k].matrix().conjugate_by(&dis);
                        let target = &s.projectors()[((j + a) % 3) * 3 + (k + b) % 3];
                        assert!(moved.max_abs_diff(target.matrix()) < 1e-14);
                    }
                }
            }
        }
    }
}
