//! Default numerical tolerances.
//!
//! Every check in the crate takes its threshold from here unless the caller
//! passes an explicit override.

/// Maximum `|H - H^dagger|` entry accepted for a Hermitian operator.
pub const HERMITICITY: f64 = 1e-12;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
/// (scaled by `max(1, ||H||_F)`).
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;

/// Constructions from exact fiducials.
pub const EXACT: f64 = 1e-10;

/// Constructions from ingested numerical fiducials.
pub const INGESTED: f64 = 1e-7;

/// Frame validation for exact constructions.
pub const FRAME_EXACT: f64 = 1e-9;

/// Frame validation for frames built from ingested fiducials.
pub const FRAME_INGESTED: f64 = 1e-6;

/// Smallest eigenvalue tolerated in a density operator or effect.
pub const PSD: f64 = 1e-10;

/// Trace preservation of a Kraus family, unitality, unitarity.
pub const TRACE_PRESERVING: f64 = 1e-9;

/// `|U^dagger U - 1|` accepted for a unitary.
pub const UNITARY: f64 = 1e-10;

/// Eigenvalues above this belong to the positive support of an operator.
pub const SUPPORT: f64 = 1e-10;

/// Hilbert-Schmidt distance under which two frame elements are the same.
pub const ELEMENT_MATCH: f64 = 1e-6;

/// Operator-wise verification of a recovered symmetry permutation.
pub const SYMMETRY_VERIFY: f64 = 1e-8;

/// Comparison of directly computed values with closed forms.
pub const CLOSED_FORM: f64 = 1e-9;
