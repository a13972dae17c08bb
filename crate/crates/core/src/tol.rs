//! Numerical tolerances used by type invariants, solvers and consistency
//! checks. Values are absolute unless stated otherwise.

/// Matrix equality comparisons (entrywise absolute difference).
pub const MAT_EQ: f64 = 1e-12;

/// Hermiticity defect allowed in a density matrix.
pub const HERMITICITY: f64 = 1e-12;

/// Trace defect allowed in a density matrix.
pub const TRACE: f64 = 1e-10;

/// Eigenvalue floor: a density matrix is PSD up to solver noise when all
/// eigenvalues are at least `-PSD`.
pub const PSD: f64 = 1e-10;

/// Normalization defect allowed in qubit amplitudes, |α|²+|β|² = 1.
pub const STATE_NORM: f64 = 1e-12;

/// Eigenvalues in [-EIG_CLAMP, 0) are clamped to 0 before logarithms so that
/// solver noise cannot produce NaNs in entropies.
pub const EIG_CLAMP: f64 = 1e-10;

/// Jacobi sweep convergence: off-diagonal Frobenius norm below
/// `JACOBI_REL * ||m||`.
pub const JACOBI_REL: f64 = 1e-14;

/// Hard cap on Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Agreement required between an analytically constructed reduction and the
/// numerically computed partial trace.
pub const PT_CONSISTENCY: f64 = 1e-10;

/// Probabilities below this are treated as exactly zero in conditional
/// entropy averages.
pub const PROB_FLOOR: f64 = 1e-12;

/// Agreement required between the geometric-discord closed form and the
/// definition-based minimization oracle.
pub const DG_ORACLE: f64 = 1e-6;
