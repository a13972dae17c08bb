//! Dense complex linear algebra and multiqubit state construction.
//!
//! Matrices are stored row-major over `Complex64`. Multiqubit states live in
//! the full 2^N computational space (N ≤ 5 at desk scale); machine/ancilla
//! registers get their own dimension entry when explicitly represented. All
//! values are immutable after construction and every operation is a pure
//! function, so everything here is safe to use from any number of threads.

mod jacobi;

use num_complex::Complex64;

use crate::tol;
use crate::{Error, Result};

pub use jacobi::jacobi_eigenvalues;

/// Shorthand for a real complex number.
#[inline]
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix, row-major.
#[derive(Clone, Debug)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = ONE;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_assign_at(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.cols + c] += v;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let entries = self.entries.iter().map(|a| a * k).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.entries[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.entries[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert_eq!(self.rows, self.cols);
        (0..self.rows)
            .map(|i| self.entries[i * self.cols + i])
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Max entrywise deviation from its own adjoint.
    pub fn hermiticity_defect(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Entrywise comparison with an explicit absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a - b).norm() <= tolerance)
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// Kronecker product with `a`'s indices major.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let va = a.get(ia, ja);
            if va == ZERO {
                continue;
            }
            for ib in 0..b.rows {
                for jb in 0..b.cols {
                    out.set(ia * b.rows + ib, ja * b.cols + jb, va * b.get(ib, jb));
                }
            }
        }
    }
    out
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Uses cyclic Jacobi rotations; converges when the off-diagonal Frobenius
/// norm drops below `tol::JACOBI_REL * ||m||` (hard cap
/// `tol::JACOBI_MAX_SWEEPS` sweeps).
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.rows != m.cols {
        return Err(Error::Shape(format!("{}x{} is not square", m.rows, m.cols)));
    }
    let defect = m.hermiticity_defect();
    if defect > 1e-10 {
        return Err(Error::NotHermitian(defect));
    }
    Ok(jacobi::jacobi_eigenvalues(m))
}

/// Pure state vector over an ordered list of subsystem dimensions.
#[derive(Clone, Debug)]
pub struct StateVector {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self> {
        let total: usize = dims.iter().product();
        if total != amps.len() || dims.iter().any(|&d| d < 2) {
            return Err(Error::Shape(format!(
                "dims {dims:?} do not match {} amplitudes",
                amps.len()
            )));
        }
        Ok(Self { dims, amps })
    }

    /// Computational basis state |index⟩ of a single register.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Self {
            dims: vec![dim],
            amps,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            dims: self.dims.clone(),
            amps: self.amps.iter().map(|a| a * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::Shape(format!(
                "dims {:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        let amps = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dims: self.dims.clone(),
            amps,
        })
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self { dims, amps }
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |ψ⟩⟨ψ| as a density matrix. The vector must be normalized.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        let n = self.amps.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.amps[i] * self.amps[j].conj());
            }
        }
        DensityMatrix::new(self.dims.clone(), m)
    }

    /// Outer product |self⟩⟨other| as a raw matrix.
    pub fn outer(&self, other: &Self) -> ComplexMatrix {
        let n = self.amps.len();
        let m = other.amps.len();
        let mut out = ComplexMatrix::zeros(n, m);
        for i in 0..n {
            for j in 0..m {
                out.set(i, j, self.amps[i] * other.amps[j].conj());
            }
        }
        out
    }
}

/// Amplitude pair (α, β) of an unknown qubit |ψ⟩ = α|0⟩ + β|1⟩.
#[derive(Clone, Copy, Debug)]
pub struct QubitState {
    alpha: Complex64,
    beta: Complex64,
}

impl QubitState {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - 1.0).abs() > tol::STATE_NORM {
            return Err(Error::InvalidState(format!(
                "|α|²+|β|² = {norm} is not 1 within {:e}",
                tol::STATE_NORM
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// Real-amplitude state with α ∈ [0, 1] and β = √(1−α²), the
    /// parameterization used by all figure sweeps.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidState(format!("α = {alpha} outside [0, 1]")));
        }
        Self::new(
            cx(alpha, 0.0),
            cx((1.0 - alpha * alpha).max(0.0).sqrt(), 0.0),
        )
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn vector(&self) -> StateVector {
        StateVector {
            dims: vec![2],
            amps: vec![self.alpha, self.beta],
        }
    }
}

/// Hermitian, unit-trace, PSD matrix over an ordered list of subsystem
/// dimensions. The invariants are enforced on construction:
/// Hermitian within 1e-12, trace 1 within 1e-10, eigenvalues ≥ −1e-10.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    mat: ComplexMatrix,
}

/// Validation report for a density-matrix candidate: defect magnitudes plus
/// flags against the type tolerances. Pure report, never an error.
#[derive(Clone, Copy, Debug)]
pub struct DensityDiagnostics {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
    pub hermitian_ok: bool,
    pub trace_ok: bool,
    pub psd_ok: bool,
}

impl DensityDiagnostics {
    pub fn all_ok(&self) -> bool {
        self.hermitian_ok && self.trace_ok && self.psd_ok
    }
}

/// Reports the Hermiticity defect, trace defect and minimum eigenvalue of a
/// candidate, flagging violations of the `DensityMatrix` tolerances.
pub fn validate_density(mat: &ComplexMatrix) -> DensityDiagnostics {
    let hermiticity_defect = mat.hermiticity_defect();
    let trace_defect = if mat.rows() == mat.cols() {
        (mat.trace() - ONE).norm()
    } else {
        f64::INFINITY
    };
    let min_eigenvalue = if hermiticity_defect.is_finite() && hermiticity_defect <= 1e-8 {
        jacobi::jacobi_eigenvalues(mat)
            .first()
            .copied()
            .unwrap_or(0.0)
    } else {
        f64::NEG_INFINITY
    };
    DensityDiagnostics {
        hermiticity_defect,
        trace_defect,
        min_eigenvalue,
        hermitian_ok: hermiticity_defect <= tol::HERMITICITY,
        trace_ok: trace_defect <= tol::TRACE,
        psd_ok: min_eigenvalue >= -tol::PSD,
    }
}

impl DensityMatrix {
    pub fn new(dims: Vec<usize>, mat: ComplexMatrix) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.iter().any(|&d| d < 2) {
            return Err(Error::Shape(format!(
                "subsystem dims {dims:?} must all be ≥ 2"
            )));
        }
        if mat.rows() != total || mat.cols() != total {
            return Err(Error::Shape(format!(
                "dims {dims:?} need a {total}x{total} matrix, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let diag = validate_density(&mat);
        if !diag.all_ok() {
            return Err(Error::InvalidDensity(format!(
                "hermiticity defect {:.3e}, trace defect {:.3e}, min eigenvalue {:.3e}",
                diag.hermiticity_defect, diag.trace_defect, diag.min_eigenvalue
            )));
        }
        Ok(Self { dims, mat })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn diagnostics(&self) -> DensityDiagnostics {
        validate_density(&self.mat)
    }

    /// Eigenvalues, ascending. The matrix is Hermitian by construction.
    pub fn eigenvalues(&self) -> Vec<f64> {
        jacobi::jacobi_eigenvalues(&self.mat)
    }

    /// Purity Tr[ρ²].
    pub fn purity(&self) -> f64 {
        let n = self.mat.rows();
        let mut p = 0.0;
        for i in 0..n {
            for j in 0..n {
                p += (self.mat.get(i, j) * self.mat.get(j, i)).re;
            }
        }
        p
    }

    /// Partial trace keeping the listed subsystems; result dims follow the
    /// kept subsystems in their original order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.dims.len();
        if keep.is_empty() {
            return Err(Error::Shape("keep set must be nonempty".into()));
        }
        let mut keep_sorted = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        if keep_sorted.len() != keep.len() {
            return Err(Error::Shape(format!(
                "duplicate subsystem indices in {keep:?}"
            )));
        }
        for &k in &keep_sorted {
            if k >= n {
                return Err(Error::InvalidSubsystem { index: k, count: n });
            }
        }
        let traced: Vec<usize> = (0..n).filter(|i| !keep_sorted.contains(i)).collect();

        let strides = index_strides(&self.dims);
        let kept_dims: Vec<usize> = keep_sorted.iter().map(|&k| self.dims[k]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&t| self.dims[t]).collect();
        let kept_total: usize = kept_dims.iter().product();
        let traced_total: usize = traced_dims.iter().product();

        // Base offsets contributed by the kept (resp. traced) multi-indices.
        let kept_offsets: Vec<usize> = (0..kept_total)
            .map(|flat| offset_of(flat, &kept_dims, &keep_sorted, &strides))
            .collect();
        let traced_offsets: Vec<usize> = (0..traced_total)
            .map(|flat| offset_of(flat, &traced_dims, &traced, &strides))
            .collect();

        let mut out = ComplexMatrix::zeros(kept_total, kept_total);
        for (i, &oi) in kept_offsets.iter().enumerate() {
            for (j, &oj) in kept_offsets.iter().enumerate() {
                let mut sum = ZERO;
                for &ot in &traced_offsets {
                    sum += self.mat.get(oi + ot, oj + ot);
                }
                out.set(i, j, sum);
            }
        }
        DensityMatrix::new(kept_dims, out)
    }

    /// Partial transpose of a bipartite state with respect to one subsystem.
    /// Returns a raw Hermitian matrix (it is in general not PSD).
    pub fn partial_transpose(&self, part: usize) -> Result<ComplexMatrix> {
        if self.dims.len() != 2 {
            return Err(Error::NotBipartite(self.dims.len()));
        }
        if part > 1 {
            return Err(Error::InvalidSubsystem {
                index: part,
                count: 2,
            });
        }
        let (da, db) = (self.dims[0], self.dims[1]);
        let mut out = ComplexMatrix::zeros(da * db, da * db);
        for i in 0..da {
            for j in 0..da {
                for k in 0..db {
                    for l in 0..db {
                        let v = self.mat.get(i * db + k, j * db + l);
                        if part == 0 {
                            out.set(j * db + k, i * db + l, v);
                        } else {
                            out.set(i * db + l, j * db + k, v);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reorders the subsystems so that subsystem `perm[k]` of `self` becomes
    /// subsystem `k` of the result.
    pub fn permute_subsystems(&self, perm: &[usize]) -> Result<DensityMatrix> {
        let n = self.dims.len();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Shape(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let old_strides = index_strides(&self.dims);
        let new_strides = index_strides(&new_dims);
        let total = self.dim();
        // map flat index in the new ordering to flat index in the old one
        let map: Vec<usize> = (0..total)
            .map(|flat| {
                let mut old = 0;
                let mut rem = flat;
                for (k, &p) in perm.iter().enumerate() {
                    let idx = rem / new_strides[k];
                    rem %= new_strides[k];
                    old += idx * old_strides[p];
                }
                old
            })
            .collect();
        let mut out = ComplexMatrix::zeros(total, total);
        for i in 0..total {
            for j in 0..total {
                out.set(i, j, self.mat.get(map[i], map[j]));
            }
        }
        DensityMatrix::new(new_dims, out)
    }
}

fn index_strides(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    strides
}

/// Offset contributed by the flat multi-index `flat` (over `dims`) placed at
/// the original subsystem positions `positions`.
fn offset_of(flat: usize, dims: &[usize], positions: &[usize], strides: &[usize]) -> usize {
    let mut rem = flat;
    let mut offset = 0;
    for k in (0..dims.len()).rev() {
        let idx = rem % dims[k];
        rem /= dims[k];
        offset += idx * strides[positions[k]];
    }
    offset
}

/// Binomial coefficient as f64 (exact for the small arguments used here).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Symmetric Dicke state of `n` qubits with `j` excitations: the normalized
/// equal superposition of all C(n, j) computational strings with `j` ones.
pub fn dicke(n: usize, j: usize) -> Result<StateVector> {
    if n == 0 || j > n {
        return Err(Error::Domain(format!(
            "excitation count {j} out of range for {n} qubit(s)"
        )));
    }
    let dim = 1usize << n;
    let amp = cx(1.0 / binomial(n, j).sqrt(), 0.0);
    let mut amps = vec![ZERO; dim];
    for (basis, slot) in amps.iter_mut().enumerate() {
        if basis.count_ones() as usize == j {
            *slot = amp;
        }
    }
    StateVector::new(vec![2; n], amps)
}

/// Product state with the first `ones` qubits in |1⟩ and the remaining
/// `n - ones` qubits in |0⟩ (deleted modes are trailing).
pub fn ones_then_zeros(n: usize, ones: usize) -> Result<StateVector> {
    if ones > n || n == 0 {
        return Err(Error::Domain(format!(
            "{ones} ones out of range for {n} qubit(s)"
        )));
    }
    let mut index = 0usize;
    for q in 0..ones {
        index |= 1 << (n - 1 - q);
    }
    let mut sv = StateVector::basis(1 << n, index);
    sv.dims = vec![2; n];
    Ok(sv)
}

/// The Pauli matrices σ₁, σ₂, σ₃ (1-indexed like the physics convention;
/// index 0 gives the identity).
pub fn pauli(i: usize) -> ComplexMatrix {
    let e = match i {
        0 => vec![ONE, ZERO, ZERO, ONE],
        1 => vec![ZERO, ONE, ONE, ZERO],
        2 => vec![ZERO, cx(0.0, -1.0), cx(0.0, 1.0), ZERO],
        3 => vec![ONE, ZERO, ZERO, -ONE],
        _ => panic!("pauli index {i} out of range"),
    };
    ComplexMatrix::new(2, 2, e).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn psi_plus() -> StateVector {
        dicke(2, 1).unwrap()
    }

    fn ket(bits: &[usize]) -> StateVector {
        bits.iter()
            .map(|&b| StateVector::basis(2, b))
            .reduce(|a, b| a.kron(&b))
            .unwrap()
    }

    #[test]
    fn tensor_identity_case() {
        let i2 = ComplexMatrix::identity(2);
        assert!(tensor(&i2, &i2).approx_eq(&ComplexMatrix::identity(4), tol::MAT_EQ));
    }

    #[test]
    fn tensor_sigma_z_with_identity() {
        let m = tensor(&pauli(3), &ComplexMatrix::identity(2));
        let mut expect = ComplexMatrix::zeros(4, 4);
        for (i, d) in [1.0, 1.0, -1.0, -1.0].iter().enumerate() {
            expect.set(i, i, cx(*d, 0.0));
        }
        assert!(m.approx_eq(&expect, tol::MAT_EQ));
    }

    #[test]
    fn tensor_basis_projectors() {
        let p0 = ket(&[0]).to_density().unwrap();
        let p1 = ket(&[1]).to_density().unwrap();
        let m = tensor(p0.matrix(), p1.matrix());
        // single 1 at position (01, 01)
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == 1 && j == 1 { ONE } else { ZERO };
                assert_abs_diff_eq!((m.get(i, j) - want).norm(), 0.0, epsilon = tol::MAT_EQ);
            }
        }
    }

    #[test]
    fn partial_trace_bell_marginal() {
        let rho = psi_plus().to_density().unwrap();
        let a = rho.partial_trace(&[0]).unwrap();
        let half_i = ComplexMatrix::identity(2).scale(cx(0.5, 0.0));
        assert!(a.matrix().approx_eq(&half_i, tol::MAT_EQ));
    }

    #[test]
    fn partial_trace_product_factor() {
        let rho = ket(&[0, 1]).to_density().unwrap();
        let b = rho.partial_trace(&[1]).unwrap();
        let one = ket(&[1]).to_density().unwrap();
        assert!(b.matrix().approx_eq(one.matrix(), tol::MAT_EQ));
    }

    #[test]
    fn partial_trace_rejects_bad_index() {
        let rho = ket(&[0, 1]).to_density().unwrap();
        assert!(rho.partial_trace(&[2]).is_err());
        assert!(rho.partial_trace(&[]).is_err());
    }

    #[test]
    fn partial_transpose_bell_spectrum() {
        // φ+ = (|00⟩ + |11⟩)/√2 has PT eigenvalues {1/2, 1/2, 1/2, −1/2}
        let phi = ket(&[0, 0])
            .add(&ket(&[1, 1]))
            .unwrap()
            .scale(cx(1.0 / 2f64.sqrt(), 0.0));
        let rho = phi.to_density().unwrap();
        let pt = rho.partial_transpose(0).unwrap();
        let eigs = hermitian_eigenvalues(&pt).unwrap();
        let expect = [-0.5, 0.5, 0.5, 0.5];
        for (e, w) in eigs.iter().zip(expect) {
            assert_abs_diff_eq!(e, &w, epsilon = 1e-12);
        }
    }

    #[test]
    fn partial_transpose_product_stays_psd() {
        let rho = ket(&[0, 1]).to_density().unwrap();
        let pt = rho.partial_transpose(0).unwrap();
        let eigs = hermitian_eigenvalues(&pt).unwrap();
        assert!(eigs[0] >= -tol::PSD);
    }

    #[test]
    fn partial_transpose_needs_bipartite() {
        let rho = ket(&[0, 1, 0]).to_density().unwrap();
        assert!(rho.partial_transpose(0).is_err());
    }

    #[test]
    fn eigenvalues_diagonal() {
        let m = ComplexMatrix::new(2, 2, vec![cx(0.25, 0.0), ZERO, ZERO, cx(0.75, 0.0)]).unwrap();
        let eigs = hermitian_eigenvalues(&m).unwrap();
        assert_abs_diff_eq!(eigs[0], 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(eigs[1], 0.75, epsilon = 1e-14);
    }

    #[test]
    fn eigenvalues_2x2_quadratic() {
        let m = ComplexMatrix::new(
            2,
            2,
            vec![cx(0.25, 0.0), cx(0.25, 0.0), cx(0.25, 0.0), ZERO],
        )
        .unwrap();
        let eigs = hermitian_eigenvalues(&m).unwrap();
        let s5 = 5f64.sqrt();
        assert_abs_diff_eq!(eigs[0], (1.0 - s5) / 8.0, epsilon = 1e-13);
        assert_abs_diff_eq!(eigs[1], (1.0 + s5) / 8.0, epsilon = 1e-13);
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let m = ComplexMatrix::new(2, 2, vec![ZERO, ONE, ZERO, ZERO]).unwrap();
        assert!(hermitian_eigenvalues(&m).is_err());
    }

    /// Faddeev–LeVerrier characteristic polynomial plus Durand–Kerner root
    /// finding: an eigenvalue oracle that shares no code with the Jacobi path.
    fn char_poly_roots(m: &ComplexMatrix) -> Vec<f64> {
        let n = m.rows();
        // coefficients of λ^n + c[1] λ^{n-1} + ... + c[n]
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        let mut mk = ComplexMatrix::identity(n);
        for k in 1..=n {
            mk = m.matmul(&mk).unwrap();
            let c = -mk.trace() / cx(k as f64, 0.0);
            for i in 0..n {
                mk.add_assign_at(i, i, c);
            }
            coeffs.push(c);
        }
        // Durand-Kerner iteration on p(z) = Σ coeffs[i] z^{n-i}
        let eval = |z: Complex64| -> Complex64 { coeffs.iter().fold(ZERO, |acc, &c| acc * z + c) };
        let mut roots: Vec<Complex64> = (0..n).map(|i| cx(0.4, 0.9).powu(i as u32 + 1)).collect();
        for _ in 0..200 {
            let prev = roots.clone();
            for i in 0..n {
                let mut denom = ONE;
                for j in 0..n {
                    if j != i {
                        denom *= prev[i] - prev[j];
                    }
                }
                roots[i] = prev[i] - eval(prev[i]) / denom;
            }
        }
        let mut out: Vec<f64> = roots.iter().map(|r| r.re).collect();
        out.sort_by(f64::total_cmp);
        out
    }

    fn random_hermitian(n: usize, rng: &mut StdRng) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, cx(rng.gen_range(-1.0..1.0), 0.0));
            for j in i + 1..n {
                let v = cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m.set(i, j, v);
                m.set(j, i, v.conj());
            }
        }
        m
    }

    #[test]
    fn eigenvalues_match_char_poly_roots_8x8() {
        let mut rng = StdRng::seed_from_u64(7);
        let m = random_hermitian(8, &mut rng);
        let jac = hermitian_eigenvalues(&m).unwrap();
        let roots = char_poly_roots(&m);
        for (a, b) in jac.iter().zip(&roots) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
        let trace: f64 = (0..8).map(|i| m.get(i, i).re).sum();
        assert_abs_diff_eq!(jac.iter().sum::<f64>(), trace, epsilon = 1e-10);
    }

    #[test]
    fn dicke_two_qubit_symmetric() {
        let d = dicke(2, 1).unwrap();
        let expect = ket(&[0, 1])
            .add(&ket(&[1, 0]))
            .unwrap()
            .scale(cx(1.0 / 2f64.sqrt(), 0.0));
        assert_abs_diff_eq!((d.inner(&expect).norm() - 1.0).abs(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn dicke_no_excitations() {
        let d = dicke(3, 0).unwrap();
        assert_abs_diff_eq!(d.amps()[0].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.amps().iter().skip(1).map(|a| a.norm()).sum::<f64>(), 0.0);
    }

    #[test]
    fn dicke_4_2_combinatorics() {
        let d = dicke(4, 2).unwrap();
        let nonzero: Vec<f64> = d
            .amps()
            .iter()
            .map(|a| a.norm())
            .filter(|&x| x > 0.0)
            .collect();
        assert_eq!(nonzero.len(), 6);
        for a in nonzero {
            assert_abs_diff_eq!(a, 1.0 / 6f64.sqrt(), epsilon = 1e-14);
        }
    }

    #[test]
    fn dicke_rejects_out_of_range() {
        assert!(dicke(3, 4).is_err());
    }

    #[test]
    fn dicke_orthonormal_in_excitation() {
        for n in 2..=4usize {
            for j in 0..=n {
                for k in 0..=n {
                    let want = if j == k { 1.0 } else { 0.0 };
                    let overlap = dicke(n, j).unwrap().inner(&dicke(n, k).unwrap()).norm();
                    assert_abs_diff_eq!(overlap, want, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn validate_density_identity() {
        let m = ComplexMatrix::identity(4).scale(cx(0.25, 0.0));
        let d = validate_density(&m);
        assert!(d.all_ok());
        assert_abs_diff_eq!(d.hermiticity_defect, 0.0);
        assert_abs_diff_eq!(d.trace_defect, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn validate_density_flags_bad_trace() {
        let m = ComplexMatrix::identity(4).scale(cx(0.225, 0.0));
        let d = validate_density(&m);
        assert!(!d.trace_ok);
        assert!(d.hermitian_ok);
    }

    #[test]
    fn ones_then_zeros_layout() {
        let sv = ones_then_zeros(3, 2).unwrap();
        // |110⟩ is index 6
        assert_abs_diff_eq!(sv.amps()[6].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn permute_subsystems_roundtrip() {
        let rho = ket(&[0, 1]).to_density().unwrap();
        let swapped = rho.permute_subsystems(&[1, 0]).unwrap();
        let back = swapped.permute_subsystems(&[1, 0]).unwrap();
        assert!(back.matrix().approx_eq(rho.matrix(), tol::MAT_EQ));
        let one_zero = ket(&[1, 0]).to_density().unwrap();
        assert!(swapped.matrix().approx_eq(one_zero.matrix(), tol::MAT_EQ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn partial_trace_of_tensor_recovers_factor(seed in 0u64..1000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let na = 1 + (seed % 2) as usize; // 1 or 2 qubits each side
            let nb = 1 + (seed / 2 % 2) as usize;
            let a = random_density(1 << na, &mut rng);
            let b = random_density(1 << nb, &mut rng);
            let joint = tensor(&a, &b);
            let dims: Vec<usize> = vec![1 << na, 1 << nb];
            let rho = DensityMatrix::new(dims, joint).unwrap();
            let got = rho.partial_trace(&[0]).unwrap();
            prop_assert!(got.matrix().approx_eq(&a, 1e-10));
        }

        #[test]
        fn partial_transpose_is_involution(seed in 0u64..1000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let m = random_density(4, &mut rng);
            let rho = DensityMatrix::new(vec![2, 2], m.clone()).unwrap();
            let pt = rho.partial_transpose(0).unwrap();
            // transpose the same subsystem again through a raw reconstruction
            let rho_pt = DensityMatrix { dims: vec![2, 2], mat: pt };
            let back = rho_pt.partial_transpose(0).unwrap();
            prop_assert!(back.approx_eq(&m, 0.0));
        }

        #[test]
        fn partial_transpose_trace_preserved(seed in 0u64..1000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let m = random_density(4, &mut rng);
            let rho = DensityMatrix::new(vec![2, 2], m).unwrap();
            let pt = rho.partial_transpose(1).unwrap();
            let eigs = hermitian_eigenvalues(&pt).unwrap();
            prop_assert!((eigs.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }

    /// Random full-rank density matrix from a Ginibre-like construction.
    fn random_density(n: usize, rng: &mut StdRng) -> ComplexMatrix {
        let mut g = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
        let h = g.matmul(&g.adjoint()).unwrap();
        let tr = h.trace().re;
        h.scale(cx(1.0 / tr, 0.0))
    }
}
