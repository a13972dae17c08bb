//! Correlation measures on bipartite and multiqubit density matrices:
//! negativity and logarithmic negativity, quantum discord backed by a
//! derivative-free optimizer over projective measurement bases, and the
//! geometric discord in both its Bloch closed form and a definition-based
//! minimization oracle.
//!
//! Conventions: all entropies and discords are in bits (base-2 logarithms);
//! for bipartite states the first subsystem is A, the second B; the partial
//! transpose in the negativity is taken with respect to A.

#![allow(clippy::needless_range_loop)]

mod discord;
pub mod optim;

use num_complex::Complex64;

use crate::qmat::{cx, hermitian_eigenvalues, pauli, tensor, ComplexMatrix, DensityMatrix};
use crate::{Error, Result};

pub use discord::{average_discord, bipartite_discord_multi, discord, DiscordResult};

/// Frozen fine-grid value of the discord of the deleter output at
/// |α|² = 1/2 (measured side B): a 721×1441 (θ, φ) scan of the conditional
/// entropy, evaluated once and stored as the regression reference for the
/// optimizer-backed path.
pub const DELETION_HALF_DISCORD_ORACLE: f64 = 0.2761860558537991;

/// Entropy contribution of one eigenvalue/probability, in bits.
/// Small negatives (solver noise) contribute zero so logarithms never NaN.
#[inline]
pub(crate) fn plog2p(p: f64) -> f64 {
    if p <= 0.0 {
        debug_assert!(p >= -1e-8, "unexpectedly negative probability {p}");
        return 0.0;
    }
    -p * p.log2()
}

pub(crate) fn entropy_from_eigs(eigs: &[f64]) -> f64 {
    eigs.iter().map(|&p| plog2p(p)).sum()
}

/// Von Neumann entropy in bits: −Σ λᵢ log₂ λᵢ with 0·log 0 = 0.
pub fn entropy(rho: &DensityMatrix) -> f64 {
    entropy_from_eigs(&rho.eigenvalues())
}

/// Negativity and logarithmic negativity of a bipartite state.
///
/// N is the absolute sum of the negative eigenvalues of the partial
/// transpose with respect to the first subsystem, equal to
/// (‖ρ^{T_A}‖₁ − 1)/2; E_N = log₂(2N + 1). N vanishes exactly when the
/// partial transpose is PSD.
pub fn negativity(rho: &DensityMatrix) -> Result<(f64, f64)> {
    let pt = rho.partial_transpose(0)?;
    let eigs = hermitian_eigenvalues(&pt)?;
    let neg_sum: f64 = eigs.iter().filter(|&&e| e < 0.0).map(|e| -e).sum();
    Ok((neg_sum, (2.0 * neg_sum + 1.0).log2()))
}

/// Local Bloch vectors and correlation matrix of a two-qubit state:
/// xᵢ = Tr[ρ(σᵢ⊗I)], yⱼ = Tr[ρ(I⊗σⱼ)], tᵢⱼ = Tr[ρ(σᵢ⊗σⱼ)].
#[derive(Clone, Copy, Debug)]
pub struct BlochDecomposition {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl BlochDecomposition {
    /// ρ = ¼(I₄ + Σxᵢσᵢ⊗I + ΣyⱼI⊗σⱼ + Σtᵢⱼσᵢ⊗σⱼ).
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(4);
        let eye = ComplexMatrix::identity(2);
        for i in 0..3 {
            m = m
                .add(&tensor(&pauli(i + 1), &eye).scale(cx(self.x[i], 0.0)))
                .unwrap();
            m = m
                .add(&tensor(&eye, &pauli(i + 1)).scale(cx(self.y[i], 0.0)))
                .unwrap();
            for j in 0..3 {
                m = m
                    .add(&tensor(&pauli(i + 1), &pauli(j + 1)).scale(cx(self.t[i][j], 0.0)))
                    .unwrap();
            }
        }
        m.scale(cx(0.25, 0.0))
    }
}

fn expect(rho: &DensityMatrix, op: &ComplexMatrix) -> f64 {
    let n = rho.dim();
    let mut acc = 0.0;
    for r in 0..n {
        for k in 0..n {
            acc += (rho.matrix().get(r, k) * op.get(k, r)).re;
        }
    }
    acc
}

/// Bloch decomposition of a two-qubit state.
pub fn bloch_decompose(rho: &DensityMatrix) -> Result<BlochDecomposition> {
    if rho.dims() != [2, 2] {
        return Err(Error::Shape(format!(
            "Bloch decomposition needs a two-qubit state, got dims {:?}",
            rho.dims()
        )));
    }
    let eye = ComplexMatrix::identity(2);
    let mut out = BlochDecomposition {
        x: [0.0; 3],
        y: [0.0; 3],
        t: [[0.0; 3]; 3],
    };
    for i in 0..3 {
        out.x[i] = expect(rho, &tensor(&pauli(i + 1), &eye));
        out.y[i] = expect(rho, &tensor(&eye, &pauli(i + 1)));
        for j in 0..3 {
            out.t[i][j] = expect(rho, &tensor(&pauli(i + 1), &pauli(j + 1)));
        }
    }
    Ok(out)
}

/// Geometric discord of a two-qubit state via the Bloch closed form
/// DG = 2·Tr[S] − 2·k_max with S = ¼(x xᵀ + t tᵀ), equivalently
/// ½(‖x‖² + ‖t‖² − 4 k_max).
pub fn geometric_discord(rho: &DensityMatrix) -> Result<f64> {
    let b = bloch_decompose(rho)?;
    let mut s = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut ttt = 0.0;
            for k in 0..3 {
                ttt += b.t[i][k] * b.t[j][k];
            }
            s[i][j] = 0.25 * (b.x[i] * b.x[j] + ttt);
        }
    }
    let entries: Vec<Complex64> = s.iter().flatten().map(|&v| cx(v, 0.0)).collect();
    let sm = ComplexMatrix::new(3, 3, entries).unwrap();
    let eigs = hermitian_eigenvalues(&sm)?;
    let trace_s: f64 = eigs.iter().sum();
    let k_max = eigs[2];
    Ok(2.0 * trace_s - 2.0 * k_max)
}

/// Geometric discord by its definition: twice the squared Hilbert–Schmidt
/// distance to the nearest classical-quantum state, minimized over
/// single-qubit measurement bases on A. For a fixed basis the nearest CQ
/// state is the dephased ρ, so the objective reduces to 2‖ρ − Π_A(ρ)‖₂².
/// Cross-checks the closed form; the two must agree within
/// [`crate::tol::DG_ORACLE`].
pub fn geometric_discord_oracle(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<f64> {
    if rho.dims() != [2, 2] {
        return Err(Error::Shape(format!(
            "geometric discord needs a two-qubit state, got dims {:?}",
            rho.dims()
        )));
    }
    let objective = |theta: f64, phi: f64| -> f64 {
        let (u0, u1) = basis_pair(theta, phi);
        // For a qubit A the dephasing residual is the single cross block,
        // so 2‖ρ − Π(ρ)‖² = 4‖(⟨u₀|⊗I) ρ (|u₁⟩⊗I)‖²_F.
        let mut acc = 0.0;
        for s in 0..2 {
            for t in 0..2 {
                let mut b = cx(0.0, 0.0);
                for k in 0..2 {
                    for l in 0..2 {
                        b += u0[k].conj() * u1[l] * rho.matrix().get(k * 2 + s, l * 2 + t);
                    }
                }
                acc += b.norm_sqr();
            }
        }
        4.0 * acc
    };
    let search = minimize_over_single_qubit_bases(objective, cfg);
    Ok(search.value)
}

/// Measurement basis vectors on a qubit from Bloch angles:
/// |v₀⟩ = (cos θ/2, e^{iφ} sin θ/2), |v₁⟩ its orthogonal complement.
pub(crate) fn basis_pair(theta: f64, phi: f64) -> ([Complex64; 2], [Complex64; 2]) {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = cx(0.0, phi).exp();
    ([cx(c, 0.0), e * s], [cx(s, 0.0), -(e * c)])
}

/// Outcome of the shared coarse-grid + Nelder–Mead driver.
pub(crate) struct AngleSearch {
    pub value: f64,
    pub angles: [f64; 2],
    pub evals: usize,
    /// Best value seen on the coarse grid alone, before refinement.
    pub grid_value: f64,
}

/// Shared coarse-grid + Nelder–Mead driver over (θ, φ).
pub(crate) fn minimize_over_single_qubit_bases<F: Fn(f64, f64) -> f64>(
    objective: F,
    cfg: &OptimizerConfig,
) -> AngleSearch {
    use std::f64::consts::PI;
    let nt = cfg.grid_theta.max(1);
    let np = cfg.grid_phi.max(1);
    let mut evals = 0usize;
    let mut cells: Vec<(f64, usize, [f64; 2])> = Vec::with_capacity(nt * np);
    for it in 0..nt {
        let theta = if nt == 1 {
            0.0
        } else {
            PI * it as f64 / (nt - 1) as f64
        };
        for ip in 0..np {
            let phi = 2.0 * PI * ip as f64 / np as f64;
            evals += 1;
            cells.push((objective(theta, phi), it * np + ip, [theta, phi]));
        }
    }
    cells.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let grid_value = cells[0].0;
    let mut best = (cells[0].0, cells[0].2);
    let step_t = PI / (nt.max(2) - 1) as f64;
    let step_p = 2.0 * PI / np as f64;
    let nm = optim::NelderMead {
        max_iters: cfg.refine_iters,
        tol: cfg.tol_bits,
    };
    for (start_idx, cell) in cells.iter().take(cfg.starts).enumerate() {
        let jitter = start_jitter(cfg.seed, start_idx as u64, 2);
        let steps = [
            step_t * 0.5 * (0.6 + 0.4 * jitter[0]),
            step_p * 0.5 * (0.6 + 0.4 * jitter[1]),
        ];
        let out = nm.minimize(|x| objective(x[0], x[1]), &cell.2, &steps);
        evals += out.evals;
        if out.value < best.0 {
            best = (out.value, [out.x[0], out.x[1]]);
        }
    }
    AngleSearch {
        value: best.0,
        angles: best.1,
        evals,
        grid_value,
    }
}

/// Deterministic per-start jitter in [0, 1), derived from (seed, start index).
pub(crate) fn start_jitter(seed: u64, start: u64, n: usize) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng =
        rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ (start + 1).wrapping_mul(0x9e3779b97f4a7c15));
    (0..n).map(|_| rng.gen::<f64>()).collect()
}

/// Parameterized complete orthonormal set of rank-one projectors on a
/// d-dimensional subsystem.
#[derive(Clone, Debug)]
pub struct MeasurementBasis {
    pub dim: usize,
    /// One d×d projector per outcome.
    pub projectors: Vec<ComplexMatrix>,
    /// Real angles that generated the basis.
    pub parameters: Vec<f64>,
}

impl MeasurementBasis {
    /// Single-qubit basis from Bloch angles (θ, φ).
    pub fn from_bloch_angles(theta: f64, phi: f64) -> Self {
        let (v0, v1) = basis_pair(theta, phi);
        Self::from_columns(2, &[v0.to_vec(), v1.to_vec()], vec![theta, phi])
    }

    /// Basis from a general unitary given as Givens angles applied to the
    /// computational basis; d(d−1)/2 rotations, two angles each.
    pub fn from_givens_angles(dim: usize, angles: &[f64]) -> Self {
        let u = optim::givens_compose(dim, angles);
        let cols: Vec<Vec<Complex64>> = (0..dim)
            .map(|c| (0..dim).map(|r| u[r * dim + c]).collect())
            .collect();
        Self::from_columns(dim, &cols, angles.to_vec())
    }

    fn from_columns(dim: usize, cols: &[Vec<Complex64>], parameters: Vec<f64>) -> Self {
        let projectors = cols
            .iter()
            .map(|v| {
                let mut p = ComplexMatrix::zeros(dim, dim);
                for r in 0..dim {
                    for c in 0..dim {
                        p.set(r, c, v[r] * v[c].conj());
                    }
                }
                p
            })
            .collect();
        Self {
            dim,
            projectors,
            parameters,
        }
    }

    /// Checks Hermiticity, idempotence, pairwise orthogonality and
    /// completeness of the projectors within 1e-10.
    pub fn is_valid(&self) -> bool {
        let d = self.dim;
        let mut sum = ComplexMatrix::zeros(d, d);
        for p in &self.projectors {
            if p.hermiticity_defect() > 1e-10 {
                return false;
            }
            let sq = p.matmul(p).unwrap();
            if !sq.approx_eq(p, 1e-10) {
                return false;
            }
            sum = sum.add(p).unwrap();
        }
        for (i, p) in self.projectors.iter().enumerate() {
            for q in self.projectors.iter().skip(i + 1) {
                if p.matmul(q).unwrap().frobenius_norm() > 1e-10 {
                    return false;
                }
            }
        }
        sum.approx_eq(&ComplexMatrix::identity(d), 1e-10)
    }
}

/// Settings for the discord minimizers. All counts must be ≥ 1 and the
/// tolerance positive; identical configs reproduce identical results bit
/// for bit.
#[derive(Clone, Copy, Debug)]
pub struct OptimizerConfig {
    /// Coarse grid resolution in θ for single-qubit measured sides.
    pub grid_theta: usize,
    /// Coarse grid resolution in φ for single-qubit measured sides.
    pub grid_phi: usize,
    /// Per-qubit product-seed resolution in θ (multiqubit measured sides).
    pub seed_theta: usize,
    /// Per-qubit product-seed resolution in φ (multiqubit measured sides).
    pub seed_phi: usize,
    /// Multistart count: how many best grid cells seed local refinement.
    pub starts: usize,
    /// Iteration cap for each local refinement.
    pub refine_iters: usize,
    /// Convergence tolerance on the objective, in bits.
    pub tol_bits: f64,
    /// Seed for the deterministic start-point jitter.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_theta: 25,
            grid_phi: 49,
            seed_theta: 9,
            seed_phi: 17,
            starts: 5,
            refine_iters: 200,
            tol_bits: 1e-6,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_theta < 1
            || self.grid_phi < 1
            || self.seed_theta < 1
            || self.seed_phi < 1
            || self.starts < 1
            || self.refine_iters < 1
        {
            return Err(Error::Config("all optimizer counts must be ≥ 1".into()));
        }
        if self.tol_bits.is_nan() || self.tol_bits <= 0.0 {
            return Err(Error::Config("optimizer tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Per-state record of the three correlation measures with optimizer
/// diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct CorrelationReport {
    pub negativity: f64,
    pub log_negativity: f64,
    pub discord: f64,
    pub geometric_discord: f64,
    pub optimizer_evaluations: usize,
    pub achieved_tolerance: f64,
}

/// Computes all measures of a two-qubit state. The discord measures
/// subsystem B, matching the conditional-entropy convention.
pub fn correlation_report(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<CorrelationReport> {
    if rho.dims() != [2, 2] {
        return Err(Error::Shape(format!(
            "correlation report needs a two-qubit state, got dims {:?}",
            rho.dims()
        )));
    }
    let (neg, log_neg) = negativity(rho)?;
    let d = discord(rho, 1, cfg)?;
    let dg = geometric_discord(rho)?;
    Ok(CorrelationReport {
        negativity: neg,
        log_negativity: log_neg,
        discord: d.discord,
        geometric_discord: dg,
        optimizer_evaluations: d.evaluations,
        achieved_tolerance: d.achieved_tolerance,
    })
}
