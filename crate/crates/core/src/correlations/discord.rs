//! Quantum discord via minimization over projective measurement bases.
//!
//! Single-qubit measured sides use a coarse (θ, φ) grid followed by
//! Nelder–Mead refinement from the best cells. Multiqubit measured sides
//! (two or three qubits) are seeded with every tensor product of
//! single-qubit grid bases and then refined over a general d-dimensional
//! unitary parameterized by d(d−1)/2 complex Givens rotations; the reported
//! value is an upper bound on the true minimum.

use num_complex::Complex64;
use rayon::prelude::*;

use super::optim::{givens_compose, givens_count, givens_decompose, NelderMead};
use super::{
    basis_pair, entropy_from_eigs, minimize_over_single_qubit_bases, plog2p, start_jitter,
    OptimizerConfig,
};
use crate::qmat::{hermitian_eigenvalues, ComplexMatrix, DensityMatrix};
use crate::tol;
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Discord value with the decomposition and optimizer diagnostics that
/// produced it. `discord = mutual − classical` up to the achieved tolerance;
/// the minimization result is an upper bound, so `discord` is a lower-bounded
/// estimate no worse than `-achieved_tolerance`.
#[derive(Clone, Debug)]
pub struct DiscordResult {
    pub discord: f64,
    pub classical: f64,
    pub mutual: f64,
    pub evaluations: usize,
    pub achieved_tolerance: f64,
    /// Set when no refinement start improved on its grid seed.
    pub degenerate: bool,
    /// Angles of the best measurement found: (θ, φ) for a single-qubit
    /// side, Givens angles for a multiqubit side.
    pub optimal_parameters: Vec<f64>,
}

/// Conditional 2×2 state entropy contribution, weighted by its outcome
/// probability. Outcomes below the probability floor contribute zero.
#[inline]
fn two_level_entropy_term(m00: Complex64, m01: Complex64, m11: Complex64) -> f64 {
    let p = m00.re + m11.re;
    if p <= tol::PROB_FLOOR {
        return 0.0;
    }
    let mid = 0.5 * (m00.re + m11.re);
    let r = (0.25 * (m00.re - m11.re) * (m00.re - m11.re) + m01.norm_sqr()).sqrt();
    p * (plog2p((mid - r) / p) + plog2p((mid + r) / p))
}

/// Average conditional entropy Σᵢ pᵢ S(ρ_{other|i}) for a rank-one
/// measurement {|u₀⟩, |u₁⟩} on the 2-dimensional `measured` subsystem.
fn conditional_entropy(
    rho: &ComplexMatrix,
    d_other: usize,
    measured: usize,
    theta: f64,
    phi: f64,
) -> f64 {
    let (u0, u1) = basis_pair(theta, phi);
    let mut total = 0.0;
    for u in [&u0, &u1] {
        let mut cond = vec![ZERO; d_other * d_other];
        for s in 0..d_other {
            for t in 0..d_other {
                let mut acc = ZERO;
                for k in 0..2 {
                    for l in 0..2 {
                        let (row, col) = if measured == 1 {
                            (s * 2 + k, t * 2 + l)
                        } else {
                            (k * d_other + s, l * d_other + t)
                        };
                        acc += u[k].conj() * u[l] * rho.get(row, col);
                    }
                }
                cond[s * d_other + t] = acc;
            }
        }
        let p: f64 = (0..d_other).map(|i| cond[i * d_other + i].re).sum();
        if p <= tol::PROB_FLOOR {
            continue;
        }
        if d_other == 2 {
            total += two_level_entropy_term(cond[0], cond[1], cond[3]);
        } else {
            let m =
                ComplexMatrix::new(d_other, d_other, cond.iter().map(|z| z / p).collect()).unwrap();
            let eigs = hermitian_eigenvalues(&m).unwrap();
            total += p * entropy_from_eigs(&eigs);
        }
    }
    total
}

/// Quantum discord of a bipartite state, measuring the 2-dimensional
/// subsystem `measured` (0 or 1).
///
/// Returns (discord, classical correlations, mutual information) inside a
/// [`DiscordResult`]: I = S(ρ_A) + S(ρ_B) − S(ρ_AB),
/// J = S(ρ_other) − min over bases of Σ pᵢ S(ρ_{other|i}), D = I − J.
/// The minimization runs over single-qubit bases parameterized by Bloch
/// angles (θ, φ).
pub fn discord(
    rho: &DensityMatrix,
    measured: usize,
    cfg: &OptimizerConfig,
) -> Result<DiscordResult> {
    cfg.validate()?;
    if rho.dims().len() != 2 {
        return Err(Error::NotBipartite(rho.dims().len()));
    }
    if measured > 1 {
        return Err(Error::InvalidSubsystem {
            index: measured,
            count: 2,
        });
    }
    if rho.dims()[measured] != 2 {
        return Err(Error::UnsupportedSize(format!(
            "measured subsystem must be a qubit, got dimension {}",
            rho.dims()[measured]
        )));
    }
    let other = 1 - measured;
    let d_other = rho.dims()[other];

    let s_joint = super::entropy(rho);
    let s0 = super::entropy(&rho.partial_trace(&[0])?);
    let s1 = super::entropy(&rho.partial_trace(&[1])?);
    let mutual = s0 + s1 - s_joint;
    let s_other = if other == 0 { s0 } else { s1 };

    let mat = rho.matrix();
    let objective = |theta: f64, phi: f64| conditional_entropy(mat, d_other, measured, theta, phi);
    let search = minimize_over_single_qubit_bases(objective, cfg);

    let classical = s_other - search.value;
    Ok(DiscordResult {
        discord: mutual - classical,
        classical,
        mutual,
        evaluations: search.evals,
        achieved_tolerance: cfg.tol_bits,
        degenerate: search.value >= search.grid_value - 1e-15,
        optimal_parameters: search.angles.to_vec(),
    })
}

/// Bipartite discord D(i|ī) of an N-qubit state for the partition
/// (kept qubit i, measured complement ī): the minimum over rank-one
/// projective measurements on ī of S(ρ_ī) + S(ρ_{i|ī}) − S(ρ).
///
/// For N = 2 this reduces exactly to [`discord`] with the measured side
/// being the other qubit. For N ∈ {3, 4} the measured side has 2 or 3
/// qubits; the search seeds with all tensor products of single-qubit grid
/// bases and refines over general unitaries, so the reported value is an
/// upper bound on the true minimum.
pub fn bipartite_discord_multi(
    rho: &DensityMatrix,
    kept: usize,
    cfg: &OptimizerConfig,
) -> Result<DiscordResult> {
    cfg.validate()?;
    let n = rho.dims().len();
    if rho.dims().iter().any(|&d| d != 2) {
        return Err(Error::UnsupportedSize(format!(
            "multiqubit discord needs qubit subsystems, got dims {:?}",
            rho.dims()
        )));
    }
    if !(2..=4).contains(&n) {
        return Err(Error::UnsupportedSize(format!(
            "multiqubit discord supports 2 to 4 qubits (measurements up to three qubits), got {n}"
        )));
    }
    if kept >= n {
        return Err(Error::InvalidSubsystem {
            index: kept,
            count: n,
        });
    }
    if n == 2 {
        return discord(rho, 1 - kept, cfg);
    }

    let mut perm = vec![kept];
    perm.extend((0..n).filter(|&q| q != kept));
    let rp = rho.permute_subsystems(&perm)?;

    let measured: Vec<usize> = (1..n).collect();
    let s_joint = super::entropy(rho);
    let s_meas = super::entropy(&rp.partial_trace(&measured)?);
    let s_kept = super::entropy(&rp.partial_trace(&[0])?);
    let mutual = s_kept + s_meas - s_joint;

    let m_qubits = n - 1;
    let d_meas = 1usize << m_qubits;
    let flat = rp.matrix().entries();

    // product-basis seeding over the per-qubit (θ, φ) grid
    let grid = product_grid(cfg);
    let g = grid.len();
    let seeds = product_seed_search(flat, m_qubits, &grid, cfg.starts);
    let mut evals = g.pow(m_qubits as u32);

    // refinement over general unitaries in Givens-angle space; Nelder–Mead
    // never returns a value above its own start, so each start's outcome is
    // an upper bound on the product-grid seed that spawned it
    let nm = NelderMead {
        max_iters: cfg.refine_iters,
        tol: cfg.tol_bits,
    };
    let k_rot = givens_count(d_meas);
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut improved = false;
    for (start_idx, &(seed_value, seed_flat)) in seeds.iter().enumerate() {
        let u = product_unitary(&grid, m_qubits, g, seed_flat);
        let angles0 = givens_decompose(d_meas, &u);
        let jitter = start_jitter(cfg.seed, start_idx as u64, 2 * k_rot);
        let steps: Vec<f64> = jitter.iter().map(|j| 0.08 * (0.6 + 0.4 * j)).collect();
        let out = nm.minimize(
            |angles| general_objective(flat, d_meas, &givens_compose(d_meas, angles)),
            &angles0,
            &steps,
        );
        evals += out.evals;
        if out.value < seed_value - 1e-15 {
            improved = true;
        }
        if best.as_ref().is_none_or(|(v, _)| out.value < *v) {
            best = Some((out.value, out.x));
        }
    }
    let (best_value, best_angles) = best.expect("at least one refinement start");

    let classical = s_kept - best_value;
    Ok(DiscordResult {
        discord: s_meas - s_joint + best_value,
        classical,
        mutual,
        evaluations: evals,
        achieved_tolerance: cfg.tol_bits,
        degenerate: !improved,
        optimal_parameters: best_angles,
    })
}

/// Average bipartite discord over all kept-qubit choices:
/// δ = (1/N) Σᵢ D(i|ī).
pub struct AverageDiscord {
    pub value: f64,
    pub per_mode: Vec<DiscordResult>,
}

pub fn average_discord(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<AverageDiscord> {
    let n = rho.dims().len();
    let per_mode: Vec<DiscordResult> = (0..n)
        .map(|i| bipartite_discord_multi(rho, i, cfg))
        .collect::<Result<_>>()?;
    let value = per_mode.iter().map(|d| d.discord).sum::<f64>() / n as f64;
    Ok(AverageDiscord { value, per_mode })
}

/// Per-qubit measurement grid: seed_theta × seed_phi bases, each stored as
/// its two orthonormal outcome vectors.
fn product_grid(cfg: &OptimizerConfig) -> Vec<[[Complex64; 2]; 2]> {
    use std::f64::consts::PI;
    let nt = cfg.seed_theta.max(1);
    let np = cfg.seed_phi.max(1);
    let mut out = Vec::with_capacity(nt * np);
    for it in 0..nt {
        let theta = if nt == 1 {
            0.0
        } else {
            PI * it as f64 / (nt - 1) as f64
        };
        for ip in 0..np {
            let phi = 2.0 * PI * ip as f64 / np as f64;
            let (v0, v1) = basis_pair(theta, phi);
            out.push([v0, v1]);
        }
    }
    out
}

/// Contracts the last qubit of a (dim × dim) operator against |u⟩,
/// writing the (dim/2 × dim/2) result into `out`.
#[inline]
fn contract_last_qubit(input: &[Complex64], dim: usize, u: &[Complex64; 2], out: &mut [Complex64]) {
    let h = dim / 2;
    let u0c = u[0].conj();
    let u1c = u[1].conj();
    for r in 0..h {
        let row0 = (r * 2) * dim;
        let row1 = (r * 2 + 1) * dim;
        for c in 0..h {
            let a = input[row0 + c * 2] * u[0] + input[row0 + c * 2 + 1] * u[1];
            let b = input[row1 + c * 2] * u[0] + input[row1 + c * 2 + 1] * u[1];
            out[r * h + c] = u0c * a + u1c * b;
        }
    }
}

/// Entropy term of the 2×2 conditional obtained by contracting the last
/// qubit of a 4×4 operator (kept ⊗ qubit) against |u⟩, without allocating.
#[inline]
fn leaf_entropy_term(c: &[Complex64], u: &[Complex64; 2]) -> f64 {
    let u0c = u[0].conj();
    let u1c = u[1].conj();
    let m00 = u0c * (c[0] * u[0] + c[1] * u[1]) + u1c * (c[4] * u[0] + c[5] * u[1]);
    let m01 = u0c * (c[2] * u[0] + c[3] * u[1]) + u1c * (c[6] * u[0] + c[7] * u[1]);
    let m11 = u0c * (c[10] * u[0] + c[11] * u[1]) + u1c * (c[14] * u[0] + c[15] * u[1]);
    two_level_entropy_term(m00, m01, m11)
}

/// Exhaustive product-basis search; returns up to `k` best (value, flat
/// grid index) pairs, globally ordered. The flat index encodes the grid
/// choice per measured qubit, first qubit major.
fn product_seed_search(
    flat: &[Complex64],
    m_qubits: usize,
    grid: &[[[Complex64; 2]; 2]],
    k: usize,
) -> Vec<(f64, usize)> {
    let g = grid.len();
    let locals: Vec<Vec<(f64, usize)>> = (0..g)
        .into_par_iter()
        .map(|g_last| {
            let mut top: Vec<(f64, usize)> = Vec::with_capacity(k + 1);
            match m_qubits {
                2 => {
                    let dim = 8;
                    let mut b = [vec![ZERO; 16], vec![ZERO; 16]];
                    contract_last_qubit(flat, dim, &grid[g_last][0], &mut b[0]);
                    contract_last_qubit(flat, dim, &grid[g_last][1], &mut b[1]);
                    for g1 in 0..g {
                        let mut obj = 0.0;
                        for bb in &b {
                            for u in &grid[g1] {
                                obj += leaf_entropy_term(bb, u);
                            }
                        }
                        push_top(&mut top, k, obj, g1 * g + g_last);
                    }
                }
                3 => {
                    let dim = 16;
                    let mut b = [vec![ZERO; 64], vec![ZERO; 64]];
                    contract_last_qubit(flat, dim, &grid[g_last][0], &mut b[0]);
                    contract_last_qubit(flat, dim, &grid[g_last][1], &mut b[1]);
                    let mut c = vec![vec![ZERO; 16]; 4];
                    for g2 in 0..g {
                        for s3 in 0..2 {
                            for s2 in 0..2 {
                                contract_last_qubit(&b[s3], 8, &grid[g2][s2], &mut c[s3 * 2 + s2]);
                            }
                        }
                        for g1 in 0..g {
                            let mut obj = 0.0;
                            for cc in &c {
                                for u in &grid[g1] {
                                    obj += leaf_entropy_term(cc, u);
                                }
                            }
                            push_top(&mut top, k, obj, (g1 * g + g2) * g + g_last);
                        }
                    }
                }
                _ => unreachable!("measured side limited to 2 or 3 qubits"),
            }
            top
        })
        .collect();

    let mut merged: Vec<(f64, usize)> = locals.into_iter().flatten().collect();
    merged.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    merged.truncate(k.max(1));
    merged
}

fn push_top(top: &mut Vec<(f64, usize)>, k: usize, value: f64, idx: usize) {
    let pos = top
        .binary_search_by(|probe| probe.0.total_cmp(&value).then(probe.1.cmp(&idx)))
        .unwrap_or_else(|p| p);
    if pos < k.max(1) {
        top.insert(pos, (value, idx));
        top.truncate(k.max(1));
    }
}

/// Builds the (d × d) product-basis unitary for a flat grid index; column
/// order matches the measured-side computational flattening (first measured
/// qubit major).
fn product_unitary(
    grid: &[[[Complex64; 2]; 2]],
    m_qubits: usize,
    g: usize,
    flat: usize,
) -> Vec<Complex64> {
    let mut choices = vec![0usize; m_qubits];
    let mut rem = flat;
    for q in (0..m_qubits).rev() {
        choices[q] = rem % g;
        rem /= g;
    }
    let d = 1usize << m_qubits;
    let mut u = vec![ZERO; d * d];
    for col in 0..d {
        for row in 0..d {
            let mut amp = Complex64::new(1.0, 0.0);
            for q in 0..m_qubits {
                let outcome = (col >> (m_qubits - 1 - q)) & 1;
                let bit = (row >> (m_qubits - 1 - q)) & 1;
                amp *= grid[choices[q]][outcome][bit];
            }
            u[row * d + col] = amp;
        }
    }
    u
}

/// Σ over basis columns of the probability-weighted conditional entropy,
/// for ρ laid out as (kept qubit ⊗ measured block of dimension d).
fn general_objective(flat: &[Complex64], d: usize, u: &[Complex64]) -> f64 {
    let dim = 2 * d;
    let mut total = 0.0;
    for col in 0..d {
        let mut m00 = ZERO;
        let mut m01 = ZERO;
        let mut m11 = ZERO;
        for k in 0..d {
            let uk = u[k * d + col].conj();
            for l in 0..d {
                let w = uk * u[l * d + col];
                m00 += w * flat[k * dim + l];
                m01 += w * flat[k * dim + (d + l)];
                m11 += w * flat[(d + k) * dim + (d + l)];
            }
        }
        total += two_level_entropy_term(m00, m01, m11);
    }
    total
}
