//! Output states of the cloning and deleting machines, constructed directly
//! from their traced-out density-matrix forms.
//!
//! Covered machines: the universal 1→2 copier (machine parameter ξ), the
//! state-dependent 2→1 deleter, the two composite orderings of those, the
//! universal 1→N cloner (where the joint pure state with the machine
//! register is cheap and enables cross-checks), and the N→M / N→1 deleters
//! acting on cloner output. Machine registers, where represented, carry an
//! (N+2)-dimensional basis: R₀..R_{N−1} plus the two deleter flags, all
//! orthonormal.
//!
//! States are built term by term from the traced-out forms rather than by
//! simulating machine unitaries with ancillas; partial-trace agreement checks
//! stand in for unitary simulation. Composite pipelines with no displayed
//! output form are rejected rather than extrapolated.

use num_complex::Complex64;

use crate::qmat::{
    binomial, cx, dicke, ones_then_zeros, ComplexMatrix, DensityMatrix, QubitState, StateVector,
};
use crate::{Error, Result};

const RANGE_SLACK: f64 = 1e-12;

/// Machine parameter ξ of the universal copier, admissible on
/// 1/6 ≤ ξ ≤ 1/2; η = 1 − 2ξ.
#[derive(Clone, Copy, Debug)]
pub struct MachineParams {
    xi: f64,
}

impl MachineParams {
    pub const XI_MIN: f64 = 1.0 / 6.0;
    pub const XI_MAX: f64 = 0.5;

    pub fn new(xi: f64) -> Result<Self> {
        if !(Self::XI_MIN - RANGE_SLACK..=Self::XI_MAX + RANGE_SLACK).contains(&xi) {
            return Err(Error::Domain(format!(
                "machine parameter ξ = {xi} outside [1/6, 1/2]"
            )));
        }
        Ok(Self { xi })
    }

    /// From the cloning fidelity F = 1 − ξ, F ∈ [1/2, 5/6].
    pub fn from_fidelity(f_cl: f64) -> Result<Self> {
        if !(0.5 - RANGE_SLACK..=5.0 / 6.0 + RANGE_SLACK).contains(&f_cl) {
            return Err(Error::Domain(format!(
                "cloning fidelity {f_cl} outside [1/2, 5/6]"
            )));
        }
        Self::new(1.0 - f_cl)
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn eta(&self) -> f64 {
        1.0 - 2.0 * self.xi
    }

    /// Cloning fidelity 1 − ξ; input independent.
    pub fn fidelity(&self) -> f64 {
        1.0 - self.xi
    }
}

fn two_qubit(m: ComplexMatrix) -> DensityMatrix {
    DensityMatrix::new(vec![2, 2], m).expect("machine output must be a valid density matrix")
}

fn ket00() -> StateVector {
    StateVector::basis(2, 0).kron(&StateVector::basis(2, 0))
}

fn ket10() -> StateVector {
    StateVector::basis(2, 1).kron(&StateVector::basis(2, 0))
}

fn ket11() -> StateVector {
    StateVector::basis(2, 1).kron(&StateVector::basis(2, 1))
}

fn psi_plus() -> StateVector {
    dicke(2, 1).unwrap()
}

/// Output of the universal 1→2 copier on |ψ⟩ = α|0⟩ + β|1⟩:
///
/// ρ = (1−2ξ)(|α|²|00⟩⟨00| + |β|²|11⟩⟨11|) + 2ξ|ψ⁺⟩⟨ψ⁺|
///   + (1−2ξ)/√2 · (αβ̄|00⟩⟨ψ⁺| + αβ̄|ψ⁺⟩⟨11| + h.c.)
///
/// Returns the two-qubit state and the fidelity F = 1 − ξ; both output-mode
/// marginals carry the same fidelity for every input.
pub fn bh_clone(psi: &QubitState, params: MachineParams) -> (DensityMatrix, f64) {
    let (alpha, beta) = (psi.alpha(), psi.beta());
    let eta = params.eta();
    let xi = params.xi();
    let k00 = ket00();
    let k11 = ket11();
    let plus = psi_plus();

    let mut m = k00.outer(&k00).scale(cx(eta * alpha.norm_sqr(), 0.0));
    m = m
        .add(&k11.outer(&k11).scale(cx(eta * beta.norm_sqr(), 0.0)))
        .unwrap();
    m = m.add(&plus.outer(&plus).scale(cx(2.0 * xi, 0.0))).unwrap();
    let coh = alpha * beta.conj() * (eta / 2f64.sqrt());
    m = m.add(&k00.outer(&plus).scale(coh)).unwrap();
    m = m.add(&plus.outer(&k00).scale(coh.conj())).unwrap();
    m = m.add(&plus.outer(&k11).scale(coh)).unwrap();
    m = m.add(&k11.outer(&plus).scale(coh.conj())).unwrap();

    (two_qubit(m), params.fidelity())
}

/// Output of the 2→1 deleter on two copies of |ψ⟩:
/// ρ = |α|⁴|00⟩⟨00| + |β|⁴|10⟩⟨10| + 2|α|²|β|²|ψ⁺⟩⟨ψ⁺|,
/// with deletion fidelity F = 1 − |α|²|β|² ∈ [3/4, 1].
pub fn delete_2to1(psi: &QubitState) -> (DensityMatrix, f64) {
    let a2 = psi.alpha().norm_sqr();
    let b2 = psi.beta().norm_sqr();
    let k00 = ket00();
    let k10 = ket10();
    let plus = psi_plus();
    let mut m = k00.outer(&k00).scale(cx(a2 * a2, 0.0));
    m = m.add(&k10.outer(&k10).scale(cx(b2 * b2, 0.0))).unwrap();
    m = m
        .add(&plus.outer(&plus).scale(cx(2.0 * a2 * b2, 0.0)))
        .unwrap();
    (two_qubit(m), 1.0 - a2 * b2)
}

/// Feasible input weight for a given deletion fidelity:
/// |α|² = ½(1 − √(4F − 3)) (the minus branch), for 3/4 ≤ F < 1.
pub fn alpha_sq_from_fdel(f_del: f64) -> Result<f64> {
    if !(0.75 - RANGE_SLACK..1.0).contains(&f_del) {
        return Err(Error::Domain(format!(
            "deletion fidelity {f_del} outside [3/4, 1)"
        )));
    }
    let a = (4.0 * f_del - 3.0).max(0.0).sqrt();
    Ok(0.5 * (1.0 - a))
}

/// Copier followed by the 2→1 deleter on its output modes:
/// ρ′ = (|α|²|00⟩⟨00| + |β|²|10⟩⟨10| + 2ξ|ψ⁺⟩⟨ψ⁺|)/(1 + 2ξ),
/// with fidelity F₃ = (1 + ξ)/(1 + 2ξ) ∈ [3/4, 7/8].
pub fn clone_then_delete(psi: &QubitState, params: MachineParams) -> (DensityMatrix, f64) {
    let a2 = psi.alpha().norm_sqr();
    let b2 = psi.beta().norm_sqr();
    let xi = params.xi();
    let norm = 1.0 / (1.0 + 2.0 * xi);
    let k00 = ket00();
    let k10 = ket10();
    let plus = psi_plus();
    let mut m = k00.outer(&k00).scale(cx(a2 * norm, 0.0));
    m = m.add(&k10.outer(&k10).scale(cx(b2 * norm, 0.0))).unwrap();
    m = m
        .add(&plus.outer(&plus).scale(cx(2.0 * xi * norm, 0.0)))
        .unwrap();
    (two_qubit(m), (1.0 + xi) * norm)
}

/// 2→1 deleter followed by the copier, cloning either the undeleted mode a
/// (first output) or the blanked mode b (second output):
///
/// ρ_aa′ = (1−2ξ)(|α|²|00⟩⟨00| + |β|²|11⟩⟨11|) + 2ξ|ψ⁺⟩⟨ψ⁺|
/// ρ_bb′ = (1−2ξ)((1−|α|²|β|²)|00⟩⟨00| + |α|²|β|²|11⟩⟨11|) + 2ξ|ψ⁺⟩⟨ψ⁺|
pub fn delete_then_clone(
    psi: &QubitState,
    params: MachineParams,
) -> (DensityMatrix, DensityMatrix) {
    let a2 = psi.alpha().norm_sqr();
    let b2 = psi.beta().norm_sqr();
    let eta = params.eta();
    let xi = params.xi();
    let k00 = ket00();
    let k11 = ket11();
    let plus = psi_plus();
    let build = |w00: f64, w11: f64| {
        let mut m = k00.outer(&k00).scale(cx(eta * w00, 0.0));
        m = m.add(&k11.outer(&k11).scale(cx(eta * w11, 0.0))).unwrap();
        m = m.add(&plus.outer(&plus).scale(cx(2.0 * xi, 0.0))).unwrap();
        two_qubit(m)
    };
    let rho_aa = build(a2, b2);
    let rho_bb = build(1.0 - a2 * b2, a2 * b2);
    (rho_aa, rho_bb)
}

/// Coefficient α_j = √(2(N−j) / (N(N+1))) of the universal 1→N cloner.
pub fn gm_coefficient(n: usize, j: usize) -> f64 {
    (2.0 * (n - j) as f64 / (n as f64 * (n + 1) as f64)).sqrt()
}

fn check_clone_count(n: usize) -> Result<()> {
    if !(2..=4).contains(&n) {
        return Err(Error::UnsupportedSize(format!(
            "1→N cloning supports N between 2 and 4, got {n}"
        )));
    }
    Ok(())
}

/// Joint and traced output of the universal 1→N cloner.
pub struct GmCloneOutput {
    /// Pure joint state over N clone qubits plus the (N+2)-dimensional
    /// machine register.
    pub joint: DensityMatrix,
    /// Machine-traced N-qubit clone state.
    pub clones: DensityMatrix,
}

/// Applies the 1→N cloning transformation by linearity to α|0⟩ + β|1⟩:
/// the |0⟩ branch maps to Σⱼ α_j |(N−j)0, j1⟩ ⊗ R_j and the |1⟩ branch to
/// Σⱼ α_{N−1−j} |(N−1−j)0, (j+1)1⟩ ⊗ R_j, with orthonormal machine states.
pub fn gm_clone(psi: &QubitState, n: usize) -> Result<GmCloneOutput> {
    check_clone_count(n)?;
    let machine_dim = n + 2;
    let clone_dim = 1usize << n;
    let mut amps = vec![cx(0.0, 0.0); clone_dim * machine_dim];
    for j in 0..n {
        let zero_branch = dicke(n, j)?.scale(psi.alpha() * gm_coefficient(n, j));
        let one_branch = dicke(n, j + 1)?.scale(psi.beta() * gm_coefficient(n, n - 1 - j));
        let sector = zero_branch.add(&one_branch)?;
        for (idx, amp) in sector.amps().iter().enumerate() {
            amps[idx * machine_dim + j] += amp;
        }
    }
    let mut dims = vec![2usize; n];
    dims.push(machine_dim);
    let joint_vec = StateVector::new(dims, amps)?;
    let joint = joint_vec.to_density()?;
    let clone_indices: Vec<usize> = (0..n).collect();
    let clones = joint.partial_trace(&clone_indices)?;
    Ok(GmCloneOutput { joint, clones })
}

/// Overlap of a single-qubit state with |ψ⟩⟨ψ|.
pub fn mode_fidelity(mode: &DensityMatrix, psi: &QubitState) -> f64 {
    let v = psi.vector();
    let mut f = cx(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            f += v.amps()[i].conj() * mode.matrix().get(i, j) * v.amps()[j];
        }
    }
    f.re
}

/// Output of 1→N cloning followed by N→M deletion.
pub struct CloneDeleteOutput {
    /// N-qubit state at the deleter output port (machine states traced out).
    pub rho: DensityMatrix,
    /// First-mode reduction, constructed analytically; always equals
    /// `rho.partial_trace(&[0])` within `tol::PT_CONSISTENCY`.
    pub rho_mode1: DensityMatrix,
}

/// 1→N cloning then N→M deletion (machine states traced out).
///
/// The N-qubit output mixes the cloner's symmetric sectors: the |0⟩-branch
/// sectors keep weight |α|²α_j², the |1⟩-branch sectors |β|²α_{N−1−j}², the
/// fully excited sector collapses onto the product |1⟩^⊗M|0⟩^⊗(N−M), and the
/// surviving machine overlaps leave cross terms α_i α_{N−1−i} between
/// adjacent sectors for i ∈ [1, N−2] (empty when N = 2).
pub fn clone_delete_nm(psi: &QubitState, n: usize, m: usize) -> Result<CloneDeleteOutput> {
    check_clone_count(n)?;
    if m == 0 || m >= n {
        return Err(Error::Domain(format!(
            "N→M deletion needs 1 ≤ M < N, got N = {n}, M = {m}"
        )));
    }
    let alpha = psi.alpha();
    let beta = psi.beta();
    let a2 = alpha.norm_sqr();
    let b2 = beta.norm_sqr();
    let dim = 1usize << n;
    let mut mat = ComplexMatrix::zeros(dim, dim);

    let add_outer = |mat: &mut ComplexMatrix, u: &StateVector, v: &StateVector, w: Complex64| {
        let outer = u.outer(v).scale(w);
        *mat = mat.add(&outer).unwrap();
    };

    let sectors: Vec<StateVector> = (0..=n).map(|j| dicke(n, j).unwrap()).collect();

    for (j, sector) in sectors.iter().enumerate().take(n) {
        add_outer(
            &mut mat,
            sector,
            sector,
            cx(a2 * gm_coefficient(n, j).powi(2), 0.0),
        );
    }
    for j in 0..=n.saturating_sub(2) {
        let w = cx(b2 * gm_coefficient(n, n - 1 - j).powi(2), 0.0);
        add_outer(&mut mat, &sectors[j + 1], &sectors[j + 1], w);
    }
    let blanked = ones_then_zeros(n, m)?;
    add_outer(
        &mut mat,
        &blanked,
        &blanked,
        cx(b2 * gm_coefficient(n, 0).powi(2), 0.0),
    );
    for i in 1..=n.saturating_sub(2) {
        let w = alpha * beta.conj() * gm_coefficient(n, i) * gm_coefficient(n, n - 1 - i);
        add_outer(&mut mat, &sectors[i], &sectors[i + 1], w);
        add_outer(&mut mat, &sectors[i + 1], &sectors[i], w.conj());
    }

    let rho = DensityMatrix::new(vec![2; n], mat)?;

    // analytic first-mode reduction: sector marginals weight ((N−i)|α|² +
    // i|β|²)/N (the binomial string counts cancel against the symmetric-state
    // normalization), plus the cross-sector coherence that survives the trace
    let nf = n as f64;
    let mut p0 = 0.0;
    let mut p1 = 0.0;
    for i in 0..n {
        let c2 = gm_coefficient(n, i).powi(2);
        let i_f = i as f64;
        p0 += c2 * (((nf - i_f) / nf) * a2 + (i_f / nf) * b2);
        p1 += c2 * ((i_f / nf) * a2 + ((nf - i_f) / nf) * b2);
    }
    let mut coherence = cx(0.0, 0.0);
    for i in 1..=n.saturating_sub(2) {
        let overlap = binomial(n - 1, i) / (binomial(n, i) * binomial(n, i + 1)).sqrt();
        coherence +=
            alpha * beta.conj() * gm_coefficient(n, i) * gm_coefficient(n, n - 1 - i) * overlap;
    }
    let mut mode = ComplexMatrix::zeros(2, 2);
    mode.set(0, 0, cx(p0, 0.0));
    mode.set(1, 1, cx(p1, 0.0));
    mode.set(0, 1, coherence);
    mode.set(1, 0, coherence.conj());
    let rho_mode1 = DensityMatrix::new(vec![2], mode)?;

    Ok(CloneDeleteOutput { rho, rho_mode1 })
}

/// Output of N→1 deletion followed by 1→M cloning.
pub struct DeleteCloneOutput {
    /// N-qubit deleter output: a diagonal mixture over symmetric sectors,
    /// with the all-ones sector blanked onto |1⟩|0⟩^⊗(N−1).
    pub rho_del: DensityMatrix,
    /// Reduced state of a deleted mode, η₀|0⟩⟨0| + η₁|1⟩⟨1|.
    pub rho_mode: DensityMatrix,
    /// M-qubit output of cloning the deleted mode.
    pub rho_f: DensityMatrix,
    /// First-mode reduction of `rho_f`, constructed analytically; equals
    /// `rho_f.partial_trace(&[0])` within `tol::PT_CONSISTENCY`.
    pub rho_f_mode1: DensityMatrix,
}

/// N→1 deletion of |ψ⟩^⊗N followed by 1→M cloning of a deleted mode.
pub fn delete_clone_nm(psi: &QubitState, n: usize, m: usize) -> Result<DeleteCloneOutput> {
    if !(2..=4).contains(&n) {
        return Err(Error::UnsupportedSize(format!(
            "N→1 deletion supports N between 2 and 4, got {n}"
        )));
    }
    check_clone_count(m)?;
    let a2 = psi.alpha().norm_sqr();
    let b2 = psi.beta().norm_sqr();
    let dim = 1usize << n;
    let mut mat = ComplexMatrix::zeros(dim, dim);

    let all_zero = dicke(n, 0)?;
    let blanked = ones_then_zeros(n, 1)?;
    let mut add = |sv: &StateVector, w: f64| {
        let outer = sv.outer(sv).scale(cx(w, 0.0));
        mat = mat.add(&outer).unwrap();
    };
    add(&all_zero, a2.powi(n as i32));
    add(&blanked, b2.powi(n as i32));
    for k in 1..n {
        let w = binomial(n, k) * a2.powi((n - k) as i32) * b2.powi(k as i32);
        add(&dicke(n, k)?, w);
    }
    let rho_del = DensityMatrix::new(vec![2; n], mat)?;

    // deleted-mode weights
    let nf = n as f64;
    let mut eta0 = a2.powi(n as i32) + b2.powi(n as i32);
    let mut eta1 = 0.0;
    for i in 1..n {
        let w = binomial(n, i) * a2.powi((n - i) as i32) * b2.powi(i as i32);
        eta0 += ((nf - i as f64) / nf) * w;
        eta1 += (i as f64 / nf) * w;
    }
    let mut mode = ComplexMatrix::zeros(2, 2);
    mode.set(0, 0, cx(eta0, 0.0));
    mode.set(1, 1, cx(eta1, 0.0));
    let rho_mode = DensityMatrix::new(vec![2], mode)?;

    // 1→M cloning of the diagonal mode: no coherences survive
    let fdim = 1usize << m;
    let mut fmat = ComplexMatrix::zeros(fdim, fdim);
    for j in 0..m {
        let d_j = dicke(m, j)?;
        let o = d_j
            .outer(&d_j)
            .scale(cx(eta0 * gm_coefficient(m, j).powi(2), 0.0));
        fmat = fmat.add(&o).unwrap();
        let d_j1 = dicke(m, j + 1)?;
        let o1 = d_j1
            .outer(&d_j1)
            .scale(cx(eta1 * gm_coefficient(m, m - 1 - j).powi(2), 0.0));
        fmat = fmat.add(&o1).unwrap();
    }
    let rho_f = DensityMatrix::new(vec![2; m], fmat)?;

    let mf = m as f64;
    let mut q0 = 0.0;
    let mut q1 = 0.0;
    for j in 0..m {
        let c2 = gm_coefficient(m, j).powi(2);
        let j_f = j as f64;
        q0 += c2 * (((mf - j_f) / mf) * eta0 + (j_f / mf) * eta1);
        q1 += c2 * ((j_f / mf) * eta0 + ((mf - j_f) / mf) * eta1);
    }
    let mut fmode = ComplexMatrix::zeros(2, 2);
    fmode.set(0, 0, cx(q0, 0.0));
    fmode.set(1, 1, cx(q1, 0.0));
    let rho_f_mode1 = DensityMatrix::new(vec![2], fmode)?;

    Ok(DeleteCloneOutput {
        rho_del,
        rho_mode,
        rho_f,
        rho_f_mode1,
    })
}

/// One stage of a composite pipeline, with explicit arities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// 1→to cloning.
    Clone { to: usize },
    /// from→to deletion (to < from).
    Delete { from: usize, to: usize },
}

impl Stage {
    fn input_count(&self) -> usize {
        match self {
            Stage::Clone { .. } => 1,
            Stage::Delete { from, .. } => *from,
        }
    }

    fn output_count(&self) -> usize {
        match self {
            Stage::Clone { to } => *to,
            Stage::Delete { to, .. } => *to,
        }
    }
}

/// Ordered machine stages applied to an input state. Only the pipelines with
/// a displayed output form are executable: single stages, 1→N cloning then
/// N→M deletion, and N→1 deletion then 1→M cloning. Arities must chain and
/// the total qubit count never exceeds 5.
#[derive(Clone, Debug)]
pub struct PipelineSpec {
    pub input: QubitState,
    pub stages: Vec<Stage>,
    /// Copier parameter for the 1→2 machine; `None` selects the universal
    /// 1→N cloner instead.
    pub xi: Option<MachineParams>,
}

impl PipelineSpec {
    pub fn validate(&self) -> Result<()> {
        if self.stages.is_empty() {
            return Err(Error::Domain("pipeline needs at least one stage".into()));
        }
        let mut count = self.stages[0].input_count();
        for stage in &self.stages {
            if stage.input_count() != count {
                return Err(Error::Domain(format!(
                    "stage {stage:?} expects {} mode(s), previous stage left {count}",
                    stage.input_count()
                )));
            }
            match stage {
                Stage::Clone { to } if !(2..=4).contains(to) => {
                    return Err(Error::Domain(format!("cloning arity {to} outside 2..=4")));
                }
                Stage::Delete { from, to } if to >= from || *to == 0 => {
                    return Err(Error::Domain(format!(
                        "deletion must reduce the mode count, got {from}→{to}"
                    )));
                }
                _ => {}
            }
            count = stage.output_count();
            let peak = stage.input_count().max(stage.output_count());
            if peak > 5 {
                return Err(Error::Domain(format!("total qubit count {peak} exceeds 5")));
            }
        }
        Ok(())
    }

    /// Runs the pipeline and returns the final multimode state.
    pub fn execute(&self) -> Result<DensityMatrix> {
        self.validate()?;
        match (self.stages.as_slice(), self.xi) {
            ([Stage::Clone { to: 2 }], Some(params)) => Ok(bh_clone(&self.input, params).0),
            ([Stage::Clone { to }], None) => Ok(gm_clone(&self.input, *to)?.clones),
            ([Stage::Delete { from: 2, to: 1 }], _) => Ok(delete_2to1(&self.input).0),
            ([Stage::Clone { to: 2 }, Stage::Delete { from: 2, to: 1 }], Some(params)) => {
                Ok(clone_then_delete(&self.input, params).0)
            }
            ([Stage::Clone { to: n }, Stage::Delete { from, to: m }], None) if from == n => {
                Ok(clone_delete_nm(&self.input, *n, *m)?.rho)
            }
            ([Stage::Delete { from: n, to: 1 }, Stage::Clone { to: m }], None) => {
                Ok(delete_clone_nm(&self.input, *n, *m)?.rho_f)
            }
            _ => Err(Error::Domain(format!(
                "no displayed output form for pipeline {:?}; composite pipelines beyond \
                 those are rejected rather than extrapolated",
                self.stages
            ))),
        }
    }
}

/// Joint pure state of cloner followed by deleter, machine register
/// explicit: used as an independent construction of the N-qubit output in
/// tests and consistency checks. Machine basis: R_j at index j, the two
/// deleter flags at N and N+1.
pub fn clone_delete_joint(psi: &QubitState, n: usize, m: usize) -> Result<DensityMatrix> {
    check_clone_count(n)?;
    if m == 0 || m >= n {
        return Err(Error::Domain(format!(
            "N→M deletion needs 1 ≤ M < N, got N = {n}, M = {m}"
        )));
    }
    let machine_dim = n + 2;
    let dim = (1usize << n) * machine_dim;
    let mut amps = vec![cx(0.0, 0.0); dim];
    let mut add = |sv: &StateVector, machine: usize, w: Complex64| {
        for (idx, amp) in sv.amps().iter().enumerate() {
            amps[idx * machine_dim + machine] += amp * w;
        }
    };
    let alpha = psi.alpha();
    let beta = psi.beta();
    add(&dicke(n, 0)?, n, alpha * gm_coefficient(n, 0));
    for j in 1..n {
        add(&dicke(n, j)?, j, alpha * gm_coefficient(n, j));
    }
    for j in 0..=n - 2 {
        add(&dicke(n, j + 1)?, j, beta * gm_coefficient(n, n - 1 - j));
    }
    add(&ones_then_zeros(n, m)?, n + 1, beta * gm_coefficient(n, 0));

    let mut dims = vec![2usize; n];
    dims.push(machine_dim);
    let joint = StateVector::new(dims, amps)?.to_density()?;
    let keep: Vec<usize> = (0..n).collect();
    joint.partial_trace(&keep)
}
