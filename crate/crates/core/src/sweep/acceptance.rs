//! The acceptance suite: ten numbered criteria with pinned tolerances,
//! each reporting a pass/fail line with the measured values behind it.
//!
//! Three criteria contain sub-checks that the exact constructed states
//! provably violate; they are kept as stated and fail with diagnostics
//! rather than being weakened:
//!
//! - criterion 5 asserts vanishing average discord at α ∈ {0, 1}, but the
//!   universal cloner correlates its output modes even for basis inputs
//!   (the optimal copier is input independent, so its α = 1 output carries
//!   the same correlations as every other input's), giving δ ≈ 0.28–0.52;
//! - criterion 6 requires the aa′-branch closed form to match the numerics,
//!   but that printed expression replaces the longitudinal correlation
//!   (1 − 4ξ) with (L − 2ξ) — the two coincide only at α = 1 and ξ = 1/2
//!   (the other three audited forms agree at machine precision);
//! - criterion 8 asserts a monotone trend that the audited closed forms
//!   themselves break: the copier family dips to a separable window near
//!   F = 0.8 for balanced inputs and re-entangles toward F = 5/6, and the
//!   deleter family's negativity rises above its floor value because the
//!   feasible root has a square-root singularity at F = 3/4.

use std::time::Instant;

use rayon::prelude::*;

use super::{
    compat_report, linspace, linspace_open, SweepConfig, Verdict, F_CL_RANGE, F_DEL_RANGE, XI_RANGE,
};
use crate::correlations::{
    average_discord, discord, geometric_discord, geometric_discord_oracle, negativity,
    DELETION_HALF_DISCORD_ORACLE,
};
use crate::formulas::{self, FormulaId};
use crate::machines::{
    alpha_sq_from_fdel, bh_clone, clone_delete_nm, clone_then_delete, delete_2to1, delete_clone_nm,
    delete_then_clone, gm_clone, mode_fidelity, MachineParams,
};
use crate::qmat::{cx, dicke, validate_density, ComplexMatrix, DensityMatrix, QubitState};
use crate::Result;

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Sub-check lines: measured values, worst points, failures.
    pub details: Vec<String>,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn status_line(&self) -> String {
        format!(
            "{}  criterion {:>2}: {} ({:.1}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.index,
            self.name,
            self.seconds
        )
    }
}

pub const CRITERION_COUNT: usize = 10;

/// Runs every criterion in order.
pub fn run_all(cfg: &SweepConfig) -> Result<Vec<CriterionResult>> {
    (1..=CRITERION_COUNT)
        .map(|i| run_criterion(i, cfg))
        .collect()
}

/// Runs a single criterion (1-based index).
pub fn run_criterion(index: usize, cfg: &SweepConfig) -> Result<CriterionResult> {
    cfg.validate()?;
    let start = Instant::now();
    let (name, passed, details) = match index {
        1 => c01_bell_endpoint(cfg),
        2 => c02_optimal_cloner_fidelity(cfg),
        3 => c03_deletion_fidelity_floor(cfg),
        4 => c04_complementarity_bounds(cfg),
        5 => c05_multiqubit_complementarity(cfg),
        6 => c06_closed_form_dg_audit(cfg),
        7 => c07_documented_discrepancies(cfg),
        8 => c08_monotone_trend(cfg),
        9 => c09_oracle_equivalence(cfg),
        10 => c10_structural_consistency(cfg),
        _ => {
            return Err(crate::Error::Config(format!(
                "criterion index {index} outside 1..={CRITERION_COUNT}"
            )))
        }
    };
    Ok(CriterionResult {
        index,
        name,
        passed,
        details,
        seconds: start.elapsed().as_secs_f64(),
    })
}

type Outcome = (&'static str, bool, Vec<String>);

struct Check {
    ok: bool,
    details: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Self {
            ok: true,
            details: Vec::new(),
        }
    }

    fn assert(&mut self, ok: bool, line: String) {
        if !ok {
            self.ok = false;
            self.details.push(format!("FAIL {line}"));
        }
    }

    fn note(&mut self, line: String) {
        self.details.push(line);
    }
}

fn state(alpha: f64) -> QubitState {
    QubitState::from_alpha(alpha).unwrap()
}

fn bell_projector() -> ComplexMatrix {
    let psi = dicke(2, 1).unwrap();
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            m.set(i, j, psi.amps()[i] * psi.amps()[j].conj());
        }
    }
    m
}

fn c01_bell_endpoint(cfg: &SweepConfig) -> Outcome {
    let mut check = Check::new();
    let opt = cfg.optimizer();
    let bell = bell_projector();
    let params = MachineParams::new(0.5).unwrap();
    let mut worst_n: f64 = 0.0;
    let mut worst_dg: f64 = 0.0;
    let mut worst_d: f64 = 0.0;
    for alpha in linspace(0.0, 1.0, 11) {
        let (rho, _) = bh_clone(&state(alpha), params);
        check.assert(
            rho.matrix().approx_eq(&bell, 1e-12),
            format!("output at α = {alpha} is not the symmetric Bell projector"),
        );
        let (n, _) = negativity(&rho).unwrap();
        let dg = geometric_discord(&rho).unwrap();
        let d = discord(&rho, 1, &opt).unwrap().discord;
        worst_n = worst_n.max((n - 0.5).abs());
        worst_dg = worst_dg.max((dg - 1.0).abs());
        worst_d = worst_d.max((d - 1.0).abs());
    }
    check.assert(
        worst_n <= 1e-9,
        format!("negativity deviates from 1/2 by {worst_n:.3e}"),
    );
    check.assert(
        worst_dg <= 1e-9,
        format!("geometric discord deviates from 1 by {worst_dg:.3e}"),
    );
    check.assert(
        worst_d <= 1e-4,
        format!("discord deviates from 1 by {worst_d:.3e}"),
    );
    check.note(format!(
        "Bell endpoint over 11 α values: |N−1/2| ≤ {worst_n:.2e}, |DG−1| ≤ {worst_dg:.2e}, |D−1| ≤ {worst_d:.2e}"
    ));
    ("Bell endpoint of the copier", check.ok, check.details)
}

fn c02_optimal_cloner_fidelity(_cfg: &SweepConfig) -> Outcome {
    let mut check = Check::new();
    let params = MachineParams::new(1.0 / 6.0).unwrap();
    let mut worst_bh: f64 = 0.0;
    let mut worst_gap: f64 = 0.0;
    for alpha in linspace(0.0, 1.0, 11) {
        let psi = state(alpha);
        let (rho, _) = bh_clone(&psi, params);
        let f_bh = mode_fidelity(&rho.partial_trace(&[1]).unwrap(), &psi);
        worst_bh = worst_bh.max((f_bh - 5.0 / 6.0).abs());
        let gm = gm_clone(&psi, 2).unwrap();
        let f_gm = mode_fidelity(&gm.clones.partial_trace(&[0]).unwrap(), &psi);
        worst_gap = worst_gap.max((f_gm - f_bh).abs());
    }
    check.assert(
        worst_bh <= 1e-12,
        format!("copier fidelity deviates from 5/6 by {worst_bh:.3e}"),
    );
    check.assert(
        worst_gap <= 1e-10,
        format!("1→2 universal-cloner marginal deviates from the copier by {worst_gap:.3e}"),
    );
    check.note(format!(
        "optimal fidelity 5/6: copier within {worst_bh:.2e}, cloner agreement within {worst_gap:.2e}"
    ));
    ("optimal-cloner fidelity", check.ok, check.details)
}

fn c03_deletion_fidelity_floor(_cfg: &SweepConfig) -> Outcome {
    let mut check = Check::new();
    let (_, f_half) = delete_2to1(&state(1.0 / 2f64.sqrt()));
    check.assert(
        (f_half - 0.75).abs() <= 1e-12,
        format!("F at |α|² = 1/2 is {f_half}, not 3/4"),
    );
    let mut f_min = f64::INFINITY;
    for alpha in linspace(0.0, 1.0, 101) {
        let (_, f) = delete_2to1(&state(alpha));
        f_min = f_min.min(f);
    }
    check.assert(
        f_min >= 0.75 - 1e-12,
        format!("minimum deletion fidelity {f_min} below 3/4"),
    );
    check.note(format!(
        "deletion fidelity floor: F(1/√2) = {f_half}, grid minimum {f_min}"
    ));
    ("deletion fidelity floor", check.ok, check.details)
}

fn c04_complementarity_bounds(cfg: &SweepConfig) -> Outcome {
    let mut check = Check::new();
    let opt = cfg.optimizer();
    let alphas = linspace(0.0, 1.0, 51);
    let xis = linspace(XI_RANGE.0, XI_RANGE.1, 51);

    #[derive(Clone, Copy)]
    struct Extremes {
        n: f64,
        dg: f64,
        d: f64,
    }
    let results: Vec<Extremes> = alphas
        .par_iter()
        .map(|&alpha| {
            let psi = state(alpha);
            let mut ex = Extremes {
                n: 0.0,
                dg: 0.0,
                d: 0.0,
            };
            for &xi in &xis {
                let params = MachineParams::new(xi).unwrap();
                let (cd, _) = clone_then_delete(&psi, params);
                let (aa, bb) = delete_then_clone(&psi, params);
                for rho in [&cd, &aa, &bb] {
                    ex.n = ex.n.max(negativity(rho).unwrap().0);
                    ex.dg = ex.dg.max(geometric_discord(rho).unwrap());
                    ex.d = ex.d.max(discord(rho, 1, &opt).unwrap().discord);
                }
            }
            ex
        })
        .collect();
    let max_n = results.iter().map(|e| e.n).fold(0.0, f64::max);
    let max_dg = results.iter().map(|e| e.dg).fold(0.0, f64::max);
    let max_d = results.iter().map(|e| e.d).fold(0.0, f64::max);
    check.assert(
        max_n <= 0.5 + 1e-9,
        format!("negativity bound broken: {max_n}"),
    );
    check.assert(
        max_dg <= 1.0 + 1e-9,
        format!("geometric-discord bound broken: {max_dg}"),
    );
    check.assert(
        max_d <= 1.0 + 1e-4,
        format!("discord bound broken: {max_d}"),
    );
    check.note(format!(
        "51×51 (α, ξ) grids over both composite orderings: max N = {max_n:.9}, max DG = {max_dg:.9}, max D = {max_d:.9}"
    ));
    (
        "complementarity bounds for the composite machines",
        check.ok,
        check.details,
    )
}

fn c05_multiqubit_complementarity(cfg: &SweepConfig) -> Outcome {
    let mut check = Check::new();
    let opt = cfg.optimizer();
    let alphas = linspace(0.0, 1.0, 21);
    let clone_first: [(usize, usize); 5] = [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3)];
    let delete_first: [(usize, usize); 5] = [(3, 2), (3, 3), (4, 2), (4, 3), (4, 4)];

    for (label, cases, is_clone_first) in [
        ("clone-then-delete", clone_first, true),
        ("delete-then-clone", delete_first, false),
    ] {
        for (n, m) in cases {
            let deltas: Vec<f64> = alphas
                .par_iter()
                .map(|&alpha| {
                    let psi = state(alpha);
                    let rho = if is_clone_first {
                        clone_delete_nm(&psi, n, m).unwrap().rho
                    } else {
                        delete_clone_nm(&psi, n, m).unwrap().rho_f
                    };
                    average_discord(&rho, &opt).unwrap().value
                })
                .collect();
            let max_delta = deltas.iter().cloned().fold(0.0, f64::max);
            let at0 = deltas[0];
            let at1 = *deltas.last().unwrap();
            check.assert(
                max_delta <= 1.0 + 1e-4,
                format!("{label} ({n},{m}): δ exceeds 1: {max_delta}"),
            );
            check.assert(
                at0.abs() <= 1e-6 && at1.abs() <= 1e-6,
                format!("{label} ({n},{m}): δ(0) = {at0:.6}, δ(1) = {at1:.6} (criterion expects 0 ± 1e-6)"),
            );
            check.note(format!(
                "{label} ({n},{m}): max δ = {max_delta:.6}, δ(0) = {at0:.6}, δ(1) = {at1:.6}"
            ));
        }
    }
    if !check.ok {
        check.note(
            "note: the endpoint expectation is unattainable for these machines — the \
             universal cloner correlates its output modes even for basis inputs, so δ \
             stays positive at α ∈ {0, 1}; the bound δ ≤ 1 holds everywhere"
                .to_string(),
        );
    }
    (
        "multiqubit complementarity including endpoint decay",
        check.ok,
        check.details,
    )
}

fn c06_closed_form_dg_audit(cfg: &SweepConfig) -> Outcome {
    let mut check = Check::new();
    let audit_cfg = SweepConfig {
        alpha_steps: 101,
        param_steps: 101,
        ..cfg.clone()
    };
    let report = compat_report(&audit_cfg).unwrap();
    for id in [
        FormulaId::CloneDg,
        FormulaId::DelDg,
        FormulaId::DcDgAa,
        FormulaId::DcDgBb,
    ] {
        let e = report.entry(id);
        check.assert(
            e.max_abs_deviation < super::COMPAT_TOLERANCE && e.verdict == Verdict::Consistent,
            format!(
                "{id}: max deviation {:.3e}, verdict {}",
                e.max_abs_deviation, e.verdict
            ),
        );
        check.note(format!(
            "{id}: max |printed − numeric| = {:.3e} on {}×{} grid → {}",
            e.max_abs_deviation, e.grid.0, e.grid.1, e.verdict
        ));
    }
    (
        "closed-form geometric-discord audit",
        check.ok,
        check.details,
    )
}

fn c07_documented_discrepancies(cfg: &SweepConfig) -> Outcome {
    let mut check = Check::new();
    let audit_cfg = SweepConfig {
        alpha_steps: 101,
        param_steps: 101,
        ..cfg.clone()
    };
    let report = compat_report(&audit_cfg).unwrap();

    let del_n = report.entry(FormulaId::DelN);
    check.assert(
        del_n.verdict == Verdict::Discrepant,
        format!("DEL_N verdict {} (expected DISCREPANT)", del_n.verdict),
    );
    let printed_floor = formulas::delta_delete(FormulaId::DelN, 0.75).unwrap();
    let numeric_floor = negativity(&delete_2to1(&state(1.0 / 2f64.sqrt())).0)
        .unwrap()
        .0;
    let dev = (printed_floor.value - numeric_floor).abs();
    check.assert(
        dev >= 0.5,
        format!("DEL_N deviation at the floor is {dev:.5}, expected ≥ 0.5"),
    );
    check.assert(
        (printed_floor.value - 0.67678).abs() < 1e-5 && (numeric_floor - 0.15451).abs() < 1e-5,
        format!("floor values printed {printed_floor:?} numeric {numeric_floor}"),
    );
    check.note(format!(
        "DEL_N at F = 3/4: printed {:.5} vs numeric {:.5} (deviation {dev:.5}); printed exceeds the negativity maximum and is flagged invalid ({})",
        printed_floor.value, numeric_floor, !printed_floor.valid
    ));

    let cd = formulas::delta_composite(FormulaId::CdDg, 1.0, 0.875).unwrap();
    let machine = MachineParams::new(1.0 / 6.0).unwrap();
    let (rho_cd, _) = clone_then_delete(&state(1.0), machine);
    let cd_numeric = geometric_discord(&rho_cd).unwrap();
    check.assert(
        !cd.valid && cd.value < 0.0,
        format!("CD_DG at (α = 1, F₃ = 7/8) should be flagged negative, got {cd:?}"),
    );
    check.assert(
        (cd_numeric - 1.0 / 16.0).abs() <= 1e-6,
        format!("numeric geometric discord there is {cd_numeric}, expected 1/16"),
    );
    check.note(format!(
        "CD_DG at (α = 1, F₃ = 7/8): printed {:.5} (invalid) vs numeric {:.6} = 1/16",
        cd.value, cd_numeric
    ));
    (
        "locked printed-formula discrepancies",
        check.ok,
        check.details,
    )
}

fn c08_monotone_trend(_cfg: &SweepConfig) -> Outcome {
    let mut check = Check::new();
    for alpha in [0.0, 0.5, 1.0 / 2f64.sqrt(), 1.0] {
        let psi = state(alpha);
        let mut prev_n = f64::INFINITY;
        let mut prev_dg = f64::INFINITY;
        let mut worst_n: f64 = 0.0;
        let mut worst_dg: f64 = 0.0;
        for f_cl in linspace(F_CL_RANGE.0, F_CL_RANGE.1, 51) {
            let (rho, _) = bh_clone(&psi, MachineParams::from_fidelity(f_cl).unwrap());
            let (n, _) = negativity(&rho).unwrap();
            let dg = geometric_discord(&rho).unwrap();
            worst_n = worst_n.max(n - prev_n);
            worst_dg = worst_dg.max(dg - prev_dg);
            prev_n = n;
            prev_dg = dg;
        }
        check.assert(
            worst_n <= 1e-12 && worst_dg <= 1e-12,
            format!(
                "copier trend at α = {alpha:.4}: worst N increase {worst_n:.3e}, worst DG increase {worst_dg:.3e}"
            ),
        );
        check.note(format!(
            "copier at α = {alpha:.4}: largest N step {worst_n:+.3e}, largest DG step {worst_dg:+.3e}"
        ));
    }
    let mut prev_n = f64::INFINITY;
    let mut prev_dg = f64::INFINITY;
    let mut worst_n: f64 = 0.0;
    let mut worst_dg: f64 = 0.0;
    for f_del in linspace_open(F_DEL_RANGE.0, F_DEL_RANGE.1, 51) {
        let a2 = alpha_sq_from_fdel(f_del).unwrap();
        let (rho, _) = delete_2to1(&state(a2.sqrt()));
        let (n, _) = negativity(&rho).unwrap();
        let dg = geometric_discord(&rho).unwrap();
        worst_n = worst_n.max(n - prev_n);
        worst_dg = worst_dg.max(dg - prev_dg);
        prev_n = n;
        prev_dg = dg;
    }
    check.assert(
        worst_n <= 1e-12 && worst_dg <= 1e-12,
        format!("deleter trend: worst N increase {worst_n:.3e}, worst DG increase {worst_dg:.3e}"),
    );
    check.note(format!(
        "deleter family: largest N step {worst_n:+.3e}, largest DG step {worst_dg:+.3e}"
    ));
    if !check.ok {
        check.note(
            "note: strict monotonicity is unattainable — the copier output re-entangles \
             near its optimum for balanced inputs (the optimal setting is input \
             independent, forcing equal correlations at F = 5/6 for every α), and the \
             deleter's negativity rises above its floor because the feasible root has a \
             square-root singularity at F = 3/4; both shapes are confirmed by the audited \
             closed forms"
                .to_string(),
        );
    }
    (
        "monotone correlation-vs-fidelity trend",
        check.ok,
        check.details,
    )
}

fn c09_oracle_equivalence(cfg: &SweepConfig) -> Outcome {
    use rand::{Rng, SeedableRng};
    let mut check = Check::new();
    let opt = cfg.optimizer();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6f72_6163_6c65);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let mut g = ComplexMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                g.set(i, j, cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
        let h = g.matmul(&g.adjoint()).unwrap();
        let tr = h.trace().re;
        let rho = DensityMatrix::new(vec![2, 2], h.scale(cx(1.0 / tr, 0.0))).unwrap();
        let closed = geometric_discord(&rho).unwrap();
        let oracle = geometric_discord_oracle(&rho, &opt).unwrap();
        worst = worst.max((closed - oracle).abs());
    }
    check.assert(
        worst <= 1e-6,
        format!("closed form vs definition-based oracle deviate by {worst:.3e}"),
    );
    check.note(format!(
        "geometric discord closed form vs oracle on 50 seeded states: max |Δ| = {worst:.3e}"
    ));

    let rho_del = delete_2to1(&state(1.0 / 2f64.sqrt())).0;
    let d = discord(&rho_del, 1, &opt).unwrap().discord;
    let gap = (d - DELETION_HALF_DISCORD_ORACLE).abs();
    check.assert(
        gap <= 1e-4,
        format!("discord {d:.8} vs stored fine-grid value {DELETION_HALF_DISCORD_ORACLE:.8}"),
    );
    check.note(format!(
        "deleter output at |α|² = 1/2: discord {d:.8}, fine-grid reference {DELETION_HALF_DISCORD_ORACLE:.8} (gap {gap:.2e})"
    ));
    ("oracle equivalence", check.ok, check.details)
}

fn c10_structural_consistency(_cfg: &SweepConfig) -> Outcome {
    let mut check = Check::new();
    let alphas = linspace(0.0, 1.0, 11);
    let mut worst_cd: f64 = 0.0;
    let mut worst_dc: f64 = 0.0;
    for &alpha in &alphas {
        let psi = state(alpha);
        for (n, m) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)] {
            let out = clone_delete_nm(&psi, n, m).unwrap();
            let traced = out.rho.partial_trace(&[0]).unwrap();
            worst_cd = worst_cd.max(traced.matrix().max_abs_diff(out.rho_mode1.matrix()));
            check.assert(
                validate_density(out.rho.matrix()).all_ok(),
                format!("clone-delete ({n},{m}) output invalid at α = {alpha}"),
            );
        }
        for n in 2..=4usize {
            for m in 2..=4usize {
                let out = delete_clone_nm(&psi, n, m).unwrap();
                let mode = out.rho_del.partial_trace(&[1]).unwrap();
                worst_dc = worst_dc.max(mode.matrix().max_abs_diff(out.rho_mode.matrix()));
                let f_mode = out.rho_f.partial_trace(&[0]).unwrap();
                worst_dc = worst_dc.max(f_mode.matrix().max_abs_diff(out.rho_f_mode1.matrix()));
                for rho in [&out.rho_del, &out.rho_f] {
                    check.assert(
                        validate_density(rho.matrix()).all_ok(),
                        format!("delete-clone ({n},{m}) output invalid at α = {alpha}"),
                    );
                }
            }
        }
    }
    check.assert(
        worst_cd <= 1e-10,
        format!("clone-delete single-mode reduction deviates by {worst_cd:.3e}"),
    );
    check.assert(
        worst_dc <= 1e-10,
        format!("delete-clone reductions deviate by {worst_dc:.3e}"),
    );

    // two-qubit machines across the 21×21 (α, ξ) grid
    let mut all_valid = true;
    for alpha in linspace(0.0, 1.0, 21) {
        let psi = state(alpha);
        if !validate_density(delete_2to1(&psi).0.matrix()).all_ok() {
            all_valid = false;
        }
        for xi in linspace(XI_RANGE.0, XI_RANGE.1, 21) {
            let params = MachineParams::new(xi).unwrap();
            let (c, _) = bh_clone(&psi, params);
            let (cd, _) = clone_then_delete(&psi, params);
            let (aa, bb) = delete_then_clone(&psi, params);
            for rho in [&c, &cd, &aa, &bb] {
                if !validate_density(rho.matrix()).all_ok() {
                    all_valid = false;
                }
            }
        }
    }
    check.assert(
        all_valid,
        "a two-qubit machine output failed density validation".into(),
    );
    check.note(format!(
        "analytic vs traced reductions: clone-delete within {worst_cd:.2e}, delete-clone within {worst_dc:.2e}; all outputs pass density validation"
    ));
    (
        "structural consistency of machine outputs",
        check.ok,
        check.details,
    )
}
