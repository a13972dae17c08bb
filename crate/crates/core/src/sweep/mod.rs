//! Parameter sweeps over the machine settings: figure datasets as CSV, the
//! printed-vs-numeric compatibility report, and the acceptance suite.
//!
//! Grid points are independent work items and may run concurrently; output
//! assembly sorts by sweep coordinates, so parallelism never changes bytes.

pub mod acceptance;
mod csv;

use std::fmt;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

pub use csv::{validate_csv_file, Column, ColumnKind, FigureDataset};

use crate::correlations::{
    average_discord, discord, geometric_discord, negativity, OptimizerConfig,
};
use crate::formulas::{self, FormulaId, FormulaValue};
use crate::machines::{
    alpha_sq_from_fdel, bh_clone, clone_delete_nm, clone_then_delete, delete_2to1, delete_clone_nm,
    delete_then_clone, MachineParams,
};
use crate::qmat::{DensityMatrix, QubitState};
use crate::{Error, Result};

/// Settings shared by every sweep: grid resolutions, optimizer
/// configuration, global seed and output directory.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Points on the α ∈ [0, 1] axis (default 101).
    pub alpha_steps: usize,
    /// Points on the machine-parameter axis (default 101).
    pub param_steps: usize,
    pub optimizer: OptimizerConfig,
    /// Global seed; also feeds the optimizer's start jitter.
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            alpha_steps: 101,
            param_steps: 101,
            optimizer: OptimizerConfig::default(),
            seed: 0,
            out_dir: PathBuf::from("datasets"),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.alpha_steps < 2 || self.param_steps < 2 {
            return Err(Error::Config("grid resolutions must be ≥ 2".into()));
        }
        self.optimizer.validate()
    }

    /// Optimizer settings with the global seed folded in.
    pub fn optimizer(&self) -> OptimizerConfig {
        OptimizerConfig {
            seed: self.seed,
            ..self.optimizer
        }
    }

    /// Short hash of the full configuration for provenance headers.
    pub fn config_hash(&self, scope: &str) -> String {
        let o = &self.optimizer;
        let canonical = format!(
            "scope={scope};alpha={};param={};seed={};grid={}x{};pgrid={}x{};starts={};iters={};tol={:e}",
            self.alpha_steps,
            self.param_steps,
            self.seed,
            o.grid_theta,
            o.grid_phi,
            o.seed_theta,
            o.seed_phi,
            o.starts,
            o.refine_iters,
            o.tol_bits,
        );
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// The nine figure datasets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
}

impl FigureId {
    pub const ALL: [FigureId; 9] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
        FigureId::Fig9,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig8 => "fig8",
            FigureId::Fig9 => "fig9",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("figure id '{s}' (expected fig1..fig9)")))
    }
}

/// Inclusive linspace.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n)
        .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
        .collect()
}

/// Half-open linspace [a, b): used for the deletion-fidelity axis where the
/// right endpoint is outside the machine's domain.
pub fn linspace_open(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * k as f64 / n as f64).collect()
}

pub(crate) const F_CL_RANGE: (f64, f64) = (0.5, 5.0 / 6.0);
pub(crate) const F_DEL_RANGE: (f64, f64) = (0.75, 1.0);
pub(crate) const XI_RANGE: (f64, f64) = (1.0 / 6.0, 0.5);

/// Grids that carry a discord column are capped at 51 points per axis to
/// keep each figure inside its runtime budget.
const DISCORD_GRID_CAP: usize = 51;

/// The multiqubit average-discord figures are capped at 21 α points for the
/// same reason (each point runs a full multiqubit basis search per mode).
const MULTI_GRID_CAP: usize = 21;

fn state_from_alpha(alpha: f64) -> QubitState {
    QubitState::from_alpha(alpha).expect("sweep α stays in [0, 1]")
}

fn clone_state(f_cl: f64, alpha: f64) -> DensityMatrix {
    let params = MachineParams::from_fidelity(f_cl).expect("grid stays in range");
    bh_clone(&state_from_alpha(alpha), params).0
}

/// Deleter output at a given deletion fidelity via the feasible root.
fn delete_state(f_del: f64) -> DensityMatrix {
    let a2 = alpha_sq_from_fdel(f_del).expect("grid stays in range");
    delete_2to1(&state_from_alpha(a2.sqrt())).0
}

/// Generates the dataset behind one figure.
///
/// fig1–fig3: (α, F_cl) grids of the copier output with the numeric measure
/// and the printed-formula value side by side (negativity, discord,
/// geometric discord respectively). fig4–fig6: the same pairing along the
/// deletion-fidelity axis. fig7/fig9: per-case average-discord curves over α
/// for the five (N, M) composite cases each. fig8: (α, ξ) grid of the
/// geometric discord of both delete-then-clone branches.
pub fn figure_data(figure: FigureId, cfg: &SweepConfig) -> Result<FigureDataset> {
    cfg.validate()?;
    let opt = cfg.optimizer();
    let hash = cfg.config_hash(figure.name());
    let make = |columns: Vec<Column>, key_columns: usize, rows: Vec<Vec<f64>>| FigureDataset {
        name: figure.name().to_string(),
        columns,
        key_columns,
        rows,
        seed: cfg.seed,
        config_hash: hash.clone(),
    };

    let dataset = match figure {
        FigureId::Fig1 | FigureId::Fig3 => {
            let id = if figure == FigureId::Fig1 {
                FormulaId::CloneN
            } else {
                FormulaId::CloneDg
            };
            let alphas = linspace(0.0, 1.0, cfg.alpha_steps);
            let params = linspace(F_CL_RANGE.0, F_CL_RANGE.1, cfg.param_steps);
            let rows: Vec<Vec<f64>> = alphas
                .par_iter()
                .flat_map_iter(|&alpha| {
                    let params = params.clone();
                    params.into_iter().map(move |f_cl| {
                        let rho = clone_state(f_cl, alpha);
                        let numeric = if id == FormulaId::CloneN {
                            negativity(&rho).unwrap().0
                        } else {
                            geometric_discord(&rho).unwrap()
                        };
                        let printed = formulas::delta_clone(id, f_cl, alpha).unwrap();
                        row_with_printed(&[alpha, f_cl], numeric, printed)
                    })
                })
                .collect();
            make(
                vec![
                    Column::sci("alpha"),
                    Column::sci("f_cl"),
                    Column::sci(measure_column(id)),
                    Column::sci("printed"),
                    Column::int("printed_valid"),
                ],
                2,
                rows,
            )
        }
        FigureId::Fig2 => {
            let na = cfg.alpha_steps.min(DISCORD_GRID_CAP);
            let np = cfg.param_steps.min(DISCORD_GRID_CAP);
            let alphas = linspace(0.0, 1.0, na);
            let params = linspace(F_CL_RANGE.0, F_CL_RANGE.1, np);
            let rows: Vec<Vec<f64>> = alphas
                .par_iter()
                .flat_map_iter(|&alpha| {
                    let params = params.clone();
                    params.into_iter().map(move |f_cl| {
                        let rho = clone_state(f_cl, alpha);
                        let numeric = discord(&rho, 1, &opt).unwrap().discord;
                        let printed =
                            formulas::delta_clone(FormulaId::CloneD, f_cl, alpha).unwrap();
                        row_with_printed(&[alpha, f_cl], numeric, printed)
                    })
                })
                .collect();
            make(
                vec![
                    Column::sci("alpha"),
                    Column::sci("f_cl"),
                    Column::sci("discord_numeric"),
                    Column::sci("printed"),
                    Column::int("printed_valid"),
                ],
                2,
                rows,
            )
        }
        FigureId::Fig4 | FigureId::Fig5 | FigureId::Fig6 => {
            let id = match figure {
                FigureId::Fig4 => FormulaId::DelN,
                FigureId::Fig5 => FormulaId::DelD,
                _ => FormulaId::DelDg,
            };
            let np = if figure == FigureId::Fig5 {
                cfg.param_steps.min(DISCORD_GRID_CAP)
            } else {
                cfg.param_steps
            };
            let fs = linspace_open(F_DEL_RANGE.0, F_DEL_RANGE.1, np);
            let rows: Vec<Vec<f64>> = fs
                .par_iter()
                .map(|&f_del| {
                    let rho = delete_state(f_del);
                    let a2 = alpha_sq_from_fdel(f_del).unwrap();
                    let numeric = match id {
                        FormulaId::DelN => negativity(&rho).unwrap().0,
                        FormulaId::DelD => discord(&rho, 1, &opt).unwrap().discord,
                        _ => geometric_discord(&rho).unwrap(),
                    };
                    let printed = formulas::delta_delete(id, f_del).unwrap();
                    row_with_printed(&[f_del, a2], numeric, printed)
                })
                .collect();
            make(
                vec![
                    Column::sci("f_del"),
                    Column::sci("alpha_sq"),
                    Column::sci(measure_column(id)),
                    Column::sci("printed"),
                    Column::int("printed_valid"),
                ],
                1,
                rows,
            )
        }
        FigureId::Fig7 | FigureId::Fig9 => {
            let cases: &[(usize, usize)] = if figure == FigureId::Fig7 {
                &[(3, 1), (3, 2), (4, 1), (4, 2), (4, 3)]
            } else {
                &[(3, 2), (3, 3), (4, 2), (4, 3), (4, 4)]
            };
            let alphas = linspace(0.0, 1.0, cfg.alpha_steps.min(MULTI_GRID_CAP));
            let mut rows = Vec::new();
            for &(n, m) in cases {
                let case_rows: Vec<Vec<f64>> = alphas
                    .par_iter()
                    .map(|&alpha| {
                        let psi = state_from_alpha(alpha);
                        let final_state = if figure == FigureId::Fig7 {
                            clone_delete_nm(&psi, n, m).unwrap().rho
                        } else {
                            delete_clone_nm(&psi, n, m).unwrap().rho_f
                        };
                        let delta = average_discord(&final_state, &opt).unwrap().value;
                        vec![n as f64, m as f64, alpha, delta]
                    })
                    .collect();
                rows.extend(case_rows);
            }
            make(
                vec![
                    Column::int("n"),
                    Column::int("m"),
                    Column::sci("alpha"),
                    Column::sci("delta"),
                ],
                3,
                rows,
            )
        }
        FigureId::Fig8 => {
            let alphas = linspace(0.0, 1.0, cfg.alpha_steps);
            let xis = linspace(XI_RANGE.0, XI_RANGE.1, cfg.param_steps);
            let rows: Vec<Vec<f64>> = alphas
                .par_iter()
                .flat_map_iter(|&alpha| {
                    let xis = xis.clone();
                    xis.into_iter().map(move |xi| {
                        let params = MachineParams::new(xi).unwrap();
                        let (aa, bb) = delete_then_clone(&state_from_alpha(alpha), params);
                        vec![
                            alpha,
                            xi,
                            geometric_discord(&aa).unwrap(),
                            geometric_discord(&bb).unwrap(),
                        ]
                    })
                })
                .collect();
            make(
                vec![
                    Column::sci("alpha"),
                    Column::sci("xi"),
                    Column::sci("dg_aa"),
                    Column::sci("dg_bb"),
                ],
                2,
                rows,
            )
        }
    };
    dataset.validate()?;
    Ok(dataset)
}

fn measure_column(id: FormulaId) -> &'static str {
    match id {
        FormulaId::CloneN | FormulaId::DelN => "negativity_numeric",
        FormulaId::CloneD | FormulaId::DelD => "discord_numeric",
        _ => "dg_numeric",
    }
}

fn row_with_printed(coords: &[f64], numeric: f64, printed: FormulaValue) -> Vec<f64> {
    let mut row = coords.to_vec();
    row.push(numeric);
    // NaN cells would fail schema validation; the validity flag carries the
    // information and the value column falls back to 0 for undefined points
    row.push(if printed.value.is_finite() {
        printed.value
    } else {
        0.0
    });
    row.push(if printed.valid { 1.0 } else { 0.0 });
    row
}

/// Audit verdict for one printed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Printed and numeric agree within 1e-6 everywhere on the grid.
    Consistent,
    /// At least one grid point deviates by 1e-6 or more, or the printed
    /// expression is undefined somewhere on the grid.
    Discrepant,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "CONSISTENT",
            Verdict::Discrepant => "DISCREPANT",
        })
    }
}

pub const COMPAT_TOLERANCE: f64 = 1e-6;

/// Audit record for one printed formula over its parameter grid.
#[derive(Clone, Debug)]
pub struct CompatEntry {
    pub id: FormulaId,
    /// (α points, parameter points); α is 1 for the one-parameter families.
    pub grid: (usize, usize),
    pub max_abs_deviation: f64,
    pub worst_alpha: f64,
    pub worst_param: f64,
    pub worst_printed: f64,
    pub worst_numeric: f64,
    /// Fraction of grid points whose printed value leaves the measure range
    /// (or is undefined).
    pub invalid_fraction: f64,
    /// Points where the printed expression is undefined (NaN) as typeset.
    pub undefined_points: usize,
    pub verdict: Verdict,
}

/// Full printed-vs-numeric audit.
#[derive(Clone, Debug)]
pub struct CompatReport {
    pub entries: Vec<CompatEntry>,
    pub seed: u64,
    pub config_hash: String,
}

impl CompatReport {
    pub fn entry(&self, id: FormulaId) -> &CompatEntry {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .expect("all formula ids audited")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# tool: clonedel {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "# report: compat");
        let _ = writeln!(out, "# seed: {}", self.seed);
        let _ = writeln!(out, "# config: {}", self.config_hash);
        let _ = writeln!(
            out,
            "{:<9} {:>9} {:>13} {:>13} {:>13} {:>9} {:>6}  verdict",
            "formula", "grid", "max_dev", "printed@worst", "numeric@worst", "invalid", "undef"
        );
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{:<9} {:>4}x{:<4} {:>13.6e} {:>13.6e} {:>13.6e} {:>8.4}% {:>6}  {}",
                e.id.name(),
                e.grid.0,
                e.grid.1,
                e.max_abs_deviation,
                e.worst_printed,
                e.worst_numeric,
                100.0 * e.invalid_fraction,
                e.undefined_points,
                e.verdict
            );
        }
        out
    }

    /// Writes `<dir>/compat_report.txt`.
    pub fn write(&self, dir: &std::path::Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join("compat_report.txt");
        std::fs::write(&path, self.to_text())?;
        Ok(path)
    }
}

/// Runs the printed-vs-numeric audit for every formula: max deviation over
/// the grid, fraction of flagged-invalid points, and a verdict per formula.
/// Deterministic given the seed.
pub fn compat_report(cfg: &SweepConfig) -> Result<CompatReport> {
    audit_formulas(&FormulaId::ALL, cfg)
}

/// Audit restricted to a subset of formulas (used by acceptance criteria
/// that pin only part of the families).
pub fn audit_formulas(ids: &[FormulaId], cfg: &SweepConfig) -> Result<CompatReport> {
    cfg.validate()?;
    let opt = cfg.optimizer();
    let entries: Vec<CompatEntry> = ids.iter().map(|&id| audit_formula(id, cfg, &opt)).collect();
    Ok(CompatReport {
        entries,
        seed: cfg.seed,
        config_hash: cfg.config_hash("compat"),
    })
}

struct PointOutcome {
    deviation: f64,
    alpha: f64,
    param: f64,
    printed: f64,
    numeric: f64,
    invalid: bool,
    undefined: bool,
}

fn audit_formula(id: FormulaId, cfg: &SweepConfig, opt: &OptimizerConfig) -> CompatEntry {
    // discord numerics are optimizer backed; cap their grids like fig2/fig5
    let is_discord = matches!(id, FormulaId::CloneD | FormulaId::DelD);
    let na = if is_discord {
        cfg.alpha_steps.min(DISCORD_GRID_CAP)
    } else {
        cfg.alpha_steps
    };
    let np = if is_discord {
        cfg.param_steps.min(DISCORD_GRID_CAP)
    } else {
        cfg.param_steps
    };

    let one_param = matches!(id, FormulaId::DelN | FormulaId::DelD | FormulaId::DelDg);
    let alphas = if one_param {
        vec![f64::NAN]
    } else {
        linspace(0.0, 1.0, na)
    };
    let params: Vec<f64> = match id {
        FormulaId::CloneN | FormulaId::CloneD | FormulaId::CloneDg => {
            linspace(F_CL_RANGE.0, F_CL_RANGE.1, np)
        }
        FormulaId::DelN | FormulaId::DelD | FormulaId::DelDg => {
            linspace_open(F_DEL_RANGE.0, F_DEL_RANGE.1, np)
        }
        FormulaId::CdDg => linspace(0.75, 0.875, np),
        FormulaId::DcDgAa | FormulaId::DcDgBb => linspace(XI_RANGE.0, XI_RANGE.1, np),
    };

    let outcomes: Vec<PointOutcome> = alphas
        .par_iter()
        .flat_map_iter(|&alpha| {
            let params = params.clone();
            let opt = *opt;
            params.into_iter().map(move |param| {
                let (printed, numeric) = evaluate_pair(id, alpha, param, &opt);
                let undefined = !printed.value.is_finite();
                let deviation = if undefined {
                    0.0
                } else {
                    (printed.value - numeric).abs()
                };
                PointOutcome {
                    deviation,
                    alpha,
                    param,
                    printed: printed.value,
                    numeric,
                    invalid: !printed.valid,
                    undefined,
                }
            })
        })
        .collect();

    let total = outcomes.len();
    let mut worst: Option<&PointOutcome> = None;
    let mut invalid = 0usize;
    let mut undefined = 0usize;
    for o in &outcomes {
        if o.invalid {
            invalid += 1;
        }
        if o.undefined {
            undefined += 1;
        }
        if worst.is_none_or(|w| o.deviation > w.deviation) {
            worst = Some(o);
        }
    }
    let worst = worst.expect("grid is nonempty");
    let max_dev = worst.deviation;
    let verdict = if undefined == 0 && max_dev < COMPAT_TOLERANCE {
        Verdict::Consistent
    } else {
        Verdict::Discrepant
    };
    CompatEntry {
        id,
        grid: (if one_param { 1 } else { na }, np),
        max_abs_deviation: max_dev,
        worst_alpha: worst.alpha,
        worst_param: worst.param,
        worst_printed: worst.printed,
        worst_numeric: worst.numeric,
        invalid_fraction: invalid as f64 / total as f64,
        undefined_points: undefined,
        verdict,
    }
}

/// Printed and numeric values of one formula at one grid point.
fn evaluate_pair(
    id: FormulaId,
    alpha: f64,
    param: f64,
    opt: &OptimizerConfig,
) -> (FormulaValue, f64) {
    match id {
        FormulaId::CloneN => {
            let rho = clone_state(param, alpha);
            (
                formulas::delta_clone(id, param, alpha).unwrap(),
                negativity(&rho).unwrap().0,
            )
        }
        FormulaId::CloneD => {
            let rho = clone_state(param, alpha);
            (
                formulas::delta_clone(id, param, alpha).unwrap(),
                discord(&rho, 1, opt).unwrap().discord,
            )
        }
        FormulaId::CloneDg => {
            let rho = clone_state(param, alpha);
            (
                formulas::delta_clone(id, param, alpha).unwrap(),
                geometric_discord(&rho).unwrap(),
            )
        }
        FormulaId::DelN => {
            let rho = delete_state(param);
            (
                formulas::delta_delete(id, param).unwrap(),
                negativity(&rho).unwrap().0,
            )
        }
        FormulaId::DelD => {
            let rho = delete_state(param);
            (
                formulas::delta_delete(id, param).unwrap(),
                discord(&rho, 1, opt).unwrap().discord,
            )
        }
        FormulaId::DelDg => {
            let rho = delete_state(param);
            (
                formulas::delta_delete(id, param).unwrap(),
                geometric_discord(&rho).unwrap(),
            )
        }
        FormulaId::CdDg => {
            let xi = formulas::xi_from_f3(param).unwrap();
            let machine = MachineParams::new(xi).unwrap();
            let (rho, _) = clone_then_delete(&state_from_alpha(alpha), machine);
            (
                formulas::delta_composite(id, alpha, param).unwrap(),
                geometric_discord(&rho).unwrap(),
            )
        }
        FormulaId::DcDgAa | FormulaId::DcDgBb => {
            let machine = MachineParams::new(param).unwrap();
            let (aa, bb) = delete_then_clone(&state_from_alpha(alpha), machine);
            let rho = if id == FormulaId::DcDgAa { aa } else { bb };
            (
                formulas::delta_composite(id, alpha, param).unwrap(),
                geometric_discord(&rho).unwrap(),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> SweepConfig {
        SweepConfig {
            alpha_steps: 5,
            param_steps: 7,
            seed: 3,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn figure_id_parsing() {
        assert_eq!("fig7".parse::<FigureId>().unwrap(), FigureId::Fig7);
        assert!("fig10".parse::<FigureId>().is_err());
    }

    #[test]
    fn fig1_bell_column_is_half() {
        let d = figure_data(FigureId::Fig1, &small_cfg()).unwrap();
        // rows with f_cl = 0.5 carry numeric negativity 0.5
        let mut seen = 0;
        for row in d.rows.iter().filter(|r| (r[1] - 0.5).abs() < 1e-15) {
            assert!(
                (row[2] - 0.5).abs() < 1e-9,
                "numeric {} at α = {}",
                row[2],
                row[0]
            );
            seen += 1;
        }
        assert_eq!(seen, 5);
    }

    #[test]
    fn fig8_alpha_one_optimal_branch_value() {
        let cfg = SweepConfig {
            alpha_steps: 3,
            param_steps: 3,
            ..SweepConfig::default()
        };
        let d = figure_data(FigureId::Fig8, &cfg).unwrap();
        let row = d
            .rows
            .iter()
            .find(|r| (r[0] - 1.0).abs() < 1e-15 && (r[1] - 1.0 / 6.0).abs() < 1e-12)
            .unwrap();
        assert!((row[2] - 1.0 / 9.0).abs() < 1e-10, "dg_aa {}", row[2]);
    }

    #[test]
    fn datasets_are_byte_identical_across_runs() {
        let cfg = small_cfg();
        for fig in [FigureId::Fig1, FigureId::Fig4, FigureId::Fig8] {
            let a = figure_data(fig, &cfg).unwrap().to_csv();
            let b = figure_data(fig, &cfg).unwrap().to_csv();
            assert_eq!(a, b, "{fig} not deterministic");
        }
    }

    #[test]
    fn compat_verdicts_on_coarse_grid() {
        let cfg = SweepConfig {
            alpha_steps: 9,
            param_steps: 9,
            ..SweepConfig::default()
        };
        let report = compat_report(&cfg).unwrap();
        assert_eq!(
            report.entry(FormulaId::CloneDg).verdict,
            Verdict::Consistent
        );
        assert_eq!(report.entry(FormulaId::DelDg).verdict, Verdict::Consistent);
        assert_eq!(report.entry(FormulaId::DcDgBb).verdict, Verdict::Consistent);
        assert_eq!(report.entry(FormulaId::DelN).verdict, Verdict::Discrepant);
        assert_eq!(report.entry(FormulaId::CloneN).verdict, Verdict::Discrepant);
        assert_eq!(report.entry(FormulaId::CdDg).verdict, Verdict::Discrepant);
        assert!(report.entry(FormulaId::DelN).max_abs_deviation >= 0.5);
    }

    #[test]
    fn compat_flags_aa_branch_interior_mismatch() {
        // the printed aa′-branch closed form replaces the true longitudinal
        // correlation (1 − 4ξ) with (L − 2ξ); the two coincide only at α = 1
        // and ξ = 1/2, so the audit must flag the interior. Confirmed
        // independently by the definition-based oracle at
        // (α² = 1/4, ξ = 1/4): numeric 5/32 vs printed 1/4.
        let cfg = SweepConfig {
            alpha_steps: 9,
            param_steps: 9,
            ..SweepConfig::default()
        };
        let report = compat_report(&cfg).unwrap();
        let e = report.entry(FormulaId::DcDgAa);
        assert_eq!(e.verdict, Verdict::Discrepant);
        assert!(
            e.max_abs_deviation > 0.05,
            "max dev {}",
            e.max_abs_deviation
        );

        let psi = state_from_alpha(0.5);
        let (aa, _) = delete_then_clone(&psi, MachineParams::new(0.25).unwrap());
        let numeric = geometric_discord(&aa).unwrap();
        let printed = formulas::delta_composite(FormulaId::DcDgAa, 0.5, 0.25).unwrap();
        assert!((numeric - 5.0 / 32.0).abs() < 1e-12);
        assert!((printed.value - 0.25).abs() < 1e-12);
    }

    #[test]
    fn fig7_uses_case_key_ordering() {
        let cfg = SweepConfig {
            alpha_steps: 3,
            param_steps: 3,
            ..SweepConfig::default()
        };
        let d = figure_data(FigureId::Fig7, &cfg).unwrap();
        assert_eq!(d.rows.len(), 5 * 3);
        d.validate().unwrap();
        assert!(d.rows.iter().all(|r| r[3] <= 1.0 + 1e-4));
    }
}
