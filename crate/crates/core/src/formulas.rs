//! Verbatim evaluation of the printed closed-form correlation expressions
//! for the machine outputs, exactly as typeset, with a machine-readable
//! validity flag instead of any attempted repair.
//!
//! Several printed expressions leave the measure's admissible range (or go
//! undefined) in parts of their nominal domain; this module is the evidence
//! generator for auditing them against the numeric pipeline, so out-of-range
//! results are returned flagged, never silently clipped. The compatibility
//! report in [`crate::sweep`] is the single home for printed-vs-numeric
//! deviations; nothing here warns on its own.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

const RANGE_SLACK: f64 = 1e-12;

/// One printed closed-form expression. Each id maps to exactly one
/// published formula for the correlation of a specific machine output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaId {
    /// Negativity of the copier output, in terms of (F_cl, α).
    CloneN,
    /// Discord of the copier output.
    CloneD,
    /// Geometric discord of the copier output.
    CloneDg,
    /// Negativity of the 2→1 deleter output, in terms of F_del.
    DelN,
    /// Discord of the 2→1 deleter output.
    DelD,
    /// Geometric discord of the 2→1 deleter output.
    DelDg,
    /// Geometric discord of the clone-then-delete output, in (α, F₃).
    CdDg,
    /// Geometric discord of the delete-then-clone aa′ branch, in (α, ξ).
    DcDgAa,
    /// Geometric discord of the delete-then-clone bb′ branch, in (α, ξ).
    DcDgBb,
}

impl FormulaId {
    pub const ALL: [FormulaId; 9] = [
        FormulaId::CloneN,
        FormulaId::CloneD,
        FormulaId::CloneDg,
        FormulaId::DelN,
        FormulaId::DelD,
        FormulaId::DelDg,
        FormulaId::CdDg,
        FormulaId::DcDgAa,
        FormulaId::DcDgBb,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FormulaId::CloneN => "CLONE_N",
            FormulaId::CloneD => "CLONE_D",
            FormulaId::CloneDg => "CLONE_DG",
            FormulaId::DelN => "DEL_N",
            FormulaId::DelD => "DEL_D",
            FormulaId::DelDg => "DEL_DG",
            FormulaId::CdDg => "CD_DG",
            FormulaId::DcDgAa => "DC_DG_AA",
            FormulaId::DcDgBb => "DC_DG_BB",
        }
    }

    /// Admissible range [K_min, K_max] of the measure the formula targets.
    pub fn measure_range(&self) -> (f64, f64) {
        match self {
            FormulaId::CloneN | FormulaId::DelN => (0.0, 0.5),
            _ => (0.0, 1.0),
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("formula id '{s}'")))
    }
}

/// A printed-formula evaluation: the raw value (possibly NaN where the
/// expression is undefined as typeset) and whether it lies inside the
/// measure's admissible range.
#[derive(Clone, Copy, Debug)]
pub struct FormulaValue {
    pub value: f64,
    pub valid: bool,
}

fn flagged(id: FormulaId, value: f64) -> FormulaValue {
    let (lo, hi) = id.measure_range();
    let valid = value.is_finite() && value >= lo - RANGE_SLACK && value <= hi + RANGE_SLACK;
    FormulaValue { value, valid }
}

/// −x log₂ x with the 0·log 0 = 0 convention; NaN for negative arguments.
fn term(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Binary entropy H(x) = −x log₂ x − (1−x) log₂(1−x); NaN outside [0, 1].
fn h_binary(x: f64) -> f64 {
    term(x) + term(1.0 - x)
}

fn check_clone_domain(f_cl: f64, alpha: f64) -> Result<()> {
    if !(0.5 - RANGE_SLACK..=5.0 / 6.0 + RANGE_SLACK).contains(&f_cl) {
        return Err(Error::Domain(format!(
            "cloning fidelity {f_cl} outside [1/2, 5/6]"
        )));
    }
    if !(0.0..=1.0 + RANGE_SLACK).contains(&alpha) {
        return Err(Error::Domain(format!(
            "input parameter α = {alpha} outside [0, 1]"
        )));
    }
    Ok(())
}

/// Printed correlation of the copier output as a function of the cloning
/// fidelity and the (real) input parameter α.
pub fn delta_clone(id: FormulaId, f_cl: f64, alpha: f64) -> Result<FormulaValue> {
    check_clone_domain(f_cl, alpha)?;
    let a2 = alpha * alpha;
    let b2 = 1.0 - a2;
    let value = match id {
        FormulaId::CloneN => {
            let g1 = (f_cl - 1.0) * (f_cl - 1.0);
            let g2 = (2.0 * f_cl - 1.0) * (2.0 * f_cl - 1.0);
            let f1 = a2 * b2;
            let f2 = (1.0 + 0.5 * a2 - a2) * b2;
            let f3 = a2 * (a2 + 0.5 * b2);
            0.5 * (2.0 * (g1 + 0.5 * g2 * f1).sqrt()
                + (g1 + g2 * f2).sqrt()
                + (g1 + g2 * f3).sqrt()
                - 1.0)
        }
        FormulaId::CloneD => {
            let n = a2 + (1.0 - 2.0 * a2) * f_cl;
            let m = n - 1.0;
            let c_plus = f_cl * (-2.0 - 10.0 * a2 + f_cl * (1.0 + 8.0 * a2)) + 3.0 * a2;
            let c_minus = f_cl * (-2.0 - 10.0 * a2 + f_cl * (1.0 + 8.0 * a2)) - 3.0 * a2;
            let x_plus = 0.5 * (1.0 + (1.0 + c_plus).sqrt() / m);
            let y_plus = 0.5 * (1.0 + (4.0 + f_cl * (7.0 - 5.0 * f_cl) + c_minus).sqrt() / n);
            h_binary(f_cl) + m * h_binary(x_plus) - n * h_binary(y_plus)
        }
        FormulaId::CloneDg => {
            let lambda = (1.0 - f_cl) * (1.0 - f_cl);
            let p = 2.25 - 15.0 * f_cl + 37.0 * f_cl.powi(2) - 40.0 * f_cl.powi(3)
                + 16.0 * f_cl.powi(4);
            let q = 5.0 - 36.0 * f_cl + 96.0 * f_cl.powi(2) - 112.0 * f_cl.powi(3)
                + 48.0 * f_cl.powi(4);
            let root = (p - a2 * b2 * q).sqrt();
            let base = 3.5 - 9.0 * f_cl + 6.0 * f_cl * f_cl;
            let l_plus = 0.5 * (base + root);
            let l_minus = 0.5 * (base - root);
            2.0 * (lambda + l_plus + l_minus - lambda.max(l_plus).max(l_minus))
        }
        other => {
            return Err(Error::Domain(format!("{other} is not a copier formula")));
        }
    };
    Ok(flagged(id, value))
}

fn check_delete_domain(f_del: f64) -> Result<()> {
    if !(0.75 - RANGE_SLACK..1.0).contains(&f_del) {
        return Err(Error::Domain(format!(
            "deletion fidelity {f_del} outside [3/4, 1)"
        )));
    }
    Ok(())
}

/// Printed correlation of the 2→1 deleter output as a function of the
/// deletion fidelity.
pub fn delta_delete(id: FormulaId, f_del: f64) -> Result<FormulaValue> {
    check_delete_domain(f_del)?;
    let a = (4.0 * f_del - 3.0).max(0.0).sqrt();
    let value = match id {
        FormulaId::DelN => {
            0.5 * (((1.0 - a) / 4.0) * ((1.0 + a) * (1.0 + a) + 1.0).sqrt() + (2.0 - a) * (1.0 + a)
                - 1.0)
        }
        FormulaId::DelD => {
            let c = (a + 1.0) / (2.0 * f_del);
            let t_plus = 0.5 * (1.0 - a);
            let root = (14.0 - 2.0 * a + 4.0 * f_del * (a + 5.0 * f_del - 8.0)).sqrt();
            let s_plus = 0.25 * (3.0 - 2.0 * f_del + a + root);
            let s_minus = 0.25 * (3.0 - 2.0 * f_del + a - root);
            (6.0f64 / 5.0).powi(2)
                * (h_binary(c) + h_binary(t_plus)
                    - term(t_plus * t_plus)
                    - (term(s_plus) + term(s_minus)))
        }
        FormulaId::DelDg => {
            let k_plus = 0.5 * (1.0 - a) * (1.0 + 0.5 * (a - 1.0));
            let k_minus = 0.5 * (1.0 - a) * (1.0 - 0.5 * (a - 1.0));
            let l_plus = k_minus + k_plus - 1.0;
            let l_minus = k_minus - k_plus - 1.0;
            let lambda0 = 0.25 * (l_minus * l_minus + l_plus * l_plus);
            let lambda1 = k_plus * k_plus;
            2.0 * (lambda0 + 2.0 * lambda1 - lambda0.max(lambda1))
        }
        other => {
            return Err(Error::Domain(format!("{other} is not a deleter formula")));
        }
    };
    Ok(flagged(id, value))
}

/// Printed total geometric discord of the composite machines. `CdDg` takes
/// F₃ ∈ [3/4, 7/8]; the delete-then-clone branches take ξ ∈ [1/6, 1/2].
pub fn delta_composite(id: FormulaId, alpha: f64, xi_or_f3: f64) -> Result<FormulaValue> {
    if !(0.0..=1.0 + RANGE_SLACK).contains(&alpha) {
        return Err(Error::Domain(format!(
            "input parameter α = {alpha} outside [0, 1]"
        )));
    }
    let a2 = alpha * alpha;
    let b2 = 1.0 - a2;
    let value = match id {
        FormulaId::CdDg => {
            let f3 = xi_or_f3;
            if !(0.75 - RANGE_SLACK..=0.875 + RANGE_SLACK).contains(&f3) {
                return Err(Error::Domain(format!(
                    "fidelity F₃ = {f3} outside [3/4, 7/8]"
                )));
            }
            let lambda0 = 0.5
                + 2f64.sqrt() * a2 * a2 * (1.0 - 2.0 * f3) * (1.0 - 2.0 * f3)
                + 2.0 * a2 * f3 * (1.0 - 2.0 * f3)
                - f3 * (1.0 - f3);
            let lambda1 = (1.0 - f3) * (1.0 - f3);
            2.0 * (lambda0 + 2.0 * lambda1 - lambda0.max(lambda1))
        }
        FormulaId::DcDgAa | FormulaId::DcDgBb => {
            let xi = xi_or_f3;
            if !(1.0 / 6.0 - RANGE_SLACK..=0.5 + RANGE_SLACK).contains(&xi) {
                return Err(Error::Domain(format!(
                    "machine parameter ξ = {xi} outside [1/6, 1/2]"
                )));
            }
            let lambda1 = xi * xi;
            let lambda0 = if id == FormulaId::DcDgAa {
                let l = (1.0 - 2.0 * xi) * (a2 - b2);
                0.25 * (l * l + (l - 2.0 * xi) * (l - 2.0 * xi))
            } else {
                let j = (1.0 - 2.0 * xi) * (1.0 - 2.0 * a2 * b2);
                0.25 * (j * j + (1.0 - 4.0 * xi) * (1.0 - 4.0 * xi))
            };
            2.0 * (lambda0 + 2.0 * lambda1 - lambda0.max(lambda1))
        }
        other => {
            return Err(Error::Domain(format!("{other} is not a composite formula")));
        }
    };
    Ok(flagged(id, value))
}

/// Fidelity of deleting imperfect cloned copies: F₃ = (1 + ξ)/(1 + 2ξ).
pub fn f3_from_xi(xi: f64) -> Result<f64> {
    if !(1.0 / 6.0 - RANGE_SLACK..=0.5 + RANGE_SLACK).contains(&xi) {
        return Err(Error::Domain(format!(
            "machine parameter ξ = {xi} outside [1/6, 1/2]"
        )));
    }
    Ok((1.0 + xi) / (1.0 + 2.0 * xi))
}

/// Inverse of [`f3_from_xi`]: ξ = (1 − F₃)/(2F₃ − 1) for F₃ ∈ [3/4, 7/8].
pub fn xi_from_f3(f3: f64) -> Result<f64> {
    if !(0.75 - RANGE_SLACK..=0.875 + RANGE_SLACK).contains(&f3) {
        return Err(Error::Domain(format!(
            "fidelity F₃ = {f3} outside [3/4, 7/8]"
        )));
    }
    Ok((1.0 - f3) / (2.0 * f3 - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::geometric_discord;
    use crate::machines::{bh_clone, MachineParams};
    use crate::qmat::QubitState;
    use approx::assert_abs_diff_eq;

    #[test]
    fn clone_negativity_at_bell_point() {
        for alpha in [0.0, 0.3, 0.7, 1.0] {
            let v = delta_clone(FormulaId::CloneN, 0.5, alpha).unwrap();
            assert_abs_diff_eq!(v.value, 0.5, epsilon = 1e-12);
            assert!(v.valid);
        }
    }

    #[test]
    fn clone_geometric_discord_at_optimum() {
        let v = delta_clone(FormulaId::CloneDg, 5.0 / 6.0, 1.0).unwrap();
        assert_abs_diff_eq!(v.value, 1.0 / 9.0, epsilon = 1e-12);
        assert!(v.valid);
    }

    #[test]
    fn clone_negativity_printed_exceeds_numeric_at_optimum() {
        // printed 0.093592… vs the numeric value (√5 − 2)/6 ≈ 0.039345 of the
        // same state: a locked-in transcription discrepancy
        let v = delta_clone(FormulaId::CloneN, 5.0 / 6.0, 1.0).unwrap();
        assert_abs_diff_eq!(v.value, 0.0935921354681384, epsilon = 1e-12);
        assert!(v.valid);
        assert!((v.value - (5f64.sqrt() - 2.0) / 6.0).abs() > 0.05);
    }

    #[test]
    fn clone_discord_goes_undefined_as_printed() {
        // the Y₊ argument exceeds 1 here, making its entropy term NaN
        let v = delta_clone(FormulaId::CloneD, 0.5, 1.0 / 2f64.sqrt()).unwrap();
        assert!(v.value.is_nan());
        assert!(!v.valid);
    }

    #[test]
    fn clone_rejects_out_of_domain() {
        assert!(delta_clone(FormulaId::CloneN, 0.4, 0.5).is_err());
        assert!(delta_clone(FormulaId::CloneN, 0.9, 0.5).is_err());
        assert!(delta_clone(FormulaId::DelN, 0.6, 0.5).is_err());
    }

    #[test]
    fn delete_negativity_exceeds_measure_range_at_floor() {
        let v = delta_delete(FormulaId::DelN, 0.75).unwrap();
        assert_abs_diff_eq!(v.value, 0.5 + 2f64.sqrt() / 8.0, epsilon = 1e-12);
        assert!(
            !v.valid,
            "printed value {} exceeds the negativity maximum",
            v.value
        );
    }

    #[test]
    fn delete_geometric_discord_at_floor_and_limit() {
        let v = delta_delete(FormulaId::DelDg, 0.75).unwrap();
        assert_abs_diff_eq!(v.value, 0.25, epsilon = 1e-12);
        assert!(v.valid);
        let near_one = delta_delete(FormulaId::DelDg, 1.0 - 1e-9).unwrap();
        assert!(near_one.value.abs() < 1e-4);
    }

    #[test]
    fn delete_rejects_out_of_domain() {
        assert!(delta_delete(FormulaId::DelN, 0.7).is_err());
        assert!(delta_delete(FormulaId::DelN, 1.0).is_err());
        assert!(delta_delete(FormulaId::CloneN, 0.8).is_err());
    }

    #[test]
    fn composite_aa_branch_values() {
        let bell = delta_composite(FormulaId::DcDgAa, 0.3, 0.5).unwrap();
        assert_abs_diff_eq!(bell.value, 1.0, epsilon = 1e-12);
        let v = delta_composite(FormulaId::DcDgAa, 1.0, 1.0 / 6.0).unwrap();
        assert_abs_diff_eq!(v.value, 1.0 / 9.0, epsilon = 1e-12);
    }

    #[test]
    fn composite_bb_branch_value() {
        let v = delta_composite(FormulaId::DcDgBb, 1.0 / 2f64.sqrt(), 1.0 / 6.0).unwrap();
        assert_abs_diff_eq!(v.value, 1.0 / 9.0, epsilon = 1e-12);
    }

    #[test]
    fn composite_cd_goes_negative_as_printed() {
        let v = delta_composite(FormulaId::CdDg, 1.0, 0.875).unwrap();
        assert_abs_diff_eq!(v.value, -0.2215097423302677, epsilon = 1e-12);
        assert!(!v.valid);
    }

    #[test]
    fn f3_endpoints() {
        assert_abs_diff_eq!(f3_from_xi(1.0 / 6.0).unwrap(), 7.0 / 8.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f3_from_xi(0.5).unwrap(), 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(f3_from_xi(0.25).unwrap(), 5.0 / 6.0, epsilon = 1e-15);
        assert!(f3_from_xi(0.1).is_err());
    }

    #[test]
    fn xi_f3_roundtrip() {
        for xi in [1.0 / 6.0, 0.2, 0.35, 0.5] {
            let f3 = f3_from_xi(xi).unwrap();
            assert_abs_diff_eq!(xi_from_f3(f3).unwrap(), xi, epsilon = 1e-12);
        }
    }

    #[test]
    fn clone_dg_formula_tracks_numeric_interior_point() {
        // spot equivalence away from the endpoints
        let f_cl = 2.0 / 3.0;
        for alpha in [0.0, 0.4, 1.0 / 2f64.sqrt(), 1.0] {
            let printed = delta_clone(FormulaId::CloneDg, f_cl, alpha).unwrap();
            let psi = QubitState::from_alpha(alpha).unwrap();
            let (rho, _) = bh_clone(&psi, MachineParams::from_fidelity(f_cl).unwrap());
            let numeric = geometric_discord(&rho).unwrap();
            assert_abs_diff_eq!(printed.value, numeric, epsilon = 1e-10);
        }
    }

    #[test]
    fn formula_id_parsing() {
        assert_eq!("clone_dg".parse::<FormulaId>().unwrap(), FormulaId::CloneDg);
        assert_eq!("DEL_N".parse::<FormulaId>().unwrap(), FormulaId::DelN);
        assert!("nope".parse::<FormulaId>().is_err());
    }
}
