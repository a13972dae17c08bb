//! C ABI for the clonedel library.
//!
//! Conventions: machine output states travel as opaque `CdState` handles
//! allocated by the constructor functions and released with
//! [`cd_state_free`]; every fallible call returns a [`CdStatus`] code and
//! writes its results through out-pointers, which are left untouched on
//! failure. A thread-local message for the most recent failure is available
//! through [`cd_last_error`]. Input amplitudes are passed as (re, im) pairs
//! and must satisfy |α|² + |β|² = 1.
//!
//! The generated header lives at `include/clonedel.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};

use clonedel::correlations::{
    average_discord, bipartite_discord_multi, discord, geometric_discord, negativity,
    OptimizerConfig,
};
use clonedel::machines::{
    alpha_sq_from_fdel, bh_clone, clone_delete_nm, clone_then_delete, delete_2to1, delete_clone_nm,
    delete_then_clone, gm_clone, MachineParams,
};
use clonedel::qmat::{cx, DensityMatrix, QubitState};
use clonedel::Error;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A parameter was outside its admissible range.
    Domain = 2,
    /// The requested size is not supported (clone/delete arities, indices).
    Unsupported = 3,
    /// The inputs do not form a valid quantum state.
    InvalidState = 4,
    /// Any other failure.
    Internal = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let cstring = CString::new(msg).unwrap_or_else(|_| CString::new("invalid message").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn status_of(err: &Error) -> CdStatus {
    match err {
        Error::Domain(_) => CdStatus::Domain,
        Error::UnsupportedSize(_) | Error::InvalidSubsystem { .. } | Error::NotBipartite(_) => {
            CdStatus::Unsupported
        }
        Error::InvalidState(_) | Error::InvalidDensity(_) => CdStatus::InvalidState,
        _ => CdStatus::Internal,
    }
}

fn fail(err: Error) -> CdStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

/// Message for the most recent failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cd_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn cd_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Opaque multiqubit density matrix produced by the machine constructors.
pub struct CdState {
    inner: DensityMatrix,
}

impl CdState {
    fn boxed(inner: DensityMatrix) -> *mut CdState {
        Box::into_raw(Box::new(CdState { inner }))
    }
}

/// Releases a state handle. Null is ignored.
///
/// # Safety
/// `state` must be a pointer previously returned by one of the constructor
/// functions and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cd_state_free(state: *mut CdState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

unsafe fn state_ref<'a>(state: *const CdState) -> Option<&'a DensityMatrix> {
    state.as_ref().map(|s| &s.inner)
}

fn make_qubit(
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
) -> clonedel::Result<QubitState> {
    QubitState::new(cx(alpha_re, alpha_im), cx(beta_re, beta_im))
}

fn optimizer(starts: usize, tol_bits: f64, seed: u64) -> clonedel::Result<OptimizerConfig> {
    let cfg = OptimizerConfig {
        starts,
        tol_bits,
        seed,
        ..OptimizerConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

unsafe fn write_out<T>(ptr: *mut T, value: T) -> CdStatus {
    if ptr.is_null() {
        set_error("null out-pointer".into());
        return CdStatus::NullPointer;
    }
    ptr.write(value);
    CdStatus::Ok
}

/// Number of qubit modes of a state.
///
/// # Safety
/// `state` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_state_mode_count(state: *const CdState, out: *mut usize) -> CdStatus {
    let Some(rho) = state_ref(state) else {
        set_error("null state handle".into());
        return CdStatus::NullPointer;
    };
    write_out(out, rho.dims().len())
}

/// Total Hilbert-space dimension of a state.
///
/// # Safety
/// `state` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_state_dim(state: *const CdState, out: *mut usize) -> CdStatus {
    let Some(rho) = state_ref(state) else {
        set_error("null state handle".into());
        return CdStatus::NullPointer;
    };
    write_out(out, rho.dim())
}

/// One density-matrix entry, split into real and imaginary parts.
///
/// # Safety
/// `state` must be a live handle; `re` and `im` must point to writable
/// memory.
#[no_mangle]
pub unsafe extern "C" fn cd_state_entry(
    state: *const CdState,
    row: usize,
    col: usize,
    re: *mut f64,
    im: *mut f64,
) -> CdStatus {
    let Some(rho) = state_ref(state) else {
        set_error("null state handle".into());
        return CdStatus::NullPointer;
    };
    if row >= rho.dim() || col >= rho.dim() {
        set_error(format!(
            "entry ({row}, {col}) outside a {0}x{0} matrix",
            rho.dim()
        ));
        return CdStatus::Unsupported;
    }
    let v = rho.matrix().get(row, col);
    let s = write_out(re, v.re);
    if s != CdStatus::Ok {
        return s;
    }
    write_out(im, v.im)
}

macro_rules! try_ffi {
    ($expr:expr) => {
        match $expr {
            Ok(v) => v,
            Err(e) => return fail(e),
        }
    };
}

/// Universal 1→2 copier output; writes the two-qubit state handle and the
/// cloning fidelity 1 − ξ.
///
/// # Safety
/// `out_state` and `out_fidelity` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_bh_clone(
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
    xi: f64,
    out_state: *mut *mut CdState,
    out_fidelity: *mut f64,
) -> CdStatus {
    let psi = try_ffi!(make_qubit(alpha_re, alpha_im, beta_re, beta_im));
    let params = try_ffi!(MachineParams::new(xi));
    let (rho, f) = bh_clone(&psi, params);
    let s = write_out(out_fidelity, f);
    if s != CdStatus::Ok {
        return s;
    }
    write_out(out_state, CdState::boxed(rho))
}

/// 2→1 deleter output; writes the two-qubit state handle and the deletion
/// fidelity 1 − |α|²|β|².
///
/// # Safety
/// `out_state` and `out_fidelity` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_delete_2to1(
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
    out_state: *mut *mut CdState,
    out_fidelity: *mut f64,
) -> CdStatus {
    let psi = try_ffi!(make_qubit(alpha_re, alpha_im, beta_re, beta_im));
    let (rho, f) = delete_2to1(&psi);
    let s = write_out(out_fidelity, f);
    if s != CdStatus::Ok {
        return s;
    }
    write_out(out_state, CdState::boxed(rho))
}

/// Copier followed by the 2→1 deleter; writes the state and the fidelity
/// F₃ = (1 + ξ)/(1 + 2ξ).
///
/// # Safety
/// `out_state` and `out_fidelity` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_clone_then_delete(
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
    xi: f64,
    out_state: *mut *mut CdState,
    out_fidelity: *mut f64,
) -> CdStatus {
    let psi = try_ffi!(make_qubit(alpha_re, alpha_im, beta_re, beta_im));
    let params = try_ffi!(MachineParams::new(xi));
    let (rho, f) = clone_then_delete(&psi, params);
    let s = write_out(out_fidelity, f);
    if s != CdStatus::Ok {
        return s;
    }
    write_out(out_state, CdState::boxed(rho))
}

/// 2→1 deleter followed by the copier; writes both branch outputs
/// (cloning the undeleted mode, cloning the blanked mode).
///
/// # Safety
/// `out_aa` and `out_bb` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_delete_then_clone(
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
    xi: f64,
    out_aa: *mut *mut CdState,
    out_bb: *mut *mut CdState,
) -> CdStatus {
    let psi = try_ffi!(make_qubit(alpha_re, alpha_im, beta_re, beta_im));
    let params = try_ffi!(MachineParams::new(xi));
    let (aa, bb) = delete_then_clone(&psi, params);
    if out_aa.is_null() || out_bb.is_null() {
        set_error("null out-pointer".into());
        return CdStatus::NullPointer;
    }
    out_aa.write(CdState::boxed(aa));
    out_bb.write(CdState::boxed(bb));
    CdStatus::Ok
}

/// Universal 1→N cloner output (machine traced out), N between 2 and 4.
///
/// # Safety
/// `out_state` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_gm_clone(
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
    n: usize,
    out_state: *mut *mut CdState,
) -> CdStatus {
    let psi = try_ffi!(make_qubit(alpha_re, alpha_im, beta_re, beta_im));
    let out = try_ffi!(gm_clone(&psi, n));
    write_out(out_state, CdState::boxed(out.clones))
}

/// 1→N cloning then N→M deletion; writes the N-qubit output state.
///
/// # Safety
/// `out_state` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_clone_delete_nm(
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
    n: usize,
    m: usize,
    out_state: *mut *mut CdState,
) -> CdStatus {
    let psi = try_ffi!(make_qubit(alpha_re, alpha_im, beta_re, beta_im));
    let out = try_ffi!(clone_delete_nm(&psi, n, m));
    write_out(out_state, CdState::boxed(out.rho))
}

/// N→1 deletion then 1→M cloning; writes the M-qubit output state.
///
/// # Safety
/// `out_state` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_delete_clone_nm(
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
    n: usize,
    m: usize,
    out_state: *mut *mut CdState,
) -> CdStatus {
    let psi = try_ffi!(make_qubit(alpha_re, alpha_im, beta_re, beta_im));
    let out = try_ffi!(delete_clone_nm(&psi, n, m));
    write_out(out_state, CdState::boxed(out.rho_f))
}

/// Feasible |α|² for a deletion fidelity in [3/4, 1).
///
/// # Safety
/// `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_alpha_sq_from_fdel(f_del: f64, out: *mut f64) -> CdStatus {
    let v = try_ffi!(alpha_sq_from_fdel(f_del));
    write_out(out, v)
}

/// Negativity and logarithmic negativity of a bipartite (two-qubit) state.
///
/// # Safety
/// `state` must be a live handle; `out_n` and `out_log_n` must point to
/// writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_negativity(
    state: *const CdState,
    out_n: *mut f64,
    out_log_n: *mut f64,
) -> CdStatus {
    let Some(rho) = state_ref(state) else {
        set_error("null state handle".into());
        return CdStatus::NullPointer;
    };
    let (n, log_n) = try_ffi!(negativity(rho));
    let s = write_out(out_n, n);
    if s != CdStatus::Ok {
        return s;
    }
    write_out(out_log_n, log_n)
}

/// Geometric discord of a two-qubit state (Bloch closed form).
///
/// # Safety
/// `state` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_geometric_discord(state: *const CdState, out: *mut f64) -> CdStatus {
    let Some(rho) = state_ref(state) else {
        set_error("null state handle".into());
        return CdStatus::NullPointer;
    };
    let v = try_ffi!(geometric_discord(rho));
    write_out(out, v)
}

/// Quantum discord of a bipartite state, measuring subsystem `measured`
/// (0 or 1). `starts`, `tol_bits` and `seed` configure the minimizer;
/// pass 5, 1e-6 and 0 for the defaults.
///
/// # Safety
/// `state` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_discord(
    state: *const CdState,
    measured: usize,
    starts: usize,
    tol_bits: f64,
    seed: u64,
    out: *mut f64,
) -> CdStatus {
    let Some(rho) = state_ref(state) else {
        set_error("null state handle".into());
        return CdStatus::NullPointer;
    };
    let cfg = try_ffi!(optimizer(starts, tol_bits, seed));
    let d = try_ffi!(discord(rho, measured, &cfg));
    write_out(out, d.discord)
}

/// Bipartite discord D(kept | rest) of an N-qubit state (N between 2 and
/// 4); an upper bound from the seeded multistart search.
///
/// # Safety
/// `state` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_bipartite_discord(
    state: *const CdState,
    kept: usize,
    starts: usize,
    tol_bits: f64,
    seed: u64,
    out: *mut f64,
) -> CdStatus {
    let Some(rho) = state_ref(state) else {
        set_error("null state handle".into());
        return CdStatus::NullPointer;
    };
    let cfg = try_ffi!(optimizer(starts, tol_bits, seed));
    let d = try_ffi!(bipartite_discord_multi(rho, kept, &cfg));
    write_out(out, d.discord)
}

/// Average bipartite discord δ over all kept-mode choices.
///
/// # Safety
/// `state` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn cd_average_discord(
    state: *const CdState,
    starts: usize,
    tol_bits: f64,
    seed: u64,
    out: *mut f64,
) -> CdStatus {
    let Some(rho) = state_ref(state) else {
        set_error("null state handle".into());
        return CdStatus::NullPointer;
    };
    let cfg = try_ffi!(optimizer(starts, tol_bits, seed));
    let avg = try_ffi!(average_discord(rho, &cfg));
    write_out(out, avg.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    unsafe fn bell_state() -> *mut CdState {
        let mut state: *mut CdState = ptr::null_mut();
        let mut fidelity = 0.0;
        let status = cd_bh_clone(0.6, 0.0, 0.8, 0.0, 0.5, &mut state, &mut fidelity);
        assert_eq!(status, CdStatus::Ok);
        assert!((fidelity - 0.5).abs() < 1e-12);
        state
    }

    #[test]
    fn version_is_a_c_string() {
        let v = unsafe { CStr::from_ptr(cd_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn bell_point_measures_through_the_abi() {
        unsafe {
            let state = bell_state();
            let mut n = 0.0;
            let mut log_n = 0.0;
            assert_eq!(cd_negativity(state, &mut n, &mut log_n), CdStatus::Ok);
            assert!((n - 0.5).abs() < 1e-12);
            assert!((log_n - 1.0).abs() < 1e-12);

            let mut dg = 0.0;
            assert_eq!(cd_geometric_discord(state, &mut dg), CdStatus::Ok);
            assert!((dg - 1.0).abs() < 1e-12);

            let mut d = 0.0;
            assert_eq!(cd_discord(state, 1, 5, 1e-6, 0, &mut d), CdStatus::Ok);
            assert!((d - 1.0).abs() < 1e-4);

            cd_state_free(state);
        }
    }

    #[test]
    fn deletion_floor_through_the_abi() {
        unsafe {
            let mut state: *mut CdState = ptr::null_mut();
            let mut fidelity = 0.0;
            let status = cd_delete_2to1(INV_SQRT2, 0.0, INV_SQRT2, 0.0, &mut state, &mut fidelity);
            assert_eq!(status, CdStatus::Ok);
            assert!((fidelity - 0.75).abs() < 1e-12);
            let mut n = 0.0;
            let mut log_n = 0.0;
            assert_eq!(cd_negativity(state, &mut n, &mut log_n), CdStatus::Ok);
            assert!((n - (5f64.sqrt() - 1.0) / 8.0).abs() < 1e-12);
            cd_state_free(state);
        }
    }

    #[test]
    fn state_introspection() {
        unsafe {
            let state = bell_state();
            let mut modes = 0usize;
            let mut dim = 0usize;
            assert_eq!(cd_state_mode_count(state, &mut modes), CdStatus::Ok);
            assert_eq!(cd_state_dim(state, &mut dim), CdStatus::Ok);
            assert_eq!((modes, dim), (2, 4));
            let (mut re, mut im) = (0.0, 0.0);
            assert_eq!(cd_state_entry(state, 1, 2, &mut re, &mut im), CdStatus::Ok);
            assert!((re - 0.5).abs() < 1e-12 && im.abs() < 1e-15);
            assert_eq!(
                cd_state_entry(state, 4, 0, &mut re, &mut im),
                CdStatus::Unsupported
            );
            cd_state_free(state);
        }
    }

    #[test]
    fn domain_errors_surface_as_codes_and_messages() {
        unsafe {
            let mut state: *mut CdState = ptr::null_mut();
            let mut fidelity = 0.0;
            let status = cd_bh_clone(0.6, 0.0, 0.8, 0.0, 0.05, &mut state, &mut fidelity);
            assert_eq!(status, CdStatus::Domain);
            assert!(state.is_null());
            let msg = CStr::from_ptr(cd_last_error()).to_str().unwrap();
            assert!(msg.contains("machine parameter"), "{msg}");

            let bad_norm = cd_bh_clone(1.0, 0.0, 1.0, 0.0, 0.25, &mut state, &mut fidelity);
            assert_eq!(bad_norm, CdStatus::InvalidState);

            let mut a2 = 0.0;
            assert_eq!(cd_alpha_sq_from_fdel(0.5, &mut a2), CdStatus::Domain);
            assert_eq!(cd_alpha_sq_from_fdel(0.8125, &mut a2), CdStatus::Ok);
            assert!((a2 - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn null_pointers_are_rejected() {
        unsafe {
            assert_eq!(
                cd_negativity(ptr::null(), &mut 0.0, &mut 0.0),
                CdStatus::NullPointer
            );
            let state = bell_state();
            assert_eq!(
                cd_negativity(state, ptr::null_mut(), &mut 0.0),
                CdStatus::NullPointer
            );
            cd_state_free(state);
            cd_state_free(ptr::null_mut());
        }
    }

    #[test]
    fn multiqubit_pipeline_through_the_abi() {
        unsafe {
            let mut state: *mut CdState = ptr::null_mut();
            let status = cd_clone_delete_nm(0.6, 0.0, 0.8, 0.0, 3, 1, &mut state);
            assert_eq!(status, CdStatus::Ok);
            let mut modes = 0usize;
            cd_state_mode_count(state, &mut modes);
            assert_eq!(modes, 3);
            let mut delta = 0.0;
            assert_eq!(
                cd_average_discord(state, 2, 1e-5, 1, &mut delta),
                CdStatus::Ok
            );
            assert!(delta > 0.0 && delta <= 1.0 + 1e-4);
            cd_state_free(state);

            assert_eq!(
                cd_clone_delete_nm(0.6, 0.0, 0.8, 0.0, 5, 1, &mut state),
                CdStatus::Unsupported
            );
        }
    }

    #[test]
    fn generated_header_exports_the_surface() {
        let header = include_str!("../include/clonedel.h");
        for symbol in [
            "cd_bh_clone",
            "cd_delete_2to1",
            "cd_clone_then_delete",
            "cd_delete_then_clone",
            "cd_gm_clone",
            "cd_clone_delete_nm",
            "cd_delete_clone_nm",
            "cd_negativity",
            "cd_geometric_discord",
            "cd_discord",
            "cd_bipartite_discord",
            "cd_average_discord",
            "cd_state_free",
            "cd_last_error",
            "CdStatus",
            "CdState",
        ] {
            assert!(header.contains(symbol), "header missing {symbol}");
        }
    }
}
