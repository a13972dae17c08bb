//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation zeroes one off-diagonal pair through a complex plane
//! rotation; sweeps repeat until the off-diagonal Frobenius norm drops below
//! `tol::JACOBI_REL * ||m||` or the sweep cap is reached. Good enough and
//! robust for the dimensions used here (≤ 96).

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::tol;

/// Eigenvalues of a Hermitian matrix, ascending. The input is assumed
/// Hermitian; use [`super::hermitian_eigenvalues`] for the checked variant.
pub fn jacobi_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![m.get(0, 0).re];
    }
    let norm = m.frobenius_norm();
    if norm == 0.0 {
        return vec![0.0; n];
    }

    let mut a: Vec<Complex64> = m.entries().to_vec();
    let threshold = tol::JACOBI_REL * norm;

    for _sweep in 0..tol::JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += 2.0 * a[p * n + q].norm_sqr();
            }
        }
        if off.sqrt() <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q, threshold);
            }
        }
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}

/// One Jacobi rotation zeroing a[p][q] (and its mirror).
fn rotate(a: &mut [Complex64], n: usize, p: usize, q: usize, threshold: f64) {
    let apq = a[p * n + q];
    let abs = apq.norm();
    if abs <= threshold * 1e-3 {
        return;
    }
    // phase u = a_pq / |a_pq| makes the pivot real; then the classic
    // symmetric rotation angle applies.
    let u = apq / abs;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // unitary V acts on coordinates (p, q):
    //   V[p][p] = c      V[p][q] = s·u
    //   V[q][p] = -s·ū   V[q][q] = c
    // and we update A ← V† A V.
    let su = u * s;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = akp * c - akq * su.conj();
        let new_kq = akp * su + akq * c;
        a[k * n + p] = new_kp;
        a[k * n + q] = new_kq;
        a[p * n + k] = new_kp.conj();
        a[q * n + k] = new_kq.conj();
    }
    let new_pp = app * c * c - 2.0 * abs * s * c + aqq * s * s;
    let new_qq = app * s * s + 2.0 * abs * s * c + aqq * c * c;
    a[p * n + p] = Complex64::new(new_pp, 0.0);
    a[q * n + q] = Complex64::new(new_qq, 0.0);
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{cx, pauli};
    use approx::assert_abs_diff_eq;

    #[test]
    fn pauli_y_spectrum() {
        let eigs = jacobi_eigenvalues(&pauli(2));
        assert_abs_diff_eq!(eigs[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eigs[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn complex_3x3_known_spectrum() {
        // H = diag(1, 2, 3) conjugated by a known unitary keeps its spectrum;
        // build H directly with complex off-diagonals instead.
        let m = ComplexMatrix::new(
            3,
            3,
            vec![
                cx(2.0, 0.0),
                cx(0.0, -1.0),
                cx(0.0, 0.0),
                cx(0.0, 1.0),
                cx(2.0, 0.0),
                cx(0.0, 0.0),
                cx(0.0, 0.0),
                cx(0.0, 0.0),
                cx(5.0, 0.0),
            ],
        )
        .unwrap();
        let eigs = jacobi_eigenvalues(&m);
        assert_abs_diff_eq!(eigs[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[1], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[2], 5.0, epsilon = 1e-12);
    }
}
