//! Derivative-free minimization helpers: a Nelder–Mead simplex and the
//! complex-Givens parameterization of measurement unitaries.

use num_complex::Complex64;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Nelder–Mead simplex minimizer with the standard coefficients
/// (reflection 1, expansion 2, contraction 0.5, shrink 0.5).
pub struct NelderMead {
    pub max_iters: usize,
    /// Convergence when the best-to-worst objective spread drops below this.
    pub tol: f64,
}

pub struct NmOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub spread: f64,
}

impl NelderMead {
    pub fn minimize<F: FnMut(&[f64]) -> f64>(
        &self,
        mut f: F,
        x0: &[f64],
        steps: &[f64],
    ) -> NmOutcome {
        let n = x0.len();
        let mut evals = 0usize;
        let mut eval = |x: &[f64], evals: &mut usize| -> f64 {
            *evals += 1;
            f(x)
        };

        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.to_vec());
        for i in 0..n {
            let mut v = x0.to_vec();
            v[i] += steps[i];
            simplex.push(v);
        }
        let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, &mut evals)).collect();

        for _ in 0..self.max_iters {
            // order ascending by value
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            let best = order[0];
            let worst = order[n];
            let second_worst = order[n - 1];
            let spread = values[worst] - values[best];
            if spread.abs() < self.tol {
                break;
            }

            // centroid of all but the worst
            let mut centroid = vec![0.0; n];
            for &i in order.iter().take(n) {
                for k in 0..n {
                    centroid[k] += simplex[i][k];
                }
            }
            for c in centroid.iter_mut() {
                *c /= n as f64;
            }

            let reflect: Vec<f64> = (0..n)
                .map(|k| centroid[k] + (centroid[k] - simplex[worst][k]))
                .collect();
            let f_reflect = eval(&reflect, &mut evals);

            if f_reflect < values[best] {
                let expand: Vec<f64> = (0..n)
                    .map(|k| centroid[k] + 2.0 * (centroid[k] - simplex[worst][k]))
                    .collect();
                let f_expand = eval(&expand, &mut evals);
                if f_expand < f_reflect {
                    simplex[worst] = expand;
                    values[worst] = f_expand;
                } else {
                    simplex[worst] = reflect;
                    values[worst] = f_reflect;
                }
            } else if f_reflect < values[second_worst] {
                simplex[worst] = reflect;
                values[worst] = f_reflect;
            } else {
                let contract: Vec<f64> = (0..n)
                    .map(|k| centroid[k] + 0.5 * (simplex[worst][k] - centroid[k]))
                    .collect();
                let f_contract = eval(&contract, &mut evals);
                if f_contract < values[worst] {
                    simplex[worst] = contract;
                    values[worst] = f_contract;
                } else {
                    // shrink toward the best vertex
                    let best_point = simplex[best].clone();
                    for i in 0..=n {
                        if i == best {
                            continue;
                        }
                        for k in 0..n {
                            simplex[i][k] = best_point[k] + 0.5 * (simplex[i][k] - best_point[k]);
                        }
                        values[i] = eval(&simplex[i].clone(), &mut evals);
                    }
                }
            }
        }

        let mut best_idx = 0;
        for i in 1..=n {
            if values[i] < values[best_idx] {
                best_idx = i;
            }
        }
        let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - values[best_idx];
        NmOutcome {
            x: simplex[best_idx].clone(),
            value: values[best_idx],
            evals,
            spread,
        }
    }
}

/// Number of Givens rotations parameterizing a d-dimensional unitary
/// (two real angles each).
pub fn givens_count(d: usize) -> usize {
    d * (d - 1) / 2
}

/// The rotation plane sequence used by both compose and decompose.
fn planes(d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(givens_count(d));
    for j in 0..d {
        for i in j + 1..d {
            out.push((j, i));
        }
    }
    out
}

/// Builds a d×d unitary (row-major) from 2·d(d−1)/2 angles laid out as
/// `[θ₀, φ₀, θ₁, φ₁, ...]`, applied to the computational basis.
pub fn givens_compose(d: usize, angles: &[f64]) -> Vec<Complex64> {
    assert_eq!(angles.len(), 2 * givens_count(d));
    let mut m = vec![cx(0.0, 0.0); d * d];
    for k in 0..d {
        m[k * d + k] = cx(1.0, 0.0);
    }
    // M = G₁† G₂† … G_K†, built by left-multiplying adjoints in reverse order
    for (k, &(j, i)) in planes(d).iter().enumerate().rev() {
        let theta = angles[2 * k];
        let phi = angles[2 * k + 1];
        let (s, c) = theta.sin_cos();
        let e_pos = cx(0.0, phi).exp();
        let e_neg = e_pos.conj();
        for col in 0..d {
            let mj = m[j * d + col];
            let mi = m[i * d + col];
            m[j * d + col] = mj * c - mi * (e_pos * s);
            m[i * d + col] = mj * (e_neg * s) + mi * c;
        }
    }
    m
}

/// Recovers Givens angles whose composed unitary matches `u` column by
/// column up to per-column phases (projectors are phase-invariant).
pub fn givens_decompose(d: usize, u: &[Complex64]) -> Vec<f64> {
    assert_eq!(u.len(), d * d);
    let mut w = u.to_vec();
    let mut angles = Vec::with_capacity(2 * givens_count(d));
    for (j, i) in planes(d) {
        let a = w[j * d + j];
        let b = w[i * d + j];
        let (theta, phi) = if b.norm() <= 1e-300 {
            (0.0, 0.0)
        } else if a.norm() <= 1e-14 * b.norm() {
            (std::f64::consts::FRAC_PI_2, 0.0)
        } else {
            let ratio = b / a;
            (ratio.norm().atan(), -ratio.arg())
        };
        angles.push(theta);
        angles.push(phi);
        // apply G(j,i;θ,φ) to W: rowⱼ ← c·rowⱼ + s·e^{iφ}·rowᵢ,
        //                        rowᵢ ← −s·e^{−iφ}·rowⱼ + c·rowᵢ
        let (s, c) = theta.sin_cos();
        let e_pos = cx(0.0, phi).exp();
        let e_neg = e_pos.conj();
        for col in 0..d {
            let wj = w[j * d + col];
            let wi = w[i * d + col];
            w[j * d + col] = wj * c + wi * (e_pos * s);
            w[i * d + col] = -wj * (e_neg * s) + wi * c;
        }
    }
    angles
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn nelder_mead_quadratic_bowl() {
        let nm = NelderMead {
            max_iters: 500,
            tol: 1e-12,
        };
        let out = nm.minimize(
            |x| (x[0] - 1.5).powi(2) + 3.0 * (x[1] + 0.5).powi(2),
            &[0.0, 0.0],
            &[0.4, 0.4],
        );
        assert_abs_diff_eq!(out.x[0], 1.5, epsilon = 1e-5);
        assert_abs_diff_eq!(out.x[1], -0.5, epsilon = 1e-5);
        assert!(out.value < 1e-9);
    }

    fn is_unitary(d: usize, m: &[Complex64]) -> bool {
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut dot = cx(0.0, 0.0);
                for k in 0..d {
                    dot += m[k * d + i].conj() * m[k * d + j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - cx(want, 0.0)).norm());
            }
        }
        worst < 1e-10
    }

    #[test]
    fn compose_is_unitary() {
        let d = 4;
        let angles: Vec<f64> = (0..2 * givens_count(d))
            .map(|k| 0.3 + 0.17 * k as f64)
            .collect();
        let u = givens_compose(d, &angles);
        assert!(is_unitary(d, &u));
    }

    #[test]
    fn decompose_roundtrip_matches_columns_up_to_phase() {
        for d in [2usize, 4, 8] {
            let angles: Vec<f64> = (0..2 * givens_count(d))
                .map(|k| (0.11 * (k as f64 + 1.0)).sin() * 1.3)
                .collect();
            let u = givens_compose(d, &angles);
            let recovered = givens_decompose(d, &u);
            let v = givens_compose(d, &recovered);
            assert!(is_unitary(d, &v));
            for col in 0..d {
                let mut dot = cx(0.0, 0.0);
                for k in 0..d {
                    dot += u[k * d + col].conj() * v[k * d + col];
                }
                assert_abs_diff_eq!(dot.norm(), 1.0, epsilon = 1e-9);
            }
        }
    }
}
