//! Lower-bound estimation of unconditionality constants by multi-start
//! derivative-free maximization over coefficients and signs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::numeric;
use super::{NormKind, NormSpace, SignMode};
use crate::opt::{multi_start_max, OptBudget};
use crate::{Error, Result};

/// A found ratio ‖Σε_q a_q e_q‖ / ‖Σε'_q a_q e_q‖ together with its
/// certificate; a valid lower bound on the unconditionality constant by
/// construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UncondEstimate {
    pub value: f64,
    pub coefficients: Vec<Cx>,
    pub eps_max: Vec<Cx>,
    pub eps_min: Vec<Cx>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(c: Complex64) -> Self {
        Cx { re: c.re, im: c.im }
    }
}

impl From<Cx> for Complex64 {
    fn from(c: Cx) -> Self {
        Complex64::new(c.re, c.im)
    }
}

fn signed_terms(freqs: &[i64], coeffs: &[Complex64], eps: &[Complex64]) -> Vec<(i64, Complex64)> {
    freqs
        .iter()
        .zip(coeffs)
        .zip(eps)
        .map(|((&q, &c), &e)| (q, e * c))
        .collect()
}

/// max and min of ‖Σε_q a_q e_q‖ over the sign domain, with the realizing
/// sign vectors. Real mode enumerates {±1}^m; complex mode runs cyclic
/// coordinate sweeps over phase grids.
fn extremal_signs(
    freqs: &[i64],
    coeffs: &[Complex64],
    mode: SignMode,
    space: &NormSpace,
) -> ((f64, Vec<Complex64>), (f64, Vec<Complex64>)) {
    let m = freqs.len();
    match mode {
        SignMode::Real => {
            let mut max = (f64::MIN, vec![]);
            let mut min = (f64::MAX, vec![]);
            for mask in 0..(1u32 << m) {
                let eps: Vec<Complex64> = (0..m)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            Complex64::new(-1.0, 0.0)
                        } else {
                            Complex64::new(1.0, 0.0)
                        }
                    })
                    .collect();
                let v = numeric::norm_in_space(&signed_terms(freqs, coeffs, &eps), space);
                if v > max.0 {
                    max = (v, eps.clone());
                }
                if v < min.0 {
                    min = (v, eps);
                }
            }
            (max, min)
        }
        SignMode::Complex => {
            let sweep = |maximize: bool| -> (f64, Vec<Complex64>) {
                let mut eps = vec![Complex64::new(1.0, 0.0); m];
                let mut best =
                    numeric::norm_in_space(&signed_terms(freqs, coeffs, &eps), space);
                for _pass in 0..3 {
                    for i in 0..m {
                        let mut local_best = best;
                        let mut local_eps = eps[i];
                        for k in 0..64 {
                            let t = k as f64 * TAU / 64.0;
                            let mut trial = eps.clone();
                            trial[i] = Complex64::new(t.cos(), t.sin());
                            let v = numeric::norm_in_space(
                                &signed_terms(freqs, coeffs, &trial),
                                space,
                            );
                            let better = if maximize { v > local_best } else { v < local_best };
                            if better {
                                local_best = v;
                                local_eps = trial[i];
                            }
                        }
                        eps[i] = local_eps;
                        best = local_best;
                    }
                }
                (best, eps)
            };
            (sweep(true), sweep(false))
        }
    }
}

fn coeffs_from_x(x: &[f64]) -> Vec<Complex64> {
    let m = x.len() / 2;
    (0..m).map(|i| Complex64::new(x[2 * i], x[2 * i + 1])).collect()
}

/// Seeds: all-ones, the known three-term maximizer ϱ = 6^{-1/4} around the
/// middle of an arithmetic relation 2q_c = q_a + q_b, all-ones for a
/// four-term relation q_1 + q_2 = q_3 + q_4, and the (1, 2i, 1) pattern for
/// sup-norm triples {n, n+k, n+qk}.
fn seed_points(freqs: &[i64], space: &NormSpace) -> Vec<Vec<f64>> {
    let m = freqs.len();
    let mut seeds = Vec::new();
    let mut ones = vec![0.0; 2 * m];
    for i in 0..m {
        ones[2 * i] = 1.0;
    }
    seeds.push(ones.clone());
    if m == 3 {
        // find a center: 2 q_c = q_a + q_b
        for c in 0..3 {
            let others: Vec<usize> = (0..3).filter(|&i| i != c).collect();
            if 2 * freqs[c] == freqs[others[0]] + freqs[others[1]] {
                let rho = 6f64.powf(-0.25);
                let mut x = vec![0.0; 6];
                x[2 * c] = 1.0;
                x[2 * others[0]] = rho;
                x[2 * others[1]] = rho;
                seeds.push(x);
            }
        }
        if matches!(space.kind, NormKind::Sup) {
            let mut sorted: Vec<(i64, usize)> =
                freqs.iter().copied().enumerate().map(|(i, q)| (q, i)).collect();
            sorted.sort();
            let (f0, f1, f2) = (sorted[0].0, sorted[1].0, sorted[2].0);
            let k = f1 - f0;
            if k != 0 && (f2 - f0) % k == 0 && (f2 - f0) / k >= 2 {
                let mut x = vec![0.0; 6];
                x[2 * sorted[0].1] = 1.0;
                x[2 * sorted[1].1 + 1] = 2.0; // imaginary middle coefficient
                x[2 * sorted[2].1] = 1.0;
                seeds.push(x);
            }
        }
    }
    if m == 4 {
        let mut sorted = freqs.to_vec();
        sorted.sort();
        if sorted[0] + sorted[3] == sorted[1] + sorted[2] {
            seeds.push(ones);
        }
    }
    seeds
}

/// Best found value of ‖Σε_q a_q e_q‖ / ‖Σε'_q a_q e_q‖ over coefficients
/// and signs, with the maximizing certificate.
pub fn unconditionality_constant(
    freqs: &[i64],
    space: &NormSpace,
    sign_mode: SignMode,
    budget: &OptBudget,
) -> Result<UncondEstimate> {
    if freqs.is_empty() {
        return Err(Error::precondition("at least one frequency required"));
    }
    for i in 0..freqs.len() {
        for j in (i + 1)..freqs.len() {
            if freqs[i] == freqs[j] {
                return Err(Error::precondition("frequencies must be distinct"));
            }
        }
    }
    let m = freqs.len();
    // optimization at a cheaper resolution, certificate re-evaluated finer
    let coarse = match space.kind {
        NormKind::Sup => space.clone().with_resolution(space.resolution.min(2048).max(
            4 * (freqs.iter().map(|q| q.unsigned_abs()).max().unwrap() as usize + 1),
        )),
        _ => space.clone(),
    };
    let objective = |x: &[f64]| -> f64 {
        let coeffs = coeffs_from_x(x);
        let scale: f64 = coeffs.iter().map(|c| c.norm()).sum();
        if scale < 1e-9 {
            return 1.0;
        }
        let ((max, _), (min, _)) = extremal_signs(freqs, &coeffs, sign_mode, &coarse);
        if min < 1e-12 * scale {
            return 1.0;
        }
        max / min
    };
    let seeds = seed_points(freqs, space);
    let (x, _) = multi_start_max(&objective, 2 * m, &seeds, budget);
    let coeffs = coeffs_from_x(&x);
    let ((max, eps_max), (min, eps_min)) = extremal_signs(freqs, &coeffs, sign_mode, space);
    let value = if min > 0.0 { (max / min).max(1.0) } else { 1.0 };
    Ok(UncondEstimate {
        value,
        coefficients: coeffs.into_iter().map(Cx::from).collect(),
        eps_max: eps_max.into_iter().map(Cx::from).collect(),
        eps_min: eps_min.into_iter().map(Cx::from).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l2_constant_is_one() {
        let sp = NormSpace::lp(2.0).unwrap();
        let budget = OptBudget { starts: 6, iters: 120, seed: 0 };
        let est = unconditionality_constant(&[0, 3, 11], &sp, SignMode::Complex, &budget).unwrap();
        assert!((est.value - 1.0).abs() < 1e-9, "{}", est.value);
    }

    #[test]
    fn l4_real_constant_of_arithmetic_triple() {
        let sp = NormSpace::lp(4.0).unwrap();
        let budget = OptBudget { starts: 16, iters: 300, seed: 0 };
        let est = unconditionality_constant(&[0, 1, 2], &sp, SignMode::Real, &budget).unwrap();
        let target = (2.0 * 6f64.sqrt() - 3.0).powf(0.25);
        assert!((est.value - target).abs() < 1e-3, "{} vs {target}", est.value);
    }

    #[test]
    fn complex_mode_at_least_real_mode() {
        let sp = NormSpace::lp(4.0).unwrap();
        let budget = OptBudget { starts: 8, iters: 150, seed: 1 };
        let re = unconditionality_constant(&[0, 1, 2], &sp, SignMode::Real, &budget).unwrap();
        let co = unconditionality_constant(&[0, 1, 2], &sp, SignMode::Complex, &budget).unwrap();
        assert!(co.value >= re.value - 1e-3, "{} vs {}", co.value, re.value);
    }
}
