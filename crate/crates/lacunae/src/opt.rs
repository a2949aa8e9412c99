//! Derivative-free maximization: Nelder-Mead simplex with deterministic
//! multi-start. Used by the unconditionality and Sidon constant estimators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy)]
pub struct NmConfig {
    pub max_iters: usize,
    pub xatol: f64,
    pub fatol: f64,
}

impl Default for NmConfig {
    fn default() -> Self {
        NmConfig { max_iters: 400, xatol: 1e-10, fatol: 1e-12 }
    }
}

/// Nelder-Mead simplex ascent on `f` from `x0`, initial step per coordinate.
pub fn nelder_mead_max(
    f: &dyn Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    cfg: &NmConfig,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let neg = |x: &[f64]| -f(x);
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), neg(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += if x[i].abs() > 1e-12 { step * x[i].abs() } else { step };
        let v = neg(&x);
        simplex.push((x, v));
    }
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    for _ in 0..cfg.max_iters {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        let spread_f = (simplex[n].1 - simplex[0].1).abs();
        let spread_x = (0..n)
            .map(|i| (simplex[n].0[i] - simplex[0].0[i]).abs())
            .fold(0.0, f64::max);
        if spread_f < cfg.fatol && spread_x < cfg.xatol {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|i| simplex[..n].iter().map(|(x, _)| x[i]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let refl: Vec<f64> = (0..n)
            .map(|i| centroid[i] + alpha * (centroid[i] - worst.0[i]))
            .collect();
        let f_refl = neg(&refl);
        if f_refl < simplex[0].1 {
            let exp: Vec<f64> = (0..n)
                .map(|i| centroid[i] + gamma * (refl[i] - centroid[i]))
                .collect();
            let f_exp = neg(&exp);
            simplex[n] = if f_exp < f_refl { (exp, f_exp) } else { (refl, f_refl) };
        } else if f_refl < simplex[n - 1].1 {
            simplex[n] = (refl, f_refl);
        } else {
            let contr: Vec<f64> = (0..n)
                .map(|i| centroid[i] + rho * (worst.0[i] - centroid[i]))
                .collect();
            let f_contr = neg(&contr);
            if f_contr < worst.1 {
                simplex[n] = (contr, f_contr);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = (0..n)
                        .map(|i| best[i] + sigma * (entry.0[i] - best[i]))
                        .collect();
                    let v = neg(&x);
                    *entry = (x, v);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    let (x, v) = simplex.swap_remove(0);
    (x, -v)
}

/// Optimizer settings for the constant estimators.
#[derive(Debug, Clone, Copy)]
pub struct OptBudget {
    pub starts: usize,
    pub iters: usize,
    pub seed: u64,
}

impl Default for OptBudget {
    fn default() -> Self {
        OptBudget { starts: 32, iters: 400, seed: 0 }
    }
}

/// Runs Nelder-Mead from every seed plus random starts (ChaCha-seeded, so
/// byte-reproducible) and returns the best point found. Starts run in
/// parallel; the reduction is deterministic (value, then start index).
pub fn multi_start_max(
    obj: &(dyn Fn(&[f64]) -> f64 + Sync),
    dim: usize,
    seeds: &[Vec<f64>],
    budget: &OptBudget,
) -> (Vec<f64>, f64) {
    let mut starts: Vec<Vec<f64>> = seeds.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    while starts.len() < budget.starts.max(seeds.len()) {
        starts.push((0..dim).map(|_| rng.gen_range(-1.5..1.5)).collect());
    }
    let cfg = NmConfig { max_iters: budget.iters, ..NmConfig::default() };
    let results: Vec<(Vec<f64>, f64)> = starts
        .par_iter()
        .map(|x0| nelder_mead_max(&obj, x0, 0.35, &cfg))
        .collect();
    let mut best: Option<(usize, &(Vec<f64>, f64))> = None;
    for (i, r) in results.iter().enumerate() {
        let better = match best {
            None => true,
            Some((_, b)) => r.1 > b.1,
        };
        if better {
            best = Some((i, r));
        }
    }
    let (_, (x, v)) = best.expect("at least one start");
    (x.clone(), *v)
}
