//! Internal floating-point evaluation of trigonometric polynomials: exact-
//! phase grid sampling, golden-section peak refinement, and the even-
//! exponent norm by complex convolution.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

pub(crate) fn eval(terms: &[(i64, Complex64)], t: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &(q, c) in terms {
        let phase = q as f64 * t;
        acc += c * Complex64::new(phase.cos(), phase.sin());
    }
    acc
}

/// Samples f on the uniform grid t_j = 2πj/res. Phases are advanced by a
/// unit rotation and resynchronized every 1024 steps from the exact integer
/// angle (q·j mod res)·2π/res, so rounding drift stays near machine epsilon
/// even on multi-million-point grids.
fn eval_grid(terms: &[(i64, Complex64)], res: usize) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); res];
    let h = TAU / res as f64;
    for &(q, c) in terms {
        let step = Complex64::new((q as f64 * h).cos(), (q as f64 * h).sin());
        let mut cur = c;
        for (j, slot) in buf.iter_mut().enumerate() {
            if j % 1024 == 0 {
                let exact = ((q as i128 * j as i128).rem_euclid(res as i128)) as f64 * h;
                cur = c * Complex64::new(exact.cos(), exact.sin());
            }
            *slot += cur;
            cur *= step;
        }
    }
    buf
}

/// Mean of |f|^p over the uniform grid of the given resolution.
pub(crate) fn grid_mean_abs_pow(terms: &[(i64, Complex64)], p: f64, resolution: usize) -> f64 {
    let buf = eval_grid(terms, resolution);
    let sum: f64 = buf.iter().map(|v| v.norm().powf(p)).sum();
    sum / resolution as f64
}

/// Grid argmax of |f| with one golden-section refinement pass around it.
/// Returns (t, |f(t)|).
pub(crate) fn grid_max_refined(terms: &[(i64, Complex64)], resolution: usize) -> (f64, f64) {
    let buf = eval_grid(terms, resolution);
    let mut best_j = 0usize;
    let mut best = f64::MIN;
    for (j, v) in buf.iter().enumerate() {
        let n = v.norm();
        if n > best {
            best = n;
            best_j = j;
        }
    }
    let h = TAU / resolution as f64;
    let center = best_j as f64 * h;
    let (t, v) = golden_max(|t| eval(terms, t).norm(), center - h, center + h, 80);
    if v > best {
        (t, v)
    } else {
        (center, best)
    }
}

/// Golden-section maximization on [lo, hi].
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

/// ‖f‖_p^p for p = 2s by convolution: Σ_k |(f^s)^(k)|².
pub(crate) fn norm_even_pow(terms: &[(i64, Complex64)], s: u32) -> f64 {
    debug_assert!(s >= 1);
    let mut acc: BTreeMap<i64, Complex64> = BTreeMap::new();
    for &(q, c) in terms {
        *acc.entry(q).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
    let base: Vec<(i64, Complex64)> = acc.iter().map(|(&q, &c)| (q, c)).collect();
    for _ in 1..s {
        let mut next: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (&q1, &c1) in &acc {
            for &(q2, c2) in &base {
                *next.entry(q1 + q2).or_insert(Complex64::new(0.0, 0.0)) += c1 * c2;
            }
        }
        acc = next;
    }
    acc.values().map(|c| c.norm_sqr()).sum()
}

/// ‖f‖ in the given space: exact-form convolution for even p, quadrature for
/// other p, grid+refinement for sup. Returns the norm itself (not a power).
pub(crate) fn norm_in_space(terms: &[(i64, Complex64)], space: &super::NormSpace) -> f64 {
    match space.kind {
        super::NormKind::Lp { p } => match space.even_exponent() {
            Some(pe) => norm_even_pow(terms, pe / 2).powf(1.0 / pe as f64),
            None => grid_mean_abs_pow(terms, p, space.resolution).powf(1.0 / p),
        },
        super::NormKind::Sup => grid_max_refined(terms, space.resolution).1,
    }
}

/// Rigorous enclosure factor: the true sup is at most (grid max) times this.
///
/// With x = πN/res, the first-order bound 1/(1−x) comes from |f'| ≤ N‖f‖;
/// the second-order bound 1/sqrt(1−2x²) comes from Bernstein applied twice
/// to |f|², whose derivative vanishes at the maximum. The smaller valid one
/// is returned.
pub(crate) fn sup_enclosure_factor(max_freq: u64, resolution: usize) -> f64 {
    let x = std::f64::consts::PI * max_freq as f64 / resolution as f64;
    let mut factor = f64::INFINITY;
    if x < 1.0 {
        factor = factor.min(1.0 / (1.0 - x));
    }
    if 2.0 * x * x < 1.0 {
        factor = factor.min(1.0 / (1.0 - 2.0 * x * x).sqrt());
    }
    factor
}
