//! Sidon-constant estimation, the sharp Hadamard-ratio bound, the lacunary
//! lower inequality with certified sup norms, and a joint-distribution
//! deviation measure for pseudo-independence experiments.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::norms::{sup_norm, Cx, SupNormBound, TrigPolynomial};
use crate::opt::{multi_start_max, OptBudget};
use crate::{Error, Result};

/// Lower-bound estimate of a Sidon constant with its certificate.
///
/// `value` = Σ|a_q| / sup (refined grid sup); `certified_lower` divides by
/// the Bernstein upper bound instead, so it is a rigorous lower bound for
/// the true constant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SidonEstimate {
    pub value: f64,
    pub certified_lower: f64,
    /// Maximizing coefficients, normalized to Σ|a_q| = 1.
    pub coefficients: Vec<Cx>,
    pub starts: usize,
    pub resolution: usize,
    pub sup: SupNormBound,
}

/// Arc of the circle given by start angle and length in (0, 2π].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub start: f64,
    pub length: f64,
}

impl Arc {
    pub fn new(start: f64, length: f64) -> Result<Self> {
        if !(length > 0.0 && length <= TAU) {
            return Err(Error::precondition("arc length must lie in (0, 2π]"));
        }
        Ok(Arc { start, length })
    }

    fn contains(&self, angle: f64) -> bool {
        let x = (angle - self.start).rem_euclid(TAU);
        x > 0.0 && x < self.length
    }
}

fn eval_terms(freqs: &[i64], coeffs: &[Complex64]) -> Vec<(i64, Complex64)> {
    freqs.iter().zip(coeffs).map(|(&q, &c)| (q, c)).collect()
}

fn seed_points(freqs: &[i64]) -> Vec<Vec<f64>> {
    let m = freqs.len();
    let mut seeds = Vec::new();
    let mut ones = vec![0.0; 2 * m];
    for i in 0..m {
        ones[2 * i] = 1.0;
    }
    seeds.push(ones);
    if m == 3 {
        // {n, n+k, n+qk} pattern: moduli (1, 2, 1) with a quarter-turn phase
        // on the middle term, the extremal shape for q = 2
        let mut sorted: Vec<(i64, usize)> =
            freqs.iter().copied().enumerate().map(|(i, q)| (q, i)).collect();
        sorted.sort();
        let k = sorted[1].0 - sorted[0].0;
        if k != 0 && (sorted[2].0 - sorted[0].0) % k == 0 {
            let mut x = vec![0.0; 6];
            x[2 * sorted[0].1] = 1.0;
            x[2 * sorted[1].1 + 1] = 2.0;
            x[2 * sorted[2].1] = 1.0;
            seeds.push(x);
        }
    }
    seeds
}

/// Multi-start maximization of Σ|a_q| / ‖Σ a_q e_q‖_∞ over complex
/// coefficients.
pub fn sidon_constant_estimate(
    freqs: &[i64],
    budget: &OptBudget,
    resolution: usize,
) -> Result<SidonEstimate> {
    if freqs.is_empty() {
        return Err(Error::precondition("E must be nonempty"));
    }
    for i in 0..freqs.len() {
        for j in (i + 1)..freqs.len() {
            if freqs[i] == freqs[j] {
                return Err(Error::precondition("frequencies must be distinct"));
            }
        }
    }
    let m = freqs.len();
    let max_freq = freqs.iter().map(|q| q.unsigned_abs()).max().unwrap() as usize;
    let min_res = 4 * (max_freq + 1);
    let resolution = resolution.max(min_res);
    let coarse = (resolution / 8).max(min_res).max(1024);
    let objective = move |x: &[f64]| -> f64 {
        let coeffs: Vec<Complex64> =
            (0..m).map(|i| Complex64::new(x[2 * i], x[2 * i + 1])).collect();
        let total: f64 = coeffs.iter().map(|c| c.norm()).sum();
        if total < 1e-9 {
            return 0.0;
        }
        let terms = eval_terms(freqs, &coeffs);
        let poly = TrigPolynomial::from_float_terms(&terms);
        match sup_norm(&poly, coarse) {
            Ok(s) if s.value > 1e-12 * total => total / s.value,
            _ => 0.0,
        }
    };
    let seeds = seed_points(freqs);
    let (x, _) = multi_start_max(&objective, 2 * m, &seeds, budget);
    let mut coeffs: Vec<Complex64> =
        (0..m).map(|i| Complex64::new(x[2 * i], x[2 * i + 1])).collect();
    let total: f64 = coeffs.iter().map(|c| c.norm()).sum();
    if total < 1e-12 {
        coeffs = vec![Complex64::new(1.0 / m as f64, 0.0); m];
    } else {
        for c in coeffs.iter_mut() {
            *c /= total;
        }
    }
    let poly = TrigPolynomial::from_float_terms(&eval_terms(freqs, &coeffs));
    let sup = sup_norm(&poly, resolution)?;
    let value = if sup.value > 0.0 { 1.0 / sup.value } else { 1.0 };
    let certified_lower = if sup.upper > 0.0 { 1.0 / sup.upper } else { 1.0 };
    Ok(SidonEstimate {
        value: value.max(1.0),
        certified_lower,
        coefficients: coeffs.into_iter().map(Cx::from).collect(),
        starts: budget.starts,
        resolution,
        sup,
    })
}

/// Upper bound 1 + π²/(2q² − 2 − π²) for the Sidon constant of a set with
/// |n_{k+1}| ≥ q|n_k|; valid for q > sqrt(π²/2 + 1).
pub fn hadamard_bound(q: f64) -> Result<f64> {
    let cutoff = (PI * PI / 2.0 + 1.0).sqrt();
    if !q.is_finite() || q <= cutoff {
        return Err(Error::domain(format!(
            "hadamard_bound requires q > sqrt(π²/2+1) ≈ {cutoff:.4}, got {q}"
        )));
    }
    Ok(1.0 + PI * PI / (2.0 * q * q - 2.0 - PI * PI))
}

/// One step of the sup-norm induction: ‖π_{p+1}f‖ ≥ ‖π_p f‖ + |a_{p+1}|
/// − π²/(2 n_{p+1}²)·‖π_p f''‖.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InductionStep {
    pub index: usize,
    pub lhs_lower: f64,
    pub rhs_upper: f64,
    pub margin: f64,
    pub holds: bool,
}

/// Verification report for the lacunary lower inequality
/// ‖f‖_∞ ≥ (1 − π²/2·1/(q²−1))·(‖π_k f‖_∞ + Σ_{j>k}|a_j|).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LacunaryReport {
    pub ratio_ok: bool,
    pub min_ratio: f64,
    pub factor: f64,
    pub lhs_lower: f64,
    pub rhs_upper: f64,
    pub margin: f64,
    pub holds: bool,
    /// The sup-norm enclosures were narrower than 10% of the margin.
    pub certified: bool,
    pub steps: Vec<InductionStep>,
}

/// Checks the lacunary inequality and each induction step with certified
/// sup-norm directions: lower bounds on the left, upper (Bernstein) bounds
/// on the right. A ratio violation is reported, not silently ignored.
pub fn lacunary_inequality_check(
    f: &TrigPolynomial,
    k: usize,
    q: f64,
    resolution: usize,
) -> Result<LacunaryReport> {
    if f.is_empty() {
        return Err(Error::precondition("polynomial must be nonzero"));
    }
    if !q.is_finite() || q <= 1.0 {
        return Err(Error::precondition("q must be > 1"));
    }
    let mut support: Vec<i64> = f.support().collect();
    support.sort_by_key(|a| (a.unsigned_abs(), *a));
    let s = support.len();
    if k == 0 || k > s {
        return Err(Error::precondition("break index k must satisfy 1 <= k <= support size"));
    }
    for w in support.windows(2) {
        if w[0].unsigned_abs() == w[1].unsigned_abs() {
            return Err(Error::precondition("support must be strictly increasing in |.|"));
        }
    }
    let mut min_ratio = f64::INFINITY;
    for j in (k - 1)..(s - 1) {
        let r = support[j + 1].unsigned_abs() as f64 / support[j].unsigned_abs().max(1) as f64;
        min_ratio = min_ratio.min(r);
    }
    let ratio_ok = min_ratio >= q;
    let factor = 1.0 - PI * PI / 2.0 / (q * q - 1.0);

    let moduli: Vec<f64> = support
        .iter()
        .map(|&n| {
            use num_traits::ToPrimitive;
            let c = f.coeff(n);
            (c.re.to_f64().unwrap().powi(2) + c.im.to_f64().unwrap().powi(2)).sqrt()
        })
        .collect();
    // each projection is certified at a resolution matched to its own top
    // frequency; the user resolution acts as a floor
    let cert = |g: &TrigPolynomial| -> Result<SupNormBound> {
        let res = resolution.max(crate::norms::certified_resolution(g.max_abs_frequency()));
        sup_norm(g, res)
    };
    let projs: Vec<TrigPolynomial> = (0..=s).map(|p| f.projection(&support[..p])).collect();
    let sups: Vec<SupNormBound> = projs
        .iter()
        .skip(1)
        .map(&cert)
        .collect::<Result<_>>()?;
    let sup_of = |p: usize| sups[p - 1]; // sup of π_p f, p >= 1

    let whole = sup_of(s);
    let head = sup_of(k);
    let tail_l1: f64 = moduli[k..].iter().sum();
    let lhs_lower = whole.value;
    let rhs_upper = factor * (head.upper + tail_l1);
    let margin = lhs_lower - rhs_upper;
    let holds = margin >= 0.0;
    let interval_width = (whole.upper - whole.value) + factor * (head.upper - head.value);
    let certified = margin > 0.0 && interval_width <= 0.1 * margin;

    let mut steps = Vec::new();
    for p in k..s {
        let head_p = sup_of(p);
        let head_next = sup_of(p + 1);
        let dd = cert(&second_derivative(&projs[p]))?;
        let n_next = support[p].unsigned_abs() as f64;
        let rhs = head_p.upper + moduli[p] - PI * PI / (2.0 * n_next * n_next) * dd.value;
        let m = head_next.value - rhs;
        steps.push(InductionStep {
            index: p,
            lhs_lower: head_next.value,
            rhs_upper: rhs,
            margin: m,
            holds: m >= 0.0,
        });
    }
    Ok(LacunaryReport {
        ratio_ok,
        min_ratio,
        factor,
        lhs_lower,
        rhs_upper,
        margin,
        holds,
        certified,
        steps,
    })
}

fn second_derivative(f: &TrigPolynomial) -> TrigPolynomial {
    use crate::norms::CoefRational;
    let mut terms = std::collections::BTreeMap::new();
    for (q, c) in f.terms() {
        let factor = CoefRational::new(
            -BigRational::from_integer((q * q).into()),
            BigRational::zero(),
        );
        terms.insert(*q, c.clone() * factor);
    }
    TrigPolynomial::new(terms)
}

/// |m[e_{p_i}(t) ∈ A_i ∀i] − Π m[A_i]| by endpoint-strict counting over a
/// uniform grid; the reported value carries an O(1/resolution) uncertainty.
pub fn joint_distribution_deviation(
    freqs: &[i64],
    arcs: &[Arc],
    resolution: usize,
) -> Result<f64> {
    if freqs.len() != arcs.len() {
        return Err(Error::precondition("freqs and arcs must have equal length"));
    }
    if freqs.is_empty() {
        return Err(Error::precondition("at least one frequency required"));
    }
    if freqs.iter().any(|&p| p <= 0) {
        return Err(Error::precondition("frequencies must be positive"));
    }
    if resolution == 0 {
        return Err(Error::precondition("resolution must be positive"));
    }
    let mut count = 0usize;
    for j in 0..resolution {
        let t = j as f64 * TAU / resolution as f64;
        let inside = freqs
            .iter()
            .zip(arcs)
            .all(|(&p, a)| a.contains((p as f64 * t).rem_euclid(TAU)));
        if inside {
            count += 1;
        }
    }
    let measure = count as f64 / resolution as f64;
    let product: f64 = arcs.iter().map(|a| a.length / TAU).product();
    Ok((measure - product).abs())
}
