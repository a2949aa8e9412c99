//! The multinomial expansion of ∫|1 + Σ ε_i z_i e_{q_i}|^p: multi-indices
//! grouped into classes by their target frequency Σα_i q_i, each member
//! weighted by the generalized multinomial (p/2 choose α). Two multi-indices
//! in one class are what makes the norm sign-dependent; a spectrum with no
//! collisions up to weight p/2 gives sign-free norms.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::exact::generalized_multinomial;
use super::numeric;
use super::poly::CoefRational;
use super::{NormKind, NormSpace, SignVector};
use crate::relations::MultiIndex;
use crate::{Error, Result};

/// One equivalence class of the partition: all multi-indices α with the same
/// Σα_i q_i, paired with their coefficients (p/2 choose α).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionClass {
    pub target_frequency: i64,
    pub members: Vec<(MultiIndex, String)>,
    #[serde(skip)]
    pub coefficients: Vec<BigRational>,
}

impl ExpansionClass {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// Partition of the multi-indices of weight ≤ truncation by target frequency
/// Σα_i q_i, with the generalized multinomial coefficients for exponent p.
/// Members whose coefficient vanishes (weight > p/2 for even p) are dropped.
pub fn phi_expansion(q: &[i64], p: &BigRational, truncation: u32) -> Result<Vec<ExpansionClass>> {
    if q.is_empty() {
        return Err(Error::precondition("q must be nonempty"));
    }
    for i in 0..q.len() {
        for j in (i + 1)..q.len() {
            if q[i] == q[j] {
                return Err(Error::precondition("frequencies q must be distinct"));
            }
        }
    }
    if p < &BigRational::one() {
        return Err(Error::precondition("p must be >= 1"));
    }
    let half = p / BigRational::from_integer(2.into());
    let mut classes: std::collections::BTreeMap<i64, Vec<(MultiIndex, BigRational)>> =
        std::collections::BTreeMap::new();
    for w in 0..=truncation {
        for alpha in crate::relations::enumerate_multiindices(q.len(), w)? {
            let coef = generalized_multinomial(&half, &alpha);
            if coef.is_zero() {
                continue;
            }
            let mut target: i64 = 0;
            for (a, &qi) in alpha.entries().iter().zip(q) {
                target = target
                    .checked_add((*a as i64).checked_mul(qi).ok_or_else(freq_overflow)?)
                    .ok_or_else(freq_overflow)?;
            }
            classes.entry(target).or_default().push((alpha, coef));
        }
    }
    Ok(classes
        .into_iter()
        .map(|(target_frequency, members)| ExpansionClass {
            target_frequency,
            members: members
                .iter()
                .map(|(a, c)| (a.clone(), c.to_string()))
                .collect(),
            coefficients: members.into_iter().map(|(_, c)| c).collect(),
        })
        .collect())
}

fn freq_overflow() -> Error {
    Error::invalid("target frequency overflows i64")
}

/// Σ_classes |Σ_members coeff·Π(ε_i z_i)^{α_i}|², the truncated value of
/// Φ_q(ε, z).
pub fn phi_eval_complex(classes: &[ExpansionClass], eps: &[Complex64], z: &[Complex64]) -> f64 {
    let mut total = 0.0;
    for class in classes {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((alpha, _), coef) in class.members.iter().zip(&class.coefficients) {
            let mut term = Complex64::new(coef.to_f64().unwrap_or(0.0), 0.0);
            for (k, &a) in alpha.entries().iter().enumerate() {
                term *= (eps[k] * z[k]).powu(a);
            }
            acc += term;
        }
        total += acc.norm_sqr();
    }
    total
}

/// Exact evaluation at ε = 1: Σ_classes |Σ coeff·Πz_i^{α_i}|² as a rational.
pub fn phi_eval_exact(classes: &[ExpansionClass], z: &[CoefRational]) -> BigRational {
    let mut total = BigRational::zero();
    for class in classes {
        let mut acc = CoefRational::new(BigRational::zero(), BigRational::zero());
        for ((alpha, _), coef) in class.members.iter().zip(&class.coefficients) {
            let mut term = CoefRational::new(coef.clone(), BigRational::zero());
            for (k, &a) in alpha.entries().iter().enumerate() {
                for _ in 0..a {
                    term *= z[k].clone();
                }
            }
            acc += term;
        }
        total += acc.norm_sqr();
    }
    total
}

/// Smallest truncation weight W with crude tail bound
/// Σ_{w>W} |(p/2 choose w)| (mϱ)^w < tol. Requires ϱ < 1/m.
pub fn phi_truncation_weight(p: &BigRational, m: usize, rho: f64, tol: f64) -> Result<u32> {
    if !rho.is_finite() || rho <= 0.0 || rho >= 1.0 / m as f64 {
        return Err(Error::precondition("convergence requires 0 < ϱ < 1/m"));
    }
    let half = p / BigRational::from_integer(2.into());
    let x = rho * m as f64;
    let mut tail_terms: Vec<f64> = Vec::new();
    for w in 0..400u32 {
        let binom = generalized_multinomial(&half, &MultiIndex::new(vec![w]).unwrap());
        let t = binom.abs().to_f64().unwrap_or(f64::MAX) * x.powi(w as i32);
        tail_terms.push(t);
    }
    // suffix sums
    let mut suffix = 0.0;
    let mut cut = 400u32;
    for w in (0..400u32).rev() {
        suffix += tail_terms[w as usize];
        if suffix >= tol {
            cut = w + 1;
            break;
        }
        cut = w;
    }
    if cut >= 399 {
        return Err(Error::precondition("tail bound did not reach tolerance"));
    }
    Ok(cut.max(1))
}

/// Θ_r(ε, z) = ‖e_{r_0} + Σ ε_i z_i e_{r_i}‖_p^p, the p-th power of the norm,
/// via the convolution path for even p and quadrature otherwise.
pub fn theta(r: &[i64], eps: &SignVector, z: &[Complex64], space: &NormSpace) -> Result<f64> {
    if r.len() < 2 {
        return Err(Error::precondition("r must have at least 2 entries"));
    }
    let m = r.len() - 1;
    if eps.len() != m || z.len() != m {
        return Err(Error::precondition("eps and z must have length m = r.len()-1"));
    }
    for i in 0..r.len() {
        for j in (i + 1)..r.len() {
            if r[i] == r[j] {
                return Err(Error::precondition("frequencies r must be distinct"));
            }
        }
    }
    let mut terms: Vec<(i64, Complex64)> = vec![(r[0], Complex64::new(1.0, 0.0))];
    for i in 0..m {
        terms.push((r[i + 1], eps.values()[i] * z[i]));
    }
    match space.kind {
        NormKind::Lp { p } => match space.even_exponent() {
            Some(pe) => Ok(numeric::norm_even_pow(&terms, pe / 2)),
            None => Ok(numeric::grid_mean_abs_pow(&terms, p, space.resolution)),
        },
        NormKind::Sup => Err(Error::precondition("theta is an L^p quantity; use sup_norm")),
    }
}

/// Ψ_r(ε, z): the block-sign evaluation Θ_r((1,…,1,ε,…,ε), z) with j leading
/// ones and ε on the remaining m−j coordinates.
pub fn psi(r: &[i64], j: usize, eps: Complex64, z: &[Complex64], space: &NormSpace) -> Result<f64> {
    let m = r.len().saturating_sub(1);
    if j > m {
        return Err(Error::precondition("split j must satisfy 0 <= j <= m"));
    }
    if (eps.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::precondition("eps must be unimodular"));
    }
    let mut signs = vec![Complex64::new(1.0, 0.0); m];
    for s in signs.iter_mut().skip(j) {
        *s = eps;
    }
    theta(r, &SignVector::complex(signs)?, z, space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::exact::lp_norm_even_exact;
    use crate::norms::poly::TrigPolynomial;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_frequency_binomial_expansion() {
        // Φ = 1 + 4|z|² + |z|⁴ for q = (1), p = 4
        let classes = phi_expansion(&[1], &rat(4, 1), 2).unwrap();
        for z in [0.3, 0.7] {
            let v = phi_eval_complex(&classes, &[c(1.0, 0.0)], &[c(z, 0.0)]);
            let expect = 1.0 + 4.0 * z * z + z.powi(4);
            assert!((v - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn cross_class_for_doubling_pair() {
        // q = (1,2), p = 4: target frequency 2 holds α = (2,0) with coefficient 1
        // and β = (0,1) with coefficient 2
        let classes = phi_expansion(&[1, 2], &rat(4, 1), 2).unwrap();
        let cls = classes.iter().find(|c| c.target_frequency == 2).unwrap();
        assert_eq!(cls.len(), 2);
        let mut pairs: Vec<(Vec<u32>, String)> = cls
            .members
            .iter()
            .map(|(a, c)| (a.entries().to_vec(), c.clone()))
            .collect();
        pairs.sort();
        assert_eq!(pairs[0], (vec![0, 1], "2".to_string()));
        assert_eq!(pairs[1], (vec![2, 0], "1".to_string()));
    }

    #[test]
    fn expansion_matches_exact_norm_at_even_p() {
        // Φ at ε=1, truncation p/2 equals ‖1 + Σ z_i e_{q_i}‖_p^p exactly
        let q = [1i64, 2];
        let classes = phi_expansion(&q, &rat(4, 1), 2).unwrap();
        let z = [
            CoefRational::new(rat(1, 3), rat(0, 1)),
            CoefRational::new(rat(-2, 7), rat(1, 5)),
        ];
        let val = phi_eval_exact(&classes, &z);
        let mut f = TrigPolynomial::monomial(0, CoefRational::new(rat(1, 1), rat(0, 1)));
        f = f.add(&TrigPolynomial::monomial(1, z[0].clone()));
        f = f.add(&TrigPolynomial::monomial(2, z[1].clone()));
        assert_eq!(val, lp_norm_even_exact(&f, 4).unwrap());
    }

    #[test]
    fn non_even_truncation_converges_to_quadrature() {
        // p = 3, |z_i| = 0.3: truncations 6 and 8 agree to 1e-6 and match
        // quadrature of ∫|1 + z_1 e_1 + z_2 e_2|³ to 1e-5
        let q = [1i64, 2];
        let p = rat(3, 1);
        let c6 = phi_expansion(&q, &p, 6).unwrap();
        let c8 = phi_expansion(&q, &p, 8).unwrap();
        let z = [c(0.3, 0.0), c(0.0, 0.3)];
        let ones = [c(1.0, 0.0), c(1.0, 0.0)];
        let v6 = phi_eval_complex(&c6, &ones, &z);
        let v8 = phi_eval_complex(&c8, &ones, &z);
        assert!((v6 - v8).abs() < 1e-6, "{v6} vs {v8}");

        let f = TrigPolynomial::from_float_terms(&[(0, c(1.0, 0.0)), (1, z[0]), (2, z[1])]);
        let quad = crate::norms::lp_norm_quadrature(&f, 3.0, 4096).unwrap().powi(3);
        assert!((v8 - quad).abs() < 1e-5, "{v8} vs {quad}");
    }

    #[test]
    fn truncation_weight_bound() {
        let w = phi_truncation_weight(&rat(3, 1), 2, 0.3, 1e-8).unwrap();
        assert!((6..=60).contains(&w), "{w}");
        assert!(phi_truncation_weight(&rat(3, 1), 2, 0.6, 1e-8).is_err());
    }

    #[test]
    fn rejects_duplicate_frequencies() {
        assert!(phi_expansion(&[1, 1], &rat(4, 1), 2).is_err());
        let sp = NormSpace::lp(4.0).unwrap();
        let eps = SignVector::ones(2);
        assert!(theta(&[0, 2, 2], &eps, &[c(1.0, 0.0), c(1.0, 0.0)], &sp).is_err());
    }

    #[test]
    fn theta_reproduces_degree_two_formula() {
        // ∫|e_{q1} + ϱ e_{q2} + ε ϱ e_{q3}|⁴ = 1 + 6ϱ⁴ + 4ϱ²(2+Re ε) when
        // 2q1 = q2 + q3; here r = (1, 0, 2) puts the middle frequency first.
        let sp = NormSpace::lp(4.0).unwrap();
        for rho in [1.0, 0.5, 0.25] {
            let z = [c(rho, 0.0), c(rho, 0.0)];
            for (e1, e2) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let eps = SignVector::real(&[e1 as i8, e2 as i8]).unwrap();
                let got = theta(&[1, 0, 2], &eps, &z, &sp).unwrap();
                let expect = 1.0 + 6.0 * rho.powi(4) + 4.0 * rho * rho * (2.0 + e1 * e2);
                assert!((got - expect).abs() < 1e-10, "rho={rho} {e1},{e2}: {got} vs {expect}");
            }
        }
    }

    #[test]
    fn theta_on_b2_triple_is_sign_free() {
        // {0,1,3} is 2-independent: no ε-dependence at p = 4
        let sp = NormSpace::lp(4.0).unwrap();
        let z = [c(0.8, 0.0), c(0.6, 0.0)];
        let base = theta(&[0, 1, 3], &SignVector::ones(2), &z, &sp).unwrap();
        for phase in [0.4f64, 1.1, 2.9, 4.2] {
            let eps = SignVector::complex(vec![c(phase.cos(), phase.sin()), c(1.0, 0.0)]).unwrap();
            let got = theta(&[0, 1, 3], &eps, &z, &sp).unwrap();
            assert!((got - base).abs() < 1e-10);
        }
    }

    #[test]
    fn theta_sign_freeness_matches_independence() {
        // Θ_r is ε-free at p = 4 exactly when {r_0,…,r_m} is 2-independent
        use crate::relations::{is_n_independent, Window};
        let sp = NormSpace::lp(4.0).unwrap();
        let triples: [[i64; 3]; 6] =
            [[0, 1, 3], [0, 1, 2], [1, 5, 25], [1, 25, 49], [0, 2, 7], [3, 4, 5]];
        for r in triples {
            let mut sorted = r.to_vec();
            sorted.sort();
            let w = Window::new(sorted.iter().map(|&x| x.into()).collect()).unwrap();
            let independent = is_n_independent(&w, 2).unwrap().holds_on_window();
            let z = [c(0.7, 0.0), c(0.7, 0.0)];
            let base = theta(&r, &SignVector::ones(2), &z, &sp).unwrap();
            let mut max_dev: f64 = 0.0;
            for k in 0..16 {
                let phase = k as f64 * std::f64::consts::TAU / 16.0;
                let eps =
                    SignVector::complex(vec![c(phase.cos(), phase.sin()), c(1.0, 0.0)]).unwrap();
                let got = theta(&r, &eps, &z, &sp).unwrap();
                max_dev = max_dev.max((got - base).abs());
                let eps =
                    SignVector::complex(vec![c(1.0, 0.0), c(phase.cos(), phase.sin())]).unwrap();
                let got = theta(&r, &eps, &z, &sp).unwrap();
                max_dev = max_dev.max((got - base).abs());
            }
            assert_eq!(max_dev < 1e-10, independent, "r={r:?} dev={max_dev}");
        }
    }

    #[test]
    fn psi_split_conventions() {
        let sp = NormSpace::lp(4.0).unwrap();
        let z = [c(1.0, 0.0), c(1.0, 0.0)];
        // j = m: all signs 1
        let all_ones = theta(&[0, 2, 1], &SignVector::ones(2), &z, &sp).unwrap();
        let v = psi(&[0, 2, 1], 2, c(-1.0, 0.0), &z, &sp).unwrap();
        assert_eq!(v, all_ones);
        // j = 0: Θ_r(ε·1, z)
        let e = c(0.0, 1.0);
        let v0 = psi(&[0, 2, 1], 0, e, &z, &sp).unwrap();
        let t0 = theta(&[0, 2, 1], &SignVector::complex(vec![e, e]).unwrap(), &z, &sp).unwrap();
        assert!((v0 - t0).abs() < 1e-12);
        // j = 1 on r = (0,2,1): sign on e_1 only; the colliding class is
        // |2ε + ε²... evaluated: ‖e_0 + e_2 + ε e_1‖₄⁴ = 10 + |2 + ε²|²
        let v_minus = psi(&[0, 2, 1], 1, c(-1.0, 0.0), &z, &sp).unwrap();
        assert!((v_minus - 19.0).abs() < 1e-10, "{v_minus}");
        let v_i = psi(&[0, 2, 1], 1, c(0.0, 1.0), &z, &sp).unwrap();
        assert!((v_i - 11.0).abs() < 1e-10, "{v_i}");
    }
}
