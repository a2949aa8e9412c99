//! Sign oscillation of ‖εf + g‖ over the unimodular (or ±1) sign ε.

use num_complex::Complex64;
use std::f64::consts::TAU;

use super::numeric;
use super::poly::TrigPolynomial;
use super::{NormSpace, SignMode};
use crate::{Error, Result};

/// max − min of ‖εf + g‖ over ε: both values of 𝔻 = {−1, 1} in real mode,
/// `sign_samples` uniform phases of 𝕋 with one golden refinement pass in
/// complex mode.
pub fn oscillation(
    f: &TrigPolynomial,
    g: &TrigPolynomial,
    space: &NormSpace,
    sign_mode: SignMode,
    sign_samples: usize,
) -> Result<f64> {
    if sign_samples == 0 {
        return Err(Error::precondition("sign_samples must be >= 1"));
    }
    let ft = f.to_float_terms();
    let gt = g.to_float_terms();
    let norm_at = |eps: Complex64| -> f64 {
        let mut terms: std::collections::BTreeMap<i64, Complex64> = gt.iter().copied().collect();
        for &(q, c) in &ft {
            *terms.entry(q).or_insert(Complex64::new(0.0, 0.0)) += eps * c;
        }
        let terms: Vec<(i64, Complex64)> = terms.into_iter().collect();
        numeric::norm_in_space(&terms, space)
    };
    match sign_mode {
        SignMode::Real => {
            let a = norm_at(Complex64::new(1.0, 0.0));
            let b = norm_at(Complex64::new(-1.0, 0.0));
            Ok((a - b).abs())
        }
        SignMode::Complex => {
            let at_phase = |t: f64| norm_at(Complex64::new(t.cos(), t.sin()));
            let mut max_t = 0.0;
            let mut max_v = f64::MIN;
            let mut min_t = 0.0;
            let mut min_v = f64::MAX;
            let h = TAU / sign_samples as f64;
            for k in 0..sign_samples {
                let t = k as f64 * h;
                let v = at_phase(t);
                if v > max_v {
                    max_v = v;
                    max_t = t;
                }
                if v < min_v {
                    min_v = v;
                    min_t = t;
                }
            }
            let (_, hi) = numeric::golden_max(at_phase, max_t - h, max_t + h, 70);
            let (_, lo_neg) = numeric::golden_max(|t| -at_phase(t), min_t - h, min_t + h, 70);
            Ok((hi.max(max_v) - (-lo_neg).min(min_v)).max(0.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l2_oscillation_vanishes() {
        let f = TrigPolynomial::ones(&[0]);
        let g = TrigPolynomial::ones(&[5]);
        let sp = NormSpace::lp(2.0).unwrap();
        let osc = oscillation(&f, &g, &sp, SignMode::Complex, 32).unwrap();
        assert!(osc.abs() < 1e-12);
    }

    #[test]
    fn doubling_collision_oscillates_by_known_amount() {
        // ‖ε(e_0+e_2) + e_1‖₄⁴ ranges over [11, 19]
        let f = TrigPolynomial::ones(&[0, 2]);
        let g = TrigPolynomial::ones(&[1]);
        let sp = NormSpace::lp(4.0).unwrap();
        let osc = oscillation(&f, &g, &sp, SignMode::Complex, 64).unwrap();
        let expect = 19f64.powf(0.25) - 11f64.powf(0.25);
        assert!((osc - expect).abs() < 1e-6, "{osc} vs {expect}");
    }

    #[test]
    fn independent_triple_does_not_oscillate() {
        // {0,1,3} is 2-independent
        let f = TrigPolynomial::ones(&[0, 1]);
        let g = TrigPolynomial::ones(&[3]);
        let sp = NormSpace::lp(4.0).unwrap();
        let osc = oscillation(&f, &g, &sp, SignMode::Complex, 64).unwrap();
        assert!(osc.abs() < 1e-10, "{osc}");
    }

    #[test]
    fn oscillation_invariant_under_global_phase_of_g() {
        let f = TrigPolynomial::ones(&[0, 2]);
        let g = TrigPolynomial::ones(&[1]);
        // multiply g by the exact unimodular (3+4i)/5
        let kappa = super::super::poly::CoefRational::new(
            num_rational::BigRational::new(3.into(), 5.into()),
            num_rational::BigRational::new(4.into(), 5.into()),
        );
        let g2 = g.scale(&kappa);
        let sp = NormSpace::lp(4.0).unwrap();
        let a = oscillation(&f, &g, &sp, SignMode::Complex, 64).unwrap();
        let b = oscillation(&f, &g2, &sp, SignMode::Complex, 64).unwrap();
        assert!((a - b).abs() < 1e-9);
        assert!(a >= 0.0 && b >= 0.0);
    }
}
