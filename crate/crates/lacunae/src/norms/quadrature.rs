//! Quadrature for general L^p norms and certified sup-norm evaluation.
//!
//! The uniform rule on a period integrates any trigonometric polynomial of
//! degree below the resolution exactly, so for even p the quadrature path
//! reproduces the convolution path to rounding; that cross-check is the
//! oracle pair used throughout the tests.

use serde::{Deserialize, Serialize};

use super::numeric;
use super::poly::TrigPolynomial;
use crate::{Error, Result};

fn check_resolution(f: &TrigPolynomial, resolution: usize) -> Result<()> {
    let need = 4 * (f.max_abs_frequency() + 1);
    if (resolution as u64) < need {
        return Err(Error::precondition(format!(
            "resolution {resolution} below 4*(max_abs_frequency+1) = {need}"
        )));
    }
    Ok(())
}

/// (∫|f|^p dm)^{1/p} by the uniform (trapezoid) rule; exact up to rounding
/// for even p when resolution > p·max_abs_frequency.
pub fn lp_norm_quadrature(f: &TrigPolynomial, p: f64, resolution: usize) -> Result<f64> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::precondition("p must be a finite real >= 1"));
    }
    check_resolution(f, resolution)?;
    if f.is_empty() {
        return Ok(0.0);
    }
    let terms = f.to_float_terms();
    Ok(numeric::grid_mean_abs_pow(&terms, p, resolution).powf(1.0 / p))
}

/// Sup-norm estimate with a certified enclosure.
///
/// `value` is the refined grid maximum (a lower bound on the true sup); the
/// true sup lies in [value, upper]. The enclosure comes from Bernstein's
/// inequality: first-order via |f'| ≤ N‖f‖, second-order via |f|² (whose
/// derivative vanishes at the maximum), whichever is tighter — both within
/// the interval [value, value·(1 + π·N/resolution)] at the resolutions the
/// defaults choose.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupNormBound {
    pub value: f64,
    pub upper: f64,
    pub argmax: f64,
}

impl SupNormBound {
    pub fn relative_width(&self) -> f64 {
        if self.value == 0.0 {
            0.0
        } else {
            (self.upper - self.value) / self.value
        }
    }
}

/// Resolution at which the sup-norm enclosure width is about 0.1% for the
/// given maximal frequency.
pub fn certified_resolution(max_freq: u64) -> usize {
    let need = 160u64.saturating_mul(max_freq).max(4 * (max_freq + 1)).max(4096);
    need.next_power_of_two() as usize
}

/// Grid maximum of |f| with local refinement and a Bernstein-certified upper
/// bound.
pub fn sup_norm(f: &TrigPolynomial, resolution: usize) -> Result<SupNormBound> {
    check_resolution(f, resolution)?;
    if f.is_empty() {
        return Ok(SupNormBound { value: 0.0, upper: 0.0, argmax: 0.0 });
    }
    let terms = f.to_float_terms();
    let (argmax, value) = numeric::grid_max_refined(&terms, resolution);
    let factor = numeric::sup_enclosure_factor(f.max_abs_frequency(), resolution);
    Ok(SupNormBound { value, upper: value * factor, argmax })
}
