//! Norms of trigonometric polynomials: an exact path for even-exponent L^p
//! via coefficient convolution, quadrature and certified sup-norm evaluation
//! for everything else, the multinomial expansion that explains when norms
//! are sign-free, sign oscillations, and unconditionality-constant
//! estimation.

mod exact;
mod expansion;
mod numeric;
mod oscillation;
mod poly;
mod quadrature;
mod uncond;

pub use exact::{generalized_multinomial, lp_norm_even_exact};
pub use expansion::{
    phi_eval_complex, phi_eval_exact, phi_expansion, phi_truncation_weight, psi, theta,
    ExpansionClass,
};
pub use oscillation::oscillation;
pub use poly::{parse_decimal_rational, CoefRational, TrigPolynomial};
pub use quadrature::{certified_resolution, lp_norm_quadrature, sup_norm, SupNormBound};
pub use uncond::{unconditionality_constant, Cx, UncondEstimate};

pub use crate::relations::SignMode;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which norm to evaluate, and at what quadrature resolution when the exact
/// path does not apply.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormSpace {
    pub kind: NormKind,
    pub resolution: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Lp { p: f64 },
    Sup,
}

pub const DEFAULT_RESOLUTION: usize = 1 << 13;

impl NormSpace {
    pub fn lp(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::precondition("p must be a finite real >= 1"));
        }
        Ok(NormSpace { kind: NormKind::Lp { p }, resolution: DEFAULT_RESOLUTION })
    }

    pub fn sup() -> Self {
        NormSpace { kind: NormKind::Sup, resolution: DEFAULT_RESOLUTION }
    }

    pub fn with_resolution(mut self, resolution: usize) -> Self {
        self.resolution = resolution;
        self
    }

    /// Some(p) when the exact convolution path applies: p an even integer >= 2.
    pub fn even_exponent(&self) -> Option<u32> {
        match self.kind {
            NormKind::Lp { p } => {
                let r = p.round();
                if (p - r).abs() < 1e-9 && r >= 2.0 && (r as u64).is_multiple_of(2) {
                    Some(r as u32)
                } else {
                    None
                }
            }
            NormKind::Sup => None,
        }
    }
}

/// Vector of unimodular signs: arbitrary phases in complex mode, ±1 in real
/// mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SignVector {
    mode: SignMode,
    values: Vec<Complex64>,
}

impl SignVector {
    pub fn complex(values: Vec<Complex64>) -> Result<Self> {
        for v in &values {
            if (v.norm() - 1.0).abs() > 1e-9 {
                return Err(Error::precondition("signs must be unimodular"));
            }
        }
        Ok(SignVector { mode: SignMode::Complex, values })
    }

    pub fn real(signs: &[i8]) -> Result<Self> {
        let mut values = Vec::with_capacity(signs.len());
        for &s in signs {
            match s {
                1 => values.push(Complex64::new(1.0, 0.0)),
                -1 => values.push(Complex64::new(-1.0, 0.0)),
                _ => return Err(Error::precondition("real signs must be ±1")),
            }
        }
        Ok(SignVector { mode: SignMode::Real, values })
    }

    pub fn ones(len: usize) -> Self {
        SignVector { mode: SignMode::Real, values: vec![Complex64::new(1.0, 0.0); len] }
    }

    pub fn mode(&self) -> SignMode {
        self.mode
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_exponent_detection() {
        assert_eq!(NormSpace::lp(4.0).unwrap().even_exponent(), Some(4));
        assert_eq!(NormSpace::lp(2.0).unwrap().even_exponent(), Some(2));
        assert_eq!(NormSpace::lp(3.0).unwrap().even_exponent(), None);
        assert_eq!(NormSpace::lp(3.5).unwrap().even_exponent(), None);
        assert_eq!(NormSpace::sup().even_exponent(), None);
        assert!(NormSpace::lp(0.5).is_err());
    }

    #[test]
    fn sign_vector_validation() {
        assert!(SignVector::complex(vec![Complex64::new(0.6, 0.8)]).is_ok());
        assert!(SignVector::complex(vec![Complex64::new(0.5, 0.5)]).is_err());
        assert!(SignVector::real(&[1, -1]).is_ok());
        assert!(SignVector::real(&[2]).is_err());
    }
}
