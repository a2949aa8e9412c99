//! Trigonometric polynomials with exact complex-rational coefficients.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

pub type CoefRational = Complex<BigRational>;

/// Parses a rational from "p/q", an integer, or a decimal like "1.618".
pub fn parse_decimal_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Ok(r) = BigRational::from_str(s) {
        return Ok(r);
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-BigRational::one(), rest),
        None => (BigRational::one(), s.strip_prefix('+').unwrap_or(s)),
    };
    if let Some((int_part, frac_part)) = body.split_once('.') {
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::invalid(format!("cannot parse rational from {s:?}")));
        }
        let whole = BigInt::from_str(int_part)
            .map_err(|_| Error::invalid(format!("cannot parse rational from {s:?}")))?;
        let frac = BigInt::from_str(frac_part).unwrap();
        let denom = BigInt::from(10).pow(frac_part.len() as u32);
        let value = BigRational::from_integer(whole) + BigRational::new(frac, denom);
        return Ok(sign * value);
    }
    Err(Error::invalid(format!("cannot parse rational from {s:?}")))
}

/// Finitely supported map frequency → complex coefficient with exact
/// rational real and imaginary parts. Zero coefficients are pruned.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrigPolynomial {
    terms: BTreeMap<i64, CoefRational>,
}

impl TrigPolynomial {
    pub fn zero() -> Self {
        TrigPolynomial::default()
    }

    pub fn new(terms: BTreeMap<i64, CoefRational>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        TrigPolynomial { terms }
    }

    /// The all-ones polynomial Σ e_q over the given frequencies.
    pub fn ones(freqs: &[i64]) -> Self {
        let one = CoefRational::new(BigRational::one(), BigRational::zero());
        TrigPolynomial { terms: freqs.iter().map(|&q| (q, one.clone())).collect() }
    }

    /// Single character a·e_q.
    pub fn monomial(freq: i64, coef: CoefRational) -> Self {
        TrigPolynomial::new(BTreeMap::from([(freq, coef)]))
    }

    pub fn from_integer_terms(terms: &[(i64, i64)]) -> Self {
        TrigPolynomial::new(
            terms
                .iter()
                .map(|&(q, c)| {
                    (q, CoefRational::new(BigRational::from_integer(c.into()), BigRational::zero()))
                })
                .collect(),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &CoefRational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, freq: i64) -> CoefRational {
        self.terms
            .get(&freq)
            .cloned()
            .unwrap_or_else(|| CoefRational::new(BigRational::zero(), BigRational::zero()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs_frequency(&self) -> u64 {
        self.terms.keys().map(|q| q.unsigned_abs()).max().unwrap_or(0)
    }

    /// Restriction of the coefficients to a frequency set.
    pub fn projection(&self, freqs: &[i64]) -> Self {
        TrigPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(q, _)| freqs.contains(q))
                .map(|(q, c)| (*q, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (q, c) in &other.terms {
            let e = terms
                .entry(*q)
                .or_insert_with(|| CoefRational::new(BigRational::zero(), BigRational::zero()));
            *e = e.clone() + c.clone();
        }
        TrigPolynomial::new(terms)
    }

    pub fn scale(&self, factor: &CoefRational) -> Self {
        TrigPolynomial::new(
            self.terms
                .iter()
                .map(|(q, c)| (*q, c.clone() * factor.clone()))
                .collect(),
        )
    }

    fn convolve(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i64, CoefRational> = BTreeMap::new();
        for (q1, c1) in &self.terms {
            for (q2, c2) in &other.terms {
                let q = q1.checked_add(*q2).expect("frequency overflow in convolution");
                let e = terms
                    .entry(q)
                    .or_insert_with(|| CoefRational::new(BigRational::zero(), BigRational::zero()));
                *e = e.clone() + c1.clone() * c2.clone();
            }
        }
        TrigPolynomial::new(terms)
    }

    /// Fourier coefficients of f^s by repeated convolution; exact.
    pub fn power(&self, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::precondition("power requires s >= 1"));
        }
        let mut acc = self.clone();
        for _ in 1..s {
            acc = acc.convolve(self);
        }
        Ok(acc)
    }

    /// Σ|a_q|², exactly (the squared L² norm, by Parseval).
    pub fn parseval_sq(&self) -> BigRational {
        self.terms.values().map(|c| c.norm_sqr()).sum()
    }

    /// Replaces a_q by a_q·κ^q. With |κ| = 1 this models the rotation
    /// f(t) → f(t + s); norms are invariant.
    pub fn rotate(&self, kappa: &CoefRational) -> Result<Self> {
        if kappa.is_zero() {
            return Err(Error::precondition("rotation factor must be nonzero"));
        }
        let inv = {
            let n = kappa.norm_sqr();
            CoefRational::new(kappa.re.clone() / n.clone(), -kappa.im.clone() / n)
        };
        let mut terms = BTreeMap::new();
        for (q, c) in &self.terms {
            let factor = if *q >= 0 {
                pow_coef(kappa, *q as u64)
            } else {
                pow_coef(&inv, q.unsigned_abs())
            };
            terms.insert(*q, c.clone() * factor);
        }
        Ok(TrigPolynomial::new(terms))
    }

    pub fn to_float_terms(&self) -> Vec<(i64, Complex64)> {
        self.terms
            .iter()
            .map(|(q, c)| {
                (
                    *q,
                    Complex64::new(
                        c.re.to_f64().expect("coefficient fits f64"),
                        c.im.to_f64().expect("coefficient fits f64"),
                    ),
                )
            })
            .collect()
    }

    pub fn from_float_terms(terms: &[(i64, Complex64)]) -> Self {
        TrigPolynomial::new(
            terms
                .iter()
                .map(|&(q, c)| {
                    (
                        q,
                        CoefRational::new(
                            BigRational::from_float(c.re).unwrap_or_else(BigRational::zero),
                            BigRational::from_float(c.im).unwrap_or_else(BigRational::zero),
                        ),
                    )
                })
                .collect(),
        )
    }
}

fn pow_coef(base: &CoefRational, mut e: u64) -> CoefRational {
    let mut result = CoefRational::new(BigRational::one(), BigRational::zero());
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result *= b.clone();
        }
        b = b.clone() * b.clone();
        e >>= 1;
    }
    result
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    freq: i64,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for TrigPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            terms: self
                .terms
                .iter()
                .map(|(q, c)| TermRepr {
                    freq: *q,
                    re: c.re.to_string(),
                    im: c.im.to_string(),
                })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TrigPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut terms = BTreeMap::new();
        for t in repr.terms {
            let re = parse_decimal_rational(&t.re).map_err(D::Error::custom)?;
            let im = parse_decimal_rational(&t.im).map_err(D::Error::custom)?;
            let c = CoefRational::new(re, im);
            if !c.is_zero() {
                let e = terms
                    .entry(t.freq)
                    .or_insert_with(|| CoefRational::new(BigRational::zero(), BigRational::zero()));
                *e = e.clone() + c;
            }
        }
        Ok(TrigPolynomial::new(terms))
    }
}
