//! Exact arithmetic: the generalized multinomial coefficient and the even-
//! exponent L^p norm by coefficient convolution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::TrigPolynomial;
use crate::relations::MultiIndex;
use crate::{Error, Result};

/// Generalized multinomial (x choose α) = (x choose n)·(n choose α) with
/// n = Σα_i, as an exact rational. Zero exactly when x is a nonnegative
/// integer smaller than n.
pub fn generalized_multinomial(x: &BigRational, alpha: &MultiIndex) -> BigRational {
    let n = alpha.weight() as u64;
    // (x choose n)·(n choose α) = Π_{i<n}(x-i) / Π α_j!
    let mut num = BigRational::one();
    for i in 0..n {
        num *= x - BigRational::from_integer(BigInt::from(i));
    }
    let mut denom = BigInt::one();
    for &a in alpha.entries() {
        denom *= factorial(a as u64);
    }
    num / BigRational::from_integer(denom)
}

fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// ‖f‖_p^p = Σ_k |(f^{p/2})^(k)|² for even p, exactly.
pub fn lp_norm_even_exact(f: &TrigPolynomial, p: u32) -> Result<BigRational> {
    if p == 0 || !p.is_multiple_of(2) {
        return Err(Error::precondition("p must be a positive even integer"));
    }
    if f.is_empty() {
        return Ok(BigRational::zero());
    }
    let half = f.power(p / 2)?;
    Ok(half.parseval_sq())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn mi(entries: &[u32]) -> MultiIndex {
        MultiIndex::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(generalized_multinomial(&rat(2, 1), &mi(&[1, 1])), rat(2, 1));
        // weight above a nonnegative integer x vanishes
        assert_eq!(generalized_multinomial(&rat(3, 1), &mi(&[2, 2])), rat(0, 1));
        assert_eq!(generalized_multinomial(&rat(3, 1), &mi(&[4])), rat(0, 1));
        // (1/2 choose 2) = (1/2)(-1/2)/2 = -1/8
        assert_eq!(generalized_multinomial(&rat(1, 2), &mi(&[2])), rat(-1, 8));
        // non-integer x never vanishes
        assert_ne!(generalized_multinomial(&rat(3, 2), &mi(&[5])), rat(0, 1));
    }

    #[test]
    fn multinomial_splits_as_product() {
        // (x choose α) = (x choose n)(n choose α) for integer x
        let x = rat(5, 1);
        let alpha = mi(&[2, 1]);
        // (5 choose 3) = 10, (3 choose (2,1)) = 3
        assert_eq!(generalized_multinomial(&x, &alpha), rat(30, 1));
    }

    #[test]
    fn exact_l4_norms() {
        let e0 = TrigPolynomial::ones(&[0]);
        assert_eq!(lp_norm_even_exact(&e0, 4).unwrap(), rat(1, 1));

        let f = TrigPolynomial::ones(&[0, 1, 2]);
        assert_eq!(lp_norm_even_exact(&f, 4).unwrap(), rat(19, 1));

        let f = TrigPolynomial::ones(&[0, 1, 5, 6]);
        assert_eq!(lp_norm_even_exact(&f, 4).unwrap(), rat(36, 1));

        let f = TrigPolynomial::ones(&[0, 1, 3, 7]);
        assert_eq!(lp_norm_even_exact(&f, 4).unwrap(), rat(28, 1));
    }

    #[test]
    fn parseval_is_p2_path() {
        let f = TrigPolynomial::from_integer_terms(&[(0, 3), (2, -4), (11, 5)]);
        assert_eq!(lp_norm_even_exact(&f, 2).unwrap(), rat(9 + 16 + 25, 1));
        assert_eq!(f.parseval_sq(), rat(50, 1));
    }

    #[test]
    fn odd_p_rejected() {
        let f = TrigPolynomial::ones(&[0, 1]);
        assert!(lp_norm_even_exact(&f, 3).is_err());
        assert!(lp_norm_even_exact(&f, 0).is_err());
    }
}
