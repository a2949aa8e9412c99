//! Arithmetical relations between integers and finite-window decision
//! procedures for independence-type properties of spectra.
//!
//! A spectrum is an increasing set of integers; the properties checked here
//! are asymptotic (they concern the set minus some finite part), so every
//! checker works on a finite [`Window`] and returns a three-valued
//! [`Verdict`] carrying explicit search bounds instead of a boolean.
//! Failures come with a [`Witness`] that re-verifies by exact integer
//! arithmetic.

mod checks;
mod enumerate;
mod search;

pub use checks::{check_i, check_j, check_j_sym, is_n_independent, pairing_window, SignMode};
pub use enumerate::{
    enumerate_multiindices, enumerate_relations, enumerate_sym_patterns, representation_count,
};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// α ∈ ℕ^m with its weight Σα_i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("multi-index must have length >= 1"));
        }
        Ok(MultiIndex { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Σα_i.
    pub fn weight(&self) -> u32 {
        self.entries.iter().sum()
    }
}

/// Integer coefficient vector ζ with all entries nonzero (unconstrained sum).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    coeffs: Vec<i64>,
}

impl Pattern {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("pattern must have length >= 1"));
        }
        if coeffs.contains(&0) {
            return Err(Error::invalid("pattern entries must be nonzero"));
        }
        Ok(Pattern { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Σ|ζ_i|.
    pub fn weight(&self) -> u64 {
        self.coeffs.iter().map(|c| c.unsigned_abs()).sum()
    }

    /// Σζ_i.
    pub fn coeff_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

/// Zero-sum pattern in canonical form: entries sorted nonincreasing and the
/// orbit under global sign flip resolved by taking the lexicographically
/// larger representative (so the first entry is positive).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    coeffs: Vec<i64>,
}

impl Relation {
    /// Canonicalizes an arbitrary zero-sum vector of nonzero integers.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let p = Pattern::new(coeffs)?;
        if p.coeff_sum() != 0 {
            return Err(Error::invalid("relation must have zero coefficient sum"));
        }
        Ok(Relation::canonicalize(p.coeffs))
    }

    fn canonicalize(mut coeffs: Vec<i64>) -> Self {
        coeffs.sort_unstable_by(|a, b| b.cmp(a));
        let mut flipped: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        flipped.sort_unstable_by(|a, b| b.cmp(a));
        if flipped > coeffs {
            coeffs = flipped;
        }
        Relation { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.coeffs.iter().map(|c| c.unsigned_abs()).sum()
    }
}

/// Finite increasing list of integers standing for a prefix of an infinite
/// spectrum, with an optional break subset and tail split.
///
/// Storage is sorted by value. The asymptotic checkers enumerate the window
/// in spectrum order, i.e. by increasing absolute value (ties ordered by
/// value), which coincides with value order for nonnegative windows and puts
/// ±x adjacent for symmetric ones. `tail_start` is an index into that
/// enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    #[serde(with = "bigint_vec_serde")]
    elements: Vec<BigInt>,
    #[serde(with = "bigint_vec_serde", default, skip_serializing_if = "Vec::is_empty")]
    break_set: Vec<BigInt>,
    #[serde(default)]
    tail_start: usize,
}

impl Window {
    pub fn new(elements: Vec<BigInt>) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("window elements must be strictly increasing"));
        }
        Ok(Window { elements, break_set: Vec::new(), tail_start: 0 })
    }

    pub fn from_i64(elements: impl IntoIterator<Item = i64>) -> Result<Self> {
        Window::new(elements.into_iter().map(BigInt::from).collect())
    }

    pub fn with_break_set(mut self, break_set: Vec<BigInt>) -> Result<Self> {
        for b in &break_set {
            if !self.elements.contains(b) {
                return Err(Error::invalid(format!("break element {b} not in window")));
            }
        }
        self.break_set = break_set;
        Ok(self)
    }

    pub fn with_tail_start(mut self, tail_start: usize) -> Result<Self> {
        if tail_start > self.elements.len() {
            return Err(Error::invalid("tail_start beyond window length"));
        }
        self.tail_start = tail_start;
        Ok(self)
    }

    pub fn elements(&self) -> &[BigInt] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn break_set(&self) -> &[BigInt] {
        &self.break_set
    }

    pub fn tail_start(&self) -> usize {
        self.tail_start
    }

    /// Elements in spectrum order: increasing (|x|, x).
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn spectrum_order(&self) -> Vec<&BigInt> {
        let mut v: Vec<&BigInt> = self.elements.iter().collect();
        v.sort_by(|a, b| a.abs().cmp(&b.abs()).then_with(|| a.cmp(b)));
        v
    }
}

mod bigint_vec_serde {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| BigInt::from_str(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod bigint_serde {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let st = String::deserialize(d)?;
        BigInt::from_str(&st).map_err(serde::de::Error::custom)
    }
}

/// Certificate for a failed independence check: coefficients, the distinct
/// window points they act on, and the (zero) value Σζ_i p_i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub zeta: Vec<i64>,
    #[serde(with = "bigint_vec_serde")]
    pub points: Vec<BigInt>,
    #[serde(with = "bigint_serde")]
    pub value: BigInt,
    /// How many leading coordinates of `zeta`/`points` form the break part.
    /// Zero for plain independence witnesses.
    pub break_len: usize,
}

impl Witness {
    /// Recomputes Σζ_i p_i and checks it against the stored value, point
    /// distinctness and length agreement.
    pub fn verify(&self) -> bool {
        if self.zeta.len() != self.points.len() || self.zeta.is_empty() {
            return false;
        }
        if self.zeta.contains(&0) {
            return false;
        }
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                if self.points[i] == self.points[j] {
                    return false;
                }
            }
        }
        let sum: BigInt = self
            .zeta
            .iter()
            .zip(&self.points)
            .map(|(&c, p)| p * c)
            .sum();
        sum == self.value
    }

    /// Σ of the break-part coefficients.
    pub fn break_coeff_sum(&self) -> i64 {
        self.zeta[..self.break_len].iter().sum()
    }
}

/// Extent of the search that backs a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub m_max: usize,
    pub n: u32,
    pub window_len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    HoldsOnWindow,
    FailsWithWitness,
    Inconclusive,
}

/// Result of an asymptotic-property check on a finite window.
///
/// `HoldsOnWindow` certifies an exhaustive search: after removing
/// `removed_prefix_len` elements (in spectrum order) no witness exists inside
/// the window. `FailsWithWitness` carries an exactly verifiable certificate.
/// `Inconclusive` means the window was too small to produce either.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removed_prefix_len: Option<usize>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub bounds: SearchBounds,
}

impl Verdict {
    pub(crate) fn holds(removed_prefix_len: usize, bounds: SearchBounds) -> Self {
        Verdict {
            status: VerdictStatus::HoldsOnWindow,
            removed_prefix_len: Some(removed_prefix_len),
            witness: None,
            reason: None,
            bounds,
        }
    }

    pub(crate) fn fails(witness: Witness, bounds: SearchBounds) -> Self {
        debug_assert!(witness.verify());
        debug_assert!(witness.value.is_zero());
        Verdict {
            status: VerdictStatus::FailsWithWitness,
            removed_prefix_len: None,
            witness: Some(witness),
            reason: None,
            bounds,
        }
    }

    pub(crate) fn inconclusive(reason: impl Into<String>, bounds: SearchBounds) -> Self {
        Verdict {
            status: VerdictStatus::Inconclusive,
            removed_prefix_len: None,
            witness: None,
            reason: Some(reason.into()),
            bounds,
        }
    }

    pub fn holds_on_window(&self) -> bool {
        self.status == VerdictStatus::HoldsOnWindow
    }

    pub fn fails_with_witness(&self) -> bool {
        self.status == VerdictStatus::FailsWithWitness
    }
}
