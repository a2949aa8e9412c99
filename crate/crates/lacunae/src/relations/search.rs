//! Assignment search: place a multiset of integer coefficients onto distinct
//! window points so that the weighted sum hits a target, or minimize its
//! absolute value.
//!
//! Points are processed in decreasing absolute value, which makes the
//! cancellation bound |remaining sum| <= (remaining weight) * |next point|
//! prune hard on lacunary windows. Arithmetic runs in i128 when the window
//! and coefficient weight permit, otherwise in BigInt.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub(crate) trait SearchInt: Clone + Ord {
    fn si_zero() -> Self;
    fn si_is_zero(&self) -> bool;
    fn si_mul(&self, c: i64) -> Self;
    fn si_sub(&self, other: &Self) -> Self;
    fn si_abs(&self) -> Self;
}

impl SearchInt for i128 {
    fn si_zero() -> Self {
        0
    }
    fn si_is_zero(&self) -> bool {
        *self == 0
    }
    fn si_mul(&self, c: i64) -> Self {
        self * c as i128
    }
    fn si_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn si_abs(&self) -> Self {
        i128::abs(*self)
    }
}

impl SearchInt for BigInt {
    fn si_zero() -> Self {
        Zero::zero()
    }
    fn si_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn si_mul(&self, c: i64) -> Self {
        self * c
    }
    fn si_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn si_abs(&self) -> Self {
        Signed::abs(self)
    }
}

/// Candidate points with a fast integer representation when it is exact.
pub(crate) struct PointSet {
    big: Vec<BigInt>,
    small: Option<Vec<i128>>,
}

impl PointSet {
    /// `max_weight` bounds Σ|ζ_i| over every search run against this set;
    /// the i128 path is enabled only when all intermediate values fit with
    /// a factor-4 margin.
    pub(crate) fn new(points: Vec<BigInt>, max_weight: u64) -> Self {
        let cap = i128::MAX / (4 * (max_weight as i128 + 1));
        let small: Option<Vec<i128>> = points
            .iter()
            .map(|p| i128::try_from(p).ok().filter(|v| v.abs() <= cap))
            .collect();
        PointSet { big: points, small }
    }

    pub(crate) fn len(&self) -> usize {
        self.big.len()
    }

    pub(crate) fn get(&self, idx: usize) -> &BigInt {
        &self.big[idx]
    }
}

fn coeff_multiset(coeffs: &[i64]) -> Vec<(i64, u32)> {
    let mut sorted = coeffs.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut ms: Vec<(i64, u32)> = Vec::new();
    for c in sorted {
        match ms.last_mut() {
            Some((v, k)) if *v == c => *k += 1,
            _ => ms.push((c, 1)),
        }
    }
    ms
}

/// Finds distinct points (drawn from `indices` into `pts`) and an assignment
/// of the coefficient multiset to them with Σ c_i p_i = target. `indices`
/// must be ordered by decreasing |point|. With `require_first`, the first
/// index must be used (this pins the maximal point of the witness).
///
/// Returns (coefficient, global point index) pairs.
pub(crate) fn find_assignment(
    coeffs: &[i64],
    pts: &PointSet,
    indices: &[usize],
    target: &BigInt,
    require_first: bool,
) -> Option<Vec<(i64, usize)>> {
    if indices.len() < coeffs.len() {
        return None;
    }
    let mut ms = coeff_multiset(coeffs);
    let total_abs: i64 = coeffs.iter().map(|c| c.abs()).sum();
    let mut out = Vec::with_capacity(coeffs.len());
    let found = match &pts.small {
        Some(small) => {
            let sel: Vec<i128> = indices.iter().map(|&i| small[i]).collect();
            let t: i128 = i128::try_from(target).ok()?;
            dfs(&mut ms, coeffs.len(), total_abs, &sel, 0, t, require_first, &mut out)
        }
        None => {
            let sel: Vec<BigInt> = indices.iter().map(|&i| pts.big[i].clone()).collect();
            dfs(&mut ms, coeffs.len(), total_abs, &sel, 0, target.clone(), require_first, &mut out)
        }
    };
    if found {
        Some(out.into_iter().map(|(c, k)| (c, indices[k])).collect())
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs<T: SearchInt>(
    ms: &mut Vec<(i64, u32)>,
    unassigned: usize,
    total_abs: i64,
    pts: &[T],
    pos: usize,
    rem: T,
    require_this: bool,
    out: &mut Vec<(i64, usize)>,
) -> bool {
    if unassigned == 0 {
        return rem.si_is_zero();
    }
    if pts.len() - pos < unassigned {
        return false;
    }
    // All remaining points have |p| <= |pts[pos]|.
    if rem.si_abs() > pts[pos].si_abs().si_mul(total_abs) {
        return false;
    }
    for slot in 0..ms.len() {
        if ms[slot].1 == 0 {
            continue;
        }
        let c = ms[slot].0;
        ms[slot].1 -= 1;
        out.push((c, pos));
        let next_rem = rem.si_sub(&pts[pos].si_mul(c));
        if dfs(ms, unassigned - 1, total_abs - c.abs(), pts, pos + 1, next_rem, false, out) {
            ms[slot].1 += 1;
            return true;
        }
        out.pop();
        ms[slot].1 += 1;
    }
    if !require_this && dfs(ms, unassigned, total_abs, pts, pos + 1, rem, false, out) {
        return true;
    }
    false
}

/// Minimum of |Σ c_i p_i| over all assignments of the coefficient multiset to
/// distinct points. `indices` ordered by decreasing |point|. None when there
/// are fewer points than coefficients.
pub(crate) fn min_abs_sum(coeffs: &[i64], pts: &PointSet, indices: &[usize]) -> Option<BigInt> {
    if indices.len() < coeffs.len() {
        return None;
    }
    let mut ms = coeff_multiset(coeffs);
    let total_abs: i64 = coeffs.iter().map(|c| c.abs()).sum();
    match &pts.small {
        Some(small) => {
            let sel: Vec<i128> = indices.iter().map(|&i| small[i]).collect();
            let mut best: Option<i128> = None;
            min_dfs(&mut ms, coeffs.len(), total_abs, &sel, 0, 0i128, &mut best);
            best.map(BigInt::from)
        }
        None => {
            let sel: Vec<BigInt> = indices.iter().map(|&i| pts.big[i].clone()).collect();
            let mut best: Option<BigInt> = None;
            min_dfs(&mut ms, coeffs.len(), total_abs, &sel, 0, <BigInt as SearchInt>::si_zero(), &mut best);
            best
        }
    }
}

fn min_dfs<T: SearchInt>(
    ms: &mut Vec<(i64, u32)>,
    unassigned: usize,
    total_abs: i64,
    pts: &[T],
    pos: usize,
    partial: T,
    best: &mut Option<T>,
) {
    if unassigned == 0 {
        let v = partial.si_abs();
        if best.as_ref().is_none_or(|b| v < *b) {
            *best = Some(v);
        }
        return;
    }
    if pts.len() - pos < unassigned {
        return;
    }
    if let Some(b) = best {
        if b.si_is_zero() {
            return;
        }
        // Remaining assignments change the sum by at most total_abs * |pts[pos]|.
        let reach = pts[pos].si_abs().si_mul(total_abs);
        if partial.si_abs().si_sub(&reach) >= *b {
            return;
        }
    }
    for slot in 0..ms.len() {
        if ms[slot].1 == 0 {
            continue;
        }
        let c = ms[slot].0;
        ms[slot].1 -= 1;
        let next = partial.si_sub(&pts[pos].si_mul(-c));
        min_dfs(ms, unassigned - 1, total_abs - c.abs(), pts, pos + 1, next, best);
        ms[slot].1 += 1;
    }
    min_dfs(ms, unassigned, total_abs, pts, pos + 1, partial, best);
}
