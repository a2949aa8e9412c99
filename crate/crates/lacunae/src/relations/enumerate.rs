//! Enumeration of multi-indices, zero-sum relations and the symmetric-set
//! coefficient patterns, plus representation counting.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{MultiIndex, Pattern, Relation};
use crate::{Error, Result};

/// All α ∈ ℕ^m with Σα_i = n, in lexicographic order.
pub fn enumerate_multiindices(m: usize, n: u32) -> Result<Vec<MultiIndex>> {
    if m == 0 {
        return Err(Error::precondition("m must be >= 1"));
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(MultiIndex { entries: cur.clone() });
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(cur, pos + 1, left - v, out);
        }
    }
    rec(&mut cur, 0, n, &mut out);
    Ok(out)
}

/// Canonical representatives of the zero-sum relations of length `m` and
/// weight at most `2n`, deduplicated under permutation and global sign flip.
/// Empty when m > 2n. Sorted by weight, then lexicographically.
pub fn enumerate_relations(m: usize, n: u32) -> Result<Vec<Relation>> {
    if m == 0 || n == 0 {
        return Err(Error::precondition("m and n must be >= 1"));
    }
    let mut out = Vec::new();
    let budget = 2 * n as i64;
    let mut cur = Vec::with_capacity(m);
    gen_nonincreasing(&mut cur, m, budget, budget, 0, 0, &mut |coeffs| {
        if coeffs.iter().sum::<i64>() != 0 {
            return;
        }
        let mut flipped: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        flipped.sort_unstable_by(|a, b| b.cmp(a));
        if coeffs >= flipped.as_slice() {
            out.push(Relation { coeffs: coeffs.to_vec() });
        }
    });
    out.sort_by_key(|r| (r.weight(), r.coeffs.clone()));
    Ok(out)
}

/// Coefficient patterns of the symmetric-set block property: η ∈ (ℤ*)^m with
/// Σ|η_i| ≤ 2n and Ση_i even, canonical under permutation and sign flip.
pub fn enumerate_sym_patterns(m: usize, n: u32) -> Result<Vec<Pattern>> {
    if m == 0 || n == 0 {
        return Err(Error::precondition("m and n must be >= 1"));
    }
    let mut out = Vec::new();
    let budget = 2 * n as i64;
    let mut cur = Vec::with_capacity(m);
    gen_nonincreasing(&mut cur, m, budget, budget, 0, 0, &mut |coeffs| {
        if coeffs.iter().sum::<i64>() % 2 != 0 {
            return;
        }
        let mut flipped: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        flipped.sort_unstable_by(|a, b| b.cmp(a));
        if coeffs >= flipped.as_slice() {
            out.push(Pattern { coeffs: coeffs.to_vec() });
        }
    });
    out.sort_by_key(|p| (p.weight(), p.coeffs.clone()));
    Ok(out)
}

/// Generates nonincreasing vectors of `m` nonzero entries with |entry| <= prev
/// and total weight <= budget, leaving at least one unit of weight per
/// remaining slot.
fn gen_nonincreasing(
    cur: &mut Vec<i64>,
    m: usize,
    prev: i64,
    weight_left: i64,
    _sum: i64,
    _depth: usize,
    emit: &mut impl FnMut(&[i64]),
) {
    if cur.len() == m {
        emit(cur);
        return;
    }
    let slots_after = (m - cur.len() - 1) as i64;
    let max_abs = weight_left - slots_after;
    if max_abs < 1 {
        return;
    }
    let hi = prev.min(max_abs);
    let lo = -max_abs;
    let mut v = hi;
    while v >= lo {
        if v != 0 {
            cur.push(v);
            gen_nonincreasing(cur, m, v, weight_left - v.abs(), 0, 0, emit);
            cur.pop();
        }
        v -= 1;
    }
}

/// All canonical relations of weight ≤ 2n and length ≤ m_max, ordered by
/// weight then lexicographically (the witness search order).
pub(crate) fn relations_up_to(n: u32, m_max: usize) -> Vec<Relation> {
    let mut all = Vec::new();
    for m in 2..=m_max.min(2 * n as usize) {
        all.extend(enumerate_relations(m, n).expect("valid parameters"));
    }
    all.sort_by_key(|r| (r.weight(), r.coeffs.clone()));
    all
}

/// Number of ordered n-tuples of elements of E (with repetition) summing
/// to k: Rudin's representation count r_n(E;k).
pub fn representation_count(elements: &[BigInt], n: u32, k: &BigInt) -> Result<u128> {
    if elements.is_empty() {
        return Err(Error::precondition("E must be nonempty"));
    }
    if n == 0 {
        return Err(Error::precondition("n must be >= 1"));
    }
    let mut counts: HashMap<BigInt, u128> = HashMap::new();
    for e in elements {
        *counts.entry(e.clone()).or_insert(0) += 1;
    }
    for _ in 1..n {
        let mut next: HashMap<BigInt, u128> = HashMap::new();
        for (s, c) in &counts {
            for e in elements {
                *next.entry(s + e).or_insert(0) += c;
            }
        }
        counts = next;
    }
    Ok(counts.get(k).copied().unwrap_or(0))
}
