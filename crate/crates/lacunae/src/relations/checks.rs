//! Window decision procedures: n-independence, almost independence I(n),
//! block independence J(n) (complex and real), its symmetric variant, and
//! the pairing of a coefficient vector against a spectrum tail.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_sym_patterns, relations_up_to};
use super::search::{find_assignment, min_abs_sum, PointSet};
use super::{Pattern, Relation, SearchBounds, Verdict, Window, Witness};
use crate::{Error, Result};

/// Choice of signs for block-independence checks: the break-coefficient sum
/// must be nonzero (complex) or odd (real) for a relation to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignMode {
    Complex,
    Real,
}

struct Ctx {
    pts: PointSet,
}

/// (cap rank, relation index in group, assignment)
type WitnessHit = (usize, usize, Vec<(i64, usize)>);

impl Ctx {
    fn new(window: &Window, n: u32) -> Self {
        let mut spectrum: Vec<BigInt> = window.elements().to_vec();
        spectrum.sort_by(|a, b| {
            num_traits::Signed::abs(a)
                .cmp(&num_traits::Signed::abs(b))
                .then_with(|| a.cmp(b))
        });
        let pts = PointSet::new(spectrum, 2 * n as u64);
        Ctx { pts }
    }

    fn len(&self) -> usize {
        self.pts.len()
    }

    /// Ranks `min_rank..=cap` in decreasing order.
    fn range_desc(&self, min_rank: usize, cap: usize) -> Vec<usize> {
        (min_rank..=cap).rev().collect()
    }
}

fn witness_from(mut assignment: Vec<(i64, usize)>, ctx: &Ctx) -> Witness {
    assignment.sort_by(|a, b| {
        b.0.cmp(&a.0).then_with(|| b.1.cmp(&a.1))
    });
    Witness {
        zeta: assignment.iter().map(|&(c, _)| c).collect(),
        points: assignment.iter().map(|&(_, r)| ctx.pts.get(r).clone()).collect(),
        value: BigInt::zero(),
        break_len: 0,
    }
}

/// Smallest-cap zero-sum witness for one relation among ranks >= min_rank,
/// as (cap rank, assignment). The cheap unrestricted probe runs first so
/// relations without witnesses cost a single search.
fn minimal_witness_for(rel: &Relation, ctx: &Ctx, min_rank: usize) -> Option<(usize, Vec<(i64, usize)>)> {
    let zero = BigInt::zero();
    let all: Vec<usize> = ctx.range_desc(min_rank, ctx.len() - 1);
    find_assignment(rel.coeffs(), &ctx.pts, &all, &zero, false)?;
    for cap in (min_rank + rel.len() - 1)..ctx.len() {
        let idx = ctx.range_desc(min_rank, cap);
        if let Some(a) = find_assignment(rel.coeffs(), &ctx.pts, &idx, &zero, true) {
            return Some((cap, a));
        }
    }
    unreachable!("unrestricted search found a witness");
}

/// First witness in (relation weight, maximal point, relation order), or None
/// after an exhaustive search of all relations among ranks >= min_rank.
fn find_witness(relations: &[Relation], ctx: &Ctx, min_rank: usize) -> Option<Witness> {
    if ctx.len() < min_rank + 2 {
        return None;
    }
    let mut i = 0;
    while i < relations.len() {
        let weight = relations[i].weight();
        let mut j = i;
        while j < relations.len() && relations[j].weight() == weight {
            j += 1;
        }
        let group = &relations[i..j];
        let hits: Vec<WitnessHit> = group
            .par_iter()
            .enumerate()
            .filter_map(|(k, rel)| {
                minimal_witness_for(rel, ctx, min_rank).map(|(cap, a)| (cap, k, a))
            })
            .collect();
        if let Some((_, _, a)) = hits.into_iter().min_by_key(|(cap, k, _)| (*cap, *k)) {
            return Some(witness_from(a, ctx));
        }
        i = j;
    }
    None
}

/// Decides n-independence of a finite set by exhaustive relation search.
pub fn is_n_independent(window: &Window, n: u32) -> Result<Verdict> {
    if window.is_empty() {
        return Err(Error::precondition("E must be nonempty"));
    }
    if n == 0 {
        return Err(Error::precondition("n must be >= 1"));
    }
    let m_max = window.len().min(2 * n as usize);
    let bounds = SearchBounds { m_max, n, window_len: window.len() };
    let ctx = Ctx::new(window, n);
    let relations = relations_up_to(n, m_max);
    match find_witness(&relations, &ctx, 0) {
        Some(w) => Ok(Verdict::fails(w, bounds)),
        None => Ok(Verdict::holds(0, bounds)),
    }
}

/// Minimum of |Σζ_i p_i| over distinct points taken from the tail of the
/// window (spectrum ranks >= tail_start). None when the tail has fewer than
/// m elements.
pub fn pairing_window(zeta: &Pattern, window: &Window, tail_start: usize) -> Result<Option<BigInt>> {
    let ctx = Ctx::new(window, zeta.weight().div_ceil(2).max(1) as u32);
    if tail_start > ctx.len() {
        return Err(Error::precondition("tail_start beyond window length"));
    }
    if ctx.len() - tail_start < zeta.len() {
        return Ok(None);
    }
    let idx = ctx.range_desc(tail_start, ctx.len() - 1);
    Ok(min_abs_sum(zeta.coeffs(), &ctx.pts, &idx))
}

/// Window check of almost n-independence I(n): searches removed prefixes of
/// length 0..=removal_budget. Holds with the smallest prefix whose removal
/// kills every witness; fails when a witness survives past the full budget.
pub fn check_i(window: &Window, n: u32, removal_budget: usize) -> Result<Verdict> {
    if window.is_empty() {
        return Err(Error::precondition("window must be nonempty"));
    }
    if n == 0 {
        return Err(Error::precondition("n must be >= 1"));
    }
    let m_max = window.len().min(2 * n as usize);
    let bounds = SearchBounds { m_max, n, window_len: window.len() };
    let budget = removal_budget.min(window.len());
    if window.len() - budget < 2 {
        return Ok(Verdict::inconclusive(
            format!(
                "window of length {} leaves fewer than 2 elements past removal budget {}",
                window.len(),
                removal_budget
            ),
            bounds,
        ));
    }
    let ctx = Ctx::new(window, n);
    let relations = relations_up_to(n, m_max);
    if let Some(w) = find_witness(&relations, &ctx, budget) {
        return Ok(Verdict::fails(w, bounds));
    }
    for g in 0..=budget {
        if find_witness(&relations, &ctx, g).is_none() {
            return Ok(Verdict::holds(g, bounds));
        }
    }
    unreachable!("no witness past the budget");
}

/// One break-to-tail pattern instance: coefficients for the break part with
/// chosen break points, and the remaining tail coefficients.
struct Split {
    break_coeffs: Vec<i64>,
    break_ranks: Vec<usize>,
    tail_coeffs: Vec<i64>,
}

/// Enumerates sub-multisets of `coeffs` (nonincreasing) of size 1..=max_take
/// together with the complement, then all distinct injective placements of
/// the sub-multiset onto the break ranks.
fn enumerate_splits(coeffs: &[i64], break_ranks: &[usize], out: &mut Vec<Split>) {
    let max_take = break_ranks.len().min(coeffs.len() - 1);
    let mut take: Vec<i64> = Vec::new();
    let mut rest: Vec<i64> = Vec::new();
    fn subsets(
        coeffs: &[i64],
        pos: usize,
        max_take: usize,
        take: &mut Vec<i64>,
        rest: &mut Vec<i64>,
        break_ranks: &[usize],
        out: &mut Vec<Split>,
    ) {
        if pos == coeffs.len() {
            if take.is_empty() || take.len() > max_take || rest.is_empty() {
                return;
            }
            // distinct placements of the multiset `take` onto break ranks
            let mut used = vec![false; break_ranks.len()];
            let mut ranks = Vec::with_capacity(take.len());
            place(take, 0, break_ranks, &mut used, &mut ranks, rest, out);
            return;
        }
        take.push(coeffs[pos]);
        subsets(coeffs, pos + 1, max_take, take, rest, break_ranks, out);
        take.pop();
        rest.push(coeffs[pos]);
        subsets(coeffs, pos + 1, max_take, take, rest, break_ranks, out);
        rest.pop();
    }
    fn place(
        take: &[i64],
        i: usize,
        break_ranks: &[usize],
        used: &mut Vec<bool>,
        ranks: &mut Vec<usize>,
        rest: &[i64],
        out: &mut Vec<Split>,
    ) {
        if i == take.len() {
            out.push(Split {
                break_coeffs: take.to_vec(),
                break_ranks: ranks.clone(),
                tail_coeffs: rest.to_vec(),
            });
            return;
        }
        // equal coefficients only move to later break slots: kills duplicates
        let start = if i > 0 && take[i] == take[i - 1] { ranks[i - 1] + 1 } else { 0 };
        for (b, _) in break_ranks.iter().enumerate().skip(start) {
            if used[b] {
                continue;
            }
            used[b] = true;
            ranks.push(b);
            place(take, i + 1, break_ranks, used, ranks, rest, out);
            ranks.pop();
            used[b] = false;
        }
    }
    subsets(coeffs, 0, max_take, &mut take, &mut rest, break_ranks, out);
    for s in out.iter_mut() {
        s.break_ranks = s.break_ranks.iter().map(|&b| break_ranks[b]).collect();
    }
}

fn block_check(
    window: &Window,
    n: u32,
    patterns: &[Vec<i64>],
    side_ok: &dyn Fn(i64) -> bool,
) -> Result<Verdict> {
    if window.break_set().is_empty() {
        return Err(Error::precondition("window must carry a nonempty break set"));
    }
    let m_max = window.len().min(2 * n as usize);
    let bounds = SearchBounds { m_max, n, window_len: window.len() };
    let ctx = Ctx::new(window, n);
    let tail_start = window.tail_start();
    if tail_start >= ctx.len() {
        return Err(Error::precondition("tail is empty"));
    }
    // ranks of the break elements, in spectrum order
    let mut break_ranks: Vec<usize> = (0..ctx.len())
        .filter(|&r| window.break_set().contains(ctx.pts.get(r)))
        .collect();
    break_ranks.sort_unstable();
    if ctx.len() - tail_start < 1 {
        return Ok(Verdict::inconclusive("tail too short to test any completion", bounds));
    }

    let mut any_feasible = false;
    for coeffs in patterns {
        if coeffs.len() > m_max {
            continue;
        }
        let mut splits = Vec::new();
        enumerate_splits(coeffs, &break_ranks, &mut splits);
        for split in &splits {
            let break_sum: i64 = split.break_coeffs.iter().sum();
            if !side_ok(break_sum) {
                continue;
            }
            let tail_len = split.tail_coeffs.len();
            // candidate tail ranks: past tail_start, not an assigned break point
            let candidates: Vec<usize> = (tail_start..ctx.len())
                .filter(|r| !split.break_ranks.contains(r))
                .collect();
            if candidates.len() < tail_len {
                continue;
            }
            any_feasible = true;
            let target: BigInt = -split
                .break_coeffs
                .iter()
                .zip(&split.break_ranks)
                .map(|(&c, &r)| ctx.pts.get(r) * c)
                .sum::<BigInt>();
            // Persistence: a completion must exist at every tested tail
            // offset. Offsets are nested suffixes of the candidate list, so
            // one completion at the deepest tested offset serves all
            // shallower ones. The deepest suffix must be wide enough to host
            // a shift-invariant family (each of the tail_len levels may
            // occupy two ranks in a symmetric window) yet stay in the far
            // half of the tail, so shallow one-off completions don't count.
            let width = tail_len.max((2 * tail_len + 2).min(candidates.len().div_ceil(2)));
            let start = candidates
                .len()
                .saturating_sub(width)
                .min(candidates.len() - tail_len);
            let idx: Vec<usize> = candidates[start..].iter().rev().copied().collect();
            if let Some(completion) =
                find_assignment(&split.tail_coeffs, &ctx.pts, &idx, &target, false)
            {
                let mut zeta = split.break_coeffs.clone();
                let mut points: Vec<BigInt> = split
                    .break_ranks
                    .iter()
                    .map(|&r| ctx.pts.get(r).clone())
                    .collect();
                for (c, r) in completion {
                    zeta.push(c);
                    points.push(ctx.pts.get(r).clone());
                }
                let witness = Witness {
                    zeta,
                    points,
                    value: BigInt::zero(),
                    break_len: split.break_coeffs.len(),
                };
                return Ok(Verdict::fails(witness, bounds));
            }
        }
    }
    if !any_feasible {
        return Ok(Verdict::inconclusive(
            "no pattern split fits the break and tail sizes",
            bounds,
        ));
    }
    Ok(Verdict::holds(tail_start, bounds))
}

/// Window check of block independence J(n). A failure witness ties assigned
/// break points to a persistent tail completion with zero total sum and a
/// break-coefficient sum that is nonzero (complex) or odd (real).
pub fn check_j(window: &Window, n: u32, sign_mode: SignMode) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::precondition("n must be >= 1"));
    }
    let m_max = window.len().min(2 * n as usize);
    let relations = relations_up_to(n, m_max);
    let patterns: Vec<Vec<i64>> = relations.iter().map(|r| r.coeffs().to_vec()).collect();
    let side: Box<dyn Fn(i64) -> bool> = match sign_mode {
        SignMode::Complex => Box::new(|s| s != 0),
        SignMode::Real => Box::new(|s| s.rem_euclid(2) == 1),
    };
    block_check(window, n, &patterns, side.as_ref())
}

/// Window check of the symmetric block property: coefficient vectors with
/// even total sum and odd break sum, equivalent to real J(n) of E ∪ -E.
pub fn check_j_sym(window: &Window, n: u32) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::precondition("n must be >= 1"));
    }
    if window.elements().iter().any(|x| x.sign() == num_bigint::Sign::Minus) {
        return Err(Error::precondition("symmetric check expects positive integers"));
    }
    let m_max = window.len().min(2 * n as usize);
    let mut patterns: Vec<Vec<i64>> = Vec::new();
    for m in 2..=m_max.min(2 * n as usize) {
        for p in enumerate_sym_patterns(m, n)? {
            patterns.push(p.coeffs().to_vec());
        }
    }
    patterns.sort_by_key(|p| (p.iter().map(|c| c.unsigned_abs()).sum::<u64>(), p.clone()));
    block_check(window, n, &patterns, &|s| s.rem_euclid(2) == 1)
}
