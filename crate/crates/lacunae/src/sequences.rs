//! Example spectra and their diagnostics: geometric sequences, integer parts
//! of real powers, polynomial values; classification of geometric sequences
//! against their known independence levels; exhaustive small-coefficient
//! Diophantine solutions; exact counterexample identities; density and
//! growth checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::relations::{
    check_i, check_j, is_n_independent, SignMode, Verdict, Window, Witness,
};
use crate::{Error, Result};

/// Base family of a sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SequenceKind {
    /// {j^k}_{k≥0} with |j| ≥ 2.
    Geometric { j: i64 },
    /// {[σ^k]}_{k≥0} with σ > 1 (exact rational σ, exact floors).
    IntegerPartPower { sigma: String },
    /// {P(k)}_{k≥1} for P with integer coefficients, degree ≥ 1.
    Polynomial { coeffs: Vec<i64> },
    /// A finite explicit list.
    Explicit { elements: Vec<i64> },
}

/// Set-level modifiers applied after generation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "op")]
pub enum Modifier {
    Translate { s: i64 },
    Scale { c: i64 },
    Symmetrize,
    Adjoin { h: i64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceSpec {
    #[serde(flatten)]
    pub kind: SequenceKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modifiers: Vec<Modifier>,
}

impl SequenceSpec {
    pub fn geometric(j: i64) -> Self {
        SequenceSpec { kind: SequenceKind::Geometric { j }, modifiers: Vec::new() }
    }

    pub fn integer_part_power(sigma: &str) -> Self {
        SequenceSpec {
            kind: SequenceKind::IntegerPartPower { sigma: sigma.to_string() },
            modifiers: Vec::new(),
        }
    }

    pub fn polynomial(coeffs: Vec<i64>) -> Self {
        SequenceSpec { kind: SequenceKind::Polynomial { coeffs }, modifiers: Vec::new() }
    }

    pub fn explicit(elements: Vec<i64>) -> Self {
        SequenceSpec { kind: SequenceKind::Explicit { elements }, modifiers: Vec::new() }
    }

    pub fn with_modifier(mut self, m: Modifier) -> Self {
        self.modifiers.push(m);
        self
    }

    pub fn describe(&self) -> String {
        let base = match &self.kind {
            SequenceKind::Geometric { j } => format!("geometric({j})"),
            SequenceKind::IntegerPartPower { sigma } => format!("integer_part_power({sigma})"),
            SequenceKind::Polynomial { coeffs } => format!("polynomial({coeffs:?})"),
            SequenceKind::Explicit { .. } => "explicit".to_string(),
        };
        let mods: Vec<String> = self
            .modifiers
            .iter()
            .map(|m| match m {
                Modifier::Translate { s } => format!("translate({s})"),
                Modifier::Scale { c } => format!("scale({c})"),
                Modifier::Symmetrize => "symmetrize".to_string(),
                Modifier::Adjoin { h } => format!("adjoin({h})"),
            })
            .collect();
        if mods.is_empty() {
            base
        } else {
            format!("{base}+{}", mods.join("+"))
        }
    }
}

/// First `count` elements of the sequence in spectrum order (increasing
/// absolute value), as a window. Floors of rational powers are exact.
pub fn generate(spec: &SequenceSpec, count: usize) -> Result<Window> {
    if count == 0 {
        return Err(Error::precondition("count must be >= 1"));
    }
    // enough base terms to survive the modifiers
    let base_needed = count + 2;
    let mut base: Vec<BigInt> = match &spec.kind {
        SequenceKind::Geometric { j } => {
            if j.abs() < 2 {
                return Err(Error::precondition("geometric requires |j| >= 2"));
            }
            let j = BigInt::from(*j);
            let mut v = Vec::with_capacity(base_needed);
            let mut x = BigInt::one();
            for _ in 0..base_needed {
                v.push(x.clone());
                x *= &j;
            }
            v
        }
        SequenceKind::IntegerPartPower { sigma } => {
            let sigma = crate::norms::parse_decimal_rational(sigma)?;
            if sigma <= BigRational::one() {
                return Err(Error::precondition("integer_part_power requires σ > 1"));
            }
            let mut v = Vec::new();
            let mut x = BigRational::one();
            // duplicates collapse (e.g. [σ^0] = [σ^1] = 1 for σ < 2)
            while v.len() < base_needed {
                let fl = x.floor().to_integer();
                if v.last() != Some(&fl) {
                    v.push(fl);
                }
                x *= &sigma;
            }
            v
        }
        SequenceKind::Polynomial { coeffs } => {
            let degree_ok = coeffs.len() >= 2 && *coeffs.last().unwrap() != 0;
            if !degree_ok {
                return Err(Error::precondition("polynomial degree must be >= 1"));
            }
            let mut v = Vec::with_capacity(base_needed);
            for k in 1..=base_needed as i64 {
                let mut acc = BigInt::zero();
                let kb = BigInt::from(k);
                for (i, &c) in coeffs.iter().enumerate() {
                    acc += BigInt::from(c) * kb.pow(i as u32);
                }
                v.push(acc);
            }
            v
        }
        SequenceKind::Explicit { elements } => {
            if elements.is_empty() {
                return Err(Error::precondition("explicit sequence must be nonempty"));
            }
            elements.iter().map(|&x| BigInt::from(x)).collect()
        }
    };

    for m in &spec.modifiers {
        match m {
            Modifier::Translate { s } => {
                let s = BigInt::from(*s);
                for x in base.iter_mut() {
                    *x += &s;
                }
            }
            Modifier::Scale { c } => {
                if *c == 0 {
                    return Err(Error::precondition("scale factor must be nonzero"));
                }
                let c = BigInt::from(*c);
                for x in base.iter_mut() {
                    *x *= &c;
                }
            }
            Modifier::Symmetrize => {
                let neg: Vec<BigInt> = base.iter().map(|x| -x.clone()).collect();
                base.extend(neg);
            }
            Modifier::Adjoin { h } => base.push(BigInt::from(*h)),
        }
    }

    base.sort_by(|a, b| a.abs().cmp(&b.abs()).then_with(|| a.cmp(b)));
    base.dedup();
    let mut chosen: Vec<BigInt> = base.into_iter().take(count).collect();
    if chosen.len() < count {
        return Err(Error::precondition(format!(
            "sequence yields only {} distinct elements, {count} requested",
            chosen.len()
        )));
    }
    chosen.sort();
    Window::new(chosen)
}

/// A property level: the largest n for which the property holds, or
/// unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Finite(u32),
    Unbounded,
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Level::Finite(n) => write!(f, "{n}"),
            Level::Unbounded => write!(f, "inf"),
        }
    }
}

/// Known independence levels of G = {j^k}: almost independence I, complex
/// block independence, real block independence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricProfile {
    pub j: i64,
    pub i_level: Level,
    pub cj_level: Level,
    pub rj_level: Level,
}

/// Levels of G = {j^k}: I = |j| for positive j and |j|−1 for negative j;
/// complex J = |j|; real J unbounded for odd j, |j| for even j.
pub fn geometric_expected(j: i64) -> Result<GeometricProfile> {
    if j.abs() < 2 {
        return Err(Error::precondition("|j| must be >= 2"));
    }
    let a = j.unsigned_abs() as u32;
    Ok(GeometricProfile {
        j,
        i_level: Level::Finite(if j > 0 { a } else { a - 1 }),
        cj_level: Level::Finite(a),
        rj_level: if j % 2 != 0 { Level::Unbounded } else { Level::Finite(a) },
    })
}

/// A measured level: holds through `level`; `exact` when level+1 was tested
/// and failed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasuredLevel {
    pub level: u32,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_witness: Option<Witness>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub j: i64,
    pub n_max: u32,
    pub window_len: usize,
    pub expected: GeometricProfile,
    pub measured_i: MeasuredLevel,
    pub measured_cj: MeasuredLevel,
    pub measured_rj: MeasuredLevel,
    pub agrees: bool,
}

fn measure_levels(
    n_max: u32,
    mut verdict_at: impl FnMut(u32) -> Result<Verdict>,
) -> Result<MeasuredLevel> {
    // property holds at n=1 vacuously; levels are monotone
    let mut level = 1u32;
    let mut witness = None;
    for n in 2..=n_max {
        let v = verdict_at(n)?;
        if v.fails_with_witness() {
            witness = v.witness;
            break;
        }
        level = n;
    }
    let exact = (level < n_max) || witness.is_some();
    Ok(MeasuredLevel { level, exact, failure_witness: witness })
}

fn level_agrees(expected: Level, measured: &MeasuredLevel, n_max: u32) -> bool {
    match expected {
        Level::Unbounded => measured.level == n_max,
        Level::Finite(l) => {
            if l >= n_max {
                measured.level == n_max
            } else {
                measured.level == l && measured.exact
            }
        }
    }
}

/// Runs the window checkers on G = {j^k} for n = 2..n_max and compares the
/// measured exact levels with the known ones (unbounded entries count as
/// agreement when the property holds through n_max).
pub fn classify_geometric(j: i64, n_max: u32, window_len: usize) -> Result<ClassifyReport> {
    classify_table_variant(TableVariant::Plain, j, n_max, window_len)
}

/// The four spectrum shapes of the geometric summary table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableVariant {
    /// G = {j^k}
    Plain,
    /// G ∪ {0}
    WithZero,
    /// G ∪ −G
    Symmetric,
    /// G ∪ −G ∪ {0}
    SymmetricWithZero,
}

impl TableVariant {
    pub fn describe(&self, j: i64) -> String {
        match self {
            TableVariant::Plain => format!("{{{j}^k}}"),
            TableVariant::WithZero => format!("{{{j}^k}} u {{0}}"),
            TableVariant::Symmetric => format!("{{±{j}^k}}"),
            TableVariant::SymmetricWithZero => format!("{{±{j}^k}} u {{0}}"),
        }
    }

    pub fn all() -> [TableVariant; 4] {
        [
            TableVariant::Plain,
            TableVariant::WithZero,
            TableVariant::Symmetric,
            TableVariant::SymmetricWithZero,
        ]
    }
}

/// Known (I, complex J, real J) levels for each row of the geometric summary
/// table.
pub fn table_expected(variant: TableVariant, j: i64) -> Result<GeometricProfile> {
    if j.abs() < 2 {
        return Err(Error::precondition("|j| must be >= 2"));
    }
    let a = j.unsigned_abs() as u32;
    let odd = j % 2 != 0;
    let (i_level, cj_level, rj_level) = match variant {
        TableVariant::Plain => (
            if j > 0 { a } else { a - 1 },
            a,
            if odd { 0 } else { a },
        ),
        TableVariant::WithZero => {
            if j > 0 {
                (a, a - 1, if odd { 0 } else { a - 1 })
            } else {
                (a - 1, a, if odd { 0 } else { a })
            }
        }
        TableVariant::Symmetric => (1, 1, if odd { 0 } else { a }),
        TableVariant::SymmetricWithZero => (1, 1, if odd { 0 } else { a / 2 }),
    };
    let lift = |n: u32| if n == 0 { Level::Unbounded } else { Level::Finite(n) };
    Ok(GeometricProfile {
        j,
        i_level: lift(i_level),
        cj_level: lift(cj_level),
        rj_level: lift(rj_level),
    })
}

/// Classifies one row of the geometric summary table on a generated window.
pub fn classify_table_variant(
    variant: TableVariant,
    j: i64,
    n_max: u32,
    window_len: usize,
) -> Result<ClassifyReport> {
    if n_max < 2 {
        return Err(Error::precondition("n_max must be >= 2"));
    }
    if window_len < 10 {
        return Err(Error::precondition("window_len must be >= 10"));
    }
    let expected = table_expected(variant, j)?;
    let mut spec = SequenceSpec::geometric(j);
    match variant {
        TableVariant::Plain => {}
        TableVariant::WithZero => spec = spec.with_modifier(Modifier::Adjoin { h: 0 }),
        TableVariant::Symmetric => spec = spec.with_modifier(Modifier::Symmetrize),
        TableVariant::SymmetricWithZero => {
            spec = spec
                .with_modifier(Modifier::Symmetrize)
                .with_modifier(Modifier::Adjoin { h: 0 })
        }
    }
    let window = generate(&spec, window_len)?;
    classify_window(j, &window, expected, n_max)
}

fn classify_window(
    j: i64,
    window: &Window,
    expected: GeometricProfile,
    n_max: u32,
) -> Result<ClassifyReport> {
    let budget = 2usize;
    let spectrum_first: Vec<BigInt> = {
        let mut v = window.elements().to_vec();
        v.sort_by(|a, b| a.abs().cmp(&b.abs()).then_with(|| a.cmp(b)));
        v
    };
    let has_neg = spectrum_first.iter().any(|x| x.is_negative());
    let has_zero = spectrum_first.iter().any(|x| x.is_zero());
    let break_len = 2 + if has_neg { 2 } else { 0 } + usize::from(has_zero);
    let break_len = break_len.min(spectrum_first.len() / 3);
    let break_set = spectrum_first[..break_len].to_vec();
    let jw = window
        .clone()
        .with_break_set(break_set)?
        .with_tail_start(break_len + 1)?;

    let measured_i = measure_levels(n_max, |n| check_i(window, n, budget))?;
    let measured_cj = measure_levels(n_max, |n| check_j(&jw, n, SignMode::Complex))?;
    let measured_rj = measure_levels(n_max, |n| check_j(&jw, n, SignMode::Real))?;
    let agrees = level_agrees(expected.i_level, &measured_i, n_max)
        && level_agrees(expected.cj_level, &measured_cj, n_max)
        && level_agrees(expected.rj_level, &measured_rj, n_max);
    Ok(ClassifyReport {
        j,
        n_max,
        window_len: window.len(),
        expected,
        measured_i,
        measured_cj,
        measured_rj,
        agrees,
    })
}

/// One solution of Σζ_i j^{k_i} = 0 with ζ_1 > 0, nonzero entries,
/// Σ|ζ_i| ≤ 2n and 0 ≤ k_1 < … < k_m ≤ bound.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiophSolution {
    pub zeta: Vec<i64>,
    pub exponents: Vec<u32>,
}

/// Exhaustive solutions of the geometric Diophantine equation up to the
/// exponent bound. With n = |j| these are exactly the two shift-invariant
/// families |j|·j^k − sgn(j)·j^{k+1} = 0 and
/// |j|·j^k + (j − sgn j)·j^{k+1} − j^{k+2} = 0.
pub fn diophantine_geometric(j: i64, exponent_bound: u32, n: u32) -> Result<Vec<DiophSolution>> {
    if j.abs() < 2 {
        return Err(Error::precondition("|j| must be >= 2"));
    }
    if n == 0 {
        return Err(Error::precondition("n must be >= 1"));
    }
    let powers: Vec<BigInt> = {
        let mut v = Vec::new();
        let mut x = BigInt::one();
        for _ in 0..=exponent_bound {
            v.push(x.clone());
            x *= j;
        }
        v
    };
    let weight_budget = 2 * n as i64;
    let mut out = Vec::new();
    let max_m = (weight_budget as usize).min(exponent_bound as usize + 1);
    for m in 2..=max_m {
        let mut exps: Vec<u32> = Vec::with_capacity(m);
        enumerate_exponents(0, exponent_bound, m, &mut exps, &mut |exps| {
            let mut zeta = Vec::with_capacity(m);
            coeff_dfs(exps, &powers, weight_budget, &mut zeta, &BigInt::zero(), &mut out);
        });
    }
    out.sort();
    Ok(out)
}

fn enumerate_exponents(
    from: u32,
    bound: u32,
    want: usize,
    cur: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if want == 0 {
        emit(cur);
        return;
    }
    if bound + 1 < from + want as u32 {
        return;
    }
    for k in from..=(bound + 1 - want as u32) {
        cur.push(k);
        enumerate_exponents(k + 1, bound, want - 1, cur, emit);
        cur.pop();
    }
}

fn coeff_dfs(
    exps: &[u32],
    powers: &[BigInt],
    weight_left: i64,
    zeta: &mut Vec<i64>,
    sum: &BigInt,
    out: &mut Vec<DiophSolution>,
) {
    let pos = zeta.len();
    if pos == exps.len() {
        if sum.is_zero() {
            out.push(DiophSolution { zeta: zeta.clone(), exponents: exps.to_vec() });
        }
        return;
    }
    let slots_after = (exps.len() - pos - 1) as i64;
    let max_abs = weight_left - slots_after;
    if max_abs < 1 {
        return;
    }
    // the remaining terms cannot outweigh the current partial sum
    let reach: BigInt = (pos..exps.len())
        .map(|i| powers[exps[i] as usize].abs())
        .sum::<BigInt>()
        * max_abs;
    if sum.abs() > reach {
        return;
    }
    let lo = if pos == 0 { 1 } else { -max_abs };
    for c in lo..=max_abs {
        if c == 0 {
            continue;
        }
        zeta.push(c);
        let next = sum + &powers[exps[pos] as usize] * c;
        coeff_dfs(exps, powers, weight_left - c.abs(), zeta, &next, out);
        zeta.pop();
    }
}

/// The two solution families, translated across the exponent range — the
/// expected output of `diophantine_geometric` at n = |j|.
pub fn expected_geometric_solutions(j: i64, exponent_bound: u32) -> Result<Vec<DiophSolution>> {
    if j.abs() < 2 {
        return Err(Error::precondition("|j| must be >= 2"));
    }
    let a = j.abs();
    let sgn = j.signum();
    let mut out = Vec::new();
    for k in 0..exponent_bound {
        out.push(DiophSolution { zeta: vec![a, -sgn], exponents: vec![k, k + 1] });
    }
    for k in 0..exponent_bound.saturating_sub(1) {
        out.push(DiophSolution {
            zeta: vec![a, j - sgn, -1],
            exponents: vec![k, k + 1, k + 2],
        });
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub lhs: String,
    pub rhs: String,
    pub verified: bool,
}

fn power_sum(terms: &[(i64, u32)], d: u32) -> BigInt {
    terms
        .iter()
        .map(|&(base, mult)| BigInt::from(base).pow(d) * BigInt::from(mult))
        .sum()
}

fn fixed_identity(name: &str, d: u32, lhs: &[(i64, u32)], rhs: &[(i64, u32)]) -> IdentityReport {
    let l = power_sum(lhs, d);
    let r = power_sum(rhs, d);
    IdentityReport {
        name: name.to_string(),
        n: None,
        verified: l == r,
        lhs: l.to_string(),
        rhs: r.to_string(),
    }
}

/// Exact verification of the counterexample identities: the fixed equalities
/// of equal power sums for degrees 2 through 10, and the Fibonacci, Binet
/// and Ramanujan parametric families for n in 1..=max_n.
pub fn identity_suite(max_n: u64) -> Vec<IdentityReport> {
    let mut out = vec![
        fixed_identity("d2_squares", 2, &[(7, 1), (1, 1)], &[(5, 2)]),
        fixed_identity("d2_squares_alt", 2, &[(18, 1), (1, 1)], &[(15, 1), (10, 1)]),
        fixed_identity("d3_cubes", 3, &[(12, 1), (1, 1)], &[(10, 1), (9, 1)]),
        fixed_identity("d4_biquadrates", 4, &[(158, 1), (59, 1)], &[(134, 1), (133, 1)]),
        fixed_identity(
            "d4_biquadrates_alt",
            4,
            &[(12231, 1), (2903, 1)],
            &[(10381, 1), (10203, 1)],
        ),
        fixed_identity(
            "d5_fifth_powers",
            5,
            &[(67, 1), (28, 1), (24, 1)],
            &[(62, 1), (54, 1), (3, 1)],
        ),
        fixed_identity(
            "d6_sixth_powers",
            6,
            &[(23, 1), (15, 1), (10, 1)],
            &[(22, 1), (19, 1), (3, 1)],
        ),
        fixed_identity(
            "d7_seventh_powers",
            7,
            &[(149, 1), (123, 1), (14, 1), (10, 1)],
            &[(146, 1), (129, 1), (90, 1), (15, 1)],
        ),
        fixed_identity(
            "d8_eighth_powers",
            8,
            &[(43, 1), (20, 1), (11, 1), (10, 1), (1, 1)],
            &[(41, 1), (35, 1), (32, 1), (28, 1), (5, 1)],
        ),
        fixed_identity(
            "d9_ninth_powers",
            9,
            &[(23, 1), (18, 1), (14, 1), (13, 2), (1, 1)],
            &[(22, 1), (21, 1), (15, 1), (10, 1), (9, 1), (5, 1)],
        ),
        fixed_identity(
            "d10_tenth_powers",
            10,
            &[(38, 1), (33, 1), (26, 2), (15, 1), (8, 1), (1, 1)],
            &[(36, 1), (35, 1), (32, 1), (29, 1), (24, 1), (23, 1), (22, 1)],
        ),
    ];

    // Fibonacci squares: (F_{n-1}F_{n+1} + F_n²)² + (F_n²)²
    //                  = (F_{n-1}F_n + F_nF_{n+1})² + 1²
    let mut fibs: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    for _ in 0..(max_n + 2) {
        let next = &fibs[fibs.len() - 1] + &fibs[fibs.len() - 2];
        fibs.push(next);
    }
    for n in 1..=max_n {
        let (a, b, c) = (&fibs[(n - 1) as usize], &fibs[n as usize], &fibs[(n + 1) as usize]);
        let lhs = (a * c + b * b).pow(2) + (b * b).pow(2);
        let rhs = (a * b + b * c).pow(2) + BigInt::one();
        out.push(IdentityReport {
            name: "fibonacci_squares".into(),
            n: Some(n),
            verified: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    // Binet cubes: (9n⁴)³ + (1+9n³)³ = (3n(1+3n³))³ + 1³
    for n in 1..=max_n {
        let nb = BigInt::from(n);
        let p: BigInt = 9 * nb.pow(4);
        let q: BigInt = 1 + 9 * nb.pow(3);
        let r: BigInt = 3 * &nb * (1 + 3 * nb.pow(3));
        let lhs = p.pow(3) + q.pow(3);
        let rhs = r.pow(3) + BigInt::one();
        out.push(IdentityReport {
            name: "binet_cubes".into(),
            n: Some(n),
            verified: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    // Ramanujan biquadrates:
    // (4n⁵−5n)⁴ + (6n⁴−3)⁴ + (4n⁴+1)⁴ = (4n⁵+n)⁴ + (2n⁴−1)⁴ + 3⁴
    for n in 1..=max_n {
        let nb = BigInt::from(n);
        let t1: BigInt = 4 * nb.pow(5) - 5 * &nb;
        let t2: BigInt = 6 * nb.pow(4) - 3;
        let t3: BigInt = 4 * nb.pow(4) + 1;
        let s1: BigInt = 4 * nb.pow(5) + &nb;
        let s2: BigInt = 2 * nb.pow(4) - 1;
        let lhs: BigInt = t1.pow(4) + t2.pow(4) + t3.pow(4);
        let rhs: BigInt = s1.pow(4) + s2.pow(4) + BigInt::from(3).pow(4);
        out.push(IdentityReport {
            name: "ramanujan_biquadrates".into(),
            n: Some(n),
            verified: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
    out
}

/// max_a |E ∩ {a+1, …, a+h}| / h over the window (the finite-window
/// surrogate of the maximal density).
pub fn density_estimate(window: &Window, h: u64) -> Result<BigRational> {
    if h == 0 {
        return Err(Error::precondition("h must be >= 1"));
    }
    let elems = window.elements();
    if elems.len() < 2 {
        return Err(Error::precondition("window must have at least 2 elements"));
    }
    let span = elems.last().unwrap() - elems.first().unwrap();
    if BigInt::from(h) > span {
        return Err(Error::precondition("h must not exceed the window span"));
    }
    let h_big = BigInt::from(h);
    let mut best = 0usize;
    let mut hi = 0usize;
    for lo in 0..elems.len() {
        if hi < lo {
            hi = lo;
        }
        // interval (a, a+h] with a = elems[lo] - 1 covers elems[lo] .. elems[lo]+h-1
        let limit = &elems[lo] + &h_big;
        while hi < elems.len() && elems[hi] < limit {
            hi += 1;
        }
        best = best.max(hi - lo);
    }
    Ok(BigRational::new(BigInt::from(best), BigInt::from(h)))
}

/// Growth admissibility: |n_{k+1}/n_k| ≥ p+1 on the window, plus the
/// exhaustive weight-2p witness search that must come up empty when the
/// ratio condition holds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthReport {
    pub admissible: bool,
    pub min_ratio: f64,
    pub required_ratio: f64,
    pub independent: Verdict,
}

pub fn growth_admissible(window: &Window, p: u32) -> Result<GrowthReport> {
    if p == 0 {
        return Err(Error::precondition("p must be >= 1"));
    }
    let mut elems = window.elements().to_vec();
    elems.sort_by(|a, b| a.abs().cmp(&b.abs()).then_with(|| a.cmp(b)));
    for w in elems.windows(2) {
        if w[0].abs() >= w[1].abs() {
            return Err(Error::precondition("window must be strictly increasing in |.|"));
        }
    }
    let mut min_ratio = f64::INFINITY;
    for w in elems.windows(2) {
        let a = w[0].abs().to_f64().unwrap_or(f64::MAX);
        let b = w[1].abs().to_f64().unwrap_or(f64::MAX);
        if a > 0.0 {
            min_ratio = min_ratio.min(b / a);
        }
    }
    let required = (p + 1) as f64;
    let independent = is_n_independent(window, p)?;
    Ok(GrowthReport {
        admissible: min_ratio >= required,
        min_ratio,
        required_ratio: required,
        independent,
    })
}

/// Greatest common divisor helper used by CLI validations.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_geometric() {
        let w = generate(&SequenceSpec::geometric(3), 5).unwrap();
        let got: Vec<i64> = w.elements().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 3, 9, 27, 81]);
    }

    #[test]
    fn generate_negative_geometric() {
        let w = generate(&SequenceSpec::geometric(-2), 5).unwrap();
        let got: Vec<i64> = w.elements().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(got, vec![-8, -2, 1, 4, 16]);
    }

    #[test]
    fn generate_squares() {
        let w = generate(&SequenceSpec::polynomial(vec![0, 0, 1]), 5).unwrap();
        let got: Vec<i64> = w.elements().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 4, 9, 16, 25]);
    }

    #[test]
    fn generate_golden_ratio_floors() {
        let w = generate(&SequenceSpec::integer_part_power("1.6180339887"), 6).unwrap();
        let got: Vec<i64> = w.elements().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 2, 4, 6, 11, 17]);
    }

    #[test]
    fn generate_symmetrized() {
        let w = generate(
            &SequenceSpec::geometric(3).with_modifier(Modifier::Symmetrize),
            6,
        )
        .unwrap();
        let got: Vec<i64> = w.elements().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(got, vec![-9, -3, -1, 1, 3, 9]);
    }

    #[test]
    fn generate_adjoin_zero() {
        let w = generate(
            &SequenceSpec::geometric(2).with_modifier(Modifier::Adjoin { h: 0 }),
            5,
        )
        .unwrap();
        let got: Vec<i64> = w.elements().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(got, vec![0, 1, 2, 4, 8]);
    }

    #[test]
    fn expected_profiles_match_known_rows() {
        let p = geometric_expected(3).unwrap();
        assert_eq!(
            (p.i_level, p.cj_level, p.rj_level),
            (Level::Finite(3), Level::Finite(3), Level::Unbounded)
        );
        let p = geometric_expected(2).unwrap();
        assert_eq!(
            (p.i_level, p.cj_level, p.rj_level),
            (Level::Finite(2), Level::Finite(2), Level::Finite(2))
        );
        let p = geometric_expected(-2).unwrap();
        assert_eq!(
            (p.i_level, p.cj_level, p.rj_level),
            (Level::Finite(1), Level::Finite(2), Level::Finite(2))
        );
    }

    #[test]
    fn classify_powers_of_two() {
        let r = classify_geometric(2, 4, 20).unwrap();
        assert!(r.agrees, "{r:?}");
        assert_eq!(r.measured_i.level, 2);
        assert!(r.measured_i.exact);
        // the I(3) failure is the known (3,-2,-1) family
        let w = r.measured_i.failure_witness.as_ref().unwrap();
        assert_eq!(
            crate::relations::Relation::new(w.zeta.clone()).unwrap(),
            crate::relations::Relation::new(vec![3, -2, -1]).unwrap()
        );
        assert_eq!(r.measured_cj.level, 2);
        assert_eq!(r.measured_rj.level, 2);
    }

    #[test]
    fn classify_powers_of_three() {
        let r = classify_geometric(3, 4, 16).unwrap();
        assert!(r.agrees, "{r:?}");
        assert_eq!(r.measured_i.level, 3);
        assert_eq!(r.measured_cj.level, 3);
        assert_eq!(r.measured_rj.level, 4); // holds through n_max
        assert!(!r.measured_rj.exact);
    }

    #[test]
    fn classify_negative_two() {
        let r = classify_geometric(-2, 3, 16).unwrap();
        assert!(r.agrees, "{r:?}");
        assert_eq!(r.measured_i.level, 1);
        assert_eq!(r.measured_cj.level, 2);
        assert_eq!(r.measured_rj.level, 2);
    }

    #[test]
    fn dioph_solutions_for_two() {
        let got = diophantine_geometric(2, 6, 2).unwrap();
        let expect = expected_geometric_solutions(2, 6).unwrap();
        assert_eq!(got, expect);
        // families: 2·2^k − 2^{k+1} and 2·2^k + 2^{k+1} − 2^{k+2}
        assert!(got.contains(&DiophSolution { zeta: vec![2, -1], exponents: vec![0, 1] }));
        assert!(got.contains(&DiophSolution { zeta: vec![2, 1, -1], exponents: vec![0, 1, 2] }));
    }

    #[test]
    fn dioph_solutions_for_three_and_negatives() {
        for j in [3i64, -2, -3] {
            let got = diophantine_geometric(j, 5, j.unsigned_abs() as u32).unwrap();
            let expect = expected_geometric_solutions(j, 5).unwrap();
            assert_eq!(got, expect, "j={j}");
        }
    }

    #[test]
    fn dioph_solutions_shift_invariance() {
        let got = diophantine_geometric(3, 6, 3).unwrap();
        for sol in &got {
            if sol.exponents.last().copied().unwrap_or(0) < 6 {
                let shifted = DiophSolution {
                    zeta: sol.zeta.clone(),
                    exponents: sol.exponents.iter().map(|k| k + 1).collect(),
                };
                assert!(got.contains(&shifted), "{sol:?} not shift-closed");
            }
        }
    }

    #[test]
    fn identities_all_verify() {
        let reports = identity_suite(50);
        assert!(reports.iter().all(|r| r.verified), "{:?}",
            reports.iter().filter(|r| !r.verified).collect::<Vec<_>>());
        // fixed + 3 families * 50
        assert_eq!(reports.len(), 11 + 150);
    }

    #[test]
    fn fibonacci_identity_at_one_is_ten() {
        let reports = identity_suite(1);
        let fib = reports
            .iter()
            .find(|r| r.name == "fibonacci_squares" && r.n == Some(1))
            .unwrap();
        assert_eq!(fib.lhs, "10");
        assert_eq!(fib.rhs, "10");
    }

    #[test]
    fn density_of_arithmetic_progression() {
        let ap: Vec<i64> = (0..200).map(|k| 3 * k).collect();
        let w = Window::from_i64(ap).unwrap();
        let d = density_estimate(&w, 300).unwrap();
        assert_eq!(d, BigRational::new(100.into(), 300.into()));
    }

    #[test]
    fn density_of_squares() {
        let sq: Vec<i64> = (1..=100).map(|k| k * k).collect();
        let w = Window::from_i64(sq).unwrap();
        let d = density_estimate(&w, 100).unwrap();
        assert_eq!(d, BigRational::new(10.into(), 100.into()));
        // sliding-max density is nonincreasing in h
        let mut prev: Option<BigRational> = None;
        for h in [25u64, 50, 100, 400, 1600] {
            let d = density_estimate(&w, h).unwrap();
            if let Some(p) = &prev {
                assert!(d <= *p, "density must not increase with h");
            }
            prev = Some(d);
        }
    }

    #[test]
    fn density_of_powers_of_two() {
        let w = generate(&SequenceSpec::geometric(2), 20).unwrap();
        let d = density_estimate(&w, 64).unwrap();
        assert_eq!(d, BigRational::new(7.into(), 64.into()));
    }

    #[test]
    fn growth_check_powers() {
        let w5 = generate(&SequenceSpec::geometric(5), 13).unwrap();
        let r = growth_admissible(&w5, 4).unwrap();
        assert!(r.admissible);
        assert!(r.independent.holds_on_window());

        let w3 = generate(&SequenceSpec::geometric(3), 13).unwrap();
        let r = growth_admissible(&w3, 2).unwrap();
        assert!(r.admissible);
        assert!(r.independent.holds_on_window());

        let w2 = generate(&SequenceSpec::geometric(2), 13).unwrap();
        let r = growth_admissible(&w2, 4).unwrap();
        assert!(!r.admissible);
        assert!(r.independent.fails_with_witness());
        let wit = r.independent.witness.unwrap();
        assert_eq!(
            crate::relations::Relation::new(wit.zeta.clone()).unwrap(),
            crate::relations::Relation::new(vec![3, -2, -1]).unwrap()
        );
    }

    #[test]
    fn classify_agrees_across_full_j_range() {
        for j in [-5i64, -4, -3, -2, 2, 3, 4, 5] {
            let n_max = j.unsigned_abs() as u32 + 2;
            let r = classify_geometric(j, n_max, 12).unwrap();
            assert!(r.agrees, "j={j}: {r:?}");
        }
    }

    #[test]
    fn full_table_rows_for_small_j() {
        for j in [2i64, 3, -2, -3] {
            for variant in TableVariant::all() {
                let n_max = (j.unsigned_abs() as u32 + 1).min(4);
                let r = classify_table_variant(variant, j, n_max, 14).unwrap();
                assert!(r.agrees, "{variant:?} j={j}: {r:?}");
            }
        }
    }

    #[test]
    fn expected_helpers_agree() {
        for j in [-5i64, -4, -3, -2, 2, 3, 4, 5] {
            assert_eq!(
                geometric_expected(j).unwrap(),
                table_expected(TableVariant::Plain, j).unwrap()
            );
        }
    }

    #[test]
    fn transcendence_experiment_bound() {
        // For σ algebraic with minimal polynomial ζ, the pairing of ζ
        // against [σ^k] stays within Σ|ζ_i| at every tail.
        use crate::relations::{pairing_window, Pattern};
        // σ = 2: P = -2 + x, ζ = (2, -1) after sign normalization
        let w = generate(&SequenceSpec::geometric(2), 20).unwrap();
        let zeta = Pattern::new(vec![2, -1]).unwrap();
        for tail in [0usize, 4, 10] {
            let v = pairing_window(&zeta, &w, tail).unwrap().unwrap();
            assert!(v <= BigInt::from(3));
        }
        // σ = 3/2: 2x - 3 = 0, ζ = (-3, 2)
        let w = generate(&SequenceSpec::integer_part_power("1.5"), 25).unwrap();
        let zeta = Pattern::new(vec![-3, 2]).unwrap();
        for tail in [0usize, 5, 12] {
            let v = pairing_window(&zeta, &w, tail).unwrap().unwrap();
            assert!(v <= BigInt::from(5), "{v} at tail {tail}");
        }
    }
}
