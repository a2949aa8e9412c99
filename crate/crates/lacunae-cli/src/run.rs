//! Command dispatch: every subcommand produces one JSON value.

use num_bigint::BigInt;
use serde_json::{json, Value};

use lacunae::norms::{
    lp_norm_even_exact, lp_norm_quadrature, oscillation, parse_decimal_rational, phi_eval_complex,
    phi_expansion, sup_norm, unconditionality_constant, NormSpace, SignMode,
};
use lacunae::opt::OptBudget;
use lacunae::relations::{
    check_i, check_j, check_j_sym, enumerate_multiindices, enumerate_relations, is_n_independent,
    pairing_window, Pattern,
};
use lacunae::sequences::{
    classify_table_variant, density_estimate, diophantine_geometric, growth_admissible,
    identity_suite, TableVariant,
};
use lacunae::sidon::{
    hadamard_bound, joint_distribution_deviation, lacunary_inequality_check,
    sidon_constant_estimate,
};

use crate::input::*;
use crate::{Cli, Command, NormCmd, RelationsCmd, SeqCmd, SidonCmd, WindowArgs};

pub enum CliError {
    /// Bad input / precondition / domain: exit 2.
    Input(String),
    /// Anything else: exit 1.
    Internal(String),
}

impl From<lacunae::Error> for CliError {
    fn from(e: lacunae::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

fn sign_mode(s: &str) -> SignMode {
    if s == "real" {
        SignMode::Real
    } else {
        SignMode::Complex
    }
}

fn default_resolution(cli: &Cli) -> Option<usize> {
    cli.resolution.or_else(|| {
        std::env::var("LACUNAE_PRECISION")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn space_for(p: Option<f64>, sup: bool, resolution: Option<usize>) -> Result<NormSpace, CliError> {
    let mut space = if sup {
        NormSpace::sup()
    } else {
        let p = p.ok_or_else(|| CliError::Input("one of --p or --sup is required".into()))?;
        NormSpace::lp(p)?
    };
    if let Some(r) = resolution {
        space = space.with_resolution(r);
    }
    Ok(space)
}

fn prepared_window(
    args: &WindowArgs,
    break_set: &Option<String>,
    tail_start: Option<usize>,
) -> Result<lacunae::relations::Window, CliError> {
    let w = window_from_args(args, None)?;
    let breaks: Vec<BigInt> = match break_set {
        Some(s) => parse_i64_list(s, "break element")?
            .into_iter()
            .map(BigInt::from)
            .collect(),
        None => {
            let mut v = w.elements().to_vec();
            v.sort_by(|a, b| {
                num_bigint::BigInt::magnitude(a)
                    .cmp(num_bigint::BigInt::magnitude(b))
                    .then_with(|| a.cmp(b))
            });
            v.into_iter().take(2).collect()
        }
    };
    let tail = tail_start.unwrap_or(breaks.len() + 1);
    Ok(w.with_break_set(breaks)?.with_tail_start(tail)?)
}

pub fn dispatch(cli: &Cli) -> Result<Value, CliError> {
    let resolution = default_resolution(cli);
    match &cli.command {
        Command::Relations { cmd } => relations_cmd(cli, cmd),
        Command::Norm { cmd } => norm_cmd(cmd, resolution),
        Command::Expand { q, p, truncation, z } => {
            let q = parse_i64_list(q, "frequency")?;
            let p = parse_decimal_rational(p)?;
            let classes = phi_expansion(&q, &p, *truncation)?;
            let mut out = json!({ "classes": to_value(&classes)? });
            if let Some(zs) = z {
                let zvals = parse_complex_list(zs)?;
                if zvals.len() != q.len() {
                    return Err(CliError::Input("--z must match the length of --q".into()));
                }
                let ones = vec![num_complex::Complex64::new(1.0, 0.0); q.len()];
                out["value_at_eps_one"] = json!(phi_eval_complex(&classes, &ones, &zvals));
            }
            Ok(out)
        }
        Command::Oscillation { f, g, p, sup, sign_mode: sm, sign_samples } => {
            let f = parse_poly(f)?;
            let g = parse_poly(g)?;
            let space = space_for(*p, *sup, resolution)?;
            let osc = oscillation(&f, &g, &space, sign_mode(sm), *sign_samples)?;
            Ok(json!({ "space": to_value(&space)?, "oscillation": osc }))
        }
        Command::Uncond { freqs, p, sup, sign_mode: sm, starts, iters } => {
            let freqs = parse_i64_list(freqs, "frequency")?;
            let space = space_for(*p, *sup, resolution)?;
            let budget = OptBudget { starts: *starts, iters: *iters, seed: cli.seed };
            let est = unconditionality_constant(&freqs, &space, sign_mode(sm), &budget)?;
            Ok(json!({
                "space": to_value(&space)?,
                "value": est.value,
                "certificate": to_value(&est)?,
            }))
        }
        Command::Sidon { cmd } => sidon_cmd(cli, cmd, resolution),
        Command::Seq { cmd } => seq_cmd(cli, cmd),
    }
}

fn parse_complex_list(s: &str) -> Result<Vec<num_complex::Complex64>, CliError> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map(|re| num_complex::Complex64::new(re, 0.0))
                .map_err(|_| CliError::Input(format!("cannot parse complex value {t:?}")))
        })
        .collect()
}

fn relations_cmd(cli: &Cli, cmd: &RelationsCmd) -> Result<Value, CliError> {
    match cmd {
        RelationsCmd::Enumerate { m, n, multiindices } => {
            if *multiindices {
                let list = enumerate_multiindices(*m, *n)?;
                let rows: Vec<Value> = list
                    .iter()
                    .map(|mi| json!({ "entries": mi.entries(), "weight": mi.weight() }))
                    .collect();
                Ok(json!(rows))
            } else {
                let list = enumerate_relations(*m, *n)?;
                let rows: Vec<Value> = list
                    .iter()
                    .map(|r| json!({ "zeta": r.coeffs(), "weight": r.weight() }))
                    .collect();
                Ok(json!(rows))
            }
        }
        RelationsCmd::Independent { window, n } => {
            let w = window_from_args(window, None)?;
            to_value(&is_n_independent(&w, *n)?)
        }
        RelationsCmd::Pairing { window, zeta, tail_start } => {
            let w = window_from_args(window, None)?;
            let zeta = Pattern::new(parse_i64_list(zeta, "zeta")?)?;
            match pairing_window(&zeta, &w, *tail_start)? {
                Some(v) => Ok(json!({ "value": v.to_string(), "no_selection": false })),
                None => Ok(json!({ "value": Value::Null, "no_selection": true })),
            }
        }
        RelationsCmd::CheckI { window, n, budget } => {
            let w = window_from_args(window, None)?;
            to_value(&check_i(&w, *n, *budget)?)
        }
        RelationsCmd::CheckJ { window, break_set, tail_start, n, sign_mode: sm } => {
            let w = prepared_window(window, break_set, *tail_start)?;
            to_value(&check_j(&w, *n, sign_mode(sm))?)
        }
        RelationsCmd::CheckJsym { window, break_set, tail_start, n } => {
            let w = prepared_window(window, break_set, *tail_start)?;
            to_value(&check_j_sym(&w, *n)?)
        }
    }
    .map(|v| attach_seedless(cli, v))
}

fn attach_seedless(_cli: &Cli, v: Value) -> Value {
    v
}

fn norm_cmd(cmd: &NormCmd, resolution: Option<usize>) -> Result<Value, CliError> {
    match cmd {
        NormCmd::Exact { poly, p } => {
            let f = parse_poly(poly)?;
            let v = lp_norm_even_exact(&f, *p)?;
            Ok(json!({
                "space": { "kind": { "lp": { "p": *p as f64 } } },
                "norm_p^p": v.to_string(),
                "exact": v.to_string(),
                "value": num_traits::ToPrimitive::to_f64(&v),
            }))
        }
        NormCmd::Quad { poly, p } => {
            let f = parse_poly(poly)?;
            let res =
                resolution.unwrap_or_else(|| 8 * (f.max_abs_frequency() as usize + 1).max(1024));
            let v = lp_norm_quadrature(&f, *p, res)?;
            Ok(json!({
                "space": { "kind": { "lp": { "p": p } }, "resolution": res },
                "value": v,
            }))
        }
        NormCmd::Sup { poly } => {
            let f = parse_poly(poly)?;
            let res = resolution
                .unwrap_or_else(|| lacunae::norms::certified_resolution(f.max_abs_frequency()));
            let s = sup_norm(&f, res)?;
            Ok(json!({
                "space": { "kind": "sup", "resolution": res },
                "value": s.value,
                "upper": s.upper,
                "argmax": s.argmax,
            }))
        }
    }
}

fn sidon_cmd(cli: &Cli, cmd: &SidonCmd, resolution: Option<usize>) -> Result<Value, CliError> {
    match cmd {
        SidonCmd::Estimate { set, starts, iters } => {
            let freqs = parse_i64_list(set, "frequency")?;
            let budget = OptBudget { starts: *starts, iters: *iters, seed: cli.seed };
            let res = resolution.unwrap_or(1 << 14);
            let est = sidon_constant_estimate(&freqs, &budget, res)?;
            let mut v = to_value(&est)?;
            v["set"] = json!(freqs);
            Ok(v)
        }
        SidonCmd::HadamardBound { q } => Ok(json!({ "q": q, "bound": hadamard_bound(*q)? })),
        SidonCmd::LacunaryCheck { poly, k, q } => {
            let f = parse_poly(poly)?;
            let res = resolution.unwrap_or(0);
            to_value(&lacunary_inequality_check(&f, *k, *q, res)?)
        }
        SidonCmd::Deviation { freqs, arcs } => {
            let freqs = parse_i64_list(freqs, "frequency")?;
            let arcs = parse_arcs(arcs)?;
            let res = resolution.unwrap_or(1 << 20);
            let d = joint_distribution_deviation(&freqs, &arcs, res)?;
            Ok(json!({
                "freqs": freqs,
                "deviation": d,
                "resolution": res,
                "uncertainty": 1.0 / res as f64,
            }))
        }
        SidonCmd::PaperConstants { starts } => {
            let budget = OptBudget { starts: *starts, iters: 400, seed: cli.seed };
            let res = resolution.unwrap_or(1 << 14);
            let mut rows = Vec::new();
            for q in [2i64, 3, 4, 5] {
                let est = sidon_constant_estimate(&[0, 1, q], &budget, res)?;
                let target = 1.0 / (std::f64::consts::PI / (2.0 * q as f64)).cos();
                rows.push(json!({
                    "set": format!("{{0,1,{q}}}"),
                    "estimate": est.value,
                    "bound": target,
                    "margin": est.value - target,
                    "kind": "lower",
                }));
            }
            for (window, q) in
                [(vec![1i64, 4, 16, 64, 256], 4.0), (vec![1, 5, 25, 125, 625], 5.0)]
            {
                let est = sidon_constant_estimate(&window, &budget, 1 << 15)?;
                let bound = hadamard_bound(q)?;
                rows.push(json!({
                    "set": format!("{window:?}"),
                    "estimate": est.value,
                    "bound": bound,
                    "margin": bound - est.value,
                    "kind": "upper",
                }));
            }
            Ok(json!(rows))
        }
    }
}

fn seq_cmd(cli: &Cli, cmd: &SeqCmd) -> Result<Value, CliError> {
    match cmd {
        SeqCmd::Generate { window, count } => {
            let spec = spec_from_args(window)?;
            let w = window_from_args(window, *count)?;
            Ok(json!({
                "name": spec.describe(),
                "elements": w.elements().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }))
        }
        SeqCmd::Classify { j, nmax, len, table } => {
            let variants: Vec<TableVariant> = if *table {
                TableVariant::all().to_vec()
            } else {
                vec![TableVariant::Plain]
            };
            let mut rows = Vec::new();
            for v in variants {
                let r = classify_table_variant(v, *j, *nmax, *len)?;
                rows.push(json!({
                    "spec": v.describe(*j),
                    "i": level_cell(&r.measured_i, r.n_max),
                    "complex_j": level_cell(&r.measured_cj, r.n_max),
                    "real_j": level_cell(&r.measured_rj, r.n_max),
                    "expected_i": r.expected.i_level.to_string(),
                    "expected_complex_j": r.expected.cj_level.to_string(),
                    "expected_real_j": r.expected.rj_level.to_string(),
                    "agrees": r.agrees,
                }));
            }
            if *table { Ok(json!(rows)) } else { Ok(rows.pop().unwrap()) }
        }
        SeqCmd::Dioph { j, bound, n } => {
            let n = n.unwrap_or(j.unsigned_abs() as u32);
            let sols = diophantine_geometric(*j, *bound, n)?;
            let rows: Vec<Value> = sols
                .iter()
                .map(|s| json!({ "zeta": s.zeta, "exponents": s.exponents }))
                .collect();
            Ok(json!(rows))
        }
        SeqCmd::Identities { nmax } => {
            let reports = identity_suite(*nmax);
            to_value(&reports)
        }
        SeqCmd::Density { window, h } => {
            let w = window_from_args(window, None)?;
            let d = density_estimate(&w, *h)?;
            Ok(json!({
                "h": h,
                "density": d.to_string(),
                "value": num_traits::ToPrimitive::to_f64(&d),
            }))
        }
        SeqCmd::Growth { window, p } => {
            let w = window_from_args(window, None)?;
            to_value(&growth_admissible(&w, *p)?)
        }
    }
    .map(|v| attach_seedless(cli, v))
}

fn level_cell(m: &lacunae::sequences::MeasuredLevel, n_max: u32) -> String {
    if m.exact {
        format!("{}", m.level)
    } else if m.level == n_max {
        format!(">={}", m.level)
    } else {
        format!("{}?", m.level)
    }
}
