//! Parsing of CLI inputs: integer lists, polynomials, windows, arcs.

use lacunae::norms::TrigPolynomial;
use lacunae::relations::Window;
use lacunae::sequences::{generate, Modifier, SequenceKind, SequenceSpec};
use lacunae::sidon::Arc;

use crate::run::CliError;
use crate::WindowArgs;

pub fn parse_i64_list(s: &str, what: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| CliError::Input(format!("cannot parse {what} entry {t:?}")))
        })
        .collect()
}

/// A polynomial given either as a bare frequency list '[0,1,5,6]'
/// (all-ones coefficients) or as the full JSON shape {"terms":[...]}.
pub fn parse_poly(s: &str) -> Result<TrigPolynomial, CliError> {
    let trimmed = s.trim();
    if let Ok(freqs) = serde_json::from_str::<Vec<i64>>(trimmed) {
        return Ok(TrigPolynomial::ones(&freqs));
    }
    if let Ok(poly) = serde_json::from_str::<TrigPolynomial>(trimmed) {
        return Ok(poly);
    }
    // bare comma list without brackets
    if let Ok(freqs) = parse_i64_list(trimmed, "frequency") {
        if !freqs.is_empty() {
            return Ok(TrigPolynomial::ones(&freqs));
        }
    }
    Err(CliError::Input(format!(
        "cannot parse polynomial from {s:?}: expected '[0,1,5,6]' or {{\"terms\":[...]}}"
    )))
}

/// Assembles a sequence spec from the window flags.
pub fn spec_from_args(args: &WindowArgs) -> Result<SequenceSpec, CliError> {
    let sources = [
        args.elements.is_some(),
        args.geometric.is_some(),
        args.power.is_some(),
        args.poly_seq.is_some(),
    ];
    if sources.iter().filter(|&&b| b).count() != 1 {
        return Err(CliError::Input(
            "exactly one of --elements, --geometric, --power, --poly-seq is required".into(),
        ));
    }
    let kind = if let Some(e) = &args.elements {
        SequenceKind::Explicit { elements: parse_i64_list(e, "element")? }
    } else if let Some(j) = args.geometric {
        SequenceKind::Geometric { j }
    } else if let Some(sigma) = &args.power {
        SequenceKind::IntegerPartPower { sigma: sigma.clone() }
    } else {
        SequenceKind::Polynomial {
            coeffs: parse_i64_list(args.poly_seq.as_ref().unwrap(), "coefficient")?,
        }
    };
    let mut spec = SequenceSpec { kind, modifiers: Vec::new() };
    if let Some(s) = args.translate {
        spec = spec.with_modifier(Modifier::Translate { s });
    }
    if let Some(c) = args.scale {
        spec = spec.with_modifier(Modifier::Scale { c });
    }
    if args.symmetrize {
        spec = spec.with_modifier(Modifier::Symmetrize);
    }
    if let Some(h) = args.adjoin {
        spec = spec.with_modifier(Modifier::Adjoin { h });
    }
    Ok(spec)
}

pub fn window_from_args(args: &WindowArgs, count: Option<usize>) -> Result<Window, CliError> {
    let spec = spec_from_args(args)?;
    let count = count.unwrap_or(match &spec.kind {
        SequenceKind::Explicit { elements } => elements.len(),
        _ => args.len,
    });
    generate(&spec, count).map_err(CliError::from)
}

pub fn parse_arcs(s: &str) -> Result<Vec<Arc>, CliError> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (start, len) = t
                .split_once(':')
                .ok_or_else(|| CliError::Input(format!("arc {t:?} must be start:length")))?;
            let start: f64 = start
                .parse()
                .map_err(|_| CliError::Input(format!("bad arc start {start:?}")))?;
            let len: f64 = len
                .parse()
                .map_err(|_| CliError::Input(format!("bad arc length {len:?}")))?;
            Arc::new(start, len).map_err(CliError::from)
        })
        .collect()
}
