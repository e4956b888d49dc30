//! Text forms for measures, label lists and finite sets.
//!
//! Measures: `uniform-gens`, `delta:L`, `uniform:a,b,c`, `decomp:L=k,...`.
//! Sets: `interval:a..b` (integer-labeled rings), `set:a,b,c`, `ball:r`.
//! Functions: any set form (its indicator) or `values:a=x,b=y`.

use crate::catalog::measure_from_decomposition;
use crate::element::RealElement;
use crate::error::{FusionError, Result};
use crate::label::{split_top_level, Label};
use crate::measure::ProbMeasure;
use crate::ring::FusionRing;
use crate::spectral::build_window;

/// Largest ball `ball:r` may produce.
pub const BALL_CAP: usize = 1_000_000;

/// Comma-separated labels; commas inside parentheses do not split.
pub fn parse_label_list(ring: &FusionRing, text: &str) -> Result<Vec<Label>> {
    let items: Vec<&str> = split_top_level(text).into_iter().map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.is_empty() {
        return Err(FusionError::EmptySet);
    }
    items.into_iter().map(|s| ring.parse_label(s)).collect()
}

/// The declared generators together with their conjugates, in label order.
pub fn symmetric_generators(ring: &FusionRing) -> Result<Vec<Label>> {
    let mut out = std::collections::BTreeSet::new();
    for g in ring.generators() {
        out.insert(ring.conjugate(&g)?);
        out.insert(g);
    }
    Ok(out.into_iter().collect())
}

fn bad_spec(kind: &str, text: &str) -> FusionError {
    FusionError::InvalidParam(format!("unrecognized {kind} spec `{text}`"))
}

pub fn parse_measure(ring: &FusionRing, text: &str) -> Result<ProbMeasure> {
    let text = text.trim();
    if text == "uniform-gens" {
        let gens = symmetric_generators(ring)?;
        if gens.is_empty() {
            return ProbMeasure::dirac(ring, ring.unit());
        }
        return ProbMeasure::uniform(ring, &gens);
    }
    let (kind, rest) = text.split_once(':').ok_or_else(|| bad_spec("measure", text))?;
    match kind {
        "delta" => ProbMeasure::dirac(ring, ring.parse_label(rest.trim())?),
        "uniform" => ProbMeasure::uniform(ring, &parse_label_list(ring, rest)?),
        "decomp" => {
            let mut terms = Vec::new();
            for item in split_top_level(rest) {
                let (label, mult) = item.rsplit_once('=').ok_or_else(|| bad_spec("measure", text))?;
                let mult: u64 = mult.trim().parse().map_err(|_| bad_spec("measure", text))?;
                terms.push((ring.parse_label(label.trim())?, mult));
            }
            measure_from_decomposition(ring, &terms)
        }
        _ => Err(bad_spec("measure", text)),
    }
}

/// Finite set from its text form; `ball:r` is taken in the word metric of
/// `generators`.
pub fn parse_set(ring: &FusionRing, text: &str, generators: &[Label]) -> Result<Vec<Label>> {
    let text = text.trim();
    let (kind, rest) = text.split_once(':').ok_or_else(|| bad_spec("set", text))?;
    match kind {
        "interval" => {
            if !ring.integer_labels() {
                return Err(FusionError::InvalidParam("interval sets need integer labels".into()));
            }
            let (a, b) = rest.split_once("..").ok_or_else(|| bad_spec("set", text))?;
            let a: i64 = a.trim().parse().map_err(|_| bad_spec("set", text))?;
            let b: i64 = b.trim().parse().map_err(|_| bad_spec("set", text))?;
            if a > b {
                return Err(FusionError::EmptySet);
            }
            (a..=b).map(|k| {
                let l = Label::Int(k);
                ring.check(&l).map(|_| l)
            }).collect()
        }
        "set" => parse_label_list(ring, rest),
        "ball" => {
            let r: usize = rest.trim().parse().map_err(|_| bad_spec("set", text))?;
            Ok(build_window(ring, generators, r, BALL_CAP)?.labels().to_vec())
        }
        _ => Err(bad_spec("set", text)),
    }
}

/// Finitely supported real function; set forms give indicators.
pub fn parse_function(ring: &FusionRing, text: &str, generators: &[Label]) -> Result<RealElement> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("values:") {
        let mut values = Vec::new();
        for item in split_top_level(rest) {
            let (label, v) = item.rsplit_once('=').ok_or_else(|| bad_spec("function", text))?;
            let v: f64 = v.trim().parse().map_err(|_| bad_spec("function", text))?;
            values.push((ring.parse_label(label.trim())?, v));
        }
        return RealElement::from_map(ring, values).validated();
    }
    let set = parse_set(ring, text, generators)?;
    Ok(RealElement::indicator(ring, &set))
}
