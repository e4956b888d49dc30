//! Human-readable and CSV rendering.

use std::path::Path;

use fusionkit_core::foelner::CurvePoint;
use fusionkit_core::spectral::RadiusEstimate;
use fusionkit_core::{Label, Quantity, Weight};
use num_bigint::BigInt;

pub const SIG_DIGITS: usize = 12;

/// `%.12g`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Exact integers up to twelve digits verbatim, longer ones rounded.
pub fn integer(v: &BigInt) -> String {
    let digits = v.magnitude().to_string();
    if digits.len() <= SIG_DIGITS {
        return v.to_string();
    }
    // round half up on the decimal string
    let head: BigInt = digits[..SIG_DIGITS].parse().expect("digits");
    let round_up = digits.as_bytes()[SIG_DIGITS] >= b'5';
    let head = if round_up { head + 1 } else { head };
    let mut head = head.to_string();
    let mut exp = digits.len() - 1;
    if head.len() > SIG_DIGITS {
        head.truncate(SIG_DIGITS);
        exp += 1;
    }
    let sign = if v.sign() == num_bigint::Sign::Minus { "-" } else { "" };
    let mantissa = trim_zeros(format!("{}.{}", &head[..1], &head[1..]));
    format!("{sign}{mantissa}e+{exp:02}")
}

pub fn weight(w: &Weight) -> String {
    match w {
        Weight::Exact(v) => integer(&BigInt::from(v.clone())),
        Weight::Approx(x) => num(*x),
    }
}

pub fn quantity(q: &Quantity) -> String {
    match q {
        Quantity::Exact(r) if r.is_integer() => integer(r.numer()),
        other => num(other.to_f64()),
    }
}

/// Full-precision value for CSV cells.
pub fn weight_csv(w: &Weight) -> String {
    match w {
        Weight::Exact(v) => v.to_string(),
        Weight::Approx(x) => format!("{x}"),
    }
}

/// `interval:a..b` for runs of consecutive integers, `set:...` otherwise.
pub fn label_set(labels: &[Label]) -> String {
    let ints: Option<Vec<i64>> = labels.iter().map(Label::as_int).collect();
    if let Some(mut ints) = ints {
        ints.sort_unstable();
        if ints.len() > 1 && ints.windows(2).all(|p| p[1] == p[0] + 1) {
            return format!("interval:{}..{}", ints[0], ints[ints.len() - 1]);
        }
    }
    let items: Vec<String> = labels.iter().map(Label::to_string).collect();
    format!("set:{}", items.join(","))
}

pub fn write_curve_csv(path: &Path, curve: &[CurvePoint]) -> csv::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["step", "set_size", "weight_F", "weight_boundary", "ratio"])?;
    for p in curve {
        w.write_record([
            p.step.to_string(),
            p.set_size.to_string(),
            weight_csv(&p.weight_f),
            weight_csv(&p.weight_boundary),
            format!("{}", p.ratio),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_spectrum_csv(path: &Path, estimates: &[RadiusEstimate]) -> csv::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["radius", "window_size", "lambda_max"])?;
    for e in estimates {
        w.write_record([e.radius.to_string(), e.window_size.to_string(), format!("{}", e.lambda_max)])?;
    }
    w.flush()?;
    Ok(())
}
