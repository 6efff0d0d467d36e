//! Text formats shared by reports, CSV dumps and the command line.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Formats a real with 17 significant digits, in the manner of C's `%.17g`.
pub fn sig17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.16e}", x);
    let (digits, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        format!("{}e{}", trim_zeros(digits), exp)
    } else {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Parses a complex literal of the form `<re>[+|-]<im>i`, where either part
/// may be omitted: `-2`, `3i`, `-i`, `1.5-2e-3i`, `-2+0i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("invalid complex literal {s:?}"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return match s.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(Complex64::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    // Split at the last sign that is not the leading character and not part
    // of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    let re = if re.is_empty() {
        0.0
    } else {
        re.parse::<f64>().map_err(|_| bad())?
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// Inverse of [`parse_complex`] with 17 significant digits per part.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{}{}i", sig17(z.re), sign, sig17(z.im.abs()))
}
