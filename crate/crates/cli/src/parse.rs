//! Parsers for the CLI's little literal languages: complex numbers, comma
//! separated coefficient lists, `m` ranges, and sampling windows.

use std::ops::RangeInclusive;

use rootlocus_core::{Complex64, Window};

fn parse_float(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("invalid float `{s}`"))?;
    if !v.is_finite() {
        return Err(format!("non-finite float `{s}`"));
    }
    Ok(v)
}

/// Parses one complex literal: `re`, `re+imi`, `re-imi`, or a bare `imi`
/// (examples: `1.5`, `2+0.5i`, `-3e-2-1i`, `2i`, `-i`). Exponent signs do
/// not split the literal.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty complex literal".to_string());
    }
    let Some(body) = t.strip_suffix('i') else {
        return parse_float(t).map(|re| Complex64::new(re, 0.0));
    };
    // Split `re±im` at the last sign that is neither leading nor an exponent
    // sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let (re_str, im_str) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let re = parse_float(re_str)?;
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => parse_float(s)?,
    };
    Ok(Complex64::new(re, im))
}

/// Comma separated complex literals, ascending degree.
pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    text.split(',')
        .map(|s| parse_complex(s).map_err(|e| format!("in coefficient list `{text}`: {e}")))
        .collect()
}

fn parse_m(s: &str) -> Result<usize, String> {
    let m: usize = s
        .trim()
        .parse()
        .map_err(|_| format!("invalid degree index `{s}`"))?;
    if m == 0 {
        return Err("m must be at least 1".to_string());
    }
    Ok(m)
}

/// `M` for a single degree or `LO..HI` for an inclusive range.
pub fn parse_m_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let t = text.trim();
    let (lo, hi) = match t.split_once("..") {
        Some((lo, hi)) => (parse_m(lo)?, parse_m(hi)?),
        None => {
            let m = parse_m(t)?;
            (m, m)
        }
    };
    if lo > hi {
        return Err(format!("empty m range `{t}`"));
    }
    Ok(lo..=hi)
}

/// `RE_MIN,RE_MAX,IM_MIN,IM_MAX`.
pub fn parse_window(text: &str) -> Result<Window, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(format!(
            "window must be `re_min,re_max,im_min,im_max`, got `{text}`"
        ));
    }
    let v: Vec<f64> = parts
        .iter()
        .map(|s| parse_float(s))
        .collect::<Result<_, _>>()?;
    if v[0] >= v[1] || v[2] >= v[3] {
        return Err(format!("degenerate window `{text}`"));
    }
    Ok(Window {
        re_min: v[0],
        re_max: v[1],
        im_min: v[2],
        im_max: v[3],
    })
}
