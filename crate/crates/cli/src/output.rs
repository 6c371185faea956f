//! Text encodings shared by the subcommands.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use serde_json::{Number, Value};

/// Canonical `p/q` (or `p` when `q = 1`); `num-rational` keeps ratios reduced
/// with a positive denominator.
pub fn rational(q: &BigRational) -> String {
    q.to_string()
}

/// Scientific notation with 17 significant digits, enough to round-trip any f64.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn float_json(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Number::from_str(&float(x)).map_or(Value::Null, Value::Number)
}

/// Rewrites every float in `v` with [`float_json`], leaving integers alone.
pub fn normalize_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => n.as_f64().map_or(Value::Null, float_json),
        Value::Array(xs) => Value::Array(xs.into_iter().map(normalize_floats).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, normalize_floats(v))).collect()),
        other => other,
    }
}

pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

/// Line plot of `values[d]` against `d` on a logarithmic y-axis. Nonpositive
/// values break the line. `marker` draws a vertical rule at that abscissa.
pub fn log_plot_svg(title: &str, values: &[f64], marker: Option<usize>) -> String {
    const W: f64 = 720.0;
    const H: f64 = 440.0;
    const LEFT: f64 = 70.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 40.0;
    const BOTTOM: f64 = 50.0;

    let positive: Vec<f64> = values.iter().copied().filter(|v| *v > 0.0 && v.is_finite()).collect();
    let (lo, hi) = if positive.is_empty() {
        (-1.0, 0.0)
    } else {
        let lo = positive.iter().copied().fold(f64::INFINITY, f64::min).log10().floor();
        let hi = positive.iter().copied().fold(f64::NEG_INFINITY, f64::max).log10().ceil();
        if hi > lo { (lo, hi) } else { (lo - 1.0, hi) }
    };
    let xmax = values.len().saturating_sub(1).max(1) as f64;
    let px = |d: f64| LEFT + (W - LEFT - RIGHT) * d / xmax;
    let py = |e: f64| TOP + (H - TOP - BOTTOM) * (hi - e.log10()) / (hi - lo);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{title}</text>"#, W / 2.0);
    let (x0, x1, y0, y1) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
    let _ = writeln!(s, r#"<rect x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="black"/>"#, x1 - x0, y1 - y0);

    let decades = (hi - lo) as i64;
    let step = (decades / 10).max(1);
    let mut e = lo as i64;
    while e <= hi as i64 {
        let y = py(10f64.powi(e as i32));
        let _ = writeln!(s, r##"<line x1="{x0}" y1="{y:.2}" x2="{x1}" y2="{y:.2}" stroke="#ddd"/>"##);
        let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">1e{e}</text>"#, x0 - 6.0, y + 4.0);
        e += step;
    }
    let xticks = 8usize;
    for i in 0..=xticks {
        let d = (xmax * i as f64 / xticks as f64).round();
        let x = px(d);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{y1}" x2="{x:.2}" y2="{}" stroke="black"/>"#, y1 + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{}" text-anchor="middle">{d}</text>"#, y1 + 19.0);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">d</text>"#, (x0 + x1) / 2.0, H - 10.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">E(k,d)</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    if let Some(m) = marker {
        let x = px(m as f64);
        let _ = writeln!(s, r##"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{y1}" stroke="#c33" stroke-dasharray="4 3"/>"##);
    }

    let mut segment: Vec<String> = Vec::new();
    let flush = |seg: &mut Vec<String>, s: &mut String| {
        if seg.len() > 1 {
            let _ = writeln!(s, r##"<polyline fill="none" stroke="#1f5fa8" stroke-width="1.2" points="{}"/>"##, seg.join(" "));
        } else if let Some(p) = seg.first() {
            let (x, y) = p.split_once(',').expect("point");
            let _ = writeln!(s, r##"<circle cx="{x}" cy="{y}" r="2" fill="#1f5fa8"/>"##);
        }
        seg.clear();
    };
    for (d, &v) in values.iter().enumerate() {
        if v > 0.0 && v.is_finite() {
            segment.push(format!("{:.2},{:.2}", px(d as f64), py(v)));
        } else {
            flush(&mut segment, &mut s);
        }
    }
    flush(&mut segment, &mut s);
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 2f64.sqrt() / 3.0, 1e-300, -7.25] {
            let s = float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
            assert_eq!(mantissa.len(), 17);
        }
    }

    #[test]
    fn rationals_are_canonical() {
        let q = BigRational::new((-4).into(), 12.into());
        assert_eq!(rational(&q), "-1/3");
        let q = BigRational::new(2.into(), (-6).into());
        assert_eq!(rational(&q), "-1/3");
        assert_eq!(rational(&BigRational::from_integer(1.into())), "1");
    }

    #[test]
    fn json_floats_use_fixed_precision() {
        let v = normalize_floats(serde_json::json!({"a": 0.5, "b": [1, 2.0], "c": null}));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"a":5.0000000000000000e-1,"b":[1,2.0000000000000000e+0],"c":null}"#);
    }

    #[test]
    fn svg_is_self_contained() {
        let s = log_plot_svg("t", &[1.0, 0.1, 0.0, 0.01], Some(1));
        assert!(s.starts_with("<svg"));
        assert!(!s.contains("href"));
        assert!(s.contains("polyline"));
        assert!(s.contains("circle"));
    }
}
