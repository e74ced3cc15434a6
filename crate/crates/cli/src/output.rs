//! Deterministic text renderings: numbers, sweep CSV and a small SVG chart.

use std::fmt::Write as _;

use esq_core::SweepResult;

/// Formats like C's `%.{sig}g`, with `-0` printed as `0`.
pub fn fmt_sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", sig - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Twelve significant digits, the precision used for every numeric output.
pub fn num(v: f64) -> String {
    fmt_sig(v, 12)
}

/// CSV with a `p,<method>...` header and a trailing `#` block listing crossings.
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::new();
    out.push_str(&result.parameter);
    for m in result.values.keys() {
        out.push(',');
        out.push_str(m.name());
    }
    out.push('\n');
    for (i, p) in result.grid.iter().enumerate() {
        out.push_str(&num(*p));
        for col in result.values.values() {
            out.push(',');
            out.push_str(&num(col[i]));
        }
        out.push('\n');
    }
    for line in crossing_lines(result) {
        out.push_str("# ");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn crossing_lines(result: &SweepResult) -> Vec<String> {
    let mut lines = vec![format!("crossings: {}", result.crossings.len())];
    lines.extend(result.crossings.iter().map(|c| {
        format!(
            "crossing {} {} [{}, {}]",
            c.method,
            c.direction.name(),
            num(c.lo),
            num(c.hi)
        )
    }));
    lines
}

const COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

/// Standalone SVG line chart of every method against `p`, with a zero line.
pub fn sweep_svg(result: &SweepResult) -> String {
    let (w, h, margin) = (640.0, 400.0, 50.0);
    let all = result.values.values().flatten().copied();
    let (mut lo, mut hi) = all.fold((0.0f64, 0.0f64), |(a, b), v| (a.min(v), b.max(v)));
    if hi - lo < 1e-12 {
        lo -= 1.0;
        hi += 1.0;
    }
    let (p0, p1) = (
        *result.grid.first().unwrap_or(&0.0),
        *result.grid.last().unwrap_or(&1.0),
    );
    let span = if p1 > p0 { p1 - p0 } else { 1.0 };
    let x = |p: f64| margin + (p - p0) / span * (w - 2.0 * margin);
    let y = |v: f64| h - margin - (v - lo) / (hi - lo) * (h - 2.0 * margin);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{margin}" y="{margin}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        w - 2.0 * margin,
        h - 2.0 * margin
    );
    let _ = writeln!(
        s,
        r#"<line x1="{margin}" y1="{0:.3}" x2="{1}" y2="{0:.3}" stroke="gray" stroke-dasharray="4 3"/>"#,
        y(0.0),
        w - margin
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
        w / 2.0,
        h - 15.0,
        result.parameter
    );
    for (label, v) in [(num(hi), hi), (num(lo), lo), ("0".to_string(), 0.0)] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.3}" font-size="10" text-anchor="end">{label}</text>"#,
            margin - 4.0,
            y(v) + 3.0
        );
    }
    for (k, (m, col)) in result.values.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts: Vec<String> = result
            .grid
            .iter()
            .zip(col)
            .map(|(&p, &v)| format!("{:.3},{:.3}", x(p), y(v)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="12" fill="{color}">{m}</text>"#,
            margin + 8.0,
            margin + 16.0 + 14.0 * k as f64
        );
    }
    s.push_str("</svg>\n");
    s
}
