//! Minimal hand-written SVG line plot of `γ(c)`.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 400.0;
const PAD: f64 = 50.0;

/// Polyline plot of `(x, y)` points; `None` values split the line.
pub fn line_plot(points: &[(f64, Option<f64>)], x_label: &str, y_label: &str) -> String {
    let ys: Vec<f64> = points.iter().filter_map(|p| p.1).collect();
    let (mut y_lo, mut y_hi) = ys
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &y| {
            (a.min(y), b.max(y))
        });
    if !(y_lo < y_hi) {
        y_lo = 0.0;
        y_hi = 1.0;
    }
    let sx = |x: f64| PAD + x * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y_lo) / (y_hi - y_lo) * (H - 2.0 * PAD);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let (x0, x1, y0, y1) = (sx(0.0), sx(1.0), sy(y_lo), sy(y_hi));
    let _ = writeln!(
        s,
        r#"<path d="M{x0:.1},{y1:.1} L{x0:.1},{y0:.1} L{x1:.1},{y0:.1}" stroke="black" fill="none"/>"#
    );
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let y = y_lo + t * (y_hi - y_lo);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle">{t}</text>"#,
            sx(t),
            y0 + 16.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="end">{y:.4}</text>"#,
            x0 - 4.0,
            sy(y) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-size="13" text-anchor="middle">{x_label}</text>"#,
        W / 2.0,
        H - 10.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.1}" font-size="13" text-anchor="middle" transform="rotate(-90 14 {:.1})">{y_label}</text>"#,
        H / 2.0,
        H / 2.0
    );
    let mut seg: Vec<String> = Vec::new();
    let flush = |seg: &mut Vec<String>, s: &mut String| {
        if seg.len() > 1 {
            let _ = writeln!(
                s,
                r#"<polyline points="{}" stroke="steelblue" stroke-width="1.5" fill="none"/>"#,
                seg.join(" ")
            );
        }
        seg.clear();
    };
    for &(x, y) in points {
        match y {
            Some(y) => seg.push(format!("{:.2},{:.2}", sx(x), sy(y))),
            None => flush(&mut seg, &mut s),
        }
    }
    flush(&mut seg, &mut s);
    s.push_str("</svg>\n");
    s
}
