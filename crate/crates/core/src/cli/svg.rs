//! Self-contained SVG scatter plots of spectra in the unit disk.

use std::fmt::Write;

use num_complex::Complex64;

const SIZE: f64 = 640.0;
const EXTENT: f64 = 1.1;

pub struct Circle {
    pub label: String,
    pub radius: f64,
}

fn to_px(z: Complex64) -> (f64, f64) {
    let s = SIZE / (2.0 * EXTENT);
    (SIZE / 2.0 + z.re * s, SIZE / 2.0 - z.im * s)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Eigenvalues as dots, an optional second set as rings, the unit circle and
/// the labelled reference circles with radius in `(0, 1)`.
pub fn scatter(points: &[Complex64], overlay: Option<&[Complex64]>, circles: &[Circle]) -> String {
    let scale = SIZE / (2.0 * EXTENT);
    let c = SIZE / 2.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">
<rect width="100%" height="100%" fill="white"/>
<circle cx="{c}" cy="{c}" r="{scale}" fill="none" stroke="black" stroke-width="1"/>"#
    );
    for circle in circles.iter().filter(|k| k.radius > 0.0 && k.radius < 1.0) {
        let r = circle.radius * scale;
        let _ = writeln!(
            s,
            r#"<circle cx="{c}" cy="{c}" r="{r:.3}" fill="none" stroke="gray" stroke-dasharray="4 3"/>
<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11" fill="gray">{}</text>"#,
            c + r * std::f64::consts::FRAC_1_SQRT_2 + 3.0,
            c - r * std::f64::consts::FRAC_1_SQRT_2 - 3.0,
            escape(&circle.label)
        );
    }
    for &z in points {
        let (x, y) = to_px(z);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="1.6" fill="steelblue"/>"#);
    }
    for &z in overlay.unwrap_or(&[]) {
        let (x, y) = to_px(z);
        let _ = writeln!(
            s,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="none" stroke="crimson" stroke-width="0.7"/>"#
        );
    }
    s.push_str("</svg>\n");
    s
}
