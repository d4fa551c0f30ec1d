//! Static SVG rendering of chamber decompositions.

use std::fmt::Write;

use polymeasure::chambers::Arrangement;
use polymeasure::{CNum, PointSet, Scalar};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 32.0;

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[CNum]) -> Self {
        let xs: Vec<f64> = points.iter().map(|z| z.re.to_f64()).collect();
        let ys: Vec<f64> = points.iter().map(|z| z.im.to_f64()).collect();
        let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
        let (min_x, max_x) = (fold(&xs, f64::min, f64::INFINITY), fold(&xs, f64::max, f64::NEG_INFINITY));
        let (min_y, max_y) = (fold(&ys, f64::min, f64::INFINITY), fold(&ys, f64::max, f64::NEG_INFINITY));
        let span = (max_x - min_x).max(max_y - min_y).max(f64::EPSILON);
        Frame { min_x, max_y, scale: (SIZE - 2.0 * MARGIN) / span }
    }

    fn map(&self, z: &CNum) -> (f64, f64) {
        (MARGIN + (z.re.to_f64() - self.min_x) * self.scale, MARGIN + (self.max_y - z.im.to_f64()) * self.scale)
    }
}

fn fill(d: Option<&Scalar>, peak: f64) -> String {
    match d {
        None => "#f4f4f4".to_owned(),
        Some(d) if d.is_zero() => "#ffffff".to_owned(),
        Some(d) => {
            let t = (d.abs().to_f64() / peak).clamp(0.15, 1.0);
            let fade = (255.0 * (1.0 - 0.6 * t)) as u8;
            if d.is_positive() {
                format!("#ff{fade:02x}{fade:02x}")
            } else {
                format!("#{fade:02x}{fade:02x}ff")
            }
        }
    }
}

/// Chambers filled by density sign, labelled with exact densities when given.
pub fn render_chambers(s: &PointSet, arr: &Arrangement, densities: Option<&[Scalar]>) -> String {
    let frame = Frame::fit(s.points());
    let peak = densities.map_or(1.0, |ds| ds.iter().map(|d| d.abs().to_f64()).fold(f64::MIN_POSITIVE, f64::max));
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    for (idx, c) in arr.chambers.iter().enumerate() {
        let path: Vec<String> = c
            .polygon()
            .iter()
            .map(|z| {
                let (x, y) = frame.map(z);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let d = densities.map(|ds| &ds[idx]);
        let _ = writeln!(
            out,
            r##"  <polygon points="{}" fill="{}" stroke="#999" stroke-width="0.5"/>"##,
            path.join(" "),
            fill(d, peak)
        );
    }
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let ((x1, y1), (x2, y2)) = (frame.map(s.point(i)), frame.map(s.point(j)));
            let _ = writeln!(
                out,
                r##"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#333" stroke-width="1"/>"##
            );
        }
    }
    if let Some(ds) = densities {
        for (c, d) in arr.chambers.iter().zip(ds) {
            let (x, y) = frame.map(&c.alternate_representative());
            let _ = writeln!(
                out,
                r#"  <text x="{x:.2}" y="{y:.2}" font-size="12" text-anchor="middle" dominant-baseline="middle">{d}</text>"#
            );
        }
    }
    for (i, z) in s.points().iter().enumerate() {
        let (x, y) = frame.map(z);
        let _ = writeln!(out, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
        let _ = writeln!(out, r#"  <text x="{:.2}" y="{:.2}" font-size="13">z{i}</text>"#, x + 5.0, y - 5.0);
    }
    out.push_str("</svg>\n");
    out
}
