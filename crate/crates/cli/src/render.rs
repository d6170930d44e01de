//! SVG figures: components of `L` as open circles, components of `s(L)` as dots.

use std::fmt::Write;

use simpack::oracle::{enumerate, enumerate_image, Window};
use simpack::{FieldElem, PointPacking, Similarity};

const PACKING_COLORS: [&str; 6] = ["#1a1a1a", "#8c8c8c", "#c0392b", "#6c3483", "#117864", "#935116"];
const IMAGE_COLORS: [&str; 6] = ["#1f5fbf", "#e6b800", "#2e9e44", "#d35400", "#8e44ad", "#16a085"];

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const LEGEND_LINE: f64 = 18.0;

fn color(palette: &[&'static str], k: usize) -> &'static str {
    palette[k % palette.len()]
}

struct Viewport {
    x0: f64,
    y1: f64,
    scale: f64,
}

impl Viewport {
    fn new(window: &Window, packing: &PointPacking) -> Viewport {
        let ring = packing.ring();
        let corners: Vec<(f64, f64)> = [
            [window.lo[0].clone(), window.lo[1].clone()],
            [window.hi[0].clone(), window.lo[1].clone()],
            [window.lo[0].clone(), window.hi[1].clone()],
            [window.hi[0].clone(), window.hi[1].clone()],
        ]
        .into_iter()
        .map(|c| FieldElem::from_coords(ring, c).to_cartesian())
        .collect();
        let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| {
            corners.iter().map(pick).fold(init, f)
        };
        let x0 = fold(f64::min, f64::INFINITY, |c| c.0);
        let x1 = fold(f64::max, f64::NEG_INFINITY, |c| c.0);
        let y0 = fold(f64::min, f64::INFINITY, |c| c.1);
        let y1 = fold(f64::max, f64::NEG_INFINITY, |c| c.1);
        let scale = (SIZE - 2.0 * MARGIN) / (x1 - x0).max(y1 - y0);
        Viewport { x0, y1, scale }
    }

    fn map(&self, p: &FieldElem) -> (f64, f64) {
        let (x, y) = p.to_cartesian();
        (MARGIN + (x - self.x0) * self.scale, MARGIN + (self.y1 - y) * self.scale)
    }
}

/// The figure for `L` and, unless `similarity` is `None`, `s(L)`.
pub fn render(packing: &PointPacking, similarity: Option<&Similarity>, window: &Window) -> String {
    let view = Viewport::new(window, packing);
    let mut legend: Vec<(String, &str, bool)> = Vec::new();
    let mut body = String::new();

    let points = enumerate(packing, window);
    let r = (view.scale * 0.09).clamp(2.5, 9.0);
    for (k, label) in packing.labels().iter().enumerate() {
        let c = color(&PACKING_COLORS, k);
        legend.push((format!("{label} + Γ"), c, false));
        writeln!(body, "<g class=\"component\" stroke=\"{c}\" fill=\"none\" stroke-width=\"1.5\">").unwrap();
        for p in points.iter().filter(|p| packing.component_of(p) == Some(k)) {
            let (x, y) = view.map(p);
            writeln!(body, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{r:.3}\"/>").unwrap();
        }
        body.push_str("</g>\n");
    }

    if let Some(s) = similarity {
        let images = enumerate_image(packing, s, window);
        for (k, (label, pts)) in packing.labels().iter().zip(images).enumerate() {
            let c = color(&IMAGE_COLORS, k);
            legend.push((format!("s({label} + Γ)"), c, true));
            writeln!(body, "<g class=\"image\" fill=\"{c}\">").unwrap();
            for p in &pts {
                let (x, y) = view.map(p);
                writeln!(body, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{:.3}\"/>", r * 0.5).unwrap();
            }
            body.push_str("</g>\n");
        }
    }

    let height = SIZE + LEGEND_LINE * (legend.len() as f64 + 1.0);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{height}\" viewBox=\"0 0 {SIZE} {height}\">"
    )
    .unwrap();
    writeln!(out, "<rect width=\"{SIZE}\" height=\"{height}\" fill=\"white\"/>").unwrap();
    if let Some(s) = similarity {
        writeln!(out, "<title>{}</title>", escape(&s.to_string())).unwrap();
    }
    out.push_str(&body);
    writeln!(out, "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">").unwrap();
    for (i, (text, c, filled)) in legend.iter().enumerate() {
        let y = SIZE + LEGEND_LINE * i as f64;
        let (fill, stroke) = if *filled { (*c, "none") } else { ("none", *c) };
        writeln!(out, "<circle cx=\"{MARGIN}\" cy=\"{y}\" r=\"5\" fill=\"{fill}\" stroke=\"{stroke}\" stroke-width=\"1.5\"/>").unwrap();
        writeln!(out, "<text x=\"{}\" y=\"{}\">{}</text>", MARGIN + 12.0, y + 4.0, escape(text)).unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
