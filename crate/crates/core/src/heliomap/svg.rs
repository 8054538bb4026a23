use std::fmt::Write;

use super::HelioLayout;

/// Radius fractions of the concentric guide rings.
const RING_FRACTIONS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub width: f64,
    pub height: f64,
    /// Space between the outermost ring and the canvas edge, for labels.
    pub margin: f64,
    pub font_family: String,
    pub font_size: f64,
    pub dot_radius: f64,
    pub rings: bool,
    pub title: Option<String>,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            width: 800.0,
            height: 800.0,
            margin: 140.0,
            font_family: "Helvetica, Arial, sans-serif".into(),
            font_size: 11.0,
            dot_radius: 5.0,
            rings: true,
            title: None,
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Renders a self-contained SVG 1.1 document. Output depends only on the
/// arguments, so identical inputs give identical bytes.
pub fn render_svg(layout: &HelioLayout, style: &SvgStyle) -> String {
    let cx = style.width / 2.0;
    let cy = style.height / 2.0;
    let full = (style.width.min(style.height) / 2.0 - style.margin).max(1.0);
    let mut out = String::new();

    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="{font}" font-size="{fs}">"#,
        w = num(style.width),
        h = num(style.height),
        font = escape(&style.font_family),
        fs = num(style.font_size),
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##, num(style.width), num(style.height));
    if let Some(title) = &style.title {
        let _ = writeln!(out, "<title>{}</title>", escape(title));
    }

    if style.rings {
        let _ = writeln!(out, r##"<g class="rings" fill="none" stroke="#c8c8c8" stroke-width="1">"##);
        for f in RING_FRACTIONS {
            let _ = writeln!(out, r#"<circle class="ring" cx="{}" cy="{}" r="{}"/>"#, num(cx), num(cy), num(f * full));
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(out, r##"<circle class="center" cx="{}" cy="{}" r="{}" fill="#b22222"/>"##, num(cx), num(cy), num(style.dot_radius * 1.6));
    let _ = writeln!(
        out,
        r#"<text class="center-label" x="{}" y="{}" text-anchor="middle" font-weight="bold">{}</text>"#,
        num(cx),
        num(cy + style.dot_radius * 1.6 + style.font_size + 2.0),
        escape(&layout.center_label)
    );

    let positions: Vec<(f64, f64, f64)> = layout
        .dots
        .iter()
        .map(|d| {
            let theta = d.angle_degrees.to_radians();
            let r = d.radius_fraction * full;
            (theta, cx + r * theta.cos(), cy - r * theta.sin())
        })
        .collect();

    let _ = writeln!(out, r##"<g class="dots" fill="#1f4e9a">"##);
    for (d, (_, x, y)) in layout.dots.iter().zip(&positions) {
        let _ = writeln!(
            out,
            r#"<circle class="dot" cx="{}" cy="{}" r="{}" data-gain="{}"/>"#,
            num(*x),
            num(*y),
            num(style.dot_radius),
            d.gain
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r##"<g class="labels" fill="#222222">"##);
    for (i, (d, (theta, x, y))) in layout.dots.iter().zip(&positions).enumerate() {
        // even labels sit outside their dot, odd ones inside, to reduce collisions
        let outward = i % 2 == 0;
        let offset = style.dot_radius + 4.0;
        let dir = if outward { 1.0 } else { -1.0 };
        let lx = x + dir * offset * theta.cos();
        let ly = y - dir * offset * theta.sin() + style.font_size / 3.0;
        let c = theta.cos() * dir;
        let anchor = if c.abs() < 0.2 {
            "middle"
        } else if c > 0.0 {
            "start"
        } else {
            "end"
        };
        let _ = writeln!(
            out,
            r#"<text class="label" x="{}" y="{}" text-anchor="{}">{}</text>"#,
            num(lx),
            num(ly),
            anchor,
            escape(&d.label)
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
