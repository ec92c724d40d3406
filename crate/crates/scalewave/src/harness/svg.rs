//! Native SVG rendering of the regime diagram: colored sweep cells, the
//! analytic critical curves `F₁ = 0` and `F₂ = 0`, and the threshold lines
//! `p = p̃`, `q = q̃`. No plotting dependency; numbers are formatted with
//! fixed precision so output is deterministic.

use super::sweep::SweepCell;
use super::RunConfig;
use crate::exponents::{DerivedExponents, RegimeKind};
use crate::VERSION;
use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 640.0;
const MARGIN: f64 = 60.0;

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

struct Frame {
    p_lo: f64,
    p_hi: f64,
    q_lo: f64,
    q_hi: f64,
}

impl Frame {
    fn x(&self, p: f64) -> f64 {
        MARGIN + (p - self.p_lo) / (self.p_hi - self.p_lo) * (W - 2.0 * MARGIN)
    }

    fn y(&self, q: f64) -> f64 {
        MARGIN + (self.q_hi - q) / (self.q_hi - self.q_lo) * (H - 2.0 * MARGIN)
    }
}

fn kind_color(kind: RegimeKind) -> &'static str {
    match kind {
        RegimeKind::BlowUp => "#d9534f",
        RegimeKind::GlobalSupercriticalBoth => "#5cb85c",
        RegimeKind::GlobalLossOnU => "#5bc0de",
        RegimeKind::GlobalLossOnV => "#337ab7",
        RegimeKind::Undetermined => "#cccccc",
    }
}

fn agreement_color(cell: &SweepCell) -> &'static str {
    match cell.agreement {
        Some(true) => "#5cb85c",
        Some(false) => "#d9534f",
        None => "#cccccc",
    }
}

/// Render the sweep as a standalone SVG document. For simulation-backed
/// sweeps cells are colored by verdict/outcome agreement, otherwise by
/// verdict kind.
pub fn render_diagram(
    cells: &[SweepCell],
    ps: &[f64],
    qs: &[f64],
    derived: &DerivedExponents,
    n: u32,
    simulated: bool,
    config: &RunConfig,
) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    // Same provenance as every other output file: version + resolved config.
    let config_json = serde_json::to_string(config).expect("config serializes");
    let _ = writeln!(
        svg,
        "<desc>scalewave {VERSION}; config: {}</desc>",
        xml_escape(&config_json)
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);

    if ps.is_empty() || qs.is_empty() {
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="14">empty sweep grid</text>"#,
            W / 2.0 - 60.0,
            H / 2.0
        );
        svg.push_str("</svg>\n");
        return svg;
    }

    let dp = if ps.len() > 1 { ps[1] - ps[0] } else { 0.5 };
    let dq = if qs.len() > 1 { qs[1] - qs[0] } else { 0.5 };
    let frame = Frame {
        p_lo: ps[0] - dp / 2.0,
        p_hi: ps[ps.len() - 1] + dp / 2.0,
        q_lo: qs[0] - dq / 2.0,
        q_hi: qs[qs.len() - 1] + dq / 2.0,
    };

    // Cells (row-major: q outer, p inner).
    for (idx, cell) in cells.iter().enumerate() {
        let pi = idx % ps.len();
        let qi = idx / ps.len();
        let x = frame.x(ps[pi] - dp / 2.0);
        let y = frame.y(qs[qi] + dq / 2.0);
        let w = frame.x(ps[pi] + dp / 2.0) - x;
        let h = frame.y(qs[qi] - dq / 2.0) - y;
        let color = if simulated {
            agreement_color(cell)
        } else {
            kind_color(cell.kind)
        };
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{color}" fill-opacity="0.8"/>"#
        );
    }

    // Analytic curves, where the shifts exist.
    if let (Some(a1), Some(a2)) = (derived.alpha1, derived.alpha2) {
        let nf = n as f64;
        let m1 = (nf + a1 - 1.0) / 2.0;
        let m2 = (nf + a2 - 1.0) / 2.0;
        // F(p, q, n, α₁) = 0  ⇔  q = (p + 1 + m₁) / (m₁ p).
        if m1 > 0.0 {
            let curve = sample_curve(&frame, |p| (p + 1.0 + m1) / (m1 * p));
            let _ = writeln!(
                svg,
                r##"<polyline points="{curve}" fill="none" stroke="#202020" stroke-width="1.5"/>"##
            );
        }
        // F(q, p, n, α₂) = 0  ⇔  q = (1 + m₂) / (m₂ p - 1), p > 1/m₂.
        if m2 > 0.0 {
            let curve = sample_curve(&frame, |p| {
                let den = m2 * p - 1.0;
                if den > 1e-9 {
                    (1.0 + m2) / den
                } else {
                    f64::NAN
                }
            });
            let _ = writeln!(
                svg,
                r##"<polyline points="{curve}" fill="none" stroke="#202020" stroke-width="1.5" stroke-dasharray="6 3"/>"##
            );
        }
    }
    if let Some(pt) = derived.p_tilde {
        if pt > frame.p_lo && pt < frame.p_hi {
            let x = frame.x(pt);
            let _ = writeln!(
                svg,
                r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#707070" stroke-width="1" stroke-dasharray="3 3"/>"##,
                frame.y(frame.q_hi),
                frame.y(frame.q_lo)
            );
        }
    }
    if let Some(qt) = derived.q_tilde {
        if qt > frame.q_lo && qt < frame.q_hi {
            let y = frame.y(qt);
            let _ = writeln!(
                svg,
                r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#707070" stroke-width="1" stroke-dasharray="3 3"/>"##,
                frame.x(frame.p_lo),
                frame.x(frame.p_hi)
            );
        }
    }

    // Axes.
    let _ = writeln!(
        svg,
        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        MARGIN,
        MARGIN,
        W - 2.0 * MARGIN,
        H - 2.0 * MARGIN
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="13">p = {:.3} .. {:.3}</text>"#,
        W / 2.0 - 70.0,
        H - 18.0,
        frame.p_lo,
        frame.p_hi
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{:.1}" font-family="sans-serif" font-size="13" transform="rotate(-90 14 {:.1})">q = {:.3} .. {:.3}</text>"#,
        H / 2.0,
        H / 2.0,
        frame.q_lo,
        frame.q_hi
    );
    let legend: &[(&str, &str)] = if simulated {
        &[
            ("#5cb85c", "agree"),
            ("#d9534f", "disagree"),
            ("#cccccc", "n/a"),
        ]
    } else {
        &[
            ("#d9534f", "blow-up"),
            ("#5cb85c", "global"),
            ("#5bc0de", "loss on u"),
            ("#337ab7", "loss on v"),
            ("#cccccc", "undetermined"),
        ]
    };
    for (k, (color, label)) in legend.iter().enumerate() {
        let x = MARGIN + 110.0 * k as f64;
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.1}" y="16" width="12" height="12" fill="{color}"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="26" font-family="sans-serif" font-size="12">{label}</text>"#,
            x + 16.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn sample_curve(frame: &Frame, f: impl Fn(f64) -> f64) -> String {
    let mut pts = String::new();
    for k in 0..=400 {
        let p = frame.p_lo + (frame.p_hi - frame.p_lo) * k as f64 / 400.0;
        let q = f(p);
        if q.is_finite() && q >= frame.q_lo && q <= frame.q_hi {
            let _ = write!(pts, "{:.2},{:.2} ", frame.x(p), frame.y(q));
        }
    }
    pts.trim_end().to_string()
}
