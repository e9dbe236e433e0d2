use std::fmt::Write as _;

use serde::Serialize;

use super::hyperbolic::Geodesic;
use super::Horodisc;
use crate::flat::{DiscPoint, Holonomy};

/// One piece of a path in the disc.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PathPiece {
    Geodesic { from: DiscPoint, to: DiscPoint, length: f64 },
    /// Arc of the boundary horocycle of the horodisc at `cusp`.
    Horocyclic { from: DiscPoint, to: DiscPoint, length: f64, cusp: Holonomy, level: f64, n: usize },
    /// Passage through the electrification point of the horodisc at `cusp`.
    Electric { from: DiscPoint, to: DiscPoint, length: f64, cusp: Holonomy },
}

impl PathPiece {
    pub fn from(&self) -> DiscPoint {
        match self {
            PathPiece::Geodesic { from, .. }
            | PathPiece::Horocyclic { from, .. }
            | PathPiece::Electric { from, .. } => *from,
        }
    }

    pub fn to(&self) -> DiscPoint {
        match self {
            PathPiece::Geodesic { to, .. } | PathPiece::Horocyclic { to, .. } | PathPiece::Electric { to, .. } => {
                *to
            }
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            PathPiece::Geodesic { length, .. }
            | PathPiece::Horocyclic { length, .. }
            | PathPiece::Electric { length, .. } => *length,
        }
    }
}

/// A piecewise path: geodesic segments joined by horocyclic detours or electric jumps.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CorePath {
    pub pieces: Vec<PathPiece>,
    pub length: f64,
}

impl CorePath {
    pub fn new(pieces: Vec<PathPiece>) -> Self {
        let length = pieces.iter().map(|p| p.length()).sum();
        Self { pieces, length }
    }

    /// Largest gap between consecutive piece endpoints (Euclidean).
    pub fn max_joint_error(&self) -> f64 {
        self.pieces
            .windows(2)
            .map(|w| {
                let (a, b) = (w[0].to(), w[1].from());
                (a.x - b.x).hypot(a.y - b.y)
            })
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("paths serialize")
    }

    /// A picture of the path with the given horodiscs, in the half-plane chart.
    pub fn to_svg(&self, horodiscs: &[Horodisc]) -> String {
        let pts: Vec<DiscPoint> = self.pieces.iter().flat_map(|p| [p.from(), p.to()]).collect();
        let (mut x0, mut x1, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
        for p in &pts {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        if pts.is_empty() {
            (x0, x1, y1) = (-1.0, 1.0, 1.0);
        }
        let pad = 0.1 * (x1 - x0).max(y1).max(1e-6);
        let (x0, x1, y1) = (x0 - pad, x1 + pad, y1 * 1.2 + pad);
        let (w, h) = (800.0, 800.0 * (y1 / (x1 - x0)).clamp(0.2, 1.5));
        let sx = |x: f64| (x - x0) / (x1 - x0) * w;
        let sy = |y: f64| h - y / y1 * h;
        let scale = w / (x1 - x0);
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#
        );
        let _ = writeln!(out, r##"<line x1="0" y1="{h:.3}" x2="{w:.3}" y2="{h:.3}" stroke="#000"/>"##);
        for d in horodiscs {
            match d.cusp() {
                None => {
                    let y = sy(d.size());
                    let _ = writeln!(
                        out,
                        r##"<rect x="0" y="0" width="{w:.3}" height="{y:.3}" fill="#cde" stroke="#68a"/>"##
                    );
                }
                Some(c) => {
                    let r = d.size() / 2.0;
                    let _ = writeln!(
                        out,
                        r##"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#cde" stroke="#68a"/>"##,
                        sx(c),
                        sy(r),
                        r * scale
                    );
                }
            }
        }
        for p in &self.pieces {
            let (a, b) = (p.from(), p.to());
            match p {
                PathPiece::Geodesic { .. } => match Geodesic::through(a, b) {
                    Geodesic::Vertical { .. } => {
                        let _ = writeln!(
                            out,
                            r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#c00" stroke-width="2"/>"##,
                            sx(a.x),
                            sy(a.y),
                            sx(b.x),
                            sy(b.y)
                        );
                    }
                    Geodesic::Circle { radius, .. } => {
                        let sweep = if b.x > a.x { 1 } else { 0 };
                        let _ = writeln!(
                            out,
                            r##"<path d="M {:.3} {:.3} A {:.3} {:.3} 0 0 {sweep} {:.3} {:.3}" fill="none" stroke="#c00" stroke-width="2"/>"##,
                            sx(a.x),
                            sy(a.y),
                            radius * scale,
                            radius * scale,
                            sx(b.x),
                            sy(b.y)
                        );
                    }
                },
                PathPiece::Horocyclic { cusp, level, n, .. } => {
                    let d = Horodisc::new(*cusp, *level, *n, 0);
                    match d.cusp() {
                        None => {
                            let _ = writeln!(
                                out,
                                r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#080" stroke-width="2"/>"##,
                                sx(a.x),
                                sy(a.y),
                                sx(b.x),
                                sy(b.y)
                            );
                        }
                        Some(_) => {
                            let r = d.size() / 2.0 * scale;
                            let sweep = if b.x > a.x { 1 } else { 0 };
                            let _ = writeln!(
                                out,
                                r##"<path d="M {:.3} {:.3} A {r:.3} {r:.3} 0 0 {sweep} {:.3} {:.3}" fill="none" stroke="#080" stroke-width="2"/>"##,
                                sx(a.x),
                                sy(a.y),
                                sx(b.x),
                                sy(b.y)
                            );
                        }
                    }
                }
                PathPiece::Electric { .. } => {
                    let _ = writeln!(
                        out,
                        r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#808" stroke-dasharray="6 4" stroke-width="2"/>"##,
                        sx(a.x),
                        sy(a.y),
                        sx(b.x),
                        sy(b.y)
                    );
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}
