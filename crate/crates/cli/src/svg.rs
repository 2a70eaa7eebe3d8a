//! Static SVG pictures of half-plane scenes.
//!
//! The y axis is flipped so the boundary `R` sits at the bottom. Bisector
//! centers grow like `3^n`, so tall scenes switch to a symmetric log scale
//! `x ↦ sign(x) log10(1 + |x|)`, `y ↦ log10(1 + y)` in which semicircles are
//! drawn as sampled polylines instead of arcs.

use std::fmt::Write as _;

use hypflute::flute::GroupSpec;
use hypflute::Geodesic;

use crate::{Scale, What};

const WIDTH: f64 = 1000.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 20.0;
const POLY_SAMPLES: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    Semicircle { center: f64, radius: f64 },
    Vertical { x: f64, from_y: f64 },
    /// The Euclidean ray from `0` through `(slope, 1)`.
    OriginRay { slope: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub shape: Shape,
    pub class: &'static str,
    pub label: String,
    /// Fill the region enclosed with the real axis.
    pub filled: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Annotation {
    pub x: f64,
    pub y: f64,
    pub label: String,
}

/// Curves, labeled points and a viewport `[-x_max, x_max] × (0, y_max]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub curves: Vec<Curve>,
    pub annotations: Vec<Annotation>,
    pub x_max: f64,
    pub y_max: f64,
    pub log: bool,
}

fn geodesic_shape(g: &Geodesic) -> Shape {
    match *g {
        Geodesic::Semicircle { center, radius } => Shape::Semicircle { center, radius },
        Geodesic::Vertical { x } => Shape::Vertical { x, from_y: 0.0 },
    }
}

impl Scene {
    pub fn from_spec(spec: &GroupSpec, what: What, scale: Scale) -> Scene {
        let all = what == What::All;
        let mut curves = Vec::new();
        let mut annotations = Vec::new();
        let mut extent: f64 = 4.0;
        let mut sizes: Vec<f64> = Vec::new();
        for g in &spec.generators {
            for inverse in [false, true] {
                let b = g.bisector(inverse);
                extent = extent.max(b.extremities[0].abs()).max(b.extremities[1].abs());
                sizes.push(b.radius);
                if all || what == What::Bisectors || what == What::Domain {
                    curves.push(Curve {
                        shape: Shape::Semicircle { center: b.center, radius: b.radius },
                        class: "bisector",
                        label: g.label(inverse),
                        filled: false,
                    });
                }
                if all || what == What::Domain {
                    curves.push(Curve {
                        shape: Shape::Semicircle { center: b.center, radius: b.radius },
                        class: "excluded",
                        label: g.label(inverse),
                        filled: true,
                    });
                }
            }
            if all || what == What::Axes {
                if let Some(axis) = g.element.matrix().classify().axis {
                    if let Geodesic::Semicircle { center, radius } = axis {
                        extent = extent.max(center.abs() + radius);
                    }
                    curves.push(Curve { shape: geodesic_shape(&axis), class: "axis", label: g.label(false), filled: false });
                }
            }
        }
        if all || what == What::Ray || what == What::Domain {
            curves.push(Curve {
                shape: Shape::Vertical { x: 0.0, from_y: 1.0 },
                class: "ray",
                label: "[i, ∞)".into(),
                filled: false,
            });
            annotations.push(Annotation { x: 0.0, y: 1.0, label: "i".into() });
        }
        for slope in [1.0, -1.0] {
            curves.push(Curve {
                shape: Shape::OriginRay { slope },
                class: "hypercycle",
                label: if slope > 0.0 { "C(0,∞)(1+i)".into() } else { "C(0,∞)(-1+i)".into() },
                filled: false,
            });
        }
        let x_max = 1.1 * extent;
        let smallest = sizes.iter().copied().fold(f64::INFINITY, f64::min);
        let log = match scale {
            Scale::Linear => false,
            Scale::Log => true,
            Scale::Auto => !sizes.is_empty() && x_max / smallest > 200.0,
        };
        Scene { curves, annotations, x_max, y_max: x_max, log }
    }

    pub fn scale_name(&self) -> &'static str {
        if self.log {
            "log"
        } else {
            "linear"
        }
    }

    fn tx(&self, x: f64) -> f64 {
        let (v, m) = if self.log {
            (x.signum() * x.abs().ln_1p(), self.x_max.ln_1p())
        } else {
            (x, self.x_max)
        };
        MARGIN + (v + m) / (2.0 * m) * (WIDTH - 2.0 * MARGIN)
    }

    fn ty(&self, y: f64) -> f64 {
        let (v, m) = if self.log { (y.ln_1p(), self.y_max.ln_1p()) } else { (y, self.y_max) };
        HEIGHT - MARGIN - v / m * (HEIGHT - 2.0 * MARGIN)
    }

    fn polyline(&self, pts: impl Iterator<Item = (f64, f64)>) -> String {
        let mut d = String::new();
        for (k, (x, y)) in pts.enumerate() {
            let _ = write!(d, "{}{:.3} {:.3}", if k == 0 { "M " } else { " L " }, self.tx(x), self.ty(y));
        }
        d
    }

    fn path(&self, curve: &Curve) -> String {
        match curve.shape {
            Shape::Semicircle { center, radius } => {
                let mut d = if self.log {
                    self.polyline((0..=POLY_SAMPLES).map(|k| {
                        let theta = std::f64::consts::PI * (1.0 - k as f64 / POLY_SAMPLES as f64);
                        (center + radius * theta.cos(), radius * theta.sin())
                    }))
                } else {
                    let rx = radius / (2.0 * self.x_max) * (WIDTH - 2.0 * MARGIN);
                    let ry = radius / self.y_max * (HEIGHT - 2.0 * MARGIN);
                    format!(
                        "M {:.3} {:.3} A {:.3} {:.3} 0 0 1 {:.3} {:.3}",
                        self.tx(center - radius),
                        self.ty(0.0),
                        rx,
                        ry,
                        self.tx(center + radius),
                        self.ty(0.0)
                    )
                };
                if curve.filled {
                    d.push_str(" Z");
                }
                d
            }
            Shape::Vertical { x, from_y } => {
                format!("M {:.3} {:.3} L {:.3} {:.3}", self.tx(x), self.ty(from_y), self.tx(x), self.ty(self.y_max))
            }
            Shape::OriginRay { slope } => {
                if self.log {
                    self.polyline((0..=POLY_SAMPLES).map(|k| {
                        let y = self.y_max * (k as f64 / POLY_SAMPLES as f64).powi(4);
                        (slope * y, y)
                    }))
                } else {
                    let y = self.y_max.min(self.x_max);
                    format!("M {:.3} {:.3} L {:.3} {:.3}", self.tx(0.0), self.ty(0.0), self.tx(slope * y), self.ty(y))
                }
            }
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" data-scale="{}">"#,
            self.scale_name()
        );
        s.push_str(concat!(
            "  <style>",
            ".frame{stroke:#000;stroke-width:1}",
            ".bisector{fill:none;stroke:#1f5fbf;stroke-width:1.2}",
            ".excluded{fill:#1f5fbf;fill-opacity:0.12;stroke:none}",
            ".axis{fill:none;stroke:#bf1f1f;stroke-dasharray:4 3}",
            ".ray{stroke:#2a8a2a;stroke-width:1.5}",
            ".hypercycle{fill:none;stroke:#888;stroke-dasharray:2 2}",
            "text{font:12px sans-serif}",
            "</style>\n"
        ));
        let _ = writeln!(
            s,
            r#"  <line class="frame" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            MARGIN,
            self.ty(0.0),
            WIDTH - MARGIN,
            self.ty(0.0)
        );
        for layer in ["excluded", "hypercycle", "axis", "bisector", "ray"] {
            let items: Vec<&Curve> = self.curves.iter().filter(|c| c.class == layer).collect();
            if items.is_empty() {
                continue;
            }
            let _ = writeln!(s, r#"  <g id="{layer}">"#);
            for c in items {
                let data = match c.shape {
                    Shape::Semicircle { center, radius } => format!(r#" data-center="{center}" data-radius="{radius}""#),
                    Shape::Vertical { x, .. } => format!(r#" data-x="{x}""#),
                    Shape::OriginRay { slope } => format!(r#" data-slope="{slope}""#),
                };
                let _ = writeln!(
                    s,
                    r#"    <path class="{}" data-label="{}"{} d="{}"/>"#,
                    c.class,
                    escape(&c.label),
                    data,
                    self.path(c)
                );
            }
            s.push_str("  </g>\n");
        }
        for a in &self.annotations {
            let _ = writeln!(
                s,
                r#"  <circle cx="{:.3}" cy="{:.3}" r="3"/><text x="{:.3}" y="{:.3}">{}</text>"#,
                self.tx(a.x),
                self.ty(a.y),
                self.tx(a.x) + 5.0,
                self.ty(a.y) - 5.0,
                escape(&a.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
