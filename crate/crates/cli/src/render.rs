//! SVG output. In the disk model the half-plane is mapped by the Cayley
//! transform `w = (z − i)/(z + i)`, which sends `∞` to `1` and `i` to `0`.
//! Geodesics then become circular arcs meeting the unit circle at right
//! angles, or diameters.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use eqlab::hyp::{BoundaryPoint, Geodesic, HPoint};

fn yes() -> bool {
    true
}

fn default_size() -> f64 {
    512.0
}

fn default_stroke() -> f64 {
    1.0
}

fn default_leaf_stroke() -> f64 {
    2.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderSpec {
    /// Draw in the disk model; `false` keeps the half-plane.
    #[serde(default = "yes")]
    pub disk: bool,
    #[serde(default = "default_size")]
    pub size: f64,
    #[serde(default = "default_stroke")]
    pub stroke_width: f64,
    #[serde(default = "default_leaf_stroke")]
    pub leaf_stroke_width: f64,
    #[serde(default = "yes")]
    pub triangles: bool,
    #[serde(default = "yes")]
    pub leaves: bool,
    #[serde(default)]
    pub tangency_points: bool,
    #[serde(default)]
    pub arcs: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            disk: true,
            size: default_size(),
            stroke_width: default_stroke(),
            leaf_stroke_width: default_leaf_stroke(),
            triangles: true,
            leaves: true,
            tangency_points: false,
            arcs: false,
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.triangles || self.leaves || self.tangency_points || self.arcs) {
            return Err("at least one object class must be selected".into());
        }
        if !(self.size.is_finite() && self.size >= 16.0) {
            return Err(format!("size {} is too small", self.size));
        }
        if !(self.stroke_width > 0.0 && self.leaf_stroke_width > 0.0) {
            return Err("stroke widths must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub triangle_sides: Vec<Geodesic>,
    pub leaves: Vec<Geodesic>,
    pub points: Vec<HPoint>,
    pub segments: Vec<(HPoint, HPoint)>,
}

const MARGIN: f64 = 8.0;

fn cayley(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    (z - i) / (z + i)
}

fn cayley_boundary(p: &BoundaryPoint) -> Complex64 {
    match p.to_real() {
        Some(x) => cayley(Complex64::new(x, 0.0)),
        None => Complex64::new(1.0, 0.0),
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// Screen placement for either model.
struct View {
    disk: bool,
    size: f64,
    x0: f64,
    scale: f64,
}

impl View {
    fn new(spec: &RenderSpec, scene: &Scene) -> Self {
        let (lo, hi) = if spec.disk {
            (0.0, 0.0)
        } else {
            let xs = scene
                .triangle_sides
                .iter()
                .chain(&scene.leaves)
                .flat_map(|g| [g.start(), g.end()])
                .filter_map(|p| p.to_real())
                .filter(|x| x.abs() < 1e3);
            xs.fold((-1.0f64, 1.0f64), |(a, b), x| (a.min(x), b.max(x)))
        };
        let width = (hi - lo) + 2.0;
        Self {
            disk: spec.disk,
            size: spec.size,
            x0: lo - 1.0,
            scale: (spec.size - 2.0 * MARGIN) / width,
        }
    }

    fn radius(&self) -> f64 {
        self.size / 2.0 - MARGIN
    }

    fn disk_xy(&self, w: Complex64) -> (f64, f64) {
        let c = self.size / 2.0;
        (c + self.radius() * w.re, c - self.radius() * w.im)
    }

    fn plane_xy(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + (x - self.x0) * self.scale, self.size - MARGIN - y * self.scale)
    }

    fn point(&self, z: &HPoint) -> (f64, f64) {
        if self.disk {
            self.disk_xy(cayley(z.to_complex()))
        } else {
            self.plane_xy(z.x(), z.y())
        }
    }

    fn geodesic_path(&self, g: &Geodesic) -> String {
        if self.disk {
            let p = cayley_boundary(&g.start());
            let q = cayley_boundary(&g.end());
            let (px, py) = self.disk_xy(p);
            let (qx, qy) = self.disk_xy(q);
            let dot = p.re * q.re + p.im * q.im;
            let k = 1.0 / (1.0 + dot);
            let center = (p + q) * k;
            let r = (center.norm_sqr() - 1.0).max(0.0).sqrt();
            if 1.0 + dot <= 1e-9 || r * self.radius() > 1e6 {
                return format!("M {} {} L {} {}", num(px), num(py), num(qx), num(qy));
            }
            let (cx, cy) = self.disk_xy(center);
            let cross = (px - cx) * (qy - cy) - (py - cy) * (qx - cx);
            let sweep = if cross > 0.0 { 1 } else { 0 };
            let rs = r * self.radius();
            format!(
                "M {} {} A {} {} 0 0 {} {} {}",
                num(px),
                num(py),
                num(rs),
                num(rs),
                sweep,
                num(qx),
                num(qy)
            )
        } else {
            let top = self.size / self.scale;
            match (g.start().to_real(), g.end().to_real()) {
                (Some(a), Some(b)) => {
                    let (ax, ay) = self.plane_xy(a.min(b), 0.0);
                    let (bx, by) = self.plane_xy(a.max(b), 0.0);
                    let r = (bx - ax) / 2.0;
                    format!("M {} {} A {} {} 0 0 1 {} {}", num(ax), num(ay), num(r), num(r), num(bx), num(by))
                }
                (Some(a), None) | (None, Some(a)) => {
                    let (ax, ay) = self.plane_xy(a, 0.0);
                    let (_, ty) = self.plane_xy(a, top);
                    format!("M {} {} L {} {}", num(ax), num(ay), num(ax), num(ty))
                }
                (None, None) => unreachable!("geodesic endpoints are distinct"),
            }
        }
    }

    /// A hyperbolic segment, sampled: in the disk it is straight after
    /// moving one end to the origin.
    fn segment_path(&self, p: &HPoint, q: &HPoint) -> String {
        let a = cayley(p.to_complex());
        let b = cayley(q.to_complex());
        let to0 = |w: Complex64| (w - a) / (Complex64::new(1.0, 0.0) - a.conj() * w);
        let back = |u: Complex64| (u + a) / (Complex64::new(1.0, 0.0) + a.conj() * u);
        let b0 = to0(b);
        let mut out = String::new();
        for k in 0..=16 {
            let w = back(b0 * (k as f64 / 16.0));
            let (x, y) = if self.disk {
                self.disk_xy(w)
            } else {
                // Inverse Cayley: z = i(1 + w)/(1 − w).
                let z = Complex64::i() * (Complex64::new(1.0, 0.0) + w) / (Complex64::new(1.0, 0.0) - w);
                self.plane_xy(z.re, z.im)
            };
            let _ = write!(out, "{}{} {}", if k == 0 { "M " } else { " L " }, num(x), num(y));
        }
        out
    }
}

pub fn svg(scene: &Scene, spec: &RenderSpec) -> String {
    let view = View::new(spec, scene);
    let s = num(spec.size);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">"
    );
    if spec.disk {
        let c = num(spec.size / 2.0);
        let _ = writeln!(
            out,
            "  <circle class=\"boundary\" cx=\"{c}\" cy=\"{c}\" r=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>",
            num(view.radius())
        );
    } else {
        let (x0, y0) = (MARGIN, spec.size - MARGIN);
        let _ = writeln!(
            out,
            "  <path class=\"boundary\" d=\"M {} {} L {} {}\" stroke=\"#000000\" stroke-width=\"1\"/>",
            num(x0),
            num(y0),
            num(spec.size - MARGIN),
            num(y0)
        );
    }
    if spec.triangles {
        for g in &scene.triangle_sides {
            let _ = writeln!(
                out,
                "  <path class=\"geodesic triangle\" d=\"{}\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"{}\"/>",
                view.geodesic_path(g),
                num(spec.stroke_width)
            );
        }
    }
    if spec.leaves {
        for g in &scene.leaves {
            let _ = writeln!(
                out,
                "  <path class=\"geodesic leaf\" d=\"{}\" fill=\"none\" stroke=\"#b22222\" stroke-width=\"{}\"/>",
                view.geodesic_path(g),
                num(spec.leaf_stroke_width)
            );
        }
    }
    if spec.arcs {
        for (p, q) in &scene.segments {
            let _ = writeln!(
                out,
                "  <path class=\"arc\" d=\"{}\" fill=\"none\" stroke=\"#2e8b57\" stroke-width=\"{}\"/>",
                view.segment_path(p, q),
                num(spec.stroke_width)
            );
        }
    }
    if spec.tangency_points {
        for p in &scene.points {
            let (x, y) = view.point(p);
            let _ = writeln!(out, "  <circle class=\"tangency\" cx=\"{}\" cy=\"{}\" r=\"2.5000\" fill=\"#000000\"/>", num(x), num(y));
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_fixes_conventions() {
        assert!(cayley(Complex64::i()).norm() < 1e-15);
        let w = cayley_boundary(&BoundaryPoint::from_real(0.0));
        assert!((w - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(cayley_boundary(&BoundaryPoint::INFINITY), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn diameters_are_lines() {
        let spec = RenderSpec::default();
        let view = View::new(&spec, &Scene::default());
        let d = view.geodesic_path(&Geodesic::imaginary_axis());
        assert!(d.contains(" L "), "{d}");
        let d = view.geodesic_path(&Geodesic::from_reals(1.0, 2.0).unwrap());
        assert!(d.contains(" A "), "{d}");
    }

    #[test]
    fn empty_selection_is_rejected() {
        let spec = RenderSpec {
            triangles: false,
            leaves: false,
            ..RenderSpec::default()
        };
        assert!(spec.validate().is_err());
    }
}
