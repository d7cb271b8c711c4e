//! JSON shape documents and SVG rendering.
//!
//! Documents look like
//!
//! ```json
//! { "kind": "fourier", "coeffs": [{ "k": 3, "a": 6.25e-3, "b": 0.0 }], "meta": { … } }
//! { "kind": "reuleaux_polygon", "vertices": [[x, y], …], "meta": { … } }
//! ```
//!
//! Every number is written with 17 significant digits, which round-trips
//! `f64` exactly.

use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::geometry::{unit_direction_derivative, Vec2};
use crate::shapes::ReuleauxPolygon;
use crate::support::{FourierWidthFunction, Harmonic, Shape, SupportFunction, SupportRep};
use crate::{Error, Result};

pub const GENERATOR: &str = "constwidth";
/// Pixels per unit length in rendered SVG.
pub const SVG_SCALE: f64 = 400.0;
pub const SVG_MARGIN: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub label: String,
    pub generator: String,
    pub version: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub k: u32,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeDocument {
    Fourier { coeffs: Vec<Coefficient>, meta: Meta },
    ReuleauxPolygon { vertices: Vec<[f64; 2]>, meta: Meta },
}

impl ShapeDocument {
    pub fn from_shape(shape: &Shape, generator: &str) -> Self {
        let meta = Meta {
            label: shape.label.clone(),
            generator: generator.to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
        };
        match &shape.rep {
            SupportRep::Fourier(f) => ShapeDocument::Fourier {
                coeffs: f.terms().iter().map(|t| Coefficient { k: t.k, a: t.a, b: t.b }).collect(),
                meta,
            },
            SupportRep::Piecewise(p) => ShapeDocument::ReuleauxPolygon {
                vertices: canonical_order(p.vertices()).into_iter().map(|v| [v.x, v.y]).collect(),
                meta,
            },
        }
    }

    pub fn meta(&self) -> &Meta {
        match self {
            ShapeDocument::Fourier { meta, .. } | ShapeDocument::ReuleauxPolygon { meta, .. } => meta,
        }
    }

    pub fn to_shape(&self) -> Result<Shape> {
        match self {
            ShapeDocument::Fourier { coeffs, meta } => {
                let f = FourierWidthFunction::new(coeffs.iter().map(|c| Harmonic::new(c.k, c.a, c.b)))?;
                Ok(Shape::fourier(f, meta.label.clone()))
            }
            ShapeDocument::ReuleauxPolygon { vertices, meta } => {
                let poly = ReuleauxPolygon::from_vertices(vertices.iter().map(|&[x, y]| Vec2::new(x, y)).collect())?;
                Ok(poly.into_shape(meta.label.clone()))
            }
        }
    }
}

/// Counterclockwise from the lexicographically smallest vertex.
fn canonical_order(mut v: Vec<Vec2>) -> Vec<Vec2> {
    let first = (0..v.len())
        .min_by(|&i, &j| v[i].x.total_cmp(&v[j].x).then(v[i].y.total_cmp(&v[j].y)))
        .unwrap_or(0);
    v.rotate_left(first);
    v
}

/// Pretty JSON with floats in `{:.16e}` form.
struct SignificantDigits<'a>(PrettyFormatter<'a>);

impl Formatter for SignificantDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn document_to_string(doc: &ShapeDocument) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SignificantDigits(PrettyFormatter::new()));
    doc.serialize(&mut ser).expect("documents contain only finite numbers and strings");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn serialize(shape: &Shape) -> String {
    serialize_with_generator(shape, GENERATOR)
}

pub fn serialize_with_generator(shape: &Shape, generator: &str) -> String {
    document_to_string(&ShapeDocument::from_shape(shape, generator))
}

pub fn parse_document(text: &str) -> Result<ShapeDocument> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

pub fn parse(text: &str) -> Result<Shape> {
    parse_document(text)?.to_shape()
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Decorations {
    /// Each angle draws the supporting lines with normals `u(θ)` and `−u(θ)`.
    pub support_lines: Vec<f64>,
    pub vertex_markers: bool,
}

fn px(p: Vec2) -> (f64, f64) {
    (p.x * SVG_SCALE, -p.y * SVG_SCALE)
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// SVG 1.1 drawing of the boundary, optionally with supporting-line pairs and
/// vertex markers. Reuleaux polygons are drawn with exact arc segments.
pub fn render_svg(shape: &Shape, samples: usize, decorations: &Decorations) -> Result<String> {
    if samples < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 samples, got {samples}")));
    }
    let thetas: Vec<f64> = (0..samples).map(|j| std::f64::consts::TAU * j as f64 / samples as f64).collect();
    let boundary: Vec<Vec2> = thetas.iter().map(|&t| shape.boundary_point(t)).collect();
    let reach = boundary.iter().map(|p| p.norm()).fold(0.0, f64::max).max(0.5);
    let half = reach * (1.0 + SVG_MARGIN) * SVG_SCALE;
    let size = 2.0 * half;

    let mut path = String::new();
    let mut vertices = Vec::new();
    match &shape.rep {
        SupportRep::Piecewise(p) => {
            vertices = canonical_order(p.vertices());
            let (x0, y0) = px(vertices[0]);
            write!(path, "M {} {}", fmt(x0), fmt(y0)).unwrap();
            let r = fmt(SVG_SCALE);
            for k in 1..=vertices.len() {
                let (x, y) = px(vertices[k % vertices.len()]);
                write!(path, " A {r} {r} 0 0 1 {} {}", fmt(x), fmt(y)).unwrap();
            }
        }
        SupportRep::Fourier(_) => {
            for (j, &b) in boundary.iter().enumerate() {
                let (x, y) = px(b);
                let cmd = if j == 0 { "M" } else { " L" };
                write!(path, "{cmd} {} {}", fmt(x), fmt(y)).unwrap();
            }
        }
    }
    path.push_str(" Z");

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{w}\" viewBox=\"{m} {m} {w} {w}\">",
        w = fmt(size),
        m = fmt(-half)
    )
    .unwrap();
    writeln!(out, "  <title>{}</title>", escape(&shape.label)).unwrap();
    writeln!(out, "  <path d=\"{path}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>").unwrap();

    for &theta in &decorations.support_lines {
        let dir = unit_direction_derivative(theta) * (2.0 * reach * (1.0 + SVG_MARGIN));
        for anchor in [shape.boundary_point(theta), shape.boundary_point(theta + std::f64::consts::PI)] {
            let (x1, y1) = px(anchor - dir);
            let (x2, y2) = px(anchor + dir);
            writeln!(
                out,
                "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"steelblue\" stroke-width=\"1\"/>",
                fmt(x1),
                fmt(y1),
                fmt(x2),
                fmt(y2)
            )
            .unwrap();
        }
    }
    if decorations.vertex_markers {
        for v in &vertices {
            let (x, y) = px(*v);
            writeln!(out, "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>", fmt(x), fmt(y)).unwrap();
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{disk, figure_one_shape, regular_reuleaux, reuleaux_triangle};

    #[test]
    fn disk_document_has_no_coefficients() {
        let doc = ShapeDocument::from_shape(&disk(Vec2::ZERO), GENERATOR);
        assert!(matches!(&doc, ShapeDocument::Fourier { coeffs, .. } if coeffs.is_empty()));
        let text = serialize(&disk(Vec2::ZERO));
        assert!(text.contains("\"kind\": \"fourier\""));
    }

    #[test]
    fn triangle_document_lists_the_three_vertices() {
        let text = serialize(&regular_reuleaux(3).unwrap().to_shape());
        let doc = parse_document(&text).unwrap();
        let ShapeDocument::ReuleauxPolygon { vertices, .. } = doc else { panic!("wrong kind") };
        assert_eq!(vertices.len(), 3);
        let s3 = 3f64.sqrt();
        let expected = [[0.5, 0.5 / s3], [-0.5, 0.5 / s3], [0.0, -1.0 / s3]];
        for e in expected {
            assert!(vertices.iter().any(|v| (v[0] - e[0]).abs() < 1e-15 && (v[1] - e[1]).abs() < 1e-15));
        }
    }

    #[test]
    fn numbers_use_seventeen_significant_digits() {
        let text = serialize(&figure_one_shape());
        assert!(text.contains("6.2500000000000003e-3"), "{text}");
    }

    #[test]
    fn round_trip_is_exact() {
        for s in [figure_one_shape(), reuleaux_triangle().to_shape(), regular_reuleaux(9).unwrap().to_shape()] {
            let back = parse(&serialize(&s)).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(parse("{"), Err(Error::Document(_))));
        assert!(matches!(
            parse(r#"{"kind":"fourier","coeffs":[{"k":2,"a":0.1,"b":0}],"meta":{"label":"","generator":"","version":""}}"#),
            Err(Error::EvenHarmonic(2))
        ));
        assert!(matches!(
            parse(r#"{"kind":"reuleaux_polygon","vertices":[[0,0],[0.5,0],[1,0]],"meta":{"label":"","generator":"","version":""}}"#),
            Err(Error::ConstraintViolation { .. })
        ));
    }

    #[test]
    fn heptagon_svg_has_seven_arcs() {
        let svg = render_svg(&regular_reuleaux(7).unwrap().to_shape(), 64, &Decorations::default()).unwrap();
        assert_eq!(svg.matches(" A ").count(), 7);
    }

    #[test]
    fn disk_svg_is_closed_sampled_path() {
        let svg = render_svg(&disk(Vec2::ZERO), 360, &Decorations::default()).unwrap();
        assert_eq!(svg.matches(" L ").count(), 359);
        assert!(svg.contains(" Z\""));
        assert!(svg.contains("viewBox=\"-220.0000 -220.0000 440.0000 440.0000\""));
        assert!(render_svg(&disk(Vec2::ZERO), 8, &Decorations::default()).is_err());
    }

    #[test]
    fn support_lines_and_markers() {
        let deco = Decorations { support_lines: vec![0.4, 1.7, 2.9], vertex_markers: true };
        let svg = render_svg(&figure_one_shape(), 256, &deco).unwrap();
        assert_eq!(svg.matches("<line").count(), 6);
        let svg = render_svg(&reuleaux_triangle().to_shape(), 64, &deco).unwrap();
        assert_eq!(svg.matches("<circle").count(), 3);
    }

    #[test]
    fn rendering_is_deterministic() {
        let s = figure_one_shape();
        let d = Decorations { support_lines: vec![0.4], vertex_markers: false };
        assert_eq!(render_svg(&s, 128, &d).unwrap(), render_svg(&s, 128, &d).unwrap());
    }
}
