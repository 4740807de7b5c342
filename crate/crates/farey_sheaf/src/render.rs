//! SVG pictures of the Farey tessellation, diagrams, trees and roller coasters.
//!
//! Geometry is generic over the float type; everything else in the crate is exact.
//! The disc model sends p/q to (2pq, p² − q²)/(p² + q²): ∞ sits at the top and
//! values increase anticlockwise. SVG output flips the y axis.

use crate::error::{Error, Result};
use crate::exact_numbers::ReducedFraction;
use crate::farey_geometry::{Endpoint, FareyDiagram, FareyTree, RollerCoaster, TreeNode};
use num_traits::Float;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

pub type Point64 = Point<f64>;
pub type Point32 = Point<f32>;

impl<T: Float> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(self, k: T) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

/// Boundary point of a real value t (±∞ both land on the top).
pub fn disc_point_real<T: Float>(t: T) -> Point<T> {
    if t.is_infinite() {
        return Point::new(T::zero(), T::one());
    }
    let two = T::one() + T::one();
    let d = t * t + T::one();
    Point::new(two * t / d, (t * t - T::one()) / d)
}

pub fn disc_point<T: Float>(e: &Endpoint) -> Point<T> {
    match e {
        Endpoint::Rational(r) if r.is_infinite() => Point::new(T::zero(), T::one()),
        _ => disc_point_real(T::from(e.to_f64()).expect("finite value")),
    }
}

/// SVG sweep flag for the minor arc from p1 to p2 about `center` (math coordinates):
/// an anticlockwise turn reads as clockwise once y is flipped.
pub fn sweep_flag<T: Float>(p1: Point<T>, p2: Point<T>, center: Point<T>) -> u8 {
    if p1.sub(center).cross(p2.sub(center)) > T::zero() {
        0
    } else {
        1
    }
}

/// A hyperbolic geodesic between two boundary points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geodesic<T> {
    /// Endpoints are antipodal.
    Diameter { from: Point<T>, to: Point<T> },
    /// Circle centered at C = (P₁ + P₂)/(1 + P₁·P₂) with radius √(|C|² − 1).
    Arc { from: Point<T>, to: Point<T>, center: Point<T>, radius: T },
}

pub type Geodesic64 = Geodesic<f64>;
pub type Geodesic32 = Geodesic<f32>;

impl<T: Float> Geodesic<T> {
    pub fn through(p1: Point<T>, p2: Point<T>) -> Self {
        let denom = T::one() + p1.dot(p2);
        let eps = T::from(1e-12).unwrap_or_else(T::epsilon);
        if denom.abs() <= eps {
            return Geodesic::Diameter { from: p1, to: p2 };
        }
        let center = p1.add(p2).scale(T::one() / denom);
        let radius = (center.norm_sq() - T::one()).max(T::zero()).sqrt();
        Geodesic::Arc { from: p1, to: p2, center, radius }
    }

    pub fn endpoints(&self) -> (Point<T>, Point<T>) {
        match *self {
            Geodesic::Diameter { from, to } | Geodesic::Arc { from, to, .. } => (from, to),
        }
    }

    /// Largest deviation from meeting the unit circle at right angles: at each endpoint
    /// the arc's radius vector must be tangent to the circle, (P − C)·P = 0.
    pub fn orthogonality_defect(&self) -> T {
        match *self {
            Geodesic::Diameter { from, to } => from.cross(to).abs(),
            Geodesic::Arc { from, to, center, radius } => {
                let a = from.sub(center).dot(from).abs();
                let b = to.sub(center).dot(to).abs();
                let c = (center.norm_sq() - radius * radius - T::one()).abs();
                a.max(b).max(c)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Disc,
    UpperHalf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub model: Model,
    pub depth: usize,
    pub size_px: u32,
    pub stroke: String,
    pub stroke_width: f64,
    pub highlight: String,
    pub accent: String,
    pub background: String,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            model: Model::Disc,
            depth: 5,
            size_px: 600,
            stroke: "#444444".into(),
            stroke_width: 1.0,
            highlight: "#f2c14e".into(),
            accent: "#c0392b".into(),
            background: "#ffffff".into(),
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.depth == 0 || self.size_px < 64 {
            return Err(Error::invalid("render needs depth ≥ 1 and size_px ≥ 64"));
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            // Only whole-line comments: '#' also starts a colour.
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let bad = |what: &str| Error::Parse(format!("config line {}: bad {what} {v:?}", n + 1));
            match k {
                "model" => {
                    self.model = match v {
                        "disc" => Model::Disc,
                        "upper_half" => Model::UpperHalf,
                        _ => return Err(bad("model")),
                    }
                }
                "depth" => self.depth = v.parse().map_err(|_| bad("depth"))?,
                "size_px" => self.size_px = v.parse().map_err(|_| bad("size"))?,
                "stroke" => self.stroke = v.to_string(),
                "stroke_width" => self.stroke_width = v.parse().map_err(|_| bad("width"))?,
                "highlight" => self.highlight = v.to_string(),
                "accent" => self.accent = v.to_string(),
                "background" => self.background = v.to_string(),
                _ => return Err(Error::Parse(format!("config line {}: unknown key {k:?}", n + 1))),
            }
        }
        self.validate()
    }
}

/// What can be drawn.
#[derive(Clone, Debug)]
pub enum RenderObject {
    Tessellation,
    Diagram(FareyDiagram),
    Tree(FareyTree),
    Coaster(RollerCoaster),
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disc" => Ok(Model::Disc),
            "upper_half" => Ok(Model::UpperHalf),
            _ => Err(Error::UnsupportedObject(format!("model {s}"))),
        }
    }
}

/// The Farey triangles reachable from {0, 1, ∞} in fewer than `depth` edge crossings.
pub fn tessellation(depth: usize) -> Vec<[ReducedFraction; 3]> {
    let f = |p: i64, q: i64| ReducedFraction::new(p, q).expect("valid");
    let key = |t: &[ReducedFraction; 3]| {
        let mut k = t.clone();
        k.sort();
        k
    };
    let start = [f(0, 1), f(1, 1), f(1, 0)];
    let mut seen: HashSet<[ReducedFraction; 3]> = HashSet::from([key(&start)]);
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([(start, 1usize)]);
    while let Some((t, d)) = queue.pop_front() {
        if d >= depth {
            continue;
        }
        for i in 0..3 {
            let (a, b, c) = (&t[i], &t[(i + 1) % 3], &t[(i + 2) % 3]);
            // Across edge ab the other triangle's apex is a ± b, whichever is not c.
            let plus = ReducedFraction::new(a.numer() + b.numer(), a.denom() + b.denom());
            let minus = ReducedFraction::new(a.numer() - b.numer(), a.denom() - b.denom());
            let apex = match (plus, minus) {
                (Ok(p), Ok(m)) => {
                    if &p == c {
                        m
                    } else {
                        p
                    }
                }
                (Ok(p), Err(_)) | (Err(_), Ok(p)) => p,
                _ => continue,
            };
            let n = [a.clone(), b.clone(), apex];
            if seen.insert(key(&n)) {
                out.push(n.clone());
                queue.push_back((n, d + 1));
            }
        }
    }
    out
}

/// The SVG document together with every geodesic it draws, in the coordinates of
/// the model: the unit disc, or the upper half-plane with boundary y = 0.
#[derive(Clone, Debug)]
pub struct Rendered<T> {
    pub svg: String,
    pub geodesics: Vec<Geodesic<T>>,
    /// Triangles filled as highlights, in drawing order.
    pub highlighted: Vec<[ReducedFraction; 3]>,
}

struct Canvas<'a, T> {
    spec: &'a RenderSpec,
    body: String,
    geodesics: Vec<Geodesic<T>>,
}

fn num<T: Float>(x: T) -> String {
    let v = x.to_f64().unwrap_or(0.0);
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

impl<'a, T: Float> Canvas<'a, T> {
    fn new(spec: &'a RenderSpec) -> Self {
        Self { spec, body: String::new(), geodesics: Vec::new() }
    }

    fn half(&self) -> T {
        T::from(self.spec.size_px as f64 / 2.0).expect("size")
    }

    /// Math coordinates to SVG pixels.
    fn px(&self, p: Point<T>) -> (String, String) {
        let h = self.half();
        match self.spec.model {
            Model::Disc => {
                let s = h * T::from(0.95).expect("const");
                (num(h + p.x * s), num(h - p.y * s))
            }
            Model::UpperHalf => {
                // Window [-2, 3] × [0, 2.5].
                let s = T::from(self.spec.size_px as f64 / 5.0).expect("size");
                let two = T::from(2.0).expect("const");
                let base = T::from(self.spec.size_px as f64 * 0.9).expect("size");
                (num((p.x + two) * s), num(base - p.y * s))
            }
        }
    }

    fn scale(&self) -> T {
        match self.spec.model {
            Model::Disc => self.half() * T::from(0.95).expect("const"),
            Model::UpperHalf => T::from(self.spec.size_px as f64 / 5.0).expect("size"),
        }
    }

    /// Path commands for the geodesic from a to b (without the leading move when `cont`).
    fn geodesic_path(&mut self, a: &Endpoint, b: &Endpoint, cont: bool) -> String {
        let mut d = String::new();
        match self.spec.model {
            Model::Disc => {
                let (p1, p2) = (disc_point::<T>(a), disc_point::<T>(b));
                let g = Geodesic::through(p1, p2);
                self.geodesics.push(g);
                let (x1, y1) = self.px(p1);
                let (x2, y2) = self.px(p2);
                if !cont {
                    let _ = write!(d, "M {x1} {y1} ");
                }
                match g {
                    Geodesic::Diameter { .. } => {
                        let _ = write!(d, "L {x2} {y2} ");
                    }
                    Geodesic::Arc { center, radius, .. } => {
                        let sweep = sweep_flag(p1, p2, center);
                        let r = num(radius * self.scale());
                        let _ = write!(d, "A {r} {r} 0 0 {sweep} {x2} {y2} ");
                    }
                }
            }
            Model::UpperHalf => {
                let big = T::from(2.5).expect("const");
                let xa = T::from(a.to_f64()).unwrap_or(T::infinity());
                let xb = T::from(b.to_f64()).unwrap_or(T::infinity());
                let pa = if xa.is_finite() { Point::new(xa, T::zero()) } else { Point::new(xb, big) };
                let pb = if xb.is_finite() { Point::new(xb, T::zero()) } else { Point::new(xa, big) };
                let (x1, y1) = self.px(pa);
                let (x2, y2) = self.px(pb);
                if !cont {
                    let _ = write!(d, "M {x1} {y1} ");
                }
                if xa.is_finite() && xb.is_finite() {
                    let two = T::one() + T::one();
                    let center = Point::new((xa + xb) / two, T::zero());
                    let radius = (xb - xa).abs() / two;
                    self.geodesics.push(Geodesic::Arc { from: pa, to: pb, center, radius });
                    let sweep = if xa < xb { 1 } else { 0 };
                    let r = num(radius * self.scale());
                    let _ = write!(d, "A {r} {r} 0 0 {sweep} {x2} {y2} ");
                } else {
                    self.geodesics.push(Geodesic::Diameter { from: pa, to: pb });
                    let _ = write!(d, "L {x2} {y2} ");
                }
            }
        }
        d
    }

    fn edge(&mut self, a: &ReducedFraction, b: &ReducedFraction, color: &str, width: f64) {
        let d = self.geodesic_path(&Endpoint::Rational(a.clone()), &Endpoint::Rational(b.clone()), false);
        let _ = writeln!(self.body, r#"<path d="{}" fill="none" stroke="{color}" stroke-width="{width:.3}"/>"#, d.trim_end());
    }

    fn triangle(&mut self, t: &[ReducedFraction; 3], fill: &str) {
        let e: Vec<Endpoint> = t.iter().cloned().map(Endpoint::Rational).collect();
        let mut d = self.geodesic_path(&e[0], &e[1], false);
        d += &self.geodesic_path(&e[1], &e[2], true);
        d += &self.geodesic_path(&e[2], &e[0], true);
        let _ = writeln!(self.body, r#"<path d="{}Z" fill="{fill}" fill-opacity="0.6" stroke="none"/>"#, d);
    }

    fn frame(&mut self) {
        let h = self.half();
        match self.spec.model {
            Model::Disc => {
                let r = num(self.scale());
                let c = num(h);
                let _ = writeln!(self.body, r#"<circle cx="{c}" cy="{c}" r="{r}" fill="none" stroke="{}" stroke-width="{:.3}"/>"#, self.spec.stroke, self.spec.stroke_width * 1.5);
            }
            Model::UpperHalf => {
                let y = num(T::from(self.spec.size_px as f64 * 0.9).expect("size"));
                let _ = writeln!(self.body, r#"<line x1="0" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="{:.3}"/>"#, self.spec.size_px, self.spec.stroke, self.spec.stroke_width * 1.5);
            }
        }
    }

    fn tessellation(&mut self, depth: usize) {
        let mut edges = BTreeSet::new();
        for t in tessellation(depth) {
            for i in 0..3 {
                let (a, b) = (t[i].clone(), t[(i + 1) % 3].clone());
                edges.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
        let (stroke, w) = (self.spec.stroke.clone(), self.spec.stroke_width);
        for (a, b) in edges {
            self.edge(&a, &b, &stroke, w);
        }
    }

    fn dot(&mut self, p: Point<T>, color: &str, title: &str) {
        let (x, y) = self.px(p);
        let _ = writeln!(self.body, r#"<circle cx="{x}" cy="{y}" r="3" fill="{color}"><title>{title}</title></circle>"#);
    }

    fn finish(self, highlighted: Vec<[ReducedFraction; 3]>) -> Rendered<T> {
        let n = self.spec.size_px;
        let svg = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{n}\" height=\"{n}\" viewBox=\"0 0 {n} {n}\">\n<rect width=\"{n}\" height=\"{n}\" fill=\"{}\"/>\n{}</svg>\n",
            self.spec.background, self.body
        );
        Rendered { svg, geodesics: self.geodesics, highlighted }
    }
}

fn tree_edges(node: &TreeNode, out: &mut Vec<(ReducedFraction, ReducedFraction)>) {
    for c in &node.children {
        out.push((node.vertex.clone(), c.vertex.clone()));
        tree_edges(c, out);
    }
}

fn coaster_svg<T: Float>(spec: &RenderSpec, rc: &RollerCoaster) -> Rendered<T> {
    // Lattice plot: p/q at (−p, q); rays through the origin have slope direction −1/θ.
    let mut c: Canvas<'_, T> = Canvas::new(spec);
    let pts: Vec<(f64, f64)> = rc.vertices.iter().map(|v| (-v.to_f64_parts().0, v.to_f64_parts().1)).collect();
    let max = pts.iter().fold(1.0f64, |m, &(x, y)| m.max(x.abs()).max(y.abs())) * 1.1;
    let n = spec.size_px as f64;
    let map = |x: f64, y: f64| (format!("{:.6}", n / 2.0 + x / max * n * 0.45), format!("{:.6}", n * 0.95 - y / max * n * 0.9));
    let theta = rc.theta.to_f64();
    let (x0, y0) = map(0.0, 0.0);
    let (x1, y1) = map(-theta * max / theta.abs().max(1.0), max / theta.abs().max(1.0));
    let _ = writeln!(c.body, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="{}" stroke-dasharray="6 4" stroke-width="{:.3}"/>"#, spec.accent, spec.stroke_width);
    for e in &rc.edges {
        let (a, b) = (e.from.to_f64_parts(), e.to.to_f64_parts());
        let (xa, ya) = map(-a.0, a.1);
        let (xb, yb) = map(-b.0, b.1);
        let _ = writeln!(c.body, r#"<line x1="{xa}" y1="{ya}" x2="{xb}" y2="{yb}" stroke="{}" stroke-width="{:.3}"><title>{} -&gt; {} : {}</title></line>"#, spec.stroke, spec.stroke_width, e.from, e.to, e.label);
    }
    for (v, &(x, y)) in rc.vertices.iter().zip(&pts) {
        let (px, py) = map(x, y);
        let _ = writeln!(c.body, r#"<circle cx="{px}" cy="{py}" r="3" fill="{}"><title>{v}</title></circle>"#, spec.highlight);
    }
    c.finish(Vec::new())
}

/// Renders an object as a deterministic SVG document.
pub fn render_svg<T: Float>(spec: &RenderSpec, object: &RenderObject) -> Result<Rendered<T>> {
    spec.validate()?;
    match object {
        RenderObject::Tessellation => {
            let mut c = Canvas::new(spec);
            c.frame();
            c.tessellation(spec.depth);
            Ok(c.finish(Vec::new()))
        }
        RenderObject::Diagram(d) => {
            let mut c = Canvas::new(spec);
            let tris: Vec<[ReducedFraction; 3]> = d.triangles.iter().map(|t| t.vertices.vertices().clone()).collect();
            let fill = spec.highlight.clone();
            for t in &tris {
                c.triangle(t, &fill);
            }
            c.frame();
            c.tessellation(spec.depth);
            let th = Endpoint::Irrational(d.theta.clone());
            if spec.model == Model::Disc {
                let (a, b) = (disc_point::<T>(&d.r), disc_point::<T>(&th));
                let ((x1, y1), (x2, y2)) = (c.px(a), c.px(b));
                let _ = writeln!(c.body, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{}" stroke-dasharray="6 4" stroke-width="{:.3}"/>"#, spec.accent, spec.stroke_width);
                c.dot(b, &spec.accent, "theta");
            }
            Ok(c.finish(tris))
        }
        RenderObject::Tree(t) => {
            let mut c = Canvas::new(spec);
            c.frame();
            c.tessellation(spec.depth);
            let mut edges = Vec::new();
            tree_edges(&t.root, &mut edges);
            let accent = spec.accent.clone();
            for (a, b) in &edges {
                c.edge(a, b, &accent, spec.stroke_width * 2.0);
            }
            Ok(c.finish(Vec::new()))
        }
        RenderObject::Coaster(rc) => Ok(coaster_svg(spec, rc)),
    }
}

/// Parses the object name used on the command line.
pub fn object_kind(name: &str) -> Result<&'static str> {
    match name {
        "tessellation" => Ok("tessellation"),
        "diagram" => Ok("diagram"),
        "tree" => Ok("tree"),
        "coaster" => Ok("coaster"),
        other => Err(Error::UnsupportedObject(other.to_string())),
    }
}

trait Parts {
    fn to_f64_parts(&self) -> (f64, f64);
}

impl Parts for ReducedFraction {
    fn to_f64_parts(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.numer().to_f64().unwrap_or(f64::NAN), self.denom().to_f64().unwrap_or(f64::NAN))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_numbers::IrrationalNumber;
    use crate::farey_geometry::{farey_diagram, farey_tree, roller_coaster};
    use proptest::prelude::*;

    fn fr(s: &str) -> ReducedFraction {
        s.parse().unwrap()
    }

    #[test]
    fn boundary_placement() {
        let p = |s: &str| disc_point::<f64>(&Endpoint::Rational(fr(s)));
        assert_eq!(p("1/0"), Point::new(0.0, 1.0));
        assert_eq!(p("0"), Point::new(0.0, -1.0));
        assert_eq!(p("1"), Point::new(1.0, 0.0));
        assert_eq!(p("-1"), Point::new(-1.0, 0.0));
        // Anticlockwise: 0 → 1 → ∞ turns positively.
        assert!(p("0").cross(p("1")) > 0.0 && p("1").cross(p("1/0")) > 0.0);
    }

    #[test]
    fn depth_one_is_the_base_triangle() {
        let t = tessellation(1);
        assert_eq!(t.len(), 1);
        let r = render_svg::<f64>(&RenderSpec { depth: 1, ..Default::default() }, &RenderObject::Tessellation).unwrap();
        assert_eq!(r.geodesics.len(), 3);
        let ends: Vec<_> = r.geodesics.iter().map(|g| g.endpoints()).collect();
        for pair in [("0", "1"), ("1", "1/0"), ("0", "1/0")] {
            let (a, b) = (disc_point::<f64>(&Endpoint::Rational(fr(pair.0))), disc_point(&Endpoint::Rational(fr(pair.1))));
            assert!(ends.iter().any(|&(x, y)| (x == a && y == b) || (x == b && y == a)));
        }
        // 0 and ∞ are antipodal.
        assert!(r.geodesics.iter().any(|g| matches!(g, Geodesic::Diameter { .. })));
    }

    #[test]
    fn tessellation_triangles_are_farey() {
        let ts = tessellation(6);
        for t in &ts {
            assert!(t[0].is_farey_neighbor(&t[1]) && t[1].is_farey_neighbor(&t[2]) && t[0].is_farey_neighbor(&t[2]));
        }
        let uniq: HashSet<_> = ts
            .iter()
            .map(|t| {
                let mut k = t.clone();
                k.sort();
                k
            })
            .collect();
        assert_eq!(uniq.len(), ts.len());
        // Binary growth: 1 + 3 + 6 + 12 + …
        assert_eq!(ts.len(), 1 + 3 * ((1 << 5) - 1));
    }

    #[test]
    fn arcs_are_orthogonal_and_output_deterministic() {
        let g: IrrationalNumber = "[1;(1)]".parse().unwrap();
        let spec = RenderSpec { depth: 7, ..Default::default() };
        let d = farey_diagram(&g, &Endpoint::Rational(ReducedFraction::infinity()), 6).unwrap();
        for obj in [RenderObject::Tessellation, RenderObject::Diagram(d), RenderObject::Tree(farey_tree(&g, &fr("2"), 4).unwrap())] {
            let a = render_svg::<f64>(&spec, &obj).unwrap();
            let b = render_svg::<f64>(&spec, &obj).unwrap();
            assert_eq!(a.svg, b.svg);
            for geo in &a.geodesics {
                assert!(geo.orthogonality_defect() < 1e-6, "{geo:?}");
            }
        }
    }

    #[test]
    fn highlighted_strip_is_connected() {
        let g: IrrationalNumber = "[1;(1)]".parse().unwrap();
        let d = farey_diagram(&g, &Endpoint::Rational(ReducedFraction::infinity()), 6).unwrap();
        let r = render_svg::<f64>(&RenderSpec::default(), &RenderObject::Diagram(d)).unwrap();
        assert_eq!(r.highlighted.len(), 6);
        for w in r.highlighted.windows(2) {
            assert_eq!(w[0].iter().filter(|v| w[1].contains(v)).count(), 2);
        }
    }

    #[test]
    fn f32_geometry_agrees() {
        let spec = RenderSpec { depth: 4, ..Default::default() };
        let a = render_svg::<f32>(&spec, &RenderObject::Tessellation).unwrap();
        let b = render_svg::<f64>(&spec, &RenderObject::Tessellation).unwrap();
        assert_eq!(a.geodesics.len(), b.geodesics.len());
        assert!(a.geodesics.iter().all(|g| g.orthogonality_defect() < 1e-4));
    }

    #[test]
    fn config_and_other_models() {
        let mut spec = RenderSpec::default();
        spec.apply_config("# style\nmodel = upper_half\ndepth=3\nstroke = #000\nsize_px=200\n").unwrap();
        assert_eq!(spec.model, Model::UpperHalf);
        assert_eq!(spec.depth, 3);
        assert_eq!(spec.stroke, "#000");
        assert!(spec.clone().apply_config("size_px = 10").is_err());
        assert!(spec.clone().apply_config("colour = red").is_err());
        let r = render_svg::<f64>(&spec, &RenderObject::Tessellation).unwrap();
        assert!(r.svg.starts_with("<svg"));
        let g: IrrationalNumber = "[1;(1)]".parse().unwrap();
        let rc = roller_coaster(&g, 4).unwrap();
        let svg = render_svg::<f64>(&RenderSpec::default(), &RenderObject::Coaster(rc)).unwrap().svg;
        assert!(svg.contains("stroke-dasharray"));
        assert!(matches!(object_kind("sphere"), Err(Error::UnsupportedObject(_))));
    }

    proptest! {
        #[test]
        fn sweep_matches_svg_center_rule(a in -50f64..50.0, b in -50f64..50.0) {
            // For large-arc = 0 the SVG center sits at chord midpoint + k·(−dy, dx) with k > 0
            // exactly when sweep = 1 (screen coordinates, y down).
            prop_assume!((a - b).abs() > 1e-3);
            if let Geodesic::Arc { from, to, center, .. } = Geodesic::through(disc_point_real(a), disc_point_real(b)) {
                let s = |p: Point64| Point::new(p.x, -p.y);
                let d = s(to).sub(s(from));
                let mid = s(from).add(s(to)).scale(0.5);
                let side = s(center).sub(mid).dot(Point::new(-d.y, d.x));
                prop_assert_eq!(sweep_flag(from, to, center), if side > 0.0 { 1 } else { 0 });
            }
        }

        #[test]
        fn geodesic_orthogonal(a in -1e3f64..1e3, b in -1e3f64..1e3) {
            prop_assume!((a - b).abs() > 1e-3);
            let g = Geodesic::through(disc_point_real(a), disc_point_real(b));
            prop_assert!(g.orthogonality_defect() < 1e-6);
        }
    }
}
