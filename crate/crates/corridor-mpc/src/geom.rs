//! Planar geometry primitives shared by the planning modules.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Absolute tolerance for geometric predicates (meters / square meters).
pub const GEOM_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product, positive when `o` is counter-clockwise from `self`.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Point2 {
        let n = self.norm();
        if n < GEOM_EPS {
            Point2::new(0.0, 0.0)
        } else {
            Point2::new(self.x / n, self.y / n)
        }
    }

    /// Perpendicular pointing to the left of this direction.
    pub fn perp_left(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn heading(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Wraps an angle to the interval (-pi, pi].
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut r = a.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}

/// Absolute angle in [0, pi] between a heading and a direction vector.
pub fn angle_between(heading: f64, dir: Point2) -> f64 {
    wrap_angle(dir.heading() - heading).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min: Point2,
    pub max: Point2,
}

impl Rect {
    pub fn new(min: Point2, max: Point2) -> Self {
        Rect { min, max }
    }

    pub fn from_corners(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Rect {
            min: Point2::new(x0.min(x1), y0.min(y1)),
            max: Point2::new(x0.max(x1), y0.max(y1)),
        }
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.x >= self.min.x - GEOM_EPS
            && p.x <= self.max.x + GEOM_EPS
            && p.y >= self.min.y - GEOM_EPS
            && p.y <= self.max.y + GEOM_EPS
    }

    pub fn expand(&self, d: f64) -> Rect {
        Rect {
            min: self.min - Point2::new(d, d),
            max: self.max + Point2::new(d, d),
        }
    }

    pub fn union(&self, other: &Rect) -> Rect {
        Rect {
            min: Point2::new(self.min.x.min(other.min.x), self.min.y.min(other.min.y)),
            max: Point2::new(self.max.x.max(other.max.x), self.max.y.max(other.max.y)),
        }
    }

    pub fn diagonal(&self) -> f64 {
        self.min.dist(self.max)
    }
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

/// Strict crossing: the open interiors of both segments intersect in a single point.
pub fn segments_properly_cross(p0: Point2, p1: Point2, q0: Point2, q1: Point2) -> bool {
    let d1 = orient(q0, q1, p0);
    let d2 = orient(q0, q1, p1);
    let d3 = orient(p0, p1, q0);
    let d4 = orient(p0, p1, q1);
    ((d1 > GEOM_EPS && d2 < -GEOM_EPS) || (d1 < -GEOM_EPS && d2 > GEOM_EPS))
        && ((d3 > GEOM_EPS && d4 < -GEOM_EPS) || (d3 < -GEOM_EPS && d4 > GEOM_EPS))
}

/// True when the two segments are collinear and overlap over a positive length.
pub fn segments_collinear_overlap(p0: Point2, p1: Point2, q0: Point2, q1: Point2) -> bool {
    if orient(p0, p1, q0).abs() > GEOM_EPS || orient(p0, p1, q1).abs() > GEOM_EPS {
        return false;
    }
    let d = p1 - p0;
    let len2 = d.dot(d);
    if len2 < GEOM_EPS * GEOM_EPS {
        return false;
    }
    let t0 = (q0 - p0).dot(d) / len2;
    let t1 = (q1 - p0).dot(d) / len2;
    let (lo, hi) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
    // positive-length overlap of [0,1] with [lo,hi]
    hi.min(1.0) - lo.max(0.0) > GEOM_EPS
}

/// Parameters t on (p0,p1) where the segment touches or crosses (q0,q1), if any.
/// Collinear overlaps are not reported here; use `segments_collinear_overlap`.
pub fn segment_touch_param(p0: Point2, p1: Point2, q0: Point2, q1: Point2) -> Option<f64> {
    let r = p1 - p0;
    let s = q1 - q0;
    let denom = r.cross(s);
    if denom.abs() < GEOM_EPS {
        return None;
    }
    let t = (q0 - p0).cross(s) / denom;
    let u = (q0 - p0).cross(r) / denom;
    let tol = 1e-12;
    if t >= -tol && t <= 1.0 + tol && u >= -tol && u <= 1.0 + tol {
        Some(t.clamp(0.0, 1.0))
    } else {
        None
    }
}

/// Nearest distance from `p` to segment (a, b).
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 < GEOM_EPS * GEOM_EPS {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(a + d * t)
}

/// Intersection of a ray (origin, unit direction) with segment (a, b); returns the
/// ray parameter `t >= 0` of the hit.
pub fn ray_segment_intersection(origin: Point2, dir: Point2, a: Point2, b: Point2) -> Option<f64> {
    let s = b - a;
    let denom = dir.cross(s);
    if denom.abs() < GEOM_EPS {
        return None;
    }
    let t = (a - origin).cross(s) / denom;
    let u = (a - origin).cross(dir) / denom;
    if t >= -GEOM_EPS && u >= -1e-12 && u <= 1.0 + 1e-12 {
        Some(t.max(0.0))
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

#[derive(Debug, thiserror::Error)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is self-intersecting")]
    SelfIntersecting,
    #[error("polygon has non-finite or duplicate vertices")]
    Degenerate,
}

/// Simple polygon with counter-clockwise vertex order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    /// Builds a simple polygon; clockwise input is reversed to counter-clockwise.
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self, PolygonError> {
        if vertices.len() < 3 {
            return Err(PolygonError::TooFewVertices(vertices.len()));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(PolygonError::Degenerate);
        }
        for i in 0..vertices.len() {
            let j = (i + 1) % vertices.len();
            if vertices[i].dist(vertices[j]) < GEOM_EPS {
                return Err(PolygonError::Degenerate);
            }
        }
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        let poly = Polygon { vertices };
        if !poly.is_simple() {
            return Err(PolygonError::SelfIntersecting);
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn bounding_box(&self) -> Rect {
        let mut min = self.vertices[0];
        let mut max = self.vertices[0];
        for v in &self.vertices {
            min.x = min.x.min(v.x);
            min.y = min.y.min(v.y);
            max.x = max.x.max(v.x);
            max.y = max.y.max(v.y);
        }
        Rect::new(min, max)
    }

    fn is_simple(&self) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let (a0, a1) = (self.vertices[i], self.vertices[(i + 1) % n]);
            for j in i + 1..n {
                let (b0, b1) = (self.vertices[j], self.vertices[(j + 1) % n]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    if segments_collinear_overlap(a0, a1, b0, b1) {
                        return false;
                    }
                } else if segments_properly_cross(a0, a1, b0, b1)
                    || segments_collinear_overlap(a0, a1, b0, b1)
                {
                    return false;
                }
            }
        }
        true
    }

    /// Classifies a point against the polygon with a boundary band of `GEOM_EPS`.
    pub fn contains(&self, p: Point2) -> Containment {
        for (a, b) in self.edges() {
            if point_segment_distance(p, a, b) <= GEOM_EPS {
                return Containment::Boundary;
            }
        }
        // even-odd crossing count, half-open on vertex y to avoid double counting
        let mut inside = false;
        let n = self.vertices.len();
        let mut j = n - 1;
        for i in 0..n {
            let vi = self.vertices[i];
            let vj = self.vertices[j];
            if (vi.y > p.y) != (vj.y > p.y) {
                let x_cross = vj.x + (p.y - vj.y) / (vi.y - vj.y) * (vi.x - vj.x);
                if p.x < x_cross {
                    inside = !inside;
                }
            }
            j = i;
        }
        if inside {
            Containment::Inside
        } else {
            Containment::Outside
        }
    }

    /// Offsets the polygon outward by `d` with mitered corners. The result contains
    /// the Minkowski sum of the polygon with a disc of radius `d`.
    pub fn offset(&self, d: f64) -> Polygon {
        if d.abs() < GEOM_EPS {
            return self.clone();
        }
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let prev = self.vertices[(i + n - 1) % n];
            let cur = self.vertices[i];
            let next = self.vertices[(i + 1) % n];
            // outward normals of the two edges meeting at cur (CCW: outward = right of direction)
            let n0 = -(cur - prev).normalized().perp_left();
            let n1 = -(next - cur).normalized().perp_left();
            let a0 = prev + n0 * d;
            let a1 = cur + n1 * d;
            let d0 = cur - prev;
            let d1 = next - cur;
            let denom = d0.cross(d1);
            if denom.abs() < GEOM_EPS {
                out.push(cur + n0 * d);
            } else {
                let t = (a1 - a0).cross(d1) / denom;
                out.push(a0 + d0 * t);
            }
        }
        // mitered offsets of valid polygons stay simple for the modest inflations
        // used here; fall back to vertex translation if the miter degenerated
        Polygon::new(out).unwrap_or_else(|_| {
            let moved = self
                .vertices
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let prev = self.vertices[(i + self.vertices.len() - 1) % self.vertices.len()];
                    let next = self.vertices[(i + 1) % self.vertices.len()];
                    let n0 = -(v - prev).normalized().perp_left();
                    let n1 = -(next - v).normalized().perp_left();
                    v + (n0 + n1).normalized() * d
                })
                .collect();
            Polygon::new(moved).expect("offset fallback produced degenerate polygon")
        })
    }
}

fn signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        acc += a.cross(b);
    }
    0.5 * acc
}

/// True iff the open segment (p0, p1) intersects the interior of the polygon.
/// Endpoints resting on the boundary (e.g. shared vertices) do not count, but a
/// collinear run along an edge does.
pub fn segment_intersects_polygon_interior(p0: Point2, p1: Point2, poly: &Polygon) -> bool {
    for (a, b) in poly.edges() {
        if segments_properly_cross(p0, p1, a, b) {
            return true;
        }
        if segments_collinear_overlap(p0, p1, a, b) {
            return true;
        }
    }
    // No proper crossing: the segment can still run through the interior by
    // entering via vertices. Classify the midpoints between consecutive
    // boundary touches.
    let mut params = vec![0.0, 1.0];
    for (a, b) in poly.edges() {
        if let Some(t) = segment_touch_param(p0, p1, a, b) {
            params.push(t);
        }
    }
    params.sort_by(f64::total_cmp);
    let dir = p1 - p0;
    for w in params.windows(2) {
        if w[1] - w[0] < 1e-9 {
            continue;
        }
        let mid = p0 + dir * (0.5 * (w[0] + w[1]));
        if poly.contains(mid) == Containment::Inside {
            return true;
        }
    }
    false
}
