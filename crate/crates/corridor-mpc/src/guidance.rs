//! Guidance stage: arc-length reference paths, Frenet projection, corridor
//! constraint generation and the tactical parameter set consumed by the MPC.

use crate::geom::{ray_segment_intersection, wrap_angle, Point2};
use crate::world::PolygonalWorld;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum GuidanceError {
    #[error("reference path needs at least 2 distinct points")]
    InvalidPath,
    #[error("corridor collapse at step {step}: e_min {e_min} >= e_max {e_max}")]
    CorridorInfeasible { step: usize, e_min: f64, e_max: f64 },
    #[error("corridor is already at emergency level")]
    AlreadyRelaxed,
}

/// Arc-length-parameterized polyline. No smoothing is applied; the optimizer
/// downstream produces the smooth trajectory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReferencePath {
    vertices: Vec<Point2>,
    cumulative_arc_length: Vec<f64>,
    segment_headings: Vec<f64>,
}

/// Builds a reference path from polyline points. Duplicate consecutive points
/// are dropped; fewer than 2 survivors is an error.
pub fn build_reference(points: &[Point2]) -> Result<ReferencePath, GuidanceError> {
    let mut vertices: Vec<Point2> = Vec::with_capacity(points.len());
    for &p in points {
        if vertices.last().map_or(true, |&last| last.dist(p) > 1e-12) {
            vertices.push(p);
        }
    }
    if vertices.len() < 2 {
        return Err(GuidanceError::InvalidPath);
    }
    let mut cumulative = Vec::with_capacity(vertices.len());
    let mut headings = Vec::with_capacity(vertices.len() - 1);
    let mut acc = 0.0;
    cumulative.push(0.0);
    for w in vertices.windows(2) {
        let d = w[1] - w[0];
        acc += d.norm();
        cumulative.push(acc);
        headings.push(d.heading());
    }
    Ok(ReferencePath {
        vertices,
        cumulative_arc_length: cumulative,
        segment_headings: headings,
    })
}

impl ReferencePath {
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn cumulative_arc_length(&self) -> &[f64] {
        &self.cumulative_arc_length
    }

    pub fn segment_headings(&self) -> &[f64] {
        &self.segment_headings
    }

    pub fn total_length(&self) -> f64 {
        *self.cumulative_arc_length.last().unwrap()
    }

    /// Segment index containing arc length `s` (clamped to the path domain).
    fn segment_index(&self, s: f64) -> usize {
        let s = s.clamp(0.0, self.total_length());
        match self
            .cumulative_arc_length
            .binary_search_by(|c| c.total_cmp(&s))
        {
            Ok(i) => i.min(self.segment_headings.len() - 1),
            Err(i) => (i - 1).min(self.segment_headings.len() - 1),
        }
    }

    pub fn heading_at(&self, s: f64) -> f64 {
        self.segment_headings[self.segment_index(s)]
    }

    pub fn point_at(&self, s: f64) -> Point2 {
        let s = s.clamp(0.0, self.total_length());
        let i = self.segment_index(s);
        let ds = s - self.cumulative_arc_length[i];
        let dir = (self.vertices[i + 1] - self.vertices[i]).normalized();
        self.vertices[i] + dir * ds
    }

    /// Maps Frenet coordinates back to the plane (left of the path is positive e).
    pub fn unproject(&self, s: f64, e: f64) -> Point2 {
        let base = self.point_at(s);
        let h = self.heading_at(s);
        base + Point2::new(-h.sin(), h.cos()) * e
    }

    /// Appends a straight extension of `length` along `heading`, starting at the
    /// path end. Gives the corridor and disturbance a defined geometry past the
    /// stopping point so the final alignment is still driven by the reference.
    pub fn with_extension(&self, heading: f64, length: f64) -> ReferencePath {
        if length <= 0.0 {
            return self.clone();
        }
        let end = *self.vertices.last().unwrap();
        let mut pts = self.vertices.clone();
        pts.push(end + Point2::new(heading.cos(), heading.sin()) * length);
        build_reference(&pts).expect("extension keeps the path valid")
    }
}

/// Frenet-frame sample: arc length, signed lateral offset (left positive) and
/// the local reference heading.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrenetSample {
    pub s: f64,
    pub e: f64,
    pub heading_ref: f64,
}

/// Projects `p` onto the path, minimizing euclidean distance. At vertex corners
/// the closer adjacent segment wins; exact ties resolve to the earlier segment.
pub fn project_to_frenet(path: &ReferencePath, p: Point2) -> FrenetSample {
    let mut best = FrenetSample {
        s: 0.0,
        e: 0.0,
        heading_ref: path.segment_headings[0],
    };
    let mut best_dist = f64::INFINITY;
    for i in 0..path.segment_headings.len() {
        let a = path.vertices[i];
        let b = path.vertices[i + 1];
        let d = b - a;
        let len = d.norm();
        let dir = d * (1.0 / len);
        let t = ((p - a).dot(dir)).clamp(0.0, len);
        let foot = a + dir * t;
        let dist = p.dist(foot);
        if dist < best_dist {
            best_dist = dist;
            let off = p - foot;
            best = FrenetSample {
                s: path.cumulative_arc_length[i] + t,
                e: dir.cross(off),
                heading_ref: path.segment_headings[i],
            };
        }
    }
    best
}

/// Per-step heading change of the reference between consecutive sample stations,
/// wrapped to (-pi, pi]. Entry 0 is zero; entry k is the change from sample k-1
/// to sample k. Fed to the MPC as a known disturbance sequence.
pub fn reference_disturbance(path: &ReferencePath, samples: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(samples.len());
    for (k, &s) in samples.iter().enumerate() {
        if k == 0 {
            out.push(0.0);
        } else {
            out.push(wrap_angle(path.heading_at(s) - path.heading_at(samples[k - 1])));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Corridor
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelaxationLevel {
    Normal,
    Emergency,
}

impl std::fmt::Display for RelaxationLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RelaxationLevel::Normal => write!(f, "normal"),
            RelaxationLevel::Emergency => write!(f, "emergency"),
        }
    }
}

/// A lateral legal limit (e.g. a solid line) active over an arc-length range.
/// Positive `offset` clamps the left bound (e_max), negative clamps the right
/// bound (e_min). Legal lines are lifted at emergency level.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LegalLine {
    pub s_start: f64,
    pub s_end: f64,
    pub offset: f64,
}

/// Inputs for corridor construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorridorParams {
    /// default (legal) deviation bounds when nothing intrudes
    pub e_default_min: f64,
    pub e_default_max: f64,
    /// safety margin subtracted from obstacle-derived bounds
    pub margin: f64,
    #[serde(default)]
    pub legal_lines: Vec<LegalLine>,
}

/// Per-step lateral corridor around the reference. `e_*` bound the center,
/// `e_f_*` / `e_r_*` bound the front and rear contour points sampled at
/// `s_k + l_f` and `s_k - l_r`. The physical (obstacle-derived) component of
/// every bound is kept separately so relaxation can widen only legal clamps.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Corridor {
    pub e_min: Vec<f64>,
    pub e_max: Vec<f64>,
    pub e_f_min: Vec<f64>,
    pub e_f_max: Vec<f64>,
    pub e_r_min: Vec<f64>,
    pub e_r_max: Vec<f64>,
    pub relaxation_level: RelaxationLevel,
    /// sample stations s_k, one per prediction step
    pub samples: Vec<f64>,
    phys_min: [Vec<f64>; 3],
    phys_max: [Vec<f64>; 3],
    legal_min: Vec<f64>,
    legal_max: Vec<f64>,
}

impl Corridor {
    pub fn len(&self) -> usize {
        self.e_min.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e_min.is_empty()
    }

    /// Obstacle-derived bound components (center, front, rear), exposed for
    /// relaxation checks.
    pub fn physical_bounds(&self, kind: usize) -> (&[f64], &[f64]) {
        (&self.phys_min[kind], &self.phys_max[kind])
    }

    /// CSV dump: k, s, eMin, eMax, eFMin, eFMax, eRMin, eRMax, level.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,s,e_min,e_max,e_f_min,e_f_max,e_r_min,e_r_max,level\n");
        for k in 0..self.len() {
            out.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
                k,
                self.samples[k],
                self.e_min[k],
                self.e_max[k],
                self.e_f_min[k],
                self.e_f_max[k],
                self.e_r_min[k],
                self.e_r_max[k],
                self.relaxation_level,
            ));
        }
        out
    }
}

/// Orthogonal clearance from the path point at `s` to the nearest obstacle
/// boundary on the given side (`left` = positive e). Returns infinity when
/// nothing is hit within the world diagonal.
fn lateral_clearance(path: &ReferencePath, world: &PolygonalWorld, s: f64, left: bool) -> f64 {
    let origin = path.point_at(s);
    let h = path.heading_at(s);
    let normal = Point2::new(-h.sin(), h.cos());
    let dir = if left { normal } else { -normal };
    let mut best = f64::INFINITY;
    for poly in world.obstacles() {
        for (a, b) in poly.edges() {
            if let Some(t) = ray_segment_intersection(origin, dir, a, b) {
                best = best.min(t);
            }
        }
    }
    best
}

fn legal_bounds_at(params: &CorridorParams, s: f64) -> (f64, f64) {
    let mut lo = params.e_default_min;
    let mut hi = params.e_default_max;
    for line in &params.legal_lines {
        if s >= line.s_start && s <= line.s_end {
            if line.offset >= 0.0 {
                hi = hi.min(line.offset);
            } else {
                lo = lo.max(line.offset);
            }
        }
    }
    (lo, hi)
}

/// Builds the corridor for the given sample stations. For each step the default
/// (legal) bounds are superimposed with the orthogonal obstacle clearances minus
/// the safety margin; the front/rear bounds repeat the construction at
/// `s_k + l_f` and `s_k - l_r` (clamped to the path domain). A collapsed step
/// (e_min >= e_max) is reported as `CorridorInfeasible`.
pub fn build_corridor(
    path: &ReferencePath,
    world: &PolygonalWorld,
    params: &CorridorParams,
    samples: &[f64],
    l_f: f64,
    l_r: f64,
) -> Result<Corridor, GuidanceError> {
    let p = samples.len();
    let mut corridor = Corridor {
        e_min: Vec::with_capacity(p),
        e_max: Vec::with_capacity(p),
        e_f_min: Vec::with_capacity(p),
        e_f_max: Vec::with_capacity(p),
        e_r_min: Vec::with_capacity(p),
        e_r_max: Vec::with_capacity(p),
        relaxation_level: RelaxationLevel::Normal,
        samples: samples.to_vec(),
        phys_min: [Vec::new(), Vec::new(), Vec::new()],
        phys_max: [Vec::new(), Vec::new(), Vec::new()],
        legal_min: Vec::with_capacity(p),
        legal_max: Vec::with_capacity(p),
    };

    let total = path.total_length();
    for (k, &s_k) in samples.iter().enumerate() {
        let (legal_lo, legal_hi) = legal_bounds_at(params, s_k);
        corridor.legal_min.push(legal_lo);
        corridor.legal_max.push(legal_hi);
        let stations = [s_k, (s_k + l_f).min(total), (s_k - l_r).max(0.0)];
        for (kind, &station) in stations.iter().enumerate() {
            let phys_hi = lateral_clearance(path, world, station, true) - params.margin;
            let phys_lo = -(lateral_clearance(path, world, station, false) - params.margin);
            corridor.phys_max[kind].push(phys_hi);
            corridor.phys_min[kind].push(phys_lo);
            let hi = legal_hi.min(phys_hi);
            let lo = legal_lo.max(phys_lo);
            match kind {
                0 => {
                    corridor.e_min.push(lo);
                    corridor.e_max.push(hi);
                }
                1 => {
                    corridor.e_f_min.push(lo);
                    corridor.e_f_max.push(hi);
                }
                _ => {
                    corridor.e_r_min.push(lo);
                    corridor.e_r_max.push(hi);
                }
            }
        }
        if corridor.e_min[k] >= corridor.e_max[k]
            || corridor.e_f_min[k] >= corridor.e_f_max[k]
            || corridor.e_r_min[k] >= corridor.e_r_max[k]
        {
            let (lo, hi) = (corridor.e_min[k], corridor.e_max[k]);
            return Err(GuidanceError::CorridorInfeasible {
                step: k,
                e_min: lo.max(corridor.e_f_min[k]).max(corridor.e_r_min[k]),
                e_max: hi.min(corridor.e_f_max[k]).min(corridor.e_r_max[k]),
            });
        }
    }
    Ok(corridor)
}

/// Returns the corridor widened to the per-step relaxed legal bounds wherever
/// the normal bound was the binding legal limit. Obstacle-derived bounds never
/// widen. Errors if the corridor is already at emergency level.
pub fn relax_corridor(c: &Corridor, legal_relaxed: &[(f64, f64)]) -> Result<Corridor, GuidanceError> {
    if c.relaxation_level == RelaxationLevel::Emergency {
        return Err(GuidanceError::AlreadyRelaxed);
    }
    assert_eq!(
        legal_relaxed.len(),
        c.len(),
        "relaxed legal bounds must cover every step"
    );
    let mut out = c.clone();
    out.relaxation_level = RelaxationLevel::Emergency;
    for k in 0..c.len() {
        let (lo, hi) = legal_relaxed[k];
        // relaxation may only widen: keep at least the normal legal envelope
        let lo = lo.min(c.legal_min[k]);
        let hi = hi.max(c.legal_max[k]);
        out.legal_min[k] = lo;
        out.legal_max[k] = hi;
        out.e_min[k] = lo.max(c.phys_min[0][k]);
        out.e_max[k] = hi.min(c.phys_max[0][k]);
        out.e_f_min[k] = lo.max(c.phys_min[1][k]);
        out.e_f_max[k] = hi.min(c.phys_max[1][k]);
        out.e_r_min[k] = lo.max(c.phys_min[2][k]);
        out.e_r_max[k] = hi.min(c.phys_max[2][k]);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Tactical parameters and degradation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComfortProfile {
    Passenger,
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Actuator {
    FrontSteer,
    RearSteer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegradationSource {
    Guidance,
    Stabilization,
}

/// Reported actuator capability reduction; scales are fractions of the nominal
/// angle and rate limits that remain available.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DegradationReport {
    pub affected_actuator: Actuator,
    pub angle_scale: f64,
    pub rate_scale: f64,
    pub source: DegradationSource,
}

/// Weights on the tracked outputs (side slip, yaw rate, heading error, lateral
/// deviation). The front/rear contour outputs carry no tracking weight.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OutputWeights {
    pub beta: f64,
    pub yaw_rate: f64,
    pub dpsi: f64,
    pub e: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AxleWeights {
    pub delta_f: f64,
    pub delta_r: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

impl Range {
    pub fn symmetric(v: f64) -> Self {
        Range { min: -v, max: v }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Range {
            min: self.min * factor,
            max: self.max * factor,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct StateBounds {
    pub beta: Range,
    pub yaw_rate: Range,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ActuationBounds {
    pub delta_f: Range,
    pub delta_r: Range,
    pub delta_f_rate: Range,
    pub delta_r_rate: Range,
}

/// Tactical parameter set handed from guidance to the MPC: cost weights, state
/// and actuation bounds, and the comfort profile that shaped them.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TacticalParameters {
    pub output_weights: OutputWeights,
    pub input_weights: AxleWeights,
    pub rate_weights: AxleWeights,
    pub state_bounds: StateBounds,
    pub actuation_bounds: ActuationBounds,
    pub comfort_profile: ComfortProfile,
}

impl TacticalParameters {
    pub fn validate(&self) -> Result<(), String> {
        let w = [
            self.output_weights.beta,
            self.output_weights.yaw_rate,
            self.output_weights.dpsi,
            self.output_weights.e,
            self.input_weights.delta_f,
            self.input_weights.delta_r,
            self.rate_weights.delta_f,
            self.rate_weights.delta_r,
        ];
        if w.iter().any(|&x| x < 0.0 || !x.is_finite()) {
            return Err("weights must be finite and >= 0".into());
        }
        for r in [
            self.state_bounds.beta,
            self.state_bounds.yaw_rate,
            self.actuation_bounds.delta_f,
            self.actuation_bounds.delta_r,
            self.actuation_bounds.delta_f_rate,
            self.actuation_bounds.delta_r_rate,
        ] {
            if !(r.min < r.max) {
                return Err(format!("bound range [{}, {}] must satisfy min < max", r.min, r.max));
            }
        }
        Ok(())
    }
}

/// Applies degradation reports and the comfort profile to a base parameter set.
/// Stabilization-sourced reports take priority over guidance-sourced reports for
/// the same actuator; multiple reports from the effective source combine to the
/// most restrictive scale. The passenger profile multiplies the yaw-rate output
/// weight and both rate weights by `comfort_factor`.
pub fn assemble_tactical(
    profile: ComfortProfile,
    degradations: &[DegradationReport],
    base: &TacticalParameters,
    comfort_factor: f64,
) -> TacticalParameters {
    let mut out = *base;
    out.comfort_profile = profile;

    for actuator in [Actuator::FrontSteer, Actuator::RearSteer] {
        let from = |src: DegradationSource| -> Option<(f64, f64)> {
            let mut best: Option<(f64, f64)> = None;
            for r in degradations
                .iter()
                .filter(|r| r.affected_actuator == actuator && r.source == src)
            {
                let cur = best.unwrap_or((1.0, 1.0));
                best = Some((cur.0.min(r.angle_scale), cur.1.min(r.rate_scale)));
            }
            best
        };
        // stabilization-level reports override guidance-level ones
        let scales = from(DegradationSource::Stabilization).or(from(DegradationSource::Guidance));
        if let Some((angle, rate)) = scales {
            match actuator {
                Actuator::FrontSteer => {
                    out.actuation_bounds.delta_f = base.actuation_bounds.delta_f.scaled(angle);
                    out.actuation_bounds.delta_f_rate =
                        base.actuation_bounds.delta_f_rate.scaled(rate);
                }
                Actuator::RearSteer => {
                    out.actuation_bounds.delta_r = base.actuation_bounds.delta_r.scaled(angle);
                    out.actuation_bounds.delta_r_rate =
                        base.actuation_bounds.delta_r_rate.scaled(rate);
                }
            }
        }
    }

    if profile == ComfortProfile::Passenger {
        out.output_weights.yaw_rate *= comfort_factor;
        out.rate_weights.delta_f *= comfort_factor;
        out.rate_weights.delta_r *= comfort_factor;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Rect;
    use approx::assert_relative_eq;

    fn straight_path(len: f64) -> ReferencePath {
        build_reference(&[Point2::new(0.0, 0.0), Point2::new(len, 0.0)]).unwrap()
    }

    #[test]
    fn reference_345_geometry() {
        let p = build_reference(&[
            Point2::new(0.0, 0.0),
            Point2::new(3.0, 0.0),
            Point2::new(3.0, 4.0),
        ])
        .unwrap();
        assert_eq!(p.cumulative_arc_length(), &[0.0, 3.0, 7.0]);
        assert_relative_eq!(p.segment_headings()[0], 0.0);
        assert_relative_eq!(p.segment_headings()[1], std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn reference_rejects_degenerate() {
        let p = build_reference(&[Point2::new(1.0, 1.0); 4]);
        assert!(matches!(p, Err(GuidanceError::InvalidPath)));
    }

    #[test]
    fn projection_axis_aligned() {
        let path = straight_path(10.0);
        let s = project_to_frenet(&path, Point2::new(3.0, 2.0));
        assert_relative_eq!(s.s, 3.0);
        assert_relative_eq!(s.e, 2.0);
        let on = project_to_frenet(&path, Point2::new(5.0, 0.0));
        assert_relative_eq!(on.e, 0.0);
    }

    #[test]
    fn disturbance_straight_and_corner() {
        let straight = straight_path(10.0);
        let d = reference_disturbance(&straight, &[0.0, 1.0, 2.0, 3.0]);
        assert!(d.iter().all(|&x| x == 0.0));

        let corner = build_reference(&[
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(4.0, 4.0),
        ])
        .unwrap();
        let d = reference_disturbance(&corner, &[0.0, 1.0, 2.0, 3.0, 5.0, 6.0]);
        assert_relative_eq!(d[4], std::f64::consts::FRAC_PI_2);
        assert!(d[..4].iter().all(|&x| x == 0.0));
        assert_eq!(d[5], 0.0);
    }

    #[test]
    fn corridor_defaults_only() {
        let path = straight_path(10.0);
        let world = PolygonalWorld::empty(Rect::from_corners(-20.0, -20.0, 20.0, 20.0));
        let params = CorridorParams {
            e_default_min: -2.0,
            e_default_max: 2.0,
            margin: 0.1,
            legal_lines: vec![],
        };
        let samples: Vec<f64> = (1..=5).map(|k| k as f64).collect();
        let c = build_corridor(&path, &world, &params, &samples, 0.5, 0.5).unwrap();
        assert!(c.e_min.iter().all(|&x| x == -2.0));
        assert!(c.e_max.iter().all(|&x| x == 2.0));
        assert!(c.e_f_max.iter().all(|&x| x == 2.0));
    }

    #[test]
    fn corridor_wall_clips_left_bound() {
        let path = straight_path(10.0);
        let wall = crate::geom::Polygon::new(vec![
            Point2::new(2.0, 1.0),
            Point2::new(8.0, 1.0),
            Point2::new(8.0, 2.0),
            Point2::new(2.0, 2.0),
        ])
        .unwrap();
        let world =
            PolygonalWorld::new(vec![wall], Rect::from_corners(-20.0, -20.0, 20.0, 20.0)).unwrap();
        let params = CorridorParams {
            e_default_min: -2.0,
            e_default_max: 2.0,
            margin: 0.2,
            legal_lines: vec![],
        };
        let c = build_corridor(&path, &world, &params, &[5.0], 0.5, 0.5).unwrap();
        assert_relative_eq!(c.e_max[0], 0.8, epsilon = 1e-12);
        assert_relative_eq!(c.e_min[0], -2.0, epsilon = 1e-12);
    }

    #[test]
    fn corridor_collapse_reported() {
        let path = straight_path(10.0);
        let wall = crate::geom::Polygon::new(vec![
            Point2::new(2.0, 0.05),
            Point2::new(8.0, 0.05),
            Point2::new(8.0, 2.0),
            Point2::new(2.0, 2.0),
        ])
        .unwrap();
        let world =
            PolygonalWorld::new(vec![wall], Rect::from_corners(-20.0, -20.0, 20.0, 20.0)).unwrap();
        let params = CorridorParams {
            e_default_min: -0.02,
            e_default_max: 2.0,
            margin: 0.1,
            legal_lines: vec![],
        };
        let r = build_corridor(&path, &world, &params, &[5.0], 0.5, 0.5);
        assert!(matches!(r, Err(GuidanceError::CorridorInfeasible { step: 0, .. })));
    }

    #[test]
    fn relax_lifts_legal_but_not_physical() {
        let path = straight_path(10.0);
        let wall = crate::geom::Polygon::new(vec![
            Point2::new(0.0, 3.0),
            Point2::new(10.0, 3.0),
            Point2::new(10.0, 4.0),
            Point2::new(0.0, 4.0),
        ])
        .unwrap();
        let world =
            PolygonalWorld::new(vec![wall], Rect::from_corners(-20.0, -20.0, 20.0, 20.0)).unwrap();
        let params = CorridorParams {
            e_default_min: -2.0,
            e_default_max: 2.0,
            margin: 0.1,
            legal_lines: vec![LegalLine {
                s_start: 0.0,
                s_end: 10.0,
                offset: 1.5,
            }],
        };
        let samples = [2.0, 5.0, 8.0];
        let c = build_corridor(&path, &world, &params, &samples, 0.5, 0.5).unwrap();
        assert!(c.e_max.iter().all(|&x| (x - 1.5).abs() < 1e-12));

        let relaxed = relax_corridor(&c, &[(-4.0, 4.0); 3]).unwrap();
        assert_eq!(relaxed.relaxation_level, RelaxationLevel::Emergency);
        // physical wall at +3.0 minus margin caps the lifted bound
        assert!(relaxed.e_max.iter().all(|&x| (x - 2.9).abs() < 1e-12));
        assert!(relaxed.e_min.iter().all(|&x| (x + 4.0).abs() < 1e-12));
        // physical components untouched
        for kind in 0..3 {
            assert_eq!(c.physical_bounds(kind), relaxed.physical_bounds(kind));
        }
        assert!(matches!(
            relax_corridor(&relaxed, &[(-4.0, 4.0); 3]),
            Err(GuidanceError::AlreadyRelaxed)
        ));
    }

    fn base_tactical() -> TacticalParameters {
        TacticalParameters {
            output_weights: OutputWeights {
                beta: 1.0,
                yaw_rate: 2.0,
                dpsi: 3.0,
                e: 4.0,
            },
            input_weights: AxleWeights {
                delta_f: 0.5,
                delta_r: 0.5,
            },
            rate_weights: AxleWeights {
                delta_f: 0.1,
                delta_r: 0.1,
            },
            state_bounds: StateBounds {
                beta: Range::symmetric(0.4),
                yaw_rate: Range::symmetric(2.0),
            },
            actuation_bounds: ActuationBounds {
                delta_f: Range::symmetric(10f64.to_radians()),
                delta_r: Range::symmetric(10f64.to_radians()),
                delta_f_rate: Range::symmetric(1.0),
                delta_r_rate: Range::symmetric(1.0),
            },
            comfort_profile: ComfortProfile::Empty,
        }
    }

    #[test]
    fn assemble_identity_without_degradations() {
        let base = base_tactical();
        let out = assemble_tactical(ComfortProfile::Empty, &[], &base, 4.0);
        assert_eq!(out.actuation_bounds.delta_r.max, base.actuation_bounds.delta_r.max);
        assert_eq!(out.output_weights.yaw_rate, base.output_weights.yaw_rate);
    }

    #[test]
    fn assemble_scales_rear_angle() {
        let base = base_tactical();
        let reports = [DegradationReport {
            affected_actuator: Actuator::RearSteer,
            angle_scale: 0.5,
            rate_scale: 1.0,
            source: DegradationSource::Guidance,
        }];
        let out = assemble_tactical(ComfortProfile::Empty, &reports, &base, 4.0);
        assert_relative_eq!(out.actuation_bounds.delta_r.max, 5f64.to_radians());
        assert_relative_eq!(out.actuation_bounds.delta_r.min, -(5f64.to_radians()));
    }

    #[test]
    fn stabilization_overrides_guidance() {
        let base = base_tactical();
        let reports = [
            DegradationReport {
                affected_actuator: Actuator::FrontSteer,
                angle_scale: 0.8,
                rate_scale: 0.8,
                source: DegradationSource::Guidance,
            },
            DegradationReport {
                affected_actuator: Actuator::FrontSteer,
                angle_scale: 0.3,
                rate_scale: 0.3,
                source: DegradationSource::Stabilization,
            },
        ];
        let out = assemble_tactical(ComfortProfile::Empty, &reports, &base, 4.0);
        assert_relative_eq!(out.actuation_bounds.delta_f.max, 0.3 * 10f64.to_radians());
        assert_relative_eq!(out.actuation_bounds.delta_f_rate.max, 0.3);
    }

    #[test]
    fn passenger_profile_scales_comfort_weights() {
        let base = base_tactical();
        let out = assemble_tactical(ComfortProfile::Passenger, &[], &base, 4.0);
        assert_relative_eq!(out.output_weights.yaw_rate, 8.0);
        assert_relative_eq!(out.rate_weights.delta_f, 0.4);
        assert_relative_eq!(out.output_weights.beta, 1.0);
    }
}
