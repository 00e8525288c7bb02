//! Static environment model: polygonal obstacle worlds, occupancy-grid ingestion
//! and the heading-penalized visibility-graph search that produces reference paths.

use crate::geom::{
    angle_between, segment_intersects_polygon_interior, wrap_angle, Containment, Point2, Polygon,
    Rect, GEOM_EPS,
};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum WorldError {
    #[error("invalid polygon: {0}")]
    Polygon(#[from] crate::geom::PolygonError),
    #[error("obstacle vertex {0:?} outside world bounds")]
    VertexOutsideBounds(Point2),
    #[error("start or goal lies inside an inflated obstacle")]
    InvalidQuery,
    #[error("goal is not reachable in the visibility graph")]
    NoPath,
    #[error("malformed occupancy grid: {0}")]
    BadGrid(String),
    #[error("pgm parse error: {0}")]
    BadPgm(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Planar pose; heading is normalized to (-pi, pi] on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose2 {
    pub x: f64,
    pub y: f64,
    heading: f64,
}

impl Pose2 {
    pub fn new(x: f64, y: f64, heading: f64) -> Self {
        assert!(
            x.is_finite() && y.is_finite() && heading.is_finite(),
            "pose components must be finite"
        );
        Pose2 {
            x,
            y,
            heading: wrap_angle(heading),
        }
    }

    pub fn heading(&self) -> f64 {
        self.heading
    }

    pub fn position(&self) -> Point2 {
        Point2::new(self.x, self.y)
    }

    /// Transforms a point from the pose-local frame into the world frame.
    pub fn transform(&self, local: Point2) -> Point2 {
        let (s, c) = self.heading.sin_cos();
        Point2::new(
            self.x + c * local.x - s * local.y,
            self.y + s * local.x + c * local.y,
        )
    }

    /// Inverse of `transform`.
    pub fn inverse_transform(&self, world: Point2) -> Point2 {
        let (s, c) = self.heading.sin_cos();
        let dx = world.x - self.x;
        let dy = world.y - self.y;
        Point2::new(c * dx + s * dy, -s * dx + c * dy)
    }
}

/// Static obstacles as simple polygons plus the axis-aligned planning bounds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonalWorld {
    obstacles: Vec<Polygon>,
    bounds: Rect,
}

impl PolygonalWorld {
    pub fn new(obstacles: Vec<Polygon>, bounds: Rect) -> Result<Self, WorldError> {
        for poly in &obstacles {
            for &v in poly.vertices() {
                if !bounds.contains(v) {
                    return Err(WorldError::VertexOutsideBounds(v));
                }
            }
        }
        Ok(PolygonalWorld { obstacles, bounds })
    }

    pub fn empty(bounds: Rect) -> Self {
        PolygonalWorld {
            obstacles: Vec::new(),
            bounds,
        }
    }

    pub fn obstacles(&self) -> &[Polygon] {
        &self.obstacles
    }

    pub fn bounds(&self) -> Rect {
        self.bounds
    }

    /// Offsets every obstacle outward; bounds grow to keep the inflated vertices inside.
    pub fn inflate(&self, d: f64) -> PolygonalWorld {
        let obstacles: Vec<Polygon> = self.obstacles.iter().map(|p| p.offset(d)).collect();
        let mut bounds = self.bounds;
        for poly in &obstacles {
            bounds = bounds.union(&poly.bounding_box());
        }
        PolygonalWorld { obstacles, bounds }
    }

    pub fn contains_point(&self, p: Point2) -> Containment {
        let mut on_boundary = false;
        for poly in &self.obstacles {
            match poly.contains(p) {
                Containment::Inside => return Containment::Inside,
                Containment::Boundary => on_boundary = true,
                Containment::Outside => {}
            }
        }
        if on_boundary {
            Containment::Boundary
        } else {
            Containment::Outside
        }
    }
}

/// True iff the open segment (p0, p1) intersects any obstacle interior.
/// Shared endpoints at polygon vertices do not count, collinear runs along a
/// polygon edge do.
pub fn segment_intersects_world(p0: Point2, p1: Point2, world: &PolygonalWorld) -> bool {
    world
        .obstacles()
        .iter()
        .any(|poly| segment_intersects_polygon_interior(p0, p1, poly))
}

// ---------------------------------------------------------------------------
// Occupancy grids
// ---------------------------------------------------------------------------

/// Row-major boolean occupancy grid. Cell (ix, iy) covers the square
/// [ix, ix+1] x [iy, iy+1] scaled by `resolution` in the grid frame anchored
/// at `origin`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OccupancyGrid {
    pub origin: Pose2,
    pub resolution: f64,
    pub width: usize,
    pub height: usize,
    cells: Vec<bool>,
}

impl OccupancyGrid {
    pub fn new(origin: Pose2, resolution: f64, width: usize, height: usize) -> Result<Self, WorldError> {
        if resolution <= 0.0 {
            return Err(WorldError::BadGrid("resolution must be > 0".into()));
        }
        Ok(OccupancyGrid {
            origin,
            resolution,
            width,
            height,
            cells: vec![false; width * height],
        })
    }

    pub fn from_cells(
        origin: Pose2,
        resolution: f64,
        width: usize,
        height: usize,
        cells: Vec<bool>,
    ) -> Result<Self, WorldError> {
        if resolution <= 0.0 {
            return Err(WorldError::BadGrid("resolution must be > 0".into()));
        }
        if cells.len() != width * height {
            return Err(WorldError::BadGrid(format!(
                "cell count {} does not match {}x{}",
                cells.len(),
                width,
                height
            )));
        }
        Ok(OccupancyGrid {
            origin,
            resolution,
            width,
            height,
            cells,
        })
    }

    pub fn get(&self, ix: usize, iy: usize) -> bool {
        self.cells[iy * self.width + ix]
    }

    pub fn set(&mut self, ix: usize, iy: usize, occupied: bool) {
        self.cells[iy * self.width + ix] = occupied;
    }

    pub fn occupied_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn cell_center_world(&self, ix: usize, iy: usize) -> Point2 {
        self.origin.transform(Point2::new(
            (ix as f64 + 0.5) * self.resolution,
            (iy as f64 + 0.5) * self.resolution,
        ))
    }

    /// Loads a P2 (ascii) or P5 (binary) portable graymap. Pixels below 128 are
    /// occupied; the first pixel row maps to iy = 0.
    pub fn from_pgm_file(
        path: impl AsRef<Path>,
        origin: Pose2,
        resolution: f64,
    ) -> Result<Self, WorldError> {
        let bytes = std::fs::read(path)?;
        Self::from_pgm_bytes(&bytes, origin, resolution)
    }

    pub fn from_pgm_bytes(bytes: &[u8], origin: Pose2, resolution: f64) -> Result<Self, WorldError> {
        let mut cursor = 0usize;
        let mut token = || -> Result<String, WorldError> {
            // skip whitespace and '#' comments
            loop {
                while cursor < bytes.len() && bytes[cursor].is_ascii_whitespace() {
                    cursor += 1;
                }
                if cursor < bytes.len() && bytes[cursor] == b'#' {
                    while cursor < bytes.len() && bytes[cursor] != b'\n' {
                        cursor += 1;
                    }
                } else {
                    break;
                }
            }
            let start = cursor;
            while cursor < bytes.len() && !bytes[cursor].is_ascii_whitespace() {
                cursor += 1;
            }
            if start == cursor {
                return Err(WorldError::BadPgm("unexpected end of header".into()));
            }
            Ok(String::from_utf8_lossy(&bytes[start..cursor]).into_owned())
        };

        let magic = token()?;
        if magic != "P2" && magic != "P5" {
            return Err(WorldError::BadPgm(format!("unsupported magic {magic}")));
        }
        let width: usize = token()?
            .parse()
            .map_err(|_| WorldError::BadPgm("bad width".into()))?;
        let height: usize = token()?
            .parse()
            .map_err(|_| WorldError::BadPgm("bad height".into()))?;
        let maxval: u32 = token()?
            .parse()
            .map_err(|_| WorldError::BadPgm("bad maxval".into()))?;
        if maxval == 0 || maxval > 255 {
            return Err(WorldError::BadPgm(format!("unsupported maxval {maxval}")));
        }

        let mut cells = vec![false; width * height];
        if magic == "P5" {
            cursor += 1; // single whitespace after maxval
            if bytes.len() < cursor + width * height {
                return Err(WorldError::BadPgm("truncated raster".into()));
            }
            for (i, cell) in cells.iter_mut().enumerate() {
                *cell = (bytes[cursor + i] as u32) < 128;
            }
        } else {
            for cell in cells.iter_mut() {
                let v: u32 = token()?
                    .parse()
                    .map_err(|_| WorldError::BadPgm("bad pixel".into()))?;
                *cell = v < 128;
            }
        }
        Self::from_cells(origin, resolution, width, height, cells)
    }
}

/// Extracts polygons from 4-connected occupied regions by tracing the boundary
/// edges of the cell squares. Holes inside obstacles are dropped, as are
/// polygons with area below `min_area` (square meters).
pub fn grid_to_polygons(grid: &OccupancyGrid, min_area: f64) -> PolygonalWorld {
    // directed boundary edges in integer cell-corner coordinates, interior kept
    // on the left so outer contours come out counter-clockwise
    use std::collections::HashMap;
    let mut edges: HashMap<(i64, i64), Vec<(i64, i64)>> = HashMap::new();
    let occ = |ix: i64, iy: i64| -> bool {
        if ix < 0 || iy < 0 || ix >= grid.width as i64 || iy >= grid.height as i64 {
            false
        } else {
            grid.get(ix as usize, iy as usize)
        }
    };
    for iy in 0..grid.height as i64 {
        for ix in 0..grid.width as i64 {
            if !occ(ix, iy) {
                continue;
            }
            if !occ(ix, iy - 1) {
                edges.entry((ix, iy)).or_default().push((ix + 1, iy));
            }
            if !occ(ix + 1, iy) {
                edges.entry((ix + 1, iy)).or_default().push((ix + 1, iy + 1));
            }
            if !occ(ix, iy + 1) {
                edges.entry((ix + 1, iy + 1)).or_default().push((ix, iy + 1));
            }
            if !occ(ix - 1, iy) {
                edges.entry((ix, iy + 1)).or_default().push((ix, iy));
            }
        }
    }
    for outs in edges.values_mut() {
        outs.sort_unstable();
    }

    let mut starts: Vec<(i64, i64)> = edges.keys().copied().collect();
    starts.sort_unstable();

    let mut polygons = Vec::new();
    for start in starts {
        loop {
            let first = match edges.get_mut(&start).and_then(|v| v.pop()) {
                Some(e) => e,
                None => break,
            };
            let mut loop_pts = vec![start, first];
            let mut prev = start;
            let mut cur = first;
            while cur != start {
                let incoming = (cur.0 - prev.0, cur.1 - prev.1);
                let outs = edges.get_mut(&cur).expect("boundary edge chain broke");
                // prefer the sharpest right turn so diagonally pinched regions
                // split into separate simple loops
                let pick = outs
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &next)| {
                        let outgoing = (next.0 - cur.0, next.1 - cur.1);
                        turn_priority(incoming, outgoing)
                    })
                    .map(|(i, _)| i)
                    .expect("open boundary contour");
                let next = outs.remove(pick);
                prev = cur;
                cur = next;
                loop_pts.push(cur);
            }
            loop_pts.pop(); // drop duplicated start
            if let Some(poly) = contour_to_polygon(&loop_pts, grid, min_area) {
                polygons.push(poly);
            }
        }
    }

    let mut bounds = Rect::from_corners(0.0, 0.0, 0.0, 0.0);
    let corners = [
        Point2::new(0.0, 0.0),
        Point2::new(grid.width as f64 * grid.resolution, 0.0),
        Point2::new(
            grid.width as f64 * grid.resolution,
            grid.height as f64 * grid.resolution,
        ),
        Point2::new(0.0, grid.height as f64 * grid.resolution),
    ];
    for (i, c) in corners.iter().enumerate() {
        let w = grid.origin.transform(*c);
        if i == 0 {
            bounds = Rect::new(w, w);
        } else {
            bounds = bounds.union(&Rect::new(w, w));
        }
    }
    PolygonalWorld::new(polygons, bounds).expect("grid polygons stay within grid bounds")
}

/// Right turn first, then straight, then left; reversing is never a valid chain.
fn turn_priority(incoming: (i64, i64), outgoing: (i64, i64)) -> i32 {
    let cross = incoming.0 * outgoing.1 - incoming.1 * outgoing.0;
    let dot = incoming.0 * outgoing.0 + incoming.1 * outgoing.1;
    if cross < 0 {
        0
    } else if dot > 0 {
        1
    } else if cross > 0 {
        2
    } else {
        3
    }
}

fn contour_to_polygon(
    loop_pts: &[(i64, i64)],
    grid: &OccupancyGrid,
    min_area: f64,
) -> Option<Polygon> {
    // merge collinear runs
    let n = loop_pts.len();
    let mut corners = Vec::new();
    for i in 0..n {
        let prev = loop_pts[(i + n - 1) % n];
        let cur = loop_pts[i];
        let next = loop_pts[(i + 1) % n];
        let d0 = (cur.0 - prev.0, cur.1 - prev.1);
        let d1 = (next.0 - cur.0, next.1 - cur.1);
        if d0 != d1 {
            corners.push(cur);
        }
    }
    if corners.len() < 3 {
        return None;
    }
    // hole boundaries come out clockwise; drop them
    let mut doubled_area = 0i64;
    for i in 0..corners.len() {
        let a = corners[i];
        let b = corners[(i + 1) % corners.len()];
        doubled_area += a.0 * b.1 - a.1 * b.0;
    }
    if doubled_area <= 0 {
        return None;
    }
    let cell_area = grid.resolution * grid.resolution;
    let area = 0.5 * doubled_area as f64 * cell_area;
    if area < min_area {
        return None;
    }
    let vertices = corners
        .iter()
        .map(|&(cx, cy)| {
            grid.origin.transform(Point2::new(
                cx as f64 * grid.resolution,
                cy as f64 * grid.resolution,
            ))
        })
        .collect();
    Some(Polygon::new(vertices).expect("contour trace produced a non-simple polygon"))
}

// ---------------------------------------------------------------------------
// Visibility graph
// ---------------------------------------------------------------------------

/// Visibility graph over inflated-obstacle vertices plus the start and goal
/// points. Edges connect mutually visible nodes and are weighted by euclidean
/// length.
#[derive(Debug, Clone)]
pub struct VisibilityGraph {
    pub nodes: Vec<Point2>,
    /// undirected edges (i, j, length) with i < j
    pub edges: Vec<(usize, usize, f64)>,
    pub start: usize,
    pub goal: usize,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl VisibilityGraph {
    /// Assembles a graph from an explicit edge list (used by tests and by the
    /// search when the graph is built elsewhere).
    pub fn from_edges(
        nodes: Vec<Point2>,
        edges: Vec<(usize, usize, f64)>,
        start: usize,
        goal: usize,
    ) -> Self {
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for &(i, j, w) in &edges {
            adjacency[i].push((j, w));
            adjacency[j].push((i, w));
        }
        for adj in &mut adjacency {
            adj.sort_by(|a, b| a.0.cmp(&b.0));
        }
        VisibilityGraph {
            nodes,
            edges,
            start,
            goal,
            adjacency,
        }
    }

    pub fn neighbors(&self, node: usize) -> &[(usize, f64)] {
        &self.adjacency[node]
    }
}

/// Builds the visibility graph of `world` after inflating every obstacle by
/// `inflation`. Nodes are the inflated vertices plus start and goal; an edge
/// exists iff the open segment between its endpoints stays out of every
/// inflated obstacle interior.
pub fn build_visibility_graph(
    world: &PolygonalWorld,
    start: Pose2,
    goal: Pose2,
    inflation: f64,
) -> Result<VisibilityGraph, WorldError> {
    let inflated = world.inflate(inflation);
    if inflated.contains_point(start.position()) == Containment::Inside
        || inflated.contains_point(goal.position()) == Containment::Inside
    {
        return Err(WorldError::InvalidQuery);
    }

    let mut nodes = vec![start.position(), goal.position()];
    for poly in inflated.obstacles() {
        nodes.extend_from_slice(poly.vertices());
    }

    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i].dist(nodes[j]) < GEOM_EPS {
                continue;
            }
            if !segment_intersects_world(nodes[i], nodes[j], &inflated) {
                edges.push((i, j, nodes[i].dist(nodes[j])));
            }
        }
    }
    Ok(VisibilityGraph::from_edges(nodes, edges, 0, 1))
}

#[derive(Clone, Copy, PartialEq)]
struct QueueEntry {
    f: f64,
    hops: u32,
    node: usize,
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap, we want the smallest key first
        other
            .f
            .total_cmp(&self.f)
            .then(other.hops.cmp(&self.hops))
            .then(other.node.cmp(&self.node))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Cost of traversing an edge away from `from` toward `to`, including the
/// heading penalties on edges incident to the start or goal node.
fn edge_cost(
    graph: &VisibilityGraph,
    from: usize,
    to: usize,
    length: f64,
    start: Pose2,
    goal: Pose2,
    w_start: f64,
    w_end: f64,
) -> f64 {
    let mut cost = length;
    let (a, b) = (graph.nodes[from], graph.nodes[to]);
    // the penalty direction is taken leaving the start / arriving at the goal,
    // independent of traversal order, so the edge cost stays symmetric
    if from == graph.start || to == graph.start {
        let (s, other) = if from == graph.start { (a, b) } else { (b, a) };
        cost += w_start * angle_between(start.heading(), other - s);
    }
    if from == graph.goal || to == graph.goal {
        let (g, other) = if from == graph.goal { (a, b) } else { (b, a) };
        cost += w_end * angle_between(goal.heading(), g - other);
    }
    cost
}

/// A* over the visibility graph minimizing length plus heading penalties at the
/// start and goal. Ties break lexicographically on (cost, hop count, node index).
pub fn shortest_heading_path(
    graph: &VisibilityGraph,
    start: Pose2,
    goal: Pose2,
    w_start: f64,
    w_end: f64,
) -> Result<Vec<Point2>, WorldError> {
    let n = graph.nodes.len();
    let goal_pos = graph.nodes[graph.goal];
    let heuristic = |node: usize| graph.nodes[node].dist(goal_pos);

    let mut g_cost = vec![f64::INFINITY; n];
    let mut g_hops = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();

    g_cost[graph.start] = 0.0;
    g_hops[graph.start] = 0;
    heap.push(QueueEntry {
        f: heuristic(graph.start),
        hops: 0,
        node: graph.start,
    });

    while let Some(QueueEntry { f, hops, node }) = heap.pop() {
        if node == graph.goal {
            let mut path = vec![node];
            let mut cur = node;
            while cur != graph.start {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Ok(path.into_iter().map(|i| graph.nodes[i]).collect());
        }
        // stale entry
        if f - heuristic(node) > g_cost[node] + 1e-12 || hops > g_hops[node] {
            continue;
        }
        for &(next, length) in graph.neighbors(node) {
            let step = edge_cost(graph, node, next, length, start, goal, w_start, w_end);
            let cand_cost = g_cost[node] + step;
            let cand_hops = g_hops[node] + 1;
            let better = match cand_cost.total_cmp(&g_cost[next]) {
                Ordering::Less => true,
                Ordering::Equal => {
                    cand_hops < g_hops[next]
                        || (cand_hops == g_hops[next] && node < parent[next])
                }
                Ordering::Greater => false,
            };
            if better {
                g_cost[next] = cand_cost;
                g_hops[next] = cand_hops;
                parent[next] = node;
                heap.push(QueueEntry {
                    f: cand_cost + heuristic(next),
                    hops: cand_hops,
                    node: next,
                });
            }
        }
    }
    Err(WorldError::NoPath)
}

/// Total cost of a node path under the heading-penalized metric; used by tests
/// and diagnostics.
pub fn path_cost(
    graph: &VisibilityGraph,
    path: &[usize],
    start: Pose2,
    goal: Pose2,
    w_start: f64,
    w_end: f64,
) -> f64 {
    let mut cost = 0.0;
    for w in path.windows(2) {
        let length = graph.nodes[w[0]].dist(graph.nodes[w[1]]);
        cost += edge_cost(graph, w[0], w[1], length, start, goal, w_start, w_end);
    }
    cost
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn square_at(cx: f64, cy: f64, half: f64) -> Polygon {
        Polygon::new(vec![
            Point2::new(cx - half, cy - half),
            Point2::new(cx + half, cy - half),
            Point2::new(cx + half, cy + half),
            Point2::new(cx - half, cy + half),
        ])
        .unwrap()
    }

    fn bounds10() -> Rect {
        Rect::from_corners(-10.0, -10.0, 10.0, 10.0)
    }

    #[test]
    fn pose_normalizes_heading() {
        let p = Pose2::new(0.0, 0.0, 3.0 * std::f64::consts::PI);
        assert_relative_eq!(p.heading(), std::f64::consts::PI);
    }

    #[test]
    fn empty_world_direct_edge() {
        let world = PolygonalWorld::empty(bounds10());
        let start = Pose2::new(-2.0, 0.0, 0.0);
        let goal = Pose2::new(2.0, 0.0, 0.0);
        let g = build_visibility_graph(&world, start, goal, 0.0).unwrap();
        assert_eq!(g.nodes.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert_relative_eq!(g.edges[0].2, 4.0, epsilon = 1e-9);
    }

    #[test]
    fn square_blocks_direct_edge() {
        let world =
            PolygonalWorld::new(vec![square_at(0.0, 0.0, 0.5)], bounds10()).unwrap();
        let start = Pose2::new(-2.0, 0.0, 0.0);
        let goal = Pose2::new(2.0, 0.0, 0.0);
        let g = build_visibility_graph(&world, start, goal, 0.0).unwrap();
        assert!(!g
            .edges
            .iter()
            .any(|&(i, j, _)| (i, j) == (0, 1) || (i, j) == (1, 0)));
        // start sees the two left corners of the square
        let visible_from_start = g.edges.iter().filter(|&&(i, _, _)| i == 0).count();
        assert!(visible_from_start >= 2);
    }

    #[test]
    fn start_inside_inflated_rejected() {
        let world =
            PolygonalWorld::new(vec![square_at(0.0, 0.0, 0.5)], bounds10()).unwrap();
        let start = Pose2::new(-0.7, 0.0, 0.0);
        let goal = Pose2::new(2.0, 0.0, 0.0);
        assert!(matches!(
            build_visibility_graph(&world, start, goal, 0.5),
            Err(WorldError::InvalidQuery)
        ));
    }

    #[test]
    fn heading_penalty_direct_eval() {
        // single edge, length 10, alpha_start = 0.2 rad, w_start = 5 -> cost 11
        let nodes = vec![Point2::new(0.0, 0.0), Point2::new(10.0, 0.0)];
        let g = VisibilityGraph::from_edges(nodes, vec![(0, 1, 10.0)], 0, 1);
        let start = Pose2::new(0.0, 0.0, -0.2);
        let goal = Pose2::new(10.0, 0.0, 0.0);
        let cost = path_cost(&g, &[0, 1], start, goal, 5.0, 0.0);
        assert_relative_eq!(cost, 11.0, epsilon = 1e-12);
        let path = shortest_heading_path(&g, start, goal, 5.0, 0.0).unwrap();
        assert_eq!(path.len(), 2);
    }

    #[test]
    fn zero_weights_reduce_to_euclidean() {
        let world =
            PolygonalWorld::new(vec![square_at(0.0, 0.0, 1.0)], bounds10()).unwrap();
        let start = Pose2::new(-4.0, -0.5, 1.0);
        let goal = Pose2::new(4.0, 0.5, -2.0);
        let g = build_visibility_graph(&world, start, goal, 0.0).unwrap();
        let path = shortest_heading_path(&g, start, goal, 0.0, 0.0).unwrap();
        // compare against plain euclidean shortest path via enumeration
        let mut total = 0.0;
        for w in path.windows(2) {
            total += w[0].dist(w[1]);
        }
        // the shortest euclidean route around a unit half-square
        assert!(total < 8.3);
        assert!(total >= 8.0);
    }

    #[test]
    fn unreachable_goal_errors() {
        // goal enclosed by a box, zero inflation
        let (b0, b1) = (2.0, 4.0);
        let ring = Polygon::new(vec![
            Point2::new(b0, b0),
            Point2::new(b1, b0),
            Point2::new(b1, b1),
            Point2::new(b0, b1),
        ])
        .unwrap();
        // carve nothing: goal strictly inside -> graph rejects as InvalidQuery.
        // place goal outside but disconnected instead: goal beyond bounds wall is
        // impossible with polygons, so test the graph-level error with an edgeless graph.
        let _ = ring;
        let nodes = vec![Point2::new(0.0, 0.0), Point2::new(5.0, 0.0)];
        let g = VisibilityGraph::from_edges(nodes, vec![], 0, 1);
        assert!(matches!(
            shortest_heading_path(
                &g,
                Pose2::new(0.0, 0.0, 0.0),
                Pose2::new(5.0, 0.0, 0.0),
                1.0,
                1.0
            ),
            Err(WorldError::NoPath)
        ));
    }

    #[test]
    fn grid_single_cell_footprint() {
        let mut grid = OccupancyGrid::new(Pose2::new(0.0, 0.0, 0.0), 0.5, 10, 10).unwrap();
        grid.set(2, 3, true);
        let world = grid_to_polygons(&grid, 0.0);
        assert_eq!(world.obstacles().len(), 1);
        let poly = &world.obstacles()[0];
        assert_relative_eq!(poly.area(), 0.25, epsilon = 1e-12);
        let bb = poly.bounding_box();
        assert_relative_eq!(bb.min.x, 1.0, epsilon = 1e-12);
        assert_relative_eq!(bb.min.y, 1.5, epsilon = 1e-12);
        assert_relative_eq!(bb.max.x, 1.5, epsilon = 1e-12);
        assert_relative_eq!(bb.max.y, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn grid_all_free() {
        let grid = OccupancyGrid::new(Pose2::new(0.0, 0.0, 0.0), 1.0, 10, 10).unwrap();
        let world = grid_to_polygons(&grid, 0.0);
        assert!(world.obstacles().is_empty());
    }

    #[test]
    fn grid_block_area_matches_cell_count() {
        let mut grid = OccupancyGrid::new(Pose2::new(1.0, -2.0, 0.4), 0.25, 12, 12).unwrap();
        for iy in 4..7 {
            for ix in 5..8 {
                grid.set(ix, iy, true);
            }
        }
        let world = grid_to_polygons(&grid, 0.0);
        assert_eq!(world.obstacles().len(), 1);
        let expected = 9.0 * 0.25 * 0.25;
        assert_relative_eq!(world.obstacles()[0].area(), expected, epsilon = 1e-9);
    }

    #[test]
    fn grid_min_area_filters() {
        let mut grid = OccupancyGrid::new(Pose2::new(0.0, 0.0, 0.0), 0.5, 10, 10).unwrap();
        grid.set(1, 1, true); // area 0.25
        for iy in 4..8 {
            for ix in 4..8 {
                grid.set(ix, iy, true); // area 4.0
            }
        }
        let world = grid_to_polygons(&grid, 1.0);
        assert_eq!(world.obstacles().len(), 1);
        assert!(world.obstacles()[0].area() > 1.0);
    }

    #[test]
    fn pgm_roundtrip_ascii_and_binary() {
        let ascii = b"P2\n# comment\n3 2\n255\n0 255 0\n255 0 255\n";
        let g = OccupancyGrid::from_pgm_bytes(ascii, Pose2::new(0.0, 0.0, 0.0), 1.0).unwrap();
        assert!(g.get(0, 0) && !g.get(1, 0) && g.get(2, 0));
        assert!(!g.get(0, 1) && g.get(1, 1) && !g.get(2, 1));

        let mut binary = b"P5 3 2 255\n".to_vec();
        binary.extend_from_slice(&[0, 255, 0, 255, 0, 255]);
        let g2 = OccupancyGrid::from_pgm_bytes(&binary, Pose2::new(0.0, 0.0, 0.0), 1.0).unwrap();
        assert!(g2.get(0, 0) && !g2.get(1, 0) && g2.get(2, 0));
    }
}
