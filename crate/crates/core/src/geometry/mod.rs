//! Planar geometry: points, the segment-crossing predicate and crossing
//! counts over a drawn graph.

mod grid;

use std::ops::{Add, AddAssign, Mul, Sub};

use crate::error::Result;
use crate::graph::{KnitGraph, NodeId, Segment};
use crate::layout::Layout;

pub use grid::SpatialGrid;

/// Collinearity tolerance in stitch units.
pub const EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point {
    fn add_assign(&mut self, o: Point) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// Signed side of `c` relative to the directed line `a -> b`, zero when `c`
/// is within `eps` of the line.
fn side(a: Point, b: Point, c: Point, eps: f64) -> i8 {
    let ab = b - a;
    let dist = ab.cross(c - a) / ab.norm();
    if dist > eps {
        1
    } else if dist < -eps {
        -1
    } else {
        0
    }
}

/// `p` lies on the segment strictly between its endpoints (given that it is
/// already known to be on the supporting line).
fn strictly_inside(a: Point, b: Point, p: Point, eps: f64) -> bool {
    let ab = b - a;
    let len = ab.norm();
    let t = (p - a).dot(ab) / len;
    t > eps && t < len - eps
}

fn ordered(p: Point, q: Point) -> (Point, Point) {
    if (p.x, p.y) <= (q.x, q.y) {
        (p, q)
    } else {
        (q, p)
    }
}

/// Do the segments `a1-a2` and `b1-b2` cross?
///
/// A shared endpoint is not a crossing; a collinear overlap of positive
/// length is, and so is an endpoint resting strictly inside the other
/// segment.
pub fn segments_cross(a1: Point, a2: Point, b1: Point, b2: Point) -> bool {
    segments_cross_eps(a1, a2, b1, b2, EPSILON)
}

pub fn segments_cross_eps(a1: Point, a2: Point, b1: Point, b2: Point, eps: f64) -> bool {
    if a1.x.max(a2.x) + eps < b1.x.min(b2.x)
        || b1.x.max(b2.x) + eps < a1.x.min(a2.x)
        || a1.y.max(a2.y) + eps < b1.y.min(b2.y)
        || b1.y.max(b2.y) + eps < a1.y.min(a2.y)
    {
        return false;
    }
    // Canonical argument order keeps the predicate exactly symmetric.
    let (a1, a2) = ordered(a1, a2);
    let (b1, b2) = ordered(b1, b2);
    let (a1, a2, b1, b2) = if (a1.x, a1.y, a2.x, a2.y) <= (b1.x, b1.y, b2.x, b2.y) {
        (a1, a2, b1, b2)
    } else {
        (b1, b2, a1, a2)
    };

    // A zero-length segment is a point: it crosses only by resting inside
    // the other segment.
    let (la, lb) = ((a2 - a1).norm(), (b2 - b1).norm());
    if la <= eps || lb <= eps {
        if la <= eps && lb <= eps {
            return false;
        }
        let (p, s1, s2) = if la <= eps {
            (a1, b1, b2)
        } else {
            (b1, a1, a2)
        };
        return side(s1, s2, p, eps) == 0 && strictly_inside(s1, s2, p, eps);
    }

    let o1 = side(a1, a2, b1, eps);
    let o2 = side(a1, a2, b2, eps);
    let o3 = side(b1, b2, a1, eps);
    let o4 = side(b1, b2, a2, eps);

    if (o1 == 0 && o2 == 0) || (o3 == 0 && o4 == 0) {
        let dir = a2 - a1;
        let len = dir.norm();
        let t1 = (b1 - a1).dot(dir) / len;
        let t2 = (b2 - a1).dot(dir) / len;
        let overlap = len.min(t1.max(t2)) - 0f64.max(t1.min(t2));
        return overlap > eps;
    }

    let close = |p: Point, q: Point| p.distance(q) <= eps;
    if close(a1, b1) || close(a1, b2) || close(a2, b1) || close(a2, b2) {
        return false;
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && strictly_inside(a1, a2, b1, eps))
        || (o2 == 0 && strictly_inside(a1, a2, b2, eps))
        || (o3 == 0 && strictly_inside(b1, b2, a1, eps))
        || (o4 == 0 && strictly_inside(b1, b2, a2, eps))
}

/// Incident segment ids per node.
pub fn incidence(n: usize, segs: &[Segment]) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); n];
    for (i, s) in segs.iter().enumerate() {
        inc[s.a].push(i);
        inc[s.b].push(i);
    }
    inc
}

/// Cell size that keeps a grid over the current drawing useful: at least the
/// longest desired length, and coarse enough that no drawn segment spans
/// more than a few dozen cells per axis.
pub fn working_cell_size(pos: &[Point], segs: &[Segment]) -> f64 {
    let mut cell = segs.iter().map(|s| s.desired_length).fold(0.0f64, f64::max);
    let longest = segs
        .iter()
        .map(|s| pos[s.a].distance(pos[s.b]))
        .fold(0.0f64, f64::max);
    cell = cell.max(longest / 32.0);
    if cell > 0.0 {
        cell
    } else {
        1.0
    }
}

/// Number of crossing pairs among non-adjacent segments.
pub fn count_segment_crossings(pos: &[Point], segs: &[Segment]) -> usize {
    let grid = SpatialGrid::build(working_cell_size(pos, segs), pos, segs);
    let mut stamp = vec![usize::MAX; segs.len()];
    let mut count = 0;
    for (i, s) in segs.iter().enumerate() {
        grid.for_each_candidate(pos[s.a], pos[s.b], |j| {
            if j <= i || stamp[j] == i {
                return;
            }
            stamp[j] = i;
            let t = &segs[j];
            if !s.shares_node(t) && segments_cross(pos[s.a], pos[s.b], pos[t.a], pos[t.b]) {
                count += 1;
            }
        });
    }
    count
}

/// Crossings of the drawing: unordered pairs of segments without a common
/// node that cross. Parallel yarn and loop edges count as one segment.
pub fn count_crossings(layout: &Layout, g: &KnitGraph) -> Result<usize> {
    let pos = layout.resolve(g)?;
    Ok(count_segment_crossings(&pos, &g.segments()))
}

/// Would moving `node` (0-based) to `new_pos` make one of its segments cross
/// a segment it does not share a node with? Only segments the grid lists
/// near the moved segments are tested.
pub fn move_creates_crossing(
    pos: &[Point],
    segs: &[Segment],
    incident: &[usize],
    grid: &SpatialGrid,
    node: usize,
    new_pos: Point,
) -> bool {
    for &si in incident {
        let s = &segs[si];
        let other = pos[s.other(node)];
        let mut hit = false;
        grid.for_each_candidate(new_pos, other, |j| {
            if hit {
                return;
            }
            let t = &segs[j];
            if !s.shares_node(t) && segments_cross(new_pos, other, pos[t.a], pos[t.b]) {
                hit = true;
            }
        });
        if hit {
            return true;
        }
    }
    false
}

/// Whether moving `node` to `new_pos` introduces a crossing on one of its
/// edges. `grid` must index `g.segments()` at the positions of `layout`.
pub fn crossings_touching(
    layout: &Layout,
    g: &KnitGraph,
    node: NodeId,
    new_pos: Point,
    grid: &SpatialGrid,
) -> Result<bool> {
    let pos = layout.resolve(g)?;
    let segs = g.segments();
    let idx = node as usize - 1;
    let incident: Vec<usize> = segs
        .iter()
        .enumerate()
        .filter(|(_, s)| s.a == idx || s.b == idx)
        .map(|(i, _)| i)
        .collect();
    Ok(move_creates_crossing(
        &pos, &segs, &incident, grid, idx, new_pos,
    ))
}
