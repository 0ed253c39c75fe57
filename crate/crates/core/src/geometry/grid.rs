use rustc_hash::FxHashMap;

use crate::graph::Segment;

use super::Point;

/// Uniform bucket grid over segments. Every segment is listed in each cell
/// its bounding box overlaps.
#[derive(Debug, Clone)]
pub struct SpatialGrid {
    cell_size: f64,
    buckets: FxHashMap<(i64, i64), Vec<usize>>,
}

impl SpatialGrid {
    pub fn new(cell_size: f64) -> Self {
        assert!(
            cell_size > 0.0 && cell_size.is_finite(),
            "cell size must be positive"
        );
        SpatialGrid {
            cell_size,
            buckets: FxHashMap::default(),
        }
    }

    pub fn build(cell_size: f64, pos: &[Point], segs: &[Segment]) -> Self {
        let mut grid = Self::new(cell_size);
        for (i, s) in segs.iter().enumerate() {
            grid.insert(i, pos[s.a], pos[s.b]);
        }
        grid
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    fn cell(&self, v: f64) -> i64 {
        (v / self.cell_size).floor() as i64
    }

    fn cells(&self, p: Point, q: Point) -> impl Iterator<Item = (i64, i64)> {
        let (x0, x1) = (self.cell(p.x.min(q.x)), self.cell(p.x.max(q.x)));
        let (y0, y1) = (self.cell(p.y.min(q.y)), self.cell(p.y.max(q.y)));
        (x0..=x1).flat_map(move |x| (y0..=y1).map(move |y| (x, y)))
    }

    pub fn insert(&mut self, seg: usize, p: Point, q: Point) {
        for c in self.cells(p, q).collect::<Vec<_>>() {
            self.buckets.entry(c).or_default().push(seg);
        }
    }

    /// `p` and `q` must be the endpoints the segment was inserted with.
    pub fn remove(&mut self, seg: usize, p: Point, q: Point) {
        for c in self.cells(p, q).collect::<Vec<_>>() {
            if let Some(bucket) = self.buckets.get_mut(&c) {
                if let Some(k) = bucket.iter().position(|&s| s == seg) {
                    bucket.swap_remove(k);
                }
                if bucket.is_empty() {
                    self.buckets.remove(&c);
                }
            }
        }
    }

    /// Calls `f` for every segment listed in a cell overlapped by the bounding
    /// box of `p`-`q`. A segment may be reported more than once.
    pub fn for_each_candidate(&self, p: Point, q: Point, mut f: impl FnMut(usize)) {
        for c in self.cells(p, q) {
            if let Some(bucket) = self.buckets.get(&c) {
                for &s in bucket {
                    f(s);
                }
            }
        }
    }

    /// Sorted, deduplicated candidates for the bounding box of `p`-`q`.
    pub fn candidates(&self, p: Point, q: Point) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_each_candidate(p, q, |s| out.push(s));
        out.sort_unstable();
        out.dedup();
        out
    }
}
