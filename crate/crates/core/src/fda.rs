//! Force-directed improvement of a crossing-free layout. Every iteration
//! computes all displacements first, then moves nodes one at a time in
//! creation order, keeping a node in place when its move would make one of
//! its edges cross another edge.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::geometry::{
    count_segment_crossings, incidence, move_creates_crossing, working_cell_size, Point,
    SpatialGrid,
};
use crate::graph::{KnitGraph, NodeId, Segment};
use crate::layout::Layout;
use crate::metrics::del_points;
use crate::planar::{grid_layout, GridOptions};
use crate::stitches::EdgeLengthConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdaConfig {
    /// Edge-length force per unit of relative length error.
    pub spring_k: f64,
    /// Nodes closer than this push each other apart (stitch units).
    pub collision_radius: f64,
    pub collision_k: f64,
    /// Inverse-square repulsion between every pair of nodes.
    pub repulse_k: f64,
    /// `repulse_k` is multiplied by this after every iteration.
    pub repulse_decay: f64,
    /// Longest move of one node in one iteration (stitch units).
    pub max_step: f64,
    pub iterations: usize,
    /// Stop once the best DEL so far improved by less than this over
    /// `plateau_window` iterations (checked after repulsion has decayed to
    /// 1% of its starting strength).
    pub del_tolerance: f64,
    /// 0 disables the plateau stop.
    pub plateau_window: usize,
    /// Retry a rejected move at half the distance, up to four times.
    pub bisect_moves: bool,
}

impl FdaConfig {
    /// Defaults whose length-valued constants follow the base yarn length.
    pub fn for_lengths(lengths: &EdgeLengthConfig) -> Self {
        FdaConfig {
            spring_k: 0.25,
            collision_radius: lengths.base_yarn_length * 3.0 / 10.0,
            collision_k: 2.0,
            repulse_k: 0.2,
            repulse_decay: 0.995,
            max_step: 0.5 * lengths.base_yarn_length,
            iterations: 2000,
            del_tolerance: 1e-4,
            plateau_window: 50,
            bisect_moves: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("spring_k", self.spring_k >= 0.0),
            ("collision_radius", self.collision_radius > 0.0),
            ("collision_k", self.collision_k >= 0.0),
            ("repulse_k", self.repulse_k >= 0.0),
            (
                "repulse_decay",
                self.repulse_decay > 0.0 && self.repulse_decay <= 1.0,
            ),
            ("max_step", self.max_step > 0.0),
            ("del_tolerance", self.del_tolerance >= 0.0),
        ];
        for (name, ok) in checks {
            if !ok {
                return Err(Error::InvalidParameter(format!("{name} is out of range")));
            }
        }
        let finite = [
            self.spring_k,
            self.collision_radius,
            self.collision_k,
            self.repulse_k,
            self.max_step,
            self.del_tolerance,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "force constants must be finite".into(),
            ));
        }
        Ok(())
    }
}

impl Default for FdaConfig {
    fn default() -> Self {
        Self::for_lengths(&EdgeLengthConfig::default())
    }
}

/// Unit vector for a pair of coincident nodes, fixed by their indices.
fn pair_direction(i: usize, j: usize) -> Point {
    let mut z = ((i as u64) << 32 | j as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    let angle = (z >> 11) as f64 / (1u64 << 53) as f64 * std::f64::consts::TAU;
    Point::new(angle.cos(), angle.sin())
}

struct Model {
    edges: Vec<(usize, usize, f64)>,
    segs: Vec<Segment>,
    incident: Vec<Vec<usize>>,
}

impl Model {
    fn new(g: &KnitGraph) -> Self {
        let segs = g.segments();
        Model {
            edges: g
                .edges()
                .iter()
                .map(|e| (e.u as usize - 1, e.v as usize - 1, e.desired_length))
                .collect(),
            incident: incidence(g.node_count(), &segs),
            segs,
        }
    }
}

fn displacements(model: &Model, pos: &[Point], cfg: &FdaConfig, repulse_k: f64) -> Vec<Point> {
    let n = pos.len();
    let mut f = vec![Point::ORIGIN; n];

    for &(u, v, l) in &model.edges {
        let delta = pos[v] - pos[u];
        let d = delta.norm();
        let dir = if d > 0.0 {
            delta * (1.0 / d)
        } else {
            pair_direction(u, v)
        };
        let push = dir * (cfg.spring_k * (d - l) / l);
        f[u] += push;
        f[v] = f[v] - push;
    }

    if repulse_k > 0.0 || cfg.collision_k > 0.0 {
        let r = cfg.collision_radius;
        for i in 0..n {
            let pi = pos[i];
            let mut fi = Point::ORIGIN;
            for j in i + 1..n {
                let delta = pi - pos[j];
                let d2 = delta.dot(delta);
                let push = if d2 == 0.0 {
                    pair_direction(i, j) * cfg.max_step
                } else {
                    let d = d2.sqrt();
                    let mut mag = repulse_k / d2;
                    if d < r {
                        mag += cfg.collision_k * (r - d) / r;
                    }
                    delta * (mag / d)
                };
                fi += push;
                f[j] = f[j] - push;
            }
            f[i] += fi;
        }
    }

    for v in &mut f {
        let len = v.norm();
        if len > cfg.max_step {
            *v = *v * (cfg.max_step / len);
        }
    }
    f
}

/// Moves every node towards `pos[v] + disp[v]` in creation order unless the
/// move introduces a crossing. Returns the number of accepted moves.
fn apply_moves(model: &Model, pos: &mut [Point], disp: &[Point], bisect: bool) -> usize {
    let segs = &model.segs;
    let mut grid = SpatialGrid::build(working_cell_size(pos, segs), pos, segs);
    let mut moved = 0;
    for v in 0..pos.len() {
        let mut step = disp[v];
        let attempts = if bisect { 5 } else { 1 };
        for _ in 0..attempts {
            let target = pos[v] + step;
            if !move_creates_crossing(pos, segs, &model.incident[v], &grid, v, target) {
                for &s in &model.incident[v] {
                    let o = pos[segs[s].other(v)];
                    grid.remove(s, pos[v], o);
                    grid.insert(s, target, o);
                }
                pos[v] = target;
                moved += 1;
                break;
            }
            step = step * 0.5;
        }
    }
    moved
}

/// Per-node displacement for one iteration, after clamping to `max_step`.
pub fn compute_displacements(
    layout: &Layout,
    g: &KnitGraph,
    cfg: &FdaConfig,
) -> Result<BTreeMap<NodeId, Point>> {
    cfg.validate()?;
    let pos = layout.resolve(g)?;
    let disp = displacements(&Model::new(g), &pos, cfg, cfg.repulse_k);
    Ok(disp
        .into_iter()
        .enumerate()
        .map(|(i, d)| (i as NodeId + 1, d))
        .collect())
}

/// One guarded iteration. Returns the new layout and the number of nodes
/// whose move was accepted (a zero-length move counts as accepted).
pub fn safe_step(layout: &Layout, g: &KnitGraph, cfg: &FdaConfig) -> Result<(Layout, usize)> {
    cfg.validate()?;
    let model = Model::new(g);
    let mut pos = layout.resolve(g)?;
    let disp = displacements(&model, &pos, cfg, cfg.repulse_k);
    let moved = apply_moves(&model, &mut pos, &disp, cfg.bisect_moves);
    Ok((Layout::from_points(&pos), moved))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationStats {
    pub iteration: usize,
    pub del: f64,
    pub crossings: usize,
    pub moved: usize,
    /// Wall time since the run started.
    pub seconds: f64,
}

/// One row per iteration; row 0 describes the starting layout.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunReport {
    pub rows: Vec<IterationStats>,
}

impl RunReport {
    pub const CSV_HEADER: &'static str = "iteration,del,crossings,moved,seconds";

    pub fn initial_del(&self) -> f64 {
        self.rows.first().map_or(0.0, |r| r.del)
    }

    pub fn final_del(&self) -> f64 {
        self.rows.last().map_or(0.0, |r| r.del)
    }

    /// Iterations actually performed.
    pub fn iterations(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn seconds(&self) -> f64 {
        self.rows.last().map_or(0.0, |r| r.seconds)
    }

    pub fn max_crossings(&self) -> usize {
        self.rows.iter().map(|r| r.crossings).max().unwrap_or(0)
    }

    /// CSV text; with `timing` off every `seconds` cell is 0 so the output
    /// depends only on the inputs.
    pub fn to_csv(&self, timing: bool) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let secs = if timing { r.seconds } else { 0.0 };
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.iteration, r.del, r.crossings, r.moved, secs
            );
        }
        out
    }
}

/// Crossing-free grid initialization followed by guarded iterations.
pub fn run(g: &KnitGraph, cfg: &FdaConfig) -> Result<(Layout, RunReport)> {
    let initial = grid_layout(g, &GridOptions::default())?;
    run_from(g, cfg, &initial)
}

pub fn run_from(g: &KnitGraph, cfg: &FdaConfig, initial: &Layout) -> Result<(Layout, RunReport)> {
    run_observed(g, cfg, initial, |_, _| {})
}

/// Like [`run_from`], calling `observer(iteration, positions)` on the
/// starting layout (iteration 0) and after every iteration. Positions are
/// indexed by node id - 1.
pub fn run_observed(
    g: &KnitGraph,
    cfg: &FdaConfig,
    initial: &Layout,
    mut observer: impl FnMut(usize, &[Point]),
) -> Result<(Layout, RunReport)> {
    cfg.validate()?;
    let start = Instant::now();
    let model = Model::new(g);
    let mut pos = initial.resolve(g)?;
    let crossings = count_segment_crossings(&pos, &model.segs);
    if crossings > 0 {
        return Err(Error::InvalidParameter(format!(
            "the starting layout has {crossings} edge crossings"
        )));
    }

    let mut report = RunReport::default();
    report.rows.push(IterationStats {
        iteration: 0,
        del: del_points(&pos, g),
        crossings,
        moved: 0,
        seconds: start.elapsed().as_secs_f64(),
    });
    observer(0, &pos);

    let mut repulse_k = cfg.repulse_k;
    let mut best = vec![report.initial_del()];
    for it in 1..=cfg.iterations {
        let disp = displacements(&model, &pos, cfg, repulse_k);
        let moved = apply_moves(&model, &mut pos, &disp, cfg.bisect_moves);
        repulse_k *= cfg.repulse_decay;

        let crossings = count_segment_crossings(&pos, &model.segs);
        debug_assert_eq!(crossings, 0, "iteration {it} introduced a crossing");
        let del = del_points(&pos, g);
        report.rows.push(IterationStats {
            iteration: it,
            del,
            crossings,
            moved,
            seconds: start.elapsed().as_secs_f64(),
        });
        observer(it, &pos);

        best.push(best[it - 1].min(del));
        // DEL only settles once repulsion has faded
        let settled = cfg.repulse_decay == 1.0 || repulse_k <= 0.01 * cfg.repulse_k;
        let w = cfg.plateau_window;
        if settled && w > 0 && it >= w && best[it - w] - best[it] < cfg.del_tolerance {
            break;
        }
    }
    Ok((Layout::from_points(&pos), report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{from_pairs, Edge, EdgeKind, Node};

    fn quiet() -> FdaConfig {
        FdaConfig {
            repulse_k: 0.0,
            collision_k: 0.0,
            ..FdaConfig::default()
        }
    }

    #[test]
    fn equilibrium_has_no_displacement() {
        let g = from_pairs(2, &[(1, 2)]).unwrap();
        let layout = Layout::from_points(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0)]);
        let d = compute_displacements(&layout, &g, &quiet()).unwrap();
        assert_eq!(d[&1], Point::ORIGIN);
        assert_eq!(d[&2], Point::ORIGIN);
        let (next, moved) = safe_step(&layout, &g, &quiet()).unwrap();
        assert_eq!((next, moved), (layout, 2));
    }

    #[test]
    fn stretched_edge_pulls_both_ends_together() {
        let g = from_pairs(2, &[(1, 2)]).unwrap();
        let layout = Layout::from_points(&[Point::new(0.0, 0.0), Point::new(2.0, 0.0)]);
        let cfg = FdaConfig {
            spring_k: 1.0,
            max_step: 10.0,
            ..quiet()
        };
        let d = compute_displacements(&layout, &g, &cfg).unwrap();
        // spring force (2 - 1) / 1 along the edge
        assert_eq!(d[&1], Point::new(1.0, 0.0));
        assert_eq!(d[&2], Point::new(-1.0, 0.0));
    }

    #[test]
    fn coincident_nodes_separate_deterministically() {
        let g = from_pairs(2, &[]).unwrap();
        let layout = Layout::from_points(&[Point::new(1.0, 1.0), Point::new(1.0, 1.0)]);
        let a = compute_displacements(&layout, &g, &FdaConfig::default()).unwrap();
        let b = compute_displacements(&layout, &g, &FdaConfig::default()).unwrap();
        assert_eq!(a, b);
        assert!(a[&1].norm() > 0.0);
        assert!((a[&1] + a[&2]).norm() < 1e-12);
    }

    fn graph(n: u32, edges: &[(u32, u32, f64)]) -> KnitGraph {
        let nodes = (1..=n)
            .map(|id| Node {
                id,
                row: 0,
                stitch: "co".into(),
            })
            .collect();
        let edges = edges
            .iter()
            .map(|&(u, v, desired_length)| Edge {
                u,
                v,
                kind: EdgeKind::Yarn,
                desired_length,
            })
            .collect();
        KnitGraph::new(nodes, edges).unwrap()
    }

    #[test]
    fn caged_node_cannot_drag_its_edge_out() {
        // square cage at rest; node 5 inside is pushed away from corner 1
        // hard enough that the edge 1-5 would cut the side 2-3
        let g = graph(
            5,
            &[
                (1, 2, 2.0),
                (2, 3, 2.0),
                (3, 4, 2.0),
                (4, 1, 2.0),
                (1, 5, 10.0),
            ],
        );
        let layout = Layout::from_points(&[
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 2.0),
            Point::new(0.0, 2.0),
            Point::new(1.0, 0.8),
        ]);
        let cfg = FdaConfig {
            spring_k: 5.0,
            max_step: 3.0,
            ..quiet()
        };
        let (next, moved) = safe_step(&layout, &g, &cfg).unwrap();
        assert_ne!(next.get(1), layout.get(1));
        assert_eq!(next.get(5), layout.get(5));
        assert_eq!(moved, 4);
        assert_eq!(crate::geometry::count_crossings(&next, &g).unwrap(), 0);
    }

    #[test]
    fn zero_iterations_returns_the_start() {
        let g = from_pairs(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let cfg = FdaConfig {
            iterations: 0,
            ..FdaConfig::default()
        };
        let initial = grid_layout(&g, &GridOptions::default()).unwrap();
        let (layout, report) = run(&g, &cfg).unwrap();
        assert_eq!(layout, initial);
        assert_eq!(report.iterations(), 0);
    }

    #[test]
    fn straight_path_at_rest_is_a_fixed_point() {
        let g = from_pairs(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let start = Layout::from_points(
            &(0..5)
                .map(|i| Point::new(i as f64, 0.0))
                .collect::<Vec<_>>(),
        );
        let cfg = FdaConfig {
            iterations: 20,
            plateau_window: 0,
            ..quiet()
        };
        let (layout, report) = run_from(&g, &cfg, &start).unwrap();
        assert_eq!(layout, start);
        assert!(report.rows.iter().all(|r| r.del == 0.0 && r.crossings == 0));
    }

    #[test]
    fn rejects_a_crossing_start() {
        let g = from_pairs(4, &[(1, 3), (2, 4)]).unwrap();
        let start = Layout::from_points(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ]);
        assert!(matches!(
            run_from(&g, &FdaConfig::default(), &start),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn csv_without_timing_is_stable() {
        let report = RunReport {
            rows: vec![IterationStats {
                iteration: 0,
                del: 0.5,
                crossings: 0,
                moved: 0,
                seconds: 1.25,
            }],
        };
        assert_eq!(
            report.to_csv(false),
            "iteration,del,crossings,moved,seconds\n0,0.5,0,0,0\n"
        );
        assert!(report.to_csv(true).ends_with("0,0.5,0,0,1.25\n"));
    }
}
