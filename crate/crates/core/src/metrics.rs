//! Layout quality: desired-edge-length error and evaluation reports.

use std::time::Duration;

use crate::error::{Error, Result};
use crate::geometry::{count_crossings, Point};
use crate::graph::KnitGraph;
use crate::layout::Layout;

/// Root mean square of the relative edge-length error over every edge of
/// the graph. Parallel yarn and loop edges are two separate terms.
pub fn del(layout: &Layout, g: &KnitGraph) -> Result<f64> {
    for e in g.edges() {
        if e.desired_length <= 0.0 {
            return Err(Error::ZeroDesiredLength(e.u, e.v));
        }
    }
    Ok(del_points(&layout.resolve(g)?, g))
}

pub(crate) fn del_points(pos: &[Point], g: &KnitGraph) -> f64 {
    let edges = g.edges();
    if edges.is_empty() {
        return 0.0;
    }
    let sum: f64 = edges
        .iter()
        .map(|e| {
            let d = pos[e.u as usize - 1].distance(pos[e.v as usize - 1]);
            let rel = (d - e.desired_length) / e.desired_length;
            rel * rel
        })
        .sum();
    (sum / edges.len() as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub pattern: String,
    pub nodes: usize,
    pub edges: usize,
    pub del: f64,
    pub crossings: usize,
    pub seconds: f64,
}

impl EvalReport {
    pub const CSV_HEADER: &'static str = "pattern,nodes,edges,del,crossings,seconds";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            csv_field(&self.pattern),
            self.nodes,
            self.edges,
            self.del,
            self.crossings,
            self.seconds
        )
    }
}

/// Quotes a CSV field when it holds a separator, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn evaluate(
    layout: &Layout,
    g: &KnitGraph,
    pattern: &str,
    elapsed: Duration,
) -> Result<EvalReport> {
    Ok(EvalReport {
        pattern: pattern.to_string(),
        nodes: g.node_count(),
        edges: g.edge_count(),
        del: del(layout, g)?,
        crossings: count_crossings(layout, g)?,
        seconds: elapsed.as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{from_pairs, Edge, EdgeKind, Node};

    fn two_nodes(desired: f64) -> KnitGraph {
        let nodes = (1..=2)
            .map(|id| Node {
                id,
                row: 0,
                stitch: "co".into(),
            })
            .collect();
        let edges = vec![Edge {
            u: 1,
            v: 2,
            kind: EdgeKind::Yarn,
            desired_length: desired,
        }];
        KnitGraph::new(nodes, edges).unwrap()
    }

    #[test]
    fn closed_forms() {
        let layout = Layout::from_points(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0)]);
        assert_eq!(del(&layout, &two_nodes(1.0)).unwrap(), 0.0);
        assert_eq!(del(&layout, &two_nodes(2.0)).unwrap(), 0.5);
        // edges drawn at 0.5 and 1.5 against 1.0
        let g = from_pairs(3, &[(1, 2), (2, 3)]).unwrap();
        let layout = Layout::from_points(&[
            Point::new(0.0, 0.0),
            Point::new(0.5, 0.0),
            Point::new(2.0, 0.0),
        ]);
        assert!((del(&layout, &g).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn unit_square_report() {
        let g = from_pairs(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let layout = Layout::from_points(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ]);
        let r = evaluate(&layout, &g, "square", Duration::ZERO).unwrap();
        assert_eq!((r.del, r.crossings, r.nodes, r.edges), (0.0, 0, 4, 4));
        assert_eq!(r.csv_row(), "square,4,4,0,0,0");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
