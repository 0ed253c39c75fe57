//! The knit multigraph: one node per stitch, yarn edges between consecutively
//! created stitches and loop edges from a stitch to the stitches it was pulled
//! through.

mod convert;
mod paths;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use convert::{convert, NeedleState};
pub use paths::{hamiltonian_path, yarn_path};

/// Creation index, starting at 1.
pub type NodeId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: NodeId,
    /// 0 for the cast-on, then one per pattern row.
    pub row: usize,
    pub stitch: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Yarn,
    Loop,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub kind: EdgeKind,
    #[serde(rename = "len")]
    pub desired_length: f64,
}

/// A drawable segment: all graph edges between one pair of nodes collapsed
/// into one, endpoints as 0-based node indices with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: usize,
    pub b: usize,
    /// Shortest desired length among the collapsed edges.
    pub desired_length: f64,
}

impl Segment {
    pub fn shares_node(&self, other: &Segment) -> bool {
        self.a == other.a || self.a == other.b || self.b == other.a || self.b == other.b
    }

    pub fn other(&self, node: usize) -> usize {
        if self.a == node {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct KnitGraph {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
struct RawGraph {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
}

impl KnitGraph {
    /// Checks the structural invariants: ids are `1..=n` in order, edges join
    /// two distinct existing nodes with a positive length, and a node pair
    /// carries at most one yarn and one loop edge.
    pub fn new(nodes: Vec<Node>, edges: Vec<Edge>) -> Result<Self> {
        for (i, node) in nodes.iter().enumerate() {
            if node.id as usize != i + 1 {
                return Err(Error::InvalidGraph(format!(
                    "node ids must be 1..n in order; position {} has id {}",
                    i + 1,
                    node.id
                )));
            }
        }
        let n = nodes.len() as NodeId;
        let mut seen: HashMap<(NodeId, NodeId, EdgeKind), ()> = HashMap::new();
        for e in &edges {
            if e.u == 0 || e.v == 0 || e.u > n || e.v > n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) references a missing node",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidGraph(format!("self-loop at node {}", e.u)));
            }
            if !(e.desired_length.is_finite() && e.desired_length > 0.0) {
                return Err(Error::ZeroDesiredLength(e.u, e.v));
            }
            let key = (e.u.min(e.v), e.u.max(e.v), e.kind);
            if seen.insert(key, ()).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "duplicate {:?} edge between {} and {}",
                    e.kind, key.0, key.1
                )));
            }
        }
        Ok(KnitGraph { nodes, edges })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawGraph = serde_json::from_str(text).map_err(|e| Error::Format {
            what: "graph JSON",
            message: e.to_string(),
        })?;
        Self::new(raw.nodes, raw.edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes") + "\n"
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Collapsed segments in order of first appearance in the edge list.
    pub fn segments(&self) -> Vec<Segment> {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut out: Vec<Segment> = Vec::new();
        for e in &self.edges {
            let (a, b) = (e.u.min(e.v) as usize - 1, e.u.max(e.v) as usize - 1);
            match index.get(&(a, b)) {
                Some(&i) => {
                    out[i].desired_length = out[i].desired_length.min(e.desired_length);
                }
                None => {
                    index.insert((a, b), out.len());
                    out.push(Segment {
                        a,
                        b,
                        desired_length: e.desired_length,
                    });
                }
            }
        }
        out
    }

    /// Adjacency of the underlying simple graph, 0-based, neighbours in
    /// order of first appearance.
    pub fn simple_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for s in self.segments() {
            adj[s.a].push(s.b);
            adj[s.b].push(s.a);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let n = self.nodes.len();
        if n == 0 {
            return true;
        }
        let adj = self.simple_adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

impl<'de> Deserialize<'de> for KnitGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGraph::deserialize(d)?;
        KnitGraph::new(raw.nodes, raw.edges).map_err(serde::de::Error::custom)
    }
}

/// Builds a graph from plain `(u, v)` pairs over nodes `1..=n`, every edge a
/// unit-length yarn edge. Handy for hand-built graphs such as K5.
pub fn from_pairs(n: usize, pairs: &[(NodeId, NodeId)]) -> Result<KnitGraph> {
    let nodes = (1..=n as NodeId)
        .map(|id| Node {
            id,
            row: 0,
            stitch: "co".into(),
        })
        .collect();
    let edges = pairs
        .iter()
        .map(|&(u, v)| Edge {
            u,
            v,
            kind: EdgeKind::Yarn,
            desired_length: 1.0,
        })
        .collect();
    KnitGraph::new(nodes, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_field_names_are_fixed() {
        let g = from_pairs(2, &[(1, 2)]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(v["nodes"][0]["id"], 1);
        assert_eq!(v["nodes"][0]["row"], 0);
        assert_eq!(v["nodes"][0]["stitch"], "co");
        assert_eq!(v["edges"][0]["kind"], "yarn");
        assert_eq!(v["edges"][0]["len"], 1.0);
        assert_eq!(KnitGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn rejects_broken_graphs() {
        assert!(from_pairs(3, &[(1, 4)]).is_err());
        assert!(from_pairs(3, &[(2, 2)]).is_err());
        assert!(from_pairs(3, &[(1, 2), (2, 1)]).is_err());
        let bad_ids = r#"{"nodes":[{"id":2,"row":0,"stitch":"co"}],"edges":[]}"#;
        assert!(matches!(
            KnitGraph::from_json(bad_ids),
            Err(Error::InvalidGraph(_))
        ));
        let zero = r#"{"nodes":[{"id":1,"row":0,"stitch":"co"},{"id":2,"row":0,"stitch":"co"}],
                       "edges":[{"u":1,"v":2,"kind":"loop","len":0.0}]}"#;
        assert_eq!(
            KnitGraph::from_json(zero),
            Err(Error::ZeroDesiredLength(1, 2))
        );
        assert!(matches!(
            KnitGraph::from_json("{"),
            Err(Error::Format { .. })
        ));
    }

    #[test]
    fn parallel_pair_collapses_to_shorter_segment() {
        let nodes = (1..=2)
            .map(|id| Node {
                id,
                row: 0,
                stitch: "k".into(),
            })
            .collect();
        let edges = vec![
            Edge {
                u: 1,
                v: 2,
                kind: EdgeKind::Yarn,
                desired_length: 0.75,
            },
            Edge {
                u: 1,
                v: 2,
                kind: EdgeKind::Loop,
                desired_length: 1.0,
            },
        ];
        let g = KnitGraph::new(nodes, edges).unwrap();
        let segs = g.segments();
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].desired_length, 0.75);
    }
}
