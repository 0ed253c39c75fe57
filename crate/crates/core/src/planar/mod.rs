//! Planarity testing, combinatorial embeddings, Kuratowski witnesses and the
//! crossing-free grid drawing used to seed the layout.

mod lr;
mod rotation;
mod shift;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::{KnitGraph, NodeId};
use crate::layout::Layout;

use rotation::Rotation;

/// A planar rotation system of a graph's underlying simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    rot: Rotation,
}

impl Embedding {
    pub fn node_count(&self) -> usize {
        self.rot.node_count()
    }

    /// Neighbours of `v` in clockwise order.
    pub fn neighbors_cw(&self, v: NodeId) -> Vec<NodeId> {
        self.rot
            .neighbors_cw(v as usize - 1)
            .into_iter()
            .map(|w| w as NodeId + 1)
            .collect()
    }

    /// Face boundaries as closed node walks. A node may repeat on a face
    /// whose boundary is not a simple cycle.
    pub fn faces(&self) -> Vec<Vec<NodeId>> {
        self.rot
            .faces()
            .into_iter()
            .map(|f| f.into_iter().map(|v| v as NodeId + 1).collect())
            .collect()
    }

    /// Index into [`faces`](Self::faces) of the default outer face: the face
    /// touching the most distinct nodes, ties going to the face with the
    /// smallest node id, then to the first found.
    pub fn default_outer_face(&self) -> Option<usize> {
        let faces = self.rot.faces();
        let key = |f: &Vec<usize>| {
            let distinct: BTreeSet<usize> = f.iter().copied().collect();
            (
                distinct.len(),
                std::cmp::Reverse(*distinct.first().unwrap()),
            )
        };
        let mut best: Option<(usize, _)> = None;
        for (i, f) in faces.iter().enumerate() {
            let k = key(f);
            if best.as_ref().is_none_or(|(_, b)| k > *b) {
                best = Some((i, k));
            }
        }
        best.map(|(i, _)| i)
    }
}

fn simple_adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

fn segment_pairs(g: &KnitGraph) -> Vec<(usize, usize)> {
    g.segments().iter().map(|s| (s.a, s.b)).collect()
}

fn planar_pairs(n: usize, edges: &[(usize, usize)]) -> bool {
    lr::planar_rotation(&simple_adjacency(n, edges)).is_some()
}

/// Shrinks a non-planar edge set to a minimal non-planar subset, which is a
/// subdivision of K5 or K3,3. Edges are dropped in halving blocks first, then
/// one at a time.
fn minimal_non_planar(n: usize, mut keep: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    let mut block = (keep.len() / 2).max(1);
    loop {
        let mut i = 0;
        while i < keep.len() {
            let end = (i + block).min(keep.len());
            let trial: Vec<_> = keep[..i].iter().chain(&keep[end..]).copied().collect();
            if planar_pairs(n, &trial) {
                i = end;
            } else {
                keep = trial;
            }
        }
        if block == 1 {
            return keep;
        }
        block = block.div_ceil(2);
    }
}

pub fn is_planar(g: &KnitGraph) -> bool {
    planar_pairs(g.node_count(), &segment_pairs(g))
}

/// The edges of a Kuratowski subgraph, or `None` for a planar graph.
pub fn kuratowski_witness(g: &KnitGraph) -> Option<Vec<(NodeId, NodeId)>> {
    let n = g.node_count();
    let pairs = segment_pairs(g);
    if planar_pairs(n, &pairs) {
        return None;
    }
    Some(
        minimal_non_planar(n, pairs)
            .into_iter()
            .map(|(a, b)| (a as NodeId + 1, b as NodeId + 1))
            .collect(),
    )
}

/// Planar embedding of `g`, or [`Error::NotPlanar`] carrying a witness.
pub fn embed(g: &KnitGraph) -> Result<Embedding> {
    let adj = simple_adjacency(g.node_count(), &segment_pairs(g));
    match lr::planar_rotation(&adj) {
        Some(rot) => Ok(Embedding { rot }),
        None => Err(Error::NotPlanar {
            witness: kuratowski_witness(g),
        }),
    }
}

/// Integer grid coordinates (index = id - 1) of a straight-line drawing
/// without crossings. `outer_face` indexes [`Embedding::faces`]; `None` uses
/// the default outer face.
pub fn grid_coordinates(emb: &Embedding, outer_face: Option<usize>) -> Result<Vec<(i64, i64)>> {
    let faces = emb.rot.faces();
    let chosen = match outer_face {
        Some(k) if k >= faces.len() => {
            return Err(Error::InvalidParameter(format!(
                "outer face {k} does not exist; the embedding has {} faces",
                faces.len()
            )))
        }
        Some(k) => Some(k),
        None => emb.default_outer_face(),
    };
    let connected = is_connected(&emb.rot);
    let dart = chosen
        .filter(|_| connected)
        .and_then(|k| match faces[k].as_slice() {
            [a, b, ..] => Some((*a, *b)),
            _ => None,
        });
    Ok(shift::grid_positions(&emb.rot, dart))
}

fn is_connected(rot: &Rotation) -> bool {
    let n = rot.node_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for w in rot.neighbors_cw(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOptions {
    pub outer_face: Option<usize>,
    /// Multiplier on the scale that matches mean drawn length to mean desired
    /// length.
    pub seed_scale: f64,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            outer_face: None,
            seed_scale: 1.0,
        }
    }
}

/// Crossing-free straight-line layout of `g`, scaled so the mean segment
/// length equals the mean desired length (times `seed_scale`).
pub fn grid_layout(g: &KnitGraph, opts: &GridOptions) -> Result<Layout> {
    if !(opts.seed_scale.is_finite() && opts.seed_scale > 0.0) {
        return Err(Error::InvalidParameter(
            "seed scale must be positive".into(),
        ));
    }
    let emb = embed(g)?;
    let grid = grid_coordinates(&emb, opts.outer_face)?;
    let pts: Vec<Point> = grid
        .iter()
        .map(|&(x, y)| Point::new(x as f64, y as f64))
        .collect();
    let segs = g.segments();
    let scale = if segs.is_empty() {
        1.0
    } else {
        let drawn: f64 = segs.iter().map(|s| pts[s.a].distance(pts[s.b])).sum();
        let desired: f64 = segs.iter().map(|s| s.desired_length).sum();
        desired / drawn
    };
    let scale = scale * opts.seed_scale;
    Ok(Layout::from_points(
        &pts.iter().map(|&p| p * scale).collect::<Vec<_>>(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::count_crossings;
    use crate::graph::from_pairs;

    fn k(n: u32) -> Vec<(u32, u32)> {
        let mut e = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                e.push((a, b));
            }
        }
        e
    }

    #[test]
    fn complete_graphs() {
        assert!(is_planar(&from_pairs(4, &k(4)).unwrap()));
        assert!(!is_planar(&from_pairs(5, &k(5)).unwrap()));
        let k33: Vec<_> = (1..=3).flat_map(|a| (4..=6).map(move |b| (a, b))).collect();
        assert!(!is_planar(&from_pairs(6, &k33).unwrap()));
    }

    #[test]
    fn k5_minus_an_edge_is_planar_and_drawn_cleanly() {
        let edges: Vec<_> = k(5).into_iter().filter(|&e| e != (1, 2)).collect();
        let g = from_pairs(5, &edges).unwrap();
        let emb = embed(&g).unwrap();
        // Euler: V - E + F = 2
        assert_eq!(emb.faces().len(), 2 + 9 - 5);
        let layout = grid_layout(&g, &GridOptions::default()).unwrap();
        assert_eq!(count_crossings(&layout, &g).unwrap(), 0);
    }

    #[test]
    fn outer_face_index_is_checked() {
        let g = from_pairs(4, &k(4)).unwrap();
        let emb = embed(&g).unwrap();
        assert!(grid_coordinates(&emb, Some(4)).is_err());
        for f in 0..4 {
            let pts = grid_coordinates(&emb, Some(f)).unwrap();
            let layout = Layout::from_points(
                &pts.iter()
                    .map(|&(x, y)| Point::new(x as f64, y as f64))
                    .collect::<Vec<_>>(),
            );
            assert_eq!(count_crossings(&layout, &g).unwrap(), 0, "outer face {f}");
        }
    }

    #[test]
    fn small_graphs_get_fixed_positions() {
        let g = from_pairs(3, &[(1, 2), (2, 3)]).unwrap();
        let emb = embed(&g).unwrap();
        assert_eq!(
            grid_coordinates(&emb, None).unwrap(),
            vec![(0, 0), (2, 0), (1, 1)]
        );
    }

    #[test]
    fn witness_for_k5_is_k5() {
        let g = from_pairs(5, &k(5)).unwrap();
        let w = kuratowski_witness(&g).unwrap();
        assert_eq!(w.len(), 10);
        match embed(&g) {
            Err(Error::NotPlanar { witness: Some(w2) }) => assert_eq!(w, w2),
            other => panic!("{other:?}"),
        }
    }
}
