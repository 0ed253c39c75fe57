use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::{KnitGraph, NodeId};

/// Node positions in stitch units.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Layout {
    positions: BTreeMap<NodeId, Point>,
}

#[derive(Serialize, Deserialize)]
struct RawLayout {
    positions: BTreeMap<NodeId, [f64; 2]>,
}

impl Layout {
    pub fn new() -> Self {
        Self::default()
    }

    /// `points[i]` becomes the position of node `i + 1`.
    pub fn from_points(points: &[Point]) -> Self {
        Layout {
            positions: points
                .iter()
                .enumerate()
                .map(|(i, &p)| (i as NodeId + 1, p))
                .collect(),
        }
    }

    pub fn get(&self, id: NodeId) -> Option<Point> {
        self.positions.get(&id).copied()
    }

    pub fn set(&mut self, id: NodeId, p: Point) {
        self.positions.insert(id, p);
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, Point)> + '_ {
        self.positions.iter().map(|(&id, &p)| (id, p))
    }

    /// Positions of every node of `g` as a dense vector (index = id - 1).
    pub fn resolve(&self, g: &KnitGraph) -> Result<Vec<Point>> {
        g.nodes()
            .iter()
            .map(|n| {
                let p = self.get(n.id).ok_or(Error::MissingPosition(n.id))?;
                if p.is_finite() {
                    Ok(p)
                } else {
                    Err(Error::InvalidParameter(format!(
                        "node {} has a non-finite position",
                        n.id
                    )))
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let raw = RawLayout {
            positions: self
                .positions
                .iter()
                .map(|(&id, p)| (id, [p.x, p.y]))
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("layout serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawLayout = serde_json::from_str(text).map_err(|e| Error::Format {
            what: "layout JSON",
            message: e.to_string(),
        })?;
        let mut layout = Layout::new();
        for (id, [x, y]) in raw.positions {
            let p = Point::new(x, y);
            if !p.is_finite() {
                return Err(Error::Format {
                    what: "layout JSON",
                    message: format!("node {id} has a non-finite position"),
                });
            }
            layout.set(id, p);
        }
        Ok(layout)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::from_pairs;

    #[test]
    fn json_shape_and_round_trip() {
        let layout = Layout::from_points(&[Point::new(0.0, 0.5), Point::new(-1.25, 3.0)]);
        let text = layout.to_json();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["positions"]["2"][0], -1.25);
        assert_eq!(Layout::from_json(&text).unwrap(), layout);
    }

    #[test]
    fn resolve_reports_missing_nodes() {
        let g = from_pairs(3, &[(1, 2), (2, 3)]).unwrap();
        let layout = Layout::from_points(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0)]);
        assert_eq!(layout.resolve(&g), Err(Error::MissingPosition(3)));
    }
}
