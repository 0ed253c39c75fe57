//! Compile hand-knitting patterns into planar graphs with desired edge
//! lengths and lay them out without edge crossings.

pub mod error;
pub mod fda;
pub mod geometry;
pub mod graph;
pub mod layout;
pub mod metrics;
pub mod pattern;
pub mod planar;
pub mod render;
pub mod stitches;

pub use error::{Error, Result};
pub use fda::{FdaConfig, RunReport};
pub use geometry::Point;
pub use graph::{Edge, EdgeKind, KnitGraph, Node, NodeId};
pub use layout::Layout;
pub use metrics::{del, evaluate, EvalReport};
pub use pattern::Pattern;
pub use stitches::{EdgeLengthConfig, StitchDictionary};
