use crate::error::{Error, Result};
use crate::pattern::{Instruction, Pattern, Target};
use crate::stitches::{EdgeLengthConfig, StitchDef, StitchDictionary};

use super::{Edge, EdgeKind, KnitGraph, Node, NodeId};

/// Two needles as two stacks. Stitches are consumed from the top of
/// `working` and created onto `done`; the stacks swap at every row end and
/// at every `turn`, which reverses the row as flat knitting does.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NeedleState {
    pub working: Vec<NodeId>,
    pub done: Vec<NodeId>,
}

impl NeedleState {
    pub fn swap(&mut self) {
        std::mem::swap(&mut self.working, &mut self.done);
    }
}

struct Builder<'a> {
    cfg: &'a EdgeLengthConfig,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    needle: NeedleState,
    pending_drops: usize,
}

impl Builder<'_> {
    fn add_node(&mut self, row: usize, def: &StitchDef) -> NodeId {
        let id = self.nodes.len() as NodeId + 1;
        self.nodes.push(Node {
            id,
            row,
            stitch: def.name.clone(),
        });
        if id > 1 {
            let stretch = 1.0 + self.cfg.drop_multiplier * self.pending_drops as f64;
            self.pending_drops = 0;
            self.edges.push(Edge {
                u: id - 1,
                v: id,
                kind: EdgeKind::Yarn,
                desired_length: self.cfg.base_yarn_length * def.yarn_length_factor * stretch,
            });
        }
        id
    }

    fn work(&mut self, def: &StitchDef, row: usize, instruction: usize) -> Result<()> {
        let available = self.needle.working.len();
        if available < def.consumes {
            return Err(Error::NeedleUnderflow {
                row,
                instruction,
                stitch: def.name.clone(),
                needed: def.consumes,
                available,
            });
        }
        let popped = self.needle.working.split_off(available - def.consumes);
        let popped: Vec<NodeId> = popped.into_iter().rev().collect();
        if def.produces == 0 {
            self.pending_drops += 1;
            return Ok(());
        }
        for i in 0..def.produces {
            let id = self.add_node(row, def);
            for src in def.loop_sources(i) {
                self.edges.push(Edge {
                    u: popped[src],
                    v: id,
                    kind: EdgeKind::Loop,
                    desired_length: self.cfg.base_loop_length * def.loop_length_factor,
                });
            }
            self.needle.done.push(id);
        }
        Ok(())
    }
}

/// Runs the pattern on a two-needle stack machine and records every stitch
/// as a node.
pub fn convert(
    pattern: &Pattern,
    dict: &StitchDictionary,
    cfg: &EdgeLengthConfig,
) -> Result<KnitGraph> {
    cfg.validate()?;
    if pattern.cast_on == 0 {
        return Err(Error::InvalidParameter("cast-on must be at least 1".into()));
    }
    let co = dict.lookup("co")?;
    let mut b = Builder {
        cfg,
        nodes: Vec::new(),
        edges: Vec::new(),
        needle: NeedleState::default(),
        pending_drops: 0,
    };
    for _ in 0..pattern.cast_on {
        let id = b.add_node(0, co);
        b.needle.working.push(id);
    }

    for (r, instructions) in pattern.rows.iter().enumerate() {
        let row = r + 1;
        let row_start = b.needle.working.len();
        for (j, instr) in instructions.iter().enumerate() {
            let instruction = j + 1;
            match instr {
                Instruction::Turn => {}
                Instruction::Stitch { stitch, count } => {
                    let def = dict.lookup(stitch)?;
                    for _ in 0..*count {
                        b.work(def, row, instruction)?;
                    }
                }
                Instruction::Until { stitch, target } => {
                    let def = dict.lookup(stitch)?;
                    let remaining = b.needle.working.len();
                    let keep = match target {
                        Target::End => 0,
                        Target::Last(n) => *n,
                        Target::Center => row_start.div_ceil(2),
                    };
                    if remaining < keep {
                        return Err(Error::NeedleUnderflow {
                            row,
                            instruction,
                            stitch: def.name.clone(),
                            needed: keep,
                            available: remaining,
                        });
                    }
                    if def.consumes == 0 {
                        return Err(Error::InvalidParameter(format!(
                            "row {row}, instruction {instruction}: `{}` consumes no stitches and cannot be worked `to` a position",
                            def.name
                        )));
                    }
                    let times = (remaining - keep).div_ceil(def.consumes);
                    for _ in 0..times {
                        b.work(def, row, instruction)?;
                    }
                }
            }
        }
        let turned = instructions.last() == Some(&Instruction::Turn);
        if !turned && !b.needle.working.is_empty() {
            return Err(Error::RowIncomplete {
                row,
                remaining: b.needle.working.len(),
            });
        }
        b.needle.swap();
    }
    KnitGraph::new(b.nodes, b.edges)
}
