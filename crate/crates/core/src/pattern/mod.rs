//! Knitting patterns: the parsed instruction list, its text form, and
//! generated benchmark patterns.

mod generate;
mod parse;

use std::fmt;

pub use generate::{gen_triangle, TriangleParams};
pub use parse::parse;

/// Cast-on count plus the rows in working order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub cast_on: usize,
    pub rows: Vec<Row>,
}

pub type Row = Vec<Instruction>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instruction {
    /// Work `stitch` `count` times.
    Stitch { stitch: String, count: usize },
    /// Work `stitch` until the needle reaches `target`; the count is only
    /// known once the live stitches of the row are known.
    Until { stitch: String, target: Target },
    /// Turn the work mid-row (short rows). Always the last instruction.
    Turn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Every remaining live stitch.
    End,
    /// Leave this many live stitches unworked.
    Last(usize),
    /// Stop with the centre stitch of the row next on the needle: half the
    /// row's starting stitches, rounded up, remain unworked.
    Center,
}

impl Instruction {
    pub fn stitch(&self) -> Option<&str> {
        match self {
            Instruction::Stitch { stitch, .. } | Instruction::Until { stitch, .. } => Some(stitch),
            Instruction::Turn => None,
        }
    }

    pub(crate) fn times(stitch: &str, count: usize) -> Self {
        Instruction::Stitch {
            stitch: stitch.to_string(),
            count,
        }
    }

    pub(crate) fn until(stitch: &str, target: Target) -> Self {
        Instruction::Until {
            stitch: stitch.to_string(),
            target,
        }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Stitch { stitch, count: 1 } => write!(f, "{stitch}"),
            Instruction::Stitch { stitch, count } => {
                if stitch.chars().all(|c| c.is_ascii_alphabetic()) {
                    write!(f, "{stitch}{count}")
                } else {
                    write!(f, "{stitch} x{count}")
                }
            }
            Instruction::Until { stitch, target } => match target {
                Target::End => write!(f, "{stitch} to end"),
                Target::Center => write!(f, "{stitch} to center"),
                Target::Last(n) => write!(f, "{stitch} to last {n}"),
            },
            Instruction::Turn => write!(f, "turn"),
        }
    }
}

/// Prints the pattern in the `.knit` format; `parse` reads it back to the
/// same instruction list.
impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "co {}", self.cast_on)?;
        for row in &self.rows {
            let items: Vec<String> = row.iter().map(|i| i.to_string()).collect();
            writeln!(f, "row: {}", items.join(", "))?;
        }
        Ok(())
    }
}
