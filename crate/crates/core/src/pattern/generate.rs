use crate::error::{Error, Result};

use super::{Instruction, Pattern, Target};

/// Top-down triangle shawl: each increase row adds four stitches (two at the
/// edges, two around the centre stitch), the rows in between are plain knit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleParams {
    pub rows: usize,
    /// Odd and at least 5 so the row splits into edge, centre and edge.
    pub cast_on: usize,
    /// An increase row every `increase_every` rows, starting with row 1.
    pub increase_every: usize,
}

impl TriangleParams {
    pub fn new(rows: usize) -> Self {
        TriangleParams {
            rows,
            cast_on: 7,
            increase_every: 2,
        }
    }
}

pub fn gen_triangle(params: TriangleParams) -> Result<Pattern> {
    if params.rows == 0 {
        return Err(Error::InvalidParameter(
            "triangle needs at least one row".into(),
        ));
    }
    if params.cast_on < 5 || params.cast_on.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "triangle cast-on must be odd and at least 5, got {}",
            params.cast_on
        )));
    }
    if params.increase_every == 0 {
        return Err(Error::InvalidParameter(
            "increase_every must be at least 1".into(),
        ));
    }
    let increase_row = vec![
        Instruction::times("k", 2),
        Instruction::times("yo", 1),
        Instruction::until("k", Target::Center),
        Instruction::times("yo", 1),
        Instruction::times("k", 1),
        Instruction::times("yo", 1),
        Instruction::until("k", Target::Last(2)),
        Instruction::times("yo", 1),
        Instruction::times("k", 2),
    ];
    let plain_row = vec![Instruction::until("k", Target::End)];
    let rows = (0..params.rows)
        .map(|r| {
            if r % params.increase_every == 0 {
                increase_row.clone()
            } else {
                plain_row.clone()
            }
        })
        .collect();
    Ok(Pattern {
        cast_on: params.cast_on,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rows_is_invalid() {
        assert!(matches!(
            gen_triangle(TriangleParams::new(0)),
            Err(Error::InvalidParameter(_))
        ));
        let even = TriangleParams {
            cast_on: 6,
            ..TriangleParams::new(3)
        };
        assert!(gen_triangle(even).is_err());
    }

    #[test]
    fn alternates_increase_and_plain_rows() {
        let p = gen_triangle(TriangleParams::new(4)).unwrap();
        assert_eq!(p.cast_on, 7);
        assert_eq!(p.rows.len(), 4);
        assert_eq!(p.rows[0].len(), 9);
        assert_eq!(p.rows[1].len(), 1);
        assert_eq!(p.rows[2], p.rows[0]);
    }
}
