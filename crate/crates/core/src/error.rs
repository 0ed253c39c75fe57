use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong between a pattern file and a finished layout.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("unknown stitch `{0}`")]
    UnknownStitch(String),

    #[error("row {row}, instruction {instruction}: `{stitch}` needs {needed} live stitch(es) but only {available} remain")]
    NeedleUnderflow {
        row: usize,
        instruction: usize,
        stitch: String,
        needed: usize,
        available: usize,
    },

    #[error("row {row}: {remaining} stitch(es) left unworked at the end of the row (add `turn` for a short row)")]
    RowIncomplete { row: usize, remaining: usize },

    #[error("not knittable: no yarn edge between nodes {0} and {1}")]
    NotKnittable(u32, u32),

    #[error("graph is not planar{}", witness_note(.witness))]
    NotPlanar { witness: Option<Vec<(u32, u32)>> },

    #[error("layout has no position for node {0}")]
    MissingPosition(u32),

    #[error("edge ({0}, {1}) has a non-positive desired length")]
    ZeroDesiredLength(u32, u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("stitch dictionary line {line}: {message}")]
    Dictionary { line: usize, message: String },

    #[error("malformed {what}: {message}")]
    Format { what: &'static str, message: String },
}

fn witness_note(witness: &Option<Vec<(u32, u32)>>) -> String {
    match witness {
        Some(edges) => format!(" (Kuratowski subgraph with {} edges)", edges.len()),
        None => String::new(),
    }
}
