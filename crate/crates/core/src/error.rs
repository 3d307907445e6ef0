use thiserror::Error;

use crate::composition::Composition;
use crate::diagram::Cell;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("composition lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("{size} cells exceeds the closure budget of {budget} (set KOHNERT_BUDGET to raise it)")]
    BudgetExceeded { size: u32, budget: u32 },

    #[error("weight length {len} is smaller than the highest occupied row {row}")]
    WeightTooShort { len: usize, row: u32 },

    #[error("diagram is not rectified")]
    NotRectified,

    #[error("no legal label for cell {0}")]
    NoLegalLabel(Cell),

    #[error("column {column} has {cells} cells but the shape asks for {labels}")]
    ColumnCount {
        column: u32,
        cells: usize,
        labels: usize,
    },

    #[error("label {label} on cell {cell} is below its row")]
    FlagViolated { cell: Cell, label: u32 },

    #[error("diagram is not in KD({0:?})")]
    NotInKd(Composition),

    #[error("diagram is not in PKD({0:?})")]
    NotInPkd(Composition),

    #[error("{lower:?} is not below {upper:?}")]
    NotBelow {
        lower: Composition,
        upper: Composition,
    },

    #[error("labels {r} and {s} do not abut at column {c}")]
    NotAbutting { r: u32, s: u32, c: u32 },

    #[error("position {0} is already occupied")]
    Occupied(Cell),

    #[error("row {r} exceeds the restriction k = {k}")]
    RowAboveK { r: u32, k: u32 },

    #[error("({c},{r}) is not {k}-addable for {beta:?}")]
    NotAddable {
        c: u32,
        r: u32,
        k: u32,
        beta: Composition,
    },

    #[error("not a partition: {0:?}")]
    NotPartition(Composition),

    #[error("diagram is not an insertion image: {0}")]
    NotInImage(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
