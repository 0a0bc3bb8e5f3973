use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pattern must not be empty")]
    EmptyPattern,
    #[error("pattern set must contain at least one pattern")]
    EmptyPatternSet,
    #[error("window length must be at least 1")]
    ZeroWindow,
    #[error("window at offset {offset} of length {len} exceeds text length {text_len}")]
    WindowOutOfRange {
        offset: usize,
        len: usize,
        text_len: usize,
    },
    #[error("block dimension {0} outside [1, {max}]", max = crate::MAX_BLOCK_DIM)]
    BlockDim(u32),
    #[error("grid dimensions must all be at least 1, got {0:?}")]
    GridDim((u32, u32, u32)),
    #[error("pattern length {m} exceeds text length {n}")]
    PatternLongerThanText { m: usize, n: usize },
    #[error("thread coordinate {0} is outside the launch configuration")]
    CoordOutOfRange(String),
    #[error("launch covers {threads} threads but the search needs {windows} windows")]
    UndersizedLaunch { threads: u64, windows: u64 },
    #[error("{windows} windows cannot be covered with a per-axis grid cap of {cap}")]
    GridTooLarge { windows: u64, cap: u32 },
    #[error("worker count must be at least 1")]
    ZeroWorkers,
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("alphabet symbol {0:#04x} appears more than once")]
    DuplicateSymbol(u8),
    #[error("planted occurrence at offset {offset} runs past text length {text_len}")]
    PlantOutOfRange { offset: usize, text_len: usize },
    #[error("planted occurrences at offsets {first} and {second} overlap")]
    PlantOverlap { first: usize, second: usize },
    #[error("times must be positive, got {0}")]
    NonPositiveTime(f64),
    #[error("repetition count {got} is below the minimum of {min}")]
    TooFewReps { got: usize, min: usize },
    #[error("sweep needs at least one axis value")]
    EmptySweep,
    #[error("unknown sweep axis `{0}`")]
    UnknownAxis(String),
    #[error("axis value {value} is invalid: {reason}")]
    InvalidAxisValue { value: u64, reason: String },
    #[error("correctness failure: {0}")]
    Correctness(String),
    #[error("report serialization failed: {0}")]
    Report(String),
}
