use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("region is empty")]
    EmptyRegion,
    #[error("region is disconnected")]
    DisconnectedRegion,
    #[error("bad topology: {0}")]
    BadTopology(String),
    #[error("side gluing is not an involution at square {square} side {side}")]
    NonInvolution { square: usize, side: u8 },
    #[error("interior vertex touches {0} squares, expected 4")]
    InteriorVertexDegree(usize),
    #[error("squares {0} and {1} are glued but have the same color")]
    NoBicoloring(usize, usize),
    #[error("surface is not an annulus")]
    NotAnAnnulus,
    #[error("surface is not a disk")]
    NotADisk,
    #[error("attachment shapes do not match: {0}")]
    ShapeMismatch(String),
    #[error("chain is not a 1-cycle")]
    NotACycle,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("evaluation at zero with a negative exponent")]
    EvalAtZero,
    #[error("inexact division")]
    InexactDivision,
    #[error("track segment is unbalanced")]
    UnbalancedSegment,
    #[error("annulus is unbalanced")]
    UnbalancedAnnulus,
    #[error("inconsistent height function: {0}")]
    InconsistentHeight(String),
    #[error("region has no tilings")]
    NoTilings,
    #[error("enumeration cap of {0} squares exceeded")]
    CapExceeded(usize),
    #[error("walls present; theorem hypothesis unmet")]
    WallsPresent,
    #[error("no zig-zag cut found")]
    NoZigZagCut,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
