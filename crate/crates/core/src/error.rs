use thiserror::Error;

/// Errors raised by geometry, bundle, derivative and scenario routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MosaicError {
    #[error("singular metric: det g = {det:e}")]
    SingularMetric { det: f64 },
    #[error("point (t={t}, y=({y1}, {y2})) outside chart domain")]
    DomainError { t: f64, y1: f64, y2: f64 },
    #[error("second jets unavailable and finite differences disabled")]
    JetUnavailable,
    #[error("rank {0} exceeds the cap of 8")]
    RankCap(usize),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("events do not match: |Z_A - Z_B| = {distance:e}")]
    EventMismatch { distance: f64 },
    #[error("missing jet: {0}")]
    MissingJet(&'static str),
    #[error("unknown derivative kind for this rank: {0}")]
    UnknownKind(String),
    #[error("slot {slot} out of range for rank {rank}")]
    SlotOutOfRange { slot: usize, rank: usize },
    #[error("unsupported kind {kind} for scenario {scenario}")]
    UnsupportedKind { scenario: String, kind: String },
    #[error("time step too large: norm grew by {growth:e}")]
    StepTooLarge { growth: f64 },
    #[error("CFL violation: dt = {dt:e} exceeds limit {limit:e}")]
    CflViolation { dt: f64, limit: f64 },
    #[error("zero field has no direction")]
    ZeroField,
    #[error("no circulation at the equator")]
    NoCirculation,
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, MosaicError>;
