use crate::index::SubsystemIndex;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid subsystem index {0}: {1}")]
    InvalidIndex(SubsystemIndex, &'static str),
    #[error("index {index} lies outside the {nx}x{ny} system")]
    OutOfBounds {
        index: SubsystemIndex,
        nx: usize,
        ny: usize,
    },
    #[error("information table has no entry for {0}")]
    MissingEntry(SubsystemIndex),
    #[error("information table has no entry for site set [{0}]")]
    MissingSiteSet(String),
    #[error("family is not closed under intersection: [{a}] and [{b}] meet in [{meet}]")]
    NotIntersectionClosed { a: String, b: String, meet: String },
    #[error("family contains duplicate site set [{0}]")]
    DuplicateMember(String),
    #[error("fingerprint mismatch: lattice {lattice}, table {table}")]
    FingerprintMismatch { lattice: String, table: String },
    #[error("subsystem of {requested} sites exceeds the dense limit of {limit}")]
    DenseLimit { requested: usize, limit: usize },
    #[error("site {site} out of range for {n} sites")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("state is not normalized: norm {0}")]
    NotNormalized(f64),
    #[error("projection annihilated the state")]
    ZeroProjection,
    #[error("generators do not commute: {0} and {1}")]
    NonCommuting(usize, usize),
    #[error("correlation spectrum outside the physical range: {0}")]
    Unphysical(String),
    #[error("matrix is not {0}")]
    BadMatrix(&'static str),
    #[error("ground state is ambiguous: {0}")]
    AmbiguousGroundState(String),
    #[error("subsystem {index}: {source}")]
    AtSubsystem {
        index: SubsystemIndex,
        source: Box<Error>,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("fit failed: {0}")]
    Fit(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
