use thiserror::Error;

/// Errors raised by the library. Resource errors are kept distinct from
/// input errors so that front ends can map them to different exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}: {reason}")]
    InvalidRank {
        family: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("cannot parse type string {0:?}")]
    InvalidType(String),
    #[error("node index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a Cartan matrix of finite type: {0}")]
    NotCartan(String),
    #[error("lattice error: {0}")]
    Lattice(String),
    #[error("{what} needs {needed} but the configured cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
}

impl Error {
    /// True for errors caused by a configured resource cap rather than by bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
