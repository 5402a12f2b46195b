use thiserror::Error;

/// Errors raised by the library.
///
/// Resource-style failures (`ElementCap`, `RadiusExceeded`, `Budget`) are
/// kept apart from input errors so front ends can map them to different
/// exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("element not found within search radius {radius}")]
    RadiusExceeded { radius: usize },

    #[error("element cap of {cap} exceeded while enumerating radius {radius_reached}")]
    ElementCap { cap: usize, radius_reached: usize },

    #[error("enumeration budget of {budget} exceeded")]
    Budget { budget: usize },

    #[error("group too large for this operation: {size} elements (limit {limit})")]
    TooLarge { size: usize, limit: usize },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("malformed table: {0}")]
    Table(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures caused by hitting a configured size or time cap.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::RadiusExceeded { .. }
                | Error::ElementCap { .. }
                | Error::Budget { .. }
                | Error::TooLarge { .. }
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
