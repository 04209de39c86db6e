use std::path::PathBuf;

/// Error type shared by all texture-analysis operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A file could not be read or written.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// The input is not in a supported image format; the message names the
    /// offending header field or property.
    #[error("unsupported format: {0}")]
    Format(String),

    /// Image dimensions are invalid (zero-sized, or pixel data does not
    /// match the declared size).
    #[error("invalid dimensions: {0}")]
    Dimension(String),

    /// The requested construction has no valid pixel pairs (for example an
    /// eastward matrix of a one-column image) or an empty count matrix.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// An operation was called outside its contract (wrong matrix tag,
    /// non-normalized input, mismatched arguments).
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
