use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("grid with {points} points exceeds the budget of {budget} points")]
    GridTooLarge { points: usize, budget: usize },

    #[error("largest jump requested on a path whose jumps are not resolved (cutoff = 0)")]
    UnresolvedJumps,

    #[error("scale value {value} is {} the range [0, {max}] of the scale function", if *.above { "above" } else { "below" })]
    ScaleOutOfRange { value: f64, max: f64, above: bool },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error at {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
