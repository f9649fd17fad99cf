use thiserror::Error;

/// Errors raised while constructing or combining spaces and maps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("label set is empty")]
    EmptyLabelSet,
    #[error("label is empty")]
    EmptyLabel,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("{labels} labels but {values} probabilities")]
    LengthMismatch { labels: usize, values: usize },
    #[error("probabilities sum to {sum}, not 1")]
    NotNormalized { sum: String },
    #[error("entry {value} at `{at}` lies outside [0,1]")]
    OutOfRange { at: String, value: String },
    #[error("column `{column}` sums to {sum}, not 1")]
    ColumnNotNormalized { column: String, sum: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("target distribution is not the pushforward of the source at `{label}`")]
    NotMeasurePreserving { label: String },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
