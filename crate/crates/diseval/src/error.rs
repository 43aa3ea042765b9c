use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("cannot decode {path}: {message}")]
    Decode { path: PathBuf, message: String },
    #[error("{path}: unsupported pixel format {color} (8-bit gray, gray+alpha, RGB or RGBA only)")]
    UnsupportedBitDepth { path: PathBuf, color: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("no images found in {0}")]
    EmptyDirectory(PathBuf),
    #[error("ground truth without prediction: {}", .0.join(", "))]
    MissingPrediction(Vec<String>),
    #[error("prediction without ground truth: {}", .0.join(", "))]
    MissingGroundTruth(Vec<String>),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("report: {0}")]
    Report(String),
    #[error("worker pool: {0}")]
    WorkerPool(String),
    #[error(transparent)]
    Core(#[from] diseval_core::Error),
}

impl Error {
    /// Short machine-readable tag, used for the error section of reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FileNotFound(_) => "file_not_found",
            Error::Decode { .. } => "decode",
            Error::UnsupportedBitDepth { .. } => "unsupported_bit_depth",
            Error::Io { .. } => "io",
            Error::EmptyDirectory(_) => "empty_directory",
            Error::MissingPrediction(_) => "missing_prediction",
            Error::MissingGroundTruth(_) => "missing_ground_truth",
            Error::Manifest(_) => "manifest",
            Error::Report(_) => "report",
            Error::WorkerPool(_) => "worker_pool",
            Error::Core(e) => match e {
                diseval_core::Error::SizeMismatch { .. } => "size_mismatch",
                diseval_core::Error::EmptyGroundTruth => "empty_ground_truth",
                _ => "invalid_input",
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
