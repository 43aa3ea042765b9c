use crate::raster::Size;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid raster size {height}x{width}: both dimensions must be at least 1")]
    InvalidSize { height: usize, width: usize },
    #[error("buffer holds {len} cells but a {size} raster needs {expected}")]
    BufferLength { size: Size, len: usize, expected: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: Size, right: Size },
    #[error("value {value} at cell {index} is outside [0, 1]")]
    ValueOutOfRange { index: usize, value: f64 },
    #[error("structuring element must contain (0, 0) and be symmetric under negation")]
    InvalidStructuringElement,
    #[error("epsilon must be a non-negative number, got {0}")]
    NegativeEpsilon(f64),
    #[error("ground truth has no foreground pixels")]
    EmptyGroundTruth,
    #[error("no records to aggregate")]
    EmptyDataset,
    #[error("cannot split {items} items into {k} bins")]
    InvalidK { k: usize, items: usize },
}
