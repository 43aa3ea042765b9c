//! Evaluation kernels for dichotomous (binary) image segmentation.
//!
//! Everything here is pure computation over in-memory rasters and needs only
//! `alloc`: mask algebra, binary morphology, skeletons, border following,
//! dominant-point simplification, object-complexity measures, the
//! human-correction-effort (HCE) click count and the usual saliency metric
//! battery (max-F, weighted F, MAE, S-measure, mean E-measure).
//!
//! File decoding, batch scheduling and report formats live in the `diseval`
//! crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod complexity;
pub mod contour;
mod error;
pub mod hce;
pub mod metrics;
pub mod morphology;
pub mod raster;

pub use complexity::{complexity, dataset_stats, rank_and_split, ComplexityStats, DatasetStats, SplitPlan};
pub use contour::{dominant_point_count, find_contours, perimeter, rdp, Contour, ContourKind, Point, Polyline};
pub use error::Error;
pub use hce::{count_clicks, hce, relax, HceConfig, HceReport, RelaxedMasks};
pub use metrics::{evaluate_pair, EvalConfig, MetricScores, PairEvaluation};
pub use morphology::{dilate, erode, label_components, skeletonize, Connectivity, LabelMap, StructuringElement};
pub use raster::{binarize, complement, confusion, logic, BinaryMask, ConfusionMaps, GrayMap, LogicOp, Size};

pub type Result<T> = core::result::Result<T, Error>;
