//! Batch evaluation of segmentation predictions on disk.
//!
//! Pairs prediction and ground-truth images (by directory scan or manifest),
//! evaluates them in parallel with `diseval-core` and renders reports as
//! JSON, CSV or Markdown. Reports do not depend on the worker count.

pub mod bench;
pub mod error;
pub mod io;
pub mod manifest;
pub mod report;
pub mod split;

pub use bench::{aggregate, run_benchmark, AggregateReport, BenchConfig, BenchOutput, EntryError, EvalRecord, Mode, Summary};
pub use error::{Error, Result};
pub use io::{load_mask, load_probmap, save_levels, save_mask};
pub use manifest::{pair_directories, scan_and_pair, Manifest, ManifestEntry, Pairing};
pub use report::{emit_report, Format, Report, SCHEMA_VERSION};
pub use split::{split_command, ComplexityReport, SplitListing};
