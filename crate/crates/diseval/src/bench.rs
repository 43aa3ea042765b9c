//! Parallel evaluation of a manifest and image-weighted aggregation.

use std::collections::BTreeMap;
use std::time::Instant;

use diseval_core::{complexity, evaluate_pair, hce, ComplexityStats, EvalConfig, HceReport, MetricScores};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{load_mask, load_probmap, GT_THRESHOLD};
use crate::manifest::{Manifest, ManifestEntry};

/// Label for records without a subset or group, when others have one.
pub const UNASSIGNED: &str = "unassigned";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// All six metrics.
    Full,
    /// Correction effort only; the ground truth may be empty.
    HceOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchConfig {
    pub eval: EvalConfig,
    /// Worker threads; 0 picks one per available core.
    pub workers: usize,
    pub mode: Mode,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { eval: EvalConfig::default(), workers: 0, mode: Mode::Full }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<String>,
    #[serde(flatten)]
    pub hce: HceReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scores: Option<MetricScores>,
    pub complexity: ComplexityStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryError {
    pub id: String,
    pub kind: String,
    pub message: String,
}

impl EntryError {
    pub fn new(id: &str, err: &Error) -> Self {
        EntryError { id: id.to_string(), kind: err.kind().to_string(), message: err.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOutput {
    pub records: Vec<EvalRecord>,
    pub errors: Vec<EntryError>,
}

/// Means over one set of records. Metric means are absent when no record in
/// the set carries scores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub name: String,
    pub count: usize,
    pub max_f: Option<f64>,
    pub weighted_f: Option<f64>,
    pub mae: Option<f64>,
    pub s_measure: Option<f64>,
    pub e_measure_mean: Option<f64>,
    pub hce: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub pooling: String,
    pub overall: Summary,
    pub subsets: Vec<Summary>,
    pub groups: Vec<Summary>,
}

pub fn evaluate_entry(entry: &ManifestEntry, config: &BenchConfig) -> Result<EvalRecord> {
    let start = Instant::now();
    let g = load_mask(&entry.gt_path, GT_THRESHOLD)?;
    let p = load_probmap(&entry.pred_path)?;
    let (scores, hce_report) = match config.mode {
        Mode::Full => {
            let e = evaluate_pair(&p, &g, &config.eval)?;
            (Some(e.scores), e.hce)
        }
        Mode::HceOnly => (None, hce(&p, &g, &config.eval.hce_config())?),
    };
    let complexity = complexity(&g, config.eval.epsilon)?;
    Ok(EvalRecord {
        id: entry.id.clone(),
        group: entry.group.clone(),
        subset: entry.subset.clone(),
        hce: hce_report,
        scores,
        complexity,
        wall_time_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    })
}

/// Maps `f` over `items` on a pool of `workers` threads, keeping input order.
pub fn parallel_map<T: Sync, R: Send>(items: &[T], workers: usize, f: impl Fn(&T) -> R + Sync) -> Result<Vec<R>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::WorkerPool(e.to_string()))?;
    Ok(pool.install(|| items.par_iter().map(&f).collect()))
}

/// Evaluates every entry; a failing entry becomes an [`EntryError`] and the
/// rest carry on. Records and errors come back sorted by id whatever the
/// worker count.
pub fn run_benchmark(manifest: &Manifest, config: &BenchConfig) -> Result<BenchOutput> {
    let entries = manifest.entries();
    let results = parallel_map(entries, config.workers, |e| evaluate_entry(e, config))?;
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for (entry, r) in entries.iter().zip(results) {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => errors.push(EntryError::new(&entry.id, &e)),
        }
    }
    records.sort_by(|a, b| a.id.cmp(&b.id));
    errors.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(BenchOutput { records, errors })
}

fn summarize(name: &str, records: &[&EvalRecord]) -> Summary {
    let mean = |f: &dyn Fn(&EvalRecord) -> Option<f64>| {
        let values: Vec<f64> = records.iter().filter_map(|r| f(r)).collect();
        (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
    };
    Summary {
        name: name.to_string(),
        count: records.len(),
        max_f: mean(&|r| r.scores.map(|s| s.max_f)),
        weighted_f: mean(&|r| r.scores.map(|s| s.weighted_f)),
        mae: mean(&|r| r.scores.map(|s| s.mae)),
        s_measure: mean(&|r| r.scores.map(|s| s.s_measure)),
        e_measure_mean: mean(&|r| r.scores.map(|s| s.e_measure_mean)),
        hce: mean(&|r| Some(r.hce.total as f64)),
    }
}

/// Rows per distinct label, sorted; empty when no record has a label.
fn partition(records: &[EvalRecord], label: impl Fn(&EvalRecord) -> Option<&str>) -> Vec<Summary> {
    if records.iter().all(|r| label(r).is_none()) {
        return Vec::new();
    }
    let mut parts: BTreeMap<&str, Vec<&EvalRecord>> = BTreeMap::new();
    for r in records {
        parts.entry(label(r).unwrap_or(UNASSIGNED)).or_default().push(r);
    }
    parts.iter().map(|(name, rs)| summarize(name, rs)).collect()
}

/// Image-weighted means: overall, per subset and per group. Sums run in the
/// order given, so sorted input gives reproducible digits.
pub fn aggregate(records: &[EvalRecord]) -> AggregateReport {
    let all: Vec<&EvalRecord> = records.iter().collect();
    AggregateReport {
        pooling: "image-weighted".to_string(),
        overall: summarize("overall", &all),
        subsets: partition(records, |r| r.subset.as_deref()),
        groups: partition(records, |r| r.group.as_deref()),
    }
}
