//! Per-image complexity tables and complexity-ranked splits.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use diseval_core::{complexity, dataset_stats, rank_and_split, ComplexityStats, DatasetStats};
use serde::{Deserialize, Serialize};

use crate::bench::{parallel_map, EntryError};
use crate::error::{Error, Result};
use crate::io::{load_mask, GT_THRESHOLD};
use crate::manifest::scan_images;
use crate::report::{num, to_json, Format, SCHEMA_VERSION};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityRecord {
    pub id: String,
    #[serde(flatten)]
    pub stats: ComplexityStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub schema_version: u32,
    pub epsilon: f64,
    /// Absent when nothing could be measured.
    pub dataset: Option<DatasetStats>,
    pub records: Vec<ComplexityRecord>,
    pub errors: Vec<EntryError>,
}

/// Ground-truth masks found under `dir`, as `(id, path)` in id order.
pub fn ground_truths(dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    Ok(scan_images(dir)?.into_iter().collect())
}

/// Measures every mask; unreadable ones land in `errors`.
pub fn measure(gts: &[(String, PathBuf)], epsilon: f64, workers: usize) -> Result<ComplexityReport> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(diseval_core::Error::NegativeEpsilon(epsilon).into());
    }
    let results = parallel_map(gts, workers, |(id, path)| {
        let stats = load_mask(path, GT_THRESHOLD).and_then(|g| Ok(complexity(&g, epsilon)?));
        (id.clone(), stats)
    })?;
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for (id, r) in results {
        match r {
            Ok(stats) => records.push(ComplexityRecord { id, stats }),
            Err(e) => errors.push(EntryError::new(&id, &e)),
        }
    }
    records.sort_by(|a, b| a.id.cmp(&b.id));
    errors.sort_by(|a, b| a.id.cmp(&b.id));
    let stats: Vec<ComplexityStats> = records.iter().map(|r| r.stats).collect();
    let dataset = dataset_stats(&stats).ok();
    Ok(ComplexityReport { schema_version: SCHEMA_VERSION, epsilon, dataset, records, errors })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitBin {
    /// 1-based, easiest first.
    pub index: usize,
    pub count: usize,
    pub min_score: f64,
    pub max_score: f64,
    pub ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitListing {
    pub schema_version: u32,
    pub k: usize,
    pub epsilon: f64,
    pub score: String,
    pub bins: Vec<SplitBin>,
    pub errors: Vec<EntryError>,
}

/// Ranks the measured masks by `ipq × p_num` and cuts them into `k` bins.
pub fn split_measured(report: &ComplexityReport, k: usize) -> Result<SplitListing> {
    let items: Vec<(&str, ComplexityStats)> = report.records.iter().map(|r| (r.id.as_str(), r.stats)).collect();
    let plan = rank_and_split(&items, k)?;
    let bins = (0..k)
        .map(|b| {
            let items = plan.bin(b);
            SplitBin {
                index: b + 1,
                count: items.len(),
                min_score: items.first().map_or(0.0, |i| i.score),
                max_score: items.last().map_or(0.0, |i| i.score),
                ids: items.iter().map(|i| i.id.clone()).collect(),
            }
        })
        .collect();
    Ok(SplitListing {
        schema_version: SCHEMA_VERSION,
        k,
        epsilon: report.epsilon,
        score: "ipq*p_num".into(),
        bins,
        errors: report.errors.clone(),
    })
}

/// Measures every ground truth under `gt_dir` and splits them into `k` bins.
pub fn split_command(gt_dir: &Path, k: usize, epsilon: f64, workers: usize) -> Result<SplitListing> {
    let gts = ground_truths(gt_dir)?;
    split_measured(&measure(&gts, epsilon, workers)?, k)
}

/// Writes `bin_<i>.txt` files, one id per line, into `dir`.
pub fn write_bin_lists(listing: &SplitListing, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.into(), source })?;
    let mut written = Vec::new();
    for bin in &listing.bins {
        let path = dir.join(format!("bin_{}.txt", bin.index));
        let mut text = bin.ids.join("\n");
        text.push('\n');
        std::fs::write(&path, text).map_err(|source| Error::Io { path: path.clone(), source })?;
        written.push(path);
    }
    Ok(written)
}

fn csv_bytes(rows: Vec<Vec<String>>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    w.into_inner().expect("in-memory csv")
}

pub fn emit_complexity(report: &ComplexityReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut rows = vec![["kind", "id", "height", "width", "diagonal", "ipq", "c_num", "p_num", "perimeter", "area", "error"]
                .map(String::from)
                .to_vec()];
            for r in &report.records {
                let s = &r.stats;
                rows.push(vec![
                    "image".into(),
                    r.id.clone(),
                    s.height_h.to_string(),
                    s.width_w.to_string(),
                    s.diagonal_d.to_string(),
                    s.ipq.to_string(),
                    s.c_num.to_string(),
                    s.p_num.to_string(),
                    s.perimeter_l.to_string(),
                    s.area_a.to_string(),
                    String::new(),
                ]);
            }
            if let Some(d) = &report.dataset {
                let cols = [d.height, d.width, d.diagonal, d.ipq, d.c_num, d.p_num];
                for (kind, pick) in [("mean", 0), ("std", 1)] {
                    let mut row = vec![kind.to_string(), String::new()];
                    row.extend(cols.iter().map(|c| num(Some(if pick == 0 { c.mean } else { c.std }))));
                    row.extend([String::new(), String::new(), String::new()]);
                    rows.push(row);
                }
            }
            for e in &report.errors {
                let mut row = vec!["error".to_string(), e.id.clone()];
                row.resize(10, String::new());
                row.push(format!("{}: {}", e.kind, e.message));
                rows.push(row);
            }
            csv_bytes(rows)
        }
        Format::Markdown => {
            let mut out = String::from("# Object complexity\n\n");
            let _ = writeln!(out, "Dominant points at ε = {}.\n", report.epsilon);
            match &report.dataset {
                None => out.push_str("No images measured.\n"),
                Some(d) => {
                    out.push_str("| I_num | H | W | D | IPQ | C_num | P_num |\n|---|---|---|---|---|---|---|\n");
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} | {} | {} | {} |",
                        d.i_num, d.height, d.width, d.diagonal, d.ipq, d.c_num, d.p_num
                    );
                }
            }
            if !report.errors.is_empty() {
                out.push_str("\n## Errors\n\n| Id | Kind | Message |\n|---|---|---|\n");
                for e in &report.errors {
                    let _ = writeln!(out, "| {} | {} | {} |", e.id, e.kind, e.message);
                }
            }
            out.into_bytes()
        }
    }
}

pub fn emit_split(listing: &SplitListing, format: Format) -> Vec<u8> {
    match format {
        Format::Json => to_json(listing),
        Format::Csv => {
            let mut rows = vec![vec!["bin".to_string(), "rank".into(), "id".into()]];
            for bin in &listing.bins {
                for (rank, id) in bin.ids.iter().enumerate() {
                    rows.push(vec![bin.index.to_string(), (rank + 1).to_string(), id.clone()]);
                }
            }
            csv_bytes(rows)
        }
        Format::Markdown => {
            let mut out = String::from("# Complexity split\n\n");
            let _ = writeln!(out, "{} bins ranked by IPQ × P_num (ε = {}), easiest first.\n", listing.k, listing.epsilon);
            out.push_str("| Bin | Images | Score range |\n|---|---|---|\n");
            for bin in &listing.bins {
                let _ = writeln!(out, "| {} | {} | {:.2} – {:.2} |", bin.index, bin.count, bin.min_score, bin.max_score);
            }
            for bin in &listing.bins {
                let _ = writeln!(out, "\n## Bin {}\n", bin.index);
                for id in &bin.ids {
                    let _ = writeln!(out, "- {}", id);
                }
            }
            out.into_bytes()
        }
    }
}
