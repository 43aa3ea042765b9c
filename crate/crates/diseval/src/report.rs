//! Report documents and their JSON, CSV and Markdown renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bench::{aggregate, AggregateReport, BenchConfig, BenchOutput, EntryError, EvalRecord, Mode, Summary};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

/// Parameters that shaped the numbers. The worker count is left out on
/// purpose: it must not change the output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub gamma: u32,
    pub epsilon: f64,
    pub tau: f64,
    pub beta_sq: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: RunConfig,
    pub aggregate: AggregateReport,
    pub records: Vec<EvalRecord>,
    pub errors: Vec<EntryError>,
}

impl Report {
    /// Aggregates `output`. Wall times are dropped unless `timings` is
    /// set, since they differ from run to run.
    pub fn new(config: &BenchConfig, output: BenchOutput, timings: bool) -> Self {
        let BenchOutput { mut records, errors } = output;
        if !timings {
            for r in &mut records {
                r.wall_time_ms = None;
            }
        }
        let e = &config.eval;
        Report {
            schema_version: SCHEMA_VERSION,
            config: RunConfig {
                mode: config.mode,
                gamma: e.gamma,
                epsilon: e.epsilon,
                tau: e.tau,
                beta_sq: e.beta_sq,
                alpha: e.alpha,
            },
            aggregate: aggregate(&records),
            records,
            errors,
        }
    }

    /// Reads a JSON report written by [`emit_report`].
    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let report: Report = serde_json::from_slice(bytes).map_err(|e| Error::Report(e.to_string()))?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(Error::Report(format!(
                "schema version {} is not supported (expected {})",
                report.schema_version, SCHEMA_VERSION
            )));
        }
        Ok(report)
    }
}

pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => report_csv(report),
        Format::Markdown => report_markdown(report).into_bytes(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report values serialize");
    out.push(b'\n');
    out
}

pub(crate) fn num(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub(crate) const CSV_HEADER: &[&str] = &[
    "kind",
    "id",
    "group",
    "subset",
    "count",
    "max_f",
    "weighted_f",
    "mae",
    "s_measure",
    "e_measure_mean",
    "hce",
    "hce_fn_boundary_points",
    "hce_fn_region_clicks",
    "hce_fp_boundary_points",
    "hce_fp_region_clicks",
    "ipq",
    "c_num",
    "p_num",
    "wall_time_ms",
    "error",
];

fn report_csv(report: &Report) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory csv");
    for r in &report.records {
        let s = r.scores;
        let h = &r.hce;
        let row = [
            "image".to_string(),
            r.id.clone(),
            r.group.clone().unwrap_or_default(),
            r.subset.clone().unwrap_or_default(),
            "1".to_string(),
            num(s.map(|s| s.max_f)),
            num(s.map(|s| s.weighted_f)),
            num(s.map(|s| s.mae)),
            num(s.map(|s| s.s_measure)),
            num(s.map(|s| s.e_measure_mean)),
            h.total.to_string(),
            h.fn_boundary_points.to_string(),
            h.fn_region_clicks.to_string(),
            h.fp_boundary_points.to_string(),
            h.fp_region_clicks.to_string(),
            r.complexity.ipq.to_string(),
            r.complexity.c_num.to_string(),
            r.complexity.p_num.to_string(),
            num(r.wall_time_ms),
            String::new(),
        ];
        w.write_record(&row).expect("in-memory csv");
    }
    let agg = &report.aggregate;
    let labelled = std::iter::once(("overall", &agg.overall))
        .chain(agg.subsets.iter().map(|s| ("subset", s)))
        .chain(agg.groups.iter().map(|s| ("group", s)));
    for (kind, s) in labelled {
        let (group, subset) = match kind {
            "group" => (s.name.clone(), String::new()),
            "subset" => (String::new(), s.name.clone()),
            _ => (String::new(), String::new()),
        };
        let mut row = vec![
            format!("aggregate_{}", kind),
            String::new(),
            group,
            subset,
            s.count.to_string(),
            num(s.max_f),
            num(s.weighted_f),
            num(s.mae),
            num(s.s_measure),
            num(s.e_measure_mean),
            num(s.hce),
        ];
        row.resize(CSV_HEADER.len(), String::new());
        w.write_record(&row).expect("in-memory csv");
    }
    for e in &report.errors {
        let mut row = vec!["error".to_string(), e.id.clone()];
        row.resize(CSV_HEADER.len() - 1, String::new());
        row.push(format!("{}: {}", e.kind, e.message));
        w.write_record(&row).expect("in-memory csv");
    }
    w.into_inner().expect("in-memory csv")
}

/// Row labels of the metric table, in display order.
pub const METRIC_LABELS: [&str; 6] = ["maxFβ↑", "F^w_β↑", "M↓", "S_α↑", "E^m_φ↑", "HCE_γ↓"];

fn metric_cells(s: &Summary) -> [String; 6] {
    let f = |v: Option<f64>| v.map(|v| format!("{:.3}", v)).unwrap_or_else(|| "-".into());
    [
        f(s.max_f),
        f(s.weighted_f),
        f(s.mae),
        f(s.s_measure),
        f(s.e_measure_mean),
        s.hce.map(|v| format!("{:.0}", v)).unwrap_or_else(|| "-".into()),
    ]
}

fn md_row(out: &mut String, cells: impl IntoIterator<Item = String>) {
    out.push('|');
    for c in cells {
        let _ = write!(out, " {} |", c.replace('|', "\\|"));
    }
    out.push('\n');
}

fn md_rule(out: &mut String, columns: usize) {
    out.push('|');
    for _ in 0..columns {
        out.push_str("---|");
    }
    out.push('\n');
}

fn report_markdown(report: &Report) -> String {
    let c = &report.config;
    let agg = &report.aggregate;
    let mut out = String::from("# Evaluation report\n\n");
    let _ = writeln!(
        out,
        "γ = {}, ε = {}, τ = {}, β² = {}. Means are {} over {} image(s).\n",
        c.gamma, c.epsilon, c.tau, c.beta_sq, agg.pooling, agg.overall.count
    );
    if agg.overall.count == 0 {
        out.push_str("No images evaluated.\n");
    } else {
        let columns: Vec<&Summary> = agg.subsets.iter().chain(std::iter::once(&agg.overall)).collect();
        let mut header = vec!["Metric".to_string()];
        header.extend(agg.subsets.iter().map(|s| s.name.clone()));
        header.push("Overall".into());
        md_row(&mut out, header);
        md_rule(&mut out, columns.len() + 1);
        let mut counts = vec!["Images".to_string()];
        counts.extend(columns.iter().map(|s| s.count.to_string()));
        md_row(&mut out, counts);
        let cells: Vec<[String; 6]> = columns.iter().map(|s| metric_cells(s)).collect();
        for (i, label) in METRIC_LABELS.iter().enumerate() {
            let mut row = vec![label.to_string()];
            row.extend(cells.iter().map(|c| c[i].clone()));
            md_row(&mut out, row);
        }
        if !agg.groups.is_empty() {
            out.push_str("\n## Groups\n\n");
            let mut header = vec!["Group".to_string(), "Images".to_string()];
            header.extend(METRIC_LABELS.iter().map(|l| l.to_string()));
            md_row(&mut out, header);
            md_rule(&mut out, METRIC_LABELS.len() + 2);
            for g in &agg.groups {
                let mut row = vec![g.name.clone(), g.count.to_string()];
                row.extend(metric_cells(g));
                md_row(&mut out, row);
            }
        }
    }
    if !report.errors.is_empty() {
        out.push_str("\n## Errors\n\n");
        md_row(&mut out, ["Id".to_string(), "Kind".to_string(), "Message".to_string()]);
        md_rule(&mut out, 3);
        for e in &report.errors {
            md_row(&mut out, [e.id.clone(), e.kind.clone(), e.message.clone()]);
        }
    }
    out
}
