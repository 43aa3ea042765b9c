//! Lists of prediction/ground-truth pairs, from files or directory scans.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// File extensions recognised as images when scanning (case-insensitive).
pub const IMAGE_EXTENSIONS: &[&str] = &["png", "pgm", "ppm", "pnm", "jpg", "jpeg", "bmp", "tif", "tiff", "webp"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub pred_path: PathBuf,
    pub gt_path: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Manifest {
    entries: Vec<ManifestEntry>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ManifestFile {
    Wrapped { entries: Vec<ManifestEntry> },
    Bare(Vec<ManifestEntry>),
}

impl Manifest {
    /// Checks that ids are unique and no id or path is empty. Entries keep
    /// their order.
    pub fn new(entries: Vec<ManifestEntry>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in &entries {
            if e.id.is_empty() {
                return Err(Error::Manifest("entry with empty id".into()));
            }
            if e.pred_path.as_os_str().is_empty() || e.gt_path.as_os_str().is_empty() {
                return Err(Error::Manifest(format!("entry {:?} has an empty path", e.id)));
            }
            if !seen.insert(e.id.as_str()) {
                return Err(Error::Manifest(format!("duplicate id {:?}", e.id)));
            }
        }
        Ok(Manifest { entries })
    }

    /// Reads a `.csv` (columns `id,pred_path,gt_path[,group][,subset]`) or
    /// `.json` manifest (a list of entries, or `{"entries": [...]}`).
    /// Relative paths are taken from the manifest's directory; empty group
    /// and subset cells mean none.
    pub fn load(path: &Path) -> Result<Self> {
        if !path.is_file() {
            return Err(Error::FileNotFound(path.to_path_buf()));
        }
        let ext = path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
        let mut entries: Vec<ManifestEntry> = match ext.as_deref() {
            Some("json") => {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
                match serde_json::from_str(&text).map_err(|e| Error::Manifest(format!("{}: {}", path.display(), e)))? {
                    ManifestFile::Wrapped { entries } | ManifestFile::Bare(entries) => entries,
                }
            }
            Some("csv") => {
                let mut reader = csv::ReaderBuilder::new()
                    .trim(csv::Trim::All)
                    .from_path(path)
                    .map_err(|e| Error::Manifest(format!("{}: {}", path.display(), e)))?;
                reader
                    .deserialize()
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::Manifest(format!("{}: {}", path.display(), e)))?
            }
            _ => return Err(Error::Manifest(format!("{}: expected a .csv or .json file", path.display()))),
        };
        let base = path.parent().unwrap_or(Path::new(""));
        for e in &mut entries {
            e.pred_path = base.join(&e.pred_path);
            e.gt_path = base.join(&e.gt_path);
            e.group = e.group.take().filter(|g| !g.is_empty());
            e.subset = e.subset.take().filter(|s| !s.is_empty());
        }
        Manifest::new(entries)
    }

    pub fn entries(&self) -> &[ManifestEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// A single pair named after the ground-truth file stem.
    pub fn single(pred: &Path, gt: &Path) -> Result<Self> {
        let id = gt.file_stem().and_then(|s| s.to_str()).unwrap_or("image").to_string();
        Manifest::new(vec![ManifestEntry { id, pred_path: pred.into(), gt_path: gt.into(), group: None, subset: None }])
    }
}

/// Outcome of matching two directory trees. Unmatched stems are kept, not
/// dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub manifest: Manifest,
    pub missing_prediction: Vec<String>,
    pub missing_ground_truth: Vec<String>,
}

/// Image files under `dir`, keyed by their path relative to `dir` without
/// extension (components joined with `/`). Hidden entries are skipped.
pub fn scan_images(dir: &Path) -> Result<BTreeMap<String, PathBuf>> {
    if !dir.is_dir() {
        return Err(Error::FileNotFound(dir.to_path_buf()));
    }
    let mut found = BTreeMap::new();
    let mut pending = vec![(dir.to_path_buf(), String::new())];
    while let Some((here, prefix)) = pending.pop() {
        let listing = std::fs::read_dir(&here).map_err(|source| Error::Io { path: here.clone(), source })?;
        for item in listing {
            let item = item.map_err(|source| Error::Io { path: here.clone(), source })?;
            let path = item.path();
            let Some(name) = path.file_name().and_then(|n| n.to_str()).map(str::to_string) else {
                continue;
            };
            if name.starts_with('.') {
                continue;
            }
            if path.is_dir() {
                pending.push((path, format!("{}{}/", prefix, name)));
                continue;
            }
            let is_image = path
                .extension()
                .and_then(|e| e.to_str())
                .is_some_and(|e| IMAGE_EXTENSIONS.iter().any(|x| x.eq_ignore_ascii_case(e)));
            if !is_image {
                continue;
            }
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            let id = format!("{}{}", prefix, stem);
            if let Some(other) = found.insert(id.clone(), path.clone()) {
                return Err(Error::Manifest(format!(
                    "{} and {} share the stem {:?}",
                    other.display(),
                    path.display(),
                    id
                )));
            }
        }
    }
    if found.is_empty() {
        return Err(Error::EmptyDirectory(dir.to_path_buf()));
    }
    Ok(found)
}

/// Matches predictions to ground truths by relative stem. The first
/// subdirectory, if any, becomes the entry's group.
pub fn pair_directories(pred_dir: &Path, gt_dir: &Path) -> Result<Pairing> {
    let preds = scan_images(pred_dir)?;
    let gts = scan_images(gt_dir)?;
    let mut entries = Vec::new();
    let mut missing_prediction = Vec::new();
    for (id, gt_path) in &gts {
        match preds.get(id) {
            Some(pred_path) => entries.push(ManifestEntry {
                id: id.clone(),
                pred_path: pred_path.clone(),
                gt_path: gt_path.clone(),
                group: id.split_once('/').map(|(g, _)| g.to_string()),
                subset: None,
            }),
            None => missing_prediction.push(id.clone()),
        }
    }
    let missing_ground_truth = preds.keys().filter(|id| !gts.contains_key(*id)).cloned().collect();
    Ok(Pairing { manifest: Manifest::new(entries)?, missing_prediction, missing_ground_truth })
}

/// Strict pairing: every ground truth needs a prediction and vice versa.
pub fn scan_and_pair(pred_dir: &Path, gt_dir: &Path) -> Result<Manifest> {
    let pairing = pair_directories(pred_dir, gt_dir)?;
    if !pairing.missing_prediction.is_empty() {
        return Err(Error::MissingPrediction(pairing.missing_prediction));
    }
    if !pairing.missing_ground_truth.is_empty() {
        return Err(Error::MissingGroundTruth(pairing.missing_ground_truth));
    }
    Ok(pairing.manifest)
}
