use alloc::vec::Vec;

use super::positives_per_threshold;
use crate::raster::{check_size, BinaryMask, GrayMap};
use crate::{Error, Result};

/// Best F_β over the 256 thresholds `i / 255` (binarize with `>=`).
/// A threshold with no true positive scores 0.
pub fn max_f_beta(p: &GrayMap, g: &BinaryMask, beta_sq: f64) -> Result<f64> {
    check_size(p.size(), g.size())?;
    let positives = g.count_ones();
    if positives == 0 {
        return Err(Error::EmptyGroundTruth);
    }
    let thresholds: Vec<f64> = (0..256).map(|i| i as f64 / 255.0).collect();
    let (tp, fp) = positives_per_threshold(p, g, &thresholds, |v| (v * 255.0) as usize + 1);
    let mut best: f64 = 0.0;
    for (&tp, &fp) in tp.iter().zip(&fp) {
        if tp == 0 {
            continue;
        }
        let precision = tp as f64 / (tp + fp) as f64;
        let recall = tp as f64 / positives as f64;
        let f = (1.0 + beta_sq) * precision * recall / (beta_sq * precision + recall);
        best = best.max(f);
    }
    Ok(best.min(1.0))
}
