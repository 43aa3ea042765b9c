use alloc::vec::Vec;

use super::positives_per_threshold;
use crate::raster::{check_size, BinaryMask, GrayMap};
use crate::Result;

/// Number of binarization thresholds swept by [`e_measure_mean`].
pub const E_THRESHOLDS: usize = 256;

/// Mean enhanced-alignment score over the thresholds `(i + 1) / 256`,
/// `i = 0..256`, binarizing with `>=`.
///
/// Every pixel of a binarized map falls in one of four (prediction, truth)
/// classes and the alignment term depends only on the class, so each
/// threshold costs four evaluations once the positive counts are known.
pub fn e_measure_mean(p: &GrayMap, g: &BinaryMask) -> Result<f64> {
    check_size(p.size(), g.size())?;
    let n = p.size().area();
    let positives = g.count_ones();
    let thresholds: Vec<f64> = (0..E_THRESHOLDS).map(|i| (i + 1) as f64 / E_THRESHOLDS as f64).collect();
    let (tp, fp) = positives_per_threshold(p, g, &thresholds, |v| (v * E_THRESHOLDS as f64) as usize);

    let mut total = 0.0;
    for (&tp, &fp) in tp.iter().zip(&fp) {
        total += enhanced_alignment(n as u64, positives as u64, tp, fp);
    }
    Ok((total / E_THRESHOLDS as f64).clamp(0.0, 1.0))
}

/// Score of a single binary prediction with `tp`/`fp` positives against a
/// truth of `positives` out of `n` pixels.
fn enhanced_alignment(n: u64, positives: u64, tp: u64, fp: u64) -> f64 {
    let predicted = tp + fp;
    if positives == 0 {
        return (n - predicted) as f64 / n as f64;
    }
    if positives == n {
        return predicted as f64 / n as f64;
    }
    let mu_p = predicted as f64 / n as f64;
    let mu_g = positives as f64 / n as f64;
    let term = |pred: f64, truth: f64| {
        let (ap, ag) = (pred - mu_p, truth - mu_g);
        let align = 2.0 * ag * ap / (ag * ag + ap * ap);
        (align + 1.0) * (align + 1.0) / 4.0
    };
    let fn_ = positives - tp;
    let tn = n - positives - fp;
    let sum = tp as f64 * term(1.0, 1.0)
        + fp as f64 * term(1.0, 0.0)
        + fn_ as f64 * term(0.0, 1.0)
        + tn as f64 * term(0.0, 0.0);
    sum / n as f64
}
