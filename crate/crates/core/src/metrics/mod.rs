//! Saliency-style metric battery for one prediction/ground-truth pair.

mod enhanced;
mod fmeasure;
mod structure;
mod weighted;

pub use enhanced::e_measure_mean;
pub use fmeasure::max_f_beta;
pub use structure::s_measure;
pub use weighted::weighted_f_beta;

use crate::hce::{hce, HceConfig, HceReport};
use crate::raster::{check_size, BinaryMask, GrayMap};
use crate::Result;

pub const DEFAULT_BETA_SQ: f64 = 0.3;
pub const DEFAULT_ALPHA: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MetricScores {
    pub max_f: f64,
    pub weighted_f: f64,
    pub mae: f64,
    pub s_measure: f64,
    pub e_measure_mean: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvalConfig {
    pub gamma: u32,
    pub epsilon: f64,
    pub tau: f64,
    pub beta_sq: f64,
    pub alpha: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        let h = HceConfig::default();
        EvalConfig { gamma: h.gamma, epsilon: h.epsilon, tau: h.tau, beta_sq: DEFAULT_BETA_SQ, alpha: DEFAULT_ALPHA }
    }
}

impl EvalConfig {
    pub fn hce_config(&self) -> HceConfig {
        HceConfig { gamma: self.gamma, epsilon: self.epsilon, tau: self.tau }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairEvaluation {
    pub scores: MetricScores,
    pub hce: HceReport,
}

pub fn mae(p: &GrayMap, g: &BinaryMask) -> Result<f64> {
    check_size(p.size(), g.size())?;
    let sum: f64 = p
        .values()
        .iter()
        .zip(g.bits())
        .map(|(&v, &b)| if b { 1.0 - v } else { v })
        .sum();
    Ok(sum / p.size().area() as f64)
}

/// All six scores. Fails with `EmptyGroundTruth` when `g` has no foreground.
pub fn evaluate_pair(p: &GrayMap, g: &BinaryMask, config: &EvalConfig) -> Result<PairEvaluation> {
    check_size(p.size(), g.size())?;
    let scores = MetricScores {
        max_f: max_f_beta(p, g, config.beta_sq)?,
        weighted_f: weighted_f_beta(p, g)?,
        mae: mae(p, g)?,
        s_measure: s_measure(p, g, config.alpha)?,
        e_measure_mean: e_measure_mean(p, g)?,
    };
    Ok(PairEvaluation { scores, hce: hce(p, g, &config.hce_config())? })
}

/// How many of the ascending `thresholds` a value reaches (`v >= t`), starting
/// from an estimate and correcting it against the exact comparisons.
fn reached(v: f64, thresholds: &[f64], estimate: usize) -> usize {
    let mut count = estimate.min(thresholds.len());
    while count > 0 && v < thresholds[count - 1] {
        count -= 1;
    }
    while count < thresholds.len() && v >= thresholds[count] {
        count += 1;
    }
    count
}

/// True- and false-positive counts at each threshold, from per-pixel
/// [`reached`] counts split by ground truth. `estimate` is a cheap guess of
/// the reached count.
fn positives_per_threshold(
    p: &GrayMap,
    g: &BinaryMask,
    thresholds: &[f64],
    estimate: impl Fn(f64) -> usize,
) -> (alloc::vec::Vec<u64>, alloc::vec::Vec<u64>) {
    let n = thresholds.len();
    let mut fg = alloc::vec![0u64; n + 1];
    let mut bg = alloc::vec![0u64; n + 1];
    for (&v, &b) in p.values().iter().zip(g.bits()) {
        let count = reached(v, thresholds, estimate(v));
        if b {
            fg[count] += 1;
        } else {
            bg[count] += 1;
        }
    }
    // a pixel reaching `count` thresholds is positive for every i < count
    let (mut tp, mut fp) = (alloc::vec![0u64; n], alloc::vec![0u64; n]);
    let (mut acc_t, mut acc_f) = (0, 0);
    for i in (0..n).rev() {
        acc_t += fg[i + 1];
        acc_f += bg[i + 1];
        tp[i] = acc_t;
        fp[i] = acc_f;
    }
    (tp, fp)
}
