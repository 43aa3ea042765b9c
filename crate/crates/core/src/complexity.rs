//! Object-complexity measures and complexity-ranked dataset splits.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::contour::{find_contours, perimeter, rdp_closed_count};
use crate::raster::BinaryMask;
use crate::{Error, Result};

/// Shape complexity of one ground-truth mask.
///
/// `ipq` is the isoperimetric quotient `L² / (4πA)` over the whole mask:
/// perimeter and area accumulate across components (holes included) before
/// the ratio is formed. It is 0 for an empty mask.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComplexityStats {
    pub ipq: f64,
    pub c_num: usize,
    pub p_num: usize,
    pub perimeter_l: f64,
    pub area_a: usize,
    pub height_h: usize,
    pub width_w: usize,
    pub diagonal_d: f64,
}

impl ComplexityStats {
    /// Ranking score used for difficulty splits.
    pub fn split_score(&self) -> f64 {
        self.ipq * self.p_num as f64
    }
}

pub fn complexity(g: &BinaryMask, epsilon: f64) -> Result<ComplexityStats> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::NegativeEpsilon(epsilon));
    }
    let contours = find_contours(g);
    let area = g.count_ones();
    let length = perimeter(&contours, None);
    let ipq = if area == 0 { 0.0 } else { length * length / (4.0 * core::f64::consts::PI * area as f64) };
    let (h, w) = (g.height(), g.width());
    Ok(ComplexityStats {
        ipq,
        c_num: contours.len(),
        p_num: contours.iter().map(|c| rdp_closed_count(&c.points, epsilon)).sum(),
        perimeter_l: length,
        area_a: area,
        height_h: h,
        width_w: w,
        diagonal_d: libm::sqrt((h * h + w * w) as f64),
    })
}

/// Population mean and standard deviation of one column.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    pub fn of(values: impl Iterator<Item = f64> + Clone) -> Option<Self> {
        let (mut n, mut sum) = (0usize, 0.0);
        for v in values.clone() {
            n += 1;
            sum += v;
        }
        if n == 0 {
            return None;
        }
        let mean = sum / n as f64;
        let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
        Some(MeanStd { mean, std: libm::sqrt(var) })
    }
}

impl fmt::Display for MeanStd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2} ± {:.2}", self.mean, self.std)
    }
}

/// Dataset-level summary in the usual `mean ± σ` column layout.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DatasetStats {
    pub i_num: usize,
    pub height: MeanStd,
    pub width: MeanStd,
    pub diagonal: MeanStd,
    pub ipq: MeanStd,
    pub c_num: MeanStd,
    pub p_num: MeanStd,
}

pub fn dataset_stats(records: &[ComplexityStats]) -> Result<DatasetStats> {
    let col = |f: fn(&ComplexityStats) -> f64| MeanStd::of(records.iter().map(f)).ok_or(Error::EmptyDataset);
    Ok(DatasetStats {
        i_num: records.len(),
        height: col(|s| s.height_h as f64)?,
        width: col(|s| s.width_w as f64)?,
        diagonal: col(|s| s.diagonal_d)?,
        ipq: col(|s| s.ipq)?,
        c_num: col(|s| s.c_num as f64)?,
        p_num: col(|s| s.p_num as f64)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RankedItem {
    pub id: String,
    pub score: f64,
}

/// Items in ascending score order, cut into contiguous bins.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitPlan {
    pub items: Vec<RankedItem>,
    pub bins: Vec<Range<usize>>,
}

impl SplitPlan {
    pub fn bin(&self, k: usize) -> &[RankedItem] {
        &self.items[self.bins[k].clone()]
    }

    pub fn bin_ids(&self, k: usize) -> impl Iterator<Item = &str> {
        self.bin(k).iter().map(|i| i.id.as_str())
    }
}

/// Ranks by `ipq × p_num` (ties by id) and cuts into `k` near-equal bins;
/// earlier bins absorb the remainder.
pub fn rank_and_split<S: AsRef<str>>(items: &[(S, ComplexityStats)], k: usize) -> Result<SplitPlan> {
    if k == 0 || k > items.len() {
        return Err(Error::InvalidK { k, items: items.len() });
    }
    let mut ranked: Vec<RankedItem> = items
        .iter()
        .map(|(id, s)| RankedItem { id: String::from(id.as_ref()), score: s.split_score() })
        .collect();
    ranked.sort_by(|a, b| a.score.total_cmp(&b.score).then_with(|| a.id.cmp(&b.id)));

    let (base, extra) = (ranked.len() / k, ranked.len() % k);
    let mut bins = Vec::with_capacity(k);
    let mut start = 0;
    for b in 0..k {
        let len = base + usize::from(b < extra);
        bins.push(start..start + len);
        start += len;
    }
    Ok(SplitPlan { items: ranked, bins })
}
