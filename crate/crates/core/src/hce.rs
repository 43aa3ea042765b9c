//! Human Correction Efforts: the number of clicks a human operator would need
//! to fix a predicted mask.
//!
//! Faulty regions are first relaxed: false-positive and false-negative
//! components that `gamma` rounds of constrained erosion and dilation wipe
//! out are forgiven, except that ground-truth skeleton pixels missed by the
//! prediction always count. The remaining regions are then costed:
//!
//! * a false-negative component touching true-negative background needs its
//!   TN-facing boundary traced with dominant points; one enclosed by the
//!   prediction needs a single region-selection click;
//! * a false-positive component touching true-positive foreground needs its
//!   TP-facing boundary traced; one surrounded by background is one click.

use alloc::vec;
use alloc::vec::Vec;

use crate::contour::{find_contours, rdp_closed_count, rdp_open_count, Point};
use crate::morphology::{dilate, erode, skeletonize, StructuringElement};
use crate::raster::{binarize, check_size, confusion, BinaryMask, ConfusionMaps, GrayMap};
use crate::{Error, Result};

pub const DEFAULT_GAMMA: u32 = 5;
pub const DEFAULT_EPSILON: f64 = 2.0;
pub const DEFAULT_TAU: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HceConfig {
    /// Error tolerance: rounds of `disk(1)` erosion/dilation.
    pub gamma: u32,
    /// Dominant-point tolerance in pixels.
    pub epsilon: f64,
    /// Binarization threshold for the probability map (`>=`).
    pub tau: f64,
}

impl Default for HceConfig {
    fn default() -> Self {
        HceConfig { gamma: DEFAULT_GAMMA, epsilon: DEFAULT_EPSILON, tau: DEFAULT_TAU }
    }
}

/// Relaxed faulty regions of one prediction/ground-truth pair.
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxedMasks {
    pub fn_relaxed: BinaryMask,
    pub fp_relaxed: BinaryMask,
    pub confusion: ConfusionMaps,
    pub skeleton: BinaryMask,
    pub gamma: u32,
    pub epsilon: f64,
}

impl RelaxedMasks {
    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }
}

/// Click tallies by faulty-region category.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HceReport {
    /// Dominant points on FN boundaries facing true negatives.
    pub fn_boundary_points: u64,
    /// FN components with no TN-facing boundary.
    pub fn_region_clicks: u64,
    /// Dominant points on FP boundaries facing true positives.
    pub fp_boundary_points: u64,
    /// FP components with no TP-facing boundary.
    pub fp_region_clicks: u64,
    pub total: u64,
}

impl HceReport {
    fn new(fn_side: (u64, u64), fp_side: (u64, u64)) -> Self {
        HceReport {
            fn_boundary_points: fn_side.0,
            fn_region_clicks: fn_side.1,
            fp_boundary_points: fp_side.0,
            fp_region_clicks: fp_side.1,
            total: fn_side.0 + fn_side.1 + fp_side.0 + fp_side.1,
        }
    }
}

/// Relaxes the FN/FP regions of binary prediction `p` against `g`.
///
/// `epsilon` is set to the default; override with [`RelaxedMasks::with_epsilon`].
pub fn relax(p: &BinaryMask, g: &BinaryMask, gamma: u32) -> Result<RelaxedMasks> {
    check_size(p.size(), g.size())?;
    let skeleton = skeletonize(g);
    let cm = confusion(p, g)?;
    let se = StructuringElement::disk(1);

    let mut union = p.or(g)?;
    for _ in 0..gamma {
        union = erode(&union, &se);
    }
    let mut fn_r = cm.fn_.and(&union)?;
    let mut fp_r = cm.fp.and(&union)?;

    let (not_p, not_g) = (p.not(), g.not());
    for _ in 0..gamma {
        fn_r = dilate(&fn_r, &se).and(&not_p)?;
        fp_r = dilate(&fp_r, &se).and(&not_g)?;
    }
    let fn_r = cm.fn_.and(&fn_r)?;
    let fp_r = cm.fp.and(&fp_r)?;

    let missed_skeleton = skeleton.xor(&cm.tp.and(&skeleton)?)?;
    let fn_r = fn_r.or(&missed_skeleton)?;

    Ok(RelaxedMasks {
        fn_relaxed: fn_r,
        fp_relaxed: fp_r,
        confusion: cm,
        skeleton,
        gamma,
        epsilon: DEFAULT_EPSILON,
    })
}

pub fn count_clicks(r: &RelaxedMasks) -> Result<HceReport> {
    if r.epsilon.is_nan() || r.epsilon < 0.0 {
        return Err(Error::NegativeEpsilon(r.epsilon));
    }
    let fn_side = tally(&r.fn_relaxed, &r.confusion.tn, true, r.epsilon);
    let fp_side = tally(&r.fp_relaxed, &r.confusion.tp, false, r.epsilon);
    Ok(HceReport::new(fn_side, fp_side))
}

/// Binarizes `p_prob` at `tau`, relaxes and counts clicks.
pub fn hce(p_prob: &GrayMap, g: &BinaryMask, config: &HceConfig) -> Result<HceReport> {
    check_size(p_prob.size(), g.size())?;
    let p = binarize(p_prob, config.tau);
    let relaxed = relax(&p, g, config.gamma)?.with_epsilon(config.epsilon);
    count_clicks(&relaxed)
}

/// `(boundary points, region clicks)` for the components of `faulty`.
///
/// A contour pixel "faces" the target when its 8-neighbourhood touches
/// `target`; off-raster neighbours count as `outside_is_target`.
fn tally(faulty: &BinaryMask, target: &BinaryMask, outside_is_target: bool, epsilon: f64) -> (u64, u64) {
    let contours = find_contours(faulty);
    let components = contours.iter().map(|c| c.component_id).max().unwrap_or(0) as usize;
    let mut facing = vec![false; components + 1];
    let mut points = vec![0u64; components + 1];

    let faces = |p: Point| {
        for dr in -1..=1 {
            for dc in -1..=1 {
                if dr == 0 && dc == 0 {
                    continue;
                }
                let (r, c) = (p.row as isize + dr, p.col as isize + dc);
                let hit = if target.size().contains(r, c) { target.get(r as usize, c as usize) } else { outside_is_target };
                if hit {
                    return true;
                }
            }
        }
        false
    };

    let mut flags = Vec::new();
    let mut run = Vec::new();
    for contour in &contours {
        flags.clear();
        flags.extend(contour.points.iter().map(|&p| faces(p)));
        let id = contour.component_id as usize;
        if !flags.iter().any(|&f| f) {
            continue;
        }
        facing[id] = true;
        let n = flags.len();
        if flags.iter().all(|&f| f) {
            points[id] += rdp_closed_count(&contour.points, epsilon) as u64;
            continue;
        }
        // walk once around the loop starting just after a non-facing pixel,
        // so every maximal circular run is seen whole
        let start = flags.iter().position(|&f| !f).expect("some pixel is not facing");
        run.clear();
        for k in 1..=n {
            let i = (start + k) % n;
            if flags[i] {
                run.push(contour.points[i]);
            } else if !run.is_empty() {
                points[id] += rdp_open_count(&run, epsilon) as u64;
                run.clear();
            }
        }
        if !run.is_empty() {
            points[id] += rdp_open_count(&run, epsilon) as u64;
            run.clear();
        }
    }

    let mut boundary = 0;
    let mut regions = 0;
    for id in 1..=components {
        if facing[id] {
            boundary += points[id];
        } else {
            regions += 1;
        }
    }
    (boundary, regions)
}
