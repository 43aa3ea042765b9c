use alloc::vec;
use alloc::vec::Vec;

use crate::raster::{check_size, BinaryMask, GrayMap};
use crate::{Error, Result};

const KERNEL_RADIUS: usize = 3;
const KERNEL_SIGMA: f64 = 5.0;
/// Distance at which a false positive's weight has decayed half-way.
const DECAY_DISTANCE: f64 = 5.0;

/// Weighted F-measure (β² = 1).
///
/// Errors inside the ground truth are softened by a Gaussian-weighted
/// neighbourhood of errors (each background pixel borrowing the error of its
/// nearest foreground pixel), and background errors are weighted up with
/// their distance from the foreground.
pub fn weighted_f_beta(p: &GrayMap, g: &BinaryMask) -> Result<f64> {
    check_size(p.size(), g.size())?;
    let positives = g.count_ones();
    if positives == 0 {
        return Err(Error::EmptyGroundTruth);
    }
    let (h, w) = (g.height(), g.width());
    let gt = g.bits();
    let err: Vec<f64> = p.values().iter().zip(gt).map(|(&v, &b)| if b { 1.0 - v } else { v }).collect();

    let nearest = nearest_foreground(g);
    let borrowed: Vec<f64> = (0..h * w).map(|i| if gt[i] { err[i] } else { err[nearest[i].index] }).collect();
    let smoothed = gaussian_filter(&borrowed, h, w);

    let mut weight = DecayWeights::new();
    let (mut ew_fg, mut ew_bg) = (0.0, 0.0);
    for i in 0..h * w {
        if gt[i] {
            ew_fg += if smoothed[i] < err[i] { smoothed[i] } else { err[i] };
        } else {
            ew_bg += err[i] * weight.get(nearest[i].dist_sq);
        }
    }

    let tp = positives as f64 - ew_fg;
    let recall = 1.0 - ew_fg / positives as f64;
    let precision = if tp + ew_bg == 0.0 { 0.0 } else { tp / (tp + ew_bg) };
    let q = if recall + precision == 0.0 { 0.0 } else { 2.0 * recall * precision / (recall + precision) };
    Ok(q.clamp(0.0, 1.0))
}

/// `2 − exp(ln(½)·d / DECAY_DISTANCE)` by squared distance, memoised for the
/// short distances that dominate any real mask.
struct DecayWeights {
    table: Vec<f64>,
}

impl DecayWeights {
    const CACHED: usize = 1 << 16;

    fn new() -> Self {
        DecayWeights { table: vec![f64::NAN; Self::CACHED] }
    }

    fn get(&mut self, dist_sq: u64) -> f64 {
        let compute = |d2: u64| 2.0 - libm::exp(-core::f64::consts::LN_2 / DECAY_DISTANCE * libm::sqrt(d2 as f64));
        match self.table.get_mut(dist_sq as usize) {
            Some(v) => {
                if v.is_nan() {
                    *v = compute(dist_sq);
                }
                *v
            }
            None => compute(dist_sq),
        }
    }
}

/// Normalized `7×7`, σ = 5 Gaussian applied as a correlation with zero padding.
fn gaussian_filter(src: &[f64], h: usize, w: usize) -> Vec<f64> {
    let mut k = [0.0; 2 * KERNEL_RADIUS + 1];
    for (j, v) in k.iter_mut().enumerate() {
        let x = j as f64 - KERNEL_RADIUS as f64;
        *v = libm::exp(-(x * x) / (2.0 * KERNEL_SIGMA * KERNEL_SIGMA));
    }
    let sum: f64 = k.iter().sum();
    for v in &mut k {
        *v /= sum;
    }

    let r = KERNEL_RADIUS as isize;
    let mut rows = vec![0.0; h * w];
    for y in 0..h {
        let line = &src[y * w..(y + 1) * w];
        let dst = &mut rows[y * w..(y + 1) * w];
        for x in 0..w {
            let interior = x >= KERNEL_RADIUS && x + KERNEL_RADIUS < w;
            dst[x] = if interior {
                let window = &line[x - KERNEL_RADIUS..=x + KERNEL_RADIUS];
                k.iter().zip(window).map(|(a, b)| a * b).sum()
            } else {
                let mut acc = 0.0;
                for (j, kv) in k.iter().enumerate() {
                    let xx = x as isize + j as isize - r;
                    if (0..w as isize).contains(&xx) {
                        acc += kv * line[xx as usize];
                    }
                }
                acc
            };
        }
    }
    let mut out = vec![0.0; h * w];
    for y in 0..h {
        for (j, kv) in k.iter().enumerate() {
            let yy = y as isize + j as isize - r;
            if !(0..h as isize).contains(&yy) {
                continue;
            }
            let src_row = &rows[yy as usize * w..(yy as usize + 1) * w];
            for (o, s) in out[y * w..(y + 1) * w].iter_mut().zip(src_row) {
                *o += kv * s;
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Nearest {
    pub index: usize,
    pub dist_sq: u64,
}

/// Nearest foreground pixel of `g` for every pixel: least Euclidean distance,
/// ties broken towards the smaller column, then the smaller row (that is, the
/// first in column-major order).
///
/// Separable exact transform: a column pass finds, per column, the nearest
/// foreground row (upper one on ties); a row pass takes the lower envelope of
/// the parabolas `(c − q)² + dr_q²`. Breakpoints are exact fractions and a
/// point where two parabolas meet stays with the left one.
pub(crate) fn nearest_foreground(g: &BinaryMask) -> Vec<Nearest> {
    let (h, w) = (g.height(), g.width());
    let bits = g.bits();
    const NONE: u32 = u32::MAX;

    // swept row by row to stay cache friendly
    let mut col_row = vec![NONE; h * w];
    let mut last = vec![NONE; w];
    for r in 0..h {
        let line = &bits[r * w..(r + 1) * w];
        for (c, &b) in line.iter().enumerate() {
            if b {
                last[c] = r as u32;
            }
        }
        col_row[r * w..(r + 1) * w].copy_from_slice(&last);
    }
    let mut next = vec![NONE; w];
    for r in (0..h).rev() {
        let line = &bits[r * w..(r + 1) * w];
        let out = &mut col_row[r * w..(r + 1) * w];
        let r32 = r as u32;
        for c in 0..w {
            if line[c] {
                next[c] = r32;
            }
            let (up, down) = (out[c], next[c]);
            if down != NONE && (up == NONE || down - r32 < r32 - up) {
                out[c] = down;
            }
        }
    }

    let mut out = vec![Nearest { index: 0, dist_sq: 0 }; h * w];
    // (column, dr² + column²)
    let mut sites: Vec<(i64, i64)> = Vec::with_capacity(w);
    let mut hull: Vec<usize> = Vec::with_capacity(w);
    let mut starts: Vec<(i64, i64)> = Vec::with_capacity(w);
    for r in 0..h {
        let rows = &col_row[r * w..(r + 1) * w];
        sites.clear();
        for (q, &rq) in rows.iter().enumerate() {
            if rq != NONE {
                let dr = (r as i64) - rq as i64;
                let q = q as i64;
                sites.push((q, dr * dr + q * q));
            }
        }
        hull.clear();
        starts.clear();
        for (s, &(q, f_q)) in sites.iter().enumerate() {
            while let Some(&top) = hull.last() {
                let (p, f_p) = sites[top];
                // the parabolas of p and q meet at c = (f_q − f_p) / (2(q − p))
                let meet = (f_q - f_p, 2 * (q - p));
                let (zn, zd) = starts[starts.len() - 1];
                if hull.len() > 1 && meet.0 * zd <= zn * meet.1 {
                    hull.pop();
                    starts.pop();
                    continue;
                }
                starts.push(meet);
                break;
            }
            if hull.is_empty() {
                starts.push((0, 0));
            }
            hull.push(s);
        }
        let mut k = 0;
        let dst = &mut out[r * w..(r + 1) * w];
        for (c, o) in dst.iter_mut().enumerate() {
            let c = c as i64;
            while k + 1 < hull.len() && starts[k + 1].0 < c * starts[k + 1].1 {
                k += 1;
            }
            let q = sites[hull[k]].0;
            let rq = rows[q as usize] as usize;
            let (dr, dc) = (r.abs_diff(rq) as u64, c.abs_diff(q));
            *o = Nearest { index: rq * w + q as usize, dist_sq: dr * dr + dc * dc };
        }
    }
    out
}
