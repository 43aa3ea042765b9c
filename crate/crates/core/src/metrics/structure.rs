use core::ops::Range;

use crate::raster::{check_size, BinaryMask, GrayMap};
use crate::Result;

/// Structure measure `α·S_object + (1 − α)·S_region`, clamped to `[0, 1]`.
///
/// An all-background ground truth scores `1 − mean(p)`, an all-foreground one
/// `mean(p)`.
pub fn s_measure(p: &GrayMap, g: &BinaryMask, alpha: f64) -> Result<f64> {
    check_size(p.size(), g.size())?;
    let n = p.size().area();
    let positives = g.count_ones();
    let mean_p = p.values().iter().sum::<f64>() / n as f64;
    let q = if positives == 0 {
        1.0 - mean_p
    } else if positives == n {
        mean_p
    } else {
        alpha * object_similarity(p, g) + (1.0 - alpha) * region_similarity(p, g)
    };
    Ok(q.clamp(0.0, 1.0))
}

fn object_similarity(p: &GrayMap, g: &BinaryMask) -> f64 {
    let fg = object_score(p.values(), g.bits(), true);
    let bg = object_score(p.values(), g.bits(), false);
    let n = p.size().area() as f64;
    let positives = g.count_ones() as f64;
    (positives * fg + (n - positives) * bg) / n
}

/// `2x̄ / (x̄² + 1 + σ)` over the pixels whose truth equals `side`. Foreground
/// uses the prediction, background its complement; σ is the sample standard
/// deviation (0 for one value).
fn object_score(values: &[f64], truth: &[bool], side: bool) -> f64 {
    let pick = |v: f64| if side { v } else { 1.0 - v };
    let mut stats = Moments::default();
    for (&v, &t) in values.iter().zip(truth) {
        if t == side {
            stats.push(pick(v));
        }
    }
    if stats.n == 0 {
        return 0.0;
    }
    let mean = stats.mean();
    let mut ss = 0.0;
    for (&v, &t) in values.iter().zip(truth) {
        if t == side {
            let d = pick(v) - mean;
            ss += d * d;
        }
    }
    let sigma = if stats.n > 1 { libm::sqrt(ss / (stats.n - 1) as f64) } else { 0.0 };
    2.0 * mean / (mean * mean + 1.0 + sigma)
}

/// Running sum and range, enough for a mean that is exactly the common value
/// when all inputs are equal (so constant data has exactly zero variance).
struct Moments {
    n: usize,
    sum: f64,
    lo: f64,
    hi: f64,
}

impl Default for Moments {
    fn default() -> Self {
        Moments { n: 0, sum: 0.0, lo: f64::INFINITY, hi: f64::NEG_INFINITY }
    }
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.n += 1;
        self.sum += v;
        self.lo = self.lo.min(v);
        self.hi = self.hi.max(v);
    }

    fn mean(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            self.sum / self.n as f64
        }
    }
}

fn region_similarity(p: &GrayMap, g: &BinaryMask) -> f64 {
    let (h, w) = (g.height(), g.width());
    let (x, y) = centroid(g);
    let blocks = [(0..y, 0..x), (0..y, x..w), (y..h, 0..x), (y..h, x..w)];
    let mut acc = 0.0;
    for (rows, cols) in blocks {
        let area = rows.len() * cols.len();
        if area > 0 {
            acc += area as f64 * block_ssim(p, g, rows, cols);
        }
    }
    acc / (h * w) as f64
}

/// Split point `(cols, rows)` of the four blocks: the foreground centroid in
/// 1-based coordinates, rounded half away from zero. Left/top blocks take the
/// first `x` columns / `y` rows.
fn centroid(g: &BinaryMask) -> (usize, usize) {
    let (h, w) = (g.height(), g.width());
    let total = g.count_ones();
    if total == 0 {
        return (libm::round(w as f64 / 2.0) as usize, libm::round(h as f64 / 2.0) as usize);
    }
    let (mut sx, mut sy) = (0u64, 0u64);
    for (r, c) in g.ones() {
        sx += c as u64 + 1;
        sy += r as u64 + 1;
    }
    (libm::round(sx as f64 / total as f64) as usize, libm::round(sy as f64 / total as f64) as usize)
}

fn block_ssim(p: &GrayMap, g: &BinaryMask, rows: Range<usize>, cols: Range<usize>) -> f64 {
    let w = g.width();
    let n = rows.len() * cols.len();
    let block = |r: usize| (&p.values()[r * w..][cols.clone()], &g.bits()[r * w..][cols.clone()]);

    let mut px = Moments::default();
    let mut ones = 0usize;
    for r in rows.clone() {
        let (pv, gv) = block(r);
        for (&v, &b) in pv.iter().zip(gv) {
            px.push(v);
            ones += b as usize;
        }
    }
    let (mx, my) = (px.mean(), ones as f64 / n as f64);
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for r in rows {
        let (pv, gv) = block(r);
        for (&v, &b) in pv.iter().zip(gv) {
            let dx = v - mx;
            let dy = if b { 1.0 } else { 0.0 } - my;
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
    }
    let (vx, vy, cxy) = if n > 1 {
        let d = (n - 1) as f64;
        (sxx / d, syy / d, sxy / d)
    } else {
        (0.0, 0.0, 0.0)
    };
    let a = 4.0 * mx * my * cxy;
    let b = (mx * mx + my * my) * (vx + vy);
    if a != 0.0 {
        a / b
    } else if b == 0.0 {
        1.0
    } else {
        0.0
    }
}
