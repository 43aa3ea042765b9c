//! Deterministic fixture pairs and the reference values computed for them by
//! `oracle/reference_metrics.py`. Regenerate the tables with that script if a
//! fixture formula changes.

use diseval_core::{BinaryMask, GrayMap, Size};

fn mix(r: i64, c: i64, k: i64) -> u32 {
    let x = (r as u32).wrapping_mul(73856093) ^ (c as u32).wrapping_mul(19349663) ^ (k as u32).wrapping_mul(83492791);
    x.wrapping_mul(2654435761) >> 16
}

pub fn fixture_size(k: usize) -> (usize, usize) {
    (12 + (k * 7) % 41, 12 + (k * 13) % 47)
}

fn gt_pixel(k: i64, h: i64, w: i64, r: i64, c: i64) -> bool {
    if r < 0 || c < 0 || r >= h || c >= w {
        return false;
    }
    let cy = h / 2 + k % 3 - 1;
    let cx = w / 2 - k % 4 + 1;
    let d2 = (r - cy).pow(2) + (c - cx).pow(2);
    match k % 5 {
        0 => d2 <= (h.min(w) / 3).pow(2),
        1 => r < h * 2 / 3 && c >= w / 4,
        2 => {
            let big = h.min(w) * 2 / 5;
            ((big / 2).pow(2) < d2 && d2 <= big.pow(2)) || ((1..=3).contains(&r) && (1..=3).contains(&c))
        }
        3 => (r - c * h / w).abs() <= 1 + k % 3,
        _ => ((r / 4) + (c / 5)) % 2 == 0 && r % 4 != 3,
    }
}

fn pred_level(k: i64, h: i64, w: i64, r: i64, c: i64) -> u8 {
    let g = gt_pixel(k, h, w, r, c);
    let level = match k / 5 {
        0 => ((if g { 220 } else { 30 }) + (mix(r, c, k) % 61) as i64 - 30).clamp(0, 255),
        1 => {
            if gt_pixel(k, h, w, r - 1, c + 2) {
                255
            } else {
                0
            }
        }
        2 => (r * 255 / (h - 1) + c * 3 + if g { 80 } else { 0 }) % 256,
        _ => match k {
            15 => 0,
            16 => 128,
            17 => {
                if g {
                    0
                } else {
                    255
                }
            }
            18 => (mix(r, c, k) % 256) as i64,
            _ => {
                if g {
                    255
                } else {
                    0
                }
            }
        },
    };
    level as u8
}

/// Fixture `k` in `0..20` as (prediction, ground truth).
pub fn fixture(k: usize) -> (GrayMap, BinaryMask) {
    let (h, w) = fixture_size(k);
    let size = Size::new(h, w).unwrap();
    let (ki, hi, wi) = (k as i64, h as i64, w as i64);
    let g = BinaryMask::from_fn(size, |r, c| gt_pixel(ki, hi, wi, r as i64, c as i64));
    let mut levels = Vec::with_capacity(h * w);
    for r in 0..hi {
        for c in 0..wi {
            levels.push(pred_level(ki, hi, wi, r, c));
        }
    }
    (GrayMap::from_levels(size, &levels).unwrap(), g)
}

pub const TOLERANCE: f64 = 1e-6;

/// (weighted F, S-measure, mean E-measure) per fixture.
#[rustfmt::skip]
pub const FIXTURES: [(f64, f64, f64); 20] = [
    (0.8203701180606012, 0.9470288985555937, 0.8027538636650164),
    (0.8654173650395995, 0.8828100506206583, 0.8076852501716645),
    (0.7440883680874439, 0.9389961882826474, 0.7937936860893425),
    (0.46923570313495166, 0.7110044971525886, 0.7727676616376754),
    (0.8506754416371535, 0.9509150724239153, 0.8111230040295889),
    (0.8741788000876523, 0.84063713500839, 0.9396198879024134),
    (0.8883151255265477, 0.6885178468843477, 0.8318441567249395),
    (0.7042765248004416, 0.7059039073707183, 0.9092431166622211),
    (0.6309191923495747, 0.4620877481554544, 0.7798094017205573),
    (0.5742950880045715, 0.3440467216605324, 0.5674084248185184),
    (0.2855011001306275, 0.3470323488260964, 0.4458269667048722),
    (0.5592942640627967, 0.41770840889482985, 0.43555481834049026),
    (0.3061455546608014, 0.4067275670471339, 0.42966114059236116),
    (0.2738435554426853, 0.39496091463898597, 0.3822117809178438),
    (0.4526515745880167, 0.35010472131016523, 0.40629148092604755),
    (0.020567992918615496, 0.4150375939849624, 0.25),
    (0.4609479597559813, 0.4613812219263465, 0.25),
    (0.001579471958221456, 0.0, 4.276350570394517e-33),
    (0.2764243485371298, 0.3125941095119613, 0.3847288806381476),
    (1.0, 1.0, 1.0),
];

// spot values for hand-described pairs
pub const WF_INVERTED_HALF_PLANE: f64 = 0.03572863624689735;
pub const WF_CONSTANT_HALF_PLANE: f64 = 0.4339310189046437;
pub const S_INVERTED_SQUARE: f64 = 0.0;
pub const S_ZERO_SQUARE: f64 = 0.375;
pub const E_INVERTED_SQUARE: f64 = 0.0;
pub const E_MEAN_LEVEL_SQUARE: f64 = 0.25;
