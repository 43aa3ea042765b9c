//! Synthetic masks and prediction/ground-truth scenes.

use diseval_core::{BinaryMask, Size};
use rand::Rng;

pub fn canvas(h: usize, w: usize) -> BinaryMask {
    BinaryMask::new(Size::new(h, w).unwrap())
}

pub fn fill(m: &mut BinaryMask, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>, value: bool) {
    for r in rows {
        for c in cols.clone() {
            m.set(r, c, value);
        }
    }
}

/// Copies `src` into a larger canvas with its top-left corner at `(top, left)`.
pub fn place(src: &BinaryMask, h: usize, w: usize, top: usize, left: usize) -> BinaryMask {
    let mut out = canvas(h, w);
    for (r, c) in src.ones() {
        out.set(top + r, left + c, true);
    }
    out
}

pub fn union(a: &BinaryMask, b: &BinaryMask) -> BinaryMask {
    a.or(b).unwrap()
}

/// Ground truth square with a 3x3 false-positive blob well away from it.
pub fn blob_scene() -> (BinaryMask, BinaryMask) {
    let mut g = canvas(64, 64);
    fill(&mut g, 8..28, 8..28, true);
    let mut p = g.clone();
    fill(&mut p, 45..48, 45..48, true);
    (p, g)
}

/// Four faulty regions, one of each kind, on a 120x160 canvas:
///
/// * a two-step staircase of the ground truth on top of the main block that
///   the prediction cuts off straight (its TN-facing outline has 6 dominant
///   points at ε = 2);
/// * a predicted block hanging under the main block (TP-facing side: 2 points);
/// * a hole in the prediction inside the main block (one region click);
/// * a lone predicted blob far from everything (one region click).
pub fn correction_scene() -> (BinaryMask, BinaryMask) {
    let mut g = canvas(120, 160);
    fill(&mut g, 40..100, 20..140, true);
    fill(&mut g, 30..40, 40..90, true);
    fill(&mut g, 20..30, 50..90, true);

    let mut p = canvas(120, 160);
    fill(&mut p, 40..100, 20..140, true);
    fill(&mut p, 100..108, 60..100, true);
    fill(&mut p, 60..67, 110..117, false);
    fill(&mut p, 5..10, 140..147, true);
    (p, g)
}

/// Union of random discs, rectangles and one-pixel lines; never empty.
pub fn random_mask(rng: &mut impl Rng, h: usize, w: usize) -> BinaryMask {
    let mut m = canvas(h, w);
    let shapes = rng.gen_range(1..=6);
    for _ in 0..shapes {
        let (cy, cx) = (rng.gen_range(0..h) as i64, rng.gen_range(0..w) as i64);
        match rng.gen_range(0..4) {
            0 => {
                let r = rng.gen_range(1..=(h.min(w) as i64 / 4).max(1));
                for y in (cy - r).max(0)..(cy + r + 1).min(h as i64) {
                    for x in (cx - r).max(0)..(cx + r + 1).min(w as i64) {
                        if (y - cy).pow(2) + (x - cx).pow(2) <= r * r {
                            m.set(y as usize, x as usize, true);
                        }
                    }
                }
            }
            1 => {
                let (rh, rw) = (rng.gen_range(1..=h / 3 + 1), rng.gen_range(1..=w / 3 + 1));
                let (top, left) = (cy as usize, cx as usize);
                fill(&mut m, top..(top + rh).min(h), left..(left + rw).min(w), true);
            }
            2 => {
                let len = rng.gen_range(2..=w.max(3));
                let slope = rng.gen_range(-2i64..=2);
                for i in 0..len as i64 {
                    let (y, x) = (cy + slope * i / 2, cx + i);
                    if (0..h as i64).contains(&y) && (0..w as i64).contains(&x) {
                        m.set(y as usize, x as usize, true);
                    }
                }
            }
            _ => {
                // ring
                let r = rng.gen_range(3..=(h.min(w) as i64 / 3).max(3));
                for y in (cy - r).max(0)..(cy + r + 1).min(h as i64) {
                    for x in (cx - r).max(0)..(cx + r + 1).min(w as i64) {
                        let d = (y - cy).pow(2) + (x - cx).pow(2);
                        if d <= r * r && d > (r * 2 / 3).pow(2) {
                            m.set(y as usize, x as usize, true);
                        }
                    }
                }
            }
        }
    }
    if m.is_empty() {
        m.set(h / 2, w / 2, true);
    }
    m
}

/// A plausible imperfect prediction of `g`: shifted, with some pixels
/// flipped and a random rectangle added or erased.
pub fn perturb(rng: &mut impl Rng, g: &BinaryMask) -> BinaryMask {
    let (h, w) = (g.height(), g.width());
    let (dy, dx) = (rng.gen_range(-2isize..=2), rng.gen_range(-2isize..=2));
    let flip = rng.gen_range(0.0..0.05);
    let mut p = BinaryMask::from_fn(g.size(), |r, c| g.get_or_false(r as isize - dy, c as isize - dx));
    for r in 0..h {
        for c in 0..w {
            if rng.gen_bool(flip) {
                p.set(r, c, !p.get(r, c));
            }
        }
    }
    let (top, left) = (rng.gen_range(0..h), rng.gen_range(0..w));
    let value = rng.gen_bool(0.5);
    fill(&mut p, top..(top + h / 5).min(h), left..(left + w / 5).min(w), value);
    p
}
