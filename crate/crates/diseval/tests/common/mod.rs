#![allow(dead_code)]

use std::path::{Path, PathBuf};

use diseval::{save_levels, save_mask};
use diseval_core::{BinaryMask, Size};
use rand::Rng;

pub fn square_mask(h: usize, w: usize, top: usize, left: usize, side: usize) -> BinaryMask {
    BinaryMask::from_fn(Size::new(h, w).unwrap(), |r, c| {
        (top..top + side).contains(&r) && (left..left + side).contains(&c)
    })
}

/// Soft prediction: the mask's levels with some seeded noise.
pub fn noisy_levels(rng: &mut impl Rng, m: &BinaryMask) -> Vec<u8> {
    m.bits()
        .iter()
        .map(|&b| {
            let base: i32 = if b { 230 } else { 20 };
            (base + rng.gen_range(-20..=20)).clamp(0, 255) as u8
        })
        .collect()
}

pub fn write_mask(dir: &Path, rel: &str, m: &BinaryMask) -> PathBuf {
    let path = dir.join(rel);
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    save_mask(&path, m).unwrap();
    path
}

pub fn write_levels(dir: &Path, rel: &str, size: Size, levels: &[u8]) -> PathBuf {
    let path = dir.join(rel);
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    save_levels(&path, size, levels).unwrap();
    path
}

/// Paired `pred/` and `gt/` trees with `n` noisy predictions of squares.
pub fn dataset(root: &Path, n: usize, seed: u64) -> (PathBuf, PathBuf) {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (pred, gt) = (root.join("pred"), root.join("gt"));
    for i in 0..n {
        let g = square_mask(48, 56, 4 + i % 9, 6 + (3 * i) % 11, 14 + i % 17);
        write_mask(&gt, &format!("img{:02}.png", i), &g);
        write_levels(&pred, &format!("img{:02}.png", i), g.size(), &noisy_levels(&mut rng, &g));
    }
    (pred, gt)
}

/// A comb: a bar with `teeth` prongs on top. More teeth raise both the
/// isoperimetric quotient and the dominant-point count.
pub fn comb(teeth: usize) -> BinaryMask {
    BinaryMask::from_fn(Size::new(40, 120).unwrap(), |r, c| {
        let bar = (25..35).contains(&r) && (4..112).contains(&c);
        let tooth = (5..25).contains(&r) && c >= 12 && (c - 12) % 12 < 6 && (c - 12) / 12 < teeth;
        bar || tooth
    })
}
