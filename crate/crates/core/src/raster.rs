//! Raster containers and pixel-wise mask algebra.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Raster dimensions in pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Size {
    pub height: usize,
    pub width: usize,
}

impl Size {
    pub fn new(height: usize, width: usize) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::InvalidSize { height, width });
        }
        Ok(Size { height, width })
    }

    #[inline]
    pub fn area(&self) -> usize {
        self.height * self.width
    }

    #[inline]
    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.width + col
    }

    #[inline]
    pub fn contains(&self, row: isize, col: isize) -> bool {
        row >= 0 && col >= 0 && (row as usize) < self.height && (col as usize) < self.width
    }
}

impl fmt::Display for Size {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.height, self.width)
    }
}

/// Row-major binary raster. `true` is foreground.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    size: Size,
    bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(size: Size) -> Self {
        BinaryMask { size, bits: vec![false; size.area()] }
    }

    pub fn filled(size: Size) -> Self {
        BinaryMask { size, bits: vec![true; size.area()] }
    }

    pub fn from_vec(size: Size, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != size.area() {
            return Err(Error::BufferLength { size, len: bits.len(), expected: size.area() });
        }
        Ok(BinaryMask { size, bits })
    }

    pub fn from_fn(size: Size, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(size.area());
        for r in 0..size.height {
            for c in 0..size.width {
                bits.push(f(r, c));
            }
        }
        BinaryMask { size, bits }
    }

    /// Parses rows of `'1'`/`'#'` (foreground) and anything else (background).
    ///
    /// Handy for small hand-drawn fixtures. Panics on ragged or empty input.
    pub fn from_rows(rows: &[&str]) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        let size = Size::new(height, width).expect("fixture must be non-empty");
        let mut bits = Vec::with_capacity(size.area());
        for row in rows {
            assert_eq!(row.len(), width, "ragged fixture row");
            bits.extend(row.bytes().map(|b| b == b'1' || b == b'#'));
        }
        BinaryMask { size, bits }
    }

    #[inline]
    pub fn size(&self) -> Size {
        self.size
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.size.height
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.size.width
    }

    #[inline]
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub(crate) fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.bits
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[self.size.index(row, col)]
    }

    /// Signed lookup; anything outside the raster reads as background.
    #[inline]
    pub fn get_or_false(&self, row: isize, col: isize) -> bool {
        self.size.contains(row, col) && self.bits[row as usize * self.size.width + col as usize]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        let i = self.size.index(row, col);
        self.bits[i] = value;
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// Iterator over `(row, col)` of foreground pixels in raster order.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.size.width;
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(move |(i, _)| (i / w, i % w))
    }

    pub fn is_subset_of(&self, other: &BinaryMask) -> bool {
        self.size == other.size && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn not(&self) -> BinaryMask {
        BinaryMask { size: self.size, bits: self.bits.iter().map(|&b| !b).collect() }
    }

    pub fn and(&self, other: &BinaryMask) -> Result<BinaryMask> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BinaryMask) -> Result<BinaryMask> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &BinaryMask) -> Result<BinaryMask> {
        self.zip_with(other, |a, b| a ^ b)
    }

    /// Set difference `self \ other`.
    pub fn diff(&self, other: &BinaryMask) -> Result<BinaryMask> {
        self.zip_with(other, |a, b| a & !b)
    }

    fn zip_with(&self, other: &BinaryMask, f: impl Fn(bool, bool) -> bool) -> Result<BinaryMask> {
        check_size(self.size, other.size)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect();
        Ok(BinaryMask { size: self.size, bits })
    }
}

impl fmt::Debug for BinaryMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMask {} [", self.size)?;
        if self.size.area() <= 64 * 64 {
            for row in self.bits.chunks(self.size.width) {
                f.write_str("  ")?;
                for &b in row {
                    f.write_str(if b { "#" } else { "." })?;
                }
                f.write_str("\n")?;
            }
        } else {
            writeln!(f, "  {} foreground pixels", self.count_ones())?;
        }
        f.write_str("]")
    }
}

/// Row-major raster of values in `[0, 1]`, typically a predicted probability map.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayMap {
    size: Size,
    values: Vec<f64>,
}

impl GrayMap {
    pub fn from_vec(size: Size, values: Vec<f64>) -> Result<Self> {
        if values.len() != size.area() {
            return Err(Error::BufferLength { size, len: values.len(), expected: size.area() });
        }
        if let Some((index, &value)) =
            values.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::ValueOutOfRange { index, value });
        }
        Ok(GrayMap { size, values })
    }

    /// 8-bit levels mapped to `level / 255`.
    pub fn from_levels(size: Size, levels: &[u8]) -> Result<Self> {
        if levels.len() != size.area() {
            return Err(Error::BufferLength { size, len: levels.len(), expected: size.area() });
        }
        Ok(GrayMap { size, values: levels.iter().map(|&l| l as f64 / 255.0).collect() })
    }

    pub fn constant(size: Size, value: f64) -> Result<Self> {
        GrayMap::from_vec(size, vec![value; size.area()])
    }

    /// The crisp map with 1.0 on foreground and 0.0 elsewhere.
    pub fn from_mask(mask: &BinaryMask) -> Self {
        GrayMap {
            size: mask.size,
            values: mask.bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect(),
        }
    }

    #[inline]
    pub fn size(&self) -> Size {
        self.size
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[self.size.index(row, col)]
    }

    /// `1 - value` for every cell.
    pub fn inverted(&self) -> GrayMap {
        GrayMap { size: self.size, values: self.values.iter().map(|v| 1.0 - v).collect() }
    }
}

/// The TP/FP/FN/TN partition of a prediction against a ground truth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMaps {
    pub tp: BinaryMask,
    pub fp: BinaryMask,
    pub fn_: BinaryMask,
    pub tn: BinaryMask,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicOp {
    And,
    Or,
    Xor,
    /// `a \ b`
    Diff,
}

/// Foreground where `value >= tau`.
pub fn binarize(p: &GrayMap, tau: f64) -> BinaryMask {
    BinaryMask { size: p.size, bits: p.values.iter().map(|&v| v >= tau).collect() }
}

pub fn logic(a: &BinaryMask, b: &BinaryMask, op: LogicOp) -> Result<BinaryMask> {
    match op {
        LogicOp::And => a.and(b),
        LogicOp::Or => a.or(b),
        LogicOp::Xor => a.xor(b),
        LogicOp::Diff => a.diff(b),
    }
}

pub fn complement(a: &BinaryMask) -> BinaryMask {
    a.not()
}

pub fn confusion(p: &BinaryMask, g: &BinaryMask) -> Result<ConfusionMaps> {
    check_size(p.size, g.size)?;
    let n = p.size.area();
    let (mut tp, mut fp, mut fn_, mut tn) =
        (vec![false; n], vec![false; n], vec![false; n], vec![false; n]);
    for i in 0..n {
        match (p.bits[i], g.bits[i]) {
            (true, true) => tp[i] = true,
            (true, false) => fp[i] = true,
            (false, true) => fn_[i] = true,
            (false, false) => tn[i] = true,
        }
    }
    let size = p.size;
    Ok(ConfusionMaps {
        tp: BinaryMask { size, bits: tp },
        fp: BinaryMask { size, bits: fp },
        fn_: BinaryMask { size, bits: fn_ },
        tn: BinaryMask { size, bits: tn },
    })
}

pub(crate) fn check_size(left: Size, right: Size) -> Result<()> {
    if left != right {
        return Err(Error::SizeMismatch { left, right });
    }
    Ok(())
}
