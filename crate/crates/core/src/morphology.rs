//! Binary morphology and raster topology.
//!
//! Pixels outside the raster read as background for every operation here.

use alloc::vec;
use alloc::vec::Vec;

use crate::raster::{BinaryMask, Size};
use crate::{Error, Result};

/// A set of `(dy, dx)` displacements probed around each pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuringElement {
    offsets: Vec<(isize, isize)>,
}

impl StructuringElement {
    /// Offsets must include `(0, 0)` and be closed under negation.
    pub fn new(mut offsets: Vec<(isize, isize)>) -> Result<Self> {
        offsets.sort_unstable();
        offsets.dedup();
        let symmetric = offsets.iter().all(|&(dy, dx)| offsets.binary_search(&(-dy, -dx)).is_ok());
        if !symmetric || offsets.binary_search(&(0, 0)).is_err() {
            return Err(Error::InvalidStructuringElement);
        }
        Ok(StructuringElement { offsets })
    }

    /// Euclidean disk: every offset with `dy² + dx² <= radius²`.
    ///
    /// `disk(1)` is the 5-pixel cross.
    pub fn disk(radius: usize) -> Self {
        let r = radius as isize;
        let mut offsets = Vec::new();
        for dy in -r..=r {
            for dx in -r..=r {
                if dy * dy + dx * dx <= r * r {
                    offsets.push((dy, dx));
                }
            }
        }
        StructuringElement { offsets }
    }

    /// The full `(2r+1) x (2r+1)` square.
    pub fn square(radius: usize) -> Self {
        let r = radius as isize;
        let mut offsets = Vec::new();
        for dy in -r..=r {
            for dx in -r..=r {
                offsets.push((dy, dx));
            }
        }
        StructuringElement { offsets }
    }

    pub fn identity() -> Self {
        StructuringElement { offsets: vec![(0, 0)] }
    }

    pub fn offsets(&self) -> &[(isize, isize)] {
        &self.offsets
    }
}

/// Output pixel is set iff every probed neighbour is set.
pub fn erode(m: &BinaryMask, se: &StructuringElement) -> BinaryMask {
    let mut out = BinaryMask::filled(m.size());
    for &(dy, dx) in se.offsets() {
        combine_shifted(&mut out, m, dy, dx, |o, s| o & s, false);
    }
    out
}

/// Output pixel is set iff any probed neighbour is set.
pub fn dilate(m: &BinaryMask, se: &StructuringElement) -> BinaryMask {
    let mut out = BinaryMask::new(m.size());
    for &(dy, dx) in se.offsets() {
        combine_shifted(&mut out, m, dy, dx, |o, s| o | s, false);
    }
    out
}

/// `out[r][c] = op(out[r][c], src[r+dy][c+dx])`, with `outside` for probes off the raster.
fn combine_shifted(
    out: &mut BinaryMask,
    src: &BinaryMask,
    dy: isize,
    dx: isize,
    op: impl Fn(bool, bool) -> bool,
    outside: bool,
) {
    let Size { height, width } = src.size();
    let (h, w) = (height as isize, width as isize);
    let src_bits = src.bits();
    let out_bits = out.bits_mut();
    // columns whose probe stays inside the raster
    let c_lo = (-dx).clamp(0, w) as usize;
    let c_hi = (w - dx).clamp(0, w) as usize;
    for r in 0..height {
        let row = &mut out_bits[r * width..(r + 1) * width];
        let sr = r as isize + dy;
        if sr < 0 || sr >= h {
            row.iter_mut().for_each(|o| *o = op(*o, outside));
            continue;
        }
        let srow = &src_bits[sr as usize * width..(sr as usize + 1) * width];
        for o in &mut row[..c_lo] {
            *o = op(*o, outside);
        }
        for o in &mut row[c_hi.max(c_lo)..] {
            *o = op(*o, outside);
        }
        if c_lo < c_hi {
            let s_lo = (c_lo as isize + dx) as usize;
            let s = &srow[s_lo..s_lo + (c_hi - c_lo)];
            for (o, &v) in row[c_lo..c_hi].iter_mut().zip(s) {
                *o = op(*o, v);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connectivity {
    Four,
    Eight,
}

/// Connected-component labels. Label 0 is background; components are
/// numbered `1..=count` in raster order of their first pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    size: Size,
    labels: Vec<u32>,
    count: u32,
}

impl LabelMap {
    pub fn size(&self) -> Size {
        self.size
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn count(&self) -> u32 {
        self.count
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.labels[self.size.index(row, col)]
    }

    /// Pixel count per label; index 0 holds the background count.
    pub fn component_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count as usize + 1];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }
}

struct DisjointSet {
    parent: Vec<u32>,
}

impl DisjointSet {
    fn make(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        id
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        // smaller root wins, so roots stay in first-seen order
        if ra < rb {
            self.parent[rb as usize] = ra;
        } else if rb < ra {
            self.parent[ra as usize] = rb;
        }
    }
}

/// Two-pass union-find labelling.
pub fn label_components(m: &BinaryMask, connectivity: Connectivity) -> LabelMap {
    let size = m.size();
    let Size { height, width } = size;
    let bits = m.bits();
    let mut provisional = vec![u32::MAX; size.area()];
    let mut sets = DisjointSet { parent: Vec::new() };

    for r in 0..height {
        for c in 0..width {
            let i = r * width + c;
            if !bits[i] {
                continue;
            }
            let mut current = u32::MAX;
            let visit = |j: usize, current: &mut u32, sets: &mut DisjointSet| {
                let l = provisional[j];
                if l == u32::MAX {
                    return;
                }
                if *current == u32::MAX {
                    *current = l;
                } else {
                    sets.union(*current, l);
                }
            };
            if c > 0 {
                visit(i - 1, &mut current, &mut sets);
            }
            if r > 0 {
                visit(i - width, &mut current, &mut sets);
                if connectivity == Connectivity::Eight {
                    if c > 0 {
                        visit(i - width - 1, &mut current, &mut sets);
                    }
                    if c + 1 < width {
                        visit(i - width + 1, &mut current, &mut sets);
                    }
                }
            }
            if current == u32::MAX {
                current = sets.make();
            }
            provisional[i] = current;
        }
    }

    let mut final_of_root = vec![0u32; sets.parent.len()];
    let mut count = 0u32;
    let mut labels = vec![0u32; size.area()];
    for (i, &p) in provisional.iter().enumerate() {
        if p == u32::MAX {
            continue;
        }
        let root = sets.find(p) as usize;
        if final_of_root[root] == 0 {
            count += 1;
            final_of_root[root] = count;
        }
        labels[i] = final_of_root[root];
    }
    LabelMap { size, labels, count }
}

// Neighbour offsets in Zhang–Suen order P2..P9: N, NE, E, SE, S, SW, W, NW.
const ZS_RING: [(isize, isize); 8] = [(-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1)];

const fn ring_bit(code: usize, k: usize) -> bool {
    (code >> k) & 1 == 1
}

const fn zs_lut(second: bool) -> [bool; 256] {
    let mut lut = [false; 256];
    let mut code = 0usize;
    while code < 256 {
        let b = (code as u32).count_ones();
        let mut a = 0;
        let mut k = 0;
        while k < 8 {
            if !ring_bit(code, k) && ring_bit(code, (k + 1) % 8) {
                a += 1;
            }
            k += 1;
        }
        // bit k is P(k+2): N=0, NE=1, E=2, SE=3, S=4, SW=5, W=6, NW=7
        let (n, e, s, w) = (ring_bit(code, 0), ring_bit(code, 2), ring_bit(code, 4), ring_bit(code, 6));
        let directional = if second {
            !(n && e && w) && !(n && s && w)
        } else {
            !(n && e && s) && !(e && s && w)
        };
        lut[code] = b >= 2 && b <= 6 && a == 1 && directional;
        code += 1;
    }
    lut
}

const ZS_FIRST: [bool; 256] = zs_lut(false);
const ZS_SECOND: [bool; 256] = zs_lut(true);

/// Zhang–Suen two-subiteration thinning to a one-pixel-wide skeleton.
///
/// Each subiteration decides deletions on the image as it stood before the
/// subiteration, so the result does not depend on visiting order. A component
/// small enough to fit in a 2x2 box would otherwise vanish in one
/// subiteration; its raster-first pixel is kept instead.
pub fn skeletonize(m: &BinaryMask) -> BinaryMask {
    let Size { height, width } = m.size();
    let pw = width + 2;
    let mut img = vec![false; (height + 2) * pw];
    for r in 0..height {
        img[(r + 1) * pw + 1..(r + 1) * pw + 1 + width].copy_from_slice(&m.bits()[r * width..(r + 1) * width]);
    }
    let ring: [isize; 8] = ZS_RING.map(|(dy, dx)| dy * pw as isize + dx);
    let code_at = |img: &[bool], i: usize| -> usize {
        let mut code = 0usize;
        for (k, &o) in ring.iter().enumerate() {
            if img[(i as isize + o) as usize] {
                code |= 1 << k;
            }
        }
        code
    };

    let mut queued = vec![false; img.len()];
    let mut candidates = Vec::new();
    for i in 0..img.len() {
        if img[i] && code_at(&img, i) != 0xFF {
            queued[i] = true;
            candidates.push(i);
        }
    }

    let mut marked = vec![false; img.len()];
    let mut to_delete = Vec::new();
    let mut keep = Vec::new();
    loop {
        let mut changed = false;
        for lut in [&ZS_FIRST, &ZS_SECOND] {
            to_delete.clear();
            for &i in &candidates {
                if img[i] && lut[code_at(&img, i)] {
                    marked[i] = true;
                    to_delete.push(i);
                }
            }
            keep.clear();
            for &i in &to_delete {
                if (code_at(&img, i) as u32).count_ones() <= 3 {
                    if let Some(k) = tiny_component_survivor(&img, &marked, &ring, pw, i) {
                        keep.push(k);
                    }
                }
            }
            for &k in &keep {
                marked[k] = false;
            }
            let mut deleted_any = false;
            for &i in &to_delete {
                if marked[i] {
                    img[i] = false;
                    marked[i] = false;
                    deleted_any = true;
                }
            }
            if !deleted_any {
                continue;
            }
            changed = true;

            let mut next = Vec::with_capacity(candidates.len());
            for &i in &candidates {
                if img[i] {
                    next.push(i);
                } else {
                    queued[i] = false;
                }
            }
            for &d in &to_delete {
                if img[d] {
                    continue;
                }
                for &o in &ring {
                    let q = (d as isize + o) as usize;
                    if img[q] && !queued[q] {
                        queued[q] = true;
                        next.push(q);
                    }
                }
            }
            candidates = next;
        }
        if !changed {
            break;
        }
    }

    let mut out = BinaryMask::new(m.size());
    for r in 0..height {
        for c in 0..width {
            if img[(r + 1) * pw + c + 1] {
                out.set(r, c, true);
            }
        }
    }
    out
}

/// If the 8-component holding `start` fits in a 2x2 box and every pixel of it
/// is marked, returns the pixel to keep (the raster-first one).
fn tiny_component_survivor(img: &[bool], marked: &[bool], ring: &[isize; 8], pw: usize, start: usize) -> Option<usize> {
    let mut members = [0usize; 4];
    let mut len = 1;
    members[0] = start;
    let mut head = 0;
    while head < len {
        let i = members[head];
        head += 1;
        for &o in ring {
            let q = (i as isize + o) as usize;
            if img[q] && !members[..len].contains(&q) {
                if len == 4 {
                    return None;
                }
                members[len] = q;
                len += 1;
            }
        }
    }
    let members = &members[..len];
    let rows = members.iter().map(|&i| i / pw);
    let cols = members.iter().map(|&i| i % pw);
    let (rmin, rmax) = (rows.clone().min()?, rows.max()?);
    let (cmin, cmax) = (cols.clone().min()?, cols.max()?);
    if rmax - rmin > 1 || cmax - cmin > 1 || !members.iter().all(|&i| marked[i]) {
        return None;
    }
    members.iter().copied().min()
}
