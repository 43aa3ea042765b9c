//! Border following, perimeter and dominant-point simplification.

use alloc::vec;
use alloc::vec::Vec;

use crate::raster::BinaryMask;
use crate::{Error, Result};

/// Integer pixel coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub row: i32,
    pub col: i32,
}

impl Point {
    pub const fn new(row: i32, col: i32) -> Self {
        Point { row, col }
    }

    fn dist(self, other: Point) -> f64 {
        let dr = (self.row - other.row) as f64;
        let dc = (self.col - other.col) as f64;
        libm::sqrt(dr * dr + dc * dc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContourKind {
    /// Border between a foreground component and the background around it.
    Outer,
    /// Border between a foreground component and a background region it encloses.
    Hole,
}

/// A closed border, as the sequence of foreground pixels visited while tracing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contour {
    pub points: Vec<Point>,
    pub kind: ContourKind,
    /// 1-based id of the 8-connected component this border belongs to. Ids
    /// match the labels of `label_components(m, Connectivity::Eight)`.
    pub component_id: u32,
}

impl Contour {
    /// Closed polygonal arc length: unit axis steps, `√2` diagonal steps.
    pub fn length(&self) -> f64 {
        closed_length(&self.points)
    }

    pub fn to_polyline(&self) -> Polyline {
        Polyline { points: self.points.clone(), closed: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyline {
    pub points: Vec<Point>,
    pub closed: bool,
}

impl Polyline {
    pub fn open(points: Vec<Point>) -> Self {
        Polyline { points, closed: false }
    }

    pub fn closed(points: Vec<Point>) -> Self {
        Polyline { points, closed: true }
    }
}

fn closed_length(points: &[Point]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let mut total = 0.0;
    for w in points.windows(2) {
        total += w[0].dist(w[1]);
    }
    total + points[points.len() - 1].dist(points[0])
}

// Clockwise on screen (row axis points down): E, SE, S, SW, W, NW, N, NE.
const DIRS: [(isize, isize); 8] = [(0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1)];
const EAST: usize = 0;

/// Suzuki–Abe border following.
///
/// Returns one outer border per 8-connected foreground component and one hole
/// border per 4-connected background region enclosed by foreground, in raster
/// order of each border's starting pixel.
pub fn find_contours(m: &BinaryMask) -> Vec<Contour> {
    let (h, w) = (m.height(), m.width());
    let pw = w + 2;
    let mut f = vec![0i32; (h + 2) * pw];
    for r in 0..h {
        for c in 0..w {
            if m.get(r, c) {
                f[(r + 1) * pw + c + 1] = 1;
            }
        }
    }
    let offs: [isize; 8] = DIRS.map(|(dr, dc)| dr * pw as isize + dc);
    let at = |i: usize, d: usize| (i as isize + offs[d]) as usize;

    struct Border {
        kind: ContourKind,
        parent: usize,
        component: u32,
    }
    // border number 1 is the frame
    let mut borders = vec![Border { kind: ContourKind::Hole, parent: 0, component: 0 }];
    let mut contours = Vec::new();
    let mut nbd: i32 = 1;
    let mut components = 0u32;

    for r in 1..=h {
        let mut lnbd: i32 = 1;
        for c in 1..=w {
            let i = r * pw + c;
            let v = f[i];
            if v == 0 {
                continue;
            }
            let start = if v == 1 && f[i - 1] == 0 {
                Some((ContourKind::Outer, i - 1))
            } else if v >= 1 && f[i + 1] == 0 {
                if v > 1 {
                    lnbd = v;
                }
                Some((ContourKind::Hole, i + 1))
            } else {
                None
            };

            if let Some((kind, from)) = start {
                nbd += 1;
                let prev = &borders[lnbd as usize - 1];
                let parent = if (kind == ContourKind::Outer) == (prev.kind == ContourKind::Outer) {
                    prev.parent
                } else {
                    lnbd as usize
                };
                let component = match kind {
                    ContourKind::Outer => {
                        components += 1;
                        components
                    }
                    ContourKind::Hole => borders[parent - 1].component,
                };
                borders.push(Border { kind, parent, component });

                let points = follow_border(&mut f, &offs, pw, i, from, nbd, at);
                contours.push(Contour { points, kind, component_id: component });
            }

            let v = f[i];
            if v != 1 {
                lnbd = v.abs();
            }
        }
    }
    contours
}

fn follow_border(
    f: &mut [i32],
    offs: &[isize; 8],
    pw: usize,
    start: usize,
    from: usize,
    nbd: i32,
    at: impl Fn(usize, usize) -> usize,
) -> Vec<Point> {
    let to_point = |i: usize| Point::new((i / pw) as i32 - 1, (i % pw) as i32 - 1);
    let delta = |a: usize, b: usize| {
        let d = b as isize - a as isize;
        offs.iter().position(|&o| o == d).expect("adjacent pixels")
    };

    // clockwise search from `from` for the first non-zero neighbour
    let d0 = delta(start, from);
    let first = (0..8).map(|k| (d0 + k) % 8).map(|d| at(start, d)).find(|&j| f[j] != 0);
    let Some(first) = first else {
        f[start] = -nbd;
        return vec![to_point(start)];
    };

    let mut points = Vec::new();
    let (mut prev, mut cur) = (first, start);
    loop {
        points.push(to_point(cur));
        // counter-clockwise search starting just after `prev`
        let dp = delta(cur, prev);
        let mut east_examined_zero = false;
        let mut next = prev;
        for k in 1..=8 {
            let d = (dp + 8 - k) % 8;
            let j = at(cur, d);
            if f[j] != 0 {
                next = j;
                break;
            }
            if d == EAST {
                east_examined_zero = true;
            }
        }
        if east_examined_zero {
            f[cur] = -nbd;
        } else if f[cur] == 1 {
            f[cur] = nbd;
        }
        if next == start && cur == first {
            break;
        }
        prev = cur;
        cur = next;
    }
    points
}

/// Sum of closed arc lengths over the selected contours (all when `component_id` is `None`).
pub fn perimeter(contours: &[Contour], component_id: Option<u32>) -> f64 {
    contours
        .iter()
        .filter(|c| component_id.is_none_or(|id| c.component_id == id))
        .map(Contour::length)
        .sum()
}

/// Distance from `p` to the segment `a`-`b`; point distance when `a == b`.
fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (vr, vc) = ((b.row - a.row) as f64, (b.col - a.col) as f64);
    let (wr, wc) = ((p.row - a.row) as f64, (p.col - a.col) as f64);
    let len2 = vr * vr + vc * vc;
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = (wr * vr + wc * vc) / len2;
    if t <= 0.0 {
        return p.dist(a);
    }
    if t >= 1.0 {
        return p.dist(b);
    }
    let cross = wr * vc - wc * vr;
    libm::fabs(cross) / libm::sqrt(len2)
}

/// Indices kept by open-curve Ramer–Douglas–Peucker. Endpoints are always kept.
fn rdp_open_indices(points: &[Point], epsilon: f64) -> Vec<usize> {
    let n = points.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[n - 1] = true;
    let mut stack = vec![(0usize, n - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if hi <= lo + 1 {
            continue;
        }
        let (a, b) = (points[lo], points[hi]);
        let mut best = lo;
        let mut best_d = -1.0;
        for (k, &p) in points.iter().enumerate().take(hi).skip(lo + 1) {
            let d = segment_distance(p, a, b);
            if d > best_d {
                best_d = d;
                best = k;
            }
        }
        if best_d > epsilon {
            keep[best] = true;
            stack.push((best, hi));
            stack.push((lo, best));
        }
    }
    (0..n).filter(|&i| keep[i]).collect()
}

fn rdp_closed_points(points: &[Point], epsilon: f64) -> Vec<Point> {
    let n = points.len();
    if n <= 2 {
        return points.to_vec();
    }
    let anchor = points[0];
    let mut far = 0;
    let mut far_d = 0.0;
    for (k, &p) in points.iter().enumerate().skip(1) {
        let d = p.dist(anchor);
        if d > far_d {
            far_d = d;
            far = k;
        }
    }
    if far == 0 {
        return vec![anchor];
    }
    let first_arc = &points[..=far];
    let mut second_arc: Vec<Point> = points[far..].to_vec();
    second_arc.push(anchor);

    let mut out: Vec<Point> = rdp_open_indices(first_arc, epsilon).into_iter().map(|i| first_arc[i]).collect();
    let second = rdp_open_indices(&second_arc, epsilon);
    // drop the shared anchors: second arc starts at `far` and ends back at index 0
    out.extend(second[1..second.len() - 1].iter().map(|&i| second_arc[i]));
    out
}

/// Ramer–Douglas–Peucker simplification.
///
/// Closed polylines are anchored at their first point and the point farthest
/// from it; the two arcs between them are simplified independently.
pub fn rdp(p: &Polyline, epsilon: f64) -> Result<Polyline> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::NegativeEpsilon(epsilon));
    }
    let points = if p.closed {
        rdp_closed_points(&p.points, epsilon)
    } else {
        rdp_open_indices(&p.points, epsilon).into_iter().map(|i| p.points[i]).collect()
    };
    Ok(Polyline { points, closed: p.closed })
}

pub(crate) fn rdp_open_count(points: &[Point], epsilon: f64) -> usize {
    rdp_open_indices(points, epsilon).len()
}

pub(crate) fn rdp_closed_count(points: &[Point], epsilon: f64) -> usize {
    rdp_closed_points(points, epsilon).len()
}

/// Total vertex count of the closed-curve RDP approximation of every contour.
pub fn dominant_point_count(m: &BinaryMask, epsilon: f64) -> Result<usize> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::NegativeEpsilon(epsilon));
    }
    Ok(find_contours(m).iter().map(|c| rdp_closed_count(&c.points, epsilon)).sum())
}
