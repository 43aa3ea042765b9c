"""Reference values for weighted F, S-measure and mean E-measure.

Straight per-pixel translations of the original MATLAB evaluation code, with
two conventions shared with the Rust crate:

* `eps` in denominators is replaced by an explicit zero guard;
* E-measure thresholds are (i + 1) / 256 for i in 0..256, scored over N pixels;
* the nearest foreground pixel is the one with least (distance², column-major index).

Run `python3 reference_metrics.py` to print the table embedded in
`../reference_oracle.rs`.
"""

import numpy as np
from scipy.ndimage import correlate

M32 = 0xFFFFFFFF


def mix(r, c, k):
    x = ((r * 73856093) ^ (c * 19349663) ^ (k * 83492791)) & M32
    x = (x * 2654435761) & M32
    return x >> 16


def fixture_size(k):
    return 12 + (k * 7) % 41, 12 + (k * 13) % 47


def gt_pixel(k, h, w, r, c):
    if r < 0 or c < 0 or r >= h or c >= w:
        return False
    cy = h // 2 + k % 3 - 1
    cx = w // 2 - k % 4 + 1
    d2 = (r - cy) ** 2 + (c - cx) ** 2
    kind = k % 5
    if kind == 0:
        return d2 <= (min(h, w) // 3) ** 2
    if kind == 1:
        return r < h * 2 // 3 and c >= w // 4
    if kind == 2:
        big = min(h, w) * 2 // 5
        return (big // 2) ** 2 < d2 <= big ** 2 or (1 <= r <= 3 and 1 <= c <= 3)
    if kind == 3:
        return abs(r - c * h // w) <= 1 + k % 3
    return ((r // 4) + (c // 5)) % 2 == 0 and r % 4 != 3


def pred_level(k, h, w, r, c):
    g = gt_pixel(k, h, w, r, c)
    mode = k // 5
    if mode == 0:
        return min(255, max(0, (220 if g else 30) + mix(r, c, k) % 61 - 30))
    if mode == 1:
        return 255 if gt_pixel(k, h, w, r - 1, c + 2) else 0
    if mode == 2:
        return (r * 255 // (h - 1) + c * 3 + (80 if g else 0)) % 256
    return {15: 0, 16: 128, 17: 0 if g else 255, 18: mix(r, c, k) % 256, 19: 255 if g else 0}[k]


def fixture(k):
    h, w = fixture_size(k)
    g = np.array([[gt_pixel(k, h, w, r, c) for c in range(w)] for r in range(h)])
    p = np.array([[pred_level(k, h, w, r, c) for c in range(w)] for r in range(h)], dtype=float) / 255.0
    return p, g


def weighted_f(fg, gt):
    h, w = gt.shape
    E = np.abs(fg - gt.astype(float))
    fr, fc = np.nonzero(gt)
    fidx = fr * w + fc
    rr, cc = np.mgrid[0:h, 0:w]
    d2 = (rr[..., None] - fr) ** 2 + (cc[..., None] - fc) ** 2
    # lexicographic (d², column-major index); that index is < h*w
    key = d2 * (h * w) + (fc * h + fr)
    best = np.argmin(key, axis=-1)
    nearest = fidx[best]
    dst = np.sqrt(d2.reshape(h * w, -1)[np.arange(h * w), best.ravel()]).reshape(h, w)

    Et = E.copy()
    Et[~gt] = E.ravel()[nearest[~gt]]
    x = np.arange(-3, 4)
    K = np.exp(-(x[:, None] ** 2 + x[None, :] ** 2) / (2.0 * 5.0 ** 2))
    K /= K.sum()
    EA = correlate(Et, K, mode="constant", cval=0.0)
    MIN_E_EA = E.copy()
    sel = gt & (EA < E)
    MIN_E_EA[sel] = EA[sel]
    B = np.ones_like(E)
    B[~gt] = 2.0 - np.exp(np.log(0.5) / 5.0 * dst[~gt])
    Ew = MIN_E_EA * B
    TPw = gt.sum() - Ew[gt].sum()
    FPw = Ew[~gt].sum()
    R = 1.0 - Ew[gt].mean()
    P = TPw / (TPw + FPw) if TPw + FPw != 0 else 0.0
    return 2.0 * R * P / (R + P) if R + P != 0 else 0.0


def _object(pred, gt):
    vals = pred[gt]
    if vals.size == 0:
        return 0.0
    x = vals.mean()
    sigma = vals.std(ddof=1) if vals.size > 1 else 0.0
    return 2.0 * x / (x * x + 1.0 + sigma)


def _ssim(pred, gt):
    hei, wid = gt.shape
    N = hei * wid
    if N == 0:
        return 0.0
    g = gt.astype(float)
    x, y = pred.mean(), g.mean()
    d = N - 1 if N > 1 else None
    sx2 = ((pred - x) ** 2).sum() / d if d else 0.0
    sy2 = ((g - y) ** 2).sum() / d if d else 0.0
    sxy = ((pred - x) * (g - y)).sum() / d if d else 0.0
    alpha = 4 * x * y * sxy
    beta = (x * x + y * y) * (sx2 + sy2)
    if alpha != 0:
        return alpha / beta
    if beta == 0:
        return 1.0
    return 0.0


def _round(v):
    return int(np.floor(v + 0.5))


def s_measure(pred, gt, alpha=0.5):
    y = gt.mean()
    if y == 0:
        return 1.0 - pred.mean()
    if y == 1:
        return pred.mean()
    u = y
    o_fg = _object(np.where(gt, pred, 0.0), gt)
    o_bg = _object(np.where(gt, 0.0, 1.0 - pred), ~gt)
    s_obj = u * o_fg + (1 - u) * o_bg

    rows, cols = gt.shape
    total = gt.sum()
    X = _round((gt.sum(axis=0) * np.arange(1, cols + 1)).sum() / total)
    Y = _round((gt.sum(axis=1) * np.arange(1, rows + 1)).sum() / total)
    area = rows * cols
    parts = [
        (slice(0, Y), slice(0, X)),
        (slice(0, Y), slice(X, cols)),
        (slice(Y, rows), slice(0, X)),
        (slice(Y, rows), slice(X, cols)),
    ]
    s_reg = 0.0
    for rs, cs in parts:
        gb, pb = gt[rs, cs], pred[rs, cs]
        s_reg += gb.size / area * _ssim(pb, gb)
    q = alpha * s_obj + (1 - alpha) * s_reg
    return min(1.0, max(0.0, q))


def _emeasure(fm, gt):
    dfm, dgt = fm.astype(float), gt.astype(float)
    if dgt.sum() == 0:
        enhanced = 1.0 - dfm
    elif (~gt).sum() == 0:
        enhanced = dfm
    else:
        afm = dfm - dfm.mean()
        agt = dgt - dgt.mean()
        align = 2.0 * (agt * afm) / (agt * agt + afm * afm)
        enhanced = (align + 1.0) ** 2 / 4.0
    return enhanced.sum() / gt.size


def e_measure_mean(pred, gt):
    return float(np.mean([_emeasure(pred >= (i + 1) / 256.0, gt) for i in range(256)]))


def named_cases():
    half = np.zeros((64, 64), dtype=bool)
    half[:, :32] = True
    square = np.zeros((32, 32), dtype=bool)
    square[8:24, 8:24] = True
    hf = half.astype(float)
    sq = square.astype(float)
    return [
        ("wf_inverted_half_plane", weighted_f(1.0 - hf, half)),
        ("wf_constant_half_plane", weighted_f(np.full(half.shape, 0.5), half)),
        ("s_inverted_square", s_measure(1.0 - sq, square)),
        ("s_zero_square", s_measure(np.zeros_like(sq), square)),
        ("e_inverted_square", e_measure_mean(1.0 - sq, square)),
        ("e_mean_level_square", e_measure_mean(np.full(sq.shape, sq.mean()), square)),
    ]


if __name__ == "__main__":
    print("const FIXTURES: [(f64, f64, f64); 20] = [")
    for k in range(20):
        p, g = fixture(k)
        print(f"    ({float(weighted_f(p, g))!r}, {float(s_measure(p, g))!r}, {float(e_measure_mean(p, g))!r}),")
    print("];")
    for name, v in named_cases():
        print(f"const {name.upper()}: f64 = {float(v)!r};")
