"""Independent brute-force oracles.

Straight-line reimplementations of the operations under test, written for
obviousness rather than speed: nested loops, no numpy vectorization, no
shared code with the package internals beyond public data types.
"""

from itertools import combinations_with_replacement

from ditherfeat.chroma import QuantizerConfig, quantize
from ditherfeat.patterns import FeaturePoint


def brute_pattern_count(z: int) -> int:
    """Distinct descending-sorted 4-tuples over z colors, by enumeration."""
    distinct = set()
    for combo in combinations_with_replacement(range(z), 4):
        distinct.add(tuple(sorted(combo, reverse=True)))
    return len(distinct)


def brute_block_average(img, l: int):
    """Block means rounded half-up, as a list-of-lists of RGB tuples."""
    h, w = img.shape[:2]
    bh, bw = h // l, w // l
    rows = []
    for by in range(bh):
        row = []
        for bx in range(bw):
            sums = [0, 0, 0]
            for y in range(by * l, by * l + l):
                for x in range(bx * l, bx * l + l):
                    for c in range(3):
                        sums[c] += int(img[y, x, c])
            row.append(tuple((2 * s + l * l) // (2 * l * l) for s in sums))
        rows.append(row)
    return rows


def _brute_pattern(blocks, gx, gy):
    return (
        blocks[gy][gx],
        blocks[gy][gx + 1],
        blocks[gy + 1][gx],
        blocks[gy + 1][gx + 1],
    )


def _brute_distance(pa, pb):
    total = 0
    for ea, eb in zip(pa, pb):
        for ca, cb in zip(ea, eb):
            total += abs(ca - cb)
    return total


def brute_detect(img, block_size=2, threshold=186.0, nms_window=5):
    """Full detector by exhaustive scan: thresholding, strength, NMS."""
    blocks = brute_block_average(img, block_size)
    bh = len(blocks)
    bw = len(blocks[0])
    gh, gw = bh - 1, bw - 1

    candidates = {}
    for gy in range(2, gh - 2):
        for gx in range(2, gw - 2):
            center = _brute_pattern(blocks, gx, gy)
            dists = []
            for dy in (-2, 0, 2):
                for dx in (-2, 0, 2):
                    if dx == 0 and dy == 0:
                        continue
                    dists.append(
                        _brute_distance(center, _brute_pattern(blocks, gx + dx, gy + dy))
                    )
            if all(d > threshold for d in dists):
                candidates[(gx, gy)] = (sum(dists), center)

    radius = (nms_window - 1) // 2
    kept = []
    for (gx, gy), (strength, center) in candidates.items():
        best = True
        for oy in range(gy - radius, gy + radius + 1):
            for ox in range(gx - radius, gx + radius + 1):
                if (ox, oy) == (gx, gy) or (ox, oy) not in candidates:
                    continue
                os_ = candidates[(ox, oy)][0]
                if os_ > strength or (os_ == strength and (oy, ox) < (gy, gx)):
                    best = False
                    break
            if not best:
                break
        if best:
            kept.append(
                FeaturePoint(
                    grid_x=gx,
                    grid_y=gy,
                    strength=float(strength),
                    elements=center,
                )
            )
    kept.sort(key=lambda f: (f.grid_y, f.grid_x))
    return kept


def brute_histogram(positions, element_colors, k, levels, v_black=0.2, s_gray=0.2):
    """Descriptor assembly by the definition, step by step."""
    n = len(positions)
    counts = [[0.0] * levels for _ in range(k)]
    if n == 0:
        return counts
    cx = sum(p[0] for p in positions) / n
    cy = sum(p[1] for p in positions) / n
    d_sq = [(p[0] - cx) ** 2 + (p[1] - cy) ** 2 for p in positions]
    m = max(d_sq)

    cfg = QuantizerConfig(levels=levels, v_black=v_black, s_gray=s_gray)
    for i in range(n):
        if m == 0.0:
            row = 0
        else:
            row = k - 1
            for b in range(1, k + 1):
                edge = m if b == k else (b / k) * m
                if d_sq[i] <= edge:
                    row = b - 1
                    break
        for color in element_colors[i]:
            counts[row][quantize(color, cfg)] += 1.0

    peak = max(max(r) for r in counts)
    return [[v / peak for v in row] for row in counts]
