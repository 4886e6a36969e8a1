"""Grid-level geometry: marching-squares isocontours and region labeling.

Contours are extracted at ``value == level`` with linear interpolation along
cell edges.  The grid is virtually padded with a ring of strongly negative
vertices so every contour is a closed polyline: level sets that would leave
the grid are clipped to its boundary instead.  Saddle cells are resolved by
the cell-center average rule (center >= level joins the positive phase).
"""

from __future__ import annotations

from collections import deque

import numpy as np

_PAD_VALUE = -1e300

# Segment table indexed by the positive-phase bitmask of cell corners
# (bit0 = bottom-left, bit1 = bottom-right, bit2 = top-right, bit3 = top-left).
# Entries name the pair of crossed cell edges; the two saddle cases hold a
# (center_positive, center_negative) pair of segment lists.
_SEGMENTS = {
    0: [],
    1: [("left", "bottom")],
    2: [("bottom", "right")],
    3: [("left", "right")],
    4: [("right", "top")],
    5: (([("bottom", "right"), ("top", "left")]),
        ([("left", "bottom"), ("right", "top")])),
    6: [("bottom", "top")],
    7: [("left", "top")],
    8: [("left", "top")],
    9: [("bottom", "top")],
    10: (([("left", "bottom"), ("right", "top")]),
         ([("bottom", "right"), ("top", "left")])),
    11: [("right", "top")],
    12: [("left", "right")],
    13: [("bottom", "right")],
    14: [("left", "bottom")],
    15: [],
}
_SADDLES = (5, 10)


def marching_squares(values: np.ndarray, xs: np.ndarray, ys: np.ndarray,
                     level: float) -> list[np.ndarray]:
    """Closed isocontour polylines of ``values[iy, ix]`` at the given level.

    Returns a list of (k, 2) arrays of (x, y) vertices with first == last.
    Degenerate loops with fewer than 3 distinct vertices are dropped.
    """
    ny, nx = values.shape
    dx = xs[1] - xs[0]
    dy = ys[1] - ys[0]

    padded = np.full((ny + 2, nx + 2), _PAD_VALUE)
    padded[1:-1, 1:-1] = values
    xp = np.concatenate(([xs[0] - dx], xs, [xs[-1] + dx]))
    yp = np.concatenate(([ys[0] - dy], ys, [ys[-1] + dy]))
    pos = padded >= level

    # Cell-local edge name -> global edge id.  Horizontal edge (ix, iy)
    # joins vertices (ix, iy)-(ix+1, iy); vertical joins (ix, iy)-(ix, iy+1).
    def cell_edges(ix, iy):
        return {
            "bottom": ("h", ix, iy),
            "right": ("v", ix + 1, iy),
            "top": ("h", ix, iy + 1),
            "left": ("v", ix, iy),
        }

    crossings: dict[tuple, tuple[float, float]] = {}

    def crossing(edge):
        pt = crossings.get(edge)
        if pt is None:
            kind, ix, iy = edge
            jx, jy = (ix + 1, iy) if kind == "h" else (ix, iy + 1)
            va = padded[iy, ix]
            vb = padded[jy, jx]
            t = (va - level) / (va - vb)
            t = min(max(t, 0.0), 1.0)
            pt = (float(xp[ix] + t * (xp[jx] - xp[ix])),
                  float(yp[iy] + t * (yp[jy] - yp[iy])))
            crossings[edge] = pt
        return pt

    cases = (
        pos[:-1, :-1].astype(np.int8)
        | pos[:-1, 1:] << 1
        | pos[1:, 1:] << 2
        | pos[1:, :-1] << 3
    )
    segments: list[tuple[tuple, tuple]] = []
    adjacency: dict[tuple, list[int]] = {}
    for iy, ix in np.argwhere((cases != 0) & (cases != 15)):
        mask = int(cases[iy, ix])
        segs = _SEGMENTS[mask]
        if mask in _SADDLES:
            center = 0.25 * (
                padded[iy, ix] + padded[iy, ix + 1]
                + padded[iy + 1, ix + 1] + padded[iy + 1, ix]
            )
            segs = segs[0] if center >= level else segs[1]
        edges = cell_edges(ix, iy)
        for a, b in segs:
            idx = len(segments)
            segments.append((edges[a], edges[b]))
            adjacency.setdefault(edges[a], []).append(idx)
            adjacency.setdefault(edges[b], []).append(idx)

    used = [False] * len(segments)
    polylines = []
    for start, (e_first, e_second) in enumerate(segments):
        if used[start]:
            continue
        used[start] = True
        chain = [e_first, e_second]
        while True:
            here = chain[-1]
            follow = None
            for idx in adjacency[here]:
                if not used[idx]:
                    follow = idx
                    break
            if follow is None:
                break
            used[follow] = True
            a, b = segments[follow]
            chain.append(b if a == here else a)
        # Every crossing edge joins exactly two cells, so chains are cycles;
        # the final segment closes back onto chain[0] and needs no new vertex.
        points = [crossing(e) for e in chain]
        if chain[-1] == chain[0]:
            points.pop()
        deduped = [points[0]]
        for pt in points[1:]:
            if pt != deduped[-1]:
                deduped.append(pt)
        if deduped[0] == deduped[-1]:
            deduped.pop()
        if len(deduped) < 3:
            continue
        deduped.append(deduped[0])
        polylines.append(np.array(deduped))
    return polylines


def label_components(mask: np.ndarray) -> tuple[np.ndarray, int]:
    """8-connected component labels of a boolean vertex grid.

    Labels are assigned in row-major discovery order, so component ids are
    already sorted by their minimum row-major vertex index.  Vertices outside
    the mask get label -1.
    """
    ny, nx = mask.shape
    inside = mask.tolist()
    labels = [[-1] * nx for _ in range(ny)]
    count = 0
    for iy in range(ny):
        for ix in range(nx):
            if not inside[iy][ix] or labels[iy][ix] >= 0:
                continue
            queue = deque([(iy, ix)])
            labels[iy][ix] = count
            while queue:
                cy, cx = queue.popleft()
                for qy in range(max(cy - 1, 0), min(cy + 2, ny)):
                    row_in, row_lab = inside[qy], labels[qy]
                    for qx in range(max(cx - 1, 0), min(cx + 2, nx)):
                        if row_in[qx] and row_lab[qx] < 0:
                            row_lab[qx] = count
                            queue.append((qy, qx))
            count += 1
    return np.array(labels, dtype=int), count
