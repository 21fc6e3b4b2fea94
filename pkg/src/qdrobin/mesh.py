"""Structured triangulations of star-shaped domains.

Ring ``i`` (``i = 1..N``) carries ``6 i`` nodes at the parameter values
``t = 2 pi j / (6 i)`` and sits at ``(i / N) * gamma(t)``; neighbouring rings
are zipped together by parameter order. The outer ring lies exactly on the
boundary curve. ``N = 2**level`` gives ``6 * 4**level`` triangles.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .geometry import DomainSpec

MIN_LEVEL, MAX_LEVEL = 1, 9


@dataclass(frozen=True)
class Mesh:
    nodes: np.ndarray      # (n_nodes, 2)
    triangles: np.ndarray  # (n_tri, 3), counterclockwise
    boundary_edges: np.ndarray  # (n_b, 2), counterclockwise cycle
    level: int
    domain: DomainSpec | None = None

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def boundary_nodes(self) -> np.ndarray:
        return self.boundary_edges[:, 0]

    @property
    def interior_nodes(self) -> np.ndarray:
        mask = np.ones(self.n_nodes, dtype=bool)
        mask[self.boundary_nodes] = False
        return np.flatnonzero(mask)

    def triangle_areas(self) -> np.ndarray:
        p = self.nodes[self.triangles]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    def area(self) -> float:
        return float(self.triangle_areas().sum())

    def h_max(self) -> float:
        p = self.nodes[self.triangles]
        edges = np.concatenate([p[:, 1] - p[:, 0], p[:, 2] - p[:, 1], p[:, 0] - p[:, 2]])
        return float(np.hypot(edges[:, 0], edges[:, 1]).max())

    def scaled(self, t: float) -> "Mesh":
        dom = self.domain.scaled(t) if self.domain is not None else None
        return Mesh(self.nodes * t, self.triangles, self.boundary_edges, self.level, dom)

    def dump(self, path: str | Path) -> None:
        """Plain-text dump: node, element and boundary-edge sections."""
        with open(path, "w") as fh:
            fh.write(f"# nodes {self.n_nodes}\n# id x y\n")
            for i, (x, y) in enumerate(self.nodes):
                fh.write(f"{i} {x:.15e} {y:.15e}\n")
            fh.write(f"# elements {len(self.triangles)}\n# id n1 n2 n3\n")
            for i, (a, b, c) in enumerate(self.triangles):
                fh.write(f"{i} {a} {b} {c}\n")
            fh.write(f"# boundary_edges {len(self.boundary_edges)}\n# n1 n2\n")
            for a, b in self.boundary_edges:
                fh.write(f"{a} {b}\n")


def build_mesh(domain: DomainSpec, level: int) -> Mesh:
    if not (MIN_LEVEL <= level <= MAX_LEVEL) or int(level) != level:
        raise ValueError(f"mesh level must be an integer in [{MIN_LEVEL}, {MAX_LEVEL}], got {level}")
    n_rings = 2**level
    coords = [np.zeros((1, 2))]
    offsets = [0]
    start = 1
    for i in range(1, n_rings + 1):
        t = 2 * np.pi * np.arange(6 * i) / (6 * i)
        x, y = domain.evaluate(t)[:2]
        coords.append(np.column_stack([x, y]) * (i / n_rings))
        offsets.append(start)
        start += 6 * i
    nodes = np.concatenate(coords)
    # the outer ring must sit exactly on the curve
    t_out = 2 * np.pi * np.arange(6 * n_rings) / (6 * n_rings)
    xo, yo = domain.evaluate(t_out)[:2]
    nodes[offsets[-1]:] = np.column_stack([xo, yo])

    tris = []
    for i in range(1, n_rings + 1):
        outer_n = 6 * i
        inner_n = max(6 * (i - 1), 1)
        o0, i0 = offsets[i], offsets[i - 1]
        j = l = 0
        while j < outer_n or (inner_n > 1 and l < inner_n):
            # compare the next parameter values on each ring (scaled to [0, 1])
            next_outer = (j + 1) / outer_n
            next_inner = (l + 1) / inner_n if inner_n > 1 else np.inf
            if j < outer_n and (next_outer <= next_inner or l >= inner_n):
                tris.append((i0 + l % inner_n, o0 + j, o0 + (j + 1) % outer_n))
                j += 1
            else:
                tris.append((i0 + l, o0 + j % outer_n, i0 + (l + 1) % inner_n))
                l += 1
    triangles = np.array(tris, dtype=np.int64)
    ob = offsets[-1] + np.arange(6 * n_rings)
    boundary = np.column_stack([ob, np.roll(ob, -1)])
    return Mesh(nodes=nodes, triangles=triangles, boundary_edges=boundary, level=int(level),
                domain=domain)
