"""Rational polyhedral cones inside the nonnegative orthant.

A cone is given by integer inequalities ``a . x >= 0`` together with the
implicit orthant constraints ``x >= 0``, so it is always pointed. Extreme
rays come from a double-description sweep with the combinatorial adjacency
test.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd
from typing import Sequence

import numpy as np

Vector = tuple[int, ...]


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Sequence[int]) -> Vector:
    g = reduce(gcd, v, 0)
    return tuple(v) if g in (0, 1) else tuple(x // g for x in v)


def rank(vectors: Sequence[Sequence[int]]) -> int:
    """Exact rank of a list of integer vectors."""
    rows = [[Fraction(x) for x in v] for v in vectors if any(v)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def extreme_rays(inequalities: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Primitive integer extreme rays of ``{x >= 0 : a . x >= 0 for a in inequalities}``."""
    constraints: list[Vector] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[Vector] = [c for c in constraints]
    zeros: list[frozenset[int]] = [
        frozenset(j for j in range(dim) if j != i) for i in range(dim)
    ]
    for a in inequalities:
        a = tuple(int(v) for v in a)
        if not any(a):
            continue
        k = len(constraints)
        constraints.append(a)
        vals = [dot(a, r) for r in rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        neg = [i for i, s in enumerate(vals) if s < 0]
        if not neg:
            zeros = [z | {k} if vals[i] == 0 else z for i, z in enumerate(zeros)]
            continue
        new_rays: list[Vector] = []
        new_zeros: list[frozenset[int]] = []
        for i, s in enumerate(vals):
            if s >= 0:
                new_rays.append(rays[i])
                new_zeros.append(zeros[i] | {k} if s == 0 else zeros[i])
        for i in pos:
            for j in neg:
                common = zeros[i] & zeros[j]
                if any(
                    t != i and t != j and common <= zeros[t] for t in range(len(rays))
                ):
                    continue
                r = primitive(
                    tuple(vals[i] * y - vals[j] * x for x, y in zip(rays[i], rays[j]))
                )
                new_rays.append(r)
                new_zeros.append(common | {k})
        rays, zeros = new_rays, new_zeros
        if not rays:
            break
    seen: dict[Vector, None] = {}
    for r in rays:
        if any(r):
            seen.setdefault(r, None)
    return sorted(seen)


def is_full_dimensional(rays: Sequence[Vector], dim: int) -> bool:
    return rank(rays) == dim


def zonotope_box(rays: Sequence[Vector], dim: int) -> Vector:
    """Coordinatewise upper bound of ``{sum l_r r : 0 <= l_r <= 1}``."""
    return tuple(sum(r[i] for r in rays) for i in range(dim))


def box_points(upper: Sequence[int]) -> np.ndarray:
    """All integer points of ``prod [0, upper_i]`` as an ``(N, dim)`` array."""
    axes = [np.arange(u + 1, dtype=np.int64) for u in upper]
    if not axes:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def in_cone(points: np.ndarray, inequalities: np.ndarray) -> np.ndarray:
    """Boolean mask of rows satisfying ``x >= 0`` and every inequality."""
    mask = (points >= 0).all(axis=1)
    if inequalities.size:
        mask &= (points @ inequalities.T >= 0).all(axis=1)
    return mask


def small_grid(dim: int, radius: int) -> list[Vector]:
    return [tuple(v) for v in product(range(radius + 1), repeat=dim)]
