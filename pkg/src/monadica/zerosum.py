"""Minimal zero-sum sequences over a finite subset of ``Z/d_1 x ... x Z/d_t x Z^r``.

Group elements are integer tuples whose first ``t`` coordinates are read
modulo the torsion orders. A sequence is a multiplicity vector over a list of
entries, and zero-sum sequences are the nonnegative solutions of an integer
linear system, so the minimal ones are its minimal solutions.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .cones import extreme_rays, rank

Vector = tuple[int, ...]


def normalize(g: Sequence[int], torsion: Sequence[int]) -> Vector:
    t = len(torsion)
    return tuple(a % torsion[i] if i < t else a for i, a in enumerate(g))


def _add(a: Vector, b: Vector, torsion: Sequence[int]) -> Vector:
    return normalize(tuple(x + y for x, y in zip(a, b)), torsion)


def _neg(a: Vector, torsion: Sequence[int]) -> Vector:
    return normalize(tuple(-x for x in a), torsion)


@dataclass(frozen=True)
class ZeroSumSearch:
    sequences: tuple[tuple[int, ...], ...]
    exact: bool
    length_bound: int | None

    @property
    def max_length(self) -> int:
        return max((sum(s) for s in self.sequences), default=0)


def length_bound(entries: Sequence[Vector], torsion: Sequence[int]) -> int:
    """Upper bound for the length of a minimal zero-sum sequence over ``entries``.

    The free parts of a zero-sum sequence form a point of the cone
    ``{n >= 0 : sum n_j g_j = 0}``. Its Hilbert basis elements have length
    below the sum of the ``dim`` longest extreme rays, and a minimal sequence
    is a sum of at most ``|torsion|`` of them.
    """
    k = len(entries)
    t = len(torsion)
    ineqs: list[Vector] = []
    for c in range(t, len(entries[0]) if entries else t):
        row = tuple(g[c] for g in entries)
        ineqs.append(row)
        ineqs.append(tuple(-a for a in row))
    rays = extreme_rays(ineqs, k)
    if not rays:
        return 0
    norms = sorted((sum(r) for r in rays), reverse=True)
    dim = rank(rays)
    free_bound = max(norms[0], sum(norms[:dim]) - 1)
    order = 1
    for d in torsion:
        order *= d
    return order * free_bound


def _system(elems: Sequence[Vector], torsion: Sequence[int]) -> list[Vector]:
    """Columns of the homogeneous system whose nonnegative solutions are zero-sum sequences.

    A torsion coordinate of order ``d`` gets a slack column ``-d``; entries
    are normalized into ``[0, d)`` so the slack is nonnegative.
    """
    t = len(torsion)
    rows = len(elems[0])
    cols = [tuple(g) for g in elems]
    for c in range(t):
        cols.append(tuple(-torsion[c] if r == c else 0 for r in range(rows)))
    return cols


def minimal_zero_sum_sequences(
    entries: Sequence[Sequence[int]],
    torsion: Sequence[int],
    cap: int = 12,
    limits: Sequence[int | None] | None = None,
) -> ZeroSumSearch:
    """All minimal zero-sum sequences over ``entries`` of length at most ``cap``.

    ``limits`` optionally bounds the multiplicity of each entry; sequences
    exceeding a limit are neither reported nor extended.

    Completion search for the minimal nonnegative solutions of a linear
    system: a partial vector is extended by a column only when that column
    points back towards zero, and vectors above a known solution are dropped.
    ``exact`` is True when no longer minimal zero-sum sequence can exist,
    either because the frontier emptied or because the cone bound of
    :func:`length_bound` is at most ``cap``.
    """
    elems = [normalize(g, torsion) for g in entries]
    k = len(elems)
    if k == 0:
        return ZeroSumSearch((), True, 0)
    cols = _system(elems, torsion)
    width = len(cols)
    rows = len(elems[0])
    zero = (0,) * rows

    def image(v: Vector) -> Vector:
        return tuple(sum(v[j] * cols[j][r] for j in range(width) if v[j]) for r in range(rows))

    found: list[Vector] = []
    frontier: dict[Vector, Vector] = {}
    bounds = list(limits) if limits is not None else [None] * k
    bounds += [None] * (width - k)
    for j in range(width):
        if bounds[j] == 0:
            continue
        v = tuple(int(i == j) for i in range(width))
        frontier[v] = cols[j]
    truncated = False
    while frontier:
        nxt: dict[Vector, Vector] = {}
        solved = [v for v, img in frontier.items() if img == zero and any(v[:k])]
        found.extend(solved)
        for v, img in frontier.items():
            if img == zero:
                continue
            if sum(v[:k]) > cap:
                truncated = True
                continue
            for j in range(width):
                if sum(a * b for a, b in zip(img, cols[j])) >= 0:
                    continue
                if bounds[j] is not None and v[j] >= bounds[j]:
                    continue
                w = v[:j] + (v[j] + 1,) + v[j + 1 :]
                if w in nxt:
                    continue
                if any(all(a <= b for a, b in zip(s, w)) for s in found):
                    continue
                nxt[w] = tuple(a + b for a, b in zip(img, cols[j]))
        frontier = nxt
    sequences = sorted({v[:k] for v in found if sum(v[:k]) <= cap})
    if any(sum(v[:k]) > cap for v in found):
        truncated = True
    bound = length_bound(elems, torsion)
    exact = not truncated or bound <= cap
    return ZeroSumSearch(tuple(sequences), exact, bound)


def davenport(entries: Sequence[Sequence[int]], torsion: Sequence[int], cap: int = 12) -> tuple[int, bool]:
    """Largest minimal zero-sum length over the set of distinct entries, and exactness."""
    distinct = sorted({normalize(g, torsion) for g in entries})
    result = minimal_zero_sum_sequences(distinct, torsion, cap)
    return result.max_length, result.exact


def is_minimal_zero_sum(
    entries: Sequence[Sequence[int]], counts: Sequence[int], torsion: Sequence[int]
) -> bool:
    """Direct check by enumerating every proper nonempty subsequence."""
    elems = [normalize(g, torsion) for g in entries]
    zero = tuple(0 for _ in elems[0])
    total = zero
    for g, c in zip(elems, counts):
        for _ in range(c):
            total = _add(total, g, torsion)
    if total != zero or not any(counts):
        return False
    for sub in product(*(range(c + 1) for c in counts)):
        if not any(sub) or list(sub) == list(counts):
            continue
        s = zero
        for g, c in zip(elems, sub):
            for _ in range(c):
                s = _add(s, g, torsion)
        if s == zero:
            return False
    return True
