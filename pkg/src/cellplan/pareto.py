"""Exact Pareto dominance over integer objective vectors.

Vectors are plain tuples of non-negative ints. The kernel works for any fixed
number of components; the planner uses two (path length, terrain cost). A
"label set" is a deduplicated, mutually non-dominated collection kept in
lexicographic order, which for two objectives means first components strictly
increasing and second components strictly decreasing.
"""

from __future__ import annotations

from bisect import bisect_left
from collections.abc import Iterable

Vector = tuple[int, ...]
LabelSet = tuple[Vector, ...]

# Component ceiling for objective vectors. Python ints never wrap, so this is
# a declared storage width: maps whose worst-case path sums could pass it are
# rejected up front instead of silently producing out-of-range values.
MAX_COMPONENT = 2**63 - 1


class CostOverflowError(OverflowError):
    """A cost component would exceed MAX_COMPONENT."""


def dominates(a: Vector, b: Vector) -> bool:
    """True iff `a` is componentwise <= `b` and differs from it somewhere."""
    if len(a) != len(b):
        raise ValueError("vectors must have the same number of components")
    return a != b and all(x <= y for x, y in zip(a, b))


def add(a: Vector, b: Vector) -> Vector:
    """Componentwise sum, guarded against exceeding MAX_COMPONENT."""
    out = tuple(x + y for x, y in zip(a, b))
    if any(c > MAX_COMPONENT for c in out):
        raise CostOverflowError(f"cost component exceeds {MAX_COMPONENT}")
    return out


def nondominated(vectors: Iterable[Vector]) -> LabelSet:
    """Reduce `vectors` to their non-dominated subset, deduplicated and sorted.

    Idempotent and insensitive to input order. Every discarded vector is
    dominated by (or equal to) some retained one.
    """
    vs = sorted(set(tuple(v) for v in vectors))
    if not vs:
        return ()
    if any(len(v) != len(vs[0]) for v in vs):
        raise ValueError("vectors must all have the same number of components")
    if len(vs[0]) == 2:
        # Lex order makes this a single scan: keep a vector iff its second
        # component beats everything already kept.
        out = []
        best = None
        for v in vs:
            if best is None or v[1] < best:
                out.append(v)
                best = v[1]
        return tuple(out)
    kept: list[Vector] = []
    for v in vs:
        # In lex order a later vector can never dominate an earlier one.
        if not any(dominates(k, v) for k in kept):
            kept.append(v)
    return tuple(kept)


def insert_nondominated(labels: LabelSet, v: Vector) -> tuple[LabelSet, bool]:
    """Insert `v` into a canonical label set; returns (new set, changed).

    Behaves exactly like nondominated(labels + (v,)) but runs in time linear
    in len(labels) by exploiting the canonical order.
    """
    v = tuple(v)
    if not labels:
        return (v,), True
    if len(v) != len(labels[0]):
        raise ValueError("vectors must all have the same number of components")
    if len(v) == 2:
        pos = bisect_left(labels, v)
        if pos < len(labels) and labels[pos] == v:
            return labels, False
        if pos > 0 and labels[pos - 1][1] <= v[1]:
            # The lex predecessor dominates v.
            return labels, False
        k = pos
        while k < len(labels) and labels[k][1] >= v[1]:
            k += 1
        return labels[:pos] + (v,) + labels[k:], True
    merged = nondominated(labels + (v,))
    return merged, merged != labels
