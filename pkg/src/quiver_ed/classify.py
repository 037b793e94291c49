"""Representation type of a quiver and explicit wildness witnesses.

The verdict for a connected quiver is read off the symmetrized Euler
form: positive definite means finitely many indecomposables, positive
semidefinite (but not definite) means tame, anything else is wild.  A
disconnected quiver gets the worst verdict among its components.

All linear algebra here is exact.  Definiteness uses leading principal
minors; semidefiniteness uses fraction-free symmetric elimination, since
leading minors alone cannot detect semidefiniteness when the matrix is
singular.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import HypothesisViolatedError
from .quiver import (
    Quiver,
    connected_components,
    gram_matrix,
    induced_subquiver,
    loop_counts,
)

FINITE = "Finite"
TAME = "Tame"
WILD = "Wild"

_SEVERITY = {FINITE: 0, TAME: 1, WILD: 2}


@dataclass(frozen=True)
class ComponentType:
    vertices: tuple[int, ...]
    verdict: str
    label: str | None


@dataclass(frozen=True)
class RepTypeResult:
    verdict: str
    components: tuple[ComponentType, ...]


@dataclass(frozen=True)
class SubquiverWitness:
    """An induced subquiver certifying that the ambient quiver is wild.

    kind is one of "LoopedPair", "MultiArrowPair", "TameSub".  vertices
    and arrows use the labels of the ambient quiver; arrows lists every
    arrow with both endpoints inside vertices.
    """

    kind: str
    vertices: tuple[int, ...]
    arrows: tuple[tuple[int, int], ...]
    note: str


def _leading_minors_all_positive(mat: tuple[tuple[int, ...], ...]) -> bool:
    """Sylvester test: every leading principal minor strictly positive."""
    n = len(mat)
    work = [[Fraction(x) for x in row] for row in mat]
    for k in range(n):
        pivot = work[k][k]
        if pivot <= 0:
            # leading minor k+1 would be <= 0 (product of pivots so far)
            return False
        for i in range(k + 1, n):
            factor = work[i][k] / pivot
            for j in range(k, n):
                work[i][j] -= factor * work[k][j]
    return True


def _is_psd(mat: tuple[tuple[int, ...], ...]) -> bool:
    """Exact positive-semidefiniteness via symmetric elimination.

    Repeatedly pivot on a strictly positive diagonal entry and pass to
    the Schur complement.  If at any point the remaining diagonal is all
    zero, the matrix is psd iff the whole remaining block is zero; a
    negative diagonal entry is an immediate failure.
    """
    size = len(mat)
    work = {
        (i, j): Fraction(mat[i][j]) for i in range(size) for j in range(size)
    }
    remaining = list(range(size))
    while remaining:
        pivot_idx = None
        for i in remaining:
            if work[(i, i)] < 0:
                return False
            if work[(i, i)] > 0 and pivot_idx is None:
                pivot_idx = i
        if pivot_idx is None:
            # all remaining diagonal entries vanish
            return all(
                work[(i, j)] == 0 for i in remaining for j in remaining
            )
        p = work[(pivot_idx, pivot_idx)]
        rest = [i for i in remaining if i != pivot_idx]
        for i in rest:
            for j in rest:
                work[(i, j)] -= work[(i, pivot_idx)] * work[(pivot_idx, j)] / p
        remaining = rest
    return True


def _form_verdict(quiver: Quiver) -> str:
    gram = gram_matrix(quiver)
    if _leading_minors_all_positive(gram):
        return FINITE
    if _is_psd(gram):
        return TAME
    return WILD


def _arm_lengths(quiver: Quiver, center: int) -> list[int] | None:
    """Branch lengths from center in a tree, or None if branches merge."""
    adj: dict[int, list[int]] = {v: [] for v in range(1, quiver.vertex_count + 1)}
    for s, t in quiver.arrows:
        adj[s].append(t)
        adj[t].append(s)
    lengths = []
    for start in adj[center]:
        length = 1
        prev, cur = center, start
        while len(adj[cur]) == 2:
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
            length += 1
        if len(adj[cur]) > 2:
            return None
        lengths.append(length)
    return sorted(lengths)


def _dynkin_label(sub: Quiver, verdict: str) -> str | None:
    """Name the underlying graph when the verdict already pins its shape.

    Only loop-free components get labels.  The verdict gate keeps the
    shape tests short: a tame tree with two degree-3 vertices can only
    be an affine D, so arm lengths need no re-checking.
    """
    if any(c > 0 for c in loop_counts(sub)):
        return None
    n = sub.vertex_count
    pair_mult: dict[frozenset[int], int] = {}
    for s, t in sub.arrows:
        key = frozenset((s, t))
        pair_mult[key] = pair_mult.get(key, 0) + 1
    if any(m >= 3 for m in pair_mult.values()):
        return None
    if any(m == 2 for m in pair_mult.values()):
        if verdict == TAME and n == 2 and len(pair_mult) == 1:
            return "affine-A1"
        return None
    # simple graph from here on
    degree = [0] * (n + 1)
    for key in pair_mult:
        for v in key:
            degree[v] += 1
    edge_count = len(pair_mult)
    high = [v for v in range(1, n + 1) if degree[v] >= 3]
    if edge_count == n and verdict == TAME and not high:
        return f"affine-A{n - 1}"
    if edge_count != n - 1:
        return None
    if not high:
        return f"A{n}" if verdict == FINITE else None
    if len(high) == 1:
        center = high[0]
        arms = _arm_lengths(sub, center)
        if arms is None:
            return None
        if verdict == FINITE and degree[center] == 3:
            if arms[:2] == [1, 1]:
                return f"D{n}"
            if arms == [1, 2, 2]:
                return "E6"
            if arms == [1, 2, 3]:
                return "E7"
            if arms == [1, 2, 4]:
                return "E8"
        if verdict == TAME:
            if degree[center] == 4:
                return "affine-D4"
            if arms == [2, 2, 2]:
                return "affine-E6"
            if arms == [1, 3, 3]:
                return "affine-E7"
            if arms == [1, 2, 5]:
                return "affine-E8"
        return None
    if len(high) == 2 and verdict == TAME and all(degree[v] == 3 for v in high):
        return f"affine-D{n - 1}"
    return None


@lru_cache(maxsize=None)
def rep_type(quiver: Quiver) -> RepTypeResult:
    """Classify each connected component and take the worst verdict."""
    comps = []
    worst = FINITE
    for vertices in connected_components(quiver):
        sub, _ = induced_subquiver(quiver, vertices)
        verdict = _form_verdict(sub)
        label = _dynkin_label(sub, verdict)
        comps.append(ComponentType(vertices, verdict, label))
        if _SEVERITY[verdict] > _SEVERITY[worst]:
            worst = verdict
    return RepTypeResult(worst, tuple(comps))


def _induced_arrows(quiver: Quiver, vertices: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    keep = set(vertices)
    return tuple((s, t) for s, t in quiver.arrows if s in keep and t in keep)


def find_witness_subquiver(quiver: Quiver) -> SubquiverWitness:
    """Locate a small induced subquiver certifying wildness.

    Search order: a vertex with at least two loops together with an
    adjacent partner (loop-free partner preferred), then a loop-free
    pair joined by at least three arrows, then the minimal tame induced
    subquiver ordered by size and vertex tuple.  A vertex with two or
    more loops but no neighbor at all is returned as a one-vertex
    LoopedPair, since it certifies wildness by itself.
    """
    result = rep_type(quiver)
    if result.verdict != WILD:
        raise HypothesisViolatedError(
            f"witness search needs a wild quiver, got {result.verdict}"
        )
    loops = loop_counts(quiver)
    n = quiver.vertex_count

    def connecting(i: int, j: int) -> int:
        return sum(1 for s, t in quiver.arrows if {s, t} == {i, j})

    for i in range(1, n + 1):
        if loops[i - 1] < 2:
            continue
        partners = [j for j in range(1, n + 1) if j != i and connecting(i, j) > 0]
        if partners:
            loop_free = [j for j in partners if loops[j - 1] == 0]
            j = min(loop_free) if loop_free else min(partners)
            verts = tuple(sorted((i, j)))
            note = (
                f"vertex {i} carries {loops[i - 1]} loops and meets "
                f"vertex {j} through {connecting(i, j)} arrows"
            )
            return SubquiverWitness("LoopedPair", verts, _induced_arrows(quiver, verts), note)
        verts = (i,)
        note = f"vertex {i} carries {loops[i - 1]} loops and has no neighbor"
        return SubquiverWitness("LoopedPair", verts, _induced_arrows(quiver, verts), note)

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if loops[i - 1] == 0 and loops[j - 1] == 0 and connecting(i, j) >= 3:
                verts = (i, j)
                note = f"loop-free vertices {i} and {j} joined by {connecting(i, j)} arrows"
                return SubquiverWitness(
                    "MultiArrowPair", verts, _induced_arrows(quiver, verts), note
                )

    for size in range(1, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            sub, _ = induced_subquiver(quiver, combo)
            sub_result = rep_type(sub)
            if sub_result.verdict == TAME and len(sub_result.components) == 1:
                label = sub_result.components[0].label
                if label is None and loop_counts(sub) == (1,):
                    label = "L1"
                note = f"minimal tame induced subquiver ({label or 'unnamed'})"
                return SubquiverWitness(
                    "TameSub", combo, _induced_arrows(quiver, combo), note
                )

    raise HypothesisViolatedError(
        "wild quiver without a recognizable witness; this should be unreachable"
    )
