"""Quivers, integer bilinear forms, and dimension-vector utilities.

A quiver is a finite directed graph; loops and parallel arrows are
allowed.  Vertices are numbered 1..n in every public signature.  A
dimension vector is a tuple of ints indexed by vertex (position 0 holds
the entry for vertex 1).

The Euler form of a quiver on integer vectors a, b is

    <a, b> = sum_i a_i * b_i  -  sum_{arrows s->t} a_s * b_t,

and its symmetrization (a, b) = <a, b> + <b, a> is the form whose Gram
matrix drives the finite / tame / wild trichotomy.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    EmptyQuiverError,
    InvalidArrowError,
    NegativeEntryError,
    SizeMismatchError,
    ZeroVectorError,
)

Arrow = tuple[int, int]
Vector = tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    """Immutable quiver: a vertex count and a tuple of (source, target) arrows.

    Arrow order is preserved exactly as given; several routines (file
    round-trips, finite-field representation encodings) rely on that.
    """

    vertex_count: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise EmptyQuiverError("a quiver needs at least one vertex")
        for s, t in self.arrows:
            if not (1 <= s <= self.vertex_count and 1 <= t <= self.vertex_count):
                raise InvalidArrowError(
                    f"arrow ({s}, {t}) outside vertex range 1..{self.vertex_count}"
                )


def build_quiver(vertex_count: int, arrows: Iterable[Sequence[int]]) -> Quiver:
    """Validate and freeze a quiver from a vertex count and arrow pairs."""
    frozen = tuple((int(s), int(t)) for s, t in arrows)
    return Quiver(int(vertex_count), frozen)


def check_vector(
    quiver: Quiver,
    vec: Sequence[int],
    *,
    allow_negative: bool = True,
    allow_zero: bool = True,
) -> Vector:
    """Coerce vec to a tuple of ints and enforce length and sign rules."""
    out = tuple(int(x) for x in vec)
    if len(out) != quiver.vertex_count:
        raise SizeMismatchError(
            f"vector has {len(out)} entries, quiver has {quiver.vertex_count} vertices"
        )
    if not allow_negative and any(x < 0 for x in out):
        raise NegativeEntryError(f"vector {out} has a negative entry")
    if not allow_zero and all(x == 0 for x in out):
        raise ZeroVectorError("the zero vector is not allowed here")
    return out


# ---------------------------------------------------------------------------
# standard examples
# ---------------------------------------------------------------------------


def kronecker_quiver(arrow_count: int) -> Quiver:
    """Two vertices joined by arrow_count parallel arrows 1 -> 2."""
    if arrow_count < 1:
        raise InvalidArrowError("need at least one arrow")
    return Quiver(2, tuple((1, 2) for _ in range(arrow_count)))


def loop_quiver(loop_count: int) -> Quiver:
    """One vertex carrying loop_count loops."""
    if loop_count < 0:
        raise InvalidArrowError("loop count must be nonnegative")
    return Quiver(1, tuple((1, 1) for _ in range(loop_count)))


def star_quiver(arm_count: int, orientation: str = "in") -> Quiver:
    """Star with center vertex 1 and arm vertices 2..arm_count+1.

    Every arm is joined to the center by a single arrow; "in" points the
    arrows toward the center, "out" away from it.
    """
    if arm_count < 1:
        raise InvalidArrowError("a star needs at least one arm")
    if orientation not in ("in", "out"):
        raise InvalidArrowError(f"unknown orientation {orientation!r}")
    if orientation == "in":
        arrows = tuple((i, 1) for i in range(2, arm_count + 2))
    else:
        arrows = tuple((1, i) for i in range(2, arm_count + 2))
    return Quiver(arm_count + 1, arrows)


def looped_pair_quiver(loop_count: int, arrow_count: int) -> Quiver:
    """Vertex 1 with loop_count loops, joined to loop-free vertex 2 by
    arrow_count arrows 1 -> 2."""
    if loop_count < 1 or arrow_count < 1:
        raise InvalidArrowError("need at least one loop and one connecting arrow")
    loops = tuple((1, 1) for _ in range(loop_count))
    return Quiver(2, loops + tuple((1, 2) for _ in range(arrow_count)))


def second_case_quiver() -> Quiver:
    """Two vertices, one loop on each, one arrow between them."""
    return Quiver(2, ((1, 1), (2, 2), (1, 2)))


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------


def euler_form(quiver: Quiver, a: Sequence[int], b: Sequence[int]) -> int:
    """Euler form <a, b>; negative entries are fine (reflections need them)."""
    av = check_vector(quiver, a)
    bv = check_vector(quiver, b)
    total = sum(x * y for x, y in zip(av, bv))
    for s, t in quiver.arrows:
        total -= av[s - 1] * bv[t - 1]
    return total


def symmetrized_form(quiver: Quiver, a: Sequence[int], b: Sequence[int]) -> int:
    """Symmetrized Euler form (a, b) = <a, b> + <b, a>."""
    return euler_form(quiver, a, b) + euler_form(quiver, b, a)


@lru_cache(maxsize=None)
def loop_counts(quiver: Quiver) -> Vector:
    """Number of loops at each vertex, as a tuple indexed like a vector."""
    counts = [0] * quiver.vertex_count
    for s, t in quiver.arrows:
        if s == t:
            counts[s - 1] += 1
    return tuple(counts)


@lru_cache(maxsize=None)
def gram_matrix(quiver: Quiver) -> tuple[Vector, ...]:
    """Gram matrix of the symmetrized form on the unit vectors.

    Diagonal entries are 2*(1 - loops_at_i); the (i, j) entry for i != j
    is minus the number of arrows between i and j in either direction.
    """
    n = quiver.vertex_count
    loops = loop_counts(quiver)
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = 2 * (1 - loops[i])
    for s, t in quiver.arrows:
        if s != t:
            mat[s - 1][t - 1] -= 1
            mat[t - 1][s - 1] -= 1
    return tuple(tuple(row) for row in mat)


def arrow_multiplicity(quiver: Quiver, i: int, j: int) -> int:
    """Arrows between distinct vertices i and j, counting both directions."""
    if i == j:
        raise InvalidArrowError("use loop_counts for loops")
    return sum(1 for s, t in quiver.arrows if {s, t} == {i, j})


def has_loop_everywhere(quiver: Quiver) -> bool:
    """True when every vertex carries at least one loop."""
    return all(c >= 1 for c in loop_counts(quiver))


# ---------------------------------------------------------------------------
# supports, components, induced subquivers
# ---------------------------------------------------------------------------


def support(vec: Sequence[int]) -> tuple[int, ...]:
    """Vertices (1-based) where the vector is nonzero, ascending."""
    return tuple(i + 1 for i, x in enumerate(vec) if x != 0)


@lru_cache(maxsize=None)
def _neighbors(quiver: Quiver) -> tuple[tuple[int, ...], ...]:
    adj: list[set[int]] = [set() for _ in range(quiver.vertex_count)]
    for s, t in quiver.arrows:
        if s != t:
            adj[s - 1].add(t)
            adj[t - 1].add(s)
    return tuple(tuple(sorted(nb)) for nb in adj)


def _reachable(quiver: Quiver, allowed: frozenset[int], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    adj = _neighbors(quiver)
    while stack:
        v = stack.pop()
        for w in adj[v - 1]:
            if w in allowed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def connected_components(quiver: Quiver) -> tuple[tuple[int, ...], ...]:
    """Components of the underlying graph, each a sorted vertex tuple."""
    remaining = set(range(1, quiver.vertex_count + 1))
    out = []
    while remaining:
        start = min(remaining)
        comp = _reachable(quiver, frozenset(remaining), start)
        out.append(tuple(sorted(comp)))
        remaining -= comp
    return tuple(out)


def is_connected(quiver: Quiver) -> bool:
    return len(connected_components(quiver)) == 1


def is_connected_support(quiver: Quiver, vec: Sequence[int]) -> bool:
    """True when the support of vec induces a connected subgraph.

    The zero vector counts as disconnected.
    """
    v = check_vector(quiver, vec)
    supp = support(v)
    if not supp:
        return False
    reach = _reachable(quiver, frozenset(supp), supp[0])
    return len(reach) == len(supp)


def induced_subquiver(
    quiver: Quiver, vertices: Iterable[int]
) -> tuple[Quiver, tuple[int, ...]]:
    """Subquiver on the given vertices, keeping arrows with both ends inside.

    Returns the renumbered quiver together with the sorted tuple of
    original vertex labels; position k of that tuple is the original name
    of new vertex k+1.
    """
    keep = sorted(set(int(v) for v in vertices))
    if not keep:
        raise EmptyQuiverError("an induced subquiver needs at least one vertex")
    for v in keep:
        if not (1 <= v <= quiver.vertex_count):
            raise InvalidArrowError(f"vertex {v} outside 1..{quiver.vertex_count}")
    renumber = {old: new + 1 for new, old in enumerate(keep)}
    arrows = tuple(
        (renumber[s], renumber[t])
        for s, t in quiver.arrows
        if s in renumber and t in renumber
    )
    return Quiver(len(keep), arrows), tuple(keep)


def restrict_vector(vec: Sequence[int], vertices: Sequence[int]) -> Vector:
    """Entries of vec at the given original vertex labels, in their order."""
    return tuple(int(vec[v - 1]) for v in vertices)


def embed_vector(
    sub_vec: Sequence[int], vertices: Sequence[int], vertex_count: int
) -> Vector:
    """Zero-extend a subquiver vector back to the ambient quiver."""
    out = [0] * vertex_count
    for value, v in zip(sub_vec, vertices):
        out[v - 1] = int(value)
    return tuple(out)


def unit_vector(vertex_count: int, vertex: int) -> Vector:
    """The coordinate vector of a single vertex (1-based)."""
    if not (1 <= vertex <= vertex_count):
        raise InvalidArrowError(f"vertex {vertex} outside 1..{vertex_count}")
    return tuple(1 if i == vertex - 1 else 0 for i in range(vertex_count))


def reverse_arrows_at(quiver: Quiver, vertex: int) -> Quiver:
    """Reverse every arrow incident to the given loop-free vertex.

    This realizes reflection at a sink or source on the level of
    quivers; the symmetrized form is unchanged.
    """
    if not (1 <= vertex <= quiver.vertex_count):
        raise InvalidArrowError(f"vertex {vertex} outside 1..{quiver.vertex_count}")
    if loop_counts(quiver)[vertex - 1] != 0:
        raise InvalidArrowError(f"vertex {vertex} carries a loop")
    arrows = tuple(
        (t, s) if vertex in (s, t) else (s, t) for s, t in quiver.arrows
    )
    return Quiver(quiver.vertex_count, arrows)
