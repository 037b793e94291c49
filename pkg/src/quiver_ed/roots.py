"""Root classification through reflection descent.

A nonzero integer vector is a root exactly when descent by simple
reflections at loop-free vertices lands either on a loop-free unit
vector (real root) or inside the fundamental region (imaginary root,
isotropic or anisotropic depending on the Euler form).  The descent is
recorded so callers can replay it: applying the trace in reverse order
to the terminal vector reproduces the positive side of the input.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

from .classify import TAME, rep_type
from .errors import (
    BoundTooLargeError,
    LoopedVertexError,
    NotTameError,
    RadicalRankUnexpectedError,
    SearchExhaustedError,
)
from .quiver import (
    Quiver,
    Vector,
    check_vector,
    euler_form,
    gram_matrix,
    is_connected,
    is_connected_support,
    loop_counts,
    symmetrized_form,
    unit_vector,
)

REAL = "Real"
ISOTROPIC = "ImaginaryIsotropic"
ANISOTROPIC = "ImaginaryAnisotropic"
NOT_ROOT = "NotRoot"


@dataclass(frozen=True)
class RootClassification:
    """Outcome of reflection descent.

    sign is +1 or -1 for roots (which side of the root system the input
    lies on) and 0 for non-roots.  trace lists the reflection vertices
    in the order they were applied to the positive side of the input;
    terminal is the vector the descent stopped at.
    """

    verdict: str
    sign: int
    trace: tuple[int, ...]
    terminal: Vector


def simple_reflection(quiver: Quiver, vec: Sequence[int], vertex: int) -> Vector:
    """Reflect vec at a loop-free vertex: v - (v, e_i) e_i."""
    v = check_vector(quiver, vec)
    loops = loop_counts(quiver)
    if not (1 <= vertex <= quiver.vertex_count):
        raise LoopedVertexError(f"vertex {vertex} outside 1..{quiver.vertex_count}")
    if loops[vertex - 1] != 0:
        raise LoopedVertexError(f"vertex {vertex} carries a loop; reflection undefined")
    pairing = symmetrized_form(quiver, v, unit_vector(quiver.vertex_count, vertex))
    out = list(v)
    out[vertex - 1] -= pairing
    return tuple(out)


def apply_reflections(
    quiver: Quiver, vec: Sequence[int], vertices: Iterable[int]
) -> Vector:
    """Apply simple reflections left to right."""
    v = check_vector(quiver, vec)
    for i in vertices:
        v = simple_reflection(quiver, v, i)
    return v


def in_fundamental_region(quiver: Quiver, vec: Sequence[int]) -> bool:
    """Nonzero, nonnegative, connected support, (vec, e_i) <= 0 at every vertex.

    Vectors failing the sign conditions simply return False.
    """
    v = check_vector(quiver, vec)
    if any(x < 0 for x in v) or all(x == 0 for x in v):
        return False
    if not is_connected_support(quiver, v):
        return False
    gram = gram_matrix(quiver)
    n = quiver.vertex_count
    for i in range(n):
        if sum(gram[i][j] * v[j] for j in range(n)) > 0:
            return False
    return True


def classify_root(quiver: Quiver, vec: Sequence[int]) -> RootClassification:
    """Decide Real / ImaginaryIsotropic / ImaginaryAnisotropic / NotRoot.

    Mixed-sign vectors and the zero vector are never roots.  Negative
    vectors are classified through their positive side with sign -1.
    """
    v = check_vector(quiver, vec)
    if all(x == 0 for x in v):
        return RootClassification(NOT_ROOT, 0, (), v)
    has_pos = any(x > 0 for x in v)
    has_neg = any(x < 0 for x in v)
    if has_pos and has_neg:
        return RootClassification(NOT_ROOT, 0, (), v)
    sign = 1 if has_pos else -1
    w = tuple(abs(x) for x in v)
    loops = loop_counts(quiver)
    gram = gram_matrix(quiver)
    n = quiver.vertex_count
    trace: list[int] = []
    while True:
        if sum(w) == 1:
            i = w.index(1)
            if loops[i] == 0:
                return RootClassification(REAL, sign, tuple(trace), w)
        if in_fundamental_region(quiver, w):
            verdict = ISOTROPIC if euler_form(quiver, w, w) == 0 else ANISOTROPIC
            return RootClassification(verdict, sign, tuple(trace), w)
        pivot = None
        for i in range(n):
            if loops[i] != 0:
                continue
            if sum(gram[i][j] * w[j] for j in range(n)) > 0:
                pivot = i + 1
                break
        if pivot is None:
            # nonnegative, every pairing <= 0, yet not in the fundamental
            # region: the support must be disconnected, so not a root
            return RootClassification(NOT_ROOT, 0, tuple(trace), w)
        w = simple_reflection(quiver, w, pivot)
        trace.append(pivot)
        if any(x < 0 for x in w):
            return RootClassification(NOT_ROOT, 0, tuple(trace), w)


def enumerate_roots(
    quiver: Quiver, height_bound: int, *, cap: int = 10_000_000
) -> list[tuple[Vector, RootClassification]]:
    """All positive roots of height at most height_bound, ordered by
    (height, entries).  Raises BoundTooLargeError when the lattice box
    that would need scanning exceeds cap points."""
    n = quiver.vertex_count
    points = comb(height_bound + n, n) - 1
    if points > cap:
        raise BoundTooLargeError(
            f"scanning {points} lattice points exceeds the cap of {cap}"
        )
    out = []
    for height in range(1, height_bound + 1):
        for v in _compositions(n, height):
            cls = classify_root(quiver, v)
            if cls.verdict != NOT_ROOT:
                out.append((v, cls))
    return out


def _compositions(parts: int, total: int):
    """Tuples of `parts` nonnegative ints summing to total, lex ascending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(parts - 1, total - first):
            yield (first,) + rest


def null_root(quiver: Quiver) -> Vector:
    """Primitive positive generator of the radical on a connected tame quiver."""
    if not is_connected(quiver):
        raise NotTameError("the quiver must be connected")
    if rep_type(quiver).verdict != TAME:
        raise NotTameError("the quiver must be tame")
    gram = gram_matrix(quiver)
    n = quiver.vertex_count
    kernel = _kernel_basis(gram, n)
    if len(kernel) != 1:
        raise RadicalRankUnexpectedError(
            f"radical has dimension {len(kernel)}, expected 1"
        )
    vec = kernel[0]
    denom_lcm = 1
    for x in vec:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if all(x <= 0 for x in ints):
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise RadicalRankUnexpectedError(
            f"radical generator {tuple(ints)} is not strictly positive"
        )
    return tuple(ints)


def _kernel_basis(mat: tuple[tuple[int, ...], ...], n: int) -> list[list[Fraction]]:
    work = [[Fraction(mat[i][j]) for j in range(n)] for i in range(n)]
    pivot_cols: list[int] = []
    row = 0
    for col in range(n):
        sel = None
        for r in range(row, n):
            if work[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        work[row], work[sel] = work[sel], work[row]
        inv = work[row][col]
        work[row] = [x / inv for x in work[row]]
        for r in range(n):
            if r != row and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[row])]
        pivot_cols.append(col)
        row += 1
    basis = []
    free_cols = [c for c in range(n) if c not in pivot_cols]
    for free in free_cols:
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for r, col in enumerate(pivot_cols):
            vec[col] = -work[r][free]
        basis.append(vec)
    return basis


def iterate_real_roots(quiver: Quiver, *, cap: int = 1_000_000):
    """Yield the positive real roots in (height, entries) order.

    The positive real roots form the reflection orbit of the loop-free
    unit vectors.  A heap keyed by (height, entries) pops them in exact
    global order: every positive real root is reachable from a unit
    vector along a chain of strictly increasing height, so by the time
    a key comes up everything below it has already been enqueued.
    Raises SearchExhaustedError after cap pops; simply stops when the
    orbit is finite and exhausted.
    """
    loops = loop_counts(quiver)
    n = quiver.vertex_count
    loop_free = [i for i in range(1, n + 1) if loops[i - 1] == 0]
    heap: list[tuple[int, Vector]] = []
    seen: set[Vector] = set()
    for i in loop_free:
        e = unit_vector(n, i)
        heapq.heappush(heap, (1, e))
        seen.add(e)
    pops = 0
    while heap:
        _, v = heapq.heappop(heap)
        pops += 1
        if pops > cap:
            raise SearchExhaustedError(f"orbit search exceeded {cap} pops")
        yield v
        for i in loop_free:
            w = simple_reflection(quiver, v, i)
            if w != v and all(x >= 0 for x in w) and w not in seen:
                seen.add(w)
                heapq.heappush(heap, (sum(w), w))


def find_real_root_dominating(
    quiver: Quiver, target: Sequence[int], *, cap: int = 1_000_000
) -> Vector:
    """Smallest positive real root >= target componentwise, where
    smallest means minimal (height, entries).

    On a connected tame quiver a dominating real root always exists; on
    wild quivers the search is still well defined and usually succeeds,
    but only the cap guards termination.  Raises SearchExhaustedError
    when the orbit is exhausted without a hit, when there are no
    loop-free vertices at all, or past cap pops.
    """
    d = check_vector(quiver, target, allow_negative=False)
    loops = loop_counts(quiver)
    n = quiver.vertex_count
    loop_free = [i for i in range(1, n + 1) if loops[i - 1] == 0]
    if not loop_free:
        raise SearchExhaustedError(
            "every vertex carries a loop, so there are no real roots"
        )
    if all(x == 0 for x in d):
        return unit_vector(n, loop_free[0])
    for v in iterate_real_roots(quiver, cap=cap):
        if all(x >= y for x, y in zip(v, d)):
            return v
    raise SearchExhaustedError(
        "reflection orbit exhausted without a dominating real root"
    )
