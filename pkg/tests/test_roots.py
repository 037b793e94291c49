"""Root classification against an independent descent oracle.

The oracle reimplements the defining property from scratch: a positive
vector is a real root when some chain of height-decreasing simple
reflections lands on a unit vector without ever leaving the positive
cone, and an imaginary root when the chain ends in the fundamental
region instead.  Breadth-first search over every decreasing reflection
keeps the oracle free of the greedy choices the library makes.

On Kronecker quivers the Tits form value decides membership outright
(q = 1 real, q = 0 isotropic, q < 0 anisotropic, anything else is not
a root), which gives a second, purely arithmetic cross-check.
"""

import itertools

import pytest

from quiver_ed.quiver import (
    build_quiver,
    euler_form,
    kronecker_quiver,
    loop_quiver,
    star_quiver,
    symmetrized_form,
    unit_vector,
)
from quiver_ed.roots import (
    LoopedVertexError,
    NotTameError,
    apply_reflections,
    classify_root,
    enumerate_roots,
    find_real_root_dominating,
    in_fundamental_region,
    iterate_real_roots,
    null_root,
    simple_reflection,
)


def _loop_free(q):
    looped = {s for s, t in q.arrows if s == t}
    return [i for i in range(1, q.vertex_count + 1) if i not in looped]


def _support_connected(q, v):
    sup = {i + 1 for i, x in enumerate(v) if x}
    if not sup:
        return False
    seen = {min(sup)}
    grew = True
    while grew:
        grew = False
        for s, t in q.arrows:
            if s in sup and t in sup and (s in seen) != (t in seen):
                seen |= {s, t}
                grew = True
    return seen == sup


def _fundamental(q, v):
    if not all(x >= 0 for x in v) or not any(v):
        return False
    if not _support_connected(q, v):
        return False
    n = q.vertex_count
    return all(
        symmetrized_form(q, v, unit_vector(n, i)) <= 0 for i in range(1, n + 1)
    )


def oracle_classify(q, v):
    """'Real', 'Isotropic', 'Anisotropic', or None, by BFS descent."""
    n = q.vertex_count
    units = {unit_vector(n, i) for i in _loop_free(q)}
    seen = {v}
    frontier = [v]
    while frontier:
        nxt = []
        for w in frontier:
            if w in units:
                return "Real"
            if _fundamental(q, w):
                return (
                    "Isotropic" if euler_form(q, w, w) == 0 else "Anisotropic"
                )
            for i in _loop_free(q):
                r = simple_reflection(q, w, i)
                if sum(r) < sum(w) and all(x >= 0 for x in r) and r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return None


QUIVERS = [
    kronecker_quiver(2),
    kronecker_quiver(3),
    star_quiver(3),
    star_quiver(4),
    build_quiver(3, [(1, 2), (2, 3)]),
    build_quiver(2, [(1, 2), (2, 1)]),
    build_quiver(2, [(1, 1), (1, 2)]),
    loop_quiver(1),
]


def test_classify_against_descent_oracle():
    for q in QUIVERS:
        n = q.vertex_count
        for v in itertools.product(range(7 // n + 2), repeat=n):
            if not any(v):
                continue
            expected = oracle_classify(q, v)
            got = classify_root(q, v)
            if expected is None:
                assert got.verdict == "NotRoot", (q.arrows, v, got)
            elif expected == "Real":
                assert got.verdict == "Real", (q.arrows, v, got)
            elif expected == "Isotropic":
                assert got.verdict == "ImaginaryIsotropic", (q.arrows, v, got)
            else:
                assert got.verdict == "ImaginaryAnisotropic", (q.arrows, v, got)


def test_kronecker_form_value_rule():
    for r in (2, 3, 5):
        q = kronecker_quiver(r)
        for v in itertools.product(range(8), repeat=2):
            if not any(v):
                continue
            qv = euler_form(q, v, v)
            verdict = classify_root(q, v).verdict
            if qv == 1:
                assert verdict == "Real"
            elif qv == 0:
                assert verdict == "ImaginaryIsotropic"
            elif qv < 0:
                assert verdict == "ImaginaryAnisotropic"
            else:
                assert verdict == "NotRoot"


def test_classification_trace_replays():
    q = kronecker_quiver(2)
    res = classify_root(q, (2, 3))
    assert res.verdict == "Real"
    assert apply_reflections(q, (2, 3), res.trace) == res.terminal
    assert res.terminal == (0, 1)
    assert res.trace == (2, 1)

    res = classify_root(q, (3, 3))
    assert res.verdict == "ImaginaryIsotropic"
    assert apply_reflections(q, (3, 3), res.trace) == res.terminal

    # negative of a root classifies with sign -1
    res = classify_root(q, (-2, -3))
    assert res.verdict == "Real"
    assert res.sign == -1


def test_iterate_real_roots_order_kronecker():
    it = iterate_real_roots(kronecker_quiver(2))
    first = [next(it) for _ in range(8)]
    assert first == [(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2),
                     (3, 4), (4, 3)]


def test_iterate_real_roots_finite_type_exhausts():
    # D4 has twelve positive roots, all real
    roots = list(iterate_real_roots(star_quiver(3)))
    assert len(roots) == 12
    assert len(set(roots)) == 12
    heights = [sum(r) for r in roots]
    assert heights == sorted(heights)
    # the highest root of D4
    assert roots[-1] == (2, 1, 1, 1)


def test_enumerate_roots_heights():
    rows = enumerate_roots(kronecker_quiver(2), 5)
    by_verdict = {}
    for vec, cls in rows:
        by_verdict.setdefault(cls.verdict, []).append(vec)
    assert sorted(by_verdict["Real"]) == [(0, 1), (1, 0), (1, 2), (2, 1),
                                          (2, 3), (3, 2)]
    assert sorted(by_verdict["ImaginaryIsotropic"]) == [(1, 1), (2, 2)]
    assert "ImaginaryAnisotropic" not in by_verdict


def test_null_roots():
    assert null_root(kronecker_quiver(2)) == (1, 1)
    assert null_root(build_quiver(2, [(1, 2), (2, 1)])) == (1, 1)
    assert null_root(star_quiver(4)) == (2, 1, 1, 1, 1)
    assert null_root(loop_quiver(1)) == (1,)
    with pytest.raises(NotTameError):
        null_root(kronecker_quiver(3))
    with pytest.raises(NotTameError):
        null_root(star_quiver(3))


def test_find_real_root_dominating():
    q = kronecker_quiver(2)
    assert find_real_root_dominating(q, (2, 2)) == (2, 3)
    assert find_real_root_dominating(q, (1, 1)) == (1, 2)
    alpha = find_real_root_dominating(star_quiver(4), (2, 1, 1, 1, 1))
    assert classify_root(star_quiver(4), alpha).verdict == "Real"
    assert all(x >= y for x, y in zip(alpha, (2, 1, 1, 1, 1)))


def test_reflection_guards():
    with pytest.raises(LoopedVertexError):
        simple_reflection(loop_quiver(1), (1,), 1)


def test_fundamental_region_examples():
    k3 = kronecker_quiver(3)
    assert in_fundamental_region(k3, (1, 1))
    assert in_fundamental_region(k3, (2, 2))
    assert not in_fundamental_region(k3, (1, 0))
    # disconnected support is excluded even when the form conditions hold
    path = build_quiver(3, [(1, 2), (2, 3)])
    assert not in_fundamental_region(path, (1, 0, 1))
