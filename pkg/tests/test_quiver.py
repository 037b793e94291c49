"""Construction, forms, and vector plumbing."""

import random

import pytest

from quiver_ed.quiver import (
    EmptyQuiverError,
    InvalidArrowError,
    NegativeEntryError,
    SizeMismatchError,
    ZeroVectorError,
    arrow_multiplicity,
    build_quiver,
    check_vector,
    connected_components,
    embed_vector,
    euler_form,
    gram_matrix,
    has_loop_everywhere,
    induced_subquiver,
    is_connected,
    is_connected_support,
    kronecker_quiver,
    loop_quiver,
    looped_pair_quiver,
    restrict_vector,
    reverse_arrows_at,
    second_case_quiver,
    star_quiver,
    support,
    symmetrized_form,
    unit_vector,
)


def test_builders():
    k2 = kronecker_quiver(2)
    assert k2.vertex_count == 2
    assert k2.arrows == ((1, 2), (1, 2))

    l3 = loop_quiver(3)
    assert l3.vertex_count == 1
    assert l3.arrows == ((1, 1), (1, 1), (1, 1))

    lp = looped_pair_quiver(2, 3)
    assert lp.vertex_count == 2
    assert sum(1 for s, t in lp.arrows if s == t == 1) == 2
    assert sum(1 for s, t in lp.arrows if (s, t) == (1, 2)) == 3

    sc = second_case_quiver()
    assert sc.vertex_count == 2
    assert sorted(sc.arrows) == [(1, 1), (1, 2), (2, 2)]

    s4 = star_quiver(4)
    assert s4.vertex_count == 5
    # center is vertex 1, every arm points inward
    assert sorted(s4.arrows) == [(2, 1), (3, 1), (4, 1), (5, 1)]


def test_build_validation():
    with pytest.raises(EmptyQuiverError):
        build_quiver(0, [])
    with pytest.raises(InvalidArrowError):
        build_quiver(2, [(1, 3)])
    with pytest.raises(InvalidArrowError):
        build_quiver(2, [(0, 1)])


def test_check_vector_validation():
    q = kronecker_quiver(2)
    with pytest.raises(SizeMismatchError):
        check_vector(q, (1, 2, 3))
    with pytest.raises(NegativeEntryError):
        check_vector(q, (-1, 2), allow_negative=False)
    with pytest.raises(ZeroVectorError):
        check_vector(q, (0, 0), allow_zero=False)
    # negatives are allowed by default; reflections need them
    assert check_vector(q, (-1, 2)) == (-1, 2)


def test_euler_form_hand_values():
    k2 = kronecker_quiver(2)
    assert euler_form(k2, (1, 0), (0, 1)) == -2
    assert euler_form(k2, (0, 1), (1, 0)) == 0
    assert euler_form(k2, (1, 1), (1, 1)) == 0
    assert euler_form(k2, (2, 3), (2, 3)) == 4 + 9 - 2 * 6

    k3 = kronecker_quiver(3)
    assert euler_form(k3, (2, 2), (2, 2)) == 4 + 4 - 3 * 4

    l2 = loop_quiver(2)
    assert euler_form(l2, (3,), (3,)) == 9 - 2 * 9


def test_symmetrized_form_and_gram():
    q = build_quiver(3, [(1, 2), (2, 3), (3, 3)])
    g = gram_matrix(q)
    n = q.vertex_count
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            ei = unit_vector(n, i)
            ej = unit_vector(n, j)
            assert symmetrized_form(q, ei, ej) == g[i - 1][j - 1]
    # loop at 3 kills the diagonal entry
    assert g[2][2] == 0


def test_bilinearity_random():
    rng = random.Random(7)
    quivers = [kronecker_quiver(2), loop_quiver(2), star_quiver(3),
               build_quiver(3, [(1, 2), (2, 3), (1, 3), (3, 3)])]
    for _ in range(200):
        q = rng.choice(quivers)
        n = q.vertex_count
        a = tuple(rng.randint(-4, 4) for _ in range(n))
        b = tuple(rng.randint(-4, 4) for _ in range(n))
        c = tuple(rng.randint(-4, 4) for _ in range(n))
        ab = tuple(x + y for x, y in zip(a, b))
        assert euler_form(q, ab, c) == euler_form(q, a, c) + euler_form(q, b, c)
        assert euler_form(q, c, ab) == euler_form(q, c, a) + euler_form(q, c, b)
        assert symmetrized_form(q, a, b) == symmetrized_form(q, b, a)


def test_symmetrized_ignores_orientation():
    q = build_quiver(3, [(1, 2), (2, 3), (1, 3)])
    r = reverse_arrows_at(q, 2)
    for a in [(1, 0, 2), (1, 1, 1), (3, 2, 1)]:
        assert symmetrized_form(q, a, a) == symmetrized_form(r, a, a)


def test_reverse_arrows_at():
    q = build_quiver(3, [(1, 2), (2, 3), (3, 3)])
    r = reverse_arrows_at(q, 2)
    assert sorted(r.arrows) == [(2, 1), (3, 2), (3, 3)]
    # reflection functors only make sense at loop-free vertices
    with pytest.raises(InvalidArrowError):
        reverse_arrows_at(build_quiver(1, [(1, 1)]), 1)


def test_components_and_subquiver():
    q = build_quiver(5, [(1, 2), (2, 1), (4, 5)])
    comps = connected_components(q)
    assert comps == ((1, 2), (3,), (4, 5))
    assert not is_connected(q)

    sub, labels = induced_subquiver(q, (4, 5))
    assert sub.vertex_count == 2
    assert sub.arrows == ((1, 2),)
    assert labels == (4, 5)


def test_vector_plumbing():
    assert support((0, 3, 0, 1)) == (2, 4)
    assert unit_vector(3, 2) == (0, 1, 0)
    assert restrict_vector((5, 6, 7), (1, 3)) == (5, 7)
    assert embed_vector((5, 7), (1, 3), 4) == (5, 0, 7, 0)
    # restrict then embed recovers the original on its support
    v = (2, 0, 4)
    assert embed_vector(restrict_vector(v, (1, 3)), (1, 3), 3) == v


def test_connected_support():
    q = build_quiver(3, [(1, 2), (2, 3)])
    assert is_connected_support(q, (1, 1, 0))
    assert not is_connected_support(q, (1, 0, 1))
    assert is_connected_support(q, (0, 0, 2))


def test_misc_queries():
    q = build_quiver(2, [(1, 2), (1, 2), (2, 1)])
    # counts both directions, so it is symmetric in its arguments
    assert arrow_multiplicity(q, 1, 2) == 3
    assert arrow_multiplicity(q, 2, 1) == 3
    with pytest.raises(InvalidArrowError):
        arrow_multiplicity(q, 1, 1)
    assert not has_loop_everywhere(q)
    assert has_loop_everywhere(second_case_quiver())
    assert has_loop_everywhere(loop_quiver(1))
