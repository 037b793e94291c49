"""Essential-dimension quantities: towers, closed forms, ged routing,
genericity verdicts."""

from fractions import Fraction

import pytest

from quiver_ed.errors import (
    NotARootError,
    NotSchurRootError,
    UnsupportedRError,
)
from quiver_ed.essdim import (
    ged_root,
    ged_schur_root,
    genericity_all_alpha,
    genericity_counterexample,
    genericity_for,
    indecomposable_residual_bound,
    kronecker_ed,
    kronecker_split_penalty,
    loop_ed_bounds,
    prime_tower_max,
    prime_tower_sum,
    star_ed,
    star_ged,
)
from quiver_ed.quiver import (
    build_quiver,
    kronecker_quiver,
    loop_quiver,
    looped_pair_quiver,
    star_quiver,
)


def _factor_tower(d):
    """Independent oracle: sum and max of (p^k - 1) over the prime-power
    factors p^k exactly dividing d, by trial division."""
    total, biggest = 0, 0
    rest = d
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            pk = 1
            while rest % p == 0:
                pk *= p
                rest //= p
            total += pk - 1
            biggest = max(biggest, pk - 1)
        p += 1
    if rest > 1:
        total += rest - 1
        biggest = max(biggest, rest - 1)
    return total, biggest


TOWER_SUMS = {
    1: 0, 2: 1, 3: 2, 4: 3, 5: 4, 6: 3, 7: 6, 8: 7,
    9: 8, 10: 5, 12: 5, 30: 7, 36: 11,
}


def test_prime_towers():
    for d, expected in TOWER_SUMS.items():
        assert prime_tower_sum(d) == expected
    assert prime_tower_max(1) == 0
    assert prime_tower_max(8) == 7
    assert prime_tower_max(12) == 3
    assert prime_tower_max(30) == 4
    for d in range(1, 201):
        s, m = _factor_tower(d)
        assert prime_tower_sum(d) == s
        assert prime_tower_max(d) == m


def test_star_closed_forms():
    # ged: zero until the central multiplicity exceeds the arm count
    # plus two, then n*(m - n - 2); ed: best single split r*(m - r - 2)
    for n in range(0, 5):
        for m in range(1, 9):
            ged_expected = 0 if m <= n + 2 else n * (m - n - 2)
            # the trivial split always contributes 0, so clamp
            ed_expected = max(
                max(
                    (r * (m - r - 2) for r in range(1, min(n, m - 1) + 1)),
                    default=0,
                ),
                0,
            )
            assert star_ged(m, n) == ged_expected, (m, n)
            assert star_ed(m, n) == ed_expected, (m, n)
    assert star_ed(4, 2) == 1
    assert star_ged(4, 2) == 0


def test_kronecker_ed():
    for a in range(1, 7):
        for b in range(1, 7):
            assert kronecker_ed(1, a, b) == 0
            assert kronecker_ed(2, a, b) == (a + b) // 2
    with pytest.raises(UnsupportedRError) as exc:
        kronecker_ed(3, 2, 2)
    assert "no closed form for r = 3" in str(exc.value)
    with pytest.raises(UnsupportedRError):
        kronecker_ed(5, 1, 1)


def test_kronecker_split_penalty_exact_rationals():
    assert kronecker_split_penalty(2, 3, 4) == Fraction(-1, 6)
    assert kronecker_split_penalty(2, 2, 2) == 0
    # r = 3 on a balanced fundamental vector: 2(a-1)(3a/2a - 1) doubled
    assert kronecker_split_penalty(3, 2, 2) == 2
    assert kronecker_split_penalty(3, 4, 5) == Fraction(137, 20)
    val = kronecker_split_penalty(3, 6, 5)
    assert isinstance(val, Fraction)
    assert val == 2 * 5 * Fraction(15, 12) - 2 * 5 + 2 * 4 * Fraction(18, 10) - 2 * 4


def test_loop_ed_bounds():
    one_loop = loop_ed_bounds(1, 6)
    assert one_loop.status == "Exact"
    assert (one_loop.lower_bound, one_loop.upper_bound) == (6, 6)
    assert "isotropic" in one_loop.note

    r3 = loop_ed_bounds(3, 6)
    assert r3.status == "Exact"
    assert (r3.lower_bound, r3.upper_bound) == (76, 76)
    assert r3.base == 73
    assert r3.gcd_d == 6
    assert (r3.tower_sum, r3.tower_max) == (3, 2)

    trivial = loop_ed_bounds(2, 1)
    assert trivial.status == "Exact"
    assert trivial.upper_bound == 2

    # gcd 10 is not 1, 6, or a prime power, so only the conjectural
    # route reaches the full tower sum
    wide = loop_ed_bounds(2, 10)
    assert wide.status == "ExactConditionalOnConjecture"
    assert (wide.lower_bound, wide.upper_bound) == (105, 106)
    assert wide.base == 101
    assert (wide.tower_sum, wide.tower_max) == (5, 4)
    assert "conjectural upper" in wide.note

    with pytest.raises(UnsupportedRError):
        loop_ed_bounds(0, 3)


def test_ged_root_routes():
    k2 = kronecker_quiver(2)
    for n in range(1, 6):
        report = ged_root(k2, (n, n))
        assert report.status == "Exact"
        assert report.lower_bound == report.upper_bound == n

    k3 = kronecker_quiver(3)
    aniso = ged_root(k3, (2, 2))
    assert aniso.lower_bound == aniso.upper_bound == 6
    assert aniso.base == 5
    assert aniso.gcd_d == 2

    rigid = ged_root(star_quiver(4), (3, 1, 1, 1, 1))
    assert rigid.status == "Exact"
    assert rigid.upper_bound == 0

    with pytest.raises(NotARootError):
        ged_root(k2, (3, 1))


def test_ged_schur_root():
    k2 = kronecker_quiver(2)
    isotropic = ged_schur_root(k2, (1, 1))
    assert isotropic.lower_bound == isotropic.upper_bound == 1
    with pytest.raises(NotSchurRootError):
        ged_schur_root(k2, (2, 2))


def test_looped_pair_closed_forms():
    # both members of the constructed counterexample pair have exact
    # reports, with the shifted base showing up in the gcd-2 note
    for s in (2, 3):
        for r in (2, 3):
            q = looped_pair_quiver(s, r)
            top = ged_root(q, (2, 2 * r - 1))
            assert top.status == "Exact"
            assert top.upper_bound == 2 * r + 4 * s - 4
            bottom = ged_root(q, (2, 2))
            assert bottom.status == "Exact"
            assert bottom.upper_bound == 4 * r + 4 * s - 6
            assert bottom.base == 4 * r + 4 * s - 7
            assert f"base {bottom.base}" in bottom.note


def test_genericity_all_alpha():
    assert genericity_all_alpha(kronecker_quiver(1))
    assert genericity_all_alpha(loop_quiver(1))
    assert not genericity_all_alpha(kronecker_quiver(2))
    assert not genericity_all_alpha(star_quiver(4))


def test_genericity_for_verdicts():
    k2 = kronecker_quiver(2)
    held = genericity_for(k2, (3, 3))
    assert held.verdict == "Holds"
    assert "3 times the null root" in held.reason

    fundamental = genericity_for(kronecker_quiver(3), (2, 2))
    assert fundamental.verdict == "Holds"

    assert genericity_for(star_quiver(4), (4, 2, 2, 2, 2)).verdict == "Holds"
    assert genericity_for(star_quiver(4), (3, 1, 1, 1, 1)).verdict == "Fails"
    assert genericity_for(k2, (1, 2)).verdict == "Fails"
    assert genericity_for(k2, (2, 1)).verdict == "Unknown"


def test_genericity_counterexamples():
    alpha, beta, report = genericity_counterexample(kronecker_quiver(2))
    assert (alpha, beta) == ((1, 2), (1, 1))
    assert report.note.endswith(
        "exceeds the ged upper bound 0 of the dominating vector (1, 2)"
    )

    alpha, beta, report = genericity_counterexample(star_quiver(4))
    assert (alpha, beta) == ((2, 1, 1, 1, 2), (2, 1, 1, 1, 1))
    assert all(b <= a for a, b in zip(alpha, beta))

    alpha, beta, report = genericity_counterexample(looped_pair_quiver(2, 2))
    assert (alpha, beta) == ((2, 3), (2, 2))

    # reversing one connecting arrow builds a directed cycle through the
    # pair; the generic representation of (2, 3) then sheds a simple
    # summand and the bounds stop separating, which the note must say
    mixed = build_quiver(2, [(1, 1), (1, 2), (2, 1)])
    _, _, report = genericity_counterexample(mixed)
    assert "constructional rather than a certified gap" in report.note


def test_indecomposable_residual_bound():
    k2 = kronecker_quiver(2)
    assert indecomposable_residual_bound(k2, (2, 2)) == 1
    assert indecomposable_residual_bound(k2, (1, 3)) == 0
    assert indecomposable_residual_bound(loop_quiver(2), (4,)) == 3
