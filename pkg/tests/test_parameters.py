from math import isqrt

import pytest

from difsets.difference import Parameters, lambda_for
from difsets.parameters import brc_admissible, hilbert_symbol, possible_sizes


def small_solution(a, b, bound=60):
    """Nontrivial integer solution of z^2 = a x^2 + b y^2 with |x|, |y| <= bound."""
    for x in range(bound + 1):
        for y in range(bound + 1):
            if x == y == 0:
                continue
            r = a * x * x + b * y * y
            if r >= 0 and isqrt(r) ** 2 == r:
                return x, y, isqrt(r)
    return None


def test_examples():
    assert possible_sizes(15) == [Parameters(15, 7, 3)]
    assert possible_sizes(16) == [Parameters(16, 6, 2)]
    assert possible_sizes(8) == []
    assert possible_sizes(7) == [Parameters(7, 3, 1)]
    assert not brc_admissible(Parameters(22, 7, 2))
    assert brc_admissible(Parameters(16, 6, 2))
    assert brc_admissible(Parameters(7, 3, 1))


def test_known_exclusions():
    # projective plane of order 6, and the (29, 8, 2) biplane
    assert not brc_admissible(Parameters(43, 7, 1))
    assert not brc_admissible(Parameters(29, 8, 2))
    # order 10 plane passes the test (ruled out only by computer search)
    assert brc_admissible(Parameters(111, 11, 1))


@pytest.mark.parametrize("v", range(3, 200, 2))
def test_odd_case_agrees_with_search(v):
    for k in range(2, v):
        lam = lambda_for(v, k)
        if not lam:
            continue
        p = Parameters(v, k, lam)
        b = lam if ((v - 1) // 2) % 2 == 0 else -lam
        sol = small_solution(k - lam, b)
        if sol is not None:
            # soundness: a solvable equation is never rejected
            assert brc_admissible(p), (p, sol)
        elif not brc_admissible(p):
            assert small_solution(k - lam, b, bound=150) is None


def test_even_case():
    for v in range(4, 200, 2):
        for k in range(2, v):
            lam = lambda_for(v, k)
            if lam:
                n = k - lam
                assert brc_admissible(Parameters(v, k, lam)) == (isqrt(n) ** 2 == n)


def test_possible_sizes_properties():
    for v in range(2, 150):
        sizes = possible_sizes(v)
        assert [p.k for p in sizes] == sorted(p.k for p in sizes)
        for p in sizes:
            assert 1 < p.k and 2 * p.k < v and p.lam >= 1
            assert p.k * (p.k - 1) == p.lam * (v - 1)
        unfiltered = possible_sizes(v, use_brc=False)
        assert set(sizes) <= set(unfiltered)


@pytest.mark.parametrize("a, b, p, expected", [
    (2, -1, None, 1), (-1, -1, None, -1), (-1, -1, 2, -1), (2, 3, 3, -1),
    (5, 5, 5, 1), (3, 3, 3, -1), (2, 5, 5, -1), (2, 7, 2, 1)])
def test_hilbert_symbol_table(a, b, p, expected):
    assert hilbert_symbol(a, b, p) == expected


def test_hilbert_symbol_matches_local_search():
    # (a, b)_p = 1 iff z^2 = a x^2 + b y^2 has a primitive solution mod p^3
    def local(a, b, p):
        m = p ** 3
        for x in range(m):
            for y in range(m):
                if x % p == 0 and y % p == 0:
                    continue
                r = (a * x * x + b * y * y) % m
                if any((z * z - r) % m == 0 for z in range(m)):
                    return 1
        return -1
    for p in (3, 5):
        for a in (1, 2, 3, 6, p, 2 * p):
            for b in (-1, 1, 2, -2, p, -p):
                assert hilbert_symbol(a, b, p) == local(a, b, p), (a, b, p)
