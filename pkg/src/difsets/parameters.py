"""Admissible ``(v, k, lambda)`` triples for a given group order."""

from __future__ import annotations

from math import isqrt

from .difference import Parameters, lambda_for


def _prime_factors(n: int) -> set[int]:
    n = abs(n)
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def _split(a: int, p: int) -> tuple[int, int]:
    e = 0
    while a % p == 0:
        a //= p
        e += 1
    return e, a


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a: int, b: int, p: int | None) -> int:
    """Hilbert symbol ``(a, b)_p`` of nonzero integers; ``p=None`` is the real place."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if p is None:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split(a, p)
    beta, w = _split(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * _legendre(u, p) ** beta * _legendre(w, p) ** alpha


def brc_admissible(p: Parameters) -> bool:
    """Bruck-Ryser-Chowla test for a symmetric ``(v, k, lambda)`` design.

    Even ``v`` needs ``k - lambda`` to be a square.  Odd ``v`` needs
    ``z^2 = (k - lambda) x^2 + (-1)^((v-1)/2) lambda y^2`` to have a nontrivial
    integer solution, which holds iff the Hilbert symbol of the two
    coefficients is 1 at every place.  Anything outside the theorem's
    hypotheses is let through.
    """
    v, k, lam = p
    n = k - lam
    if lam <= 0 or n <= 0:
        return True
    if v % 2 == 0:
        return isqrt(n) ** 2 == n
    b = lam if ((v - 1) // 2) % 2 == 0 else -lam
    places = [None, 2, *sorted(_prime_factors(n) | _prime_factors(lam))]
    return all(hilbert_symbol(n, b, q) == 1 for q in places)


def possible_sizes(v: int, use_brc: bool = True) -> list[Parameters]:
    """Nontrivial parameters with ``1 < k < v/2``, sorted by ``k``."""
    out = []
    for k in range(2, (v + 1) // 2):
        if 2 * k >= v:
            break
        lam = lambda_for(v, k)
        if lam is None or lam < 1:
            continue
        params = Parameters(v, k, lam)
        if use_brc and not brc_admissible(params):
            continue
        out.append(params)
    return out
