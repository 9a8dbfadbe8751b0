"""Group-ring arithmetic for difference sets and difference sums.

Coefficient vectors are positional (entry ``i`` belongs to table position
``i``).  Sets are sorted tuples of 1-based element indices, and element
arguments such as a translating element are 1-based as well.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .automorphisms import Automorphism, AutomorphismGroup, induced_images, stabilizer_images
from .errors import InvalidArgumentError
from .groups import Group, QuotientMap


class Parameters(NamedTuple):
    v: int
    k: int
    lam: int

    def __str__(self) -> str:
        return f"({self.v}, {self.k}, {self.lam})"


def lambda_for(v: int, k: int) -> int | None:
    """The integral ``lam`` with ``k(k-1) = lam(v-1)``, or ``None``."""
    if v < 2:
        return None
    q, r = divmod(k * (k - 1), v - 1)
    return q if r == 0 else None


def _positions(G: Group, indices: Sequence[int]) -> np.ndarray:
    pos = np.asarray(indices, dtype=np.int64) - 1
    if pos.size and (pos.min() < 0 or pos.max() >= G.order):
        raise InvalidArgumentError(f"index out of range 1..{G.order}")
    return pos


def indicator(G: Group, indices: Sequence[int]) -> np.ndarray:
    vec = np.zeros(G.order, dtype=np.int64)
    vec[_positions(G, indices)] = 1
    return vec


def support(vec) -> tuple[int, ...]:
    """1-based indices of the nonzero entries of a {0,1} vector."""
    return tuple(int(i) + 1 for i in np.flatnonzero(np.asarray(vec)))


def difference_profile(G: Group, coeffs) -> np.ndarray:
    """Coefficients of ``A A^(-1)``: entry ``g`` sums ``A[a] A[b]`` over ``a b^-1 = g``."""
    c = np.asarray(coeffs, dtype=np.int64)
    if c.shape != (G.order,):
        raise InvalidArgumentError("coefficient vector length differs from group order")
    nz = np.flatnonzero(c)
    out = np.zeros(G.order, dtype=np.int64)
    if nz.size == 0:
        return out
    diffs = G.table[np.ix_(nz, G.inverse[nz])]
    np.add.at(out, diffs.ravel(), np.outer(c[nz], c[nz]).ravel())
    return out


def difference_set_parameters(G: Group, indices: Sequence[int]) -> Parameters | None:
    """Parameters of ``indices`` as a difference set in ``G``, else ``None``."""
    idx = list(indices)
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise InvalidArgumentError("indices must be strictly increasing")
    v, k = G.order, len(idx)
    lam = lambda_for(v, k)
    if lam is None or k == 0:
        return None
    prof = difference_profile(G, indicator(G, idx))
    if prof[0] == k and np.all(prof[1:] == lam):
        return Parameters(v, k, lam)
    return None


def is_difference_set(G: Group, indices: Sequence[int]) -> bool:
    return difference_set_parameters(G, indices) is not None


def sum_targets(v: int, k: int, lam: int, kernel_order: int) -> tuple[int, int]:
    """Required profile of a difference sum at the identity and elsewhere."""
    return k - lam + lam * kernel_order, lam * kernel_order


def is_difference_sum(Q: QuotientMap, coeffs) -> bool:
    c = np.asarray(coeffs, dtype=np.int64)
    if c.shape != (Q.quotient.order,):
        raise InvalidArgumentError("coefficient vector length differs from quotient order")
    w = Q.kernel.order
    if c.min() < 0 or c.max() > w:
        return False
    k = int(c.sum())
    lam = lambda_for(Q.source.order, k)
    if lam is None or k == 0:
        return False
    at_identity, elsewhere = sum_targets(Q.source.order, k, lam, w)
    prof = difference_profile(Q.quotient, c)
    return bool(prof[0] == at_identity and np.all(prof[1:] == elsewhere))


def pushforward(Q: QuotientMap, indices: Sequence[int]) -> tuple[int, ...]:
    """Image of a set under the projection, as a coefficient tuple."""
    counts = np.bincount(Q.coset_of[_positions(Q.source, indices)],
                         minlength=Q.quotient.order)
    return tuple(int(x) for x in counts)


def translate(G: Group, coeffs, g: int) -> np.ndarray:
    """Coefficients of ``gA``: the old coefficient of ``d`` moves to ``g*d``."""
    c = np.asarray(coeffs)
    out = np.zeros_like(c)
    out[G.table[g - 1]] = c
    return out


def apply_automorphism(coeffs, phi: Automorphism) -> np.ndarray:
    c = np.asarray(coeffs)
    out = np.zeros_like(c)
    out[np.asarray(phi.images)] = c
    return out


def translate_set(G: Group, indices: Sequence[int], g: int) -> tuple[int, ...]:
    return tuple(sorted(int(x) + 1 for x in G.table[g - 1, _positions(G, indices)]))


def apply_automorphism_set(indices: Sequence[int], phi: Automorphism) -> tuple[int, ...]:
    return tuple(sorted(phi.images[i - 1] + 1 for i in indices))


def complement_set(G: Group, indices: Sequence[int]) -> tuple[int, ...]:
    if not is_difference_set(G, indices):
        raise InvalidArgumentError("input is not a difference set")
    chosen = set(indices)
    return tuple(i for i in range(1, G.order + 1) if i not in chosen)


def _matches_by_translation(table: np.ndarray, inverse: np.ndarray,
                            images: np.ndarray, target: np.ndarray) -> bool:
    """Is ``g * row == target`` for some row of ``images`` and some ``g``?

    Any such ``g`` carries a position holding the largest coefficient onto the
    first such position of ``target``, so only those ``g`` are tried.
    """
    t_first = int(np.flatnonzero(target == target.max())[0])
    for row in images:
        for a in np.flatnonzero(row == target.max()):
            g = table[t_first, inverse[a]]
            moved = np.zeros_like(row)
            moved[table[g]] = row
            if np.array_equal(moved, target):
                return True
    return False


def _orbit_images(coeffs: np.ndarray, auts: np.ndarray) -> np.ndarray:
    # row j: coefficients of phi_j(A)
    out = np.zeros((auts.shape[0], coeffs.shape[0]), dtype=coeffs.dtype)
    np.put_along_axis(out, auts.astype(np.int64), np.broadcast_to(coeffs, out.shape), axis=1)
    return out


def is_equivalent_difference_set(G: Group, A: AutomorphismGroup,
                                 D1: Sequence[int], D2: Sequence[int]) -> bool:
    """True iff ``D1 = g * phi(D2)`` for some element ``g`` and automorphism ``phi``."""
    if len(D1) != len(D2):
        return False
    if len(D1) == 0:
        return True
    v1, v2 = indicator(G, D1), indicator(G, D2)
    return _matches_by_translation(G.table, G.inverse, _orbit_images(v2, A.images), v1)


def is_equivalent_difference_sum(Q: QuotientMap, A: AutomorphismGroup, S1, S2) -> bool:
    """True iff ``S1 = g * psi(S2)`` with ``psi`` induced by a kernel-stabilizing automorphism."""
    s1 = np.asarray(S1, dtype=np.int64)
    s2 = np.asarray(S2, dtype=np.int64)
    if s1.shape != s2.shape or s1.sum() != s2.sum():
        return False
    if not s1.any():
        return True
    if sorted(s1) != sorted(s2):
        return False
    induced = induced_images(stabilizer_images(A, Q.kernel), Q)
    H = Q.quotient
    return _matches_by_translation(H.table, H.inverse, _orbit_images(s2, induced), s1)
