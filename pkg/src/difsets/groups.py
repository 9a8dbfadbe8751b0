"""Finite groups stored as multiplication tables.

Inside this module elements are table positions ``0 .. order-1`` and position 0
is always the identity.  The set-level API elsewhere in the package (difference
sets, results files, the CLI) reports the same elements 1-based, so position
``i`` is printed as ``i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CapacityError, InvalidArgumentError

DEFAULT_MAX_ORDER = 200


@dataclass(frozen=True, eq=False)
class Group:
    """A finite group given by its Cayley table.

    ``table[a, b]`` is the position of ``a*b`` and ``inverse[a]`` the position
    of ``a^-1``.  The identity sits at position 0.
    """

    table: np.ndarray
    inverse: np.ndarray = field(repr=False)
    label: str = ""

    @classmethod
    def from_table(cls, table, label: str = "", check: bool = True) -> "Group":
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise InvalidArgumentError("table must be a non-empty square array")
        n = t.shape[0]
        if check:
            _check_table(t)
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(t == 0)
        inv[rows] = cols
        t.setflags(write=False)
        inv.setflags(write=False)
        return cls(t, inv, label)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.ones(n, dtype=np.int64)
        power = np.arange(n)
        alive = power != 0
        k = 1
        while alive.any():
            k += 1
            power = self.table[power, np.arange(n)]
            hit = alive & (power == 0)
            orders[hit] = k
            alive &= ~hit
        orders[0] = 1
        return orders

    def conjugate(self, x: int, g: int) -> int:
        """Return ``g x g^-1``."""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"<Group{name} of order {self.order}>"


def _check_table(t: np.ndarray) -> None:
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise InvalidArgumentError("table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
        raise InvalidArgumentError("position 0 is not a two-sided identity")
    srt = np.arange(n)[None, :]
    if not (np.array_equal(np.sort(t, axis=1), np.broadcast_to(srt, t.shape))
            and np.array_equal(np.sort(t, axis=0).T, np.broadcast_to(srt, t.shape))):
        raise InvalidArgumentError("table is not a Latin square")
    if n <= 32:
        # (ab)c == a(bc) for every triple
        if not np.array_equal(t[t], t[:, t]):
            raise InvalidArgumentError("table is not associative")
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, 100_000))
        if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
            raise InvalidArgumentError("table is not associative")


# --- construction -----------------------------------------------------------


def _perm_tuple(p: Sequence[int], degree: int) -> tuple[int, ...]:
    q = tuple(int(x) for x in p)
    if len(q) != degree or sorted(q) != list(range(1, degree + 1)):
        raise InvalidArgumentError(f"not a permutation of 1..{degree}: {list(p)}")
    return q


def group_from_generators(
    degree: int,
    generators: Sequence[Sequence[int]],
    label: str = "",
    max_order: int = DEFAULT_MAX_ORDER,
) -> Group:
    """Build the permutation group generated by image lists on ``1..degree``.

    Elements are numbered breadth-first from the identity: layer ``d+1`` holds
    the new products ``x*s`` (apply ``x`` then ``s``) for ``x`` in layer ``d``,
    sorted by image sequence.  One generator therefore yields ``1, x, x^2, ...``.
    """
    if degree < 1:
        raise InvalidArgumentError("degree must be positive")
    gens = [_perm_tuple(g, degree) for g in generators]
    identity = tuple(range(1, degree + 1))
    index = {identity: 0}
    elements = [identity]
    layer = [identity]
    while layer:
        fresh = set()
        for x in layer:
            for s in gens:
                y = tuple(s[i - 1] for i in x)
                if y not in index and y not in fresh:
                    fresh.add(y)
        layer = sorted(fresh)
        for y in layer:
            index[y] = len(elements)
            elements.append(y)
        if len(elements) > max_order:
            raise CapacityError(
                f"generated group exceeds the order limit {max_order}")
    perms = np.array(elements, dtype=np.int64) - 1
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    lookup = {p.tobytes(): i for i, p in enumerate(perms)}
    for a in range(n):
        # row b of perms[:, perms[a]] is "apply a, then b"
        prods = perms[:, perms[a]]
        table[a] = [lookup[r.tobytes()] for r in prods]
    return Group.from_table(table, label=label)


def cyclic_group(n: int) -> Group:
    """Cyclic group of order ``n`` with elements ordered ``1, x, x^2, ...``."""
    if n < 1:
        raise InvalidArgumentError("order must be positive")
    ar = np.arange(n)
    return Group.from_table((ar[:, None] + ar[None, :]) % n, label=f"C{n}",
                            check=False)


# --- subgroups ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: Group
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self._member_set

    @property
    def _member_set(self) -> frozenset[int]:
        s = self.__dict__.get("_ms")
        if s is None:
            s = frozenset(self.members)
            object.__setattr__(self, "_ms", s)
        return s

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.members == self.members)

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} in {self.parent!r}>"


def generated_subgroup(G: Group, gens) -> Subgroup:
    members = {0}
    frontier = [0]
    gens = [int(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(G.table[x, s])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(members)))


def trivial_subgroup(G: Group) -> Subgroup:
    return Subgroup(G, (0,))


def whole_group(G: Group) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def is_normal(G: Group, N: Subgroup) -> bool:
    m = np.array(N.members)
    conj = G.table[G.table[:, m], G.inverse[:, None]]
    mask = np.zeros(G.order, dtype=bool)
    mask[m] = True
    return bool(mask[conj].all())


def normal_closure(G: Group, x: int) -> Subgroup:
    cls = {G.conjugate(x, g) for g in range(G.order)}
    return generated_subgroup(G, sorted(cls))


def _product(G: Group, A: Subgroup, B: Subgroup) -> Subgroup:
    prods = np.unique(G.table[np.ix_(A.members, B.members)])
    return Subgroup(G, tuple(int(x) for x in prods))


def normal_subgroups(G: Group) -> list[Subgroup]:
    """All normal subgroups, sorted by (order, members)."""
    # Each normal subgroup is the product of the normal closures of its
    # elements, so products of subsets of the closures reach all of them.
    closures = {}
    for x in range(G.order):
        c = normal_closure(G, x)
        closures.setdefault(c.members, c)
    found = {(0,): trivial_subgroup(G)}
    for c in closures.values():
        for n in list(found.values()):
            if set(c.members) <= n._member_set:
                continue
            p = _product(G, n, c)
            found.setdefault(p.members, p)
    return sorted(found.values(), key=lambda s: (s.order, s.members))


@dataclass(frozen=True, eq=False)
class NormalChain:
    group: Group
    terms: tuple[Subgroup, ...]

    @property
    def orders(self) -> list[int]:
        return [t.order for t in self.terms]


def refinement_chain(G: Group, normals: list[Subgroup] | None = None) -> NormalChain:
    """Descending chain of normal subgroups from ``G`` to the trivial group.

    Built bottom-up: each step takes the smallest normal subgroup strictly
    containing the previous term, ties broken by member list.
    """
    if normals is None:
        normals = normal_subgroups(G)
    current = normals[0]
    terms = [current]
    while current.order < G.order:
        current = next(n for n in normals
                       if n.order > current.order
                       and current._member_set <= n._member_set)
        terms.append(current)
    return NormalChain(G, tuple(reversed(terms)))


# --- quotients -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuotientMap:
    """Natural projection ``source -> source/kernel``.

    ``coset_of[x]`` is the quotient position of source position ``x``.  Cosets
    are numbered by their smallest member, so the kernel is position 0.
    """

    source: Group
    kernel: Subgroup
    quotient: Group
    coset_of: np.ndarray = field(repr=False)
    representatives: np.ndarray = field(repr=False)

    def fibers(self) -> list[tuple[int, ...]]:
        """Source positions in each coset, ascending."""
        out: list[list[int]] = [[] for _ in range(self.quotient.order)]
        for x, c in enumerate(self.coset_of):
            out[c].append(x)
        return [tuple(f) for f in out]


def quotient(G: Group, N: Subgroup) -> QuotientMap:
    if N.parent is not G:
        raise InvalidArgumentError("subgroup belongs to another group")
    if not is_normal(G, N):
        raise InvalidArgumentError("kernel is not a normal subgroup")
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    members = np.array(N.members)
    for x in range(G.order):
        if coset_of[x] < 0:
            coset_of[G.table[x, members]] = len(reps)
            reps.append(x)
    reps_arr = np.array(reps, dtype=np.int64)
    qtable = coset_of[G.table[np.ix_(reps_arr, reps_arr)]]
    label = f"{G.label}/N{N.order}" if G.label else ""
    Q = Group.from_table(qtable, label=label, check=False)
    coset_of.setflags(write=False)
    reps_arr.setflags(write=False)
    return QuotientMap(G, N, Q, coset_of, reps_arr)


def projection_between(upper: QuotientMap, lower: QuotientMap) -> np.ndarray:
    """Map positions of ``upper.quotient`` to ``lower.quotient``.

    Requires ``lower.kernel`` to contain ``upper.kernel``.
    """
    if upper.source is not lower.source:
        raise InvalidArgumentError("quotient maps have different sources")
    if not set(upper.kernel.members) <= lower.kernel._member_set:
        raise InvalidArgumentError("kernels are not nested")
    return lower.coset_of[upper.representatives]
