"""Automorphism groups of small finite groups, stored as full image arrays."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import CapacityError, InvalidArgumentError
from .groups import Group, QuotientMap, Subgroup, generated_subgroup

DEFAULT_CANDIDATE_CAP = 10**7


@dataclass(frozen=True, eq=False)
class Automorphism:
    group: Group
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Automorphism) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)


@dataclass(frozen=True, eq=False)
class AutomorphismGroup:
    """All automorphisms of ``group`` as rows of ``images`` (sorted)."""

    group: Group
    images: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.images.shape[0]

    @cached_property
    def elements(self) -> list[Automorphism]:
        return [Automorphism(self.group, tuple(int(x) for x in row))
                for row in self.images]


def generating_sequence(G: Group) -> list[int]:
    """Greedy generators: largest element order first, skipping the closure."""
    orders = G.element_orders()
    by_order = sorted(range(G.order), key=lambda x: (-orders[x], x))
    gens: list[int] = []
    closure: set[int] = {0}
    for x in by_order:
        if len(closure) == G.order:
            break
        if x not in closure:
            gens.append(x)
            closure = set(generated_subgroup(G, gens).members)
    return gens


def automorphism_group(G: Group, cap: int = DEFAULT_CANDIDATE_CAP) -> AutomorphismGroup:
    """Enumerate ``Aut(G)`` by backtracking over images of a generating sequence.

    An image candidate must have the same element order as its generator and
    extend the partial map consistently; more than ``cap`` candidates tried
    raises :class:`CapacityError`.
    """
    n = G.order
    table = G.table.tolist()
    orders = G.element_orders().tolist()
    gens = generating_sequence(G)
    candidates = [[y for y in range(n) if orders[y] == orders[g]] for g in gens]
    img = [-1] * n
    img[0] = 0
    used = [False] * n
    used[0] = True
    found: list[list[int]] = []
    explored = 0

    def close(level: int, known: list[int]) -> list[int] | None:
        # Propagate img over right multiplication by gens[:level + 1].
        active = gens[: level + 1]
        queue = list(known)
        queue.append(gens[level])
        added = [gens[level]]
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            ix = img[x]
            row = table[x]
            irow = table[ix]
            for s in active:
                y = row[s]
                want = irow[img[s]]
                cur = img[y]
                if cur < 0:
                    if used[want]:
                        _undo(added)
                        return None
                    img[y] = want
                    used[want] = True
                    added.append(y)
                    queue.append(y)
                elif cur != want:
                    _undo(added)
                    return None
        return added

    def _undo(added: list[int]) -> None:
        for y in added:
            used[img[y]] = False
            img[y] = -1

    def search(level: int, known: list[int]) -> None:
        nonlocal explored
        if level == len(gens):
            found.append(list(img))
            return
        g = gens[level]
        for t in candidates[level]:
            if used[t]:
                continue
            explored += 1
            if explored > cap:
                raise CapacityError(
                    f"automorphism search for {G!r} exceeded {cap} candidates")
            img[g] = t
            used[t] = True
            added = close(level, known)
            if added is None:
                continue
            search(level + 1, known + added)
            _undo(added)

    search(0, [0])
    dtype = np.int16 if n < 2**15 else np.int64
    images = np.array(found, dtype=dtype).reshape(len(found), n)
    images = images[np.lexsort(images.T[::-1])]
    images.setflags(write=False)
    return AutomorphismGroup(G, images)


def stabilizer_images(A: AutomorphismGroup, N: Subgroup) -> np.ndarray:
    """Rows of ``A.images`` mapping ``N`` onto itself."""
    mask = np.zeros(A.group.order, dtype=bool)
    mask[list(N.members)] = True
    keep = mask[A.images[:, list(N.members)]].all(axis=1)
    return A.images[keep]


def stabilizing_automorphisms(A: AutomorphismGroup, N: Subgroup) -> list[Automorphism]:
    return [Automorphism(A.group, tuple(int(x) for x in row))
            for row in stabilizer_images(A, N)]


def induce_on_quotient(phi: Automorphism, Q: QuotientMap) -> Automorphism:
    """Automorphism of ``Q.quotient`` sending ``coset_of[a]`` to ``coset_of[phi(a)]``."""
    if phi.group is not Q.source:
        raise InvalidArgumentError("automorphism and quotient map differ in source group")
    members = Q.kernel.members
    if {phi.images[x] for x in members} != set(members):
        raise InvalidArgumentError("automorphism does not stabilize the kernel")
    row = induced_images(np.array([phi.images]), Q)[0]
    return Automorphism(Q.quotient, tuple(int(x) for x in row))


def induced_images(images: np.ndarray, Q: QuotientMap) -> np.ndarray:
    """Distinct induced quotient automorphisms, sorted, for stabilizing rows."""
    if images.shape[0] == 0:
        return np.zeros((0, Q.quotient.order), dtype=np.int64)
    induced = Q.coset_of[images[:, Q.representatives]]
    return np.unique(induced, axis=0)
