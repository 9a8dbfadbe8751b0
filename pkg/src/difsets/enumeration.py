"""Difference set search by refining difference sums down a normal chain.

For each admissible ``(v, k, lambda)`` the search starts from the single sum
``[k]`` over ``G/G``.  Each step lifts every kept sum to the next quotient in
the chain (:func:`refine_sums`), then keeps one sum per equivalence class
(:func:`equivalence_free_sums`).  At the smallest nontrivial kernel the sums
are lifted to actual subsets of ``G`` (:func:`refine_sets`), which are then
reduced to canonical representatives (:func:`equivalence_free_sets`).

Sums are tuples of coefficients indexed by quotient position.  Sets are sorted
tuples of 1-based element indices.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .automorphisms import AutomorphismGroup, automorphism_group, induced_images, stabilizer_images
from .difference import Parameters, lambda_for, sum_targets
from .errors import CapacityError, InvalidArgumentError
from .groups import Group, QuotientMap, normal_subgroups, projection_between, quotient, refinement_chain
from .parameters import possible_sizes

log = logging.getLogger(__name__)

Sum = tuple[int, ...]
DiffSet = tuple[int, ...]

BRUTE_FORCE_LIMIT = 10**7


# --- lifting sums ------------------------------------------------------------------


def _min_squares(total: int, slots: int) -> int:
    """Smallest sum of squares of ``slots`` nonnegative integers adding to ``total``."""
    if slots == 0:
        return 0
    q, r = divmod(total, slots)
    return r * (q + 1) ** 2 + (slots - r) * q * q


def _lift_sum(table, inv, fibers, totals, cap, at_identity, elsewhere) -> list[Sum]:
    """All vectors distributing ``totals[i]`` over ``fibers[i]`` with the target profile.

    Entries are capped at ``cap``.  A branch is cut as soon as a partial
    profile entry exceeds its target, or the identity entry cannot stay
    within ``at_identity`` even with the most even split of what is left.
    """
    n = len(table)
    nf = len(fibers)
    suffix = [0] * (nf + 1)
    for i in range(nf - 1, -1, -1):
        suffix[i] = suffix[i + 1] + _min_squares(totals[i], len(fibers[i]))
    prof = [0] * n
    vals = [0] * n
    placed: list[int] = []
    out: list[Sum] = []

    def place(x: int, c: int) -> list[tuple[int, int]] | None:
        changes = []
        row_x = table[x]
        inv_x = inv[x]
        for y in placed:
            w = c * vals[y]
            d1 = row_x[inv[y]]
            d2 = table[y][inv_x]
            prof[d1] += w
            changes.append((d1, w))
            prof[d2] += w
            changes.append((d2, w))
            if prof[d1] > elsewhere or prof[d2] > elsewhere:
                unplace(changes)
                return None
        return changes

    def unplace(changes) -> None:
        for d, w in changes:
            prof[d] -= w

    def rec(fi: int, si: int, remaining: int) -> None:
        if fi == nf:
            out.append(tuple(vals))
            return
        fiber = fibers[fi]
        x = fiber[si]
        after = len(fiber) - si - 1
        lo = max(0, remaining - after * cap)
        hi = min(cap, remaining)
        for c in range(hi, lo - 1, -1):
            rest = remaining - c
            sq = c * c
            if prof[0] + sq + _min_squares(rest, after) + suffix[fi + 1] > at_identity:
                continue
            changes = None
            if c:
                changes = place(x, c)
                if changes is None:
                    continue
                prof[0] += sq
                vals[x] = c
                placed.append(x)
            if after:
                rec(fi, si + 1, rest)
            else:
                rec(fi + 1, 0, totals[fi + 1] if fi + 1 < nf else 0)
            if c:
                placed.pop()
                vals[x] = 0
                prof[0] -= sq
                unplace(changes)

    rec(0, 0, totals[0])
    return out


def _lift_sum_task(args) -> list[Sum]:
    return _lift_sum(*args)


def refine_sums(Q1: QuotientMap, Q2: QuotientMap, sums: Sequence[Sum],
                params: Parameters | None = None, jobs: int = 1) -> list[Sum]:
    """Difference sums over ``Q2.quotient`` that project onto one of ``sums``.

    ``Q1.kernel`` must contain ``Q2.kernel``.  The result is sorted.
    """
    proj = projection_between(Q2, Q1)
    H = Q2.quotient
    fibers = [[] for _ in range(Q1.quotient.order)]
    for p, i in enumerate(proj):
        fibers[int(i)].append(p)
    w = Q2.kernel.order
    table = H.table.tolist()
    inv = H.inverse.tolist()
    tasks = []
    for s in sums:
        if len(s) != Q1.quotient.order:
            raise InvalidArgumentError("sum length differs from the upper quotient order")
        k = sum(s)
        p = params or Parameters(Q1.source.order, k, lambda_for(Q1.source.order, k) or 0)
        at_identity, elsewhere = sum_targets(p.v, p.k, p.lam, w)
        tasks.append((table, inv, fibers, list(s), w, at_identity, elsewhere))
    out: set[Sum] = set()
    for part in _map(_lift_sum_task, tasks, jobs):
        out.update(part)
    return sorted(out)


def _map(fn, tasks, jobs: int):
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs)))
    else:
        yield from map(fn, tasks)


# --- canonical forms ---------------------------------------------------------------


def _lexmin_row(rows: np.ndarray) -> np.ndarray:
    idx = np.arange(rows.shape[0])
    for col in range(rows.shape[1]):
        column = rows[idx, col]
        idx = idx[column == column.min()]
        if idx.size == 1:
            break
    return rows[idx[0]]


def canonical_sum(H: Group, induced: np.ndarray, s: Sequence[int]) -> Sum:
    """Orbit representative of ``s`` under translation and ``induced`` automorphisms.

    Picks the largest coefficient at the identity, then the lexicographically
    smallest vector.
    """
    vec = np.asarray(s, dtype=np.int64)
    images = np.zeros((induced.shape[0], vec.size), dtype=np.int64)
    np.put_along_axis(images, induced.astype(np.int64),
                      np.broadcast_to(vec, images.shape), axis=1)
    rows, cols = np.nonzero(images == vec.max())
    # translating by the inverse of position a moves a to the identity:
    # the new coefficient at c is the old one at a*c
    moved = images[rows[:, None], H.table[cols]]
    return tuple(int(x) for x in _lexmin_row(moved))


def quotient_automorphisms(Q: QuotientMap, A: AutomorphismGroup) -> np.ndarray:
    """Distinct automorphisms of ``Q.quotient`` induced by ``A``."""
    return induced_images(stabilizer_images(A, Q.kernel), Q)


def equivalence_free_sums(Q: QuotientMap, A: AutomorphismGroup,
                          sums: Sequence[Sum]) -> list[Sum]:
    """One canonical representative per equivalence class of sums, sorted."""
    if not sums:
        return []
    induced = quotient_automorphisms(Q, A)
    return sorted({canonical_sum(Q.quotient, induced, s) for s in sums})


def smallest_image(G: Group, A: AutomorphismGroup, D: Sequence[int]) -> DiffSet:
    """Lexicographically least sorted set among all ``g * phi(D)``.

    The least image contains index 1, so only translates ``d^-1 D`` with
    ``d`` in ``D`` need to be pushed through the automorphisms.
    """
    if not D:
        return ()
    pos = np.asarray(D, dtype=np.int64) - 1
    best = None
    for d in pos:
        shifted = G.table[G.inverse[d], pos]
        images = np.sort(A.images[:, shifted], axis=1)
        cand = _lexmin_row(images)
        if best is None or tuple(cand) < tuple(best):
            best = cand
    return tuple(int(x) + 1 for x in best)


def equivalence_free_sets(G: Group, A: AutomorphismGroup,
                          sets: Sequence[DiffSet]) -> list[DiffSet]:
    return sorted({smallest_image(G, A, D) for D in sets})


# --- lifting to sets -----------------------------------------------------------------


def _lift_set(table, inv, cosets, counts, lam, require_identity) -> list[DiffSet]:
    n = len(table)
    prof = [0] * n
    chosen: list[int] = []
    out: list[DiffSet] = []
    cosets = [list(c) for c in cosets]
    counts = list(counts)
    if require_identity:
        chosen.append(0)
        counts[0] -= 1
        cosets[0] = [x for x in cosets[0] if x != 0]
    order = [i for i in range(len(cosets)) if counts[i] > 0]

    def add(x: int) -> list[int] | None:
        touched = []
        row_x = table[x]
        inv_x = inv[x]
        for y in chosen:
            d1 = row_x[inv[y]]
            d2 = table[y][inv_x]
            prof[d1] += 1
            prof[d2] += 1
            touched.append(d1)
            touched.append(d2)
            if prof[d1] > lam or prof[d2] > lam:
                for d in touched:
                    prof[d] -= 1
                return None
        return touched

    def rec(oi: int, start: int, need: int) -> None:
        if need == 0:
            if oi + 1 == len(order):
                out.append(tuple(sorted(x + 1 for x in chosen)))
                return
            nxt = order[oi + 1]
            rec(oi + 1, 0, counts[nxt])
            return
        elems = cosets[order[oi]]
        for j in range(start, len(elems) - need + 1):
            x = elems[j]
            touched = add(x)
            if touched is None:
                continue
            chosen.append(x)
            rec(oi, j + 1, need - 1)
            chosen.pop()
            for d in touched:
                prof[d] -= 1

    if not order:
        out.append(tuple(sorted(x + 1 for x in chosen)))
    else:
        rec(0, 0, counts[order[0]])
    return out


def _lift_set_task(args) -> list[DiffSet]:
    return _lift_set(*args)


def refine_sets(Q: QuotientMap, sums: Sequence[Sum], require_identity: bool = True,
                params: Parameters | None = None, jobs: int = 1) -> list[DiffSet]:
    """Difference sets in ``Q.source`` projecting onto one of ``sums``.

    With ``require_identity`` only sets containing index 1 are produced; every
    sum must then put a positive coefficient on the identity coset.
    """
    G = Q.source
    cosets = Q.fibers()
    table = G.table.tolist()
    inv = G.inverse.tolist()
    tasks = []
    for s in sums:
        if len(s) != Q.quotient.order:
            raise InvalidArgumentError("sum length differs from the quotient order")
        if require_identity and s[0] < 1:
            raise InvalidArgumentError(
                "identity-containing search needs a positive identity coefficient")
        lam = params.lam if params else lambda_for(G.order, sum(s))
        if lam is None:
            continue
        tasks.append((table, inv, cosets, list(s), lam, require_identity))
    out: set[DiffSet] = set()
    for part in _map(_lift_set_task, tasks, jobs):
        out.update(part)
    return sorted(out)


# --- pipeline ------------------------------------------------------------------------


@dataclass
class LevelReport:
    kernel_order: int
    quotient_order: int
    refined: int
    kept: int


@dataclass
class SearchReport:
    params: Parameters
    chain_orders: list[int]
    levels: list[LevelReport] = field(default_factory=list)
    candidate_sets: int = 0
    sets: list[DiffSet] = field(default_factory=list)


@dataclass(frozen=True, eq=False)
class SearchContext:
    """Per-group data shared by every parameter triple."""

    group: Group
    aut: AutomorphismGroup
    quotients: tuple[QuotientMap, ...]

    @classmethod
    def build(cls, G: Group, aut: AutomorphismGroup | None = None) -> "SearchContext":
        chain = refinement_chain(G, normal_subgroups(G))
        if aut is None:
            aut = automorphism_group(G)
        return cls(G, aut, tuple(quotient(G, N) for N in chain.terms))

    @property
    def last_level(self) -> QuotientMap:
        # smallest nontrivial kernel; the whole group for simple groups
        return self.quotients[-2] if len(self.quotients) > 1 else self.quotients[-1]


def iter_sum_levels(ctx: SearchContext, params: Parameters, dedupe_sums: bool = True,
                    jobs: int = 1) -> Iterator[tuple[QuotientMap, list[Sum], LevelReport]]:
    """Yield the kept sums at each chain level down to the smallest nontrivial kernel."""
    Q = ctx.quotients[0]
    sums: list[Sum] = [(params.k,)]
    yield Q, sums, LevelReport(Q.kernel.order, 1, 1, 1)
    for Q_next in ctx.quotients[1:-1]:
        refined = refine_sums(Q, Q_next, sums, params, jobs=jobs)
        sums = equivalence_free_sums(Q_next, ctx.aut, refined) if dedupe_sums else refined
        Q = Q_next
        report = LevelReport(Q.kernel.order, Q.quotient.order, len(refined), len(sums))
        log.info("level |N|=%d: %d refined sums, %d kept",
                 report.kernel_order, report.refined, report.kept)
        yield Q, sums, report


def search(ctx: SearchContext, params: Parameters, dedupe_sums: bool = True,
           identity_opt: bool = True, jobs: int = 1) -> SearchReport:
    report = SearchReport(params, [q.kernel.order for q in ctx.quotients])
    Q, sums = ctx.quotients[0], [(params.k,)]
    for Q, sums, level in iter_sum_levels(ctx, params, dedupe_sums, jobs):
        report.levels.append(level)
    if identity_opt:
        # translates of the dropped sums are still present, so nothing is lost
        sums = [s for s in sums if s[0] > 0]
    candidates = refine_sets(Q, sums, identity_opt, params, jobs=jobs)
    report.candidate_sets = len(candidates)
    report.sets = equivalence_free_sets(ctx.group, ctx.aut, candidates)
    log.info("%s: %d candidate sets, %d classes", params, len(candidates), len(report.sets))
    return report


def enumerate_group(G: Group, use_brc: bool = True, dedupe_sums: bool = True,
                    identity_opt: bool = True, jobs: int = 1,
                    aut: AutomorphismGroup | None = None) -> list[SearchReport]:
    sizes = possible_sizes(G.order, use_brc=use_brc)
    if not sizes:
        return []
    ctx = SearchContext.build(G, aut)
    return [search(ctx, p, dedupe_sums, identity_opt, jobs) for p in sizes]


def difference_sets(G: Group, **options) -> list[DiffSet]:
    """All difference sets of ``G`` up to equivalence, sorted by ``(k, indices)``.

    Trivial one-element sets and complements (``k >= v/2``) are not listed.
    """
    return [D for r in enumerate_group(G, **options) for D in r.sets]


# --- brute force -----------------------------------------------------------------


def brute_force_difference_sets(G: Group, aut: AutomorphismGroup | None = None,
                                sizes: Sequence[int] | None = None,
                                limit: int = BRUTE_FORCE_LIMIT) -> list[DiffSet]:
    """Reference search: test every ``k``-subset, then split into orbits.

    ``sizes`` defaults to every ``k`` with ``1 < k < v/2``.  Each orbit is
    enumerated in full and its least member reported.
    """
    v = G.order
    if sizes is None:
        sizes = [k for k in range(2, v) if 2 * k < v]
    sizes = [k for k in sizes if lambda_for(v, k) is not None]
    for k in sizes:
        if comb(v, k) > limit:
            raise CapacityError(f"C({v}, {k}) subsets exceed the brute-force limit {limit}")
    if aut is None:
        aut = automorphism_group(G)
    table = G.table
    inv = G.inverse
    result: list[DiffSet] = []
    for k in sizes:
        lam = lambda_for(v, k)
        found = set()
        for combo in combinations(range(v), k):
            c = np.array(combo)
            diffs = table[c[:, None], inv[c][None, :]]
            counts = np.bincount(diffs.ravel(), minlength=v)
            if counts[0] == k and (counts[1:] == lam).all():
                found.add(combo)
        while found:
            D = min(found)
            moved = aut.images[:, list(D)].astype(np.int64)
            orbit = np.sort(table[:, moved], axis=2).reshape(-1, k)
            members = {tuple(int(x) for x in row) for row in orbit}
            found -= members
            result.append(tuple(x + 1 for x in min(members)))
    return sorted(result, key=lambda D: (len(D), D))
