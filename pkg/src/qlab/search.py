"""Exhaustive search for involutive quantale structures on a small lattice.

A join-preserving multiplication is determined by its values on pairs of
join-irreducibles, so the search branches only on those cells.  The
involution links each cell (p, q) to (q*, p*), and a join-irreducible unit
pins its row and column, which together cut the raw cell count roughly in
half before any value is tried.  Every complete assignment is extended to a
full table by joins, re-validated from scratch by the quantale module, and
classified; only models matching the requested flags are emitted.

The searcher never trusts its own pruning: validate_quantale and classify
are independent code paths, so an unsound prune can only lose models, never
emit a bad one, and the leaf-level checks are exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import SupLattice
from .quantale import (Quantale, _FLAG_NAMES, classify, lattice_order_isos,
                       validate_quantale)


class BudgetExceeded(RuntimeError):
    """Raised when the candidate count passes the budget; carries partials."""

    def __init__(self, stats: "SearchStats", models: list):
        super().__init__(f"search budget exhausted after {stats.candidates} candidates")
        self.stats = stats
        self.models = models


@dataclass
class SearchStats:
    free_cells: int = 0
    involutions: int = 0
    candidates: int = 0          # complete irreducible tables reached
    emitted: int = 0
    pruned_assoc: int = 0
    rejected_quantale: int = 0
    rejected_require: int = 0
    deduped: int = 0
    truncated: bool = False      # stopped early by `limit`
    exhausted: bool = True       # the whole tree was visited


@dataclass
class SearchSpec:
    """What to search for; `require` maps classifier flag names to bool."""

    lattice: SupLattice
    fix_involution: np.ndarray | None = None
    fix_unit: int | None = None
    require: dict = field(default_factory=dict)
    limit: int | None = None
    budget: int | None = None
    dedup_iso: bool = False
    cap: int = 6

    def __post_init__(self):
        if self.lattice.n > self.cap:
            raise ValueError(f"lattice has {self.lattice.n} elements, cap is {self.cap}")
        for name in self.require:
            if name not in _FLAG_NAMES:
                raise ValueError(f"unknown classifier flag {name!r}")
        if self.fix_involution is not None:
            self.fix_involution = np.asarray(self.fix_involution, dtype=np.intp)
        if self.fix_unit is not None and not 0 <= self.fix_unit < self.lattice.n:
            raise ValueError("fix_unit out of range")


@dataclass
class SearchResult:
    models: list
    stats: SearchStats


def _involution_candidates(lat: SupLattice, fixed) -> list[np.ndarray]:
    """Self-inverse order automorphisms, or just the fixed one."""
    if fixed is not None:
        perm = np.asarray(fixed, dtype=np.intp)
        ar = np.arange(lat.n, dtype=np.intp)
        if not (np.array_equal(perm[perm], ar)
                and (lat.leq == lat.leq[np.ix_(perm, perm)]).all()):
            raise ValueError("fix_involution is not a self-inverse order automorphism")
        return [perm]
    autos = lattice_order_isos(lat, lat)
    ar = np.arange(lat.n, dtype=np.intp)
    cands = [p for p in autos if np.array_equal(p[p], ar)]
    cands.sort(key=lambda p: tuple(p.tolist()))
    return cands


def _full_table(lat: SupLattice, J: list[int], m: np.ndarray) -> np.ndarray:
    """Join-extension of an irreducible-pair table to the whole lattice."""
    n, k = lat.n, len(J)
    jt = lat.join_table
    rows = np.full((k, n), lat.bottom, dtype=np.intp)   # rows[i] = J[i] . b
    for j in range(k):
        sel = lat.leq[J[j]]                             # J[j] <= b
        rows[:, sel] = jt[rows[:, sel], m[:, j, None]]
    mul = np.full((n, n), lat.bottom, dtype=np.intp)
    for i in range(k):
        sel = lat.leq[J[i]]
        mul[sel, :] = jt[mul[sel, :], rows[i][None, :]]
    return mul


def _detect_unit(lat: SupLattice, mul: np.ndarray) -> int | None:
    ar = np.arange(lat.n, dtype=np.intp)
    for e in range(lat.n):
        if (mul[e] == ar).all() and (mul[:, e] == ar).all():
            return e
    return None


def _canonical_key(Q: Quantale, autos: list[np.ndarray]) -> bytes:
    best = None
    for p in autos:
        inv_p = np.empty_like(p)
        inv_p[p] = np.arange(Q.n, dtype=np.intp)
        key = (p[Q.mul[np.ix_(inv_p, inv_p)]].tobytes()
               + p[Q.inv[inv_p]].tobytes()
               + bytes([0 if Q.unit is None else 1 + int(p[Q.unit])]))
        if best is None or key < best:
            best = key
    return best


def search(spec: SearchSpec) -> SearchResult:
    """Enumerate every quantale structure matching the spec, in a fixed order.

    Raises BudgetExceeded when more complete candidate tables would have to
    be examined than `budget` allows; the exception carries the statistics
    and the models found so far.
    """
    lat = spec.lattice
    n = lat.n
    J = lat.join_irreducibles
    k = len(J)
    pos = {q: i for i, q in enumerate(J)}
    jt = lat.join_table
    stats = SearchStats()
    models: list[Quantale] = []
    keys: set[bytes] = set()
    autos = lattice_order_isos(lat, lat) if spec.dedup_iso else None

    # irr_below[a] = indices into J of the irreducibles below element a
    irr_below = [[i for i, q in enumerate(J) if lat.leq[q, a]] for a in range(n)]

    involutions = _involution_candidates(lat, spec.fix_involution)
    stats.involutions = len(involutions)

    class _Stop(Exception):
        pass

    def run_involution(inv: np.ndarray) -> None:
        # the involution permutes the irreducibles; map cell (p,q) -> (q*,p*)
        inv_j = {i: pos[int(inv[J[i]])] for i in range(k)}
        m = np.full((k, k), -1, dtype=np.intp)

        if spec.fix_unit is not None and spec.fix_unit in pos:
            e = spec.fix_unit
            if inv[e] != e:
                return                       # a unit is always self-adjoint
            ei = pos[e]
            for i in range(k):
                m[ei, i] = J[i]
                m[i, ei] = J[i]

        cells = [(i, j) for i in range(k) for j in range(k) if m[i, j] < 0]
        free = []
        linked = set()
        for c in cells:
            if c in linked:
                continue
            free.append(c)
            partner = (inv_j[c[1]], inv_j[c[0]])
            if partner != c:
                linked.add(partner)
        stats.free_cells = max(stats.free_cells, len(free))

        def assoc_ok() -> bool:
            # (pq)r = p(qr) through the join-extension, irreducibles only
            for i in range(k):
                for j in range(k):
                    for l in range(k):
                        left = lat.bottom
                        for t in irr_below[m[i, j]]:
                            left = jt[left, m[t, l]]
                        right = lat.bottom
                        for t in irr_below[m[j, l]]:
                            right = jt[right, m[i, t]]
                        if left != right:
                            return False
            return True

        def leaf() -> None:
            stats.candidates += 1
            if spec.budget is not None and stats.candidates > spec.budget:
                stats.exhausted = False
                raise BudgetExceeded(stats, models)
            if not assoc_ok():
                stats.pruned_assoc += 1
                return
            mul = _full_table(lat, J, m)
            unit = spec.fix_unit if spec.fix_unit is not None else _detect_unit(lat, mul)
            Q = Quantale(lat, mul, inv, unit)
            if not validate_quantale(Q).ok:
                stats.rejected_quantale += 1
                return
            flags = classify(Q)
            for name, want in spec.require.items():
                if flags.flag(name) is not want:
                    stats.rejected_require += 1
                    return
            if autos is not None:
                key = _canonical_key(Q, autos)
                if key in keys:
                    stats.deduped += 1
                    return
                keys.add(key)
            models.append(Q)
            stats.emitted += 1
            if spec.limit is not None and stats.emitted >= spec.limit:
                stats.truncated = True
                stats.exhausted = False
                raise _Stop

        def place(c: int) -> None:
            if c == len(free):
                leaf()
                return
            i, j = free[c]
            partner = (inv_j[j], inv_j[i])
            for v in range(n):
                m[i, j] = v
                if partner != (i, j):
                    m[partner] = int(inv[v])
                place(c + 1)
            m[i, j] = -1
            if partner != (i, j):
                m[partner] = -1

        place(0)

    try:
        for inv in involutions:
            run_involution(inv)
    except _Stop:
        pass
    return SearchResult(models, stats)
