"""Finite sup-lattices with precomputed join/meet tables.

Elements are dense integer indices 0..n-1.  The order is stored as an n x n
boolean matrix leq (leq[i, j] iff i <= j) and binary joins/meets are
precomputed into n x n index tables so that downstream exhaustive loops are
plain numpy gathers.
"""

from __future__ import annotations

from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np


class NotAPoset(ValueError):
    """Raised when the input order relation is not a partial order."""

    def __init__(self, law: str, witness: tuple):
        self.law = law
        self.witness = witness
        super().__init__(f"not a poset: {law} fails at {witness}")


class NotALattice(ValueError):
    """Raised when some pair of elements has no least upper / greatest lower bound."""

    def __init__(self, kind: str, witness: tuple):
        self.kind = kind
        self.witness = witness
        super().__init__(f"not a lattice: no {kind} for pair {witness}")


def _bound_table(leq: np.ndarray, upper: bool) -> np.ndarray:
    """Table of least upper (or greatest lower) bounds for all pairs.

    The lub of a set U of upper bounds, when it exists, is the unique member
    of U whose up-set is strictly largest, so we pick the argmax and verify.
    """
    rel = leq if upper else leq.T
    n = rel.shape[0]
    sizes = rel.sum(axis=1)
    table = np.empty((n, n), dtype=np.intp)
    for i in range(n):
        bounds = rel[i] & rel  # bounds[j, k]: k bounds both i and j
        scores = np.where(bounds, sizes, -1)
        cand = np.argmax(scores, axis=1)
        bad = ~bounds[np.arange(n), cand] | (bounds & ~rel[cand]).any(axis=1)
        if bad.any():
            j = int(np.argmax(bad))
            raise NotALattice("join" if upper else "meet", (i, j))
        table[i] = cand
    return table


class SupLattice:
    """A finite lattice; all joins and meets exist, including empty ones."""

    def __init__(self, leq: np.ndarray, labels: Sequence[str] | None = None):
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        if n == 0 or leq.shape != (n, n):
            raise ValueError("leq must be a nonempty square boolean matrix")
        self.n = n
        self.leq = leq
        self.labels = [str(x) for x in labels] if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise ValueError("label count does not match n")
        self._validate_order()
        self.join_table = _bound_table(leq, upper=True)
        self.meet_table = _bound_table(leq, upper=False)
        self.bottom = int(np.argmax(leq.sum(axis=1)))
        self.top = int(np.argmax(leq.sum(axis=0)))
        if not leq[self.bottom].all() or not leq[:, self.top].all():
            # cannot happen once all binary bounds exist, kept as a guard
            raise NotALattice("bound", (self.bottom, self.top))

    def _validate_order(self) -> None:
        leq = self.leq
        n = self.n
        diag = leq[np.arange(n), np.arange(n)]
        if not diag.all():
            i = int(np.argmin(diag))
            raise NotAPoset("reflexivity", (i,))
        anti = leq & leq.T & ~np.eye(n, dtype=bool)
        if anti.any():
            i, j = map(int, np.argwhere(anti)[0])
            raise NotAPoset("antisymmetry", (i, j))
        closure = leq @ leq
        gaps = closure & ~leq
        if gaps.any():
            i, k = map(int, np.argwhere(gaps)[0])
            j = int(np.argmax(leq[i] & leq[:, k]))
            raise NotAPoset("transitivity", (i, j, k))

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[Sequence[int]],
                    labels: Sequence[str] | None = None) -> "SupLattice":
        if n < 1:
            raise ValueError("a lattice needs at least one element")
        step = np.eye(n, dtype=bool)
        for i, j in covers:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"cover ({i}, {j}) out of range")
            step[i, j] = True
        # reflexive-transitive closure by repeated squaring
        leq = step
        while True:
            nxt = leq @ leq
            if (nxt == leq).all():
                break
            leq = nxt
        anti = leq & leq.T & ~np.eye(n, dtype=bool)
        if anti.any():
            i, j = map(int, np.argwhere(anti)[0])
            raise NotAPoset("antisymmetry", (i, j))
        return cls(leq, labels)

    def join(self, items: Iterable[int]) -> int:
        """Join of any finite family; the empty join is the bottom."""
        return int(reduce(lambda a, b: self.join_table[a, b], items, self.bottom))

    def meet(self, items: Iterable[int]) -> int:
        """Meet of any finite family; the empty meet is the top."""
        return int(reduce(lambda a, b: self.meet_table[a, b], items, self.top))

    def is_frame(self) -> tuple[bool, tuple[int, int, int] | None]:
        """Binary distributivity a AND (b OR c) = (a AND b) OR (a AND c).

        For a finite lattice this is equivalent to the full frame law.
        Returns (ok, witness); the witness is the lex-first failing triple.
        """
        jt, mt = self.join_table, self.meet_table
        for a in range(self.n):
            lhs = mt[a][jt]
            rhs = jt[np.ix_(mt[a], mt[a])]
            bad = lhs != rhs
            if bad.any():
                b, c = map(int, np.argwhere(bad)[0])
                return False, (a, b, c)
        return True, None

    @cached_property
    def join_irreducibles(self) -> list[int]:
        """Elements that are not the join of the elements strictly below them."""
        out = []
        for x in range(self.n):
            below = [y for y in range(self.n) if self.leq[y, x] and y != x]
            if self.join(below) != x:
                out.append(x)
        return out

    def covers(self) -> list[tuple[int, int]]:
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        cov = strict & ~(strict @ strict)
        return [(int(i), int(j)) for i, j in np.argwhere(cov)]

    def downset(self, a: int) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.leq[:, a])]

    def label(self, i: int) -> str:
        return self.labels[i]

    def __eq__(self, other) -> bool:
        return (isinstance(other, SupLattice) and self.n == other.n
                and (self.leq == other.leq).all())

    def __repr__(self) -> str:
        return f"SupLattice(n={self.n})"


def build_lattice(n: int, covers: Iterable[Sequence[int]],
                  labels: Sequence[str] | None = None) -> SupLattice:
    """Build and fully validate a lattice from its cover relation."""
    return SupLattice.from_covers(n, covers, labels)


def powerset_lattice(atoms: Sequence[str]) -> SupLattice:
    """Boolean lattice of all subsets of the given atoms, indexed by bitmask."""
    k = len(atoms)
    n = 1 << k
    masks = np.arange(n)
    leq = (masks[:, None] & ~masks[None, :]) == 0
    labels = ["{" + ",".join(atoms[b] for b in range(k) if m >> b & 1) + "}" for m in masks]
    lat = SupLattice.__new__(SupLattice)
    lat.n = n
    lat.leq = leq
    lat.labels = labels
    lat.join_table = (masks[:, None] | masks[None, :]).astype(np.intp)
    lat.meet_table = (masks[:, None] & masks[None, :]).astype(np.intp)
    lat.bottom = 0
    lat.top = n - 1
    return lat


def chain_lattice(n: int, labels: Sequence[str] | None = None) -> SupLattice:
    """Total order 0 < 1 < ... < n-1."""
    return build_lattice(n, [(i, i + 1) for i in range(n - 1)], labels)
