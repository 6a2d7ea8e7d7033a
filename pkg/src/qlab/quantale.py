"""Finite involutive quantales: validation, classification, supports.

A quantale here is a finite sup-lattice with an associative multiplication
that preserves joins in each argument, an involution, and optionally a unit.
All law checks are exhaustive; the cubic ones (associativity, join
distribution, modularity, frame law) are vectorized one row at a time so that
512-element quantales stay well inside interactive time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .lattice import SupLattice


class NotUnital(ValueError):
    pass


class BNotLocale(ValueError):
    def __init__(self, law: str, witness: tuple):
        self.law = law
        self.witness = witness
        super().__init__(f"downset of the unit is not a locale: {law} fails at {witness}")


class Quantale:
    """Multiplication and involution tables over a SupLattice."""

    def __init__(self, lattice: SupLattice, mul, inv, unit: int | None = None,
                 name: str | None = None):
        n = lattice.n
        self.lattice = lattice
        self.mul = np.ascontiguousarray(np.asarray(mul, dtype=np.intp))
        self.inv = np.ascontiguousarray(np.asarray(inv, dtype=np.intp))
        if self.mul.shape != (n, n):
            raise ValueError("mul table must be n x n")
        if self.inv.shape != (n,):
            raise ValueError("inv table must have length n")
        if self.mul.min() < 0 or self.mul.max() >= n or self.inv.min() < 0 or self.inv.max() >= n:
            raise ValueError("table entries out of range")
        if unit is not None and not 0 <= unit < n:
            raise ValueError("unit out of range")
        self.unit = unit
        self.name = name

    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def leq(self) -> np.ndarray:
        return self.lattice.leq

    def label(self, a: int) -> str:
        return self.lattice.labels[a]

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    def join(self, items) -> int:
        return self.lattice.join(items)

    def meet(self, items) -> int:
        return self.lattice.meet(items)

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"Quantale(n={self.n}{tag})"


@dataclass
class ValidationReport:
    """Outcome of validate_quantale: first witness per law, None = law holds."""

    laws: dict

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.laws.values())

    def failures(self) -> dict:
        return {law: w for law, w in self.laws.items() if w is not None}


def _first_bad(bad: np.ndarray, *prefix: int):
    if not bad.any():
        return None
    return tuple(prefix) + tuple(int(v) for v in np.argwhere(bad)[0])


def validate_quantale(Q: Quantale) -> ValidationReport:
    """Check every quantale law exhaustively, recording lex-first witnesses.

    Join preservation over arbitrary families reduces to binary joins plus
    the bottom element, which is what gets checked.
    """
    lat, mul, inv = Q.lattice, Q.mul, Q.inv
    n, jt = lat.n, lat.join_table
    ar = np.arange(n, dtype=np.intp)
    bot = lat.bottom
    laws: dict = {}

    w = None
    for a in range(n):
        bad = mul[mul[a]] != mul[a][mul]
        if bad.any():
            w = _first_bad(bad, a)
            break
    laws["associativity"] = w

    w = None
    for a in range(n):
        bad = mul[jt[a]] != jt[mul[a][None, :], mul]
        if bad.any():
            w = _first_bad(bad, a)
            break
    laws["join_distribution_left"] = w

    w = None
    for a in range(n):
        bad = mul[a][jt] != jt[np.ix_(mul[a], mul[a])]
        if bad.any():
            w = _first_bad(bad, a)
            break
    laws["join_distribution_right"] = w

    laws["bottom_left"] = _first_bad(mul[bot] != bot)
    laws["bottom_right"] = _first_bad(mul[:, bot] != bot)
    laws["involution_involutive"] = _first_bad(inv[inv] != ar)
    laws["involution_antihom"] = _first_bad(inv[mul] != mul[np.ix_(inv, inv)].T)
    laws["involution_join"] = _first_bad(inv[jt] != jt[np.ix_(inv, inv)])
    laws["involution_bottom"] = None if inv[bot] == bot else (bot,)

    if Q.unit is not None:
        laws["unit_left"] = _first_bad(mul[Q.unit] != ar)
        laws["unit_right"] = _first_bad(mul[:, Q.unit] != ar)

    return ValidationReport(laws)


def projections(Q: Quantale) -> list[int]:
    """Idempotent self-adjoint elements."""
    ar = np.arange(Q.n, dtype=np.intp)
    mask = (Q.inv == ar) & (Q.mul[ar, ar] == ar)
    return [int(p) for p in np.flatnonzero(mask)]


@dataclass
class SupportReport:
    """Candidate support a |-> a1 AND e and the status of each axiom."""

    sup: np.ndarray
    laws: dict
    cross_checks: dict = field(default_factory=dict)

    @property
    def supported(self) -> bool:
        return all(self.laws[k] is None
                   for k in ("join_preserving", "bottom", "below_self_star", "restores"))

    @property
    def stable(self) -> bool:
        return self.laws["stability"] is None


def support(Q: Quantale) -> SupportReport:
    """Evaluate the canonical support candidate a1 AND e on a unital quantale.

    When the axioms hold, the derived identities (a1 = sup(a)1, the
    alternative formula aa* AND e under stability, B-equivariance, and the
    locale structure of B) are cross-checked as well; they are theorems, so
    a failure there indicates an inconsistent quantale or a bug.
    """
    if Q.unit is None:
        raise NotUnital("support requires a unital quantale")
    lat, mul, inv, e = Q.lattice, Q.mul, Q.inv, Q.unit
    n, jt, mt = lat.n, lat.join_table, lat.meet_table
    ar = np.arange(n, dtype=np.intp)
    top, bot = lat.top, lat.bottom

    a1 = mul[:, top]
    sup = mt[a1, e]
    laws: dict = {}
    laws["join_preserving"] = _first_bad(sup[jt] != jt[sup[:, None], sup[None, :]])
    laws["bottom"] = None if sup[bot] == bot else (bot,)
    laws["below_self_star"] = _first_bad(~Q.leq[sup, mul[ar, inv]])
    laws["restores"] = _first_bad(~Q.leq[ar, mul[sup, ar]])
    laws["stability"] = _first_bad(~Q.leq[sup[a1], sup])

    report = SupportReport(sup, laws)
    if not report.supported:
        return report

    cc: dict = {}
    cc["sup_times_top"] = _first_bad(mul[sup, top] != a1)
    b_elems = np.flatnonzero(Q.leq[:, e])
    bad = mt[np.ix_(b_elems, b_elems)] != mul[np.ix_(b_elems, b_elems)]
    cc["b_meet_is_product"] = _first_bad(bad)
    cc["b_self_adjoint"] = _first_bad(inv[b_elems] != b_elems)
    cc["b_fixed_by_sup"] = _first_bad(sup[b_elems] != b_elems)
    if report.stable:
        w = None
        for a in range(n):
            bad = sup[mul[a]] != sup[mul[a, sup]]
            if bad.any():
                w = _first_bad(bad, a)
                break
        cc["stability_composed"] = w
        cc["self_star_formula"] = _first_bad(sup != mt[mul[ar, inv], e])
        w = None
        for b in b_elems:
            bad = mul[b] != mt[mul[b, top], ar]
            if bad.any():
                w = _first_bad(bad, int(b))
                break
        cc["b_product_formula"] = w
        w = None
        for b in b_elems:
            bad = mt[mul[b], e] != mt[b, ar]
            if bad.any():
                w = _first_bad(bad, int(b))
                break
        cc["b_meet_unit_swap"] = w
        w = None
        for b in b_elems:
            bad = sup[mul[b]] != mul[b, sup]
            if bad.any():
                w = _first_bad(bad, int(b))
                break
        cc["b_equivariance"] = w
    report.cross_checks = cc
    return report


@dataclass
class PartialUnitReport:
    elements: list[int]
    cover_join: int
    cover: bool


def partial_units(Q: Quantale) -> PartialUnitReport:
    """Elements s with ss* OR s*s below the unit; reports the cover condition."""
    if Q.unit is None:
        raise NotUnital("partial units require a unital quantale")
    ar = np.arange(Q.n, dtype=np.intp)
    both = Q.lattice.join_table[Q.mul[ar, Q.inv], Q.mul[Q.inv, ar]]
    mask = Q.leq[both, Q.unit]
    elems = [int(s) for s in np.flatnonzero(mask)]
    cj = Q.join(elems)
    return PartialUnitReport(elems, cj, cj == Q.top)


@dataclass
class BaseLocale:
    lattice: SupLattice
    elements: list[int]  # indices in Q, position = index in the sublattice


def base_locale(Q: Quantale) -> BaseLocale:
    """The downset of the unit as a locale; raises BNotLocale when it is not one."""
    if Q.unit is None:
        raise NotUnital("base locale requires a unital quantale")
    elems = Q.lattice.downset(Q.unit)
    sub = np.array(elems, dtype=np.intp)
    lat = SupLattice(Q.leq[np.ix_(sub, sub)], [Q.label(b) for b in elems])
    ok, w = lat.is_frame()
    if not ok:
        raise BNotLocale("frame_distributivity", tuple(elems[i] for i in w))
    bad = Q.lattice.meet_table[np.ix_(sub, sub)] != Q.mul[np.ix_(sub, sub)]
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise BNotLocale("meet_is_product", (elems[int(i)], elems[int(j)]))
    bad = Q.inv[sub] != sub
    if bad.any():
        i = int(np.argmax(bad))
        raise BNotLocale("self_adjoint", (elems[i],))
    return BaseLocale(lat, elems)


_FLAG_NAMES = ("unital", "gelfand", "locally_gelfand", "stably_gelfand", "modular",
               "supported", "stably_supported", "quantal_frame", "stable_quantal_frame",
               "inverse_quantal_frame")


@dataclass
class PropertyReport:
    """Classification flags; None means not applicable (needs a unit).

    Every False flag has an entry in witnesses with the lex-first violating
    tuple (element indices, possibly tagged with the failing axiom name).
    """

    unital: bool
    gelfand: bool
    locally_gelfand: bool
    stably_gelfand: bool
    modular: bool
    quantal_frame: bool
    supported: bool | None
    stably_supported: bool | None
    stable_quantal_frame: bool | None
    inverse_quantal_frame: bool | None
    witnesses: dict

    FLAG_NAMES = _FLAG_NAMES

    def flag(self, name: str):
        if name not in _FLAG_NAMES:
            raise KeyError(f"unknown flag {name!r}")
        return getattr(self, name)

    def flags(self) -> dict:
        return {name: getattr(self, name) for name in _FLAG_NAMES}


def _gelfand_flags(Q: Quantale):
    mul, inv, leq = Q.mul, Q.inv, Q.leq
    n = Q.n
    ar = np.arange(n, dtype=np.intp)
    reg = mul[mul[ar, inv], ar]  # a a* a
    witnesses = {}

    right_sided = leq[mul[:, Q.top], ar]
    bad = right_sided & (reg != ar)
    gelfand = not bad.any()
    if not gelfand:
        witnesses["gelfand"] = (int(np.argmax(bad)),)

    projs = np.flatnonzero((inv == ar) & (mul[ar, ar] == ar))
    local = leq[:, projs] & leq[mul[:, projs], ar[:, None]]
    bad = local.any(axis=1) & (reg != ar)
    locally_gelfand = not bad.any()
    if not locally_gelfand:
        a = int(np.argmax(bad))
        p = int(projs[np.argmax(local[a])])
        witnesses["locally_gelfand"] = (a, p)

    bad = leq[reg, ar] & (reg != ar)
    stably_gelfand = not bad.any()
    if not stably_gelfand:
        witnesses["stably_gelfand"] = (int(np.argmax(bad)),)

    return gelfand, locally_gelfand, stably_gelfand, witnesses


def modular_law(Q: Quantale):
    """First lex witness (a, b, c) with ab AND c not below a(b AND a*c), or None."""
    mul, inv, mt = Q.mul, Q.inv, Q.lattice.meet_table
    for a in range(Q.n):
        lhs = mt[mul[a]]
        rhs = mul[a][mt[:, mul[inv[a]]]]
        bad = ~Q.leq[lhs, rhs]
        if bad.any():
            return _first_bad(bad, a)
    return None


def classify(Q: Quantale) -> PropertyReport:
    """Full property ladder with witnesses; asserts the known implications."""
    witnesses: dict = {}
    unital = Q.unit is not None

    gelfand, locally_gelfand, stably_gelfand, w = _gelfand_flags(Q)
    witnesses.update(w)

    mod_w = modular_law(Q)
    modular = mod_w is None
    if not modular:
        witnesses["modular"] = mod_w

    frame_ok, frame_w = Q.lattice.is_frame()
    quantal_frame = frame_ok
    if not frame_ok:
        witnesses["quantal_frame"] = frame_w

    supported = stably_supported = stable_quantal_frame = inverse_quantal_frame = None
    if unital:
        srep = support(Q)
        supported = srep.supported
        if not supported:
            law = next(k for k in ("join_preserving", "bottom", "below_self_star", "restores")
                       if srep.laws[k] is not None)
            witnesses["supported"] = (law,) + srep.laws[law]
        stably_supported = supported and srep.stable
        if not stably_supported and supported:
            witnesses["stably_supported"] = ("stability",) + srep.laws["stability"]
        elif not supported:
            witnesses["stably_supported"] = witnesses["supported"]
        if supported:
            bad_cc = {k: v for k, v in srep.cross_checks.items() if v is not None}
            if bad_cc:
                raise AssertionError(f"support cross-checks failed: {bad_cc}")
        stable_quantal_frame = stably_supported and quantal_frame
        if not stable_quantal_frame:
            witnesses["stable_quantal_frame"] = witnesses.get("stably_supported",
                                                              witnesses.get("quantal_frame"))
        if stable_quantal_frame:
            pu = partial_units(Q)
            inverse_quantal_frame = pu.cover
            if not pu.cover:
                witnesses["inverse_quantal_frame"] = ("cover", pu.cover_join)
        else:
            inverse_quantal_frame = False
            witnesses["inverse_quantal_frame"] = witnesses["stable_quantal_frame"]
    else:
        witnesses["unital"] = ()

    report = PropertyReport(unital, gelfand, locally_gelfand, stably_gelfand, modular,
                            quantal_frame, supported, stably_supported,
                            stable_quantal_frame, inverse_quantal_frame, witnesses)
    _assert_ladder(report)
    return report


def _assert_ladder(r: PropertyReport) -> None:
    chain = [
        (r.stably_gelfand, r.locally_gelfand, "stably_gelfand -> locally_gelfand"),
        (r.unital and r.locally_gelfand, r.gelfand, "locally_gelfand -> gelfand"),
        (r.inverse_quantal_frame, r.stable_quantal_frame,
         "inverse_quantal_frame -> stable_quantal_frame"),
        (r.stable_quantal_frame, r.stably_supported,
         "stable_quantal_frame -> stably_supported"),
        (r.stably_supported, r.supported, "stably_supported -> supported"),
        (r.unital and r.modular, r.stably_supported, "modular -> stably_supported"),
        (r.inverse_quantal_frame, r.modular, "inverse_quantal_frame -> modular"),
    ]
    for pre, post, name in chain:
        if pre and not post:
            raise AssertionError(f"classification ladder broken: {name}")


def lattice_order_isos(src: SupLattice, dst: SupLattice) -> list[np.ndarray]:
    """All order isomorphisms src -> dst as permutation arrays."""
    if src.n != dst.n:
        return []
    n = src.n
    down_src = src.leq.sum(axis=0)
    up_src = src.leq.sum(axis=1)
    down_dst = dst.leq.sum(axis=0)
    up_dst = dst.leq.sum(axis=1)
    cands = [np.flatnonzero((down_dst == down_src[i]) & (up_dst == up_src[i])) for i in range(n)]
    out: list[np.ndarray] = []
    perm = np.full(n, -1, dtype=np.intp)
    used = np.zeros(n, dtype=bool)

    def extend(i: int) -> None:
        if i == n:
            out.append(perm.copy())
            return
        for j in cands[i]:
            if used[j]:
                continue
            ok = True
            for k in range(i):
                if src.leq[i, k] != dst.leq[j, perm[k]] or src.leq[k, i] != dst.leq[perm[k], j]:
                    ok = False
                    break
            if ok:
                perm[i] = j
                used[j] = True
                extend(i + 1)
                used[j] = False
                perm[i] = -1

    extend(0)
    return out


def are_isomorphic(Q1: Quantale, Q2: Quantale) -> bool:
    """Isomorphism of unital involutive quantales over order-isomorphic lattices."""
    for p in lattice_order_isos(Q1.lattice, Q2.lattice):
        if (p[Q1.mul] == Q2.mul[np.ix_(p, p)]).all() and (p[Q1.inv] == Q2.inv[p]).all():
            if (Q1.unit is None) != (Q2.unit is None):
                continue
            if Q1.unit is not None and p[Q1.unit] != Q2.unit:
                continue
            return True
    return False
