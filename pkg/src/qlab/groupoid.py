"""Finite etale groupoids: quantales, action modules, sheafification.

A finite discrete groupoid is stored as label lists plus dense tables
(domain, range, composition with -1 for undefined, inverse, units).
Composition is diagrammatic: m(g, h) is defined when r(g) = d(h) and runs
d(g) -> r(h).  Actions are geometric (act(g, x) defined when d(g) = p(x),
landing in the fiber over r(g)); the induced left module on the powerset of
the point set acts through the pullback maps lam_g = act(i(g), -), which is
what makes (UV).S = U.(V.S) come out in the right order.

The inner product on an action module is the arrow transporter
    <S, T> = {g : some y in T with p(y) = r(g) has lam_g(y) in S},
a candidate that module_from_action verifies against the pre-Hilbert axioms
and, within sheafify, against the section matrix m_st, rather than assuming.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import hilbert as hb
from .catalog import cyclic_table, powerset_quantale
from .lattice import powerset_lattice
from .qmatrix import QMatrix, QSet, is_qset, is_relation, mat_mul
from .quantale import Quantale, classify, partial_units, support


class NotAGroupoid(ValueError):
    def __init__(self, law: str, witness: tuple):
        super().__init__(f"groupoid law {law} fails at {witness}")
        self.law = law
        self.witness = witness


class InvalidAction(ValueError):
    def __init__(self, law: str, witness: tuple):
        super().__init__(f"action law {law} fails at {witness}")
        self.law = law
        self.witness = witness


class NotEtale(ValueError):
    """The base-locale restriction lacks enough sections."""

    def __init__(self, witness: int):
        super().__init__(f"element {witness} is not a join of local section parts")
        self.witness = witness


class FiniteGroupoid:
    """Objects, arrows and the five structure tables of a finite groupoid."""

    def __init__(self, objects, arrows, d, r, compose, inv, units,
                 name: str | None = None):
        self.objects = [str(o) for o in objects]
        self.arrows = [str(a) for a in arrows]
        no, na = len(self.objects), len(self.arrows)
        self.d = np.asarray(d, dtype=np.intp)
        self.r = np.asarray(r, dtype=np.intp)
        self.inv = np.asarray(inv, dtype=np.intp)
        self.units = np.asarray(units, dtype=np.intp)
        if isinstance(compose, dict):
            table = np.full((na, na), -1, dtype=np.intp)
            for (g, h), gh in compose.items():
                table[g, h] = gh
            compose = table
        self.compose = np.asarray(compose, dtype=np.intp)
        self.name = name
        self._validate()

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def _validate(self) -> None:
        no, na = self.n_objects, self.n_arrows
        if self.d.shape != (na,) or self.r.shape != (na,):
            raise NotAGroupoid("shape", ("d/r",))
        if self.compose.shape != (na, na) or self.inv.shape != (na,) or self.units.shape != (no,):
            raise NotAGroupoid("shape", ("tables",))
        for t, hi in ((self.d, no), (self.r, no), (self.inv, na), (self.units, na)):
            if t.size and (t.min() < 0 or t.max() >= hi):
                raise NotAGroupoid("range", ("entry",))
        m, d, r, inv, u = self.compose, self.d, self.r, self.inv, self.units

        for o in range(no):
            if d[u[o]] != o or r[u[o]] != o:
                raise NotAGroupoid("unit_endpoints", (o,))
        if len(set(u.tolist())) != no:
            raise NotAGroupoid("unit_endpoints", ("duplicate",))

        composable = r[:, None] == d[None, :]
        defined = m >= 0
        bad = composable != defined
        if bad.any():
            g, h = map(int, np.argwhere(bad)[0])
            raise NotAGroupoid("composability", (g, h))
        if defined.any() and m[defined].max() >= na:
            raise NotAGroupoid("range", ("compose",))

        for g in range(na):
            for h in np.flatnonzero(composable[g]):
                gh = m[g, h]
                if d[gh] != d[g] or r[gh] != r[h]:
                    raise NotAGroupoid("composite_endpoints", (g, int(h)))
            if m[u[d[g]], g] != g or m[g, u[r[g]]] != g:
                raise NotAGroupoid("unit_law", (g,))
            if d[inv[g]] != r[g] or r[inv[g]] != d[g] or inv[inv[g]] != g:
                raise NotAGroupoid("inverse_endpoints", (g,))
            if m[g, inv[g]] != u[d[g]] or m[inv[g], g] != u[r[g]]:
                raise NotAGroupoid("inverse_law", (g,))

        for g in range(na):
            for h in np.flatnonzero(composable[g]):
                for k in np.flatnonzero(composable[h]):
                    if m[m[g, h], k] != m[g, m[h, k]]:
                        raise NotAGroupoid("associativity", (g, int(h), int(k)))

    @cached_property
    def quantale(self) -> Quantale:
        """O(G) on the powerset of arrows; classified inverse quantal frame."""
        na = self.n_arrows
        atom_mul = np.zeros((na, na), dtype=np.int64)
        defined = self.compose >= 0
        for g in range(na):
            for h in np.flatnonzero(defined[g]):
                atom_mul[g, h] = np.int64(1) << np.int64(self.compose[g, h])
        unit_mask = 0
        for o in range(self.n_objects):
            unit_mask |= 1 << int(self.units[o])
        Q = powerset_quantale(atom_mul, self.inv, unit_mask, self.arrows,
                              name=f"O({self.name})" if self.name else None)
        flags = classify(Q)
        assert flags.stably_gelfand is True
        assert flags.inverse_quantal_frame is True, flags.flags()
        return Q

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"FiniteGroupoid(objects={self.n_objects}, arrows={self.n_arrows}{tag})"


def quantale_of(G: FiniteGroupoid) -> Quantale:
    return G.quantale


def bisections(G: FiniteGroupoid) -> list[int]:
    """Subset bitmasks on which both d and r are injective."""
    out = []
    for mask in range(1 << G.n_arrows):
        members = [g for g in range(G.n_arrows) if mask >> g & 1]
        if len({int(G.d[g]) for g in members}) == len(members) \
                and len({int(G.r[g]) for g in members}) == len(members):
            out.append(mask)
    return out


def groupoid_support(G: FiniteGroupoid):
    """sup(U) = u(d(U)) as a table over subset bitmasks, checked two ways."""
    n = 1 << G.n_arrows
    sup = np.zeros(n, dtype=np.intp)
    for g in range(G.n_arrows):
        bit = 1 << g
        ubit = 1 << int(G.units[G.d[g]])
        sel = (np.arange(n) & bit) != 0
        sup[sel] |= ubit
    assert np.array_equal(sup, support(G.quantale).sup)
    return sup


class GroupoidAction:
    """A right-to-left geometric action: act[g, x] defined when d(g) = p(x)."""

    def __init__(self, groupoid: FiniteGroupoid, points, p, act,
                 name: str | None = None):
        self.groupoid = groupoid
        self.points = [str(x) for x in points]
        ne = len(self.points)
        self.p = np.asarray(p, dtype=np.intp)
        if isinstance(act, dict):
            table = np.full((groupoid.n_arrows, ne), -1, dtype=np.intp)
            for (g, x), gx in act.items():
                table[g, x] = gx
            act = table
        self.act = np.asarray(act, dtype=np.intp)
        self.name = name
        self._validate()

    @property
    def n_points(self) -> int:
        return len(self.points)

    def _validate(self) -> None:
        G, ne = self.groupoid, self.n_points
        na = G.n_arrows
        if self.p.shape != (ne,) or (ne and (self.p.min() < 0 or self.p.max() >= G.n_objects)):
            raise InvalidAction("anchor", ("p",))
        if self.act.shape != (na, ne):
            raise InvalidAction("shape", ("act",))
        defined = self.act >= 0
        expected = G.d[:, None] == self.p[None, :]
        bad = defined != expected
        if bad.any():
            raise InvalidAction("definedness", tuple(map(int, np.argwhere(bad)[0])))
        for g in range(na):
            fiber = np.flatnonzero(expected[g])
            imgs = self.act[g, fiber]
            if imgs.size and (self.p[imgs] != G.r[g]).any():
                raise InvalidAction("anchor_image", (g,))
            target = np.flatnonzero(self.p == G.r[g])
            if sorted(imgs.tolist()) != sorted(target.tolist()):
                raise InvalidAction("fiber_bijection", (g,))
        for x in range(ne):
            if self.act[G.units[self.p[x]], x] != x:
                raise InvalidAction("unit", (x,))
        for g in range(na):
            for h in np.flatnonzero(G.r[g] == G.d):
                gh = G.compose[g, h]
                for x in np.flatnonzero(expected[g]):
                    if self.act[h, self.act[g, x]] != self.act[gh, x]:
                        raise InvalidAction("compatibility", (g, int(h), int(x)))

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"GroupoidAction(points={self.n_points}{tag})"


@dataclass(eq=False)
class ActionModule:
    """The etale Q-locale P(E) of an action, with its verified support."""

    action: GroupoidAction
    module: hb.PreHilbertModule
    supported: hb.SupportedModule
    atoms: np.ndarray            # carrier index of each single point {x}
    translate: np.ndarray        # (n_arrows, n_X) bitmask: lam_g(S cut to fiber r(g))


def module_from_action(A: GroupoidAction, verify: bool = True) -> ActionModule:
    G = A.groupoid
    Q = G.quantale
    ne = A.n_points
    nx = 1 << ne
    masks = np.arange(nx)
    carrier = powerset_lattice(A.points)

    # pullback point maps lam_g = act(i(g), -): fiber r(g) -> fiber d(g)
    lam = np.full((G.n_arrows, ne), -1, dtype=np.intp)
    for g in range(G.n_arrows):
        for y in np.flatnonzero(A.p == G.r[g]):
            lam[g, y] = A.act[G.inv[g], y]

    translate = np.zeros((G.n_arrows, nx), dtype=np.int64)
    for g in range(G.n_arrows):
        single = np.zeros(ne, dtype=np.int64)
        for y in range(ne):
            if lam[g, y] >= 0:
                single[y] = np.int64(1) << np.int64(lam[g, y])
        for y in range(ne):
            sel = (masks >> y & 1) == 1
            translate[g, sel] |= single[y]

    actX = np.zeros((Q.n, nx), dtype=np.int64)
    for g in range(G.n_arrows):
        sel = (np.arange(Q.n) >> g & 1) == 1
        actX[sel, :] |= translate[g][None, :]

    ip = np.zeros((nx, nx), dtype=np.int64)
    for g in range(G.n_arrows):
        hits = (masks[:, None] & translate[g][None, :]) != 0
        ip |= hits * (np.int64(1) << np.int64(g))

    module = hb.PreHilbertModule(hb.QModule(Q, carrier, actX.astype(np.intp)),
                                 ip.astype(np.intp))

    # B-valued cross-check: <S,T> AND e must be u(p(S cap T))
    pobj = np.zeros(nx, dtype=np.int64)
    for x in range(ne):
        sel = (masks >> x & 1) == 1
        pobj[sel] |= np.int64(1) << np.int64(G.units[A.p[x]])
    expected = pobj[masks[:, None] & masks[None, :]]
    assert np.array_equal(Q.lattice.meet_table[module.ip, Q.unit], expected)

    if verify:
        report = hb.validate_prehilbert(module)
        assert report.ok, report.failures()
        assert report.non_degenerate
    sm = hb.module_support(module)
    assert np.array_equal(sm.sup, pobj[masks])   # sup(S) = u(p(S))

    atoms = (np.int64(1) << np.arange(ne, dtype=np.int64)).astype(np.intp)
    return ActionModule(A, module, sm, atoms, translate)


@dataclass
class SheafifyReport:
    """The section Q-set of an etale Q-locale and its canonical isomorphism.

    All checks hold whenever the quantale is an inverse quantal frame (the
    setting of the theorem); over other quantales an etale Q-locale may
    fail them, and the report says which claim broke instead of raising.
    When the transporter matrix is not even a Q-set, matrix_module and
    canon are None and only the qset check is reported.
    """

    qset: QSet
    sections: np.ndarray          # carrier indices of the local sections, ascending
    sup: np.ndarray               # B-valued support over the whole carrier
    matrix_module: hb.MatrixModule | None
    canon: np.ndarray | None      # X -> Q^I M on carrier indices
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def local_section_indices(X: hb.PreHilbertModule):
    """(sections, sup, ipl): Hilbert data of the base-locale restriction."""
    Q = X.quantale
    if Q.unit is None:
        raise ValueError("local sections need a unital quantale")
    ipl = Q.lattice.meet_table[X.ip, Q.unit]
    lat, act = X.carrier, X.action
    ar = np.arange(X.n, dtype=np.intp)
    secs = np.asarray([s for s in range(X.n)
                       if lat.leq[act[ipl[:, s], s], ar].all()], dtype=np.intp)
    sup = ipl[ar, ar]
    return secs, sup, ipl


def sheafify(X: hb.PreHilbertModule, cap: int = 1 << 13) -> SheafifyReport:
    """Build the Q-set of local sections and verify X ~ Q^I M.

    The matrix follows the transporter recipe: m_st joins every partial
    unit a with sup(a*) <= sup(t) and a.t <= s.  Raises NotEtale when the
    base restriction of X lacks enough sections.
    """
    Q = X.quantale
    lat, act = X.carrier, X.action
    e = Q.unit
    jt, mt = Q.lattice.join_table, Q.lattice.meet_table
    secs, sup, ipl = local_section_indices(X)

    recon = np.full(X.n, lat.bottom, dtype=np.intp)
    for s in secs:
        recon = lat.join_table[recon, act[ipl[:, s], s]]
    bad = recon != np.arange(X.n, dtype=np.intp)
    if bad.any():
        raise NotEtale(int(np.argwhere(bad)[0][0]))

    srep = support(Q)
    punits = partial_units(Q).elements
    k = len(secs)
    M = np.full((k, k), Q.bottom, dtype=np.intp)
    for a in punits:
        ok_t = Q.leq[srep.sup[Q.inv[a]], sup[secs]]            # sup(a*) <= sup(t)
        moved = act[a][secs]                                   # a . t
        ok_st = lat.leq[np.ix_(moved, secs)].T & ok_t[None, :]
        M = np.where(ok_st, jt[M, a], M)

    qs = QSet(Q, M, [lat.labels[int(s)] for s in secs])
    ok_qset, _ = is_qset(qs)
    checks = {
        "qset": ok_qset,
        "transporter": bool(np.array_equal(X.ip[np.ix_(secs, secs)], M)),
        "local_ip": bool(np.array_equal(mt[M, e],
                                        sup[lat.meet_table[np.ix_(secs, secs)]])),
    }
    if not ok_qset:
        return SheafifyReport(qs, secs, sup, None, None, checks)

    mm = hb.module_from_qset(Q, qs, cap=cap)
    N = mm.module
    canon = np.full(X.n, N.carrier.bottom, dtype=np.intp)
    for t in range(k):
        canon = N.carrier.join_table[canon, N.action[ipl[:, secs[t]], mm.rows[t]]]

    nq = np.arange(Q.n, dtype=np.intp)
    checks.update({
        "bijective": X.n == N.n and len(set(canon.tolist())) == X.n,
        "join": bool((canon[lat.join_table]
                      == N.carrier.join_table[np.ix_(canon, canon)]).all()),
        "action": bool((canon[act] == N.action[nq[:, None], canon[None, :]]).all()),
        "unitary": bool((N.ip[np.ix_(canon, canon)] == X.ip).all()),
    })
    return SheafifyReport(qs, secs, sup, mm, canon, checks)


def check_section_lemmas(X: hb.PreHilbertModule) -> dict:
    """Partial units act on local sections; local sections cover the top.

    Returns the two verdicts; both are theorems for etale Q-locales, so
    callers normally assert the values.
    """
    Q = X.quantale
    secs, sup, ipl = local_section_indices(X)
    sec_set = set(int(s) for s in secs)
    punits = partial_units(Q).elements
    closed = all(int(X.action[a, s]) in sec_set for a in punits for s in secs)
    cover = X.carrier.join(secs) == X.carrier.top
    return {"partial_units_act": closed, "sections_cover": cover}


@dataclass
class PairReport:
    source: int
    target: int
    equivariant: list            # point maps as tuples
    sheaf_homs: list             # carrier tables as tuples
    bijection: list              # index into sheaf_homs for each equivariant map
    all_homs: int | None         # module homs without preservation constraints

    @property
    def counts_match(self) -> bool:
        return len(self.equivariant) == len(self.sheaf_homs)


@dataclass
class EquivalenceReport:
    groupoid: FiniteGroupoid
    pairs: list

    @property
    def ok(self) -> bool:
        return all(p.counts_match for p in self.pairs)


def _equivariant_maps(A1: GroupoidAction, A2: GroupoidAction) -> list[tuple]:
    """All f: E1 -> E2 over the objects commuting with every arrow."""
    G = A1.groupoid
    n1 = A1.n_points
    cands = [np.flatnonzero(A2.p == A1.p[x]).tolist() for x in range(n1)]
    out: list[tuple] = []
    chosen = [-1] * n1

    def consistent(k: int) -> bool:
        for g in range(G.n_arrows):
            for x in range(k + 1):
                if A1.act[g, x] < 0:
                    continue
                z = A1.act[g, x]
                if z <= k and A2.act[g, chosen[x]] != chosen[z]:
                    return False
        return True

    def place(k: int) -> None:
        if k == n1:
            out.append(tuple(chosen))
            return
        for y in cands[k]:
            chosen[k] = y
            if consistent(k):
                place(k + 1)
        chosen[k] = -1

    place(0)
    return out


def _hom_candidates(am1: ActionModule, am2: ActionModule, pinned: bool):
    """Per-atom candidate images, from module-level data only."""
    sup1 = am1.supported.sup
    sup2 = am2.supported.sup
    if not pinned:
        return [list(range(am2.module.n)) for _ in range(am1.action.n_points)]
    loc2 = hb.local_sections(am2.supported).local
    out = []
    for x in range(am1.action.n_points):
        a = am1.atoms[x]
        out.append([int(c) for c in loc2 if sup2[c] == sup1[a]])
    return out


def _enumerate_homs(am1: ActionModule, am2: ActionModule, pinned: bool) -> list[np.ndarray]:
    """Join-preserving candidates via atom images, verified afterwards.

    The DFS prunes with the quantale atoms: an arrow g carries atom x to
    either bottom or another atom, and the image assignment must commute.
    Survivors are re-checked with the generic module-hom test, so the
    pruning only has to be sound, not complete.
    """
    G = am1.action.groupoid
    n1 = am1.action.n_points
    X1, X2 = am1.module, am2.module
    cands = _hom_candidates(am1, am2, pinned)
    qatom = [1 << g for g in range(G.n_arrows)]
    # point_act[g][x] = carrier index of {g}.{x} in X1 (bottom or an atom)
    pact1 = np.array([[X1.action[qatom[g], am1.atoms[x]] for x in range(n1)]
                      for g in range(G.n_arrows)], dtype=np.intp)
    atom_pos1 = {int(am1.atoms[x]): x for x in range(n1)}
    chosen = [-1] * n1
    found: list[np.ndarray] = []

    def consistent(k: int) -> bool:
        for g in range(G.n_arrows):
            img = X2.action[qatom[g], chosen[k]]
            tgt = pact1[g, k]
            if tgt == X1.carrier.bottom:
                if img != X2.carrier.bottom:
                    return False
            else:
                z = atom_pos1[int(tgt)]
                if z <= k and chosen[z] != img:
                    return False
            # arrows landing on atom k from earlier atoms
            for x in range(k):
                if pact1[g, x] == am1.atoms[k] and X2.action[qatom[g], chosen[x]] != chosen[k]:
                    return False
        return True

    def place(k: int) -> None:
        if k == n1:
            table = np.full(X1.n, X2.carrier.bottom, dtype=np.intp)
            for mask in range(1, X1.n):
                low = mask & -mask
                table[mask] = X2.carrier.join_table[table[mask & (mask - 1)],
                                                    chosen[atom_pos1[low]]]
            found.append(table)
            return
        for y in cands[k]:
            chosen[k] = y
            if consistent(k):
                place(k + 1)
        chosen[k] = -1

    place(0)
    return found


def _is_sheaf_hom(am1: ActionModule, am2: ActionModule, table: np.ndarray,
                  loc1: np.ndarray, loc2: set) -> bool:
    phi = hb.ModuleHom(am1.module, am2.module, table)
    ok, _ = hb.is_module_hom(phi)
    if not ok:
        return False
    if not np.array_equal(am2.supported.sup[table], am1.supported.sup):
        return False
    return all(int(table[s]) in loc2 for s in loc1)


def verify_equivalence(G: FiniteGroupoid, actions, all_hom_cap: int = 4096) -> EquivalenceReport:
    """Count equivariant maps and sheaf morphisms for every action pair.

    The two counts come from independent enumerations (raw action tables on
    one side, module machinery on the other); the explicit bijection is the
    direct image f |-> f_!.  When the full space of join-preserving tables
    is small enough, all module homs are enumerated and the two sheaf-hom
    characterizations (support+section preserving vs the Galois pair
    phi.phi+ <= id <= phi+.phi) are checked to coincide on it.
    """
    mods = [module_from_action(a) for a in actions]
    locs = [hb.local_sections(am.supported).local for am in mods]
    pairs = []
    for i, am1 in enumerate(mods):
        for j, am2 in enumerate(mods):
            loc1, loc2 = locs[i], set(locs[j].tolist())
            equiv = _equivariant_maps(actions[i], actions[j])
            sheaf_tables = [t for t in _enumerate_homs(am1, am2, pinned=True)
                            if _is_sheaf_hom(am1, am2, t, loc1, loc2)]
            keyed = {t.tobytes(): pos for pos, t in enumerate(sheaf_tables)}

            # every sheaf hom is a direct image hom
            basis = hb.hilbert_sections(am1.module)
            for t in sheaf_tables:
                phi = hb.ModuleHom(am1.module, am2.module, t)
                assert hb.is_direct_image(phi, hb.adjoint(phi, basis))

            bij = []
            for f in equiv:
                table = np.full(am1.module.n, am2.module.carrier.bottom, dtype=np.intp)
                for mask in range(1, am1.module.n):
                    low = (mask & -mask).bit_length() - 1
                    table[mask] = am2.module.carrier.join_table[table[mask & (mask - 1)],
                                                                am2.atoms[f[low]]]
                key = table.tobytes()
                assert key in keyed, "direct image of an equivariant map must be a sheaf hom"
                bij.append(keyed[key])
            assert len(set(bij)) == len(bij)

            total = None
            space = am2.module.n ** am1.action.n_points
            if space <= all_hom_cap:
                all_tables = [t for t in _enumerate_homs(am1, am2, pinned=False)
                              if hb.is_module_hom(hb.ModuleHom(am1.module, am2.module, t))[0]]
                total = len(all_tables)
                subset = {t.tobytes() for t in all_tables
                          if _is_sheaf_hom(am1, am2, t, loc1, loc2)}
                galois = set()
                for t in all_tables:
                    phi = hb.ModuleHom(am1.module, am2.module, t)
                    if hb.is_direct_image(phi, hb.adjoint(phi, basis)):
                        galois.add(t.tobytes())
                assert subset == set(keyed) == galois
            pairs.append(PairReport(i, j, equiv,
                                    [tuple(map(int, t)) for t in sheaf_tables],
                                    bij, total))
    return EquivalenceReport(G, pairs)


def group_groupoid(table, labels, name: str | None = None) -> FiniteGroupoid:
    """A finite group as a one-object groupoid."""
    table = np.asarray(table, dtype=np.intp)
    na = table.shape[0]
    ident = next(g for g in range(na)
                 if all(table[g, h] == h and table[h, g] == h for h in range(na)))
    inv = np.array([next(h for h in range(na) if table[g, h] == ident)
                    for g in range(na)], dtype=np.intp)
    return FiniteGroupoid(["*"], labels, [0] * na, [0] * na, table, inv, [ident],
                          name=name)


def pair_groupoid(n: int) -> FiniteGroupoid:
    """Arrows (i -> j) on n objects, composition (i,j);(j,l) = (i,l)."""
    arrows = [f"{i}{j}" for i in range(n) for j in range(n)]
    d = [i for i in range(n) for _ in range(n)]
    r = [j for _ in range(n) for j in range(n)]
    compose = np.full((n * n, n * n), -1, dtype=np.intp)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                compose[n * i + j, n * j + l] = n * i + l
    inv = [n * j + i for i in range(n) for j in range(n)]
    units = [n * i + i for i in range(n)]
    return FiniteGroupoid([str(i) for i in range(n)], arrows, d, r, compose,
                          inv, units, name=f"pair{n}")


def disjoint_union(G1: FiniteGroupoid, G2: FiniteGroupoid,
                   name: str | None = None) -> FiniteGroupoid:
    objects = G1.objects + G2.objects
    arrows = G1.arrows + G2.arrows
    if len(set(objects)) != len(objects) or len(set(arrows)) != len(arrows):
        raise ValueError("component labels must be disjoint")
    no1, na1 = G1.n_objects, G1.n_arrows
    d = np.concatenate([G1.d, G2.d + no1])
    r = np.concatenate([G1.r, G2.r + no1])
    inv = np.concatenate([G1.inv, G2.inv + na1])
    units = np.concatenate([G1.units, G2.units + na1])
    compose = np.full((len(arrows), len(arrows)), -1, dtype=np.intp)
    compose[:na1, :na1] = G1.compose
    block = G2.compose.copy()
    block[block >= 0] += na1
    compose[na1:, na1:] = block
    return FiniteGroupoid(objects, arrows, d, r, compose, inv, units, name=name)


def regular_action(G: FiniteGroupoid) -> GroupoidAction:
    """G acting on its own arrows by composition, anchored at the range map."""
    na = G.n_arrows
    act = np.full((na, na), -1, dtype=np.intp)
    for g in range(na):
        for x in range(na):
            if G.r[x] == G.d[g]:
                act[g, x] = G.compose[x, g]
    return GroupoidAction(G, G.arrows, G.r, act,
                          name=f"{G.name}_regular" if G.name else None)


def objects_action(G: FiniteGroupoid) -> GroupoidAction:
    """G acting on its objects: an arrow sends its domain to its range."""
    act = np.full((G.n_arrows, G.n_objects), -1, dtype=np.intp)
    for g in range(G.n_arrows):
        act[g, G.d[g]] = G.r[g]
    return GroupoidAction(G, G.objects, np.arange(G.n_objects), act,
                          name=f"{G.name}_objects" if G.name else None)


@lru_cache(maxsize=None)
def _groupoid(name: str) -> FiniteGroupoid:
    if name == "z2":
        return group_groupoid(cyclic_table(2), ["e", "g"], "z2")
    if name == "z3":
        return group_groupoid(cyclic_table(3), ["e", "g", "gg"], "z3")
    if name == "pair2":
        return pair_groupoid(2)
    if name == "pair3":
        return pair_groupoid(3)
    if name == "z2_plus_pair2":
        z2 = group_groupoid(cyclic_table(2), ["e", "g"], "z2")
        return disjoint_union(z2, pair_groupoid(2), name="z2_plus_pair2")
    raise KeyError(name)


GROUPOID_NAMES = ("z2", "z3", "pair2", "pair3", "z2_plus_pair2")


@lru_cache(maxsize=None)
def _action(name: str) -> GroupoidAction:
    base, kind = name.rsplit("_", 1)
    G = _groupoid(base)
    return regular_action(G) if kind == "regular" else objects_action(G)


def catalog_groupoid_entries() -> dict:
    entries: dict = {}
    for name in GROUPOID_NAMES:
        entries[name] = ("groupoid", (lambda n=name: _groupoid(n)))
        entries[f"{name}_regular"] = ("action", (lambda n=name: _action(f"{n}_regular")))
        entries[f"{name}_objects"] = ("action", (lambda n=name: _action(f"{n}_objects")))
    return entries
