"""Hilbert-style modules over involutive quantales.

Carriers are explicit finite sup-lattices and every structure map (action,
inner product, homomorphism) is a dense integer table, so all axioms are
decided by exhaustive evaluation.  The central construction is
module_from_qset, which materializes the module of "row combinations" of a
Q-valued matrix together with its row basis; everything else (adjoints, the
matrix functor M, supports, local sections) is built on top of it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import SupLattice
from .qmatrix import QMatrix, QSet, completion, is_qset, is_relation, mat_mul
from .quantale import Quantale, ValidationReport, _first_bad, support


class CarrierTooLarge(RuntimeError):
    """Raised when the module carrier closure exceeds the configured cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"carrier closure exceeded cap ({size} > {cap})")
        self.size = size
        self.cap = cap


class AdjointIdentityFails(ValueError):
    """The computed adjoint does not satisfy <phi(x),y> = <x,adj(y)>."""

    def __init__(self, witness: tuple):
        super().__init__(f"adjoint identity fails at {witness}")
        self.witness = witness


class NotEnoughSections(ValueError):
    """The Hilbert sections of the module do not reconstruct some element."""

    def __init__(self, witness: int):
        super().__init__(f"element {witness} is not a join of its section parts")
        self.witness = witness


class NotARelation(ValueError):
    pass


class SupportAxiomFails(ValueError):
    def __init__(self, law: str, witness: tuple):
        super().__init__(f"support axiom {law} fails at {witness}")
        self.law = law
        self.witness = witness


class QModule:
    """A left module over a quantale: action[a, x] = a.x on a sup-lattice."""

    def __init__(self, quantale: Quantale, carrier: SupLattice, action):
        action = np.ascontiguousarray(np.asarray(action, dtype=np.intp))
        if action.shape != (quantale.n, carrier.n):
            raise ValueError("action table must be n_Q x n_X")
        if action.min() < 0 or action.max() >= carrier.n:
            raise ValueError("action entries out of range")
        self.quantale = quantale
        self.carrier = carrier
        self.action = action

    @property
    def n(self) -> int:
        return self.carrier.n

    def __repr__(self) -> str:
        return f"QModule(|Q|={self.quantale.n}, |X|={self.carrier.n})"


class PreHilbertModule:
    """A left Q-module with a Q-valued inner product table ip[x, y]."""

    def __init__(self, module: QModule, ip):
        ip = np.ascontiguousarray(np.asarray(ip, dtype=np.intp))
        n = module.carrier.n
        if ip.shape != (n, n):
            raise ValueError("inner product table must be n_X x n_X")
        if ip.min() < 0 or ip.max() >= module.quantale.n:
            raise ValueError("inner product entries out of range")
        self.module = module
        self.ip = ip

    @property
    def quantale(self) -> Quantale:
        return self.module.quantale

    @property
    def carrier(self) -> SupLattice:
        return self.module.carrier

    @property
    def action(self) -> np.ndarray:
        return self.module.action

    @property
    def n(self) -> int:
        return self.module.carrier.n

    def __repr__(self) -> str:
        return f"PreHilbertModule(|Q|={self.quantale.n}, |X|={self.n})"


def module_over_self(Q: Quantale) -> PreHilbertModule:
    """Q as a module over itself with <a, b> = a b*."""
    mod = QModule(Q, Q.lattice, Q.mul)
    return PreHilbertModule(mod, Q.mul[:, Q.inv])


def validate_module(M: QModule) -> ValidationReport:
    """Exhaustively check the left-module laws (binary joins + bottom)."""
    Q, X, act = M.quantale, M.carrier, M.action
    nq = Q.n
    jq, jx = Q.lattice.join_table, X.join_table
    laws: dict = {}

    w = None
    for a in range(nq):
        bad = act[Q.mul[a]] != act[a][act]
        if bad.any():
            w = _first_bad(bad, a)
            break
    laws["action_product"] = w

    w = None
    for a in range(nq):
        bad = act[jq[a]] != jx[act[a][None, :], act]
        if bad.any():
            w = _first_bad(bad, a)
            break
    laws["action_join_scalar"] = w
    laws["action_bottom_scalar"] = _first_bad(act[Q.bottom] != X.bottom)

    w = None
    for a in range(nq):
        bad = act[a][jx] != jx[np.ix_(act[a], act[a])]
        if bad.any():
            w = _first_bad(bad, a)
            break
    laws["action_join_element"] = w
    laws["action_bottom_element"] = _first_bad(act[:, X.bottom] != X.bottom)

    if Q.unit is not None:
        laws["action_unit"] = _first_bad(act[Q.unit] != np.arange(X.n, dtype=np.intp))
    return ValidationReport(laws)


@dataclass
class PreHilbertReport:
    """Axiom table for a pre-Hilbert module; non-degeneracy kept separate.

    `ok` covers the pre-Hilbert axioms only: a degenerate inner product is
    still a valid pre-Hilbert module, just not a Hilbert one.
    """

    laws: dict
    non_degenerate: bool
    degeneracy_witness: tuple | None

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.laws.values())

    def failures(self) -> dict:
        return {law: w for law, w in self.laws.items() if w is not None}


def validate_prehilbert(X: PreHilbertModule) -> PreHilbertReport:
    Q, lat, act, ip = X.quantale, X.carrier, X.action, X.ip
    jq = Q.lattice.join_table
    laws = dict(validate_module(X.module).laws)

    w = None
    for a in range(Q.n):
        bad = ip[act[a]] != Q.mul[a][ip]
        if bad.any():
            w = _first_bad(bad, a)
            break
    laws["ip_scalar_left"] = w

    w = None
    for x in range(X.n):
        bad = ip[lat.join_table[x]] != jq[ip[x][None, :], ip]
        if bad.any():
            w = _first_bad(bad, x)
            break
    laws["ip_join_left"] = w
    laws["ip_bottom_left"] = _first_bad(ip[lat.bottom] != Q.bottom)
    laws["ip_symmetry"] = _first_bad(ip != Q.inv[ip].T)

    # Right-variable sesquilinearity is a consequence of the axioms above;
    # checking it anyway guards the table against transposition slips.
    w = None
    for a in range(Q.n):
        bad = ip[:, act[a]] != Q.mul[ip, Q.inv[a]]
        if bad.any():
            w = _first_bad(bad, a)
            break
    laws["ip_scalar_right"] = w

    seen: dict = {}
    degen = None
    for x in range(X.n):
        key = ip[x].tobytes()
        if key in seen:
            degen = (seen[key], x)
            break
        seen[key] = x
    return PreHilbertReport(laws, degen is None, degen)


def hilbert_sections(X: PreHilbertModule) -> np.ndarray:
    """All s with <x,s>s <= x for every x, in carrier order."""
    lat, act, ip = X.carrier, X.action, X.ip
    ar = np.arange(X.n, dtype=np.intp)
    out = [s for s in range(X.n) if lat.leq[act[ip[:, s], s], ar].all()]
    return np.asarray(out, dtype=np.intp)


def reconstruct(X: PreHilbertModule, sigma) -> np.ndarray:
    """r[x] = join over s in sigma of <x,s>s."""
    lat, act, ip = X.carrier, X.action, X.ip
    out = np.full(X.n, lat.bottom, dtype=np.intp)
    for s in np.asarray(sigma, dtype=np.intp):
        out = lat.join_table[out, act[ip[:, s], s]]
    return out


def is_hilbert_basis(X: PreHilbertModule, sigma) -> tuple[bool, int | None]:
    bad = reconstruct(X, sigma) != np.arange(X.n, dtype=np.intp)
    if bad.any():
        return False, int(np.argwhere(bad)[0][0])
    return True, None


def has_enough_sections(X: PreHilbertModule):
    """(ok, sections, witness): do the Hilbert sections form a basis?"""
    secs = hilbert_sections(X)
    ok, witness = is_hilbert_basis(X, secs)
    return ok, secs, witness


def parseval_check(X: PreHilbertModule, sigma):
    """First (x, y) where <x,y> != join_s <x,s><s,y>, or None."""
    Q, ip = X.quantale, X.ip
    acc = np.full((X.n, X.n), Q.bottom, dtype=np.intp)
    for s in np.asarray(sigma, dtype=np.intp):
        acc = Q.lattice.join_table[acc, Q.mul[ip[:, s][:, None], ip[s][None, :]]]
    return _first_bad(acc != ip)


@dataclass(eq=False)
class ModuleHom:
    source: PreHilbertModule
    target: PreHilbertModule
    map: np.ndarray

    def __post_init__(self):
        self.map = np.ascontiguousarray(np.asarray(self.map, dtype=np.intp))
        if self.map.shape != (self.source.n,):
            raise ValueError("hom table must have one entry per source element")
        if self.map.min() < 0 or self.map.max() >= self.target.n:
            raise ValueError("hom entries out of range")

    def same_table(self, other: "ModuleHom") -> bool:
        return np.array_equal(self.map, other.map)


def identity_hom(X: PreHilbertModule) -> ModuleHom:
    return ModuleHom(X, X, np.arange(X.n, dtype=np.intp))


def hom_compose(psi: ModuleHom, phi: ModuleHom) -> ModuleHom:
    """psi after phi."""
    return ModuleHom(phi.source, psi.target, psi.map[phi.map])


def hom_join(phi: ModuleHom, psi: ModuleHom) -> ModuleHom:
    return ModuleHom(phi.source, phi.target,
                     phi.target.carrier.join_table[phi.map, psi.map])


def is_module_hom(phi: ModuleHom):
    """(ok, witness) for join/bottom/action preservation, fully vectorized."""
    Xs, Xt, f = phi.source, phi.target, phi.map
    w = _first_bad(f[Xs.carrier.join_table] != Xt.carrier.join_table[np.ix_(f, f)])
    if w is not None:
        return False, ("join",) + w
    if f[Xs.carrier.bottom] != Xt.carrier.bottom:
        return False, ("bottom",)
    nq = Xs.quantale.n
    lhs = f[Xs.action]
    rhs = Xt.action[np.arange(nq, dtype=np.intp)[:, None], f[None, :]]
    w = _first_bad(lhs != rhs)
    if w is not None:
        return False, ("action",) + w
    return True, None


def adjoint(phi: ModuleHom, sigma=None) -> ModuleHom:
    """The unique adj with <phi(x),y> = <x,adj(y)>, via a basis of the source.

    adj(y) = join over basis elements t of <y, phi(t)> t.
    """
    Xs, Xt = phi.source, phi.target
    if sigma is None:
        sigma = hilbert_sections(Xs)
    ok, witness = is_hilbert_basis(Xs, sigma)
    if not ok:
        raise NotEnoughSections(witness)
    out = np.full(Xt.n, Xs.carrier.bottom, dtype=np.intp)
    for t in np.asarray(sigma, dtype=np.intp):
        out = Xs.carrier.join_table[out, Xs.action[Xt.ip[:, phi.map[t]], t]]
    lhs = Xt.ip[phi.map]          # [x, y] = <phi(x), y>
    rhs = Xs.ip[:, out]           # [x, y] = <x, adj(y)>
    w = _first_bad(lhs != rhs)
    if w is not None:
        raise AdjointIdentityFails(w)
    return ModuleHom(Xt, Xs, out)


def is_direct_image(phi: ModuleHom, dag: ModuleHom | None = None) -> bool:
    """Galois pair test: phi . dag <= id and id <= dag . phi."""
    if dag is None:
        dag = adjoint(phi)
    Xs, Xt = phi.source, phi.target
    ar_t = np.arange(Xt.n, dtype=np.intp)
    ar_s = np.arange(Xs.n, dtype=np.intp)
    return bool(Xt.carrier.leq[phi.map[dag.map], ar_t].all()
                and Xs.carrier.leq[ar_s, dag.map[phi.map]].all())


@dataclass(eq=False)
class MatrixModule:
    """Q^I A: the row-combination module of a Q-set matrix, with row basis."""

    module: PreHilbertModule
    qset: QSet
    vectors: np.ndarray          # (m, |I|) carrier elements as coordinate vectors
    rows: np.ndarray             # (|I|,) carrier index of each matrix row
    index: dict                  # vector bytes -> carrier index

    def vector_index(self, vec) -> int:
        key = np.ascontiguousarray(np.asarray(vec, dtype=np.intp)).tobytes()
        if key not in self.index:
            raise KeyError("vector is not in the carrier")
        return self.index[key]


def _vector_labels(Q: Quantale, vectors: np.ndarray) -> list[str]:
    if vectors.shape[1] <= 4:
        return ["(" + ",".join(Q.label(int(c)) for c in vec) + ")" for vec in vectors]
    return [f"v{i}" for i in range(len(vectors))]


def module_from_qset(Q: Quantale, X: QSet, cap: int = 1 << 12) -> MatrixModule:
    """Materialize Q^I A = {vA} as a pre-Hilbert module with its row basis.

    The carrier is the closure of the scaled rows {q . row_a} under binary
    joins (plus the zero vector); the inner product is the dot product
    <v, w> = join_a v_a w_a*.  The row-projection identity <v, row_b> = v_b
    and the entry identity <row_a, row_b> = a_ab are asserted, as is the
    fact that the rows form a Hilbert basis.
    """
    A = X.A.data
    k = A.shape[0]
    jt, mul, inv = Q.lattice.join_table, Q.mul, Q.inv

    vecs: list[np.ndarray] = []
    index: dict = {}

    def add(vec: np.ndarray) -> int:
        key = vec.tobytes()
        got = index.get(key)
        if got is None:
            got = len(vecs)
            index[key] = got
            vecs.append(vec)
        return got

    add(np.ascontiguousarray(np.full(k, Q.bottom, dtype=np.intp)))
    for alpha in range(k):
        scaled = mul[:, A[alpha]]          # all q . row_alpha at once
        for q in range(Q.n):
            add(np.ascontiguousarray(scaled[q]))
    if len(vecs) > cap:
        raise CarrierTooLarge(len(vecs), cap)

    # worklist closure under binary joins: pair every unprocessed vector
    # with everything known so far (new arrivals join the queue)
    i = 0
    while i < len(vecs):
        vi = vecs[i]
        for j in range(i + 1):
            add(np.ascontiguousarray(jt[vi, vecs[j]]))
            if len(vecs) > cap:
                raise CarrierTooLarge(len(vecs), cap)
        i += 1

    arr = np.ascontiguousarray(np.array(vecs, dtype=np.intp))
    m = arr.shape[0]
    leq = Q.leq[arr[:, None, :], arr[None, :, :]].all(axis=2)
    carrier = SupLattice(leq, _vector_labels(Q, arr))

    act = np.empty((Q.n, m), dtype=np.intp)
    for a in range(Q.n):
        moved = mul[a][arr]
        row = act[a]
        for i in range(m):
            row[i] = index[np.ascontiguousarray(moved[i]).tobytes()]

    ip = np.empty((m, m), dtype=np.intp)
    for i in range(m):
        acc = np.full(m, Q.bottom, dtype=np.intp)
        for t in range(k):
            acc = jt[acc, mul[arr[i, t], inv[arr[:, t]]]]
        ip[i] = acc

    mod = PreHilbertModule(QModule(Q, carrier, act), ip)
    rows = np.array([index[np.ascontiguousarray(A[a]).tobytes()] for a in range(k)],
                    dtype=np.intp)

    report = validate_prehilbert(mod)
    assert report.ok, report.failures()
    assert report.non_degenerate, report.degeneracy_witness
    assert np.array_equal(ip[:, rows], arr)                 # <v, row_b> = v_b
    assert np.array_equal(ip[np.ix_(rows, rows)], A)        # <row_a, row_b> = a_ab
    ok, witness = is_hilbert_basis(mod, rows)
    assert ok, witness
    return MatrixModule(mod, X, arr, rows, index)


def qset_from_basis(X: PreHilbertModule, sigma) -> QSet:
    """The Q-set (sigma, <s, t>) induced by a Hilbert basis."""
    sigma = np.asarray(sigma, dtype=np.intp)
    ok, witness = is_hilbert_basis(X, sigma)
    if not ok:
        raise NotEnoughSections(witness)
    labels = [X.carrier.labels[int(s)] for s in sigma]
    qs = QSet(X.quantale, X.ip[np.ix_(sigma, sigma)], labels)
    ok, witness = is_qset(qs)
    assert ok, witness
    return qs


@dataclass
class RepresentationReport:
    """Canonical factorization X -> Q^Sigma A_Sigma and its verdict."""

    matrix_module: MatrixModule
    map: np.ndarray
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def representation_report(X: PreHilbertModule, sigma) -> RepresentationReport:
    """Check X ~ Q^Sigma A_Sigma via x |-> (<x,s>)_s for a verified basis."""
    sigma = np.asarray(sigma, dtype=np.intp)
    mm = module_from_qset(X.quantale, qset_from_basis(X, sigma))
    N = mm.module
    psi = np.array([mm.vector_index(X.ip[x, sigma]) for x in range(X.n)],
                   dtype=np.intp)
    checks = {
        "bijective": X.n == N.n and len(set(psi.tolist())) == X.n,
        "join": bool((psi[X.carrier.join_table]
                      == N.carrier.join_table[np.ix_(psi, psi)]).all()),
        "action": bool((psi[X.action]
                        == N.action[np.arange(X.quantale.n)[:, None], psi[None, :]]).all()),
        "unitary": bool((N.ip[np.ix_(psi, psi)] == X.ip).all()),
    }
    return RepresentationReport(mm, psi, checks)


def section_relation(mm: MatrixModule) -> QMatrix:
    """Rows-of-sections matrix R with R R* = A_X and R* R = A."""
    N = mm.module
    Q = N.quantale
    secs = hilbert_sections(N)
    R = QMatrix(Q, mm.vectors[secs])
    hat = QMatrix(Q, N.ip[np.ix_(secs, secs)])
    assert mat_mul(R, QMatrix(Q, Q.inv[R.data].T)) == hat
    assert mat_mul(QMatrix(Q, Q.inv[R.data].T), R) == mm.qset.A
    return R


def functor_M_object(X: PreHilbertModule) -> tuple[QSet, np.ndarray]:
    """M(X) = (Sigma_X, <s,t>) for a module with enough sections."""
    ok, secs, witness = has_enough_sections(X)
    if not ok:
        raise NotEnoughSections(witness)
    return qset_from_basis(X, secs), secs


def functor_M(phi: ModuleHom) -> QMatrix:
    """Matrix of a hom: rows over Sigma_target, columns over Sigma_source."""
    MX, secs_s = functor_M_object(phi.source)
    MY, secs_t = functor_M_object(phi.target)
    data = phi.target.ip[np.ix_(secs_t, phi.map[secs_s])]
    out = QMatrix(phi.target.quantale, data)
    ok, witness = is_relation(out, MX, MY)
    assert ok, witness
    return out


def hom_from_relation(mm: MatrixModule, Y: PreHilbertModule, H: QMatrix) -> ModuleHom:
    """The unique hom Q^I A -> Y whose matrix composed with the row
    relation of Q^I A reproduces H.

    phi(v) = join over s in I, t in Sigma_Y of v_s h_ts* t.
    """
    Q = Y.quantale
    MY, secs_t = functor_M_object(Y)
    ok, witness = is_relation(H, mm.qset, MY)
    if not ok:
        raise NotARelation(f"H is not a relation into M(Y): {witness}")
    k = mm.qset.size
    out = np.full(mm.module.n, Y.carrier.bottom, dtype=np.intp)
    for s in range(k):
        for t in range(len(secs_t)):
            scalar = Q.mul[mm.vectors[:, s], Q.inv[H.data[t, s]]]
            out = Y.carrier.join_table[out, Y.action[scalar, secs_t[t]]]
    phi = ModuleHom(mm.module, Y, out)
    ok, witness = is_module_hom(phi)
    assert ok, witness
    assert mat_mul(functor_M(phi), section_relation(mm)) == H
    return phi


@dataclass
class SupportedModule:
    """A verified supported module: sup(x) = <x,x> AND e, always stable."""

    module: PreHilbertModule
    sup: np.ndarray
    conditions: dict

    @property
    def stable(self) -> bool:
        return self.conditions["equivariance"]


def module_support(X: PreHilbertModule) -> SupportedModule:
    """Verify sup(x) = <x,x> AND e as a (stable) support on X.

    Raises SupportAxiomFails when an axiom breaks (possible for modules
    without enough sections); the downstream identities (agreement of the
    four stability conditions, the uniqueness formulas through <x,1>, the
    pointwise characterization of sup(x), and the a.1_X collapse chain)
    are theorems, so those are assertions.
    """
    Q = X.quantale
    srep = support(Q)
    if not (srep.supported and srep.stable):
        raise ValueError("module_support requires a stably supported quantale")
    lat, act, ip = X.carrier, X.action, X.ip
    e = Q.unit
    mt, jq = Q.lattice.meet_table, Q.lattice.join_table
    ar = np.arange(X.n, dtype=np.intp)
    diag = ip[ar, ar]
    supv = mt[diag, e]

    w = _first_bad(~Q.leq[supv, diag])
    if w is not None:
        raise SupportAxiomFails("below_inner", w)
    w = _first_bad(X.carrier.leq & ~Q.leq[supv[:, None], supv[None, :]])
    if w is not None:
        raise SupportAxiomFails("monotone", w)
    w = _first_bad(~lat.leq[ar, act[supv, ar]])
    if w is not None:
        raise SupportAxiomFails("restores", w)

    b_elems = np.flatnonzero(Q.leq[:, e])
    aq = np.arange(Q.n, dtype=np.intp)
    cond = {
        # sup(a x) = sup(a sup(x))
        "through_sup": bool((supv[act] == srep.sup[Q.mul[aq[:, None], supv[None, :]]]).all()),
        # sup(a x) <= sup(a)
        "bounded": bool(Q.leq[supv[act], srep.sup[:, None]].all()),
        # sup(a 1_X) <= sup(a)
        "top_bounded": bool(Q.leq[supv[act[:, lat.top]], srep.sup].all()),
        # sup(b x) = b AND sup(x) for b <= e
        "equivariance": bool((supv[act[b_elems]] == mt[np.ix_(b_elems, supv)]).all()),
    }
    vals = set(cond.values())
    assert len(vals) == 1, cond        # the four conditions are equivalent
    assert vals == {True}, cond        # and hold over a stably supported quantale

    top_ip = ip[:, lat.top]
    assert np.array_equal(supv, mt[top_ip, e])
    assert np.array_equal(Q.mul[supv], mt[top_ip])      # sup(x) a = <x,1> AND a
    assert np.array_equal(supv, srep.sup[diag])
    assert np.array_equal(supv, srep.sup[top_ip])
    assert bool(Q.leq[srep.sup[ip], supv[:, None]].all())   # sup(<x,y>) <= sup(x)

    # pointwise uniqueness: b <= <x,x> and x <= b x force b = sup(x)
    for b in b_elems:
        hits = Q.leq[b, diag] & lat.leq[ar, act[b]]
        assert (supv[hits] == b).all(), ("pointwise", int(b))

    t1 = act[:, lat.top]
    aa = Q.mul[aq, Q.inv]
    assert np.array_equal(t1, act[srep.sup, lat.top])
    assert np.array_equal(t1, act[aa, lat.top])
    assert np.array_equal(t1, act[Q.mul[aa, aq], lat.top])

    return SupportedModule(X, supv, cond)


@dataclass
class LocalSectionReport:
    local: np.ndarray        # Sigma^l, ascending carrier order
    hilbert: np.ndarray      # Sigma_X
    equal: bool


def local_sections(sm: SupportedModule) -> LocalSectionReport:
    """Sigma^l = {s : sup(x AND s) s <= x for all x}, checked two ways.

    Asserts the equivalence with the pointwise definition (sup(x)s = x for
    x <= s), downward closure, and Sigma_X subset Sigma^l; when the two
    coincide, each local section must be the join of the Hilbert sections
    below it.
    """
    X, supv = sm.module, sm.sup
    lat, act = X.carrier, X.action
    ar = np.arange(X.n, dtype=np.intp)
    local = []
    for s in range(X.n):
        if lat.leq[act[supv[lat.meet_table[:, s]], s], ar].all():
            local.append(s)
    direct_set = []
    for s in range(X.n):
        below = np.flatnonzero(lat.leq[:, s])
        if (act[supv[below], s] == below).all():
            direct_set.append(s)
    assert local == direct_set, (local, direct_set)

    local_arr = np.asarray(local, dtype=np.intp)
    in_local = np.zeros(X.n, dtype=bool)
    in_local[local_arr] = True
    for s in local_arr:                      # downward closure
        assert in_local[lat.leq[:, s]].all(), int(s)

    hil = hilbert_sections(X)
    assert in_local[hil].all()

    equal = len(hil) == len(local_arr)
    if equal:
        for s in local_arr:
            parts = [t for t in hil if lat.leq[t, s]]
            assert lat.join(parts) == s, int(s)
    return LocalSectionReport(local_arr, hil, equal)


@dataclass
class BridgeReport:
    """Singletons of (I,A) matched with Hilbert sections of Q^I A."""

    qset: QSet
    matrix_module: MatrixModule
    singleton_columns: list
    section_indices: np.ndarray
    pairing: list        # (singleton position, carrier index of its adjoint row)


def singleton_section_bridge(X: QSet, cap: int = 1 << 20) -> BridgeReport:
    """Two independent enumerations that must agree: S <-> S*.

    Every singleton column S of (I,A) must appear, adjointed, as a Hilbert
    section of Q^I A, bijectively, and the completion matrix must equal the
    inner products of the matched sections.
    """
    Q = X.Q
    comp = completion(X, cap=cap)
    sings = comp.singleton_list
    mm = module_from_qset(Q, X)
    secs = hilbert_sections(mm.module)
    sec_set = set(int(s) for s in secs)

    pairing = []
    for pos, s in enumerate(sings):
        vec = Q.inv[np.asarray(s.column, dtype=np.intp)]
        idx = mm.vector_index(vec)
        assert idx in sec_set, (pos, idx)
        pairing.append((pos, idx))
    idxs = [idx for _, idx in pairing]
    assert len(set(idxs)) == len(idxs)
    assert len(idxs) == len(secs), (len(idxs), len(secs))

    hat = comp.qset.A.data
    got = mm.module.ip[np.ix_(idxs, idxs)]
    assert np.array_equal(hat, got)

    zero = np.full(X.size, Q.bottom, dtype=np.intp)
    assert mm.vector_index(zero) == mm.module.carrier.bottom
    return BridgeReport(X, mm, [s.column for s in sings], secs, pairing)
