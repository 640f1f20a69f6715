"""Braidings of V = V(omega_1) and its dual, duality maps, and the S, S~, T operators.

A leg operator is stored column-wise: ``cols[in_index] = {out_index: coeff}``
where indices are tuples of basis labels 0..n-1, one per leg.  Leg types are
the strings ``"V"`` and ``"D"`` (for the dual V*).
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from .certificates import Certificate
from .qscalar import QContext

V, D = "V", "D"
DUAL = {V: D, D: V}

__all__ = [
    "V", "D", "LegOperator", "BraidingSet", "build_vector_braiding", "build_duality_maps",
    "build_mixed_braidings", "build_S_operators", "verify_matrix_identities", "Chain",
]


def _basis(sig, n):
    return itertools.product(range(n), repeat=len(sig))


def _addto(acc, key, c):
    v = acc.get(key)
    if v is None:
        acc[key] = c
    else:
        v = v + c
        if v:
            acc[key] = v
        else:
            del acc[key]


class LegOperator:
    """Exact sparse matrix between two typed leg signatures."""

    __slots__ = ("dom", "cod", "n", "cols", "name", "_inv")

    def __init__(self, dom, cod, n, cols, name=""):
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.n = n
        self.cols = {k: {o: c for o, c in v.items() if c} for k, v in cols.items()}
        self.name = name
        self._inv = None

    # construction helpers
    @classmethod
    def identity(cls, sig, n):
        return cls(sig, sig, n, {b: {b: mpq(1)} for b in _basis(sig, n)}, "id")

    @classmethod
    def from_function(cls, dom, cod, n, fn, name=""):
        return cls(dom, cod, n, {b: fn(b) for b in _basis(dom, n)}, name)

    @property
    def inverse(self):
        if self._inv is None:
            raise ValueError(f"operator {self.name!r} has no stored inverse")
        return self._inv

    def set_inverse(self, inv):
        if self.compose(inv) != LegOperator.identity(inv.dom, self.n) or \
                inv.compose(self) != LegOperator.identity(self.dom, self.n):
            raise ValueError(f"claimed inverse of {self.name!r} is wrong")
        self._inv = inv
        inv._inv = self

    # algebra
    def apply(self, vec, pos=0):
        """Act on legs pos.. of a sparse vector ``{index tuple: coeff}``."""
        k = len(self.dom)
        out = {}
        for idx, c in vec.items():
            col = self.cols.get(idx[pos:pos + k])
            if not col:
                continue
            head, tail = idx[:pos], idx[pos + k:]
            for o, d in col.items():
                _addto(out, head + o + tail, c * d)
        return out

    def compose(self, other):
        """self after other."""
        if other.cod != self.dom:
            raise ValueError(f"cannot compose {self.name} after {other.name}: signature mismatch")
        cols = {b: self.apply(col) for b, col in other.cols.items()}
        return LegOperator(other.dom, self.cod, self.n, cols, f"{self.name}*{other.name}")

    def scale(self, c):
        c = mpq(c)
        return LegOperator(self.dom, self.cod, self.n,
                           {b: {o: c * x for o, x in col.items()} for b, col in self.cols.items()},
                           self.name)

    def __add__(self, other):
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise ValueError("signature mismatch in operator sum")
        cols = {b: dict(col) for b, col in self.cols.items()}
        for b, col in other.cols.items():
            tgt = cols.setdefault(b, {})
            for o, c in col.items():
                _addto(tgt, o, c)
        return LegOperator(self.dom, self.cod, self.n, cols, self.name)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, LegOperator):
            return NotImplemented
        if (self.dom, self.cod) != (other.dom, other.cod):
            return False
        keys = set(self.cols) | set(other.cols)
        return all(self.cols.get(k, {}) == other.cols.get(k, {}) for k in keys)

    __hash__ = None

    def is_zero(self):
        return not any(self.cols.values())

    def residual_size(self):
        return sum(len(c) for c in self.cols.values())

    def nnz(self):
        return sum(len(c) for c in self.cols.values())

    def entry(self, out, inp):
        return self.cols.get(tuple(inp), {}).get(tuple(out), mpq(0))

    def __repr__(self):
        return f"LegOperator({self.name!r}, {self.dom}->{self.cod}, nnz={self.nnz()})"


class Chain:
    """A right-to-left product of operators placed at leg positions.

    ``Chain(sig)`` starts from the identity on ``sig``; ``.then(op, pos)``
    applies ``op`` on legs pos..pos+arity-1 (1-based, matching the
    usual subscript notation).  ``.matrix()`` realizes the composite as a LegOperator.
    """

    def __init__(self, sig, n):
        self.sig = tuple(sig)
        self.start = self.sig
        self.n = n
        self.steps = []

    def then(self, op, pos):
        p = pos - 1
        k = len(op.dom)
        if tuple(self.sig[p:p + k]) != op.dom:
            raise ValueError(f"{op.name} expects {op.dom} at legs {pos}.., found {self.sig[p:p + k]}")
        self.steps.append((op, p))
        self.sig = self.sig[:p] + op.cod + self.sig[p + k:]
        return self

    def run(self, vec):
        for op, p in self.steps:
            vec = op.apply(vec, p)
        return vec

    def matrix(self, name=""):
        cols = {b: self.run({b: mpq(1)}) for b in _basis(self.start, self.n)}
        return LegOperator(self.start, self.sig, self.n, cols, name)


def _dense_inverse(op):
    """Exact inverse by Gauss-Jordan on the dense matrix (small operators only)."""
    n = op.n
    dom = list(_basis(op.dom, n))
    cod = list(_basis(op.cod, n))
    if len(dom) != len(cod):
        raise ValueError("non-square operator")
    ci = {b: i for i, b in enumerate(cod)}
    m = len(dom)
    # rows of A indexed by cod, cols by dom; augment with identity
    a = [[mpq(0)] * m + [mpq(int(i == j)) for j in range(m)] for i in range(m)]
    for j, b in enumerate(dom):
        for o, c in op.cols.get(b, {}).items():
            a[ci[o]][j] = c
    for col in range(m):
        piv = next((r for r in range(col, m) if a[r][col]), None)
        if piv is None:
            raise ValueError(f"operator {op.name} is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        rowc = [x * inv for x in a[col]]
        a[col] = rowc
        nz = [k for k in range(2 * m) if rowc[k]]
        for r in range(m):
            if r != col and a[r][col]:
                f = a[r][col]
                row = a[r]
                for k in nz:
                    row[k] -= f * rowc[k]
    # inverse maps cod -> dom: column for cod basis vector i is a[:, m+i]
    cols = {}
    for i, o in enumerate(cod):
        cols[o] = {dom[r]: a[r][m + i] for r in range(m) if a[r][m + i]}
    return LegOperator(op.cod, op.dom, n, cols, op.name + "^-1")


def with_inverse(op, inv=None):
    op.set_inverse(inv if inv is not None else _dense_inverse(op))
    return op


# ---------------------------------------------------------------------------
# construction


def build_vector_braiding(ctx: QContext) -> LegOperator:
    n, q, t = ctx.n, ctx.q, ctx.t
    ti = 1 / t

    def col(b):
        i, j = b
        if i == j:
            return {(i, i): q * ti}
        if i < j:
            return {(j, i): ti}
        return {(j, i): ti, (i, j): (q - 1 / q) * ti}

    op = LegOperator.from_function((V, V), (V, V), n, col, "R_VV")
    return with_inverse(op)


@dataclass
class Duality:
    E: LegOperator  # V* (x) V -> 1
    Ep: LegOperator  # V (x) V* -> 1
    C: LegOperator  # 1 -> V (x) V*
    Cp: LegOperator  # 1 -> V* (x) V


def build_duality_maps(ctx: QContext) -> Duality:
    n = ctx.n
    w = [ctx.tp(ctx.w.rho_t(i)) for i in range(n)]
    E = LegOperator.from_function((D, V), (), n, lambda b: {(): mpq(1)} if b[0] == b[1] else {}, "E")
    Ep = LegOperator.from_function((V, D), (), n, lambda b: {(): w[b[0]]} if b[0] == b[1] else {}, "E'")
    C = LegOperator((), (V, D), n, {(): {(i, i): mpq(1) for i in range(n)}}, "C")
    Cp = LegOperator((), (D, V), n, {(): {(i, i): 1 / w[i] for i in range(n)}}, "C'")
    return Duality(E, Ep, C, Cp)


@dataclass
class BraidingSet:
    ctx: QContext
    R: dict  # (X, Y) -> LegOperator X (x) Y -> Y (x) X, inverses attached
    duality: Duality
    convention_record: dict = field(default_factory=dict)

    def br(self, x, y):
        return self.R[(x, y)]

    @property
    def E(self):
        return self.duality.E

    @property
    def Ep(self):
        return self.duality.Ep

    @property
    def C(self):
        return self.duality.C

    @property
    def Cp(self):
        return self.duality.Cp


def _cand_dv(M, n):
    """R_{V*,V}(f^a v_b) = sum_{d,k} M[(a,d),(b,k)] v_d f^k."""
    cols = {}
    for a, b in itertools.product(range(n), repeat=2):
        out = {}
        for k in range(n):
            for (a2, d), c in M.cols.get((b, k), {}).items():
                if a2 == a:
                    _addto(out, (d, k), c)
        cols[(a, b)] = out
    return LegOperator((D, V), (V, D), n, cols, "R_DV")


def _cand_vd(M, n, w):
    """R_{V,V*}(v_b f^c) = sum_{a,g} w_c/w_a M[(g,c),(a,b)] f^a v_g."""
    cols = {}
    for b, c in itertools.product(range(n), repeat=2):
        out = {}
        for a in range(n):
            for (g, c2), x in M.cols.get((a, b), {}).items():
                if c2 == c:
                    _addto(out, (a, g), x * w[c] / w[a])
        cols[(b, c)] = out
    return LegOperator((V, D), (D, V), n, cols, "R_VD")


def _cand_dd(N, n):
    """R_{V*,V*}(f^a f^b) = sum_{c,k} N[(a,c),(b,k)] f^c f^k for N: V* V -> V V*."""
    cols = {}
    for a, b in itertools.product(range(n), repeat=2):
        out = {}
        for k in range(n):
            for (a2, c), x in N.cols.get((b, k), {}).items():
                if a2 == a:
                    _addto(out, (c, k), x)
        cols[(a, b)] = out
    return LegOperator((D, D), (D, D), n, cols, "R_DD")


def _select(name, candidates, test):
    passing = [(label, op) for label, op in candidates if test(op)]
    if not passing:
        raise RuntimeError(f"no partial-dualization candidate for {name} satisfies naturality")
    if len(passing) > 1:
        first = passing[0][1]
        if all(op == first for _, op in passing[1:]):
            return passing[0][0] + " (candidates coincide)", first
        raise RuntimeError(f"both candidates for {name} satisfy naturality; convention ambiguous")
    return passing[0]


def build_mixed_braidings(ctx: QContext, Rvv: LegOperator | None = None,
                          duality: Duality | None = None) -> BraidingSet:
    n = ctx.n
    Rvv = Rvv or build_vector_braiding(ctx)
    dl = duality or build_duality_maps(ctx)
    w = [ctx.tp(ctx.w.rho_t(i)) for i in range(n)]
    record = {}

    def nat_eval(Rdw, Rvw, wleg):
        lhs = Chain((D, V, wleg), n).then(dl.E, 1).matrix()
        rhs = Chain((D, V, wleg), n).then(Rvw, 2).then(Rdw, 1).then(dl.E, 2).matrix()
        return lhs == rhs

    label, Rdv = _select("R_{V*,V}", [("from R^-1", _cand_dv(Rvv.inverse, n)),
                                      ("from R", _cand_dv(Rvv, n))],
                         lambda op: nat_eval(op, Rvv, V))
    record["R_{V*,V}"] = label
    with_inverse(Rdv)

    def nat_evalp(Rwd):
        lhs = Chain((V, V, D), n).then(dl.Ep, 2).matrix()
        rhs = Chain((V, V, D), n).then(Rvv, 1).then(Rwd, 2).then(dl.Ep, 1).matrix()
        return lhs == rhs

    label, Rvd = _select("R_{V,V*}", [("from R^-1", _cand_vd(Rvv.inverse, n, w)),
                                      ("from R", _cand_vd(Rvv, n, w))], nat_evalp)
    record["R_{V,V*}"] = label
    with_inverse(Rvd)

    label, Rdd = _select("R_{V*,V*}", [("from R_{V,V*}^-1", _cand_dd(Rvd.inverse, n)),
                                       ("from R_{V*,V}", _cand_dd(Rdv, n))],
                         lambda op: nat_eval(op, Rvd, D))
    record["R_{V*,V*}"] = label
    with_inverse(Rdd)

    R = {(V, V): Rvv, (V, D): Rvd, (D, V): Rdv, (D, D): Rdd}
    return BraidingSet(ctx, R, dl, record)


@dataclass
class SOperators:
    S: LegOperator  # on (V, V*, V)
    St: LegOperator  # on (V*, V, V*)
    T: LegOperator  # on (V, V*, V, V*)


def build_S_operators(ctx: QContext, bs: BraidingSet) -> SOperators:
    n = ctx.n
    Rvd, Rvv, Rdd = bs.br(V, D), bs.br(V, V), bs.br(D, D)
    S = Chain((V, D, V), n).then(Rvd.inverse, 2).then(Rvv, 1).then(Rvd, 2).matrix("S")
    Si = Chain((V, D, V), n).then(Rvd.inverse, 2).then(Rvv.inverse, 1).then(Rvd, 2).matrix("S^-1")
    S.set_inverse(Si)
    St = Chain((D, V, D), n).then(Rvd.inverse, 1).then(Rdd.inverse, 2).then(Rvd, 1).matrix("S~")
    Sti = Chain((D, V, D), n).then(Rvd.inverse, 1).then(Rdd, 2).then(Rvd, 1).matrix("S~^-1")
    St.set_inverse(Sti)
    T = Chain((V, D, V, D), n).then(St, 2).then(S, 1).matrix("T")
    Ti = Chain((V, D, V, D), n).then(Si, 1).then(Sti, 2).matrix("T^-1")
    T.set_inverse(Ti)
    return SOperators(S, St, T)


# ---------------------------------------------------------------------------
# identity suite


def _check(item, anchor, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    cert = Certificate(item, anchor, "PASS" if ok else "FAIL",
                       elapsed_ms=(time.perf_counter() - t0) * 1000.0)
    if detail:
        cert.payload.update(detail)
    return cert


def _eq(lhs, rhs):
    diff = lhs - rhs
    return diff.is_zero(), {"residual_nnz": diff.nnz()}


def verify_matrix_identities(ctx: QContext, bs: BraidingSet, so: SOperators | None = None):
    n = ctx.n
    so = so or build_S_operators(ctx, bs)
    R = bs.br
    E, Ep, C, Cp = bs.E, bs.Ep, bs.C, bs.Cp
    S, St, T = so.S, so.St, so.T
    ch = lambda sig: Chain(sig, n)  # noqa: E731
    certs = []

    def hecke(X):
        def fn():
            Rx = R(X, X)
            I = LegOperator.identity((X, X), n)
            a = Rx - I.scale(ctx.tp(ctx.w.omega_sq))
            b = Rx + I.scale(ctx.tp(ctx.w.omega_sq - ctx.w.alpha_sq))
            return a.compose(b).is_zero(), {}
        return fn

    certs.append(_check("matrix.hecke.VV", "Hecke relation, (R - q^(w,w))(R + q^((w,w)-(a,a))) = 0", hecke(V)))
    certs.append(_check("matrix.hecke.DD", "Hecke relation for the dual module", hecke(D)))

    snakes = [
        ("matrix.snake.E23C1", (V,), lambda: ch((V,)).then(C, 1).then(E, 2)),
        ("matrix.snake.E12C2", (D,), lambda: ch((D,)).then(C, 2).then(E, 1)),
        ("matrix.snake.Ep23Cp1", (D,), lambda: ch((D,)).then(Cp, 1).then(Ep, 2)),
        ("matrix.snake.Ep12Cp2", (V,), lambda: ch((V,)).then(Cp, 2).then(Ep, 1)),
    ]
    for item, sig, mk in snakes:
        certs.append(_check(item, "duality relations E23 C1 = id etc.",
                            lambda mk=mk, sig=sig: _eq(mk().matrix(), LegOperator.identity(sig, n))))

    for W in (V, D):
        tag = "V" if W == V else "Vd"
        nat = [
            ("eval1", lambda W=W: (ch((D, V, W)).then(E, 1),
                                   ch((D, V, W)).then(R(V, W), 2).then(R(D, W), 1).then(E, 2))),
            ("eval2", lambda W=W: (ch((W, D, V)).then(E, 2),
                                   ch((W, D, V)).then(R(W, D), 1).then(R(W, V), 2).then(E, 1))),
            ("eval3", lambda W=W: (ch((V, D, W)).then(Ep, 1),
                                   ch((V, D, W)).then(R(D, W), 2).then(R(V, W), 1).then(Ep, 2))),
            ("eval4", lambda W=W: (ch((W, V, D)).then(Ep, 2),
                                   ch((W, V, D)).then(R(W, V), 1).then(R(W, D), 2).then(Ep, 1))),
            ("coev1", lambda W=W: (ch((W,)).then(C, 1),
                                   ch((W,)).then(C, 2).then(R(W, V), 1).then(R(W, D), 2))),
            ("coev2", lambda W=W: (ch((W,)).then(C, 2),
                                   ch((W,)).then(C, 1).then(R(D, W), 2).then(R(V, W), 1))),
            ("coev3", lambda W=W: (ch((W,)).then(Cp, 1),
                                   ch((W,)).then(Cp, 2).then(R(W, D), 1).then(R(W, V), 2))),
            ("coev4", lambda W=W: (ch((W,)).then(Cp, 2),
                                   ch((W,)).then(Cp, 1).then(R(V, W), 2).then(R(D, W), 1))),
        ]
        for name, mk in nat:
            def fn(mk=mk):
                a, b = mk()
                return _eq(a.matrix(), b.matrix())
            certs.append(_check(f"matrix.naturality.{name}.{tag}",
                                "compatibility relations with the braiding", fn))

    cas = ctx.tp(ctx.w.casimir)
    certs.append(_check("matrix.twist.E", "E' = q^(l,l+2rho) E o R_{V,V*}",
                        lambda: _eq(Ep, ch((V, D)).then(R(V, D), 1).then(E, 1).matrix().scale(cas))))
    certs.append(_check("matrix.twist.C", "C' = q^(l,l+2rho) R_{V,V*} o C",
                        lambda: _eq(Cp, ch(()).then(C, 1).then(R(V, D), 1).matrix().scale(cas))))

    sig4 = (V, D, V, D)
    certs.append(_check("matrix.S.commute123_234", "S123 S~234 = S~234 S123",
                        lambda: _eq(ch(sig4).then(St, 2).then(S, 1).matrix(),
                                    ch(sig4).then(S, 1).then(St, 2).matrix())))
    sig5d = (D, V, D, V)
    certs.append(_check("matrix.S.commute234_345", "S~234 S345 = S345 S~234",
                        lambda: _eq(ch(sig5d).then(S, 2).then(St, 1).matrix(),
                                    ch(sig5d).then(St, 1).then(S, 2).matrix())))
    sig5 = (V, D, V, D, V)
    certs.append(_check("matrix.S.braid", "S123 S345 S123 = S345 S123 S345",
                        lambda: _eq(ch(sig5).then(S, 1).then(S, 3).then(S, 1).matrix(),
                                    ch(sig5).then(S, 3).then(S, 1).then(S, 3).matrix())))
    sig5t = (D, V, D, V, D)
    certs.append(_check("matrix.St.braid", "S~234 S~456 S~234 = S~456 S~234 S~456",
                        lambda: _eq(ch(sig5t).then(St, 1).then(St, 3).then(St, 1).matrix(),
                                    ch(sig5t).then(St, 3).then(St, 1).then(St, 3).matrix())))

    oo, aa = ctx.w.omega_sq, ctx.w.alpha_sq
    I3 = LegOperator.identity((V, D, V), n)
    I3t = LegOperator.identity((D, V, D), n)
    certs.append(_check("matrix.S.quadratic", "S = q^(2(w,w)-(a,a)) S^-1 + (1 - q^-(a,a)) q^(w,w)",
                        lambda: _eq(S, S.inverse.scale(ctx.tp(2 * oo - aa))
                                    + I3.scale((1 - ctx.tp(-aa)) * ctx.tp(oo)))))
    certs.append(_check("matrix.St.quadratic", "S~ = q^((a,a)-2(w,w)) S~^-1 + (1 - q^(a,a)) q^-(w,w)",
                        lambda: _eq(St, St.inverse.scale(ctx.tp(aa - 2 * oo))
                                    + I3t.scale((1 - ctx.tp(aa)) * ctx.tp(-oo)))))

    certs.append(_check("matrix.evalS.1", "E'12 S123 = q^(l,l+2rho) E23",
                        lambda: _eq(ch((V, D, V)).then(S, 1).then(Ep, 1).matrix(),
                                    ch((V, D, V)).then(E, 2).matrix().scale(cas))))
    certs.append(_check("matrix.evalS.2", "E'34 S~^-1_234 = q^(l,l+2rho) E23",
                        lambda: _eq(ch(sig4).then(St.inverse, 2).then(Ep, 3).matrix(),
                                    ch(sig4).then(E, 2).matrix().scale(cas))))

    sig6 = (V, D, V, D, V, D)
    certs.append(_check("matrix.T.braid", "T3456 T1234 T3456 = T1234 T3456 T1234",
                        lambda: _eq(ch(sig6).then(T, 3).then(T, 1).then(T, 3).matrix(),
                                    ch(sig6).then(T, 1).then(T, 3).then(T, 1).matrix())))
    certs.append(_check("matrix.T.eval", "E23 T3456 T1234 = T1234 E45",
                        lambda: _eq(ch(sig6).then(T, 1).then(T, 3).then(E, 2).matrix(),
                                    ch(sig6).then(E, 4).then(T, 1).matrix())))
    for c in certs:
        c.payload.setdefault("r", ctx.r)
    return certs
