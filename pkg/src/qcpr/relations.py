"""Defining relations, bounded-degree consequence spans and zero testing.

The span is never materialized over the full word space.  Instead the
quotient is built as a tower of left modules

    B  ->  B (x) G1  ->  (B (x) G1) (x)_B G2  ->  ...

where each level is the previous quotient tensored with the free module on
one generator family, divided by the left-module relations of that
generator.  Words are evaluated left to right: a p letter acts on the right
through the right-module relations (which move it to the far left), and a
one-form letter moves the element to the next level.  Every row added to an
eliminator is a sum of relation instances in context, so a zero normal form
is a proof of membership in the ideal.  Levels are filtered by the number of
p letters; the bound on that number is the degree budget.

A 2-form slot (s, s+1) merges the levels for both orderings of a mixed pair
into one space and adds the wedge generators there.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from .braiding import D, V, BraidingSet, SOperators, build_mixed_braidings, build_S_operators
from .certificates import Certificate
from .elim import Eliminator
from .qscalar import QContext
from .wordspace import (
    DBP, DP, P, Alphabet, TensorFamily, apply_leg_op, atom, contract, mul,
    normalize_bimodule_form, rules_from_family, scalar,
)

__all__ = [
    "RelationSet", "build_relations", "Engine", "DegreeOverflow", "SpanBudgetExceeded", "MembershipVerdict",
    "build_span", "is_zero", "spans_mutually_contain", "metric_families", "sigma_pair_families",
    "CORE_NAMES", "engine_for", "clear_engines", "decide",
]

CORE_NAMES = ("A1", "A2", "A3", "C1", "C2", "C3", "C4", "R1", "R2", "EV1", "EV2", "EV3", "EV4")


class DegreeOverflow(Exception):
    pass


class SpanBudgetExceeded(MemoryError):
    """A quotient space outgrew the column budget."""


def _add(acc, key, c):
    v = acc.get(key)
    if v is None:
        if c:
            acc[key] = c
    else:
        v = v + c
        if v:
            acc[key] = v
        else:
            del acc[key]


# ---------------------------------------------------------------------------
# relation families


def metric_families(ctx: QContext, bs: BraidingSet):
    n = ctx.n
    dp, dbp = atom(DP, n), atom(DBP, n)
    g_pm = contract(contract(mul(dp, dbp), bs.E, 2), bs.Ep, 1)
    g_mp = contract(contract(mul(dbp, dp), bs.E, 2), bs.Ep, 1)
    return g_pm, g_mp


def sigma_pair_families(ctx: QContext, bs: BraidingSet, so: SOperators):
    """Component (a,b,c,d) of family (X, Y) is sigma(X^{ab} (x) Y^{cd})."""
    n = ctx.n
    tp = ctx.tp
    aa, oo, o2r = ctx.w.alpha_sq, ctx.w.omega_sq, ctx.w.omega_2rho
    p, dp, dbp = atom(P, n), atom(DP, n), atom(DBP, n)
    g_pm, g_mp = metric_families(ctx, bs)
    S, St = so.S, so.St

    def SSt(f, s_inv=False, st_inv=False):
        f = apply_leg_op(f, St.inverse if st_inv else St, 2)
        return apply_leg_op(f, S.inverse if s_inv else S, 1)

    out = {
        (DP, DP): SSt(mul(dp, dp)).scale(tp(aa)),
        (DBP, DBP): SSt(mul(dbp, dbp)).scale(tp(-aa)),
        (DP, DBP): SSt(mul(dbp, dp), st_inv=True).scale(tp(2 * aa - 2 * oo))
        + mul(mul(p, g_mp), p).scale((1 - tp(aa)) * tp(aa) * tp(-o2r)),
        (DBP, DP): SSt(mul(dp, dbp), s_inv=True).scale(tp(2 * oo - 2 * aa))
        + mul(mul(p, g_pm), p).scale((1 - tp(-aa)) * tp(-o2r)),
    }
    return out


def _core_families(ctx, bs, so):
    n = ctx.n
    tp = ctx.tp
    aa, oo, o2r = ctx.w.alpha_sq, ctx.w.omega_sq, ctx.w.omega_2rho
    p, dp, dbp = atom(P, n), atom(DP, n), atom(DBP, n)
    S, St = so.S, so.St
    pp, pdp, pdbp = mul(p, p), mul(p, dp), mul(p, dbp)
    f = {}
    f["A1"] = apply_leg_op(pp, S, 1) - pp.scale(tp(oo))
    f["A2"] = apply_leg_op(pp, St, 2) - pp.scale(tp(-oo))
    f["A3"] = contract(p, bs.Ep, 1) - scalar(tp(o2r), n)
    f["C1"] = apply_leg_op(pdp, St, 2) - pdp.scale(tp(-oo))
    f["C2"] = contract(dp, bs.Ep, 1)
    f["C3"] = apply_leg_op(pdbp, S, 1) - pdbp.scale(tp(oo))
    f["C4"] = contract(dbp, bs.Ep, 1)
    f["R1"] = mul(dp, p) - apply_leg_op(pdp, S, 1).scale(tp(aa - oo))
    f["R2"] = mul(dbp, p) - apply_leg_op(pdbp, St, 2).scale(tp(oo - aa))
    f["EV1"] = contract(pdp, bs.E, 2)
    f["EV2"] = contract(mul(dp, p), bs.E, 2) - dp
    f["EV3"] = contract(pdbp, bs.E, 2) - dbp
    f["EV4"] = contract(mul(dbp, p), bs.E, 2)
    return f


def _hk_families(ctx, bs, so):
    n = ctx.n
    tp = ctx.tp
    aa, oo, o2r = ctx.w.alpha_sq, ctx.w.omega_sq, ctx.w.omega_2rho
    p, dp, dbp = atom(P, n), atom(DP, n), atom(DBP, n)
    Rvv, Rdd, Rvd = bs.br(V, V), bs.br(D, D), bs.br(V, D)
    T = so.T
    X = apply_leg_op(mul(dp, dp), Rvd.inverse, 2)
    Y = apply_leg_op(mul(dbp, dbp), Rvd.inverse, 2)
    f = {
        "HK1": apply_leg_op(X, Rvv, 1) + X.scale(tp(oo - aa)),
        "HK2": apply_leg_op(X, Rdd, 3) - X.scale(tp(oo)),
        "HK3": apply_leg_op(Y, Rvv, 1) - Y.scale(tp(oo)),
        "HK4": apply_leg_op(Y, Rdd, 3) + Y.scale(tp(oo - aa)),
    }
    tail = contract(apply_leg_op(mul(mul(p, dp), dbp), T.inverse, 3), bs.Ep, 3)
    f["HK5"] = (mul(dbp, dp) + apply_leg_op(mul(dp, dbp), T.inverse, 1).scale(tp(-aa))
                - tail.scale(tp(-aa) * tp(-o2r)))
    return f


def _sigma_wedge_families(ctx, bs, so):
    n = ctx.n
    sig = sigma_pair_families(ctx, bs, so)
    atoms = {DP: atom(DP, n), DBP: atom(DBP, n)}
    out = {}
    for (x, y), fam in sig.items():
        name = {(DP, DP): "IS++", (DBP, DBP): "IS--", (DP, DBP): "IS+-", (DBP, DP): "IS-+"}[(x, y)]
        out[name] = mul(atoms[x], atoms[y]) + fam
    return out


def _templates(fam: TensorFamily):
    return [el for _, el in sorted(fam.components().items()) if el]


class RelationSet:
    """Relation families plus the derived rewrite tables and row templates."""

    def __init__(self, ctx: QContext, bs: BraidingSet, so: SOperators, tier: str = "core",
                 wedge: str = "none", extra=None):
        if tier not in ("core", "extended", "noev"):
            raise ValueError(f"unknown tier {tier}")
        if wedge not in ("none", "HK", "sigma"):
            raise ValueError(f"unknown wedge variant {wedge}")
        self.ctx, self.bs, self.so = ctx, bs, so
        self.tier, self.wedge_kind = tier, wedge
        self.n = ctx.n
        self.alpha = Alphabet(ctx.n)
        fams = _core_families(ctx, bs, so)
        self.core = {k: fams[k] for k in CORE_NAMES}
        self.extended = {}
        if tier == "extended":
            p = atom(P, self.n)
            self.extended["PROJ"] = contract(mul(p, p), bs.E, 2) - p
        if extra:
            self.extended.update(extra)
        if wedge == "HK":
            self.wedge = _hk_families(ctx, bs, so)
        elif wedge == "sigma":
            self.wedge = _sigma_wedge_families(ctx, bs, so)
        else:
            self.wedge = {}

        n, tp = self.n, ctx.tp
        aa, oo = ctx.w.alpha_sq, ctx.w.omega_sq
        p, dp, dbp = atom(P, n), atom(DP, n), atom(DBP, n)
        # G p -> p G  (right module relations read left to right)
        self.move_left = {}
        self.move_left.update(rules_from_family(apply_leg_op(mul(p, dp), so.S, 1).scale(tp(aa - oo)), DP, P))
        self.move_left.update(rules_from_family(apply_leg_op(mul(p, dbp), so.St, 2).scale(tp(oo - aa)), DBP, P))
        # p G -> G p  (inverse direction, via T^-1)
        self.move_right = {}
        self.move_right.update(rules_from_family(apply_leg_op(mul(dp, p), so.T.inverse, 1).scale(tp(-aa)), P, DP))
        self.move_right.update(rules_from_family(apply_leg_op(mul(dbp, p), so.T.inverse, 1).scale(tp(aa)), P, DBP))

        use_ev = tier != "noev"
        self.b_templates = []
        for k in ("A1", "A2", "A3"):
            self.b_templates += _templates(self.core[k])
        left = lambda f: normalize_bimodule_form(f, self.move_left, "left")  # noqa: E731
        self.g_templates = {DP: [], DBP: []}
        for k in ("C1", "C2") + (("EV1", "EV2") if use_ev else ()):
            self.g_templates[DP] += _templates(left(self.core[k]))
        for k in ("C3", "C4") + (("EV3", "EV4") if use_ev else ()):
            self.g_templates[DBP] += _templates(left(self.core[k]))
        # extra true relations, sorted by skeleton
        self.extra_templates = {}
        for fam in self.extended.values():
            for el in _templates(left(fam)):
                sk = {self.alpha.skeleton(w) for w in el}
                if len(sk) != 1:
                    raise ValueError("extra relations must have a single skeleton")
                self.extra_templates.setdefault(sk.pop(), []).append(el)
        self.wedge_templates = {}
        for fam in self.wedge.values():
            for el in _templates(fam):
                key = _pair_key(self.alpha, el)
                self.wedge_templates.setdefault(key, []).append(el)

    def families(self):
        out = dict(self.core)
        out.update(self.extended)
        out.update(self.wedge)
        return out


def _pair_key(alpha, el):
    sks = {alpha.skeleton(w) for w in el}
    for sk in sks:
        if len(sk) != 2:
            raise ValueError("wedge generators must be degree two in one-forms")
    return tuple(sorted(sks.pop()))


def build_relations(ctx: QContext, bs: BraidingSet | None = None, tier: str = "core",
                    wedge: str = "none", so: SOperators | None = None, extra=None) -> RelationSet:
    bs = bs or build_mixed_braidings(ctx)
    so = so or build_S_operators(ctx, bs)
    return RelationSet(ctx, bs, so, tier, wedge, extra)


# ---------------------------------------------------------------------------
# quotient spaces


class _Space:
    """One level of the tower at a fixed bound m on the number of p letters."""

    def __init__(self, eng, m, key, wedge=None):
        self.eng = eng
        self.wedge = wedge
        self.m = m
        self.key = key
        self.alpha = eng.alpha
        self.std = {}
        self.rebuilds = 0
        self.rows = 0
        self._right = {}
        self.elim = Eliminator(eng.order)
        self.done = False
        self._mono = {}

    MONO_MAX = 200_000

    def reduce(self, vec):
        if not self.done:
            return self.elim.reduce(vec)
        # finished space: reduction is linear, so reuse reduced monomials
        piv = self.elim.piv
        out = {}
        for k, c in vec.items():
            if k not in piv:
                _add(out, k, c)
                continue
            r = self._mono.get(k)
            if r is None:
                if len(self._mono) >= self.MONO_MAX:
                    self._mono.clear()
                r = self.elim.reduce({k: mpq(1)})
                self._mono[k] = r
            for y, d in r.items():
                _add(out, y, c * d)
        return out

    def dim(self):
        return sum(len(v) for v in self.std.values())

    def ambient(self):
        return self.dim() + self.elim.rank

    # growth loop shared by all spaces
    def _build(self):
        extras = []
        bdeg = self.alpha.bdeg
        j0 = 0
        while True:
            found = self._run_levels(extras, j0)
            if found is None:
                self.done = True
                return
            extras.extend(found)
            self.rebuilds += 1
            # levels below the lowest new relation replay identically, so keep them
            j0 = min(d for d, _ in found)
            el = Eliminator(self.eng.order)
            el.piv = {k: v for k, v in self.elim.piv.items() if bdeg(k) < j0}
            el._nk = self.elim._nk
            self.elim = el
            self.std = {j: v for j, v in self.std.items() if j < j0}
            self._right = {}

    def _run_levels(self, extras, j0=0):
        templates = self._templates()
        bdeg = self.alpha.bdeg
        for j in range(j0, self.m + 1):
            self._open_level(j)
            rows = []
            for start, el, dr in templates:
                if j - dr < 0:
                    continue
                for x in start.std.get(j - dr, ()):
                    rows.append(self.eng.eval_element(start, x, el, self.wedge))
            base = self.eng.base(self.m)
            for d, el in extras:
                if j >= d:
                    for b in base.std.get(j - d, ()):
                        rows.append(self.eng.eval_element(base, b, el, self.wedge))
            found = []
            for row in rows:
                self.rows += 1
                lead = self.elim.insert(row)
                if lead is not None and bdeg(lead) < j:
                    found.append(lead)
            if found:
                # lower-degree consequences appeared: restart with them as relations
                return [(bdeg(ld), dict(self.elim.piv[ld])) for ld in found]
            self._close_level(j)
            # cached right actions may hold monomials that became pivots at this level
            self._right = {k: self.reduce(v) for k, v in self._right.items()}
        return None

    def right(self, mono, pc):
        key = (mono, pc)
        r = self._right.get(key)
        if r is None:
            r = self._right_raw(mono, pc)
            self._right[key] = r
        return r


class BSpace(_Space):
    def __init__(self, eng, m):
        super().__init__(eng, m, ("B",))

    def _templates(self):
        rels = self.eng.rels
        els = rels.b_templates + rels.extra_templates.get((), [])
        return [(self, el, max(len(w) for w in el)) for el in els]

    def _open_level(self, j):
        if j == 0:
            self.std[0] = [()]

    def _close_level(self, j):
        if j == 0:
            self.std[0] = [m for m in self.std[0] if m not in self.elim.piv]
            return
        piv = self.elim.piv
        self.std[j] = [s + (a,) for s in self.std[j - 1] for a in self.eng.pletters
                       if s + (a,) not in piv]

    def _right_raw(self, mono, pc):
        if len(mono) + 1 > self.m:
            raise DegreeOverflow(f"p-degree {len(mono) + 1} exceeds bound {self.m}")
        return self.reduce({mono + (pc,): mpq(1)})


class ModSpace(_Space):
    """parents: {skeleton of x: (parent space, one-form symbol appended)}."""

    def __init__(self, eng, m, key, parents, wedge_start=None, wedge_pair=None):
        super().__init__(eng, m, key, key[2] if key[0] == "wedge" else None)
        self.parents = parents
        self.wedge_start = wedge_start
        self.wedge_pair = wedge_pair
        self._only = next(iter(parents.values()))[0] if len(parents) == 1 else None

    def _templates(self):
        eng, rels = self.eng, self.eng.rels
        out = []
        bdeg = self.alpha.bdeg
        for (sp, gsym) in self.parents.values():
            for el in rels.g_templates[gsym]:
                out.append((sp, el, max(bdeg(w) for w in el)))
            if eng.closure and sp is eng.base(self.m):
                # the B-relations placed to the right of a lone generator
                for el in rels.b_templates:
                    for g in eng.gletters[gsym]:
                        shifted = {(g,) + w: c for w, c in el.items()}
                        out.append((sp, shifted, max(bdeg(w) for w in shifted)))
        sk = self.key_skeleton()
        base = eng.base(self.m)
        for el in rels.extra_templates.get(sk, ()):
            out.append((base, el, max(bdeg(w) for w in el)))
        if self.wedge_start is not None:
            for el in rels.wedge_templates.get(self.wedge_pair, ()):
                out.append((self.wedge_start, el, max(bdeg(w) for w in el)))
        return out

    def key_skeleton(self):
        return self.key[-1] if self.key[0] == "plain" else None

    def _open_level(self, j):
        pass

    def _close_level(self, j):
        piv = self.elim.piv
        out = []
        for (sp, gsym) in self.parents.values():
            for x in sp.std.get(j, ()):
                for g in self.eng.gletters[gsym]:
                    mono = x + (g,)
                    if mono not in piv:
                        out.append(mono)
        self.std[j] = out

    def _parent_of(self, x):
        if self._only is not None:
            return self._only
        return self.parents[self.alpha.skeleton(x)][0]

    def _right_raw(self, mono, pc):
        x, g = mono[:-1], mono[-1]
        sp = self._parent_of(x)
        acc = {}
        for rep, c in self.eng.rels.move_left[(g, pc)].items():
            pp, g2 = rep
            for y, d in sp.right(x, pp).items():
                _add(acc, y + (g2,), c * d)
        return self.reduce(acc)


@dataclass
class SpanStats:
    bound: int
    ambient: int
    rank: int
    rows: int
    rebuilds: int
    build_ms: float


class Engine:
    """Registry of quotient spaces for one relation set."""

    WCACHE_MAX = 400_000

    def __init__(self, rels: RelationSet, max_columns: int | None = None, closure: bool = False):
        self.rels = rels
        self.closure = closure
        self.alpha = rels.alpha
        n = rels.n
        self.pletters = [self.alpha.code(P, i, j) for i in range(n) for j in range(n)]
        self.gletters = {s: [self.alpha.code(s, i, j) for i in range(n) for j in range(n)]
                         for s in (DP, DBP)}
        self.spaces = {}
        self._wcache = {}
        self._lookup = {}
        self.max_columns = max_columns
        self.build_ms = 0.0
        nn = self.alpha.nn

        def order(w):
            return (-sum(1 for c in w if c < nn), tuple(-c for c in w))

        self.order = order

    def _make(self, key, fn):
        sp = self.spaces.get(key)
        if sp is None:
            t0 = time.perf_counter()
            sp = fn()
            self.spaces[key] = sp
            try:
                sp._build()
            except BaseException:
                del self.spaces[key]
                raise
            self.build_ms += (time.perf_counter() - t0) * 1000.0
            if self.max_columns is not None and sp.ambient() > self.max_columns:
                del self.spaces[key]
                self._lookup.clear()
                raise SpanBudgetExceeded(f"span budget exceeded: {sp.ambient()} columns at {key}")
        return sp

    def base(self, m):
        return self._make(("B", m), lambda: BSpace(self, m))

    def space(self, m, skel, wedge=None):
        """Quotient for words with the given one-form skeleton.

        ``wedge`` is the 1-based slot s of a 2-form occupying one-form
        positions (s, s+1), or None.
        """
        skel = tuple(skel)
        hit = self._lookup.get((m, skel, wedge))
        if hit is not None and hit.done:
            return hit
        sp = self._space(m, skel, wedge)
        if sp.done:
            self._lookup[(m, skel, wedge)] = sp
        return sp

    def _space(self, m, skel, wedge):
        if not skel:
            return self.base(m)
        if wedge is None or len(skel) < wedge + 1:
            key = ("plain", m, skel)
            return self._make(key, lambda: ModSpace(
                self, m, key, {skel[:-1]: (self.space(m, skel[:-1], wedge), skel[-1])}))
        s = wedge
        pair = tuple(sorted(skel[s - 1:s + 1]))
        canon = skel[:s - 1] + pair + skel[s + 1:]
        key = ("wedge", self.rels.wedge_kind, s, m, canon)
        if len(skel) == s + 1:
            variants = {pair, pair[::-1]}
            parents = {}
            for v in variants:
                pre = skel[:s - 1] + v
                parents[pre[:-1]] = (self.space(m, pre[:-1], wedge), pre[-1])
            start = self.space(m, skel[:s - 1], wedge)
            return self._make(key, lambda: ModSpace(self, m, key, parents, start, pair))
        return self._make(key, lambda: ModSpace(
            self, m, key, {canon[:-1]: (self.space(m, skel[:-1], wedge), skel[-1])}))

    def eval_element(self, start, x, el, wedge=None):
        """Normal form of sum_w c * (x . w) for a std monomial x of ``start``."""
        acc = {}
        target = None
        for w, c in el.items():
            sp, vec = self.eval_from(start, x, w, wedge)
            if target is None:
                target = sp
            elif sp is not target:
                raise ValueError("element mixes quotient spaces")
            for k, d in vec.items():
                _add(acc, k, c * d)
        if target is None:
            return {}
        # rows for a space under construction are reduced once, on insertion
        return target.reduce(acc) if target.done else acc

    def eval_from(self, start, x, word, wedge=None):
        sp, vec = start, {x: mpq(1)}
        skel = self.alpha.skeleton(x)
        m = start.m
        is_p = self.alpha.is_p
        sym = self.alpha.sym
        for a in word:
            if is_p(a):
                acc = {}
                for y, c in vec.items():
                    for z, d in sp.right(y, a).items():
                        _add(acc, z, c * d)
                vec = acc
            else:
                skel = skel + (sym(a),)
                nxt = self.space(m, skel, wedge)
                vec = {y + (a,): c for y, c in vec.items()}
                if nxt.done:
                    vec = nxt.reduce(vec)
                sp = nxt
        return sp, vec

    def word_form(self, w, m, wedge=None):
        """Cached normal form of a single word; spaces never change once built."""
        key = (m, wedge, w)
        hit = self._wcache.get(key)
        if hit is None:
            if len(self._wcache) >= self.WCACHE_MAX:
                self._wcache.clear()
            hit = self.eval_from(self.base(m), (), w, wedge)
            self._wcache[key] = hit
        return hit

    def _act(self, sp, vec, a, m, wedge):
        if self.alpha.is_p(a):
            acc = {}
            for y, c in vec.items():
                for z, d in sp.right(y, a).items():
                    _add(acc, z, c * d)
            return sp, acc
        skel = self.alpha.skeleton(next(iter(vec))) + (self.alpha.sym(a),)
        nxt = self.space(m, skel, wedge)
        return nxt, nxt.reduce({y + (a,): c for y, c in vec.items()})

    def _forms(self, element, m, wedge):
        # words sharing a suffix are reduced together: the shared letters act
        # once on the reduced sum of the prefixes
        is_p = self.alpha.is_p
        groups = {}

        def put(sp, vec, c=1):
            acc = groups.setdefault(id(sp), (sp, {}))[1]
            for k, d in vec.items():
                _add(acc, k, c * d)

        by_last = {}
        for w, c in element.items():
            if all(is_p(a) for a in w):
                sp, vec = self.word_form(w, m, wedge)
                put(sp, vec, c)
            else:
                _add(by_last.setdefault(w[-1], {}), w[:-1], c)
        for a, sub in by_last.items():
            for sp, vec in self._forms(sub, m, wedge):
                if vec:
                    put(*self._act(sp, vec, a, m, wedge))
        out = []
        for sp, acc in groups.values():
            r = sp.reduce(acc)
            if r:
                out.append((sp, r))
        return out

    def normal_form(self, element, m, wedge=None):
        """Normal forms of an element, one per quotient space it touches."""
        return self._forms(element, m, wedge)

    def clear(self):
        self.spaces.clear()
        self._wcache.clear()
        self._lookup.clear()

    def stats(self):
        amb = sum(sp.ambient() for sp in self.spaces.values())
        rank = sum(sp.elim.rank for sp in self.spaces.values())
        rows = sum(sp.rows for sp in self.spaces.values())
        reb = sum(sp.rebuilds for sp in self.spaces.values())
        return amb, rank, rows, reb


# ---------------------------------------------------------------------------
# zero testing


@dataclass
class MembershipVerdict:
    status: str  # ZERO or INCONCLUSIVE
    degree_used: int
    span_dimension: int
    word_space: int
    elapsed_ms: float
    residual_terms: int = 0
    note: str = ""

    @property
    def zero(self):
        return self.status == "ZERO"


@dataclass
class ConsequenceSpan:
    rels: RelationSet
    D: int
    engine: Engine


_ENGINES = {}


def engine_for(rels: RelationSet, max_columns=None) -> Engine:
    key = id(rels)
    eng = _ENGINES.get(key)
    if eng is None or eng.rels is not rels:
        eng = Engine(rels, max_columns)
        _ENGINES[key] = eng
    return eng


def clear_engines():
    """Drop every cached quotient space; they are rebuilt on demand."""
    for eng in _ENGINES.values():
        eng.clear()


def build_span(rels: RelationSet, D: int, max_columns=None) -> ConsequenceSpan:
    return ConsequenceSpan(rels, D, engine_for(rels, max_columns))


def _one_forms(fam):
    a = Alphabet(fam.n)
    ks = {len(a.skeleton(w)) for (_, w) in fam.data}
    return max(ks) if ks else 0


def is_zero(e: TensorFamily, span: ConsequenceSpan, wedge: int | None = None) -> MembershipVerdict:
    """Component-wise membership test of ``e`` at total degree ``span.D``."""
    t0 = time.perf_counter()
    eng = span.engine
    k = _one_forms(e)
    m = span.D - k
    if m < 0 or e.max_degree() > span.D:
        return MembershipVerdict("INCONCLUSIVE", span.D, 0, 0, 0.0, note="degree overflow: raise D")
    residual = 0
    try:
        for _, el in e.components().items():
            for sp, r in eng.normal_form(el, m, wedge):
                residual += len(r)
    except (DegreeOverflow, SpanBudgetExceeded) as exc:
        return MembershipVerdict("INCONCLUSIVE", span.D, 0, 0,
                                 (time.perf_counter() - t0) * 1000.0, note=f"{exc}; raise D")
    amb, rank, _, _ = eng.stats()
    status = "ZERO" if residual == 0 else "INCONCLUSIVE"
    return MembershipVerdict(status, span.D, rank, amb, (time.perf_counter() - t0) * 1000.0, residual)


def decide(e: TensorFamily, rels: RelationSet, wedge=None, extra_degree=0, retries=4,
           start_degree=None):
    """Zero test at the candidate degree, raised step by step up to +4."""
    base = start_degree if start_degree is not None else e.max_degree() + extra_degree
    v = None
    for step in range(retries + 1):
        v = is_zero(e, build_span(rels, base + step), wedge)
        if v.zero:
            return v
    return v


def spans_mutually_contain(rels_a: RelationSet, rels_b: RelationSet, D: int | None = None) -> Certificate:
    t0 = time.perf_counter()
    worst = 0
    verdicts = []
    for src, dst in ((rels_a, rels_b), (rels_b, rels_a)):
        for name, fam in src.wedge.items():
            if D is None:
                v = decide(fam, dst, wedge=1)
            else:
                v = is_zero(fam, build_span(dst, D), wedge=1)
            verdicts.append((f"{src.wedge_kind}:{name} in {dst.wedge_kind}", v))
            worst = max(worst, v.degree_used)
    ok = all(v.zero for _, v in verdicts)
    cert = Certificate("calculus.presentation.containment",
                       "wedge generators of each variant lie in the span of the other",
                       "ZERO" if ok else "INCONCLUSIVE",
                       elapsed_ms=(time.perf_counter() - t0) * 1000.0, degree=worst)
    cert.payload["items"] = {k: v.status for k, v in verdicts}
    return cert
