"""Incremental exact sparse row reduction.

Rows are ``{monomial: coeff}`` dicts.  Each pivot row is normalized so that
its leading monomial (the largest under the supplied priority) has
coefficient 1, and every other monomial in it is strictly smaller.  Full
reduction against such a set is canonical: the reduced vector is supported
on non-pivot monomials only, and it is zero exactly when the input lies in
the row span.
"""

from __future__ import annotations

from heapq import heapify, heappop, heappush


class Eliminator:
    __slots__ = ("piv", "order", "_nk", "rows_seen")

    def __init__(self, order):
        # order(m) -> sortable key, smallest = eliminated first
        self.piv = {}
        self.order = order
        self._nk = {}
        self.rows_seen = 0

    def _neg(self, m):
        k = self._nk.get(m)
        if k is None:
            k = self.order(m)
            self._nk[m] = k
        return k

    def reduce(self, vec):
        piv = self.piv
        v = dict(vec)
        nk = self._neg
        heap = [(nk(m), m) for m in v if m in piv]
        if not heap:
            return v
        heapify(heap)
        while heap:
            _, m = heappop(heap)
            c = v.pop(m, None)
            if c is None:
                continue
            for k, x in piv[m].items():
                if k == m:
                    continue
                old = v.get(k)
                if old is None:
                    v[k] = -c * x
                    if k in piv:
                        heappush(heap, (nk(k), k))
                else:
                    nv = old - c * x
                    if nv:
                        v[k] = nv
                    else:
                        del v[k]
        return v

    def insert(self, vec):
        """Add a row; returns its new leading monomial or None if dependent."""
        self.rows_seen += 1
        v = self.reduce(vec)
        if not v:
            return None
        nk = self._neg
        lead = min(v, key=nk)
        inv = 1 / v[lead]
        row = {m: c * inv for m, c in v.items()}
        self.piv[lead] = row
        return lead

    @property
    def rank(self):
        return len(self.piv)
