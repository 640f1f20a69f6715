"""Tensor families of words in the generators p, dp, dbp.

A word is a tuple of integer letter codes.  The letter for generator ``sym``
with leg indices (i, j) is ``sym*n*n + i*n + j``; every letter carries the
leg pair (V, V*).  Consecutive one-form letters are always separated by a
tensor-over-B marker, and the position of that marker inside the intervening
run of p letters is immaterial (x p (x) y = x (x) p y), so markers are kept
implicit: a word is determined by its letter sequence alone.

A ``TensorFamily`` maps ``(ext_index, word)`` to an exact coefficient; the
external legs carry the free indices of a displayed expression such as
``S_123 p p``.  A family with no external legs is a single element.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

from gmpy2 import mpq

from .braiding import D, V, LegOperator

P, DP, DBP = 0, 1, 2
SYMBOLS = {"P": P, "DP": DP, "DBP": DBP}
SYMBOL_NAMES = {P: "p", DP: "dp", DBP: "dbp"}

__all__ = [
    "P", "DP", "DBP", "TensorFamily", "atom", "scalar", "mul", "otimes", "apply_leg_op",
    "contract", "insert", "normalize_bimodule_form", "Alphabet", "WordShape", "shape_of",
]


class Alphabet:
    """Letter encoding for a fixed module dimension n."""

    def __init__(self, n: int):
        self.n = n
        self.nn = n * n

    def code(self, sym: int, i: int, j: int) -> int:
        return sym * self.nn + i * self.n + j

    def sym(self, c: int) -> int:
        return c // self.nn

    def legs(self, c: int) -> tuple:
        r = c % self.nn
        return divmod(r, self.n)

    def decode(self, c: int) -> tuple:
        i, j = self.legs(c)
        return self.sym(c), i, j

    def is_p(self, c: int) -> bool:
        return c < self.nn

    def skeleton(self, word) -> tuple:
        nn = self.nn
        return tuple(c // nn for c in word if c >= nn)

    def bdeg(self, word) -> int:
        nn = self.nn
        return sum(1 for c in word if c < nn)

    def render(self, word) -> str:
        if not word:
            return "1"
        out = []
        for c in word:
            s, i, j = self.decode(c)
            if s != P and out:
                out.append("(x)")
            out.append(f"{SYMBOL_NAMES[s]}^{i + 1}{j + 1}")
        return " ".join(out)


class WordShape(tuple):
    """The symbol sequence of a word together with its marker positions."""

    @property
    def symbols(self):
        return tuple(self)

    @property
    def markers(self):
        ones = [k for k, s in enumerate(self) if s != P]
        return tuple(ones[1:])

    @property
    def degree(self):
        return len(self)


def shape_of(alpha: Alphabet, word) -> WordShape:
    return WordShape(alpha.sym(c) for c in word)


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


class TensorFamily:
    __slots__ = ("n", "ext", "data")

    def __init__(self, n: int, ext, data=None):
        self.n = n
        self.ext = tuple(ext)
        self.data = {} if data is None else data

    # arithmetic
    def copy(self):
        return TensorFamily(self.n, self.ext, dict(self.data))

    def __add__(self, other):
        if self.ext != other.ext:
            raise ValueError(f"cannot add families with legs {self.ext} and {other.ext}")
        d = dict(self.data)
        for k, c in other.data.items():
            _add(d, k, c)
        return TensorFamily(self.n, self.ext, d)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = mpq(c)
        if not c:
            return TensorFamily(self.n, self.ext)
        return TensorFamily(self.n, self.ext, {k: c * v for k, v in self.data.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, TensorFamily):
            return mul(self, other)
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, TensorFamily) and self.ext == other.ext and self.data == other.data

    __hash__ = None

    def is_zero(self):
        return not self.data

    def components(self):
        """Map ext index -> {word: coeff}."""
        out = defaultdict(dict)
        for (e, w), c in self.data.items():
            out[e][w] = c
        return dict(out)

    def component(self, *idx):
        return {w: c for (e, w), c in self.data.items() if e == tuple(idx)}

    def shapes(self):
        alpha = Alphabet(self.n)
        return sorted({shape_of(alpha, w) for (_, w) in self.data})

    def max_degree(self):
        return max((len(w) for (_, w) in self.data), default=0)

    def map_words(self, fn):
        """Replace every word w by the element fn(w) = {word: coeff}."""
        d = {}
        for (e, w), c in self.data.items():
            for w2, c2 in fn(w).items():
                _add(d, (e, w2), c * c2)
        return TensorFamily(self.n, self.ext, d)

    def dump(self) -> str:
        alpha = Alphabet(self.n)
        lines = [f"legs {''.join('V' if x == V else 'V*' for x in self.ext) or '()'}"]
        for (e, w), c in sorted(self.data.items()):
            idx = "".join(str(i + 1) for i in e)
            lines.append(f"[{idx}] {c} {alpha.render(w)}")
        return "\n".join(lines)

    def __repr__(self):
        return f"TensorFamily(legs={self.ext}, terms={len(self.data)})"


def atom(sym, n: int) -> TensorFamily:
    s = SYMBOLS[sym] if isinstance(sym, str) else sym
    alpha = Alphabet(n)
    data = {((i, j), (alpha.code(s, i, j),)): mpq(1) for i in range(n) for j in range(n)}
    return TensorFamily(n, (V, D), data)


def scalar(c, n: int) -> TensorFamily:
    return TensorFamily(n, (), {((), ()): mpq(c)} if c else {})


def mul(a: TensorFamily, b: TensorFamily) -> TensorFamily:
    d = {}
    for (ea, wa), ca in a.data.items():
        for (eb, wb), cb in b.data.items():
            _add(d, (ea + eb, wa + wb), ca * cb)
    return TensorFamily(a.n, a.ext + b.ext, d)


# with implicit markers the tensor-over-B product is juxtaposition
otimes = mul


def apply_leg_op(f: TensorFamily, op: LegOperator, position: int) -> TensorFamily:
    """Apply ``op`` on external legs position.. (1-based).

    Operators with empty domain insert legs at (position, position+1); those
    with empty codomain contract; later legs renumber accordingly.
    """
    p = position - 1
    k = len(op.dom)
    if p < 0 or p + k > len(f.ext) or (k == 0 and p > len(f.ext)):
        raise ValueError("leg position out of range")
    if f.ext[p:p + k] != op.dom:
        raise ValueError(f"{op.name} expects legs {op.dom} at {position}, found {f.ext[p:p + k]}")
    d = {}
    cols = op.cols
    for (e, w), c in f.data.items():
        col = cols.get(e[p:p + k])
        if not col:
            continue
        head, tail = e[:p], e[p + k:]
        for o, x in col.items():
            _add(d, (head + o + tail, w), c * x)
    return TensorFamily(f.n, f.ext[:p] + op.cod + f.ext[p + k:], d)


def contract(f: TensorFamily, pairing: LegOperator, position: int) -> TensorFamily:
    if pairing.cod != ():
        raise ValueError("contract expects an evaluation map")
    return apply_leg_op(f, pairing, position)


def insert(f: TensorFamily, co: LegOperator, position: int) -> TensorFamily:
    if co.dom != ():
        raise ValueError("insert expects a coevaluation map")
    return apply_leg_op(f, co, position)


def normalize_bimodule_form(f: TensorFamily, rules, direction: str = "right", max_steps: int = 10**7):
    """Move every p letter out of the interior of the word.

    ``rules`` maps a letter pair (a, b) to the element {word: coeff} that
    replaces it: for ``direction="right"`` the pairs are (p, one-form), for
    ``"left"`` they are (one-form, p).  Since every replacement is an
    instance of a right-module relation, the result equals the input in the
    quotient.
    """
    n = f.n
    alpha = Alphabet(n)
    if direction not in ("left", "right"):
        raise ValueError("direction must be 'left' or 'right'")

    def find(word):
        for k in range(len(word) - 1):
            a, b = word[k], word[k + 1]
            if direction == "right" and alpha.is_p(a) and not alpha.is_p(b):
                return k
            if direction == "left" and not alpha.is_p(a) and alpha.is_p(b):
                return k
        return None

    memo = {}

    def norm(word):
        if word in memo:
            return memo[word]
        k = find(word)
        if k is None:
            res = {word: mpq(1)}
        else:
            res = {}
            for rep, c in rules[(word[k], word[k + 1])].items():
                for w2, c2 in norm(word[:k] + rep + word[k + 2:]).items():
                    _add(res, w2, c * c2)
        memo[word] = res
        return res

    return f.map_words(norm)


def rules_from_family(fam: TensorFamily, left_sym: int, right_sym: int):
    """Read a rewrite table off a 4-leg family whose component (a,b,c,d) is
    the replacement for the letter pair (left_sym^{ab}, right_sym^{cd})."""
    alpha = Alphabet(fam.n)
    rules = {}
    n = fam.n
    comps = fam.components()
    for a, b, c, d in itertools.product(range(n), repeat=4):
        key = (alpha.code(left_sym, a, b), alpha.code(right_sym, c, d))
        rules[key] = comps.get((a, b, c, d), {})
    return rules
