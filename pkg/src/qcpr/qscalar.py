"""Exact scalars in the deformation parameter and weight data of V(omega_1).

Everything is expressed through integer powers of t, where q = t**n and
n = r + 1.  A pairing value x in the weight lattice becomes the t-exponent
n*x, which is always an integer for the data used here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

__all__ = ["QContext", "WeightData", "make_context", "qnum", "qpow", "to_fraction", "to_mpq"]


def to_mpq(x) -> mpq:
    if isinstance(x, str):
        return mpq(Fraction(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def to_fraction(x) -> Fraction:
    x = mpq(x)
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass(frozen=True)
class WeightData:
    """Pairings of the weights of V, all in t-units (multiplied by n)."""

    n: int
    pairing_diag: tuple  # pairing_diag[i][j] = n*delta_ij - 1
    rho_pairing: tuple  # (lambda_i, 2 rho) as a plain integer, i = 1..n
    omega_sq: int  # (omega, omega) in t-units
    omega_2rho: int  # (omega, 2 rho) in t-units
    alpha_sq: int  # (alpha, alpha) in t-units
    casimir: int  # (omega, omega + 2 rho) in t-units

    def rho_t(self, i: int) -> int:
        """t-exponent of q^{(lambda_i, 2 rho)}, with i 0-based."""
        return self.n * self.rho_pairing[i]


def _weights(r: int) -> WeightData:
    n = r + 1
    diag = tuple(tuple(n * (i == j) - 1 for j in range(n)) for i in range(n))
    rho = tuple(n + 1 - 2 * i for i in range(1, n + 1))
    return WeightData(
        n=n,
        pairing_diag=diag,
        rho_pairing=rho,
        omega_sq=r,
        omega_2rho=r * n,
        alpha_sq=2 * n,
        casimir=r + r * n,
    )


@dataclass(frozen=True)
class QContext:
    r: int
    t: mpq
    n: int = field(init=False)
    q: mpq = field(init=False)
    w: WeightData = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "n", self.r + 1)
        object.__setattr__(self, "q", self.t ** self.n)
        object.__setattr__(self, "w", _weights(self.r))

    def tp(self, e: int) -> mpq:
        """t**e for an integer exponent."""
        if e >= 0:
            return self.t ** e
        return 1 / self.t ** (-e)

    @property
    def classical(self) -> bool:
        return self.t == 1

    @property
    def label(self) -> str:
        return f"r={self.r},t={to_fraction(self.t)}"

    # frequently used named scalars
    def q_oo(self, k: int = 1) -> mpq:
        return self.tp(k * self.w.omega_sq)

    def q_aa(self, k: int = 1) -> mpq:
        return self.tp(k * self.w.alpha_sq)

    def q_o2r(self, k: int = 1) -> mpq:
        return self.tp(k * self.w.omega_2rho)

    def qdim(self) -> mpq:
        return sum((self.tp(self.w.rho_t(i)) for i in range(self.n)), mpq(0))


def make_context(r: int, t) -> QContext:
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise ValueError(f"rank must be a positive integer, got {r!r}")
    tv = to_mpq(t)
    if tv == 0:
        raise ValueError("t must be nonzero")
    return QContext(r, tv)


def qpow(ctx: QContext, exponent_in_t_units: int) -> Fraction:
    if int(exponent_in_t_units) != exponent_in_t_units:
        raise ValueError("exponent must be an integer number of t-units")
    return to_fraction(ctx.tp(int(exponent_in_t_units)))


def qnum(ctx: QContext, x: int) -> Fraction:
    """The q-number [x]_q, with the limit value x at q = 1."""
    q = ctx.q
    if q == 1:
        return Fraction(x)
    if q == -1:
        raise ValueError("[x]_q undefined at q = -1")
    qx = q ** x if x >= 0 else 1 / q ** (-x)
    return to_fraction((qx - 1 / qx) / (q - 1 / q))

