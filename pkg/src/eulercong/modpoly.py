"""Laurent polynomials in a Hauptmodul and the symbolic U_2{T^n}, U_3{Y^n}.

The four eta-quotients involved are

    S = f_1^24 / (q f_2^24),   T = f_1^8 / (q f_4^8),
    X = f_1^12 / (q f_3^12),   Y = f_1^3 / (q f_9^3),

tied together by the modular equations ``S(q^2) = T^2 + 16 T`` and
``X(q^3) = Y^3 + 9 Y^2 + 27 Y``.  Applying ``U_p`` to these turns powers of
``T`` (resp. ``Y``) into integer Laurent polynomials in ``S`` (resp. ``X``),
computed here by the recurrences the modular equations imply.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .dissect import op_U
from .eta import EtaQuotient, expand_eta
from .series import TruncatedLaurentSeries

__all__ = [
    "HAUPTMODULN",
    "HauptPoly",
    "degree_bounds",
    "eval_haupt",
    "modular_equation_sides",
    "numeric_u_poly",
    "u2_poly",
    "u3_poly",
    "u_poly",
    "verify_modular_equation",
]

# Hauptmodul eta-quotients keyed by symbol
HAUPTMODULN: dict[str, EtaQuotient] = {
    "S": EtaQuotient(((1, 24), (2, -24)), -1),
    "T": EtaQuotient(((1, 8), (4, -8)), -1),
    "X": EtaQuotient(((1, 12), (3, -12)), -1),
    "Y": EtaQuotient(((1, 3), (9, -3)), -1),
}

# modular equation: lower-order coefficients of the polynomial in T (or Y)
MODULAR_EQUATIONS = {
    2: ("S", "T", (16,)),       # S(q^2) = T^2 + 16 T
    3: ("X", "Y", (27, 9)),     # X(q^3) = Y^3 + 9 Y^2 + 27 Y
}


@dataclass(frozen=True)
class HauptPoly:
    """Sparse integer Laurent polynomial in one symbol (``S`` or ``X``)."""

    variable: str
    terms: tuple[tuple[int, int], ...] = ()

    def __init__(self, variable: str, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def constant(cls, variable: str, c: int) -> HauptPoly:
        return cls(variable, {0: c})

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coeff(self, e: int) -> int:
        return self.as_dict().get(e, 0)

    @property
    def exponents(self) -> list[int]:
        return [e for e, _ in self.terms]

    def __add__(self, other: HauptPoly) -> HauptPoly:
        self._same(other)
        return HauptPoly(self.variable, self.terms + other.terms)

    def __sub__(self, other: HauptPoly) -> HauptPoly:
        return self + other * -1

    def __mul__(self, c: int) -> HauptPoly:
        return HauptPoly(self.variable, tuple((e, c * v) for e, v in self.terms))

    __rmul__ = __mul__

    def shift(self, j: int) -> HauptPoly:
        """Multiply by ``variable^j``."""
        return HauptPoly(self.variable, tuple((e + j, c) for e, c in self.terms))

    def _same(self, other: HauptPoly):
        if self.variable != other.variable:
            raise ValueError(f"cannot mix {self.variable} and {other.variable}")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in sorted(self.terms, key=lambda t: -abs(t[0])):
            if e == 0:
                body = str(abs(c))
            else:
                mono = self.variable if e == 1 else f"{self.variable}^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            out.append(body if not out and c > 0 else
                       f"-{body}" if not out else f" {sign} {body}")
        return "".join(out)

    def to_json(self) -> dict:
        return {"variable": self.variable,
                "terms": {str(e): c for e, c in self.terms}}


class _Memo:
    """Table of ``U_p{base^n}`` grown outward from the base cases on demand."""

    def __init__(self, variable: str, bases: dict[int, dict[int, int]], low_coeffs: tuple[int, ...]):
        self.variable = variable
        self.order = len(low_coeffs) + 1
        self.low = low_coeffs
        self.table = {n: HauptPoly(variable, t) for n, t in bases.items()}
        self.lock = threading.Lock()

    def get(self, n: int) -> HauptPoly:
        with self.lock:
            d = self.order
            if n >= 0:
                top = max(k for k in self.table if k >= 0)
                for j in range(top + 1, n + 1):
                    # base^j = H(q^p) base^(j-d) - sum_i c_i base^(j-d+i)
                    acc = self.table[j - d].shift(1)
                    for i, c in enumerate(self.low, start=1):
                        acc = acc - self.table[j - d + i] * c
                    self.table[j] = acc
            else:
                bottom = min(self.table)
                for j in range(bottom - 1, n - 1, -1):
                    # H(q^p) base^j = base^(j+d) + sum_i c_i base^(j+i)
                    acc = self.table[j + d]
                    for i, c in enumerate(self.low, start=1):
                        acc = acc + self.table[j + i] * c
                    self.table[j] = acc.shift(-1)
            return self.table[n]


_U2 = _Memo("S", {0: {0: 1}, 1: {0: -8}, -1: {-1: 8}, -2: {-2: 128, -1: 1}}, (16,))
_U3 = _Memo("X", {0: {0: 1}, 1: {0: -3}, 2: {0: 9},
                  -1: {-1: 9}, -2: {-1: 6, -2: 243}},
            (27, 9))


def u2_poly(n: int) -> HauptPoly:
    """``U_2{T^n}`` as a Laurent polynomial in ``S``."""
    return _U2.get(n)


def u3_poly(n: int) -> HauptPoly:
    """``U_3{Y^n}`` as a Laurent polynomial in ``X``."""
    return _U3.get(n)


def u_poly(p: int, n: int) -> HauptPoly:
    if p == 2:
        return u2_poly(n)
    if p == 3:
        return u3_poly(n)
    raise ValueError(f"no modular equation for p={p}")


def degree_bounds(p: int, n: int) -> tuple[int, int]:
    """Inclusive exponent range allowed for ``U_p{base^n}``."""
    if n >= 0:
        return 0, n // p
    return n, -1


def eval_haupt(poly: HauptPoly, prec: int, modulus: int | None = None) -> TruncatedLaurentSeries:
    """Substitute the q-expansion of ``S`` (or ``X``) into ``poly``; known up to ``prec``."""
    base = HAUPTMODULN[poly.variable]
    if not poly.terms:
        return TruncatedLaurentSeries.zero(modulus)
    total = None
    for e, c in poly.terms:
        term = expand_eta(base ** e, prec, modulus).scale(c)
        total = term if total is None else total + term
    return total


def power_series_of(symbol: str, n: int, prec: int,
                    modulus: int | None = None) -> TruncatedLaurentSeries:
    """q-expansion of ``symbol^n`` for a Hauptmodul symbol, known up to ``prec``."""
    return expand_eta(HAUPTMODULN[symbol] ** n, prec, modulus)


def modular_equation_sides(order: int, prec: int, coefficients: tuple[int, ...] | None = None):
    """Both sides of the order-2 or order-3 modular equation as exact series.

    ``coefficients`` overrides the lower-order constants, e.g. ``(15,)`` to
    perturb ``16`` in the order-2 equation.
    """
    big, small, default = MODULAR_EQUATIONS[order]
    coeffs = default if coefficients is None else tuple(coefficients)
    lhs = expand_eta(_dilated(big, order), prec)
    rhs = power_series_of(small, order, prec)
    for i, c in enumerate(coeffs, start=1):
        rhs = rhs + power_series_of(small, i, prec).scale(c)
    return lhs, rhs


def _dilated(symbol: str, p: int) -> EtaQuotient:
    """The eta-quotient of ``symbol(q^p)``."""
    q = HAUPTMODULN[symbol]
    return EtaQuotient(tuple((t * p, e) for t, e in q.factors), q.offset * p)


def verify_modular_equation(order: int, prec: int,
                            coefficients: tuple[int, ...] | None = None) -> bool:
    """True iff the modular equation holds on every coefficient both sides know."""
    if prec < 10:
        raise ValueError("prec must be >= 10")
    lhs, rhs = modular_equation_sides(order, prec, coefficients)
    return (lhs - rhs).is_zero()


def numeric_u_poly(p: int, n: int, prec: int, modulus: int | None = None) -> TruncatedLaurentSeries:
    """``U_p`` applied to the q-expansion of ``T^n`` (p=2) or ``Y^n`` (p=3)."""
    symbol = {2: "T", 3: "Y"}[p]
    return op_U(p, power_series_of(symbol, n, prec, modulus))
