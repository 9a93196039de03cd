"""Eta-quotient expansions and partition generating functions.

``f_t`` denotes ``prod_{n>=1} (1 - q^{nt})``.  Every eta-quotient here is
built from powers of ``f_1`` (pentagonal closed form) dilated by ``q -> q^t``.
"""

from __future__ import annotations

import re
import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .series import PrecisionError, TruncatedLaurentSeries, invert, mul

__all__ = [
    "EtaQuotient",
    "PartitionFunction",
    "euler_power",
    "euler_product_naive",
    "expand_eta",
    "parse_eta",
    "partition_gf",
    "pentagonal_f1",
]


# ---------------------------------------------------------------------------
# f_1
# ---------------------------------------------------------------------------

def generalized_pentagonals(limit: int):
    """Yield ``(n, sign)`` for generalized pentagonal ``n < limit`` in increasing order."""
    if limit <= 0:
        return
    yield 0, 1
    j = 1
    while True:
        sign = -1 if j % 2 else 1
        a = j * (3 * j - 1) // 2
        b = j * (3 * j + 1) // 2
        if a >= limit:
            return
        yield a, sign
        if b < limit:
            yield b, sign
        j += 1


def pentagonal_f1(prec: int, modulus: int | None = None) -> TruncatedLaurentSeries:
    """``f_1`` on ``[0, prec)`` from Euler's pentagonal number theorem."""
    if prec < 1:
        raise PrecisionError("prec must be >= 1")
    dtype = np.int64 if modulus is not None and modulus < (1 << 31) else object
    out = np.zeros(prec, dtype=dtype)
    for n, sign in generalized_pentagonals(prec):
        out[n] = sign if modulus is None else sign % modulus
    return TruncatedLaurentSeries(out, 0, modulus)


def euler_product_naive(prec: int, t: int = 1, exponent: int = 1) -> TruncatedLaurentSeries:
    """``f_t^exponent`` by multiplying out ``(1 - q^{nt})`` one factor at a time.

    Quadratic; kept as an independent oracle for the fast paths.
    """
    coeffs = [0] * prec
    coeffs[0] = 1
    for n in range(1, (prec - 1) // t + 1):
        step = n * t
        for _ in range(abs(exponent)):
            if exponent > 0:
                for i in range(prec - 1, step - 1, -1):
                    coeffs[i] -= coeffs[i - step]
            else:
                for i in range(step, prec):
                    coeffs[i] += coeffs[i - step]
    return TruncatedLaurentSeries.from_coeffs(coeffs)


class _PowerCache:
    """Bounded memo of ``f_1^e`` per (e, modulus); keeps the longest expansion."""

    def __init__(self, maxsize: int = 16):
        self.maxsize = maxsize
        self._data: OrderedDict[tuple[int, int | None], TruncatedLaurentSeries] = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key, prec):
        with self._lock:
            s = self._data.get(key)
            if s is None or s.prec < prec:
                return None
            self._data.move_to_end(key)
            return s

    def put(self, key, s):
        with self._lock:
            old = self._data.get(key)
            if old is not None and old.prec >= s.prec:
                return
            self._data[key] = s
            self._data.move_to_end(key)
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)

    def clear(self):
        with self._lock:
            self._data.clear()


_POWERS = _PowerCache()


def euler_power(e: int, prec: int, modulus: int | None = None) -> TruncatedLaurentSeries:
    """``f_1^e`` on ``[0, prec)``, memoized."""
    if prec < 1:
        raise PrecisionError("prec must be >= 1")
    if e == 0:
        return TruncatedLaurentSeries.one(prec, modulus)
    if e == 1:
        return pentagonal_f1(prec, modulus)
    key = (e, modulus)
    hit = _POWERS.get(key, prec)
    if hit is not None:
        return hit if hit.prec == prec else hit.truncate(prec)
    if e == -1:
        result = invert(pentagonal_f1(prec, modulus))
    elif e < 0:
        result = _power_from(euler_power(-1, prec, modulus), -e)
    else:
        result = _power_from(pentagonal_f1(prec, modulus), e)
    _POWERS.put(key, result)
    return result


def _power_from(base: TruncatedLaurentSeries, e: int) -> TruncatedLaurentSeries:
    result = None
    while True:
        if e & 1:
            result = base if result is None else mul(result, base)
        e >>= 1
        if not e:
            return result
        base = mul(base, base)


# ---------------------------------------------------------------------------
# eta-quotients
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"^\s*(?:f(\d+)|q)\s*(?:\^\s*\(?\s*([+-]?\d+)\s*\)?)?\s*$")


@dataclass(frozen=True)
class EtaQuotient:
    """``q^offset * prod f_t^{e_t}``; factors are merged by ``t`` and sorted."""

    factors: tuple[tuple[int, int], ...] = ()
    offset: int = 0

    def __init__(self, factors=(), offset: int = 0):
        merged: dict[int, int] = {}
        items = factors.items() if isinstance(factors, dict) else factors
        for t, e in items:
            t, e = int(t), int(e)
            if t < 1:
                raise ValueError(f"eta scale must be >= 1, got {t}")
            merged[t] = merged.get(t, 0) + e
        object.__setattr__(self, "factors",
                           tuple(sorted((t, e) for t, e in merged.items() if e != 0)))
        object.__setattr__(self, "offset", int(offset))

    @classmethod
    def f(cls, t: int, e: int = 1) -> EtaQuotient:
        return cls(((t, e),))

    def __mul__(self, other: EtaQuotient) -> EtaQuotient:
        return EtaQuotient(self.factors + other.factors, self.offset + other.offset)

    def __truediv__(self, other: EtaQuotient) -> EtaQuotient:
        return self * other ** -1

    def __pow__(self, n: int) -> EtaQuotient:
        return EtaQuotient(tuple((t, e * n) for t, e in self.factors), self.offset * n)

    def shift(self, s: int) -> EtaQuotient:
        return EtaQuotient(self.factors, self.offset + s)

    def exponent_of(self, t: int) -> int:
        return dict(self.factors).get(t, 0)

    def __str__(self) -> str:
        parts = []
        if self.offset:
            parts.append(f"q^{self.offset}" if self.offset != 1 else "q")
        for t, e in self.factors:
            parts.append(f"f{t}" if e == 1 else f"f{t}^{e}")
        return "*".join(parts) if parts else "1"


def parse_eta(text: str) -> EtaQuotient:
    """Parse ``q^-1*f1^8*f4^-8``-style products (tokens joined by ``*``)."""
    text = text.strip()
    if text in ("", "1"):
        return EtaQuotient()
    factors = []
    offset = 0
    for tok in text.split("*"):
        if tok.strip() == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"cannot parse eta-quotient token {tok!r}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        if m.group(1) is None:
            offset += e
        else:
            factors.append((int(m.group(1)), e))
    return EtaQuotient(factors, offset)


def expand_eta(spec: EtaQuotient | str, prec: int,
               modulus: int | None = None) -> TruncatedLaurentSeries:
    """q-expansion of an eta-quotient, known on ``[offset, prec)``."""
    if isinstance(spec, str):
        spec = parse_eta(spec)
    n = prec - spec.offset
    if n < 1:
        raise PrecisionError(f"prec {prec} leaves no coefficients above q^{spec.offset}")
    result = None
    for t, e in spec.factors:
        inner = euler_power(e, -(-n // t), modulus).dilate(t).truncate(n)
        result = inner if result is None else mul(result, inner)
    if result is None:
        result = TruncatedLaurentSeries.one(n, modulus)
    return result.shift(spec.offset)


# ---------------------------------------------------------------------------
# partition generating functions
# ---------------------------------------------------------------------------

_PF_PATTERNS = [
    (re.compile(r"^(?:overpartition|pbar)$"), "overpartition"),
    (re.compile(r"^p_?\(?([+-]?\d+)\)?$"), "p_k"),
    (re.compile(r"^(?:a|t_?core)_?\(?(\d+)\)?$"), "t_core"),
    (re.compile(r"^(?:b|l_?regular|regular)_?\(?(\d+)\)?$"), "l_regular"),
]


@dataclass(frozen=True)
class PartitionFunction:
    """A named coefficient function: ``p_k``, overpartitions, t-cores, l-regular."""

    kind: str
    param: int | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind == "p_k":
            if self.param is None:
                raise ValueError("p_k needs an exponent")
        elif self.kind in ("t_core", "l_regular"):
            if self.param is None or self.param < 2:
                raise ValueError(f"{self.kind} needs a parameter >= 2")
        elif self.kind == "overpartition":
            if self.param is not None:
                raise ValueError("overpartition takes no parameter")
        else:
            raise ValueError(f"unknown partition function kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> PartitionFunction:
        t = text.strip().lower()
        for pat, kind in _PF_PATTERNS:
            m = pat.match(t)
            if m:
                return cls(kind, int(m.group(1)) if m.groups() else None)
        raise ValueError(f"unknown partition function {text!r}")

    def eta(self) -> EtaQuotient:
        if self.kind == "p_k":
            return EtaQuotient.f(1, self.param)
        if self.kind == "overpartition":
            return EtaQuotient(((2, 1), (1, -2)))
        if self.kind == "t_core":
            return EtaQuotient(((self.param, self.param), (1, -1)))
        return EtaQuotient(((self.param, 1), (1, -1)))

    @property
    def name(self) -> str:
        if self.kind == "p_k":
            return f"p_{self.param}"
        if self.kind == "overpartition":
            return "pbar"
        if self.kind == "t_core":
            return f"a_{self.param}"
        return f"b_{self.param}"

    def __str__(self) -> str:
        return self.name


def partition_gf(kind: PartitionFunction | str, prec: int,
                 modulus: int | None = None) -> TruncatedLaurentSeries:
    """Generating function of a partition function on ``[0, prec)``."""
    if isinstance(kind, str):
        kind = PartitionFunction.parse(kind)
    return expand_eta(kind.eta(), prec, modulus)


def is_generalized_pentagonal(n: int) -> bool:
    """``n = j(3j-1)/2`` for some integer ``j``, i.e. ``24n+1`` is a square of ``6j-1``."""
    d = 24 * n + 1
    r = isqrt(d)
    return r * r == d and r % 6 in (1, 5)
