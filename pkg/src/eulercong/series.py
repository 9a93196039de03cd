"""Truncated Laurent series over Z or Z/mZ.

A series knows its coefficients on the exponent window ``[min_exp, prec)``.
Coefficients below ``min_exp`` are zero; coefficients at or above ``prec``
are unknown.  Every operation propagates that window honestly, so when two
series compare equal they are equal on exactly the exponents both know.

Multiplication uses Kronecker substitution: both coefficient vectors are
packed into one big integer, multiplied with GMP, and unpacked again.  That
keeps products of length 10^6 (mod m) well under a second.
"""

from __future__ import annotations

import builtins
from dataclasses import dataclass

import gmpy2
import numpy as np

__all__ = [
    "DomainError",
    "PrecisionError",
    "TruncatedLaurentSeries",
    "add",
    "invert",
    "mul",
    "pow",
    "reduce_mod",
]

# mod-m coefficients live in int64 arrays below this bound, object arrays above
_INT64_MODULUS_LIMIT = 1 << 31
_SCHOOLBOOK_CUTOFF = 24


class DomainError(ValueError):
    """Operands live in different coefficient domains, or a value is not a unit."""


class PrecisionError(ValueError):
    """An operation would produce an empty window of known coefficients."""


def _dtype_for(modulus: int | None):
    if modulus is not None and modulus < _INT64_MODULUS_LIMIT:
        return np.int64
    return object


def _as_array(values, modulus: int | None) -> np.ndarray:
    if modulus is None:
        arr = np.array([int(v) for v in values], dtype=object)
    else:
        arr = np.array([int(v) % modulus for v in values], dtype=object)
        if modulus < _INT64_MODULUS_LIMIT:
            arr = arr.astype(np.int64)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    return arr


@dataclass(frozen=True, eq=False)
class TruncatedLaurentSeries:
    """Coefficients of ``sum c_e q^e`` for ``min_exp <= e < min_exp + len(coeffs)``.

    ``modulus`` is ``None`` for exact integer coefficients, otherwise every
    stored coefficient is the least nonnegative residue mod ``modulus``.
    A series with no stored coefficients is the exact zero series, known to
    infinite precision.
    """

    coeffs: np.ndarray
    min_exp: int = 0
    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise DomainError(f"modulus must be >= 2, got {self.modulus}")
        self.coeffs.setflags(write=False)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, values, min_exp: int = 0, modulus: int | None = None):
        return cls(_as_array(values, modulus), int(min_exp), modulus)

    @classmethod
    def zero(cls, modulus: int | None = None):
        """The exact zero series (empty window, infinite precision)."""
        return cls(np.zeros(0, dtype=_dtype_for(modulus)), 0, modulus)

    @classmethod
    def monomial(cls, exp: int, prec: int, coeff: int = 1, modulus: int | None = None):
        """``coeff * q^exp`` known on ``[exp, prec)``."""
        if prec <= exp:
            raise PrecisionError(f"monomial q^{exp} needs prec > {exp}")
        vals = [0] * (prec - exp)
        vals[0] = coeff
        return cls.from_coeffs(vals, exp, modulus)

    @classmethod
    def one(cls, prec: int, modulus: int | None = None):
        return cls.monomial(0, prec, 1, modulus)

    # -- basic properties ---------------------------------------------------

    @property
    def prec(self) -> int:
        """Exclusive upper bound on known exponents."""
        return self.min_exp + len(self.coeffs)

    @property
    def is_exact_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def exact(self) -> bool:
        return self.modulus is None

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, exp: int) -> int:
        if self.is_exact_zero or exp < self.min_exp:
            return 0
        if exp >= self.prec:
            raise PrecisionError(f"coefficient of q^{exp} unknown (prec {self.prec})")
        return int(self.coeffs[exp - self.min_exp])

    def items(self):
        """Yield ``(exponent, coefficient)`` over the known window."""
        for i, c in enumerate(self.coeffs.tolist()):
            yield self.min_exp + i, int(c)

    def to_list(self) -> list[int]:
        return [int(c) for c in self.coeffs.tolist()]

    def window(self) -> tuple[int, int] | None:
        return None if self.is_exact_zero else (self.min_exp, self.prec)

    def __repr__(self) -> str:
        dom = "Z" if self.modulus is None else f"Z/{self.modulus}"
        if self.is_exact_zero:
            return f"TruncatedLaurentSeries(0 over {dom})"
        head = ", ".join(str(c) for c in self.to_list()[:8])
        more = ", ..." if len(self) > 8 else ""
        return (f"TruncatedLaurentSeries([{head}{more}] on "
                f"[{self.min_exp}, {self.prec}) over {dom})")

    # -- structural helpers -------------------------------------------------

    def _check_domain(self, other: TruncatedLaurentSeries):
        if self.modulus != other.modulus:
            raise DomainError(
                f"coefficient domains differ: {self.modulus!r} vs {other.modulus!r}")

    def _new(self, coeffs: np.ndarray, min_exp: int) -> TruncatedLaurentSeries:
        return TruncatedLaurentSeries(coeffs, int(min_exp), self.modulus)

    def truncate(self, prec: int) -> TruncatedLaurentSeries:
        """Forget coefficients at exponents ``>= prec``."""
        if self.is_exact_zero:
            if prec <= 0:
                raise PrecisionError("empty window")
            return TruncatedLaurentSeries(
                np.zeros(prec, dtype=_dtype_for(self.modulus)), 0, self.modulus)
        if prec > self.prec:
            raise PrecisionError(f"cannot extend prec {self.prec} to {prec}")
        if prec <= self.min_exp:
            raise PrecisionError("empty window")
        return self._new(self.coeffs[: prec - self.min_exp].copy(), self.min_exp)

    def shift(self, s: int) -> TruncatedLaurentSeries:
        """Multiply by ``q^s``."""
        if self.is_exact_zero:
            return self
        return self._new(self.coeffs, self.min_exp + s)

    def dilate(self, t: int) -> TruncatedLaurentSeries:
        """Substitute ``q -> q^t``; the window scales to ``[t*min_exp, t*prec)``."""
        if t < 1:
            raise ValueError("dilation factor must be >= 1")
        if t == 1 or self.is_exact_zero:
            return self
        out = np.zeros(t * len(self.coeffs), dtype=self.coeffs.dtype)
        out[::t] = self.coeffs
        return self._new(out, t * self.min_exp)

    def normalized(self) -> TruncatedLaurentSeries:
        """Drop leading zero coefficients, raising ``min_exp`` accordingly."""
        if self.is_exact_zero:
            return self
        nz = np.flatnonzero(self.coeffs != 0)
        if len(nz) == 0:
            return self
        first = int(nz[0])
        return self._new(self.coeffs[first:], self.min_exp + first)

    def valuation(self) -> int | None:
        """Exponent of the first nonzero known coefficient, or ``None``."""
        nz = np.flatnonzero(self.coeffs != 0)
        return None if len(nz) == 0 else self.min_exp + int(nz[0])

    def is_zero(self) -> bool:
        """True if every known coefficient vanishes."""
        return bool(np.all(self.coeffs == 0))

    def equal_on_window(self, other: TruncatedLaurentSeries) -> bool:
        """Coefficient-wise equality on every exponent both series know."""
        self._check_domain(other)
        if self.is_exact_zero:
            return other.is_zero()
        if other.is_exact_zero:
            return self.is_zero()
        lo = min(self.min_exp, other.min_exp)
        hi = min(self.prec, other.prec)
        if hi <= lo:
            return True
        return bool(np.array_equal(_slice(self, lo, hi), _slice(other, lo, hi)))

    def __eq__(self, other):
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        return self.equal_on_window(other)

    __hash__ = None  # type: ignore[assignment]

    # -- ring operations ----------------------------------------------------

    def __neg__(self):
        if self.modulus is None:
            return self._new(-self.coeffs, self.min_exp)
        return self._new((-self.coeffs) % self.modulus, self.min_exp)

    def __add__(self, other):
        if isinstance(other, (int, np.integer)):
            other = _constant_like(self, int(other))
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, np.integer)):
            other = _constant_like(self, int(other))
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return pow(self, e)

    def scale(self, c: int) -> TruncatedLaurentSeries:
        if self.modulus is None:
            return self._new(self.coeffs * c, self.min_exp)
        m = self.modulus
        return self._new(self.coeffs * (c % m) % m, self.min_exp)

    def reduce(self, m: int) -> TruncatedLaurentSeries:
        return reduce_mod(self, m)

    def divide_exact(self, d: int) -> TruncatedLaurentSeries:
        """Divide every coefficient by ``d``; exact domain only, must divide."""
        if self.modulus is not None:
            raise DomainError("exact division needs exact coefficients")
        q, r = _divmod_obj(self.coeffs, d)
        if np.any(r != 0):
            raise DomainError(f"coefficients not all divisible by {d}")
        return self._new(q, self.min_exp)


def _divmod_obj(arr: np.ndarray, d: int):
    q = np.array([c // d for c in arr.tolist()], dtype=object)
    r = np.array([c % d for c in arr.tolist()], dtype=object)
    return q, r


def _constant_like(s: TruncatedLaurentSeries, c: int) -> TruncatedLaurentSeries:
    if s.is_exact_zero:
        raise PrecisionError("constant needs a finite window to live on")
    return TruncatedLaurentSeries.monomial(0, max(s.prec, 1), c, s.modulus)


def _slice(s: TruncatedLaurentSeries, lo: int, hi: int) -> np.ndarray:
    """Coefficients on ``[lo, hi)``, zero-filled below ``min_exp``; ``hi <= prec``."""
    out = np.zeros(hi - lo, dtype=s.coeffs.dtype)
    a = max(lo, s.min_exp)
    if a < hi:
        out[a - lo:] = s.coeffs[a - s.min_exp: hi - s.min_exp]
    return out


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def add(a: TruncatedLaurentSeries, b: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Coefficient-wise sum on ``[min(min_exp), min(prec))``."""
    a._check_domain(b)
    if a.is_exact_zero:
        return b
    if b.is_exact_zero:
        return a
    lo = min(a.min_exp, b.min_exp)
    hi = min(a.prec, b.prec)
    if hi <= lo:
        raise PrecisionError("sum has an empty window")
    out = _slice(a, lo, hi) + _slice(b, lo, hi)
    if a.modulus is not None:
        out %= a.modulus
    return TruncatedLaurentSeries(out, lo, a.modulus)


def mul(a: TruncatedLaurentSeries, b: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Cauchy product on ``[ma+mb, min(pa+mb, pb+ma))``."""
    a._check_domain(b)
    if a.is_exact_zero:
        return a
    if b.is_exact_zero:
        return b
    n = min(len(a), len(b))
    coeffs = convolve_truncated(a.coeffs[:n], b.coeffs[:n], n, a.modulus)
    return TruncatedLaurentSeries(coeffs, a.min_exp + b.min_exp, a.modulus)


def invert(a: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Multiplicative inverse via Newton iteration.

    Leading zeros are stripped first; the lowest nonzero coefficient must be
    a unit (+-1 over Z, coprime to m over Z/m).  With ``a = q^v * u`` known
    to relative length L, the inverse is known on ``[-v, -v + L)``.
    """
    if a.is_exact_zero:
        raise DomainError("zero series is not invertible")
    a = a.normalized()
    lead = int(a.coeffs[0])
    m = a.modulus
    if m is None:
        if lead not in (1, -1):
            raise DomainError(f"leading coefficient {lead} is not a unit over Z")
        inv0 = lead
    else:
        try:
            inv0 = builtins.pow(lead, -1, m)
        except ValueError:
            raise DomainError(f"leading coefficient {lead} is not a unit mod {m}") from None
    n = len(a)
    b = _as_array([inv0], m)
    k = 1
    while k < n:
        k2 = min(2 * k, n)
        ab = convolve_truncated(a.coeffs[:k2], b, k2, m)
        # b <- b * (2 - a b)
        corr = -ab
        corr[0] += 2
        if m is not None:
            corr %= m
        b = convolve_truncated(b, corr, k2, m)
        k = k2
    return TruncatedLaurentSeries(b[:n].copy(), -a.min_exp, m)


def pow(a: TruncatedLaurentSeries, e: int) -> TruncatedLaurentSeries:  # noqa: A001
    """``a**e`` by binary exponentiation; negative ``e`` inverts first."""
    if e < 0:
        return pow(invert(a), -e)
    if e == 0:
        if a.is_exact_zero:
            raise PrecisionError("0**0 has no window")
        return TruncatedLaurentSeries.one(len(a), a.modulus)
    if a.is_exact_zero:
        return a
    result = None
    base = a
    while True:
        if e & 1:
            result = base if result is None else mul(result, base)
        e >>= 1
        if not e:
            break
        base = mul(base, base)
    return result


def reduce_mod(a: TruncatedLaurentSeries, m: int) -> TruncatedLaurentSeries:
    """Least nonnegative residues mod ``m``.

    An exact series is carried into Z/m.  A series already over Z/n is
    reduced further when ``m`` divides ``n``.
    """
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}")
    if a.modulus is not None and a.modulus % m != 0:
        raise DomainError(f"cannot reduce Z/{a.modulus} to Z/{m}")
    if a.modulus is None:
        vals = np.array([c % m for c in a.coeffs.tolist()], dtype=object)
    else:
        vals = a.coeffs % m
    if m < _INT64_MODULUS_LIMIT:
        vals = vals.astype(np.int64)
    else:
        vals = vals.astype(object)
    return TruncatedLaurentSeries(vals, a.min_exp, m)


# ---------------------------------------------------------------------------
# multiplication kernel
# ---------------------------------------------------------------------------

def convolve_truncated(a: np.ndarray, b: np.ndarray, n: int, modulus: int | None) -> np.ndarray:
    """First ``n`` coefficients of the product of two coefficient arrays."""
    a = a[:n]
    b = b[:n]
    if len(a) == 0 or len(b) == 0:
        return np.zeros(n, dtype=_dtype_for(modulus))
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF:
        return _schoolbook(a, b, n, modulus)
    if modulus is not None and a.dtype != object and b.dtype != object:
        return _kronecker_mod(a, b, n, modulus)
    out = _kronecker_signed([int(x) for x in a.tolist()], [int(x) for x in b.tolist()], n)
    if modulus is not None:
        return _as_array(out, modulus)
    return np.array(out, dtype=object)


def _schoolbook(a, b, n, modulus):
    al = [int(x) for x in a.tolist()]
    bl = [int(x) for x in b.tolist()]
    out = [0] * n
    for i, x in enumerate(al):
        if x == 0:
            continue
        for j in range(min(len(bl), n - i)):
            out[i + j] += x * bl[j]
    if modulus is None:
        return np.array(out, dtype=object)
    return _as_array(out, modulus)


def _mpz_from_le(buf: bytes):
    return gmpy2.from_binary(b"\x01\x01" + buf) if buf else gmpy2.mpz(0)


def _le_from_mpz(x, nbytes: int) -> bytes:
    if x == 0:
        return bytes(nbytes)
    raw = gmpy2.to_binary(x)[2:]
    if len(raw) >= nbytes:
        return raw[:nbytes]
    return raw + bytes(nbytes - len(raw))


def _kronecker_mod(a: np.ndarray, b: np.ndarray, n: int, m: int) -> np.ndarray:
    bound = (m - 1) * (m - 1) * min(len(a), len(b))
    sb = max(1, (bound.bit_length() + 7) // 8)
    if sb > 8:
        out = _kronecker_signed([int(x) for x in a.tolist()], [int(x) for x in b.tolist()], n)
        return _as_array(out, m)

    def pack(x: np.ndarray) -> bytes:
        u = np.ascontiguousarray(x, dtype="<u8").view(np.uint8).reshape(-1, 8)
        return np.ascontiguousarray(u[:, :sb]).tobytes()

    prod = _mpz_from_le(pack(a)) * _mpz_from_le(pack(b))
    raw = _le_from_mpz(prod, n * sb)
    digits = np.frombuffer(raw, dtype=np.uint8).reshape(n, sb)
    if sb < 8:
        wide = np.zeros((n, 8), dtype=np.uint8)
        wide[:, :sb] = digits
        digits = wide
    vals = np.ascontiguousarray(digits).view("<u8").reshape(n)
    return (vals % np.uint64(m)).astype(np.int64)


def _kronecker_signed(a: list[int], b: list[int], n: int) -> list[int]:
    """Signed integer convolution truncated to ``n`` terms.

    Slots are wide enough that every product coefficient ``c`` satisfies
    ``|c| < 2^(s-1)``; adding ``2^(s-1)`` to every slot then makes all slot
    values nonnegative, so unpacking needs no borrow propagation.
    """
    ba = max((abs(x).bit_length() for x in a), default=0)
    bb = max((abs(x).bit_length() for x in b), default=0)
    bits = ba + bb + min(len(a), len(b)).bit_length() + 2
    sb = (bits + 7) // 8
    s = 8 * sb

    def pack(xs: list[int]):
        pos = b"".join((x if x > 0 else 0).to_bytes(sb, "little") for x in xs)
        neg = b"".join((-x if x < 0 else 0).to_bytes(sb, "little") for x in xs)
        return _mpz_from_le(pos) - _mpz_from_le(neg)

    prod = pack(a) * pack(b)
    nslots = len(a) + len(b)
    half = gmpy2.mpz(1) << (s - 1)
    # half * (1 + 2^s + 2^2s + ...) over all slots
    offset = half * (((gmpy2.mpz(1) << (s * nslots)) - 1) // ((gmpy2.mpz(1) << s) - 1))
    shifted = prod + offset
    raw = _le_from_mpz(shifted, n * sb)
    h = 1 << (s - 1)
    if sb <= 8:
        digits = np.frombuffer(raw, dtype=np.uint8).reshape(n, sb)
        wide = np.zeros((n, 8), dtype=np.uint8)
        wide[:, :sb] = digits
        vals = wide.view("<u8").reshape(n).tolist()
        return [v - h for v in vals]
    return [int.from_bytes(raw[i * sb:(i + 1) * sb], "little") - h for i in range(n)]
