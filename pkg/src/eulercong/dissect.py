"""Coefficient-extraction operators U_p, g_p(k) and G_p(k).

For ``a = sum a(n) q^n``:

* ``op_U(p, a)``    has coefficients ``a(p n)``,
* ``op_g(p, k, a)`` has coefficients ``a(p n + k)``,
* ``op_G(p, k, a)`` has coefficients ``a(p^2 n + k)``.

``k`` may be any integer.  Offsets ``k >= p`` are how the principal parts
of ``g_2 G_2^a {f_1^{8k}}`` and ``g_3 G_3^b {f_1^{3k}}`` (which start at
``q^{-floor(k/2)}`` and ``q^{-floor(k/3)}``) come out.
"""

from __future__ import annotations

from .series import PrecisionError, TruncatedLaurentSeries

__all__ = ["op_G", "op_U", "op_g", "extract"]


def extract(step: int, offset: int, a: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Series whose n-th coefficient is ``a(step*n + offset)``.

    Known window: ``ceil((min_exp - offset)/step) <= n <= floor((prec - 1 - offset)/step)``.
    """
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    if a.is_exact_zero:
        return a
    lo = -((offset - a.min_exp) // step)          # ceil((min_exp - offset) / step)
    hi = (a.prec - 1 - offset) // step             # inclusive
    if hi < lo:
        raise PrecisionError(
            f"no coefficients of the form {step}n+{offset} inside [{a.min_exp}, {a.prec})")
    start = step * lo + offset - a.min_exp
    coeffs = a.coeffs[start: start + step * (hi - lo) + 1: step].copy()
    return TruncatedLaurentSeries(coeffs, lo, a.modulus)


def op_U(p: int, a: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Atkin's ``U_p``: keep every p-th coefficient."""
    _check_p(p)
    return extract(p, 0, a)


def op_g(p: int, k: int, a: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """``g_p(k)``: coefficients ``a(p n + k)``."""
    _check_p(p)
    return extract(p, k, a)


def op_G(p: int, k: int, a: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """``G_p(k) = U_p g_p(k)``: coefficients ``a(p^2 n + k)``."""
    _check_p(p)
    return extract(p * p, k, a)


def _check_p(p: int):
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
