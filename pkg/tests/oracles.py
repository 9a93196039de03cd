"""Independent reference implementations used only by the tests.

Everything here is deliberately slow and obvious: enumeration of partitions,
schoolbook products on plain lists, and index arithmetic on dicts.
"""

from __future__ import annotations

from functools import lru_cache


def partitions(n: int, max_part: int | None = None):
    """Yield partitions of ``n`` as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def partition_count(n: int) -> int:
    return sum(1 for _ in partitions(n))


def overpartition_count(n: int) -> int:
    # each distinct part may have its first occurrence overlined
    return sum(2 ** len(set(lam)) for lam in partitions(n))


def hook_lengths(lam: tuple[int, ...]) -> list[int]:
    conj = [sum(1 for part in lam if part > j) for j in range(lam[0])] if lam else []
    return [lam[i] - j - 1 + conj[j] - i - 1 + 1
            for i in range(len(lam)) for j in range(lam[i])]


def t_core_count(n: int, t: int) -> int:
    return sum(1 for lam in partitions(n) if all(h % t for h in hook_lengths(lam)))


def regular_count(n: int, ell: int) -> int:
    return sum(1 for lam in partitions(n) if all(part % ell for part in lam))


def poly_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def euler_power_list(e: int, n: int) -> list[int]:
    """Coefficients of ``prod (1 - q^j)^e`` below ``q^n`` by repeated binomial factors."""
    coeffs = [1] + [0] * (n - 1)
    for j in range(1, n):
        for _ in range(abs(e)):
            if e > 0:
                for i in range(n - 1, j - 1, -1):
                    coeffs[i] -= coeffs[i - j]
            else:
                for i in range(j, n):
                    coeffs[i] += coeffs[i - j]
    return coeffs


def eta_list(factors: dict[int, int], n: int) -> list[int]:
    """``prod_t f_t^{e_t}`` below ``q^n`` from dilated binomial products."""
    out = [1] + [0] * (n - 1)
    for t, e in factors.items():
        base = euler_power_list(e, (n - 1) // t + 1)
        dil = [0] * n
        for i, c in enumerate(base):
            if i * t < n:
                dil[i * t] = c
        out = poly_mul(out, dil, n)
    return out


@lru_cache(maxsize=None)
def p_k_list(k: int, n: int) -> tuple[int, ...]:
    return tuple(euler_power_list(k, n))
