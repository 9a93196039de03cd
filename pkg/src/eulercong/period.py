"""Periodicity of the coefficient sequences modulo m, and the thresholds mu, nu.

``mu_m(k)`` is the least ``a >= 1`` with ``B_k(2a-1) = 0 (mod m)``;
``nu_m(k)`` the least ``b >= 1`` with every ``D_{k,i}(2b-1) = 0 (mod m)``.
Both come with the companion constant ``c = A_k(2mu-1)`` (resp. ``C_k(2nu-1)``)
reduced into ``[0, m)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .transition import (RECURRENCE_CONSTANTS, basis_size, check_supported,
                         initial_state)

__all__ = [
    "PeriodReport",
    "SafetyCapExceeded",
    "Threshold",
    "mu",
    "nu",
    "period_report",
    "state_cycle",
    "threshold",
    "trailing_coefficient",
]


class SafetyCapExceeded(RuntimeError):
    """The search ran past the number of reachable states; indicates a bug."""


@dataclass(frozen=True)
class PeriodReport:
    p: int
    k: int
    component: int
    m: int
    least_period: int
    preperiod: int
    first_zero_odd_index: int | None
    state_preperiod: int
    state_period: int
    values: tuple[int, ...]     # component residues at indices 0 .. state_preperiod+state_period-1

    @property
    def purely_periodic(self) -> bool:
        return self.preperiod == 0

    def to_json(self) -> dict:
        return {
            "p": self.p, "k": self.k, "component": self.component, "m": self.m,
            "least_period": self.least_period, "preperiod": self.preperiod,
            "first_zero_odd_index": self.first_zero_odd_index,
            "state_preperiod": self.state_preperiod, "state_period": self.state_period,
        }


@dataclass(frozen=True)
class Threshold:
    p: int
    m: int
    k: int
    value: int
    constant: int

    @property
    def symbol(self) -> str:
        return "mu" if self.p == 2 else "nu"

    def to_json(self) -> dict:
        return {"symbol": self.symbol, "m": self.m, "k": self.k,
                "value": self.value, "constant": self.constant}


def trailing_coefficient(p: int, k: int) -> int:
    """Last nonzero coefficient of the order-4 recurrence (``g`` or ``r``; ``f``/``h`` if that is 0)."""
    f, g = RECURRENCE_CONSTANTS[(p, k)]
    return g if g else f


def safety_cap(m: int, length: int) -> int:
    return 4 * m ** length * 2


def state_cycle(p: int, k: int, m: int) -> tuple[list[tuple[int, ...]], int, int]:
    """Residue states from index 0 until the first repeat.

    Returns ``(states, start, period)``: ``states[start:start+period]`` is the
    cycle, ``states[:start]`` the tail.  Parity is part of the state.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    seen: dict[tuple[int, tuple[int, ...]], int] = {}
    states: list[tuple[int, ...]] = []
    cap = safety_cap(m, basis_size(p, k))
    st = initial_state(p, k, m)
    while True:
        key = (st.index % 2, st.vec)
        if key in seen:
            start = seen[key]
            return states, start, st.index - start
        if st.index > cap:
            raise SafetyCapExceeded(f"no repeat within {cap} steps for p={p}, k={k}, m={m}")
        seen[key] = st.index
        states.append(st.vec)
        st = st.step()


def period_report(p: int, k: int, component: int, m: int) -> PeriodReport:
    """Least period and preperiod of one component of the state sequence mod ``m``."""
    check_supported(p, k)
    if not 0 <= component < basis_size(p, k):
        raise ValueError(f"component {component} out of range for p={p}, k={k}")
    states, start, period = state_cycle(p, k, m)
    xs = [s[component] for s in states]

    def at(n: int) -> int:
        return xs[n] if n < len(xs) else xs[start + (n - start) % period]

    least = period
    for d in _divisors(period):
        if all(at(n) == at(n + d) for n in range(start, start + period)):
            least = d
            break
    pre = start
    while pre > 0 and at(pre - 1) == at(pre - 1 + least):
        pre -= 1

    first_zero = None
    for n in range(1, len(xs), 2):
        if xs[n] == 0:
            first_zero = (n + 1) // 2
            break
    return PeriodReport(p, k, component, m, least, pre, first_zero, start, period, tuple(xs))


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=4096)
def threshold(p: int, m: int, k: int) -> Threshold:
    """Minimal odd-index vanishing threshold for the non-leading components mod ``m``."""
    check_supported(p, k)
    if m < 2:
        raise ValueError("m must be >= 2")
    cap = safety_cap(m, basis_size(p, k))
    st = initial_state(p, k, m)
    while st.index <= cap:
        st = st.step()
        if st.index % 2 == 1 and not any(st.vec[1:]):
            return Threshold(p, m, k, (st.index + 1) // 2, st.vec[0] % m)
        st = st.step()
    raise SafetyCapExceeded(f"threshold not found within {cap} steps for p={p}, k={k}, m={m}")


def mu(m: int, k: int) -> Threshold:
    """``mu_m(k)`` together with ``c_1``."""
    if not 1 <= k <= 3:
        raise ValueError(f"k must lie in [1, 3], got {k}")
    return threshold(2, m, k)


def nu(m: int, k: int) -> Threshold:
    """``nu_m(k)`` together with ``c_2``."""
    if not 1 <= k <= 8:
        raise ValueError(f"k must lie in [1, 8], got {k}")
    return threshold(3, m, k)


def coprime_to_trailing(p: int, k: int, m: int) -> bool:
    return gcd(m, trailing_coefficient(p, k)) == 1
