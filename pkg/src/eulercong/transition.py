"""Coefficient vectors (A_k, B_k) and (C_k, D_{k,i}) and their step maps.

For ``p = 2`` write ``E = 8k`` and ``L = floor(k/2)``; for ``p = 3`` write
``E = 3k`` and ``L = floor(k/3)``.  With ``H = S`` (p=2) or ``H = X`` (p=3):

    even index 2a:    f_1^{-E} G_p^a {f_1^E}      = sum_{i<=L} v_i H^{-i}
    odd index 2a+1:   f_p^{-E} g_p G_p^a {f_1^E}  = sum_{i<=L} v_i H^{i}

``v_0`` is A_k (resp. C_k); ``v_i`` for ``i >= 1`` is B_k (resp. D_{k,i}).
Passing from even to odd applies ``g_p``, which sends ``f_1^E H^{-i}`` to
``f_p^E H^{i} U_p{base^{k - a i}}`` (a = 3 for p=2, a = 4 for p=3); passing
from odd to even applies ``U_p``, which sends ``f_p^E H^{i}`` to
``f_1^E H^{-i} U_p{base^{a i}}``.  Reading off coefficients gives integer
matrices assembled from :mod:`.modpoly`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .dissect import op_U, op_g
from .eta import EtaQuotient, euler_power, expand_eta
from .modpoly import u_poly
from .series import PrecisionError

__all__ = [
    "CoeffState",
    "RECURRENCE_CONSTANTS",
    "StepMatrix",
    "build_step_matrix",
    "coeff_table",
    "evolve",
    "gf_identity_sides",
    "initial_state",
    "ratio_exponents",
    "verify_gf_identity",
    "verify_order4",
]

# (p, k) -> (f, g) or (h, r) in  x(n+4) = f x(n+2) + g x(n)
RECURRENCE_CONSTANTS: dict[tuple[int, int], tuple[int, int]] = {
    (2, 1): (-2**3, 0),
    (2, 2): (2**3 * 13, -2**14),
    (2, 3): (-2**6 * 5 * 11, -2**22),
    (3, 1): (-3, 0),
    (3, 2): (3**2, 0),
    (3, 3): (-2**2 * 3, -3**7),
    (3, 4): (-2 * 3**2 * 19, -3**10),
    (3, 5): (2**2 * 3**3 * 17, -3**13),
    (3, 6): (-2 * 3**2 * 17 * 23, -3**16),
    (3, 7): (2**2 * 3**3 * 491, -3**19),
    (3, 8): (-2 * 3**4 * 5 * 359, -3**22),
}

_K_RANGE = {2: range(1, 4), 3: range(1, 9)}
_STEP = {2: 3, 3: 4}           # exponent multiplier a in U_p{base^{a i}}
_EULER_EXP = {2: 8, 3: 3}      # f_1^{8k} or f_1^{3k}
_HAUPT_ETA = {
    2: EtaQuotient(((1, 24), (2, -24)), -1),   # S
    3: EtaQuotient(((1, 12), (3, -12)), -1),   # X
}


class StepMatrixError(RuntimeError):
    """A U-polynomial left the basis the degree lemmas promise; indicates a bug."""


def check_supported(p: int, k: int):
    if p not in _K_RANGE:
        raise ValueError(f"p must be 2 or 3, got {p}")
    if k not in _K_RANGE[p]:
        r = _K_RANGE[p]
        raise ValueError(f"k must lie in [{r.start}, {r.stop - 1}] for p={p}, got {k}")


def basis_size(p: int, k: int) -> int:
    return 1 + k // p if p == 2 else 1 + k // 3


def euler_exponent(p: int, k: int) -> int:
    return _EULER_EXP[p] * k


@dataclass(frozen=True)
class StepMatrix:
    p: int
    k: int
    direction: str             # "even->odd" or "odd->even"
    entries: tuple[tuple[int, ...], ...]

    def apply(self, vec: tuple[int, ...], modulus: int | None = None) -> tuple[int, ...]:
        out = []
        for row in self.entries:
            s = sum(c * v for c, v in zip(row, vec))
            out.append(s if modulus is None else s % modulus)
        return tuple(out)

    def reduced(self, modulus: int) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(c % modulus for c in row) for row in self.entries)


@lru_cache(maxsize=None)
def build_step_matrix(p: int, k: int, direction: str) -> StepMatrix:
    """Matrix of the even->odd (``g_p``) or odd->even (``U_p``) step on coefficient vectors."""
    check_supported(p, k)
    n = basis_size(p, k)
    a = _STEP[p]
    entries = [[0] * n for _ in range(n)]
    for i in range(n):
        if direction == "even->odd":
            # H^{-i} -> H^{i} U_p{base^{k - a i}}, read in basis H^0..H^L
            poly = u_poly(p, k - a * i).shift(i)
            for e, c in poly.terms:
                if not 0 <= e < n:
                    raise StepMatrixError(
                        f"H^{e} outside basis for p={p}, k={k}, column {i}")
                entries[e][i] += c
        elif direction == "odd->even":
            # H^{i} -> H^{-i} U_p{base^{a i}}, read in basis H^0..H^-L
            poly = u_poly(p, a * i).shift(-i)
            for e, c in poly.terms:
                if not 0 <= -e < n:
                    raise StepMatrixError(
                        f"H^{e} outside basis for p={p}, k={k}, column {i}")
                entries[-e][i] += c
        else:
            raise ValueError(f"unknown direction {direction!r}")
    return StepMatrix(p, k, direction, tuple(tuple(r) for r in entries))


@dataclass(frozen=True)
class CoeffState:
    """Coefficient vector at a given index; entry 0 is A_k/C_k."""

    p: int
    k: int
    index: int
    vec: tuple[int, ...]
    modulus: int | None = None

    @property
    def parity(self) -> str:
        return "even" if self.index % 2 == 0 else "odd"

    def step(self) -> CoeffState:
        direction = "even->odd" if self.index % 2 == 0 else "odd->even"
        mat = build_step_matrix(self.p, self.k, direction)
        return CoeffState(self.p, self.k, self.index + 1,
                          mat.apply(self.vec, self.modulus), self.modulus)

    def reduce(self, m: int) -> CoeffState:
        return CoeffState(self.p, self.k, self.index, tuple(v % m for v in self.vec), m)


def initial_state(p: int, k: int, modulus: int | None = None) -> CoeffState:
    check_supported(p, k)
    vec = (1,) + (0,) * (basis_size(p, k) - 1)
    return CoeffState(p, k, 0, vec, modulus)


def evolve(state: CoeffState):
    """Infinite iterator of states starting with ``state``."""
    while True:
        yield state
        state = state.step()


def coeff_table(p: int, k: int, max_index: int, modulus: int | None = None) -> list[CoeffState]:
    """States at indices ``0..max_index``."""
    out = []
    for st in evolve(initial_state(p, k, modulus)):
        out.append(st)
        if st.index >= max_index:
            return out


def component_sequence(p: int, k: int, component: int, max_index: int,
                       modulus: int | None = None) -> list[int]:
    return [st.vec[component] for st in coeff_table(p, k, max_index, modulus)]


def verify_order4(p: int, k: int, max_index: int,
                  constants: tuple[int, int] | None = None) -> bool:
    """Every component obeys ``x(n+4) = f x(n+2) + g x(n)`` for ``n + 4 <= max_index``."""
    if max_index < 8:
        raise ValueError("max_index must be >= 8")
    f, g = RECURRENCE_CONSTANTS[(p, k)] if constants is None else constants
    table = coeff_table(p, k, max_index)
    for n in range(max_index - 3):
        for j in range(len(table[0].vec)):
            if table[n + 4].vec[j] != f * table[n + 2].vec[j] + g * table[n].vec[j]:
                return False
    return True


def ratio_exponents(k: int, max_beta: int = 20) -> dict[int, int | None]:
    """For each ``i >= 1``, the ``w`` with ``D_{k,i}(2b) = -3^w D_{k,i}(2b-1)``.

    Measured from the computed sequence for ``1 <= b <= max_beta``.  The value
    is ``None`` if the column is identically zero over the range (no ratio is
    observable); a ``ValueError`` is raised if the relation fails or ``w``
    varies with ``b``.
    """
    check_supported(3, k)
    table = coeff_table(3, k, 2 * max_beta)
    out: dict[int, int | None] = {}
    for i in range(1, basis_size(3, k)):
        w_seen: int | None = None
        for b in range(1, max_beta + 1):
            odd, even = table[2 * b - 1].vec[i], table[2 * b].vec[i]
            if odd == 0:
                if even != 0:
                    raise ValueError(f"D_{k},{i}({2*b}) != 0 but D_{k},{i}({2*b-1}) == 0")
                continue
            w = _minus_power_of_three(even, odd)
            if w is None or (w_seen is not None and w != w_seen):
                raise ValueError(f"D_{k},{i} ratio at beta={b} is not a fixed -3^w")
            w_seen = w
        out[i] = w_seen
    return out


def _minus_power_of_three(num: int, den: int) -> int | None:
    if num % den:
        return None
    r = -(num // den)
    w = 0
    while r > 1 and r % 3 == 0:
        r //= 3
        w += 1
    return w if r == 1 and w >= 1 else None


# ---------------------------------------------------------------------------
# generating-function identities
# ---------------------------------------------------------------------------

def gf_identity_sides(p: int, k: int, index: int, min_coeffs: int = 10,
                      prec: int | None = None, modulus: int | None = None):
    """Operator-extracted series and its predicted eta-quotient combination.

    Returns ``(lhs, rhs, state)``.  The left side is ``G_p^a{f_1^E}`` for
    ``index = 2a`` and ``g_p G_p^a{f_1^E}`` for ``index = 2a+1``.
    """
    check_supported(p, k)
    E = euler_exponent(p, k)
    L = basis_size(p, k) - 1
    if prec is None:
        prec = p ** index * (min_coeffs + 2 * L + 2) + k
    series = euler_power(E, prec, modulus)
    for j in range(index):
        series = op_g(p, k, series) if j % 2 == 0 else op_U(p, series)
    state = coeff_table(p, k, index, modulus)[-1]

    hi = series.prec
    haupt = _HAUPT_ETA[p]
    rhs = None
    for i, c in enumerate(state.vec):
        if index % 2 == 0:
            term_eta = EtaQuotient.f(1, E) * haupt ** (-i)
        else:
            term_eta = EtaQuotient.f(p, E) * haupt ** i
        term = expand_eta(term_eta, hi, modulus).scale(c)
        rhs = term if rhs is None else rhs + term
    return series, rhs, state


def verify_gf_identity(p: int, k: int, index: int, prec: int | None = None,
                       min_coeffs: int = 10, modulus: int | None = None) -> bool:
    """Check the generating-function identity for (A_k, B_k) or (C_k, D_{k,i}) at ``index``.

    Raises :class:`PrecisionError` when fewer than ``min_coeffs`` coefficients
    of the extracted side are known.
    """
    lhs, rhs, _ = gf_identity_sides(p, k, index, min_coeffs, prec, modulus)
    lo = min(lhs.min_exp, rhs.min_exp)
    hi = min(lhs.prec, rhs.prec)
    if hi - max(lo, 0) < min_coeffs:
        raise PrecisionError(f"only {hi - lo} coefficients available, need {min_coeffs}")
    return lhs.equal_on_window(rhs)
