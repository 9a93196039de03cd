"""Arithmetic-progression congruences for p_{8k}, p_{3k} and related partition functions.

A :class:`CongruenceFamily` claims ``F(M n + r) = expected (mod m)`` for all
``n >= 0`` (or only ``n = 0`` for single-point families).  Families carry a
``chain`` of intermediate series congruences (reductions such as
``b_25 = p_24 (mod 5)``) so a failure can be localized.  Verification is
bounded: reports state exactly which ``n`` were checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dissect import extract
from .eta import EtaQuotient, PartitionFunction, expand_eta, partition_gf
from .period import mu, nu

__all__ = [
    "BudgetExceeded",
    "CongruenceFamily",
    "DEFAULT_BUDGET",
    "FamilyReport",
    "SeriesCongruence",
    "TABLE_MODULI",
    "application_families",
    "constant_term_check",
    "constant_term_index",
    "family_p3k",
    "family_p8k",
    "reason_congruence",
    "theorem_families",
    "verify_family",
]

DEFAULT_BUDGET = 10**6
TABLE_MODULI = (2, 3, 5, 7, 11, 13, 17, 19)


class BudgetExceeded(RuntimeError):
    """The requested coefficient index lies beyond the precision budget."""


# ---------------------------------------------------------------------------
# series congruences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesCongruence:
    """``sum_n F(M n + r) q^n / divisor = scale * rhs``, mod ``modulus`` (exact if ``None``)."""

    function: PartitionFunction
    M: int
    r: int
    rhs: EtaQuotient
    scale: int = 1
    divisor: int = 1
    modulus: int | None = None
    label: str = ""

    def describe(self) -> str:
        lhs = f"{self.function.name}({self.M}n+{self.r})" if self.M > 1 or self.r else self.function.name
        if self.divisor != 1:
            lhs += f"/{self.divisor}"
        rhs = str(self.rhs) if self.scale == 1 else f"{self.scale}*{self.rhs}"
        tail = "" if self.modulus is None else f" mod {self.modulus}"
        rel = "=" if self.modulus is None else "≡"
        return f"{lhs} {rel} {rhs}{tail}"

    def required_prec(self, n_coeffs: int) -> int:
        return self.M * (n_coeffs - 1) + self.r + 1

    def verify(self, n_coeffs: int = 50, budget: int = DEFAULT_BUDGET) -> dict:
        """Compare the first ``n_coeffs`` coefficients (fewer if the budget forces it)."""
        prec = min(self.required_prec(n_coeffs), budget)
        if prec <= self.r:
            return {"check": self.describe(), "label": self.label, "status": "budget",
                    "coefficients": 0, "passed": None}
        work_mod = None if self.modulus is None else self.modulus * self.divisor
        lhs = extract(self.M, self.r, partition_gf(self.function, prec, work_mod))
        n = lhs.prec
        raw = [lhs[i] for i in range(n)]
        ok = all(v % self.divisor == 0 for v in raw)
        vals = [v // self.divisor for v in raw]
        rhs = expand_eta(self.rhs, n, self.modulus)
        for i in range(n):
            want = self.scale * rhs[i]
            got = vals[i]
            if self.modulus is not None:
                want, got = want % self.modulus, got % self.modulus
            if want != got:
                ok = False
                break
        if ok and n < n_coeffs:
            # agreement so far, but short of the requested length
            return {"check": self.describe(), "label": self.label, "status": "budget",
                    "coefficients": n, "passed": None}
        return {"check": self.describe(), "label": self.label,
                "status": "pass" if ok else "fail", "coefficients": n, "passed": ok}


def reason_congruence(p: int, k: int, m: int, alpha: int = 1) -> SeriesCongruence:
    """The series congruence behind the p_{8k} / p_{3k} families.

    ``p_{8k}(2^{2 mu a - 1} n + k(4^{mu a} - 1)/3) = c_1^a f_2^{8k}`` for p = 2,
    ``p_{3k}(3^{2 nu b - 1} n + k(9^{nu b} - 1)/8) = c_2^b f_3^{3k}`` for p = 3.
    """
    th = mu(m, k) if p == 2 else nu(m, k)
    e = 2 * th.value * alpha
    if p == 2:
        M, r, E = 2 ** (e - 1), k * (2 ** e - 1) // 3, 8 * k
    else:
        M, r, E = 3 ** (e - 1), k * (3 ** e - 1) // 8, 3 * k
    return SeriesCongruence(PartitionFunction("p_k", E), M, r, EtaQuotient.f(p, E),
                            scale=pow(th.constant, alpha, m), modulus=m,
                            label=f"{'mu' if p == 2 else 'nu'}-reduction k={k} m={m}")


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CongruenceFamily:
    """``function(M n + r) = expected (mod modulus)`` for ``0 <= n <= max_n`` (unbounded if ``None``)."""

    function: PartitionFunction
    modulus: int
    M: int
    r: int
    expected: int = 0
    label: str = ""
    params: tuple[tuple[str, object], ...] = ()
    chain: tuple[object, ...] = field(default=(), compare=False)
    max_n: int | None = None

    def __post_init__(self):
        if self.M < 1 or self.r < 0:
            raise ValueError(f"bad progression M={self.M}, r={self.r}")
        if not 0 <= self.expected < self.modulus:
            raise ValueError("expected residue must lie in [0, modulus)")

    @property
    def kind(self) -> str:
        return "zero" if self.expected == 0 else "constant"

    def index(self, n: int) -> int:
        return self.M * n + self.r

    def describe(self) -> str:
        rng = "" if self.max_n is None else (" (n=0)" if self.max_n == 0 else f" (n<={self.max_n})")
        arg = f"{self.M}n+{self.r}" if self.max_n != 0 else str(self.r)
        return f"{self.function.name}({arg}) ≡ {self.expected} mod {self.modulus}{rng}"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "function": self.function.name,
            "modulus": self.modulus,
            "M": self.M,
            "r": self.r,
            "expected": {"kind": self.kind, "value": self.expected},
            "single_point": self.max_n == 0,
            "params": {k: v for k, v in self.params},
        }


def _check_range(name: str, value: int, lo: int, hi: int | None = None):
    if value < lo or (hi is not None and value > hi):
        bound = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
        raise ValueError(f"{name} must be {bound}, got {value}")


def family_p8k(m: int, k: int, alpha: int = 1) -> CongruenceFamily:
    """Progression on which ``p_{8k}`` vanishes mod ``m``, built from ``mu_m(k)`` and ``c_1``."""
    _check_range("m", m, 2)
    _check_range("k", k, 1, 3)
    _check_range("alpha", alpha, 1)
    th = mu(m, k)
    e = 2 * th.value * alpha
    c_pow = pow(th.constant, alpha, m)
    if c_pow:
        branch, M = "i", 2 ** e
        num = (2 * k + 3) * 2 ** (e - 1) - k
        den = 3
    else:
        branch, M = "ii", 2 ** (e - 1)
        num, den = k * (2 ** e - 1), 3
    if num % den:
        raise ArithmeticError(f"non-integral residue {num}/{den}")
    params = (("k", k), ("alpha", alpha), ("mu", th.value), ("c1", th.constant), ("branch", branch))
    return CongruenceFamily(PartitionFunction("p_k", 8 * k), m, M, num // den, 0,
                            f"p8k-{branch}", params, (reason_congruence(2, k, m, alpha),))


def family_p3k(m: int, k: int, beta: int = 1, i: int = 1) -> CongruenceFamily:
    """Progression on which ``p_{3k}`` vanishes mod ``m``, built from ``nu_m(k)`` and ``c_2``.

    ``i`` selects one of the two progressions of the first branch and is
    ignored by the second.
    """
    _check_range("m", m, 2)
    _check_range("k", k, 1, 8)
    _check_range("beta", beta, 1)
    _check_range("i", i, 1, 2)
    th = nu(m, k)
    e = 2 * th.value * beta
    c_pow = pow(th.constant, beta, m)
    if c_pow:
        branch, M = "i", 3 ** e
        num = (3 * k + 8 * i) * 3 ** (e - 1) - k
    else:
        branch, M, i = "ii", 3 ** (e - 1), None
        num = k * (3 ** e - 1)
    if num % 8:
        raise ArithmeticError(f"non-integral residue {num}/8")
    params = (("k", k), ("beta", beta), ("nu", th.value), ("c2", th.constant),
              ("branch", branch), ("i", i))
    return CongruenceFamily(PartitionFunction("p_k", 3 * k), m, M, num // 8, 0,
                            f"p3k-{branch}", params, (reason_congruence(3, k, m, beta),))


def theorem_families(moduli=TABLE_MODULI, alpha: int = 1) -> list[CongruenceFamily]:
    """All p_{8k} and p_{3k} families over ``moduli`` (both ``i`` when the branch uses it)."""
    out = []
    for m in moduli:
        for k in range(1, 4):
            out.append(family_p8k(m, k, alpha))
        for k in range(1, 9):
            first = family_p3k(m, k, alpha, 1)
            out.append(first)
            if dict(first.params)["branch"] == "i":
                out.append(family_p3k(m, k, alpha, 2))
    return out


def constant_term_index(p: int, k: int, m: int, exponent: int) -> tuple[int, int]:
    """``(N, c^exponent mod m)`` with ``p_{8k}(N)`` (or ``p_{3k}(N)``) predicted to equal the residue."""
    _check_range("exponent", exponent, 1)
    if p == 2:
        th = mu(m, k)
        N = (k * 4 ** (th.value * exponent) - k) // 3
    elif p == 3:
        th = nu(m, k)
        N = (k * 9 ** (th.value * exponent) - k) // 8
    else:
        raise ValueError(f"p must be 2 or 3, got {p}")
    return N, pow(th.constant, exponent, m)


def constant_term_check(p: int, k: int, m: int, exponent: int,
                        budget: int = DEFAULT_BUDGET) -> bool:
    """Check the single coefficient ``p_{8k}(N)`` / ``p_{3k}(N)`` against ``c^exponent``."""
    N, want = constant_term_index(p, k, m, exponent)
    if N >= budget:
        raise BudgetExceeded(f"index {N} exceeds budget {budget}")
    E = 8 * k if p == 2 else 3 * k
    gf = partition_gf(PartitionFunction("p_k", E), N + 1, m)
    return gf[N] % m == want


# ---------------------------------------------------------------------------
# catalogue of applications
# ---------------------------------------------------------------------------

def _reduction(fn: PartitionFunction, e: int, m: int) -> SeriesCongruence:
    return SeriesCongruence(fn, 1, 0, EtaQuotient.f(1, e), modulus=m,
                            label=f"{fn.name} ≡ p_{e} mod {m}")


def _point(fn: PartitionFunction, m: int, index: int, value: int, label: str,
           params, chain) -> CongruenceFamily:
    return CongruenceFamily(fn, m, 1, index, value, label, tuple(params), tuple(chain), max_n=0)


def application_families() -> list[CongruenceFamily]:
    """Overpartition, t-core and l-regular families at their smallest parameters."""
    out: list[CongruenceFamily] = []
    pbar = PartitionFunction("overpartition")

    # overpartitions mod 4, 8, 16 via pbar(4n+j) / 2^j = p_{6j} mod 2
    for j, (mod, k3, a_exp) in enumerate(((4, 2, 2), (8, 4, 2), (16, 6, 4)), start=1):
        exact = [
            SeriesCongruence(pbar, 4, 1, EtaQuotient(((2, 13), (1, -12), (4, -2))), scale=2,
                             label="pbar(4n+1) dissection"),
            SeriesCongruence(pbar, 4, 2, EtaQuotient(((2, 7), (4, 2), (1, -10))), scale=4,
                             label="pbar(4n+2) dissection"),
            SeriesCongruence(pbar, 4, 3, EtaQuotient(((2, 1), (4, 6), (1, -8))), scale=8,
                             label="pbar(4n+3) dissection"),
        ][j - 1]
        halve = SeriesCongruence(pbar, 4, j, EtaQuotient.f(1, 6 * j), divisor=2 ** j, modulus=2,
                                 label=f"pbar(4n+{j})/{2 ** j} ≡ p_{6 * j} mod 2")
        for i in (1, 2):
            inner = family_p3k(2, k3, 1, i)
            E = a_exp
            M = 4 * 3 ** E
            r = (4 * i + 3 * j) * 3 ** (E - 1)
            out.append(CongruenceFamily(
                pbar, mod, M, r, 0, f"overpartition-mod{mod}",
                (("alpha", 1), ("i", i)), (exact, halve, *inner.chain, inner)))

    # 2-cores: a_2 = p_3 mod 2
    a2 = PartitionFunction("t_core", 2)
    red = _reduction(a2, 3, 2)
    for i in (1, 2):
        inner = family_p3k(2, 1, 1, i)
        out.append(CongruenceFamily(a2, 2, 9, 3 * i + 1, 0, "2-core",
                                    (("alpha", 1), ("i", i)), (red, *inner.chain, inner)))
    for b in range(4):
        out.append(_point(a2, 2, (9 ** b - 1) // 8, 1, "2-core-constant", [("beta", b)], [red]))

    # 4-cores: a_4 = f_4^4/f_1 = p_15 mod 2
    a4 = PartitionFunction("t_core", 4)
    red = _reduction(a4, 15, 2)
    for i in (1, 2):
        inner = family_p3k(2, 5, 1, i)
        out.append(CongruenceFamily(a4, 2, 9, ((8 * i + 15) * 3 - 5) // 8, 0, "4-core",
                                    (("alpha", 1), ("i", i)), (red, *inner.chain, inner)))
    for b in range(4):
        out.append(_point(a4, 2, (5 * 9 ** b - 5) // 8, 1, "4-core-constant", [("beta", b)], [red]))

    # 25-regular: b_25 = p_24 mod 5
    b25 = PartitionFunction("l_regular", 25)
    red = _reduction(b25, 24, 5)
    inner2 = family_p8k(5, 3, 1)
    out.append(CongruenceFamily(b25, 5, 16, 3 * 8 - 1, 0, "25-regular-pow2",
                                (("alpha", 1),), (red, *inner2.chain, inner2)))
    for i in (1, 2):
        inner3 = family_p3k(5, 8, 1, i)
        out.append(CongruenceFamily(b25, 5, 81, (i + 3) * 27 - 1, 0, "25-regular-pow3",
                                    (("alpha", 1), ("i", i)), (red, *inner3.chain, inner3)))
    for b in range(3):
        out.append(_point(b25, 5, 81 ** b - 1, 1, "25-regular-constant", [("beta", b)], [red]))
    for b in (0, 1):
        for i in (1, 2):
            out.append(CongruenceFamily(
                b25, 5, 16 ** b * 81, (i + 3) * 16 ** b * 27 - 1, 0, "25-regular-mixed-a",
                (("alpha", 1), ("beta", b), ("i", i)), (red,)))
        out.append(CongruenceFamily(
            b25, 5, 16 * 81 ** b, 8 * 3 ** (4 * b + 1) - 1, 0, "25-regular-mixed-b",
            (("alpha", 1), ("beta", b)), (red,)))

    # 4-regular: b_4 = f_4/f_1 = p_3 mod 2
    b4 = PartitionFunction("l_regular", 4)
    red = _reduction(b4, 3, 2)
    for a in (0, 1):
        for c in (11, 19):
            inner = family_p3k(2, 1, a + 1, 1 if c == 11 else 2)
            out.append(CongruenceFamily(
                b4, 2, 3 ** (2 * a + 2), (c * 3 ** (2 * a + 1) - 1) // 8, 0, "4-regular",
                (("alpha", a), ("c", c)), (red, *inner.chain, inner)))

    # 9-regular: b_9 = p_8 mod 3
    b9 = PartitionFunction("l_regular", 9)
    red = _reduction(b9, 8, 3)
    for a in (1, 2):
        inner = family_p8k(3, 1, a)
        out.append(CongruenceFamily(b9, 3, 4 ** a, (5 * 2 ** (2 * a - 1) - 1) // 3, 0, "9-regular",
                                    (("alpha", a),), (red, *inner.chain, inner)))
    for b in range(5):
        out.append(_point(b9, 3, (4 ** b - 1) // 3, 1, "9-regular-constant", [("beta", b)], [red]))

    # 17-regular: b_17 = p_16 mod 17, mu_17(2) = 9
    b17 = PartitionFunction("l_regular", 17)
    inner = family_p8k(17, 2, 1)
    out.append(CongruenceFamily(b17, 17, 2 ** 18, (7 * 2 ** 17 - 2) // 3, 0, "17-regular",
                                (("alpha", 1),), (_reduction(b17, 16, 17), *inner.chain, inner)))

    # 19-regular: b_19 = p_18 mod 19, nu_19(6) = 5
    b19 = PartitionFunction("l_regular", 19)
    red = _reduction(b19, 18, 19)
    for i in (1, 2):
        inner = family_p3k(19, 6, 1, i)
        out.append(CongruenceFamily(b19, 19, 3 ** 10, ((4 * i + 9) * 3 ** 9 - 3) // 4, 0,
                                    "19-regular", (("alpha", 1), ("i", i)),
                                    (red, *inner.chain, inner)))
    return out


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class FamilyReport:
    family: CongruenceFamily
    checked_range: tuple[int, int] | None   # inclusive n-range, None if nothing fit
    passed: bool | None
    witnesses: list[int]
    unverifiable_at_scale: bool
    chain: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """No counterexample anywhere (budget-limited ranges count as ok)."""
        return self.passed is not False and all(c["passed"] is not False for c in self.chain)

    def to_json(self) -> dict:
        return {
            "family": self.family.to_json(),
            "description": self.family.describe(),
            "checked_range": list(self.checked_range) if self.checked_range else None,
            "status": ("budget" if self.passed is None else "pass" if self.passed else "fail"),
            "witnesses": self.witnesses,
            "unverifiable_at_scale": self.unverifiable_at_scale,
            "chain": self.chain,
        }


def verify_family(fam: CongruenceFamily, n_max: int = 200, budget: int = DEFAULT_BUDGET,
                  strict: bool = False, chain: bool = True,
                  chain_coeffs: int = 50) -> FamilyReport:
    """Check ``fam`` at every ``n`` in ``[0, n_max]`` whose index fits the budget.

    With ``strict`` a :class:`BudgetExceeded` is raised instead of shrinking
    the range.  Witnesses are the ``n`` at which the congruence fails.
    """
    if fam.max_n is not None:
        n_max = min(n_max, fam.max_n)
    needed = fam.index(n_max) + 1
    over = needed > budget
    if over and strict:
        raise BudgetExceeded(f"index {fam.index(n_max)} exceeds budget {budget}")

    chain_reports = []
    if chain:
        for link in fam.chain:
            if isinstance(link, SeriesCongruence):
                chain_reports.append(link.verify(chain_coeffs, budget))
            else:
                sub = verify_family(link, n_max, budget, chain=False)
                chain_reports.append({"check": link.describe(), "label": link.label,
                                      "status": sub.to_json()["status"],
                                      "checked_range": list(sub.checked_range) if sub.checked_range else None,
                                      "passed": sub.passed})

    prec = min(needed, budget)
    if prec <= fam.r:
        return FamilyReport(fam, None, None, [], True, chain_reports)
    n_hi = (prec - 1 - fam.r) // fam.M
    gf = partition_gf(fam.function, fam.index(n_hi) + 1, fam.modulus)
    witnesses = [n for n in range(n_hi + 1) if gf[fam.index(n)] % fam.modulus != fam.expected]
    return FamilyReport(fam, (0, n_hi), not witnesses, witnesses, over, chain_reports)
