from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulercong.congruence import (BudgetExceeded, CongruenceFamily, SeriesCongruence,
                                  application_families, constant_term_check,
                                  constant_term_index, family_p3k, family_p8k,
                                  reason_congruence, theorem_families, verify_family)
from eulercong.eta import EtaQuotient, PartitionFunction
from eulercong.period import mu, nu

from oracles import overpartition_count, p_k_list, t_core_count


def progression(f):
    return f.M, f.r, f.modulus, f.expected


# -- instantiation --------------------------------------------------------

def test_p8k_examples():
    f = family_p8k(2, 1, 1)
    assert progression(f) == (2, 1, 2, 0) and dict(f.params)["branch"] == "ii"
    f = family_p8k(3, 1, 1)
    assert progression(f) == (4, 3, 3, 0) and dict(f.params)["branch"] == "i"
    f = family_p8k(5, 3, 1)
    assert progression(f) == (16, 23, 5, 0)


def test_p3k_examples():
    f = family_p3k(2, 1, 1, 1)
    assert progression(f) == (9, 4, 2, 0) and dict(f.params)["branch"] == "i"
    assert dict(family_p3k(2, 2, 1, 1).params)["branch"] == "i"
    assert progression(family_p3k(5, 8, 1, 2)) == (81, 134, 5, 0)


def test_parameter_ranges():
    for bad in [(1, 1, 1), (5, 0, 1), (5, 4, 1), (5, 1, 0)]:
        with pytest.raises(ValueError):
            family_p8k(*bad)
    with pytest.raises(ValueError):
        family_p3k(5, 9, 1, 1)
    with pytest.raises(ValueError):
        family_p3k(5, 3, 1, 3)
    with pytest.raises(ValueError):
        CongruenceFamily(PartitionFunction("p_k", 8), 5, 4, 1, expected=5)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 80), st.integers(1, 3), st.integers(1, 3))
def test_p8k_residue_is_integral_and_branch_consistent(m, k, alpha):
    th = mu(m, k)
    f = family_p8k(m, k, alpha)
    e = 2 * th.value * alpha
    assert f.r >= 0
    if pow(th.constant, alpha, m):
        assert dict(f.params)["branch"] == "i"
        assert f.M == 2 ** e and 3 * f.r == (2 * k + 3) * 2 ** (e - 1) - k
    else:
        assert dict(f.params)["branch"] == "ii"
        assert f.M == 2 ** (e - 1) and 3 * f.r == k * (2 ** e - 1)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 80), st.integers(1, 8), st.integers(1, 3), st.sampled_from([1, 2]))
def test_p3k_residue_is_integral_and_branch_consistent(m, k, beta, i):
    th = nu(m, k)
    f = family_p3k(m, k, beta, i)
    e = 2 * th.value * beta
    assert f.r >= 0
    if pow(th.constant, beta, m):
        assert dict(f.params)["branch"] == "i"
        assert f.M == 3 ** e and 8 * f.r == (3 * k + 8 * i) * 3 ** (e - 1) - k
    else:
        assert dict(f.params)["branch"] == "ii"
        assert f.M == 3 ** (e - 1) and 8 * f.r == k * (3 ** e - 1)


def test_first_branch_progressions_refine_second():
    """Branch (i) indices are the odd (resp. non-zero mod 3) terms of the reason progression."""
    for m in (3, 5, 7, 11):
        for k in (1, 2, 3):
            f = family_p8k(m, k, 1)
            red = f.chain[0]
            if dict(f.params)["branch"] == "i":
                assert f.M == 2 * red.M and f.r == red.M + red.r


# -- verification ---------------------------------------------------------

def test_verify_p8_odd_even():
    rep = verify_family(family_p8k(2, 1, 1), 1000)
    assert rep.passed and rep.checked_range == (0, 1000) and not rep.unverifiable_at_scale
    p8 = p_k_list(8, 2002)
    assert all(p8[2 * n + 1] % 2 == 0 for n in range(1001))


def test_verify_overpartition_36n_21():
    fam = next(f for f in application_families() if (f.M, f.r, f.modulus) == (36, 21, 4))
    rep = verify_family(fam, 200)
    assert rep.passed and rep.ok and rep.checked_range == (0, 200)
    assert all(c["passed"] for c in rep.chain)
    # enumeration cross-check on the first few terms
    assert overpartition_count(21) % 4 == 0


def test_corrupted_family_reports_witnesses():
    fam = family_p8k(3, 1, 1)
    bad = replace(fam, r=fam.r + 1, chain=())
    rep = verify_family(bad, 100)
    assert rep.passed is False and rep.witnesses
    p8 = p_k_list(8, 4 * 100 + 5)
    for n in rep.witnesses[:5]:
        assert p8[4 * n + 4] % 3 != 0
    assert not rep.ok


def test_verify_matches_enumeration_oracle():
    fam = next(f for f in application_families() if f.label == "2-core" and f.r == 7)
    rep = verify_family(fam, 6)
    assert rep.passed
    assert all(t_core_count(9 * n + 7, 2) % 2 == 0 for n in range(3))


def test_budget_handling():
    fam = family_p8k(17, 2, 1)
    rep = verify_family(fam, 200, budget=10**5)
    assert rep.checked_range is None and rep.passed is None and rep.unverifiable_at_scale
    with pytest.raises(BudgetExceeded):
        verify_family(family_p8k(3, 1, 1), 200, budget=500, strict=True)
    rep = verify_family(family_p8k(3, 1, 1), 200, budget=500)
    assert rep.checked_range == (0, 124) and rep.passed and rep.unverifiable_at_scale


# -- constant terms -------------------------------------------------------

def test_constant_term_examples():
    assert constant_term_check(3, 1, 2, 1)
    assert constant_term_index(2, 1, 3, 1) == (1, 1)
    assert constant_term_check(2, 1, 3, 1)
    with pytest.raises(BudgetExceeded):
        constant_term_check(2, 2, 19, 1)
    with pytest.raises(ValueError):
        constant_term_index(5, 1, 3, 1)


def test_two_core_constant_points():
    for b in range(3):
        assert t_core_count((9 ** b - 1) // 8, 2) % 2 == 1


@pytest.mark.parametrize("m", [2, 3, 5, 7])
def test_constant_terms_small_grid(m):
    for p, ks in ((2, range(1, 4)), (3, range(1, 9))):
        for k in ks:
            for e in (1, 2):
                try:
                    assert constant_term_check(p, k, m, e, budget=50000)
                except BudgetExceeded:
                    pass


# -- series congruences ---------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 5, 7])
def test_reason_congruences(m):
    for p, ks in ((2, range(1, 4)), (3, range(1, 9))):
        for k in ks:
            res = reason_congruence(p, k, m).verify(50, budget=200000)
            assert res["passed"] is not False
            if res["passed"]:
                assert res["coefficients"] >= 50


def test_series_congruence_divisor_and_failure():
    pbar = PartitionFunction("overpartition")
    good = SeriesCongruence(pbar, 4, 3, EtaQuotient.f(1, 18), divisor=8, modulus=2)
    assert good.verify(60)["passed"]
    bad = SeriesCongruence(pbar, 4, 3, EtaQuotient.f(1, 18), divisor=16, modulus=2)
    assert bad.verify(60)["passed"] is False
    wrong = SeriesCongruence(pbar, 4, 1, EtaQuotient.f(1, 7), divisor=2, modulus=2)
    assert wrong.verify(60)["passed"] is False
    assert "≡" in good.describe()


# -- catalogue ------------------------------------------------------------

def test_catalogue_examples():
    fams = application_families()
    keys = {(f.function.name, f.M, f.r, f.modulus, f.expected) for f in fams}
    assert ("pbar", 36, 21, 4, 0) in keys
    assert ("a_2", 9, 7, 2, 0) in keys
    assert ("b_9", 4, 3, 3, 0) in keys
    assert ("b_25", 16, 23, 5, 0) in keys
    assert ("b_17", 2 ** 18, 305834, 17, 0) in keys
    assert ("b_19", 3 ** 10, 63969, 19, 0) in keys
    assert 35 <= len(fams) <= 50
    for f in fams:
        assert f.chain, f.describe()
        assert f.to_json()["function"] == f.function.name


def test_catalogue_verifies_small_range():
    for f in application_families():
        if f.M * 30 + f.r < 50000:
            rep = verify_family(f, 30, budget=50000, chain_coeffs=20)
            assert rep.ok, f.describe()


def test_theorem_families_grid():
    fams = theorem_families((2, 3))
    assert len(fams) == len({(f.label, f.function, f.modulus, f.M, f.r) for f in fams})
    for f in fams:
        if f.M * 20 + f.r < 20000:
            assert verify_family(f, 20, budget=20000, chain=False).passed
