import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulercong.series import PrecisionError, TruncatedLaurentSeries as TLS
from eulercong.transition import (RECURRENCE_CONSTANTS, CoeffState, basis_size,
                                  build_step_matrix, coeff_table, gf_identity_sides,
                                  initial_state, ratio_exponents, verify_gf_identity,
                                  verify_order4)

from reference_values import COEFF_INITIAL, RECURRENCE

PAIRS = [(2, k) for k in range(1, 4)] + [(3, k) for k in range(1, 9)]


def test_constants_match_reference():
    assert RECURRENCE_CONSTANTS == RECURRENCE


@pytest.mark.parametrize("pk", PAIRS)
def test_initial_values(pk):
    table = coeff_table(*pk, 3)
    for idx, want in COEFF_INITIAL[pk].items():
        got = table[idx].vec
        assert len(got) == len(want)
        for g, w in zip(got, want):
            if w is not None:
                assert g == w, (pk, idx)


def test_step_matrix_examples():
    assert build_step_matrix(2, 2, "even->odd").entries == ((128, 8), (1, 0))
    assert build_step_matrix(2, 2, "odd->even").entries == ((1, -24), (0, -2048))
    # D'_{7,1}(odd) = 1701 C'_7 + 9 D'_{7,2}
    assert build_step_matrix(3, 7, "even->odd").entries[1] == (1701, 0, 9)
    with pytest.raises(ValueError):
        build_step_matrix(2, 2, "sideways")


@pytest.mark.parametrize("pk", PAIRS)
def test_two_step_determinant_nonzero(pk):
    eo = build_step_matrix(*pk, "even->odd").entries
    oe = build_step_matrix(*pk, "odd->even").entries
    n = len(eo)
    prod = [[sum(oe[i][t] * eo[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    assert _det(prod) != 0


def _det(a):
    if len(a) == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * _det([row[:j] + row[j + 1:] for row in a[1:]])
               for j in range(len(a)))


def test_vector_lengths():
    assert len(initial_state(2, 1).vec) == 1
    assert all(len(s.vec) == 1 for s in coeff_table(2, 1, 30))   # no B term for k=1
    assert [basis_size(3, k) for k in range(1, 9)] == [1, 1, 2, 2, 2, 3, 3, 3]
    assert coeff_table(3, 1, 1)[1].vec == (-3,)
    with pytest.raises(ValueError):
        initial_state(2, 4)
    with pytest.raises(ValueError):
        initial_state(5, 1)


def test_parity():
    t = coeff_table(3, 5, 3)
    assert [s.parity for s in t] == ["even", "odd", "even", "odd"]


@pytest.mark.parametrize("pk", PAIRS)
def test_order4(pk):
    assert verify_order4(*pk, 20)
    f, g = RECURRENCE[pk]
    assert not verify_order4(*pk, 20, constants=(f + 1, g))


def test_order4_needs_length():
    with pytest.raises(ValueError):
        verify_order4(2, 1, 7)


def test_k8_first_column_vanishes():
    assert all(s.vec[1] == 0 for s in coeff_table(3, 8, 40))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PAIRS), st.integers(2, 500), st.integers(1, 30))
def test_reduction_commutes(pk, m, n):
    exact = coeff_table(*pk, n)
    modular = coeff_table(*pk, n, modulus=m)
    for a, b in zip(exact, modular):
        assert tuple(v % m for v in a.vec) == b.vec
        assert a.reduce(m) == b


@pytest.mark.parametrize("k", range(3, 9))
def test_ratio_exponents(k):
    ws = ratio_exponents(k, 20)
    table = coeff_table(3, k, 40)
    for i, w in ws.items():
        if w is None:
            assert all(s.vec[i] == 0 for s in table)
            continue
        assert w >= 1
        for b in range(1, 21):
            assert table[2 * b].vec[i] == -3 ** w * table[2 * b - 1].vec[i]


@pytest.mark.parametrize("pk", PAIRS)
@pytest.mark.parametrize("index", range(5))
def test_gf_identity(pk, index):
    assert verify_gf_identity(*pk, index)


def test_gf_identity_examples():
    assert verify_gf_identity(2, 1, 0)
    assert verify_gf_identity(3, 7, 2, prec=2000)
    lhs, rhs, st_ = gf_identity_sides(2, 2, 1)
    assert st_.vec == (128, 1)
    assert lhs.min_exp == -1 and lhs == rhs


def test_gf_identity_detects_wrong_coefficients():
    lhs, rhs, _ = gf_identity_sides(3, 7, 3)
    assert lhs == rhs
    assert lhs != rhs + TLS.monomial(0, rhs.prec, 1)


def test_gf_identity_insufficient_precision():
    with pytest.raises(PrecisionError):
        verify_gf_identity(3, 8, 4, prec=3**4 * 5)


def test_gf_identity_mod_m():
    assert verify_gf_identity(3, 6, 4, modulus=7)


def test_state_step_matches_table():
    st_ = CoeffState(3, 7, 0, (1, 0, 0))
    for expected in coeff_table(3, 7, 6)[1:]:
        st_ = st_.step()
        assert st_ == expected
