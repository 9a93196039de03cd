import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulercong.dissect import extract
from eulercong.eta import (EtaQuotient, PartitionFunction, euler_power, euler_product_naive,
                           expand_eta, generalized_pentagonals, is_generalized_pentagonal,
                           parse_eta, partition_gf, pentagonal_f1)
from eulercong.series import PrecisionError, TruncatedLaurentSeries as TLS

from oracles import (eta_list, euler_power_list, overpartition_count, partition_count,
                     regular_count, t_core_count)


def test_pentagonal_examples():
    f = pentagonal_f1(10)
    assert f.to_list() == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0]
    assert f[0] == 1 and f[5] == 1 and f[3] == 0


@pytest.mark.parametrize("prec", [1, 2, 50, 400])
def test_pentagonal_matches_product(prec):
    assert pentagonal_f1(prec) == euler_product_naive(prec)
    assert pentagonal_f1(prec).prec == prec


def test_pentagonal_support():
    f = pentagonal_f1(3000)
    for n, c in f.items():
        assert c in (-1, 0, 1)
        assert (c != 0) == is_generalized_pentagonal(n)
    assert [n for n, _ in generalized_pentagonals(16)] == [0, 1, 2, 5, 7, 12, 15]


@pytest.mark.parametrize("e", [-7, -2, -1, 0, 1, 3, 8, 24])
def test_euler_power_matches_binomial_oracle(e):
    assert euler_power(e, 60).to_list() == euler_power_list(e, 60)


@pytest.mark.parametrize("m", [2, 5, 19])
def test_euler_power_mod(m):
    assert euler_power(16, 300, m).to_list() == [c % m for c in euler_power_list(16, 300)]


def test_euler_power_cache_truncates():
    long = euler_power(5, 500)
    short = euler_power(5, 40)
    assert short.prec == 40 and short == long


def test_expand_examples():
    assert expand_eta(EtaQuotient.f(1), 10).to_list() == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0]
    two_core = expand_eta(EtaQuotient(((2, 2), (1, -1))), 11).to_list()
    assert two_core == [t_core_count(n, 2) for n in range(11)]
    assert [n for n, c in enumerate(two_core) if c] == [0, 1, 3, 6, 10]
    assert expand_eta(EtaQuotient(), 7).to_list() == [1] * 1 + [0] * 6


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.integers(1, 6), st.integers(-4, 4), max_size=3), st.integers(-3, 3))
def test_expand_matches_oracle(factors, offset):
    prec = 40
    if prec - offset < 1:
        return
    s = expand_eta(EtaQuotient(factors, offset), prec)
    assert s.min_exp == offset and s.prec == prec
    assert s.to_list() == eta_list({t: e for t, e in factors.items() if e}, prec - offset)


def test_expand_precision_error():
    with pytest.raises(PrecisionError):
        expand_eta("q^5*f1", 5)


def test_eta_algebra():
    a = EtaQuotient(((1, 3), (2, -1), (1, 2)), -1)
    assert a.factors == ((1, 5), (2, -1))
    assert (a / a).factors == () and (a / a).offset == 0
    assert (a ** 2).exponent_of(1) == 10
    assert str(parse_eta("q^-1*f1^8*f4^-8")) == "q^-1*f1^8*f4^-8"
    with pytest.raises(ValueError):
        EtaQuotient(((0, 1),))


@pytest.mark.parametrize("text", ["f1", "q^-1*f1^8*f4^-8", "f2^(-3)*q^2*f5", "1"])
def test_parse_roundtrip(text):
    e = parse_eta(text)
    assert parse_eta(str(e)) == e


@pytest.mark.parametrize("bad", ["g1^2", "f1^", "f1**2", "f^3"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_eta(bad)


def test_partition_functions_vs_enumeration():
    assert partition_gf("overpartition", 9).to_list() == [overpartition_count(n) for n in range(9)]
    assert partition_gf("overpartition", 5).to_list() == [1, 2, 4, 8, 14]
    assert partition_gf("p-1", 15).to_list() == [partition_count(n) for n in range(15)]
    assert partition_gf("a2", 13).to_list() == [t_core_count(n, 2) for n in range(13)]
    assert partition_gf("a2", 7)[6] == 1
    assert partition_gf("a4", 11).to_list() == [t_core_count(n, 4) for n in range(11)]
    for ell in (4, 9, 25):
        assert partition_gf(f"b{ell}", 14).to_list() == [regular_count(n, ell) for n in range(14)]


def test_partition_function_parsing():
    assert PartitionFunction.parse("p_8") == PartitionFunction("p_k", 8)
    assert PartitionFunction.parse("pbar").name == "pbar"
    assert PartitionFunction.parse("tcore4").name == "a_4"
    assert PartitionFunction.parse("regular25").name == "b_25"
    with pytest.raises(ValueError):
        PartitionFunction.parse("zeta")
    with pytest.raises(ValueError):
        PartitionFunction("t_core", 1)


def test_two_dissection_of_f2_over_f1_squared():
    prec = 240
    lhs = expand_eta("f2*f1^-2", prec)
    pieces = [
        "f8^19*f4^-14*f16^-6",
        "q*f8^13*f4^-12*f16^-2",
        "q^2*f8^7*f16^2*f4^-10",
        "q^3*f8*f16^6*f4^-8",
    ]
    rhs = None
    for c, spec in zip((1, 2, 4, 8), pieces):
        term = expand_eta(spec, prec).scale(c)
        rhs = term if rhs is None else rhs + term
    assert lhs == rhs and rhs.prec == prec


def test_overpartition_residue_classes():
    prec = 4 * 120
    gf = partition_gf("overpartition", prec)
    forms = {0: (1, "f2^19*f1^-14*f4^-6"), 1: (2, "f2^13*f1^-12*f4^-2"),
             2: (4, "f2^7*f4^2*f1^-10"), 3: (8, "f2*f4^6*f1^-8")}
    for j, (c, spec) in forms.items():
        part = extract(4, j, gf)
        assert part == expand_eta(spec, part.prec).scale(c)


def test_one_and_zero_edges():
    assert euler_power(0, 3).to_list() == [1, 0, 0]
    with pytest.raises(PrecisionError):
        euler_power(2, 0)
    assert TLS.one(2).to_list() == [1, 0]
