"""Eta products, theta quotients, and the bounded replicability check.

Low-order Faber columns have closed forms (F_2 = f^2 - 2a_1 and
F_3 = f^3 - 3a_1 f - 3a_2), which give an oracle for the recurrence;
the named-series catalog is pinned against frozen expansions and
against quotients recomputed from fixed-sublattice thetas.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from thetaforge.codes import catalog_code
from thetaforge.errors import DomainError, ParseError
from thetaforge.lattice import catalog_theta, theta_fixed, theta_full
from thetaforge.modfunc import (
    MT_NAMES, eta_product, faber_table, identify, is_replicable,
    mckay_thompson, orbit_degree, parse_orbit_type, strip_constant,
    theta_quotient,
)
from thetaforge.perms import parse_generators, parse_perm
from thetaforge.qseries import DEN, PrecisionError, QSeries, eta

T = lambda n: n * DEN

HAM = catalog_code("hamming8")


# ---------- orbit types and eta products ----------

def test_parse_orbit_type_forms():
    want = ((1, 2), (2, 1), (4, 1))
    assert parse_orbit_type("1^2 2 4") == want
    assert parse_orbit_type({4: 1, 1: 2, 2: 1}) == want
    assert parse_orbit_type([1, 1, 2, 4]) == want
    assert parse_orbit_type([(1, 2), (2, 1), (4, 1)]) == want
    assert orbit_degree(want) == 8


@pytest.mark.parametrize("bad", ["", "2^", "x3", "2^-1"])
def test_parse_orbit_type_rejects_junk(bad):
    with pytest.raises((ParseError, DomainError)):
        parse_orbit_type(bad)


def test_eta_product_is_product_of_etas():
    prod = eta_product({2: 2, 4: 1}, T(10))
    ref = eta(2, T(10)) ** 2 * eta(4, T(10))
    assert prod.matches(ref)
    # valuation only depends on the degree: sum over cycles of t/24
    assert prod.valuation48() == 2 * 8
    assert eta_product({1: 8}, T(4)).valuation48() == 2 * 8
    assert eta_product({1: 2, 2: 1, 4: 1}, T(4)).valuation48() == 2 * 8


# ---------- theta quotients ----------

def test_quotient_of_full_lattice_theta_is_shifted_j():
    f = theta_quotient(theta_full(HAM, T(16)), {1: 8}, N=8)
    got, delta = identify(f)
    assert got == "T_1A" and delta == 744
    assert f.coeff48(-DEN) == 1
    assert f.coeff48(0) == 744
    assert f.coeff48(DEN) == 196884
    assert f.coeff48(2 * DEN) == 21493760


def test_quotient_keeps_integer_coefficients():
    for name in ("hamming8", "hamming8+hamming8", "golay24"):
        code = catalog_code(name)
        f = theta_quotient(theta_full(code, T(10)), {1: code.n}, N=code.n)
        assert f.is_integral()


def test_raw_quotient_used_for_inner_power_rows():
    # no 24/N rescaling: theta over eta(q^2)^4 alone
    th = theta_fixed(HAM, [parse_perm("(1,7)(2,4)(3,8)(5,6)", 8)], T(16))
    f = theta_quotient(th, {2: 4})
    assert f.valuation48() == -16
    assert [f.coeff48(-16 + 48 * k) for k in range(7)] == [
        1, 8, 28, 64, 134, 288, 568]


def test_quotient_rejects_wrong_rank():
    th = theta_full(HAM, T(8))
    with pytest.raises(DomainError):
        theta_quotient(th, {1: 8}, N=12)
    with pytest.raises(DomainError):
        theta_quotient(th - 1, {1: 8}, N=8)


def test_klein_subgroup_quotient_expansion():
    gens = parse_generators("(4,6)(5,7), (4,7)(5,6), (1,3)(2,8)", 8)
    th = theta_fixed(HAM, gens, T(16))
    f = theta_quotient(th, {2: 2, 4: 1}, N=8)
    assert [f.coeff48(k * DEN) for k in range(-1, 8)] == [
        1, 18, 150, 780, 2928, 8892, 24032, 60840, 145089]
    assert identify(f) == (None, None)


# ---------- Faber recurrence ----------

def faber_low_columns(f):
    """F_2 and F_3 written out directly instead of recursively."""
    a1 = f.coeff48(DEN)
    a2 = f.coeff48(2 * DEN)
    return f * f - 2 * a1, f * f * f - 3 * a1 * f - 3 * a2


def test_faber_table_against_closed_forms():
    f, _ = strip_constant(mckay_thompson("T_4A", T(10)))
    report = faber_table(f, 4)
    f2, f3 = faber_low_columns(f)
    for n in range(1, 5):
        assert report.table[n][1] == f.coeff48(n * DEN)
        assert report.table[n][2] == Fraction(f2.coeff48(n * DEN), 2)
        assert report.table[n][3] == Fraction(f3.coeff48(n * DEN), 3)


def test_faber_table_needs_precision():
    f, _ = strip_constant(mckay_thompson("T_3A", T(24)))
    with pytest.raises(PrecisionError):
        faber_table(f, 12)
    assert is_replicable(f, 12).verdict == "insufficient-precision"


def test_faber_table_rejects_unnormalized_input():
    with pytest.raises(DomainError):
        faber_table(mckay_thompson("T_4A", T(10)), 4)  # constant 24 left in
    with pytest.raises(DomainError):
        faber_table(eta(1, T(10)), 4)


coeff_st = st.integers(min_value=-9, max_value=9)


@given(st.lists(coeff_st, min_size=1, max_size=8))
@settings(max_examples=40, deadline=None)
def test_faber_table_symmetry(tail):
    K = 4
    coeffs = {-DEN: 1}
    coeffs.update({(i + 1) * DEN: c for i, c in enumerate(tail) if c})
    f = QSeries(coeffs, T(2 * K + 1))
    report = faber_table(f, K)
    for n in range(1, K + 1):
        for k in range(1, K + 1):
            assert report.table[n][k] == report.table[k][n]


@given(st.fractions(min_value=-20, max_value=20, max_denominator=6))
@settings(max_examples=25, deadline=None)
def test_sparse_series_is_replicable(c):
    coeffs = {-DEN: 1}
    if c:
        coeffs[DEN] = c if c.denominator > 1 else int(c)
    f = QSeries(coeffs, T(26))
    assert is_replicable(f, 12).verdict == "replicable-up-to-K_rep"


# ---------- named series ----------

def test_t4a_expansion():
    f = mckay_thompson("T_4A", T(6))
    assert [f.coeff48(k * DEN) for k in range(-1, 6)] == [
        1, 24, 276, 2048, 11202, 49152, 184024]


def test_t3a_expansion_starts_42():
    f = mckay_thompson("T_3A", T(3))
    assert f.coeff48(-DEN) == 1
    assert f.coeff48(0) == 42
    assert f.coeff48(DEN) == 783
    assert f.coeff48(2 * DEN) == 8672


def test_t12a_and_t7a_constants():
    assert mckay_thompson("T_12A", T(2)).coeff48(0) == 6
    assert mckay_thompson("T_7A", T(2)).coeff48(0) == 9


def test_halved_dilations_are_consistent():
    # the square of the order-8 series is the order-4 one in q^2,
    # and the fourth power of the order-16 one is it in q^4
    t4a = mckay_thompson("T_4A", T(24))
    t8b = mckay_thompson("T_8B", T(12))
    t16a = mckay_thompson("T_16a", T(6))
    assert (t8b * t8b).matches(t4a.dilate(2))
    assert (t16a ** 4).matches(t4a.dilate(4))
    t3a = mckay_thompson("T_3A", T(12))
    t6b = mckay_thompson("T_6b", T(6))
    assert (t6b * t6b).matches(t3a.dilate(2))


def test_all_named_series_are_integral_hauptmodul_shaped():
    for name in MT_NAMES:
        f = mckay_thompson(name, T(26))
        assert f.valuation48() == -DEN
        assert f.lead_coeff() == 1
        assert f.is_integral()
        assert is_replicable(f, 12).verdict == "replicable-up-to-K_rep"


def test_unknown_series_name_rejected():
    with pytest.raises(DomainError):
        mckay_thompson("T_2A", T(4))


def test_k_lattice_theta_closed_form():
    # ((eta_1 eta_7)^3 + 4 (eta_2 eta_14)^3) / (eta_1 eta_2 eta_7 eta_14)
    w = T(12)
    num = (eta(1, w) * eta(7, w)) ** 3 + 4 * (eta(2, w) * eta(14, w)) ** 3
    den = eta(1, w) * eta(2, w) * eta(7, w) * eta(14, w)
    assert (num / den).matches(catalog_theta("K", 1, T(10)))


# ---------- orbit-type quotients land on the catalog ----------

PAIRINGS = [
    ("T_1A", {1: 8}, ("E8", 1), 744),
    ("T_4A", {2: 4}, ("A1^4", 2), 0),
    ("T_8B", {4: 2}, ("A1^2", 4), 0),
    ("T_16a", {8: 1}, ("A1", 8), 0),
    ("T_3A", {1: 2, 3: 2}, ("A2^2", 1), 0),
    ("T_6b", {2: 1, 6: 1}, ("A2", 2), 0),
    ("T_7A", {1: 1, 7: 1}, ("K", 1), 0),
]


@pytest.mark.parametrize("name,otype,ref,delta", PAIRINGS,
                         ids=[p[0] for p in PAIRINGS])
def test_orbit_type_quotients_identify(name, otype, ref, delta):
    th = catalog_theta(ref[0], ref[1], T(14))
    f = theta_quotient(th, otype, N=8)
    assert identify(f) == (name, delta)


def test_split_orbit_theta_identifies_as_t12a():
    th = catalog_theta("A1", 2, T(14)) * catalog_theta("A1", 6, T(14))
    f = theta_quotient(th, {2: 1, 6: 1}, N=8)
    assert identify(f) == ("T_12A", 0)


def test_identify_needs_window():
    f = mckay_thompson("T_4A", T(8))
    with pytest.raises(PrecisionError):
        identify(f)
    assert identify(eta(1, T(12))) == (None, None)


# ---------- verdicts for the order-two classes ----------

def quotient_of(text):
    g = parse_perm(text, 8)
    th = theta_fixed(HAM, [g], T(26))
    return theta_quotient(th, g.cycle_type(), N=8)


def test_replicable_class_identifications():
    for text, want in [
        ("(1,7)(2,4)(3,8)(5,6)", "T_4A"),
        ("(1,5,2)(3,7,8)", "T_3A"),
        ("(1,3,7,8,5,4,2)", "T_7A"),
        ("(1,3,7,8)(2,5,4,6)", "T_8B"),
        ("(1,3,7,8,2,6)(4,5)", "T_6b"),
    ]:
        f = quotient_of(text)
        r = is_replicable(f, 12)
        assert r.verdict == "replicable-up-to-K_rep", text
        assert identify(f)[0] == want


def test_nonreplicable_class_violations():
    f = quotient_of("(1,6)(7,8)")
    r = is_replicable(f, 12)
    assert r.verdict == "not-replicable"
    assert r.violations == [
        (2, 3, 1, 6), (2, 5, 1, 10), (3, 4, 1, 12),
        (4, 6, 2, 12), (5, 6, 3, 10)]
    assert identify(f) == (None, None)
    for text in ["(1,2)(3,8)(4,7)(5,6)", "(1,5,2,6)(3,7,8,4)", "(1,7,8,6)(4,5)"]:
        r = is_replicable(quotient_of(text), 12)
        assert r.verdict == "not-replicable"
        assert r.violations[0] == (2, 3, 1, 6)


def test_report_round_trips_to_json():
    r = is_replicable(quotient_of("(1,6)(7,8)"), 12)
    obj = r.to_json_obj()
    assert obj["verdict"] == "not-replicable"
    assert obj["violations"][0] == [2, 3, 1, 6]
    assert obj["identified_as"] is None
