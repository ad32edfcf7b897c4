"""Permutation parsing, group closure, and orbit bookkeeping."""

import pytest
from hypothesis import given, strategies as st

from thetaforge.errors import DomainError, ParseError
from thetaforge.perms import (
    Perm, brute_force_automorphisms, group_elements, orbit_type, orbits,
    parse_generators, parse_perm, read_group_file, type_str,
)


perm_st = st.permutations(range(8)).map(lambda im: Perm(tuple(im)))


# ---------- Perm basics ----------

def test_identity():
    e = Perm.identity(5)
    assert e.is_identity()
    assert e.order() == 1
    assert e.cycles() == []
    assert str(e) == "()"


def test_composition_order():
    # images compose right-to-left: (a*b)(i) = a(b(i))
    a = parse_perm("(1,2)", 3)
    b = parse_perm("(2,3)", 3)
    assert (a * b)(2) == 0  # b: 2->3 is 1->2 zero-based, then a: 2->1
    assert a * b == parse_perm("(1,2,3)", 3)
    assert b * a == parse_perm("(1,3,2)", 3)


def test_pow_and_inverse():
    g = parse_perm("(1,3,7,8)(2,5,4,6)", 8)
    assert g.order() == 4
    assert g ** 4 == Perm.identity(8)
    assert g ** -1 == g.inverse()
    assert g ** 7 == g.inverse()
    assert g ** -3 == g
    assert (g ** 2).cycle_type() == {2: 4}


def test_cycle_type_counts_fixed_points():
    g = parse_perm("(2,8,4,6)(3,5)", 8)
    assert g.cycle_type() == {1: 2, 2: 1, 4: 1}
    assert g.order() == 4
    assert str(g) == "(2,8,4,6)(3,5)"


def test_apply_mask():
    g = parse_perm("(1,2,3)", 4)
    assert g.apply_mask(0b0001) == 0b0010
    assert g.apply_mask(0b0111) == 0b0111
    assert g.apply_mask(0b1001) == 0b1010


@given(perm_st, perm_st)
def test_mask_action_is_homomorphism(a, b):
    mask = 0b10110001
    assert a.apply_mask(b.apply_mask(mask)) == (a * b).apply_mask(mask)


@given(perm_st)
def test_parse_roundtrip(p):
    assert parse_perm(str(p), 8) == p


@given(perm_st)
def test_order_annihilates(p):
    assert p ** p.order() == Perm.identity(8)
    assert p * p.inverse() == Perm.identity(8)


# ---------- parsing errors ----------

def test_parse_rejects_out_of_range():
    with pytest.raises(ParseError, match="9"):
        parse_perm("(1,9)", 8)


def test_parse_rejects_repeats():
    with pytest.raises(ParseError, match="3"):
        parse_perm("(1,3)(3,5)", 8)


def test_parse_rejects_unbalanced():
    with pytest.raises(ParseError):
        parse_perm("(1,2", 8)
    with pytest.raises(ParseError):
        parse_perm("(1,(2,3))", 8)
    with pytest.raises(ParseError):
        parse_perm("1,2)", 8)


def test_parse_generators_splits_at_top_level():
    gens = parse_generators("(1,2)(3,4), (1,3,7,8)(2,5,4,6); (4,5)", 8)
    assert len(gens) == 3
    assert gens[2] == parse_perm("(4,5)", 8)


def test_parse_generators_single():
    gens = parse_generators("(2,8,4,6)(3,5)", 8)
    assert len(gens) == 1


def test_degree_mismatch():
    a = parse_perm("(1,2)", 4)
    b = parse_perm("(1,2)", 5)
    with pytest.raises(DomainError):
        a * b


# ---------- orbits ----------

def test_orbits_of_trivial_group():
    assert orbits([], 4) == [(0,), (1,), (2,), (3,)]
    assert orbit_type([], 4) == {1: 4}


def test_orbits_and_type():
    gens = parse_generators("(4,6)(5,7), (4,7)(5,6), (1,3)(2,8)", 8)
    assert orbits(gens, 8) == [(0, 2), (1, 7), (3, 4, 5, 6)]
    assert orbit_type(gens, 8) == {2: 2, 4: 1}
    assert type_str(orbit_type(gens, 8)) == "2^2 4^1"


def test_orbit_type_subgroup_vs_element():
    g = parse_perm("(1,3,7,8,2,6)(4,5)", 8)
    assert orbit_type([g], 8) == {2: 1, 6: 1}
    assert g.cycle_type() == {2: 1, 6: 1}


# ---------- group closure ----------

def test_group_elements_s3():
    gens = parse_generators("(1,2), (1,2,3)", 3)
    els = group_elements(gens)
    assert len(els) == 6
    assert Perm.identity(3) in els


def test_group_elements_cyclic():
    g = parse_perm("(1,3,7,8,5,4,2)", 8)
    assert len(group_elements([g])) == 7


def test_group_elements_cap():
    gens = parse_generators("(1,2), (1,2,3,4,5,6,7,8)", 8)
    with pytest.raises(DomainError):
        group_elements(gens, cap=100)


def test_brute_force_automorphisms_counts_s3():
    # stabilizer of the single "codeword" {1,2} inside S3 has order 2
    found = brute_force_automorphisms(lambda m: m == 0b011, 3)
    assert len(found) == 2


def test_brute_force_automorphisms_refuses_large_degree():
    with pytest.raises(DomainError):
        brute_force_automorphisms(lambda m: m == 0, 9)


def test_read_group_file(tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("# two generators\n(1,2)(3,4)\n\n(1,3)(2,4)\n")
    gens = read_group_file(str(path), 4)
    assert len(gens) == 2
    assert orbit_type(gens, 4) == {4: 1}
