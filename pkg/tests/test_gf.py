import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import poly_mulmod
from polargraph.gf import FieldError, MODULUS_TABLE, check_modulus, make_field, field_of_order

SMALL = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3),
         (11, 1), (13, 1)]


def test_prime_field_modulus_is_x():
    f = make_field(3, 1)
    assert f.q == 3
    assert f.modulus == (0, 1)


def test_table_moduli_have_no_roots():
    # exhaust every candidate root for each tabulated modulus
    for (p, k), mod in MODULUS_TABLE.items():
        for r in range(p):
            assert sum(c * r ** i for i, c in enumerate(mod)) % p != 0, (p, k, r)


def test_gf9_and_gf4_moduli():
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_make_field_errors():
    with pytest.raises(FieldError):
        make_field(4, 1)
    with pytest.raises(FieldError):
        make_field(7, 2)  # not tabulated, no modulus given
    with pytest.raises(FieldError):
        make_field(2, 5)


def test_user_modulus_overrides_table():
    f = make_field(3, 2, modulus=[2, 2, 1])  # x^2 + 2x + 2 has no root mod 3
    assert f.modulus == (2, 2, 1)
    x = f.elem([0, 1])
    assert x * x == f.elem([1, 1])  # x^2 = -2x - 2 = x + 1


def test_reducible_moduli_rejected():
    with pytest.raises(FieldError):
        check_modulus(3, 2, [2, 0, 1])  # x^2 - 1
    with pytest.raises(FieldError):
        check_modulus(2, 4, [1, 0, 1, 0, 1])  # (x^2 + x + 1)^2, no roots in GF(2)
    with pytest.raises(FieldError):
        check_modulus(2, 2, [1, 1, 0])  # not monic of degree 2


def test_small_examples():
    f5 = make_field(5)
    assert f5.elem(2) * f5.elem(3) == f5.one
    f9 = make_field(3, 2)
    x9 = f9.elem([0, 1])
    assert x9 * x9 == f9.elem(2)
    f4 = make_field(2, 2)
    x4 = f4.elem([0, 1])
    assert x4.inverse() == f4.elem([1, 1])
    assert x4 ** 2 == f4.elem([1, 1])


def test_gf4_inverse_by_exhaustion():
    f4 = make_field(2, 2)
    x = f4.elem([0, 1])
    assert [y for y in f4.elements() if (x * y) == f4.one] == [x.inverse()]


@pytest.mark.parametrize("p,k", SMALL)
def test_mul_matches_schoolbook(p, k):
    f = make_field(p, k)
    for a in range(f.q):
        for b in range(f.q):
            ref = poly_mulmod(list(f.coeffs(a)), list(f.coeffs(b)), list(f.modulus), p)
            assert f.mul(a, b) == f.code(ref)


@pytest.mark.parametrize("p,k", SMALL)
def test_field_axioms_exhaustive(p, k):
    f = make_field(p, k)
    els = range(f.q)
    for a, b in itertools.product(els, els):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.add(a, f.neg(a)) == 0
    if f.q <= 16:
        for a, b, c in itertools.product(els, els, els):
            assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
            assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a in range(1, f.q):
        assert f.mul(a, f.inv(a)) == 1
        assert f.pow(a, f.q - 1) == 1
    assert f.pow(0, 0) == 1


def test_axioms_on_random_triples_large_field():
    f = make_field(2, 4, modulus=[1, 1, 0, 0, 1])
    big = make_field(251)
    rng = random.Random(0)
    for fld in (f, big):
        for _ in range(10_000 if fld.q > 32 else 500):
            a, b, c = (rng.randrange(fld.q) for _ in range(3))
            assert fld.mul(a, fld.add(b, c)) == fld.add(fld.mul(a, b), fld.mul(a, c))
            assert fld.mul(fld.mul(a, b), c) == fld.mul(a, fld.mul(b, c))


def test_gf9_eighth_powers():
    f = make_field(3, 2)
    assert all(e ** 8 == f.one for e in f.elements()[1:])


@pytest.mark.parametrize("q", [4, 9, 16, 25])
def test_frobenius_is_a_field_automorphism(q):
    f = field_of_order(q)
    s = int(round(q ** 0.5))
    frob = [f.pow(a, s) for a in range(q)]
    assert sorted(frob) == list(range(q))
    for a in range(q):
        for b in range(q):
            assert frob[f.add(a, b)] == f.add(frob[a], frob[b])
            assert frob[f.mul(a, b)] == f.mul(frob[a], frob[b])


def test_mixed_fields_and_zero_inverse():
    a = make_field(5).one
    b = make_field(7).one
    with pytest.raises(FieldError):
        a + b
    with pytest.raises(ZeroDivisionError):
        make_field(5).zero.inverse()


def test_large_field_without_log_tables():
    f = make_field(2, 4, modulus=[1, 1, 0, 0, 1])
    big = make_field(65521)  # above the log-table limit
    assert big._log is None
    assert big.mul(big.inv(12345), 12345) == 1
    assert f._log is not None


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(2, 3), (3, 3), (5, 2), (2, 4)]), st.data())
def test_elem_operators_agree_with_codes(pk, data):
    f = make_field(*pk)
    a = data.draw(st.integers(0, f.q - 1))
    b = data.draw(st.integers(1, f.q - 1))
    ea, eb = f.elem(a), f.elem(b)
    assert (ea * eb).value == f.mul(a, b)
    assert (ea - eb + eb) == ea
    assert (ea / eb) * eb == ea
