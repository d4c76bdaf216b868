import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mqsolve.gf2e import MODULI, SUPPORTED_DEGREES, Gf2eField, choose_extension_degree

from conftest import make_rng
from oracles import schoolbook_gf_mul


@pytest.fixture(scope="module", params=(8, 16, 24, 32))
def field(request):
    return Gf2eField(request.param)


def test_supported_degrees():
    assert SUPPORTED_DEGREES == (8, 16, 24, 32, 48, 64)
    with pytest.raises(ValueError):
        Gf2eField(12)


def test_choose_extension_degree():
    assert choose_extension_degree(1) == 8
    assert choose_extension_degree(48) == 16      # 2*48*47 = 4512 < 2^16 - 1
    assert choose_extension_degree(181) == 16
    assert choose_extension_degree(182) == 24     # 2*182*181 = 65884 > 2^16 - 1
    assert choose_extension_degree(672) == 24
    assert choose_extension_degree(2896) == 24
    assert choose_extension_degree(2897) == 32


def test_char2_self_cancellation(field):
    rng = make_rng(field.e)
    for _ in range(50):
        a = field.rand(rng)
        assert field.add(a, a) == 0


def test_inverse_of_random_nonzero(field):
    rng = make_rng(field.e + 1)
    checked = 0
    while checked < 1000:
        a = field.rand(rng)
        if a == 0:
            continue
        assert field.mul(a, field.inv(a)) == 1
        checked += 1


def test_inv_zero_raises(field):
    with pytest.raises(ZeroDivisionError):
        field.inv(0)


def test_e8_mul_exhaustive_vs_schoolbook():
    f = Gf2eField(8)
    for a in range(256):
        for b in range(256):
            assert f.mul(a, b) == schoolbook_gf_mul(a, b, MODULI[8], 8)


def test_e16_mul_sample_vs_schoolbook():
    f = Gf2eField(16)
    rng = make_rng(99)
    for _ in range(2000):
        a, b = f.rand(rng), f.rand(rng)
        assert f.mul(a, b) == schoolbook_gf_mul(a, b, MODULI[16], 16)


def test_z_generates_multiplicative_group():
    # the baked moduli are primitive: z has full order 2^e - 1
    for e in (8, 16):
        f = Gf2eField(e)
        seen = set()
        x = 1
        for _ in range(f.order):
            seen.add(x)
            x = f.mul(x, 2)
        assert len(seen) == f.order and x == 1


@settings(max_examples=100, deadline=None)
@given(st.sampled_from((8, 16, 48, 64)), st.data())
def test_field_axioms(e, data):
    f = Gf2eField(e)
    top = (1 << e) - 1
    a = data.draw(st.integers(0, top))
    b = data.draw(st.integers(0, top))
    c = data.draw(st.integers(0, top))
    assert f.mul(a, b) == f.mul(b, a)
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)
    assert f.mul(a, 1) == a and f.mul(a, 0) == 0


def test_pow_edge_cases(field):
    assert field.pow(0, 0) == 1
    assert field.pow(0, 5) == 0
    assert field.pow(1, 10**9) == 1
    rng = make_rng(7)
    a = 0
    while a == 0:
        a = field.rand(rng)
    assert field.pow(a, field.order) == 1
    assert field.mul(field.pow(a, 3), a) == field.pow(a, 4)


def test_vector_ops_match_scalar(field):
    rng = make_rng(17)
    a = field.rand_vec(rng, 40)
    b = field.rand_vec(rng, 40)
    s = field.rand(rng)
    mul = field.vec_mul(a, b)
    assert all(int(m) == field.mul(int(x), int(y)) for m, x, y in zip(mul, a, b))
    scale = field.vec_scale(a, s)
    assert all(int(m) == field.mul(int(x), s) for m, x in zip(scale, a))
    acc = field.zeros(40)
    field.vec_axpy(acc, a, s)
    assert np.array_equal(acc, scale)
    dot = field.dot(a, b)
    expect = 0
    for x, y in zip(a, b):
        expect ^= field.mul(int(x), int(y))
    assert dot == expect


def test_moduli_documented_bit_exact():
    assert MODULI[8] == 0x11D
    assert MODULI[16] == 0x1002D
    assert MODULI[24] == 0x100001B
    assert MODULI[32] == 0x1000000AF
    assert MODULI[48] == 0x10000000000B7
    assert MODULI[64] == 0x1000000000000001B
