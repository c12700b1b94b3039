from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indkit.bijections import (PartialBijection, PhiMap, RaySet, is_dyadic, make_routed_bijection,
                               measure)
from indkit.elements import NAT, ZERO_M, ZERO_Z, ZNEG, ZPOS, MElement
from indkit.model import r0

from .strategies import elements, window_elements


def M(mod: int, r: int) -> RaySet:
    """Uniform residue class ``r`` modulo ``mod`` (a power of two)."""
    return RaySet.uniform(mod.bit_length() - 1, {r})


def window(*sets: RaySet) -> list[MElement]:
    bound = max(3 * s.modulus + s.exception_bound() for s in sets)
    return window_elements(bound)


@st.composite
def raysets(draw):
    exp = draw(st.integers(0, 3))
    mod = 1 << exp
    res = [draw(st.frozensets(st.integers(0, mod - 1))) for _ in range(3)]
    added = draw(st.frozensets(elements(10), max_size=3))
    removed = draw(st.frozensets(elements(10), max_size=3))
    return RaySet.build(exp, res, added, removed)


def test_complement_of_universe_is_empty():
    assert (~RaySet.universe()).is_empty()


def test_two_residue_classes_cover_everything():
    u = M(2, 0) | M(2, 1)
    assert u.is_universe()
    assert all(e in u for e in window_elements(20))


def test_intersection_of_nested_classes():
    s = M(2, 0) & M(4, 2)
    assert s == M(4, 2)
    assert all((e in s) == (e.index % 4 == 2) for e in window_elements(20))


def test_canonical_form_has_minimal_modulus():
    assert RaySet.uniform(3, {1, 3, 5, 7}) == M(2, 1)
    assert RaySet.uniform(3, {1, 3, 5, 7}).modulus == 2


@pytest.mark.parametrize("s,mu", [
    (RaySet.comp_set(NAT), Fraction(1, 3)),
    (M(2, 0), Fraction(1, 2)),
    (M(4, 0), Fraction(1, 4)),
    (RaySet.universe(), Fraction(1)),
    (RaySet.finite([ZERO_M, ZERO_Z]), Fraction(0)),
])
def test_measures(s, mu):
    assert measure(s) == mu


def test_dyadic():
    assert is_dyadic(Fraction(1, 4)) and is_dyadic(0) and is_dyadic(Fraction(3, 8))
    assert not is_dyadic(Fraction(1, 3)) and not is_dyadic(Fraction(2, 3))


@settings(max_examples=150, deadline=None)
@given(raysets(), raysets())
def test_boolean_ops_match_membership(a, b):
    for e in window(a, b):
        assert (e in a | b) == (e in a or e in b)
        assert (e in a & b) == (e in a and e in b)
        assert (e in a - b) == (e in a and e not in b)
        assert (e in a ^ b) == ((e in a) != (e in b))
        assert (e in ~a) == (e not in a)


@settings(max_examples=100, deadline=None)
@given(raysets(), raysets(), raysets())
def test_boolean_algebra_laws(a, b, c):
    assert a | (b & c) == (a | b) & (a | c)
    assert ~(a | b) == ~a & ~b
    assert ~~a == a
    assert a | ~a == RaySet.universe()


@settings(max_examples=100, deadline=None)
@given(raysets(), raysets())
def test_measure_additive_on_disjoint_sets(a, b):
    b = b - a
    assert measure(a | b) == measure(a) + measure(b)


def test_phi_composition():
    assert PhiMap(1).compose(PhiMap(1)) == PhiMap(2)
    assert PhiMap(1, 1)(3) == 7


def test_r0_twice_on_the_nat_ray():
    rr = (r0() @ r0()).restrict(RaySet.comp_set(NAT))
    for n in range(21):
        assert rr.apply(MElement(1, n)) == MElement(1, 4 * n)


def test_identity_law():
    d = M(2, 1)
    assert PartialBijection.identity(d).compose(r0()) == r0().restrict_range(d)
    assert r0().compose(PartialBijection.identity(d)) == r0().restrict(d)


def test_double_inverse():
    for rel in (r0(), PartialBijection.shift(3), r0() @ PartialBijection.shift(1)):
        assert rel.inverse().inverse() == rel


def test_shift_inverse_drops_the_first_naturals():
    inv = PartialBijection.shift(3).inverse()
    assert all(inv.apply(MElement(1, k)) is None for k in range(3))
    assert inv.apply(MElement(1, 3)) == ZERO_M
    assert inv.apply(ZERO_Z) == MElement(2, -3)


def test_r0_inverse_value():
    assert r0().inverse().apply(MElement(2, 6)) == MElement(1, 3)


def test_diagonals():
    d = M(4, 3)
    assert PartialBijection.identity(d).diagonal() == d
    assert r0().diagonal().is_empty()
    assert not any(r0().holds(e, e) for e in window_elements(50))
    assert PartialBijection.shift(1).diagonal().is_empty()


def test_image_of_r0_by_sampling():
    img = r0().image(RaySet.universe())
    hits = {r0().apply(e) for e in window_elements(40)}
    for e in window_elements(40):
        if e in hits:
            assert e in img
    assert img.is_uniform() and img == M(2, 0)


def test_image_under_an_affine_map():
    rel, parity = make_routed_bijection(RaySet.universe(), PhiMap(1, 1))
    assert parity == "odd"
    img = rel.image(M(2, 0))
    for e in window_elements(40):
        if e in M(2, 0) and rel.apply(e) is not None:
            assert rel.apply(e) in img
            assert rel.apply(e).index % 4 == 1


def test_routed_constructor_examples():
    rel, parity = make_routed_bijection(RaySet.universe(), PhiMap(1))
    assert parity == "odd" and rel == r0()
    quad, parity = make_routed_bijection(RaySet.universe(), PhiMap(2))
    assert parity == "even"
    assert all(quad.apply(MElement(1, n)) == MElement(1, 4 * n) for n in range(20))
    assert quad.range() == M(4, 0)
    plus2, _ = make_routed_bijection(RaySet.universe(), PhiMap(0, 2))
    dom = plus2.domain()
    assert MElement(2, -1) not in dom and MElement(2, -2) not in dom
    assert MElement(2, -3) in dom and ZERO_Z in dom


def test_routed_constructor_rejects_non_uniform_domains():
    with pytest.raises(ValueError):
        make_routed_bijection(RaySet.comp_set(NAT), PhiMap(1))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2), st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
def test_routed_constructor_uniform_in_uniform_out(exp, r, z, shift):
    dom = RaySet.uniform(exp, {r % (1 << exp)})
    rel, _ = make_routed_bijection(dom, PhiMap(z, shift))
    assert rel.image(dom).is_uniform()
    if not PhiMap(z, shift).is_identity():
        assert len(rel.diagonal().elements()) <= 2


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([0, 1, 2]), st.integers(-3, 3), st.sampled_from([0, 1, 2]), st.integers(-3, 3))
def test_composition_is_pointwise(z1, r1, z2, r2):
    a, _ = make_routed_bijection(RaySet.universe(), PhiMap(z1, r1))
    b, _ = make_routed_bijection(RaySet.universe(), PhiMap(z2, r2))
    ab = a @ b
    for e in window_elements(12):
        mid = b.apply(e)
        want = a.apply(mid) if mid is not None else None
        assert ab.apply(e) == want
        if want is not None:
            assert ab.inverse().apply(want) == e


def test_json_forms():
    s = M(4, 1) | RaySet.finite([ZERO_M])
    j = s.to_json()
    assert j["modulus"] == 4
    rj = r0().to_json()
    assert {p["src"] for p in rj["pieces"]} == {"N", "Z-", "Z+"}
    assert ZNEG != ZPOS
