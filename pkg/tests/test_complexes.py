import random

import pytest
from hypothesis import given, settings, strategies as st

from _util import complex_from_matrices, obj, random_complex_mod_p
from dgtilt.complexes import (ChainMap, Complex, check_complex, cone, homology,
                              induced_homology_map, is_exact, is_quasi_iso, quasi_iso_routes,
                              shift, shift_map)
from dgtilt.errors import SemanticError
from dgtilt.graded import GradedMap, GradedSpace
from dgtilt.scalars import GF, QQ

one = QQ.one


def test_ct_is_a_complex_with_homology_in_degree_zero():
    c = obj("ct.dga", "CT").complex
    assert check_complex(c).ok
    assert homology(c).dims() == {0: 1}


def test_e2_homology_is_the_underlying_space():
    c = obj("e2.dga", "E2").complex
    assert homology(c).dims() == {0: 1, 1: 1}


def test_nonzero_square_rejected():
    sp = GradedSpace(QQ, {0: ["a"], 1: ["b"], 2: ["c"]})
    d = GradedMap(sp, sp, 1, {"a": {"b": one}, "b": {"c": one}})
    with pytest.raises(SemanticError):
        Complex(sp, d)
    assert not check_complex(Complex(sp, d, check=False)).ok


def test_shift_negates_the_differential():
    c = obj("ct.dga", "CT").complex
    s = shift(c, 1)
    assert s.space.dims() == {-1: 2, 0: 1}
    assert s.d.image("x") == {"y": -one}
    assert shift(c, 2).d.image("x") == {"y": one}


def test_shifted_maps_carry_the_koszul_sign():
    sp = GradedSpace(QQ, {0: ["a"], 1: ["b"]})
    f = GradedMap(sp, sp, 1, {"a": {"b": one}})
    assert shift_map(f, 1).image("a") == {"b": -one}
    assert shift_map(f, 2).image("a") == {"b": one}


def test_cone_of_identity_is_exact():
    c = obj("ct.dga", "CT").complex
    cn = cone(ChainMap.identity(c))
    assert is_exact(cn.complex)
    assert cn.complex.space.dim() == 6


def test_representatives_classify_back():
    c = obj("ct.dga", "CT").complex
    h = homology(c)
    for lab in h.homology:
        assert h.classify(h.representative(lab)) == {lab: one}
    assert h.is_boundary({"y": one})


def test_non_quasi_iso_detected_by_both_routes():
    sp = GradedSpace(QQ, {0: ["a"]})
    c = Complex.zero_differential(sp)
    z = ChainMap(c, c, GradedMap.zero(sp, sp))
    assert quasi_iso_routes(z) == (False, False)
    assert not is_quasi_iso(z)


def test_induced_map_on_a_projection():
    c = obj("ct.dga", "CT").complex
    assert induced_homology_map(ChainMap.identity(c)).block(0) == [[one]]


def test_euler_characteristic_matches_homology():
    c = obj("ct.dga", "CT").complex
    assert c.euler_characteristic() == 1


primes = st.sampled_from([2, 3, 5])


@settings(max_examples=60, deadline=None)
@given(primes, st.integers(0, 10 ** 6))
def test_euler_characteristic_is_homological(p, seed):
    dims, mats = random_complex_mod_p(random.Random(seed), p)
    c = complex_from_matrices(GF(p), dims, mats)
    h = homology(c).dims()
    assert c.euler_characteristic() == sum((-1) ** (n % 2) * k for n, k in h.items())


@settings(max_examples=60, deadline=None)
@given(primes, st.integers(0, 10 ** 6), st.integers(0, 1))
def test_quasi_iso_routes_agree(p, seed, c):
    """``f = c id + (dh + hd)`` is homotopic to ``c id``: a quasi-iso iff c != 0 or H = 0."""
    F = GF(p)
    rng = random.Random(seed)
    X = complex_from_matrices(F, *random_complex_mod_p(rng, p, max_total=6))
    h = GradedMap(X.space, X.space, -1,
                  {lab: {t: F(rng.randrange(p)) for t in X.space.basis(n - 1)}
                   for lab, n in X.space.pairs()})
    f = X.d.compose(h) + h.compose(X.d) + GradedMap.identity(X.space).scale(F(c))
    cm = ChainMap(X, X, f)
    a, b = quasi_iso_routes(cm)
    assert a == b == (c == 1 or is_exact(X))


@settings(max_examples=40, deadline=None)
@given(primes, st.integers(0, 10 ** 6))
def test_homology_dimension_bounded_by_chain_dimension(p, seed):
    dims, mats = random_complex_mod_p(random.Random(seed), p)
    c = complex_from_matrices(GF(p), dims, mats)
    h = homology(c)
    for n, k in h.dims().items():
        assert k <= dims.get(n, 0)
        for lab in h.homology.basis(n):
            assert not c.d(h.representative(lab))
