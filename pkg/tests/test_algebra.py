import pytest
from hypothesis import given, settings, strategies as st

from _util import dga_files, obj, source
from dgtilt import fixtures
from dgtilt.algebra import (DGAMorphism, check_dga, check_dga_morphism, enveloping,
                            homology_algebra, is_dga_quasi_iso, opposite, orthogonal_idempotents,
                            tensor_algebra)
from dgtilt.fileformat import parse
from dgtilt.graded import GradedMap, sign

ALGEBRAS = [(f, n) for f in dga_files() for n in source(f).names("algebra")]


def algebra_ids(p):
    return f"{p[0]}:{p[1]}"


@pytest.mark.parametrize("where", ALGEBRAS, ids=algebra_ids)
def test_fixture_algebras_satisfy_the_axioms(where):
    assert check_dga(obj(*where)).ok


@pytest.mark.parametrize("where", ALGEBRAS, ids=algebra_ids)
def test_opposite_is_an_involution_and_a_dga(where):
    a = obj(*where)
    op = opposite(a)
    assert check_dga(op).ok
    assert opposite(op) == a


def test_e2_is_its_own_opposite():
    a = obj("e2.dga", "E2")
    assert opposite(a) == a


def test_opposite_signs():
    # graded-commutative check on the tensor square of E2: (1|x)(x|1) = -(x|x)
    E = obj("e2.dga", "E2")
    T = tensor_algebra(E, E)
    one = E.field.one
    assert T.product({"1|x": one}, {"x|1": one}) == {"x|x": -one}
    assert T.product({"x|1": one}, {"1|x": one}) == {"x|x": one}
    Top = opposite(T)
    assert Top.product({"x|1": one}, {"1|x": one}) == {"x|x": one}


@pytest.mark.parametrize("where", ALGEBRAS, ids=algebra_ids)
def test_homology_algebra_is_associative(where):
    a = obj(*where)
    ha = homology_algebra(a)
    assert ha.H.space.dim() <= 8
    assert check_dga(ha.H).ok


def test_ct_projects_quasi_isomorphically_to_k():
    CT, k = obj("ct.dga", "CT"), obj("k.dga", "k")
    one = CT.field.one
    f = DGAMorphism(CT, k, GradedMap(CT.space, k.space, 0, {"e": {"1": one}}))
    assert check_dga_morphism(f).ok
    assert is_dga_quasi_iso(f)


def test_non_multiplicative_map_reports_the_pair():
    DN = obj("dn.dga", "DN")
    one = DN.field.one
    f = DGAMorphism(DN, DN, GradedMap(DN.space, DN.space, 0, {"1": {"1": one}, "t": {"1": one}}))
    rep = check_dga_morphism(f)
    assert rep.status_of("multiplicative") == "FAIL"
    assert "('t', 't')" in next(e.witness for e in rep.entries if e.name == "multiplicative")


@pytest.mark.parametrize("pair", [("E2", "E2"), ("A2", "k"), ("DN", "DN"), ("CT", "k")])
def test_enveloping_algebras(pair):
    files = {"E2": "e2.dga", "A2": "a2.dga", "DN": "dn.dga", "CT": "ct.dga", "k": "k.dga"}
    R, S = (obj(files[n], n) for n in pair)
    env = enveloping(R, S)
    assert check_dga(env).ok
    assert env.space.dim() == R.space.dim() * S.space.dim()


def test_orthogonal_idempotents():
    assert orthogonal_idempotents(obj("a2.dga", "A2")) == ["e1", "e2"]
    assert orthogonal_idempotents(obj("m2.dga", "M2")) == ["e11", "e22"]
    assert orthogonal_idempotents(obj("e2.dga", "E2")) == ["1"]


# -- corrupted fixtures ---------------------------------------------------------

def corrupted(fname, old, new):
    text = open(fixtures.path(fname)).read()
    assert old in text
    src = parse(text.replace(old, new, 1), path=fixtures.path(fname), check=False)
    return src[src.names("algebra")[0]]


CORRUPTIONS = [
    ("dn.dga", "mul t*1 = 1 t", "mul t*1 = 1 1", "unit", "t"),
    ("ct.dga", "mul x*e = 1 x", "mul x*e = 1 x\nmul x*x = 1 x", "Leibniz", "('x', 'x')"),
    ("a2.dga", "mul e1*a = 1 a", "mul e1*a = 1 a\nmul a*e1 = 1 a", "associativity",
     "('a', 'e1', 'e2')"),
    ("e2.dga", "mul x*1 = 1 x", "mul x*1 = 1 x\ndiff 1 = 1 x", "d(1) = 0", "x"),
    ("m2.dga", "mul e12*e21 = 1 e11", "mul e12*e21 = 1 e22", "associativity", "e12"),
    ("k-f2.dga", "mul 1*1 = 1 1", "mul 1*1 = 0", "unit", "1"),
]


@pytest.mark.parametrize("case", CORRUPTIONS, ids=lambda c: f"{c[0]}:{c[3]}")
def test_corrupted_algebras_fail_with_witnesses(case):
    fname, old, new, law, witness = case
    rep = check_dga(corrupted(fname, old, new))
    assert not rep.ok
    assert rep.status_of(law) == "FAIL"
    entry = next(e for e in rep.entries if e.name == law)
    assert witness in entry.witness


# -- properties on random elements ---------------------------------------------

def homogeneous(a, draw, n):
    labels = a.space.basis(n)
    return {lab: a.field(draw(st.integers(-3, 3))) for lab in labels if draw(st.booleans())}


def vector(a, draw):
    out = {}
    for lab in a.space:
        c = a.field(draw(st.integers(-2, 2)))
        if c:
            out[lab] = c
    return out


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(ALGEBRAS), st.data())
def test_associativity_on_random_elements(where, data):
    a = obj(*where)
    u, v, w = (vector(a, data.draw) for _ in range(3))
    assert a.product(a.product(u, v), w) == a.product(u, a.product(v, w))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(ALGEBRAS), st.data())
def test_leibniz_on_random_homogeneous_elements(where, data):
    a = obj(*where)
    n = data.draw(st.sampled_from(a.space.degrees()))
    u = homogeneous(a, data.draw, n)
    v = vector(a, data.draw)
    lhs = a.d(a.product(u, v))
    rhs = a.product(a.d(u), v)
    for lab, c in a.product(u, a.d(v)).items():
        rhs[lab] = rhs.get(lab, a.field.zero) + sign(n) * c
    assert lhs == {k: c for k, c in rhs.items() if c}
