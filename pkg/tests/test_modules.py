import itertools

import pytest
from hypothesis import given, settings, strategies as st

from _util import dga_files, obj, source
from dgtilt import fixtures, linalg
from dgtilt.complexes import ChainMap, is_exact
from dgtilt.algebra import check_dga, opposite
from dgtilt.fileformat import parse
from dgtilt.graded import GradedMap, sign
from dgtilt.modules import (DGModule, ModuleMap, check_module, check_module_iso, check_module_map,
                            cone_module, double_dual_map, dualize, end_dga, free_module,
                            hom_complex, is_bijective, regular, shift_module, tensor_over_algebra)
from dgtilt.errors import SideMismatch
from dgtilt.triangular import build_B, build_C, build_triangular

MODULES = [(f, n) for f in dga_files() for n in source(f).names("module") + source(f).names("bimodule")]
ALGEBRAS = [(f, n) for f in dga_files() for n in source(f).names("algebra")]


def ids(p):
    return f"{p[0]}:{p[1]}"


@pytest.mark.parametrize("where", MODULES, ids=ids)
def test_fixture_modules_satisfy_the_axioms(where):
    assert check_module(obj(*where)).ok


@pytest.mark.parametrize("where", ALGEBRAS, ids=ids)
def test_every_algebra_is_a_bimodule_over_itself(where):
    assert check_module(regular(obj(*where), "bi")).ok


def test_k_over_k_and_dual_numbers_with_t_acting_by_zero():
    m = obj("dn.dga", "k_t0")
    rep = check_module(m)
    assert rep.ok
    assert rep.status_of("bimodule compatibility") == "PASS"


# -- corruptions ---------------------------------------------------------------

def corrupted(fname, old, new, name, extra=""):
    text = open(fixtures.path(fname)).read()
    assert old in text
    src = parse(text.replace(old, new, 1) + extra, path=fixtures.path(fname), check=False)
    return src[name]


INCOMPATIBLE = """
[bimodule Pt]
field Q
over A2
rightover file:dn.dga#DN
basis p:0 q:0
act a*p = 1 q
act e1*q = 1 q
act e2*p = 1 p
ract p*1 = 1 p
ract q*1 = 1 q
ract p*t = 1 q
"""

MODULE_CORRUPTIONS = [
    ("a2.dga", "act e1*m = 1 m", "act e1*m = 1 m\nact e2*m = 1 m", "S1k", "left unit", "m"),
    ("a2.dga", "diff g = 1 q", "diff g = 1 p", "U_S2", "left Leibniz", "('a', 'g')"),
    ("dn.dga", "ract t*1 = 1 t", "ract t*1 = 1 1", "DNDN", "right unit", "t"),
    ("a2.dga", "", "", "Pt", "bimodule compatibility", "('e1', 'p', 't')"),
]


@pytest.mark.parametrize("case", MODULE_CORRUPTIONS, ids=lambda c: f"{c[3]}:{c[4]}")
def test_corrupted_modules_fail_with_witnesses(case):
    fname, old, new, name, law, witness = case
    extra = INCOMPATIBLE if name == "Pt" else ""
    m = corrupted(fname, old, new, name, extra)
    rep = check_module(m)
    assert not rep.ok
    entry = next(e for e in rep.entries if e.name == law)
    assert entry.status == "FAIL"
    assert witness in entry.witness


def test_incompatible_bimodule_is_a_module_on_each_side():
    m = corrupted("a2.dga", "", "", "Pt", INCOMPATIBLE)
    assert check_module(m.left_part()).ok
    assert check_module(m.right_part()).ok


# -- free modules and shifts ---------------------------------------------------

def test_free_module_dims():
    k = obj("k.dga", "k")
    E2 = obj("e2.dga", "E2")
    assert free_module(k, [0]).space.dims() == {0: 1}
    assert free_module(E2, [0]).space.dims() == {0: 1, 1: 1}
    assert free_module(E2, [0, -1]).space.dims() == {-1: 1, 0: 2, 1: 1}
    assert check_module(free_module(E2, [0, -1])).ok


def test_free_module_of_k_in_degree_zero_is_k():
    k = obj("k.dga", "k")
    f = free_module(k, [0])
    assert f.space.labels() == ["g0.1"]
    assert f.act(k.unit, {"g0.1": k.field.one}) == {"g0.1": k.field.one}


@pytest.mark.parametrize("where", MODULES, ids=ids)
def test_shift_keeps_the_axioms(where):
    m = obj(*where)
    for n in (1, 2, -1):
        s = shift_module(m, n)
        assert check_module(s).ok
        assert s.space.dims() == {d - n: k for d, k in m.space.dims().items()}


@pytest.mark.parametrize("where", MODULES, ids=ids)
def test_cone_of_identity_is_an_exact_module(where):
    m = obj(*where)
    cn = cone_module(ModuleMap.identity(m))
    assert check_module(cn.module).ok
    assert is_exact(cn.module.complex)


# -- Hom complexes ---------------------------------------------------------------

def test_hom_k_k():
    k = obj("k.dga", "k")
    hc = hom_complex(k, regular(k), regular(k))
    assert hc.space.dims() == {0: 1}


def test_hom_over_exterior_algebra_is_a_copy_of_it():
    E2 = obj("e2-f2.dga", "E2")
    hc = hom_complex(E2, regular(E2), regular(E2))
    assert hc.space.dims() == {0: 1, 1: 1}
    assert is_exact(hc.complex) is False
    # brute force over F2: enumerate every degree-n linear map and keep the module maps
    one = E2.field.one
    R = regular(E2)
    for n in (-2, -1, 0, 1, 2):
        slots = [(m, t) for m in E2.space.labels() for t in E2.space.basis(E2.deg(m) + n)]
        found = 0
        for bits in itertools.product((0, 1), repeat=len(slots)):
            images = {}
            for (m, t), b in zip(slots, bits):
                if b:
                    images.setdefault(m, {})[t] = one
            f = GradedMap(E2.space, E2.space, n, images, check=False)
            if check_module_map(ModuleMap(R, R, f), chain=False).ok:
                found += 1
        assert found == 2 ** hc.space.dim(n)


def test_hom_differential_squares_to_zero_on_fixtures():
    for fname in ("a2.dga", "dn.dga", "e2.dga", "ct.dga"):
        src = source(fname)
        A = src[src.names("algebra")[0]]
        mods = [regular(A)] + [src[n].left_part() for n in src.names("module") + src.names("bimodule")
                               if src[n].left == A]
        for m in mods:
            for n in mods:
                hc = hom_complex(A, m, n)
                d = hc.complex.d
                assert d.compose(d).is_zero()


def _chain_maps_direct(A, M, N):
    """Dimension of degree-0 chain module maps by one combined constraint solve."""
    field = M.field
    one = field.one
    unknowns = [(m, t) for m in M.space.labels() for t in N.space.basis(M.deg(m))]
    index = {u: i for i, u in enumerate(unknowns)}
    rows = []

    def value(vec, t):
        # coefficient of t in f(vec), as a linear form in the unknowns
        row = {}
        for m, c in vec.items():
            if (m, t) in index:
                row[index[(m, t)]] = row.get(index[(m, t)], field.zero) + c
        return row

    for a in A.space.labels():
        for m in M.space.labels():
            am = M.act({a: one}, {m: one})
            # f(am) - a f(m)
            for t in N.space.labels():
                row = value(am, t)
                for s in N.space.basis(M.deg(m)):
                    c = N.act({a: one}, {s: one}).get(t)
                    if c:
                        k = index[(m, s)]
                        row[k] = row.get(k, field.zero) - c
                rows.append(row)
    for m in M.space.labels():
        # f(dm) - d f(m)
        for t in N.space.labels():
            row = value(M.d.image(m), t)
            for s in N.space.basis(M.deg(m)):
                c = N.d.image(s).get(t)
                if c:
                    k = index[(m, s)]
                    row[k] = row.get(k, field.zero) - c
            rows.append(row)
    dense = [[r.get(j, field.zero) for j in range(len(unknowns))] for r in rows]
    if not unknowns:
        return 0
    return len(unknowns) - linalg.rank(dense, len(unknowns), field)


@pytest.mark.parametrize("fname", ["a2.dga", "dn.dga", "ct.dga", "e2.dga", "a2-f2.dga"])
def test_degree_zero_cycles_are_the_chain_module_maps(fname):
    src = source(fname)
    A = src[src.names("algebra")[0]]
    mods = [regular(A)] + [src[n].left_part() for n in src.names("module") + src.names("bimodule")
                           if src[n].left == A]
    for M in mods:
        for N in mods:
            hc = hom_complex(A, M, N)
            d = hc.complex.d
            basis0 = hc.space.basis(0)
            cyc = linalg.nullspace(d.block(0), len(basis0), A.field) if basis0 else []
            assert len(cyc) == _chain_maps_direct(A, M, N)
            for v in cyc:
                f = hc.map_of({lab: c for lab, c in zip(basis0, v) if c})
                assert check_module_map(ModuleMap(M, N, f)).ok


@pytest.mark.parametrize("fname", ["a2.dga", "dn.dga", "ct.dga", "e2.dga", "m2.dga"])
def test_hom_from_the_algebra_is_evaluation(fname):
    src = source(fname)
    A = src[src.names("algebra")[0]]
    for n in src.names("module") + src.names("bimodule"):
        X = src[n].left_part()
        if X.left != A:
            continue
        hc = hom_complex(A, regular(A), X)
        assert hc.space.dims() == X.space.dims()
        # f -> f(1) is a chain isomorphism
        images = {}
        for lab in hc.space.labels():
            images[lab] = hc.maps[lab](A.unit)
        ev = GradedMap(hc.space, X.space, 0, images, check=False)
        assert is_bijective(ev)
        assert ChainMap(hc.complex, X.complex, ev).commutes()


def test_hom_side_mismatch():
    A = obj("a2.dga", "A2")
    with pytest.raises(SideMismatch):
        hom_complex(A, regular(A, "left"), regular(A, "right"))


@pytest.mark.parametrize("where", ALGEBRAS, ids=ids)
def test_end_of_regular_module_is_the_opposite_algebra(where):
    A = obj(*where)
    E = end_dga(A, regular(A))
    assert check_dga(E).ok
    assert E.space.dims() == A.space.dims()
    # right multiplication by a: f_a(x) = (-1)^{|a||x|} x a, matches the opposite product
    Aop = opposite(A)
    one = A.field.one
    hc = E.hom
    for a in A.space.labels():
        for b in A.space.labels():
            fa = hc.vec_of(_right_mult(A, a))
            fb = hc.vec_of(_right_mult(A, b))
            prod = E.product(fa, fb)
            expect = {}
            for c, x in Aop.product({a: one}, {b: one}).items():
                for lab, y in hc.vec_of(_right_mult(A, c)).items():
                    expect[lab] = expect.get(lab, A.field.zero) + x * y
            assert prod == {k: v for k, v in expect.items() if v}


def _right_mult(A, a):
    one = A.field.one
    da = A.deg(a)
    images = {}
    for x in A.space.labels():
        v = A.product({x: one}, {a: one})
        images[x] = {t: sign(da * A.deg(x)) * c for t, c in v.items()}
    return GradedMap(A.space, A.space, da, images, check=False)


def test_hom_vanishes_from_c_to_b_on_triangular_fixtures():
    for fname in ("a2.problem", "dn.problem", "ct.problem", "e2.problem", "m2.problem",
                  "k-odd.problem", "a2-path.problem", "dn-self.problem"):
        src = source(fname)
        p = src[src.names("problem")[0]]
        t = build_triangular(p.R, p.S, p.M)
        hc = hom_complex(t.algebra, build_C(t), build_B(t))
        assert hc.space.dim() == 0


# -- tensor products ----------------------------------------------------------

@pytest.mark.parametrize("where", MODULES, ids=ids)
def test_tensor_unit_laws(where):
    m = obj(*where)
    one = m.field.one
    if m.left is not None:
        A = m.left
        T = tensor_over_algebra(regular(A, "right"), m.left_part())
        assert T.module.space.dims() == m.space.dims()
        images = {x: T.pure(A.unit, {x: one}) for x in m.space.labels()}
        g = GradedMap(m.space, T.module.space, 0, images, check=False)
        assert is_bijective(g)
        assert ChainMap(m.complex, T.module.complex, g).commutes()
    if m.right is not None:
        A = m.right
        T = tensor_over_algebra(m.right_part(), regular(A, "left"))
        assert T.module.space.dims() == m.space.dims()
        images = {x: T.pure({x: one}, A.unit) for x in m.space.labels()}
        g = GradedMap(m.space, T.module.space, 0, images, check=False)
        assert is_bijective(g)
        assert ChainMap(m.complex, T.module.complex, g).commutes()


def test_k_tensor_dual_numbers_k_is_one_dimensional():
    T = tensor_over_algebra(obj("dn.dga", "k_t0").right_part(), obj("dn.dga", "kDN"))
    assert T.module.space.dims() == {0: 1}


def test_tensor_side_mismatch():
    A = obj("a2.dga", "A2")
    with pytest.raises(SideMismatch):
        tensor_over_algebra(regular(A, "left"), regular(A, "left"))


# -- duality ------------------------------------------------------------------

def test_dual_of_k_is_k():
    k = obj("k.dga", "k")
    D = dualize(regular(k, "bi"))
    assert D.space.dims() == {0: 1}
    assert check_module(D).ok


@pytest.mark.parametrize("where", MODULES + [(f, n) for f, n in ALGEBRAS], ids=ids)
def test_dual_negates_degrees_and_double_dual_is_canonical(where):
    m = obj(*where)
    if not isinstance(m, DGModule):
        m = regular(m, "bi")
    D = dualize(m)
    assert D.space.dims() == {-n: k for n, k in m.space.dims().items()}
    assert check_module(D).ok
    assert check_module_iso(double_dual_map(m)).ok


def test_dual_numbers_are_frobenius():
    DN = obj("dn.dga", "DN")
    R = regular(DN, "bi")
    D = dualize(R)
    one = DN.field.one
    pairing = GradedMap(D.space, R.space, 0, {"D.1": {"t": one}, "D.t": {"1": one}})
    assert check_module_iso(ModuleMap(D, R, pairing)).ok


def test_double_dual_of_exterior_algebra():
    E2 = obj("e2.dga", "E2")
    f = double_dual_map(regular(E2, "bi"))
    rep = check_module_iso(f)
    assert rep.ok
    # the evaluation sign (-1)^{|x|} shows up on x
    assert f.map.image("x") == {"D.D.x": -E2.field.one}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([w for w in MODULES if w[0] in ("a2.dga", "dn.dga", "e2.dga", "ct.dga")]),
       st.data())
def test_hom_of_cycle_is_module_map(where, data):
    m = obj(*where).left_part()
    if m.left is None:
        return
    A = m.left
    hc = hom_complex(A, m, m)
    labels = hc.space.labels()
    if not labels:
        return
    n = data.draw(st.sampled_from(sorted(hc.space.degrees())))
    vec = {lab: A.field(data.draw(st.integers(-2, 2))) for lab in hc.space.basis(n)}
    vec = {k: v for k, v in vec.items() if v}
    if not vec:
        return
    f = hc.map_of(vec)
    assert check_module_map(ModuleMap(m, m, f), chain=False).ok
    # d f is again a module map, and d d f = 0
    df = hc.complex.d(vec)
    if df:
        assert check_module_map(ModuleMap(m, m, hc.map_of(df)), chain=False).ok
    assert hc.complex.d(df) == {}
