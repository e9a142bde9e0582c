import pytest

from _util import obj, problem, tilt
from dgtilt.corollaries import find_self_duality, ladkani_specialize, self_dual_corollary
from dgtilt.errors import (ExtNotConcentrated, HypothesisFailure, NotSelfDual, RigidityFailed)
from dgtilt.modules import check_module_iso, is_bijective

RING_CASES = ["a2.problem", "a2-f2.problem", "k-rr.problem", "a2-path.problem", "dn.problem",
              "m2.problem", "a2-s1.problem", "a2-supplied.problem"]


@pytest.mark.parametrize("fname", RING_CASES)
def test_ladkani_collapse(fname):
    sp = ladkani_specialize(tilt(fname))
    assert sp.ok, sp.report.render()
    assert sp.report.status_of("H^i(tilde) = 0 for i != 0") == "PASS"
    assert sp.report.status_of("H^0(tilde) = [S Hom_R(M,X); 0 End_R(X)^op]") == "PASS"
    H, L = sp.details["H"], sp.details["ladkani"]
    assert set(H.space.degrees()) == {0}
    assert H.space.dims() == L.algebra.space.dims()


def test_a2_ladkani_ring_is_a2():
    sp = ladkani_specialize(tilt("a2.problem"))
    assert sp.details["ladkani"].algebra.space.dims() == {0: 3}


def test_x_is_r_plus_r_gives_the_matrix_ring():
    sp = ladkani_specialize(tilt("k-rr.problem"))
    L = sp.details["ladkani"]
    # End(k^2)^op is the 2x2 matrix ring: 4-dimensional and not commutative
    End = L.S
    assert End.space.dims() == {0: 4}
    labels = End.space.labels()
    one = End.field.one
    assert any(End.product({a: one}, {b: one}) != End.product({b: one}, {a: one})
               for a in labels for b in labels)
    assert L.algebra.space.dims() == {0: 7}


def test_rigid_non_generator_is_flagged_but_collapses():
    r = tilt("a2-s1.problem")
    assert [e.name for e in r.report.warnings] == ["generation hypothesis <X> = D(R)"]
    assert "HypothesisNotCertified" in r.report.warnings[0].witness
    assert ladkani_specialize(r).ok


def test_non_rigid_x_is_diagnosed():
    sp = ladkani_specialize(tilt("a2-rigid.problem"))
    assert not sp.ok
    assert len(sp.diagnostics) == 1
    d = sp.diagnostics[0]
    assert isinstance(d, RigidityFailed) and (d.degree, d.dim) == (1, 1)
    assert sp.report.status_of("X rigid: Ext^i(X,X) = 0 for i != 0") == "FAIL"


def test_ext_off_degree_zero_is_diagnosed():
    sp = ladkani_specialize(tilt("a2-ext.problem"))
    assert not sp.ok
    d = sp.diagnostics[0]
    assert isinstance(d, ExtNotConcentrated) and (d.degree, d.dim) == (1, 1)
    assert isinstance(d, HypothesisFailure)


def test_non_ring_input_is_not_a_ladkani_case():
    sp = ladkani_specialize(tilt("e2.problem"))
    assert sp.report.entries[0].status == "FAIL"
    assert not sp.diagnostics
    assert len(sp.report.entries) == 1


SELF_DUAL = ["a2.problem", "a2-f2.problem", "dn.problem", "dn-self.problem", "dn-f2.problem",
             "k-exact.problem", "k-odd.problem", "m2.problem"]


@pytest.mark.parametrize("fname", SELF_DUAL)
def test_self_dual_corollary(fname):
    sp = self_dual_corollary(problem(fname), tilt(fname))
    assert sp.ok, sp.report.render()
    for name in ("Hom_R(V,R) -> Hom_R(V,DR) is a bimodule isomorphism",
                 "Hom_R(V,DR) -> D(R (x)_R V) is a bimodule isomorphism",
                 "D(R (x)_R V) -> DV is a bimodule isomorphism",
                 "composite equals h -> tau h",
                 "tilde ~ [S DM; 0 R] through [S DV; 0 R]"):
        assert sp.report.status_of(name) == "PASS"


def test_dual_numbers_pairing():
    iota, tau = find_self_duality(obj("dn.dga", "DN"))
    assert tau == {"D.t": obj("dn.dga", "DN").field.one}
    assert is_bijective(iota.map)
    assert check_module_iso(iota).ok


def test_self_duality_over_f2_by_exhaustion():
    iota, tau = find_self_duality(obj("m2-f2.dga", "M2"))
    assert check_module_iso(iota).ok


@pytest.mark.parametrize("fname,why", [
    ("e2.problem", "D(R) has dimensions {-1: 1, 0: 1}, R has {0: 1, 1: 1}"),
    ("ct.problem", "D(R) has dimensions"),
    ("a2-path.problem", "no bimodule isomorphism"),
])
def test_not_self_dual(fname, why):
    with pytest.raises(NotSelfDual) as exc:
        self_dual_corollary(problem(fname), tilt(fname))
    assert why in str(exc.value)


def test_self_dual_corollary_needs_x_equal_r():
    with pytest.raises(HypothesisFailure) as exc:
        self_dual_corollary(problem("k-rr.problem"))
    assert not isinstance(exc.value, NotSelfDual)
