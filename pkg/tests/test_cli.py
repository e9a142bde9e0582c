import pytest

from dgtilt import fixtures
from dgtilt.cli import main
from dgtilt.fileformat import load


def fx(name):
    return fixtures.path(name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- check ---------------------------------------------------------------------

@pytest.mark.parametrize("fname", fixtures.names(".dga"))
def test_check_fixture_passes(capsys, fname):
    code, out, _ = run(capsys, "check", fx(fname))
    assert code == 0
    assert out.rstrip().endswith("OVERALL PASS")


def test_check_several_files(capsys):
    code, out, _ = run(capsys, "check", fx("a2.dga"), fx("dn.dga"), fx("a2.problem"))
    assert code == 0
    assert "PASS  axiom  a2: references resolve" in out


def test_check_reports_axiom_failure_with_exit_1(capsys, tmp_path):
    p = tmp_path / "bad.dga"
    p.write_text("[algebra k]\nfield Q\nbasis 1:0 t:0\nunit 1 1\nmul 1*1 = 1 1\nmul 1*t = 1 t\n")
    code, out, _ = run(capsys, "check", str(p))
    assert code == 1
    assert "FAIL  axiom  k: unit" in out
    assert out.rstrip().endswith("OVERALL FAIL")


def test_check_parse_error_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.dga"
    p.write_text("[algebra k]\nfield Q\nbasis 1:0 1:0\n")
    code, _, err = run(capsys, "check", str(p))
    assert code == 2
    assert "ParseError: line 3" in err


def test_missing_file_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "nope.dga"))
    assert code == 2
    assert "cannot read" in err


# -- homology --------------------------------------------------------------------

def test_homology_prints_dims_and_representatives(capsys):
    code, out, _ = run(capsys, "homology", fx("ct.dga"), "--of", "CT")
    assert code == 0
    assert out == "[CT]\nH^0 dim 1: 1 e\n"


def test_homology_of_an_exact_module(capsys):
    code, out, _ = run(capsys, "homology", fx("k.dga"), "--of", "cone_id")
    assert code == 0
    assert out == "[cone_id]\nexact\n"


def test_homology_of_unknown_section_exit_2(capsys):
    code, _, err = run(capsys, "homology", fx("k.dga"), "--of", "nope")
    assert code == 2
    assert "no section named 'nope'" in err


# -- tilt --------------------------------------------------------------------------

def test_tilt_writes_a_reloadable_algebra(capsys, tmp_path):
    out_path = tmp_path / "tilde.dga"
    rep_path = tmp_path / "report.txt"
    code, out, _ = run(capsys, "tilt", fx("a2.problem"), "--out", str(out_path),
                       "--report", str(rep_path))
    assert code == 0
    assert out == ""
    assert rep_path.read_text().rstrip().endswith("OVERALL PASS")
    tilde = load(str(out_path))["a2_tilde"]
    assert tilde.space.dims() == {0: 3}
    code, out, _ = run(capsys, "check", str(out_path))
    assert code == 0


def test_tilt_of_a_non_perfect_module_exit_3(capsys):
    code, _, err = run(capsys, "tilt", fx("e2-nonperfect.problem"))
    assert code == 3
    assert err.startswith("ResolutionBudgetExceeded: not certified perfect within budget")


def test_tilt_of_a_non_problem_exit_2(capsys):
    code, _, err = run(capsys, "tilt", fx("a2.dga"))
    assert code == 2
    assert "0 problems" in err


def test_tilt_with_a_bad_replacement_exit_1(capsys, tmp_path):
    k = fx("k.dga")
    p = tmp_path / "bad.problem"
    p.write_text(f"[map zero]\nfrom file:{k}#kk\nto file:{k}#kk\nimage m = 0\n\n"
                 f"[problem bad]\nR = file:{k}#k\nS = file:{k}#k\nM = file:{k}#kk\nV = zero\n")
    code, out, _ = run(capsys, "tilt", str(p))
    assert code == 1
    assert "FAIL  exactness  Z = cone(V -> M) is exact" in out


def test_generator_cap_flag_overrides_the_problem_file(capsys):
    assert main(["tilt", fx("a2-ext.problem")]) == 0
    capsys.readouterr()
    code, _, err = run(capsys, "tilt", fx("a2-ext.problem"), "--max-generators", "1")
    assert code == 3
    assert err.startswith("ResolutionBudgetExceeded: not certified perfect within budget: "
                          "1 generators used")


def test_degree_window_flag_overrides_the_problem_file(capsys):
    code, _, err = run(capsys, "verify", fx("k-odd.problem"), "--suite", "tilt",
                       "--degree-window", "0:0")
    assert code == 3
    assert "DegreeWindowExceeded: a generator of degree 1 is needed, outside the window [0, 0]" in err
    code, _, _ = run(capsys, "verify", fx("k-odd.problem"), "--suite", "tilt",
                     "--degree-window=-4:4")
    assert code == 0


@pytest.mark.parametrize("flag", [["--max-generators", "0"], ["--max-generators", "x"],
                                  ["--degree-window", "3:1"], ["--degree-window", "7"]])
def test_bad_cap_flags_are_usage_errors(capsys, flag):
    with pytest.raises(SystemExit) as exc:
        main(["tilt", fx("a2.problem"), *flag])
    assert exc.value.code == 2


# -- verify ----------------------------------------------------------------------

def test_verify_all_on_a2(capsys):
    code, out, _ = run(capsys, "verify", fx("a2.problem"), "--suite", "all")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "OVERALL PASS"
    assert any(line.startswith("PASS  module-iso  recollement: Lambda = B + C") for line in lines)
    assert any(line.startswith("PASS  axiom  tilt: Phi: tilde^op -> E is a DGA map")
               for line in lines)
    assert any("ladkani: H^0(tilde)" in line for line in lines)
    assert any("selfdual: tilde ~ [S DM; 0 R]" in line for line in lines)
    assert not any(line.startswith("FAIL") for line in lines)


@pytest.mark.parametrize("suite", ["recollement", "tilt", "ladkani", "selfdual"])
def test_verify_single_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", fx("dn.problem"), "--suite", suite)
    assert code == 0
    prefixes = {line.split("  ")[2].split(":")[0] for line in out.splitlines()[:-1]}
    assert prefixes == {suite}


def test_verify_ladkani_hypothesis_failure_exit_3(capsys):
    code, out, _ = run(capsys, "verify", fx("a2-rigid.problem"), "--suite", "ladkani")
    assert code == 3
    assert "RigidityFailed" in out


def test_verify_all_downgrades_inapplicable_corollaries(capsys):
    code, out, _ = run(capsys, "verify", fx("a2-rigid.problem"))
    assert code == 0
    assert "WARN  axiom  ladkani: not applicable — RigidityFailed" in out
    assert "WARN  axiom  selfdual: not applicable" in out


def test_verify_selfdual_not_self_dual_exit_3(capsys):
    code, _, err = run(capsys, "verify", fx("e2.problem"), "--suite", "selfdual")
    assert code == 3
    assert err.startswith("NotSelfDual")


def test_verify_non_ring_ladkani_exit_3(capsys):
    code, out, _ = run(capsys, "verify", fx("e2.problem"), "--suite", "ladkani")
    assert code == 3


def test_verify_report_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["verify", fx("ct.problem"), "--report", str(a)]) == 0
    assert main(["verify", fx("ct.problem"), "--report", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


# -- dualize -----------------------------------------------------------------------

def test_dualize_dual_numbers(capsys, tmp_path):
    out_path = tmp_path / "d.dga"
    code, _, _ = run(capsys, "dualize", fx("dn.dga"), "--of", "DN", "--out", str(out_path))
    assert code == 0
    src = load(str(out_path))
    D = src["D_DN"]
    assert D.space.dims() == {0: 2}
    assert src.names() == ["DN", "D_DN"]


def test_dualize_every_section(capsys):
    code, out, _ = run(capsys, "dualize", fx("e2.dga"))
    assert code == 0
    for n in ("D_E2", "D_E2k", "D_k_E2k", "D_kE2"):
        assert f" {n}]" in out
    assert "basis D.x:-1" in out


def test_dualize_nothing_exit_2(capsys):
    code, _, err = run(capsys, "dualize", fx("a2.problem"))
    assert code == 2


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_run_command_returns_the_exit_code(capsys):
    from dgtilt.cli import run_command
    assert run_command(["check", fx("k.dga")]) == 0
    assert run_command(["tilt", fx("e2-nonperfect.problem")]) == 3
