import subprocess
import sys

import numpy as np
import pytest

from gassmann import fixtures
from gassmann.cli import EXIT_BOUND, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, main
from gassmann.io import format_complex, format_matrix, parse_group
from gassmann.perm import Permutation

PSL = str(fixtures.data_path("psl32"))
AFFINE = str(fixtures.data_path("affine8"))
Z3 = str(fixtures.data_path("z3cubed"))

D8 = """# dihedral group of the square, generated by two reflections
s = (1 3)
t = (0 1)(2 3)

[subgroup rotations]
s t

[subgroup klein]
s
(0 2)(1 3)
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_gassmann_trivial_pair(capsys):
    code, out, _ = run(capsys, "gassmann", PSL, "point", "point")
    assert code == EXIT_OK
    assert "ALMOST-CONJUGATE: yes, CONJUGATE: yes" in out


def test_gassmann_index_seven_pair(capsys):
    code, out, _ = run(capsys, "gassmann", PSL, "point", "line")
    assert code == EXIT_OK
    assert "ALMOST-CONJUGATE: yes, CONJUGATE: no" in out
    assert "REPRESENTATION-EQUIVALENT: yes" in out


def test_gassmann_mismatched_index(capsys):
    code, out, _ = run(capsys, "gassmann", PSL, "point", "trivial")
    assert code == EXIT_NEGATIVE
    assert "ALMOST-CONJUGATE: no" in out


def test_intertwine(capsys):
    code, out, _ = run(capsys, "intertwine", PSL, "point", "line")
    assert code == EXIT_OK
    assert "n: 6" in out and "intertwiner dimension: 2" in out
    assert "sigma tau = n Id and tau sigma = n Id: yes" in out


def test_intertwine_non_gassmann(tmp_path, capsys):
    g = write(tmp_path, "d8.grp", D8)
    code, out, _ = run(capsys, "intertwine", g, "rotations", "klein")
    assert code == EXIT_NEGATIVE
    assert "no invertible intertwiner" in out


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", AFFINE, "units", "twisted")
    assert code == EXIT_OK
    assert "Betti numbers agree: yes" in out
    assert "  1  241  -" in out


def test_transplant_chains(capsys):
    code, out, _ = run(capsys, "transplant-chains", AFFINE, "units", "twisted", "--degree", "0")
    assert code == EXIT_OK
    assert "degree 0: tau# d = d tau#: yes, sigma# tau# = n Id: yes" in out
    assert "# tau# on C_0" in out


def test_isogeny_lattice_and_torus(tmp_path, capsys):
    a = write(tmp_path, "a.mat", format_matrix(np.diag([1, 2]).astype(object)))
    j = write(tmp_path, "j.mat", format_matrix(np.array([[0, -1], [1, 0]], dtype=object)))
    code, out, _ = run(capsys, "isogeny", a)
    assert code == EXIT_OK and "cokernel order: 2" in out and out.rstrip().endswith("ISOGENY: yes")
    code, out, _ = run(capsys, "isogeny", a, "--torus", j, j)
    assert code == EXIT_NEGATIVE and "commutes with complex structures: no" in out
    two = write(tmp_path, "two.mat", format_matrix(2 * np.eye(2, dtype=int).astype(object)))
    code, out, _ = run(capsys, "isogeny", two, "--torus", j, j, "--degree", "2")
    assert code == EXIT_OK and "cokernel order: 4" in out and "divides n^rank: yes" in out


def test_isogeny_infinite_cokernel(tmp_path, capsys):
    a = write(tmp_path, "a.mat", "2 2\n1 1\n1 1\n")
    code, out, _ = run(capsys, "isogeny", a)
    assert code == EXIT_NEGATIVE and "cokernel order: INFINITE" in out


def test_isogeny_bad_inputs(tmp_path, capsys):
    a = write(tmp_path, "a.mat", "2 2\n1 0\n0 1\n")
    bad = write(tmp_path, "bad.mat", "2 2\n1 0\n0 1\n")
    code, _, err = run(capsys, "isogeny", a, "--torus", bad, bad)
    assert code == EXIT_INPUT and "BadComplexStructure" in err
    j4 = write(tmp_path, "j4.mat", format_matrix(np.array(
        [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=object)))
    code, _, err = run(capsys, "isogeny", a, "--torus", j4, j4)
    assert code == EXIT_INPUT and "RankMismatch" in err and "[isogeny]" in err


def test_spectra(capsys):
    code, out, _ = run(capsys, "spectra", AFFINE, "units", "twisted", "--degree", "0")
    assert code == EXIT_OK
    assert "intertwining residual tau# L2 - L1 tau#: 0" in out and "ISOSPECTRAL: yes" in out


def _cayley_file(G, gens):
    # subdivided Cayley graph on the given elements, one action line per group generator
    N, k = G.order, len(gens)
    edges = []
    for j, s in enumerate(gens):
        for g in range(N):
            edges += [(g, N + j * N + g), (N + j * N + g, G.mul(g, s))]
    action = []
    for h in G.generator_ordinals():
        img = [G.mul(h, g) for g in range(N)] + [N + j * N + G.mul(h, g) for j in range(k) for g in range(N)]
        action.append(Permutation(img))
    return format_complex({0: [(v,) for v in range(N + k * N)], 1: sorted(tuple(sorted(e)) for e in edges)}, action)


def test_spectra_non_gassmann_reports_difference(tmp_path, capsys):
    g = write(tmp_path, "d8.grp", D8)
    G = parse_group(D8).group
    cx = write(tmp_path, "cayley.cx", _cayley_file(G, G.generator_ordinals()))
    code, out, _ = run(capsys, "spectra", g, "rotations", "klein", "--complex", cx)
    assert code == EXIT_NEGATIVE
    assert "characteristic polynomials equal: no" in out
    assert "no intertwiner" in out


def test_pipeline_affine(capsys):
    code, out, _ = run(capsys, "pipeline", AFFINE, "units", "twisted")
    assert code == EXIT_OK
    for section in ("gassmann", "transplant", "gcomplex", "isogeny", "spectra", "verdict"):
        assert f"== {section} ==" in out
    assert "ISOGENY: yes" in out and "ISOSPECTRAL: yes" in out
    assert out.rstrip().endswith("ALL CHECKS PASS: yes")


@pytest.mark.slow
def test_pipeline_reference_run(capsys):
    code, out, _ = run(capsys, "pipeline", AFFINE, "units", "twisted", "--copies", "3", "--degree", "1")
    assert code == EXIT_OK
    assert "simplices per dimension 96 3072 32768" in out
    assert out.rstrip().endswith("ALL CHECKS PASS: yes")


def test_pipeline_same_subgroup(capsys):
    code, out, _ = run(capsys, "pipeline", PSL, "point", "point", "--degree", "0")
    assert code == EXIT_OK
    assert "n: 1" in out and "ALL CHECKS PASS: yes" in out


def test_pipeline_not_almost_conjugate(capsys):
    code, out, _ = run(capsys, "pipeline", PSL, "point", "trivial")
    assert code == EXIT_NEGATIVE and "pipeline stopped" in out


def test_pipeline_non_free_complex(tmp_path, capsys):
    g = write(tmp_path, "c2.grp", "(1 2)\n\n[subgroup all]\n(1 2)\n")
    cx = write(tmp_path, "tri.cx", "[dim 1]\n0 1\n0 2\n1 2\n[action]\n(1 2)\n")
    code, _, err = run(capsys, "pipeline", g, "all", "all", "--complex", cx)
    assert code == EXIT_INPUT
    assert "error [gcomplex]: NotFree" in err and "(simplex (0,))" in err


def test_output_is_byte_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for p in (a, b):
        assert main(["pipeline", AFFINE, "units", "twisted", "--degree", "0", "--out", str(p)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().rstrip().endswith("ALL CHECKS PASS: yes")


def test_search_abelian_is_empty(capsys):
    code, out, _ = run(capsys, "search", Z3)
    assert code == EXIT_NEGATIVE
    assert "almost conjugate, non-conjugate pairs: 0" in out


def test_search_affine_finds_pairs(capsys):
    code, out, _ = run(capsys, "search", AFFINE)
    assert code == EXIT_OK
    assert "pair 1:" in out


def test_search_psl_index_seven(capsys):
    code, out, _ = run(capsys, "search", PSL, "--max-index", "7")
    assert code == EXIT_OK
    assert "pair 1: index 7" in out
    assert "almost conjugate, non-conjugate pairs: 1" in out


def test_bounds_exit_three(tmp_path, capsys):
    code, _, err = run(capsys, "gassmann", PSL, "point", "line", "--bound", "100")
    assert code == EXIT_BOUND and "ClosureBoundExceeded" in err
    code, _, err = run(capsys, "homology", AFFINE, "units", "--budget", "100")
    assert code == EXIT_BOUND and "SizeBound" in err
    s6 = write(tmp_path, "s6.grp", "(0 1 2 3 4 5)\n(0 1)\n")
    code, _, err = run(capsys, "search", s6)
    assert code == EXIT_BOUND


def test_input_errors_exit_two(tmp_path, capsys):
    code, _, err = run(capsys, "gassmann", str(tmp_path / "missing.grp"), "a", "b")
    assert code == EXIT_INPUT and "error [group-core]" in err
    code, _, err = run(capsys, "gassmann", PSL, "point", "plane")
    assert code == EXIT_INPUT and "no subgroup named 'plane'" in err
    with pytest.raises(SystemExit) as e:
        main(["gassmann", PSL])
    assert e.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "gassmann", "gassmann", PSL, "point", "line"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "CONJUGATE: no" in r.stdout
