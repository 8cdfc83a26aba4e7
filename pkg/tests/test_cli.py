import subprocess
import sys

import numpy as np
import pytest

from corpus import algebra
from qjordan.cli import main
from qjordan.constructions import dump_linear, to_linear
from qjordan.qjcore import QuadraticAlgebra, dump_algebra, read_algebra


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def f4(tmp_path, capsys):
    path = tmp_path / "f4.qja"
    assert run(capsys, "make", "--field", 2, 2, "-o", path)[0] == 0
    return path


def test_make_variants(tmp_path, capsys):
    code, out, _ = run(capsys, "make", "--field", 2, 2)
    assert code == 0 and "p 2" in out and "dim 2" in out
    code, out, _ = run(capsys, "make", "--matrix", 2, 2)
    assert code == 0 and "dim 4" in out
    lin = tmp_path / "m2f3.lja"
    lin.write_text(dump_linear(to_linear(algebra("M2F3"))))
    out_path = tmp_path / "m2f3.qja"
    assert run(capsys, "make", "--from-linear", lin, "-o", out_path)[0] == 0
    assert read_algebra(out_path) == algebra("M2F3")
    assert run(capsys, "make", "--field", 4, 2)[0] == 2
    assert run(capsys, "make", "--matrix", 3, 3)[0] == 2


def test_make_then_verify_f9(tmp_path, capsys):
    path = tmp_path / "f9.qja"
    run(capsys, "make", "--field", 3, 2, "-o", path)
    code, out, _ = run(capsys, "verify", path)
    assert code == 0 and "FAIL" not in out
    assert "HUA PASS skipped=8" in out


def test_verify_exit_codes(tmp_path, capsys, f4):
    assert run(capsys, "verify", f4, "--suite", "all")[0] == 0
    bad = tmp_path / "bad.qja"
    bad.write_text("qja v1\np 2\nm 1\ndim 2\nunit 1 0\nQ 1\n1 0\n")
    assert run(capsys, "verify", bad)[0] == 2
    assert run(capsys, "verify", tmp_path / "missing.qja")[0] == 2
    J = algebra("F4")
    diag = np.array(J.diag)
    diag[0] = [[1, 1], [0, 1]]
    broken = tmp_path / "broken.qja"
    broken.write_text(dump_algebra(QuadraticAlgebra(J.field, J.unit, diag, J.polar)))
    code, out, _ = run(capsys, "verify", broken, "--suite", "weak")
    assert code == 1 and "QJ1 FAIL witness=" in out


def test_verify_non_division_and_machine_mode(tmp_path, capsys):
    path = tmp_path / "m2.qja"
    run(capsys, "make", "--matrix", 2, 2, "-o", path)
    code, out, _ = run(capsys, "--machine", "verify", path, "--suite", "division")
    assert code == 1
    assert out.startswith("tag=DIVISION status=FAIL checked=15 witness=a=(")
    assert run(capsys, "verify", path, "--suite", "strict")[0] == 0
    assert run(capsys, "hua", path)[0] == 2


def test_derivations_output(tmp_path, capsys, f4):
    code, out, _ = run(capsys, "derivations", f4, "--epsilon", "minus")
    assert code == 0 and "dim=2" in out and "inverse_compatible[-]=equal" in out
    code, out, _ = run(capsys, "derivations", f4, "--epsilon", "all")
    assert "D_+ = D_-" in out
    f5 = tmp_path / "f5.qja"
    run(capsys, "make", "--field", 5, 1, "-o", f5)
    code, out, _ = run(capsys, "derivations", f5, "--epsilon", "plus")
    assert code == 0 and out.startswith("epsilon=+ dim=0")


def test_moufang_reports(tmp_path, capsys, f4):
    code, out, _ = run(capsys, "moufang", f4, "--order", "--proper", "--recover", "1")
    assert code == 0
    assert "order=60" in out and "proper=yes" in out and "reconstruction identical" in out
    f3 = tmp_path / "f3.qja"
    run(capsys, "make", "--field", 3, 1, "-o", f3)
    code, out, _ = run(capsys, "moufang", f3)
    assert code == 0 and "order=12" in out and "proper=no" in out
    m2 = tmp_path / "m2.qja"
    run(capsys, "make", "--matrix", 2, 2, "-o", m2)
    assert run(capsys, "moufang", m2)[0] == 2
    assert run(capsys, "moufang", f4, "--recover", "0 0")[0] == 2


def test_isotope_and_extend(tmp_path, capsys, f4):
    out_path = tmp_path / "iso.qja"
    assert run(capsys, "isotope", f4, "--element", "0 1", "-o", out_path)[0] == 0
    assert np.array_equal(read_algebra(out_path).unit, [0, 1])
    assert run(capsys, "isotope", f4, "--element", "0 0")[0] == 2
    assert run(capsys, "isotope", f4, "--element", "0 1 1")[0] == 2
    ext = tmp_path / "ext.qja"
    assert run(capsys, "extend", f4, "--degree", 2, "-o", ext)[0] == 0
    assert read_algebra(ext).field.q == 4
    assert run(capsys, "verify", ext, "--suite", "weak")[0] == 0
    assert run(capsys, "extend", ext)[0] == 2


def test_search_command(tmp_path, capsys):
    code, out, _ = run(capsys, "search", "--p", 2, "--n", 2)
    assert code == 0 and "total=256" in out and "main_theorem_violations=0" in out
    code, again, _ = run(capsys, "search", "--p", 2, "--n", 2, "--workers", 2)
    assert again == out
    assert run(capsys, "search", "--p", 2, "--n", 3)[0] == 2
    assert run(capsys, "search", "--p", 2, "--n", 3, "--sample", 5)[0] == 2
    outdir = tmp_path / "found"
    code, out, _ = run(capsys, "search", "--p", 2, "--n", 3, "--sample", 20, "--seed", 1, "--out", outdir)
    assert code == 0 and "total=20" in out and outdir.is_dir()


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["make", "--field", "2", "2", "--matrix", "2", "2"])
    assert exc.value.code == 2


def test_console_entry_point(f4):
    proc = subprocess.run(
        [sys.executable, "-m", "qjordan.cli", "--machine", "hua", str(f4)], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout == "tag=HUA status=PASS checked=6 skipped=3\n"
