import io
import math
import subprocess
import sys

import numpy as np
import pytest

from normprox import ProxConfig, build_column_cache, lambda_max, prox_l11, prox_linfinf
from normprox.cli import (
    BENCH_DELTA,
    BENCH_HEADER,
    bench_instances,
    main,
    parse_sizes,
    read_bench_csv,
)
from normprox.io import read_matrix_csv, write_matrix_csv


@pytest.fixture
def ladder_csv(tmp_path, ladder):
    path = tmp_path / "x.csv"
    write_matrix_csv(ladder, path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_prox_stdout_matches_library(capsys, ladder_csv, ladder):
    code, out, _ = run(capsys, "prox", "--input", ladder_csv, "--lambda", "2.1")
    assert code == 0
    U = read_matrix_csv(io.StringIO(out))
    expected = prox_l11(ladder, ProxConfig(lam=2.1, delta=1e-8)).U
    np.testing.assert_array_equal(U, expected)
    np.testing.assert_allclose(U, [[0, 0.1], [0, 0.2], [0.9, 0.3]], atol=1e-6)


def test_prox_emit_duals_block(capsys, ladder_csv):
    code, out, _ = run(
        capsys, "prox", "--input", ladder_csv, "--lambda", "2.1",
        "--delta", "1e-9", "--emit-duals",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[3].startswith("# t=")
    assert lines[4].startswith("# nu=")
    assert lines[5] == "# active=0"
    assert lines[6] == "# certified=true"
    assert float(lines[3].removeprefix("# t=")) == pytest.approx(0.9, abs=1e-8)
    nu = [float(v) for v in lines[4].removeprefix("# nu=").split(",")]
    np.testing.assert_allclose(nu, [1.0, 0.0], atol=1e-8)
    # the comment block does not break re-reading the matrix
    np.testing.assert_allclose(
        read_matrix_csv(io.StringIO(out)), [[0, 0.1], [0, 0.2], [0.9, 0.3]], atol=1e-6
    )


def test_prox_output_file(capsys, tmp_path, ladder_csv):
    dest = tmp_path / "u.csv"
    code, out, _ = run(
        capsys, "prox", "--input", ladder_csv, "--lambda", "2.1", "--output", str(dest)
    )
    assert code == 0 and out == ""
    assert dest.exists()
    np.testing.assert_allclose(
        read_matrix_csv(dest), [[0, 0.1], [0, 0.2], [0.9, 0.3]], atol=1e-6
    )


def test_prox_lambda_frac_full_shrink(capsys, ladder_csv):
    code, out, _ = run(capsys, "prox", "--input", ladder_csv, "--lambda-frac", "1.0")
    assert code == 0
    assert not read_matrix_csv(io.StringIO(out)).any()


def test_prox_lambda_frac_equals_explicit_lambda(capsys, ladder_csv, ladder):
    code, out, _ = run(capsys, "prox", "--input", ladder_csv, "--lambda-frac", "0.5")
    assert code == 0
    expected = prox_l11(ladder, ProxConfig(lam=0.5 * lambda_max(ladder))).U
    np.testing.assert_array_equal(read_matrix_csv(io.StringIO(out)), expected)


def test_prox_linfinf_norm(capsys, tmp_path, ladder):
    path = tmp_path / "xt.csv"
    write_matrix_csv(ladder.T, path)
    code, out, _ = run(capsys, "prox", "--input", str(path), "--lambda", "2.1",
                       "--norm", "linfinf")
    assert code == 0
    expected = prox_linfinf(ladder.T, ProxConfig(lam=2.1)).U
    np.testing.assert_array_equal(read_matrix_csv(io.StringIO(out)), expected)
    np.testing.assert_allclose(
        read_matrix_csv(io.StringIO(out)), [[0, 0, 0.9], [0.1, 0.2, 0.3]], atol=1e-6
    )


@pytest.mark.parametrize(
    "argv",
    [
        ["prox", "--input", "{missing}", "--lambda", "2.1"],
        ["prox", "--input", "{bad}", "--lambda", "2.1"],
        ["prox", "--input", "{x}", "--lambda", "-1"],
        ["prox", "--input", "{x}", "--lambda", "0"],
        ["prox", "--input", "{x}", "--lambda-frac", "0"],
        ["prox", "--input", "{x}", "--lambda-frac", "1.5"],
        ["prox", "--input", "{x}", "--lambda", "1", "--delta", "0"],
    ],
)
def test_prox_bad_inputs_exit_2(capsys, tmp_path, ladder_csv, argv):
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3\n")
    subst = {"{x}": ladder_csv, "{bad}": str(bad), "{missing}": str(tmp_path / "nope.csv")}
    argv = [subst.get(a, a) for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err.lower()


def test_prox_flag_conflicts_are_usage_errors(capsys, ladder_csv):
    with pytest.raises(SystemExit) as exc:
        main(["prox", "--input", ladder_csv])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["prox", "--input", ladder_csv, "--lambda", "1", "--lambda-frac", "0.5"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_verify_passes_and_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "--trials", "10", "--seed", "42")
    code2, out2, _ = run(capsys, "verify", "--trials", "10", "--seed", "42")
    assert code1 == code2 == 0
    assert out1 == out2
    assert "PASS" in out1
    assert "max_elementwise_error" in out1


def test_verify_failure_lists_trials(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "5", "--seed", "1", "--tol", "0")
    assert code == 1
    assert "FAIL trial" in out
    assert "seed 1" in out


def test_verify_rejects_zero_trials(capsys):
    code, _, err = run(capsys, "verify", "--trials", "0")
    assert code == 2
    assert "--trials" in err


def test_verify_rejects_oversized_bounds(capsys):
    code, _, err = run(capsys, "verify", "--trials", "1", "--max-n", "9")
    assert code == 2
    assert "error" in err


def test_parse_sizes():
    assert parse_sizes("1000x50,10x2") == [(1000, 50), (10, 2)]
    assert parse_sizes("3X4") == [(3, 4)]
    for bad in ("3x", "x4", "3x4x5", "0x4", "", "axb"):
        with pytest.raises(Exception):
            parse_sizes(bad)


def test_bench_csv_contract(capsys, tmp_path):
    dest = tmp_path / "bench.csv"
    code, _, err = run(capsys, "bench", "--sizes", "100x10,50x3", "--reps", "2",
                       "--seed", "5", "--output", str(dest))
    assert code == 0
    assert "mean wall time" in err
    text = dest.read_text()
    assert text.splitlines()[0] == BENCH_HEADER
    records = read_bench_csv(str(dest))
    assert [(r.n, r.m, r.rep) for r in records] == [
        (100, 10, 0), (100, 10, 1), (50, 3, 0), (50, 3, 1)
    ]
    for r in records:
        assert r.delta == BENCH_DELTA
        assert r.wall_time_seconds >= 0
        assert 0 <= r.nnz_fraction <= 1
        assert r.iterations >= 1


def test_bench_rows_are_reproducible(capsys, tmp_path):
    dest = tmp_path / "bench.csv"
    code, _, _ = run(capsys, "bench", "--sizes", "60x4", "--reps", "3",
                     "--seed", "11", "--output", str(dest))
    assert code == 0
    records = read_bench_csv(str(dest))
    for record, (n, m, rep, X) in zip(records, bench_instances([(60, 4)], 3, 11)):
        assert (record.n, record.m, record.rep) == (n, m, rep)
        assert record.lam == 0.5 * lambda_max(X)
        sol = prox_l11(X, ProxConfig(lam=record.lam, delta=record.delta))
        assert record.iterations == sol.iterations
        assert record.nnz_fraction == np.count_nonzero(sol.U) / sol.U.size
        t_max = build_column_cache(X).t_max_global
        assert abs(record.iterations - math.ceil(math.log2(t_max / record.delta))) <= 1


def test_bench_rejects_bad_reps(capsys):
    code, _, err = run(capsys, "bench", "--sizes", "10x2", "--reps", "0")
    assert code == 2
    assert "--reps" in err


def test_bench_rejects_bad_sizes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--sizes", "3x0"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_read_bench_csv_requires_header():
    with pytest.raises(ValueError, match="header"):
        read_bench_csv(io.StringIO("1,2,3\n"))


def test_gen_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "gen", "--n", "3", "--m", "2", "--seed", "7", "--output", str(a))[0] == 0
    assert run(capsys, "gen", "--n", "3", "--m", "2", "--seed", "7", "--output", str(b))[0] == 0
    assert a.read_text() == b.read_text()
    assert read_matrix_csv(a).shape == (3, 2)


def test_gen_single_value(capsys):
    code, out, _ = run(capsys, "gen", "--n", "1", "--m", "1", "--seed", "0")
    assert code == 0
    assert read_matrix_csv(io.StringIO(out)).shape == (1, 1)


def test_gen_uniform_range(capsys):
    code, out, _ = run(capsys, "gen", "--n", "40", "--m", "5", "--seed", "2",
                       "--dist", "uniform")
    assert code == 0
    X = read_matrix_csv(io.StringIO(out))
    assert (X >= -1).all() and (X <= 1).all()


def test_gen_rejects_degenerate_size(capsys):
    assert run(capsys, "gen", "--n", "0", "--m", "2")[0] == 2
    assert run(capsys, "gen", "--n", "2", "--m", "-1")[0] == 2


def test_console_entry_point(ladder_csv):
    proc = subprocess.run(
        [sys.executable, "-m", "normprox.cli", "prox", "--input", ladder_csv,
         "--lambda", "2.1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "0,0.1"
