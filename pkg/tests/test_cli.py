"""Command-line interface: output formats, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from conwaylab.cli import main

from tests.test_periodic import BORROMEAN_Q, SIGMA1

HOPF = "X[1,3,2,4] X[3,1,4,2]"
TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"


@pytest.fixture
def hopf_file(tmp_path):
    path = tmp_path / "hopf.pd"
    path.write_text(HOPF + "\n")
    return str(path)


@pytest.fixture
def borromean_pattern_file(tmp_path):
    path = tmp_path / "borr.json"
    path.write_text(json.dumps(BORROMEAN_Q.to_json_dict()))
    return str(path)


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_conway_text_line(capsys, hopf_file):
    rc, out, err = run_cli(capsys, "conway", hopf_file)
    assert rc == 0 and err == ""
    assert out == "∇ = z ; n=2 ; a_0 = 1\n"


def test_conway_json(capsys, hopf_file):
    rc, out, _ = run_cli(capsys, "conway", "--json", hopf_file)
    assert rc == 0
    blob = json.loads(out)
    assert blob == {
        "schema": 1,
        "nabla": "z",
        "coefficients": [0, 1],
        "components": 2,
        "a0": 1,
    }


def test_conway_reads_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(TREFOIL))
    rc, out, _ = run_cli(capsys, "conway", "-")
    assert rc == 0
    assert out == "∇ = 1 + z^2 ; n=1 ; a_0 = 1\n"


def test_conway_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.pd"
    bad.write_text("X[1,2,3]")
    rc, _, err = run_cli(capsys, "conway", str(bad))
    assert rc == 2 and "error:" in err
    rc, _, err = run_cli(capsys, "conway", str(tmp_path / "missing.pd"))
    assert rc == 2 and "error:" in err


def test_conway_resource_limit_is_usage_error(capsys, hopf_file):
    rc, _, err = run_cli(capsys, "conway", "--max-crossings", "1", hopf_file)
    assert rc == 2
    assert "ceiling" in err


def test_conway_cache_dir(capsys, tmp_path, monkeypatch, hopf_file):
    cache_dir = tmp_path / "cache"
    monkeypatch.setenv("CONWAYLAB_CACHE_DIR", str(cache_dir))
    rc, out, _ = run_cli(capsys, "conway", hopf_file)
    assert rc == 0
    memo = json.loads((cache_dir / "memo.json").read_text())
    assert memo  # the run persisted its subresults
    # warm run gives the identical answer
    rc, out2, _ = run_cli(capsys, "conway", hopf_file)
    assert rc == 0 and out2 == out
    # --no-cache neither reads nor writes the store
    before = (cache_dir / "memo.json").read_text()
    rc, out3, _ = run_cli(capsys, "conway", "--no-cache", hopf_file)
    assert rc == 0 and out3 == out
    assert (cache_dir / "memo.json").read_text() == before


def test_lkmatrix_text(capsys, hopf_file):
    rc, out, _ = run_cli(capsys, "lkmatrix", hopf_file)
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "linking matrix (n=2):"
    assert [l.split() for l in lines[1:3]] == [["-1", "1"], ["1", "-1"]]
    assert "cofactor(0,0) = -1" in lines
    assert "a_0 matrix route = 1" in lines
    assert "a_0 skein engine = 1" in lines
    assert "agreement: ok" in lines


def test_lkmatrix_json(capsys, hopf_file):
    rc, out, _ = run_cli(capsys, "lkmatrix", "--json", hopf_file)
    assert rc == 0
    blob = json.loads(out)
    assert blob == {
        "schema": 1,
        "matrix": [[-1, 1], [1, -1]],
        "cofactor_0_0": -1,
        "a0_matrix": 1,
        "a0_engine": 1,
        "agree": True,
    }


def test_lift_json(capsys, borromean_pattern_file):
    rc, out, _ = run_cli(capsys, "lift", "--json", borromean_pattern_file, "-p", "3")
    assert rc == 0
    blob = json.loads(out)
    assert blob["schema"] == 1
    assert blob["p"] == 3
    assert blob["components"] == 3
    assert blob["quotient_components"] == 1
    assert blob["quotient_windings"] == [3]
    assert sorted(blob["position_of"]) == [0, 1, 2]
    assert len(blob["pd"].split()) == 6


def test_lift_text_and_p_validation(capsys, borromean_pattern_file):
    rc, out, _ = run_cli(capsys, "lift", borromean_pattern_file, "-p", "3")
    assert rc == 0
    assert out.startswith("p = 3\n")
    assert "components: 3" in out
    rc, _, err = run_cli(capsys, "lift", borromean_pattern_file, "-p", "1")
    assert rc == 2 and "p must be at least 2" in err


def test_lift_rejects_malformed_pattern(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"boundary_width\": 1}")
    rc, _, err = run_cli(capsys, "lift", str(bad), "-p", "2")
    assert rc == 2 and "error:" in err
    bad.write_text("not json")
    rc, _, err = run_cli(capsys, "lift", str(bad), "-p", "2")
    assert rc == 2


def test_classify_json(capsys, tmp_path):
    from conwaylab import make_type_m_pattern

    q = make_type_m_pattern(1, 3, seed=11)
    path = tmp_path / "q.json"
    path.write_text(json.dumps(q.to_json_dict()))
    rc, out, _ = run_cli(capsys, "classify", "--json", str(path), "-p", "3")
    assert rc == 0
    blob = json.loads(out)
    assert blob["classifiable"] is True
    assert blob["m"] == 1 and blob["p"] == 3
    assert len(blob["invariant_pairs"]) == 1


def test_classify_none_and_text(capsys, tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps(SIGMA1.to_json_dict()))
    rc, out, _ = run_cli(capsys, "classify", str(path), "-p", "3")
    assert rc == 0  # "no decomposition" is an answer, not an error
    path2 = tmp_path / "sq.json"
    hopfish = json.dumps({
        "schema": 1, "boundary_width": 2, "boundary_directions": ["R", "R"],
        "events": [{"type": "cross", "pos": 0, "sign": 1},
                   {"type": "cross", "pos": 0, "sign": 1}],
    })
    path2.write_text(hopfish)
    rc, out, _ = run_cli(capsys, "classify", str(path2), "-p", "3")
    assert rc == 0 and out == "classification: none\n"
    rc, out, _ = run_cli(capsys, "classify", "--json", str(path2), "-p", "3")
    assert json.loads(out) == {"schema": 1, "classifiable": False, "p": 3}


def test_gen_deterministic_lines(capsys):
    args = ("gen", "--width", "3", "--events", "4", "--count", "3", "--seed", "g1")
    rc, out1, _ = run_cli(capsys, *args)
    assert rc == 0
    rc, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
    lines = out1.strip().splitlines()
    assert len(lines) == 3
    for line in lines:
        blob = json.loads(line)
        assert blob["schema"] == 1
        assert blob["boundary_width"] == 3
        assert len(blob["events"]) == 4
    # constraints are honored
    rc, out, _ = run_cli(
        capsys, "gen", "--width", "3", "--events", "6", "-p", "3",
        "--strong", "--os", "--seed", "g2",
    )
    assert rc == 0
    from conwaylab import QuotientPattern, winding_numbers, is_orbitally_separated

    q = QuotientPattern.from_json_dict(json.loads(out))
    assert all(w % 3 == 0 for w in winding_numbers(q))
    assert is_orbitally_separated(q)


def test_gen_strong_needs_p(capsys):
    rc, _, err = run_cli(capsys, "gen", "--width", "2", "--events", "2", "--strong")
    assert rc == 2 and "--strong requires -p" in err


def test_verify_text_summary_and_exit(capsys):
    rc, out, _ = run_cli(
        capsys, "verify", "--suite", "hopf", "--count", "1", "--seed", "7"
    )
    assert rc == 0
    assert "period_two_exception: 1 pass / 0 fail / 0 n.a. / 0 skipped" in out
    assert "total: 1 pass / 0 fail / 0 n.a. / 0 skipped" in out


def test_verify_json_byte_identical_across_modes(capsys, tmp_path):
    base = (
        "verify", "--suite", "all", "--p", "3", "--count", "2", "--seed", "42",
    )
    blobs = []
    for extra in ((), ("--no-cache",), ("--workers", "3")):
        path = tmp_path / f"report{len(blobs)}.json"
        rc, _, _ = run_cli(capsys, *base, *extra, "--json", str(path))
        assert rc == 0
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1] == blobs[2]
    report = json.loads(blobs[0])
    assert report["schema"] == 1
    assert report["counts"]["fail"] == 0
    assert all("time_ms" not in r for r in report["reports"])


def test_verify_timing_flag(capsys, tmp_path):
    path = tmp_path / "timed.json"
    rc, _, _ = run_cli(
        capsys, "verify", "--suite", "hopf", "--timing", "--json", str(path)
    )
    assert rc == 0
    report = json.loads(path.read_text())
    assert all("time_ms" in r for r in report["reports"])


def test_verify_rejects_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2


def test_entry_point_subprocess(hopf_file):
    proc = subprocess.run(
        [sys.executable, "-m", "conwaylab.cli", "conway", hopf_file],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "∇ = z ; n=2 ; a_0 = 1\n"
