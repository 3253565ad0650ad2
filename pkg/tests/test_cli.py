import json

import pytest

from sidonx.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_generate_unique_small_set(tmp_path, capsys):
    out_path = tmp_path / "s.json"
    code, out, _ = run(capsys, "generate", "--t", "2", "--random-d", "3", "--seed", "7",
                       "--output", str(out_path))
    assert code == 0
    data = json.loads(out_path.read_text())
    assert data["t"] == 2 and sorted(data["S"]) == [1, 2, 3]
    manifest = json.loads(out)
    assert manifest["schema_version"] == 1
    assert manifest["checks"][0]["name"] == "verify_sidon"
    assert manifest["checks"][0]["status"] == "pass"


def test_generate_gold(capsys):
    code, out, err = run(capsys, "generate", "--gold-m", "3")
    assert code == 0
    data = json.loads(out)
    assert data["t"] == 6 and len(data["S"]) == 7


def test_generate_text_format(tmp_path, capsys):
    out_path = tmp_path / "s.txt"
    code, _, _ = run(capsys, "generate", "--gold-m", "2", "--format", "text",
                     "--output", str(out_path))
    assert code == 0
    assert [int(x) for x in out_path.read_text().split()] == [5, 9, 13]


def test_generate_exhaustion_exits_nonzero(capsys):
    code, _, err = run(capsys, "generate", "--t", "2", "--random-d", "4", "--seed", "0")
    assert code == 1
    assert "partial size" in err


def test_config_errors_exit_2(capsys):
    code, _, err = run(capsys, "generate", "--t", "2")
    assert code == 2
    code, _, err = run(capsys, "generate", "--gold-m", "3", "--random-d", "4", "--seed", "1")
    assert code == 2
    code, _, err = run(capsys, "generate", "--gold-m", "40")
    assert code == 2
    code, _, err = run(capsys, "count", "--gold-m", "2", "--split", "quarters")
    assert code == 2


def test_spectrum_command(tmp_path, capsys):
    out_path = tmp_path / "spec.json"
    code, _, _ = run(capsys, "spectrum", "--t", "2", "--random-d", "3", "--seed", "7",
                     "--output", str(out_path))
    assert code == 0
    data = json.loads(out_path.read_text())
    assert data["d"] == 3 and data["lambda"] == 1
    assert data["epsilon_num"] == 2 and data["epsilon_den"] == 3
    assert data["histogram"] == [[3, 1], [-1, 3]]


def test_spectrum_skeleton_flag(capsys):
    code, out, _ = run(capsys, "spectrum", "--gold-m", "2", "--skeleton")
    assert code == 0
    data = json.loads(out)
    assert data["d"] == 3  # C(3,2) = 3 pair sums


def test_build_summary_and_dump(tmp_path, capsys):
    dump = tmp_path / "triples.csv"
    code, out, _ = run(capsys, "build", "--t", "2", "--random-d", "3", "--seed", "7",
                       "--dump-triples", str(dump))
    assert code == 0
    data = json.loads(out)
    assert data["edges"] == 6 and data["triples"] == 4
    lines = dump.read_text().splitlines()
    assert lines[0] == "u,v,w,center" and len(lines) == 5


def test_verify_flagship_passes(capsys):
    code, out, _ = run(capsys, "verify", "--t", "2", "--random-d", "3", "--seed", "7")
    assert code == 0
    manifest = json.loads(out)
    statuses = {c["name"]: c["status"] for c in manifest["checks"]}
    assert statuses["verify_sidon"] == "pass"
    assert statuses["square_relation"] == "pass"
    assert statuses["certificate_vs_bruteforce"] == "pass"
    assert statuses["envelope"] == "pass"
    assert statuses["count_window"] == "report"


def test_verify_cube_passes_with_vacuous_bounds(capsys):
    code, out, _ = run(capsys, "verify", "--sidon-file", "/dev/null", "--t", "3")
    assert code == 2  # empty file is a config error, not a crash


def test_verify_cube_epsilon_zero(tmp_path, capsys):
    path = tmp_path / "cube.json"
    path.write_text(json.dumps({"t": 3, "S": [1, 2, 4]}))
    code, out, _ = run(capsys, "verify", "--sidon-file", str(path))
    assert code == 0
    manifest = json.loads(out)
    notes = {c["name"]: c for c in manifest["checks"]}
    assert notes["epsilon_positive"]["status"] == "report"
    assert notes["square_relation"]["status"] == "pass"


def test_verify_corrupted_file_fails(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"t": 3, "S": [1, 2, 4, 7]}))
    code, out, _ = run(capsys, "verify", "--sidon-file", str(path))
    assert code == 1
    manifest = json.loads(out)
    assert manifest["checks"][0]["status"] == "fail"


def test_walk_csv_schema(tmp_path, capsys):
    out_path = tmp_path / "mix.csv"
    code, out, _ = run(capsys, "walk", "--gold-m", "3", "--steps", "10", "--exact",
                       "--output", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "step,l2_distance,envelope"
    assert len(lines) == 12
    manifest = json.loads(out)
    assert manifest["checks"][0]["name"] == "envelope"
    assert manifest["checks"][0]["status"] == "pass"


def test_walk_monte_carlo_json(tmp_path, capsys):
    out_path = tmp_path / "hist.json"
    code, out, _ = run(capsys, "walk", "--t", "2", "--random-d", "3", "--seed", "7",
                       "--monte-carlo", "--trials", "500", "--walk-seed", "3",
                       "--output", str(out_path))
    assert code == 0
    data = json.loads(out_path.read_text())
    assert data["seed"] == 3 and data["trials"] == 500
    assert sum(data["counts"].values()) == 500


def test_count_command(capsys):
    code, out, _ = run(capsys, "count", "--gold-m", "3", "--split", "thirds", "--seed", "3")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"count", "incidence_count", "main_term", "window",
                         "count_within", "incidence_within", "lambda", "mu", "sizes"}
    assert data["count"] == data["incidence_count"]


def test_expansion_command(capsys):
    code, out, _ = run(capsys, "expansion", "--t", "2", "--random-d", "3", "--seed", "7",
                       "--kinds", "ETV")
    assert code == 0
    data = json.loads(out)
    assert data["h_E"] == [1, 1] and data["h_T"] == [1, 1] and data["h_V"] == [1, 1]
    assert data["epsilon"] == [2, 3]


def test_expansion_size_gate_exits_2(capsys):
    code, _, err = run(capsys, "expansion", "--gold-m", "3")
    assert code == 2
    assert "exceeds" in err


def test_overlap_command(capsys):
    code, out, _ = run(capsys, "overlap", "--t", "2", "--random-d", "3", "--seed", "7",
                       "--grid", "64")
    assert code == 0
    data = json.loads(out)
    assert 0 <= data["fraction_num"] <= data["fraction_den"]
    assert data["total"] == 4
    assert len(data["best_point"]) == 2


def test_overlap_needs_exactly_one_strategy(capsys):
    code, _, _ = run(capsys, "overlap", "--t", "2", "--random-d", "3", "--seed", "7")
    assert code == 2
    code, _, _ = run(capsys, "overlap", "--t", "2", "--random-d", "3", "--seed", "7",
                     "--grid", "4", "--centroids")
    assert code == 2


def test_outputs_byte_identical_across_runs(tmp_path, capsys):
    def snapshot(tag):
        paths = {}
        for name, argv in {
            "set": ["generate", "--t", "4", "--random-d", "4", "--seed", "9"],
            "spec": ["spectrum", "--gold-m", "2"],
            "mix": ["walk", "--t", "2", "--random-d", "3", "--seed", "7", "--steps", "12"],
            "hist": ["walk", "--gold-m", "2", "--monte-carlo", "--trials", "400",
                     "--walk-seed", "5", "--workers", tag],
            "count": ["count", "--gold-m", "3", "--split-seed", "2"],
            "overlap": ["overlap", "--t", "2", "--random-d", "3", "--seed", "7",
                        "--grid", "16"],
        }.items():
            path = tmp_path / f"{name}-{tag}.out"
            assert main(argv + ["--output", str(path)]) == 0
            capsys.readouterr()
            paths[name] = path.read_bytes()
        return paths

    first = snapshot("1")
    second = snapshot("3")
    assert first == second
