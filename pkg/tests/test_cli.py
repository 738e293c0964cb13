import json
import shutil

import pytest

from src.circuits.textformat import load_circuit
from src.core.config import PACKAGED_DATA_DIR
from src.main import main
from tests.helpers import GOLDEN


def rev(p: int) -> str:
    return str(PACKAGED_DATA_DIR / f"s{p:02d}.rev")


def _rows(out: str) -> list[int]:
    """y values of a printed table, ignoring the header and rules."""
    values = []
    for line in out.splitlines()[1:]:
        if "|" not in line:
            continue
        bits = line.split("|")[1].split()
        values.append(int("".join(bits), 2))
    return values


# ---------------------------------------------------------------------------
# synth
# ---------------------------------------------------------------------------

def test_synth_writes_the_bundled_circuit(tmp_path, capsys, bundled):
    out = tmp_path / "s11.rev"
    assert main(["synth", "11", "--out", str(out)]) == 0
    assert load_circuit(out) == bundled[11]
    assert capsys.readouterr().out.splitlines()[-1] == "p=11 N_T=4 N_CN=5 Q=29"


def test_synth_two_prints_a_single_cnot(capsys):
    assert main(["synth", "2"]) == 0
    out = capsys.readouterr().out
    assert "wires 1 1\ncnot x1 y1\n" in out
    assert out.splitlines()[-1] == "p=2 N_T=0 N_CN=1 Q=1"


def test_synth_unsupported_period(capsys):
    assert main(["synth", "37"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error: ")
    assert "2^k + 1" in err


def test_synth_quiet_suppresses_chatter(tmp_path, capsys):
    assert main(["--quiet", "synth", "6", "--out", str(tmp_path / "s6.rev")]) == 0
    assert capsys.readouterr().out == "p=6 N_T=1 N_CN=4 Q=10\n"


def test_synth_budget_exhausted(capsys):
    assert main(["synth", "37", "--search-budget", "0", "--max-states", "10"]) == 3
    assert "budget" in capsys.readouterr().err


def test_synth_rejects_bad_budget(capsys):
    assert main(["synth", "37", "--search-budget", "1", "--workers", "0"]) == 2


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def test_table_s5(capsys, published_tables):
    assert main(["table", rev(5)]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "x3 x2 x1 | y3 y2 y1"
    assert _rows(out) == published_tables[5]


def test_table_marks_the_period(capsys, published_tables):
    assert main(["table", rev(5), "--mark-period"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert set(lines[6]) == {"-"}
    assert _rows("\n".join(lines)) == published_tables[5]


def test_table_json(capsys):
    assert main(["table", rev(3), "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"n": 2, "m": 2, "table": [0, 1, 2, 0]}


def test_table_empty_circuit(tmp_path, capsys):
    path = tmp_path / "empty.rev"
    path.write_text("wires 2 2\n")
    assert main(["table", str(path)]) == 0
    assert _rows(capsys.readouterr().out) == [0, 0, 0, 0]


def test_table_malformed_line(tmp_path, capsys):
    path = tmp_path / "bad.rev"
    path.write_text("wires 2 2\ncnot x1 y1\ntof x1 y1\n")
    assert main(["table", str(path)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_table_missing_file(tmp_path, capsys):
    assert main(["table", str(tmp_path / "nope.rev")]) == 2


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_correct_period(capsys):
    assert main(["verify", rev(9), "--period", "9"]) == 0
    out = capsys.readouterr().out
    assert "monoperiodic: true" in out
    assert out.splitlines()[-1] == "PASS"


def test_verify_wrong_period(capsys):
    assert main(["verify", rev(9), "--period", "7"]) == 1
    assert capsys.readouterr().out.splitlines()[-1] == "FAIL"


def test_verify_spectral(capsys):
    assert main(["verify", rev(3), "--period", "3", "--spectral"]) == 0
    out = capsys.readouterr().out
    assert "spectral: pass (threshold 0.405)" in out
    assert "  y=0 mass=1.000000" in out
    assert "  y=1 mass=0.750000" in out


def test_verify_spectral_threshold(capsys):
    assert main(["verify", rev(3), "--period", "3", "--spectral", "--threshold", "0.9"]) == 1
    assert "below threshold" in capsys.readouterr().out


def test_verify_spectral_lists_other_passing_periods(capsys):
    assert main(["verify", rev(3), "--period", "3", "--spectral"]) == 0
    assert "  other periods passing: 2 [2, 4]" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------

def test_scan_golden(capsys):
    assert main(["scan", "--max-bits", "5"]) == 0
    assert capsys.readouterr().out == (GOLDEN / "scan_max_bits_5.txt").read_text()


def test_scan_two_bits(capsys):
    assert main(["scan", "--max-bits", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "  3      11   2      B        1    1     3    9"
    assert lines[2] == ""


def test_scan_with_search_two_bits(capsys):
    assert main(["scan", "--max-bits", "2", "--with-search"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].endswith("certificate")
    assert lines[1].endswith("exhausted N_T<=0")


@pytest.mark.slow
def test_scan_with_search_three_bits(capsys):
    assert main(["scan", "--max-bits", "3", "--with-search"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1].endswith("exhausted N_T<=0")
    assert lines[2].endswith("exhausted N_T<=1")
    assert lines[3].endswith("exhausted N_T<=1")


def test_scan_json(capsys):
    assert main(["scan", "--max-bits", "3", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [row["p"] for row in report["rows"]] == [3, 5, 7]
    assert report["rows"][0]["class"] == "B"
    assert report["rows"][1]["actual"] == {"n_toffoli": 2, "n_cnot": 3, "quantum_cost": 15}
    assert report["rows"][0]["search"] is None


def test_scan_json_with_search(capsys):
    assert main(["scan", "--max-bits", "2", "--with-search", "--json"]) == 0
    row = json.loads(capsys.readouterr().out)["rows"][0]
    assert row["certificate"] == "exhausted N_T<=0"
    assert row["search"] == {"p": 3, "class": "B", "predicted_toffoli": 1, "certificate": "exhausted"}


# ---------------------------------------------------------------------------
# export / spectrum
# ---------------------------------------------------------------------------

def test_export_ascii(capsys):
    assert main(["export", rev(3), "--format", "ascii"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    assert all(len(line) == len("x2 -") + 4 * 3 + 1 for line in lines)


def test_export_json(capsys):
    assert main(["export", rev(3), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert (payload["n"], payload["m"], len(payload["gates"])) == (2, 2, 4)


def test_export_qasm(capsys):
    assert main(["export", rev(5), "-f", "qasm"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert sum(line.startswith("ccx ") for line in lines) == 2
    assert sum(line.startswith("cx ") for line in lines) == 3


def test_export_unknown_format():
    with pytest.raises(SystemExit) as info:
        main(["export", rev(3), "--format", "svg"])
    assert info.value.code == 2


def test_spectrum_json(capsys):
    assert main(["spectrum", rev(3), "--y", "0", "--json"]) == 0
    records = json.loads(capsys.readouterr().out)
    assert [r["k"] for r in records] == [0, 1, 2, 3]
    assert records[0]["probability"] == pytest.approx(0.5)


def test_spectrum_bars(capsys):
    assert main(["spectrum", rev(3), "--y", "0", "--period", "3"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[-1] == "peak mass for p=3: 1.000000"


def test_spectrum_without_preimage(capsys):
    assert main(["spectrum", rev(3), "--y", "3"]) == 2


# ---------------------------------------------------------------------------
# global flags
# ---------------------------------------------------------------------------

def test_data_dir_checksum_failure(tmp_path, capsys):
    data = tmp_path / "circuits"
    shutil.copytree(PACKAGED_DATA_DIR, data)
    (data / "s13.rev").write_text("wires 4 4\n")
    assert main(["--data-dir", str(data), "synth", "13"]) == 2
    assert "checksum" in capsys.readouterr().err
