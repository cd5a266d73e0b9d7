import csv
import io
import json
import math

import pytest

from qpeqite.cli import build_parser, main
from qpeqite.experiments import labs_operator
from qpeqite.spectrum import enumerate_spectrum


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(line for line in io.StringIO(text) if not line.startswith("#")))


def test_energy(capsys):
    code, out, _ = run(capsys, "energy", "--seq", "++-")
    assert code == 0
    (row,) = rows(out)
    assert row["sidelobe_energy"] == "1" and row["constant"] == "3"
    assert 2 * float(row["hamiltonian_energy"]) + 3 == 1


def test_spectrum_csv_and_json(capsys):
    code, out, err = run(capsys, "spectrum", "--n", "3", "--alpha", "0", "--hamiltonian", "sidelobe")
    assert code == 0 and "E0=1" in err
    assert out.splitlines()[:2] == ["bitstring,energy", "000,5"]
    code, out, _ = run(capsys, "spectrum", "--n", "3", "--alpha", "0", "--format", "json")
    data = json.loads(out)
    assert len(data) == 8 and data[0] == {"bitstring": "000", "energy": 1}


def test_qite_sweep_example(capsys, tmp_path):
    path = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "qite-sweep", "--n", "3", "--nr", "4", "-o", str(path))
    assert code == 0
    table = rows(path.read_text())
    assert len(table) == 101
    overlap = [float(r["ground_overlap"]) for r in table]
    assert all(b >= a for a, b in zip(overlap, overlap[1:]))
    assert float(table[0]["success_probability"]) == pytest.approx(math.sin(1) ** 2, abs=1e-11)
    assert set(table[0]) == {"tau", "tau_normalized", "ground_overlap", "success_probability", "overlap_no_qite"}


def test_output_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert run(capsys, "qite-sweep", "--n", "4", "--tau-steps", "21", "--jobs", "2", "-o", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_nr_scaling_example(capsys):
    code, out, _ = run(capsys, "nr-scaling", "--n-min", "4", "--n-max", "16")
    assert code == 0
    assert out.startswith("# N_R = min register size")
    assert any(line.startswith("# fit N_R") for line in out.splitlines())
    for r in rows(out):
        spec = enumerate_spectrum(labs_operator(int(r["n"])))
        assert int(r["n_register"]) == math.ceil(math.log2(spec.max_energy - spec.ground_energy + 1))


def test_validate_example(capsys):
    code, _, err = run(capsys, "validate", "--n", "3", "--nr", "4", "--tau", "5")
    assert code == 0
    worst = float(err.strip().split()[-1])
    assert worst < 1e-10


def test_min_tau_range(capsys):
    code, out, _ = run(capsys, "min-tau", "--n-min", "3", "--n-max", "4")
    assert code == 0
    table = rows(out)
    assert [r["found"] for r in table] == ["true", "true"]
    assert float(table[0]["tau_normalized"]) == pytest.approx(0.258990325928, rel=2e-6)


def test_qpe_and_resources(capsys):
    code, out, err = run(capsys, "qpe", "--n", "4", "--nr", "2")
    assert code == 0 and "aliasing" in err
    assert len(rows(out)) == 4
    code, out, _ = run(capsys, "resources", "--n", "3", "--nr", "2", "--uar", "1", "--eps", "0.05")
    assert code == 0
    stages = [r["stage"] for r in rows(out)]
    assert stages[0] == "qpe" and stages[-1] == "total"


def test_synth(capsys):
    code, out, _ = run(capsys, "synth", "--depth", "4")
    assert code == 0
    table = rows(out)
    assert [int(r["t_count"]) for r in table] == [0, 0, 58, 340, 1536]
    code, out, _ = run(capsys, "synth", "--uar", "--nr-list", "1", "--depth", "1", "--net-length", "6")
    assert code == 0 and len(rows(out)) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["qpe", "--nr", "2"],
        ["spectrum", "--n", "30"],
        ["min-tau", "--n", "3", "--threshold", "2"],
        ["synth", "--depth", "9"],
        ["resources", "--n", "3", "--eps", "0"],
        ["spectrum", "--n", "30", "--archive", "/nonexistent"],
    ],
)
def test_errors_exit_nonzero(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("qpeqite: error:") and len(err.strip().splitlines()) == 1


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["qpe", "--n", "3", "--bogus"])
    assert exc.value.code == 2


def test_help_lists_flags(capsys):
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    for name, p in sub.choices.items():
        text = p.format_help()
        for action in p._actions:
            for opt in action.option_strings:
                assert opt in text, (name, opt)


def test_alpha_from_archive(capsys, tmp_path):
    arch = tmp_path / "arch.txt"
    arch.write_text("3 1\n")
    code, out, _ = run(capsys, "qpe", "--n", "3", "--nr", "2", "--archive", str(arch))
    assert code == 0
