"""
Tests for the command line front end in ksmagic.run.
"""
import simplejson as json

from ksmagic.run import EXIT_INVALID, EXIT_NO_CONTRADICTION, EXIT_OK, cli_main


def run(capsys, *argv):
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestArray:

    def test_json(self, capsys):
        code, out, _ = run(capsys, "array", "--qubits", "2", "--format", "json")
        document = json.loads(out)
        assert code == EXIT_OK
        assert document["perm"] == [2, 1]
        assert document["grid"][2] == ["+ZX", "+XZ", "+YY"]

    def test_text(self, capsys):
        code, out, _ = run(capsys, "array", "--qubits", "3", "--contradiction")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "q=3 perm=2,3,1"
        assert "+YYY" in out.splitlines()[3]

    def test_no_commuting_contradiction(self, capsys):
        code, out, err = run(capsys, "array", "--qubits", "4", "--contradiction", "--commuting-contexts")
        assert code == EXIT_INVALID
        assert out == ""
        assert "No contradiction" in err

    def test_too_few_qubits(self, capsys):
        code, out, err = run(capsys, "array", "--qubits", "1")
        assert code == EXIT_INVALID
        assert out == "" and err.startswith("error:")


class TestVerify:

    def test_mermin_peres(self, capsys):
        code, out, _ = run(capsys, "verify", "--qubits", "2")
        assert code == EXIT_OK
        assert "m=1" in out.splitlines()
        assert "grand product: -1" in out

    def test_reversal(self, capsys):
        code, out, _ = run(capsys, "verify", "--qubits", "4", "--perm", "4,3,2,1", "--format", "json")
        document = json.loads(out)
        assert code == EXIT_NO_CONTRADICTION
        assert document["m"] == 2
        assert document["grand_product"] == 1
        assert document["products"]["C5"] == "+IIII"
        assert document["commutation"]["all_commuting"] is True

    def test_fixed_point(self, capsys):
        code, out, _ = run(capsys, "verify", "--qubits", "3", "--perm", "1,3,2")
        assert code == EXIT_INVALID
        assert out == ""


class TestClassical:

    def test_two_qubits(self, capsys):
        code, out, _ = run(capsys, "classical", "--qubits", "2", "--format", "json")
        document = json.loads(out)
        assert code == EXIT_OK
        assert document["classical_max"] == 4
        assert document["quantum_value"] == 6
        assert document["search_space_size"] == 512

    def test_budget(self, capsys, monkeypatch):
        monkeypatch.setenv("KSMAGIC_MAX_BRUTE_QUBITS", "3")
        code, out, err = run(capsys, "classical", "--qubits", "4")
        assert code == EXIT_INVALID
        assert out == ""
        assert "KSMAGIC_MAX_BRUTE_QUBITS" in err


class TestQuantum:

    def test_ghz(self, capsys):
        code, out, _ = run(capsys, "quantum", "--qubits", "3", "--state", "ghz", "--format", "json")
        assert code == EXIT_OK
        assert abs(json.loads(out)["x_ks"] - 7) < 1e-9

    def test_bad_state(self, capsys):
        code, _, err = run(capsys, "quantum", "--qubits", "2", "--state", "bell")
        assert code == EXIT_INVALID
        assert "bell" in err


class TestSample:

    def test_reproducible(self, capsys):
        argv = ["sample", "--qubits", "2", "--shots", "2000", "--epsilon", "0.05", "--seed", "3", "--format", "json"]
        first, second = run(capsys, *argv), run(capsys, *argv)
        assert first == second
        document = json.loads(first[1])
        assert document["shots"] == 2000 and document["exact"] == 6

    def test_dump(self, capsys, tmp_path):
        path = tmp_path / "run.jsonl"
        code, _, _ = run(capsys, "sample", "--qubits", "2", "--shots", "10", "--dump", str(path))
        assert code == EXIT_OK
        records = [json.loads(line) for line in path.read_text().splitlines()]
        assert len(records) == 50
        assert {r["context"] for r in records} == {"R1", "R2", "C1", "C2", "R3.C3"}
        assert json.loads((tmp_path / "run.meta.json").read_text())["ended_naturally"] is True

    def test_invalid_epsilon(self, capsys):
        code, out, _ = run(capsys, "sample", "--qubits", "2", "--shots", "10", "--epsilon", "0.7")
        assert code == EXIT_INVALID and out == ""

    def test_sampling_budget(self, capsys):
        code, out, _ = run(capsys, "sample", "--qubits", "13", "--shots", "10")
        assert code == EXIT_INVALID and out == ""

    def test_unwritable_dump(self, capsys, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        code, out, err = run(capsys, "sample", "--qubits", "2", "--shots", "10",
                             "--dump", str(blocker / "runs" / "run.jsonl"))
        assert code == EXIT_INVALID
        assert out == "" and err.startswith("error:")


class TestSweep:

    def test_sweep(self, capsys):
        code, out, _ = run(capsys, "sweep", "--qubits", "2", "--shots", "1000", "--epsilons", "0,0.1",
                           "--format", "json")
        document = json.loads(out)
        assert code == EXIT_OK
        assert [row["epsilon"] for row in document["sweep"]] == [0.0, 0.1]
        assert document["sweep"][0]["value"] == 6
        assert 0 < document["crossing_epsilon"] < 0.5


class TestConverge:

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "converge", "--max-q", "4", "--epsilon", "0.1")
        assert code == EXIT_OK
        assert out.splitlines()[3] == "4,6,8,0.75,0.25,0.4096"

    def test_default_epsilon_in_help(self, capsys):
        code, out, _ = run(capsys, "converge", "--help")
        assert code == EXIT_OK
        assert "default: 0.01" in out

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "table.json"
        code, out, _ = run(capsys, "converge", "--max-q", "10", "--format", "json", "--out", str(path))
        assert code == EXIT_OK and out == ""
        assert json.loads(path.read_text())["epsilon"] == 0.01

    def test_invalid(self, capsys):
        code, out, _ = run(capsys, "converge", "--max-q", "1")
        assert code == EXIT_INVALID and out == ""

    def test_row_budget(self, capsys):
        code, out, err = run(capsys, "converge", "--max-q", "1000000000")
        assert code == EXIT_INVALID
        assert out == "" and err.startswith("error:")

    def test_unwritable_out(self, capsys, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        code, out, err = run(capsys, "converge", "--max-q", "4", "--out", str(blocker / "table.csv"))
        assert code == EXIT_INVALID
        assert out == "" and err.startswith("error:")

    def test_missing_arguments(self, capsys):
        code, _, _ = run(capsys, "converge")
        assert code == EXIT_INVALID
