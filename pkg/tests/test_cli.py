import json
from fractions import Fraction as F

import pytest

from nbwalks import Polynomial, parse_graph, serialize_graph
from nbwalks.errors import (
    DuplicateEdgeError,
    GraphParseError,
    NonPositiveWeightError,
)
from nbwalks import cli as cli_mod
from nbwalks.cli import main, run_command
from nbwalks.ihara import IdentityCertificate

from helpers import example1


EXAMPLE1 = "1\t2\n2\t1\n2\t3\n3\t4\n4\t2\n"


class TestParse:
    def test_example1(self):
        g = parse_graph(EXAMPLE1)
        assert g.edge_set() == example1().edge_set()
        assert g.labels == ("1", "2", "3", "4")

    def test_undirected_directive(self):
        g = parse_graph("%undirected\n1\t2\n")
        assert g.m == 2 and g.reciprocated_arc_count() == 2

    def test_comments_and_blank_lines(self):
        g = parse_graph("# header\n\n1\t2  # trailing\n")
        assert g.m == 1

    def test_isolated_vertex_line(self):
        g = parse_graph("5\n1\t2\n")
        assert g.n == 3 and g.labels[0] == "5"

    def test_decimal_weight_exact(self):
        g = parse_graph("1\t2\t0.25\n")
        assert g.edges[0][2] == F(1, 4)

    def test_fraction_weight(self):
        g = parse_graph("1\t2\t3/7\n")
        assert g.edges[0][2] == F(3, 7)

    def test_zero_weight_rejected(self):
        with pytest.raises(NonPositiveWeightError):
            parse_graph("1\t2\t0\n")

    def test_bad_token_count(self):
        with pytest.raises(GraphParseError) as err:
            parse_graph("1\t2\t3\t4\n")
        assert "line 1" in str(err.value)

    def test_duplicate_edge(self):
        with pytest.raises(DuplicateEdgeError):
            parse_graph("1\t2\n1\t2\n")

    def test_round_trip(self):
        for text in (EXAMPLE1, "%undirected\n1\t2\t1/3\n", "9\n1\t2\t0.5\n"):
            g = parse_graph(text)
            again = parse_graph(serialize_graph(g))
            assert again == g
            assert serialize_graph(again) == serialize_graph(g)


@pytest.fixture()
def example1_file(tmp_path):
    path = tmp_path / "example1.tsv"
    path.write_text(EXAMPLE1)
    return str(path)


class TestCommands:
    def test_radius_payload(self, example1_file):
        code, doc = run_command(["radius", example1_file])
        assert code == 0
        payload = doc["payload"]
        assert payload["case"] == "SomeOneCycleNoneMore"
        assert payload["r"] == {"kind": "exact", "value": "1/1", "decimal": "1"}

    def test_analyze(self, example1_file):
        code, doc = run_command(["analyze", example1_file])
        assert code == 0
        p = doc["payload"]
        assert (p["n"], p["m"]) == (4, 5)
        assert p["reciprocal_pairs"] == 1
        assert p["components"][0]["cycle_class"] == "one_cycle"

    def test_verify_ok(self, example1_file):
        code, doc = run_command(["verify", "--identity", "ihara", example1_file])
        assert code == 0
        assert doc["payload"]["all_equal"] is True

    def test_verify_all(self, example1_file):
        code, doc = run_command(["verify", example1_file])
        assert code == 0
        assert len(doc["payload"]["certificates"]) == 8

    def test_walk_methods_identical_tables(self, example1_file):
        _, via_oracle = run_command(
            ["walks", "--k", "5", "--method", "oracle", example1_file]
        )
        _, via_rec = run_command(
            ["walks", "--k", "5", "--method", "recurrence", example1_file]
        )
        _, via_edge = run_command(
            ["walks", "--k", "5", "--method", "edgepower", example1_file]
        )
        t1 = json.dumps(via_oracle["payload"]["tables"])
        t2 = json.dumps(via_rec["payload"]["tables"])
        t3 = json.dumps(via_edge["payload"]["tables"])
        assert t1 == t2 == t3

    def test_smith_golden(self, example1_file):
        code, doc = run_command(["smith", "--tau", "1/2", example1_file])
        assert code == 0
        inv = doc["payload"]["invariants"]
        assert inv[1] == ["-4/1", "0/1", "1/1"]
        assert inv[3] == [
            "16/1", "0/1", "-8/1", "-16/1", "1/1", "0/1", "0/1", "1/1",
        ]

    def test_centrality(self, example1_file):
        code, doc = run_command(["centrality", "--t", "1/4", example1_file])
        assert code == 0
        assert doc["payload"]["row_sums"][0] == "1345/1008"

    def test_determinism(self, example1_file, capsys):
        assert main(["radius", example1_file]) == 0
        first = capsys.readouterr().out
        assert main(["radius", example1_file]) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_float_walks(self, example1_file):
        code, doc = run_command(["walks", "--k", "3", "--float", example1_file])
        assert code == 0
        assert doc["payload"]["float"] is True


class TestExitCodes:
    def test_missing_file(self, capsys):
        assert main(["radius", "/nonexistent/file.tsv"]) == 1

    def test_parse_error(self, tmp_path, capsys):
        path = tmp_path / "bad.tsv"
        path.write_text("1\t2\t0\n")
        assert main(["radius", str(path)]) == 1
        assert "nbwalks" in capsys.readouterr().err

    def test_unknown_flag(self, example1_file, capsys):
        assert main(["radius", "--bogus", example1_file]) == 1

    def test_unknown_command(self, example1_file, capsys):
        assert main(["frobnicate", example1_file]) == 1

    def test_failed_certificate_exits_two(self, example1_file, monkeypatch, capsys):
        fake = IdentityCertificate(
            identity="ihara_digraph",
            equal=False,
            residual=Polynomial([1]),
            lhs=Polynomial([1]),
            rhs=Polynomial([0]),
        )
        monkeypatch.setattr(cli_mod, "verify_ihara_digraph", lambda g: fake)
        assert main(["verify", "--identity", "ihara", example1_file]) == 2

    def test_quiet_suppresses_stdout(self, example1_file, capsys):
        assert main(["radius", example1_file, "--quiet"]) == 0
        assert capsys.readouterr().out == ""

    def test_budget_flag(self, tmp_path, capsys):
        path = tmp_path / "k5.tsv"
        edges = [
            f"{i}\t{j}" for i in range(1, 6) for j in range(1, 6) if i != j
        ]
        path.write_text("\n".join(edges) + "\n")
        assert main(
            ["walks", "--k", "8", "--method", "oracle", "--budget", "10", str(path)]
        ) == 1
        assert "budget" in capsys.readouterr().err

    def test_budget_env(self, tmp_path, monkeypatch, capsys):
        path = tmp_path / "k5.tsv"
        edges = [
            f"{i}\t{j}" for i in range(1, 6) for j in range(1, 6) if i != j
        ]
        path.write_text("\n".join(edges) + "\n")
        monkeypatch.setenv("NBTW_BUDGET", "10")
        assert main(["walks", "--k", "8", "--method", "oracle", str(path)]) == 1

    def test_tsv_format(self, example1_file, capsys):
        assert main(["radius", example1_file, "--format", "tsv"]) == 0
        out = capsys.readouterr().out
        assert "payload.case\tSomeOneCycleNoneMore" in out


class TestWeightedInput:
    @pytest.fixture()
    def weighted_file(self, tmp_path):
        path = tmp_path / "w3.tsv"
        path.write_text("1\t2\t2\n2\t3\t3\n3\t1\t5\n")
        return str(path)

    def test_verify_all_skips_unit_only_identities(self, weighted_file):
        code, doc = run_command(["verify", weighted_file])
        assert code == 0
        payload = doc["payload"]
        assert [c["identity"] for c in payload["certificates"]] == ["weighted_ihara"]
        assert "ihara_digraph" in payload["skipped_for_weights"]

    def test_explicit_unit_only_identity_errors(self, weighted_file, capsys):
        assert main(["verify", "--identity", "ihara", weighted_file]) == 1

    def test_float_walks_weighted(self, weighted_file):
        code, doc = run_command(["walks", "--k", "3", "--float", weighted_file])
        assert code == 0
        assert doc["payload"]["tables"][3][0][0] == 30.0

    def test_weighted_radius_command(self, weighted_file):
        code, doc = run_command(["radius", "--mode", "weighted", weighted_file])
        assert code == 0
        assert doc["payload"]["sigma_squared"] == "6/1"


class TestMoreInputs:
    def test_k4_verify(self, tmp_path):
        lines = [f"{i}\t{j}" for i in range(1, 5) for j in range(1, 5) if i != j]
        path = tmp_path / "k4.tsv"
        path.write_text("\n".join(lines) + "\n")
        code, doc = run_command(["verify", "--identity", "ihara", str(path)])
        assert code == 0
        assert doc["payload"]["certificates"][0]["equal"] is True

    def test_empty_file_analyzes(self, tmp_path):
        path = tmp_path / "empty.tsv"
        path.write_text("# nothing\n")
        code, doc = run_command(["analyze", str(path)])
        assert code == 0
        assert doc["payload"]["n"] == 0

    def test_btdw_radius_command(self, tmp_path):
        path = tmp_path / "tree.tsv"
        path.write_text("%undirected\n1\t2\n2\t3\n")
        code, doc = run_command(["radius", "--mode", "btdw", "--tau", "1/2", str(path)])
        assert code == 0
        assert doc["payload"]["case"] == "NotCharacterized"
        assert doc["payload"]["bounds"] is not None
