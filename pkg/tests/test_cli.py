import json

import pytest

from toeplab.boolmat import BoolMatrix
from toeplab.cli import (
    EXIT_BAD_FORMAT,
    EXIT_BAD_SPEC,
    EXIT_FAILURE,
    EXIT_OK,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBuild:
    def test_text_matrix(self, capsys):
        code, out, _ = run(capsys, "build", "T2<1;1>")
        assert code == EXIT_OK
        assert out.strip().splitlines() == ["2", "01", "10"]

    def test_json_round_trips(self, capsys):
        code, out, _ = run(capsys, "build", "T8<1,4;2,5>", "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        mat = BoolMatrix.from_json_dict(payload["matrix"])
        assert mat.get(1, 2) == 1 and mat.get(1, 5) == 1
        assert payload["spec"] == {"n": 8, "S": [1, 4], "T": [2, 5]}

    def test_dot_matches_figure_arcs(self, capsys):
        code, out, _ = run(capsys, "build", "T6<2,4;4,5>", "--format", "dot")
        assert code == EXIT_OK
        arcs = set()
        for line in out.splitlines():
            if "->" in line:
                left, rest = line.strip().split("->")
                arcs.add((int(left), int(rest.split("[")[0])))
        assert arcs == {(1, 3), (1, 5), (2, 4), (2, 6), (3, 5), (4, 6), (5, 1), (6, 2), (6, 1)}


class TestPeriod:
    def test_running_example_line(self, capsys):
        code, out, _ = run(capsys, "period", "T8<1,4;2,5>")
        assert code == EXIT_OK
        assert out.strip() == "period=3 predicted=3 (d=3, d'=1)"

    def test_json_fields(self, capsys):
        code, out, _ = run(capsys, "period", "T5<2;4>", "--format", "json")
        payload = json.loads(out)
        assert payload["period"] == 3 and payload["predicted"] == 3
        assert payload["conditions_hold"] is False


class TestCompetition:
    def test_running_example(self, capsys):
        code, out, _ = run(capsys, "competition", "T8<1,4;2,5>", "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["period"] == 1
        assert payload["block_match"] is True
        assert payload["classes"] == [[1, 4, 7], [2, 5, 8], [3, 6]]

    def test_text_mentions_both_views(self, capsys):
        code, out, _ = run(capsys, "competition", "T8<1,4;2,5>")
        assert "union of cliques" in out and "all-ones blocks" in out


class TestGraph:
    def test_edges_sorted_lexicographically(self, capsys):
        code, out, _ = run(capsys, "graph", "T8<1,4;2,5>", "--m", "3", "--format", "json")
        payload = json.loads(out)
        edges = payload["graph"]["edges"]
        assert edges == sorted(edges)
        assert all(u < v for u, v in edges)

    def test_dot_output(self, capsys):
        code, out, _ = run(capsys, "graph", "T3<1;2>", "--m", "2", "--format", "dot")
        assert code == EXIT_OK and out.startswith("graph")


class TestPsets:
    def test_step_three_sets(self, capsys):
        code, out, _ = run(capsys, "psets", "T8<1,4;2,5>", "--i", "3")
        assert code == EXIT_OK
        assert out.splitlines() == [
            "P={-6,-3,0,3,6}",
            "Q={-6,-3,0,3,6}",
            "R={-6,-3,0,3,6}",
        ]

    def test_stabilize(self, capsys):
        code, out, _ = run(capsys, "psets", "T8<1,4;2,5>", "--stabilize", "--format", "json")
        payload = json.loads(out)
        assert payload["m_emp"] == 2 and payload["certified"] is True

    def test_requires_mode(self, capsys):
        code, _, err = run(capsys, "psets", "T8<1,4;2,5>")
        assert code == 2
        assert "provide --i or --stabilize" in err


class TestWalk:
    def test_narrative_walk(self, capsys):
        code, out, _ = run(
            capsys, "walk", "T8<1,4;2,5>", "--start", "7", "--counts", "s2=5,t2=6",
            "--format", "json",
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        kinds = [(a["kind"], a["index"]) for a in payload["walk"]["arcs"]]
        assert kinds.count(("s", 2)) == 5 and kinds.count(("t", 2)) == 6

    def test_exact_walk(self, capsys):
        code, out, _ = run(
            capsys, "walk", "T8<1,4;2,5>", "--start", "1", "--exact", "--s1", "3", "--t1", "0",
            "--format", "json",
        )
        payload = json.loads(out)
        assert payload["walk"]["vertices"] == [1, 2, 3, 4]

    def test_impossible_walk_fails(self, capsys):
        code, _, err = run(capsys, "walk", "T6<2,4;4,5>", "--start", "1", "--counts", "t2=1")
        assert code == EXIT_FAILURE
        assert "error:" in err

    def test_malformed_counts(self, capsys):
        code, _, err = run(capsys, "walk", "T8<1,4;2,5>", "--start", "1", "--counts", "x9")
        assert code == 2


class TestBoundAndCertificate:
    def test_bound(self, capsys):
        code, out, _ = run(capsys, "bound", "T8<1,4;2,5>", "--format", "json")
        payload = json.loads(out)
        assert payload["bound"] == 30 and payload["irreducibility_hypothesis"] is True

    def test_certificate(self, capsys):
        code, out, _ = run(capsys, "certificate", "T8<1,4;2,5>", "--format", "json")
        payload = json.loads(out)
        a, b = payload["forward_coeffs"], payload["backward_coeffs"]
        assert a[0] * 1 + a[1] * 4 - b[0] * 2 - b[1] * 5 == 3
        assert sum(a) + sum(b) == 0


class TestVerifyCommand:
    def test_small_sweep_exit_zero(self, capsys):
        code, out, _ = run(capsys, "verify", "--nmax", "4", "--all", "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["instances"] == 59
        assert payload["violations"] == []

    def test_jsonl_streams_instances(self, capsys):
        code, out, _ = run(capsys, "verify", "--nmax", "3", "--all", "--format", "jsonl")
        lines = out.strip().splitlines()
        assert code == EXIT_OK and len(lines) == 10
        assert json.loads(lines[0])["spec"] == "T2<1;1>"

    def test_jobs_default_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("TOEPLAB_JOBS", "2")
        code, out, _ = run(capsys, "verify", "--nmax", "3", "--all", "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out)["instances"] == 10


class TestExamplesCommand:
    def test_all_goldens_match(self, capsys):
        code, out, _ = run(capsys, "examples")
        assert code == EXIT_OK
        assert "MISMATCH" not in out
        assert out.strip().endswith("goldens match")


class TestExitCodes:
    def test_bad_literal(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "period", "T8[1;2]")
        assert exc.value.code == EXIT_BAD_SPEC

    def test_unknown_flag_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "period", "T2<1;1>", "--bogus")
        assert exc.value.code == 2

    def test_inapplicable_format_distinct(self, capsys):
        code, _, err = run(capsys, "period", "T2<1;1>", "--format", "dot")
        assert code == EXIT_BAD_FORMAT
        assert "does not apply" in err

    def test_bad_step_counts_are_usage_errors(self, capsys):
        assert run(capsys, "power", "T2<1;1>", "--m", "-1")[0] == 2
        assert run(capsys, "graph", "T2<1;1>", "--m", "0")[0] == 2
        assert run(capsys, "psets", "T2<1;1>", "--i", "0")[0] == 2
