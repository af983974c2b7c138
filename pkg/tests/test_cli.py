"""Command-line surface: thin-wrapper behavior and exit codes."""

import json

import pytest

from antinef import corpus
from antinef.cli import main
from antinef.formats import emit_graph_document, emit_tower_document, GraphDocument, TowerDocument
from antinef.graph import dual_graph
from antinef.lattice import fundamental_cycle, is_rational


@pytest.fixture
def a1b_file(tmp_path):
    g = dual_graph("a1b", [("E", -3, 1), ("C1", -1, -1)], [("E", "C1")])
    path = tmp_path / "a1b.json"
    path.write_text(emit_graph_document(GraphDocument(name="a1b", graph=g)))
    return str(path)


@pytest.fixture
def ex244_tower_file(tmp_path):
    entry = corpus.get("ex244blown")
    cycles = {name: (entry.tower.height, c) for name, c in entry.cycles.items()}
    doc = TowerDocument(
        name=entry.name, tower=entry.tower, cycles=cycles, model=entry.model_args
    )
    path = tmp_path / "ex244.json"
    path.write_text(emit_tower_document(doc))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestColonCore:
    def test_worked_example(self, capsys, a1b_file):
        code, out = run(
            capsys, "colon-core", "--graph", a1b_file, "--cycle", "E:1,C1:2", "--json"
        )
        assert code == 0
        assert json.loads(out) == {
            "Y": {"C1": 1},
            "colon": {"C1": 1, "E": 1},
            "core": {"C1": 3, "E": 2},
            "good": False,
            "iterations": 1,
        }

    def test_trace_replays_to_same_result(self, capsys, a1b_file):
        code, plain = run(capsys, "colon-core", "--graph", a1b_file, "--cycle", "E:1,C1:2")
        code2, traced = run(
            capsys, "colon-core", "--graph", a1b_file, "--cycle", "E:1,C1:2", "--trace"
        )
        assert code == code2 == 0
        kept = "\n".join(l for l in traced.splitlines() if not l.startswith("#"))
        assert kept.strip() == plain.strip()

    def test_on_tower_document(self, capsys, ex244_tower_file):
        code, out = run(
            capsys, "colon-core", "--tower", ex244_tower_file, "--cycle", "Z", "--json"
        )
        assert code == 0
        data = json.loads(out)
        assert data["good"] is True
        assert data["core"] == {"E0": 4, "E1": 6, "E2": 6, "E3": 6, "E4": 6}


class TestThinWrapper:
    @pytest.mark.parametrize("name", ["A4", "D6", "E7", "HJ(7,2)"])
    def test_fundamental_cycle_matches_library(self, capsys, tmp_path, name):
        g = corpus.get(name).graph
        path = tmp_path / "g.json"
        path.write_text(emit_graph_document(GraphDocument(name=name, graph=g)))
        code, out = run(capsys, "fundamental-cycle", "--graph", str(path), "--json")
        assert code == 0
        assert json.loads(out)["fundamental_cycle"] == fundamental_cycle(g).as_dict()

    @pytest.mark.parametrize("name", ["A2", "ex244min"])
    def test_is_rational_matches_library(self, capsys, tmp_path, name):
        g = corpus.get(name).graph
        path = tmp_path / "g.json"
        path.write_text(emit_graph_document(GraphDocument(name=name, graph=g)))
        code, out = run(capsys, "is-rational", "--graph", str(path), "--json")
        assert code == 0
        assert json.loads(out)["rational"] == is_rational(g)

    def test_corpus_show_round_trips(self, capsys, tmp_path):
        code, out = run(capsys, "corpus", "show", "D5")
        assert code == 0
        path = tmp_path / "d5.json"
        path.write_text(out)
        code, validated = run(capsys, "validate", "--graph", str(path), "--json")
        assert code == 0 and json.loads(validated)["ok"]


class TestExitCodes:
    def test_missing_file_is_input_error(self, capsys):
        assert run(capsys, "validate", "--graph", "/nonexistent.json")[0] == 1

    def test_usage_error_is_input_error(self, capsys):
        assert run(capsys, "definitely-not-a-command")[0] == 1

    def test_schema_error_is_input_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"format": 1, "name": "g", "vertices": [{"id": "E"}]}')
        assert run(capsys, "validate", "--graph", str(path))[0] == 1

    def test_precondition_violation_is_2(self, capsys, a1b_file):
        # E alone is not anti-nef, so colength refuses
        assert run(capsys, "colength", "--graph", a1b_file, "--cycle", "E:1")[0] == 2

    def test_invalid_graph_exits_2(self, capsys, tmp_path):
        g = {"format": 1, "name": "g", "vertices": [{"id": "E", "self_int": 0, "kappa": -2}]}
        path = tmp_path / "g.json"
        path.write_text(json.dumps(g))
        assert run(capsys, "validate", "--graph", str(path))[0] == 2


class TestCone:
    def test_cone_json(self, capsys):
        code, out = run(capsys, "cone", "--e", "2", "--g", "2", "--a", "1", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["all_ok"] and data["colength"] == 3 and data["mu"] == 3


class TestOracle:
    def test_max_y_matches_colon_core(self, capsys, a1b_file):
        _, core_out = run(
            capsys, "colon-core", "--graph", a1b_file, "--cycle", "E:1,C1:2", "--json"
        )
        code, out = run(
            capsys, "oracle", "max-y", "--graph", a1b_file, "--cycle", "E:1,C1:2", "--json"
        )
        assert code == 0
        assert json.loads(out)["max_y"] == json.loads(core_out)["Y"]

    def test_max_search_cap_exits_2(self, capsys, a1b_file):
        code, _ = run(
            capsys,
            "oracle", "max-y", "--graph", a1b_file,
            "--cycle", "E:1,C1:2", "--max-search", "1",
        )
        assert code == 2


class TestCorpus:
    def test_list_contains_families(self, capsys):
        code, out = run(capsys, "corpus", "list")
        names = out.split()
        assert code == 0
        for expected in ("A1", "A9", "D4", "E8", "ex244min", "ex244blown"):
            assert expected in names

    def test_unknown_name_is_input_error(self, capsys):
        assert run(capsys, "corpus", "show", "Z99")[0] == 1
