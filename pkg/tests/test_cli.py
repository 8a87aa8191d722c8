import pytest

from pathequil import gallery
from pathequil.cli import main
from pathequil.closure import format_universe
from pathequil.dalograph import format_graph, format_strategy
from pathequil.order import LabelOrder
from pathequil.preference import format_preference, lex, maxmin_set
from pathequil.routing import format_policy, format_routing


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    g = gallery.numeric_graph()
    return {
        "graph": write("numeric.graph", format_graph(g)),
        "pref": write("digits.pref", format_preference(lex(gallery.digits()))),
        "strategy": write("pictured.strategy", format_strategy(gallery.numeric_strategy(g))),
        "ring": write("ring.graph", format_graph(gallery.ring_graph())),
        "ring_pref": write("ring.pref", format_preference(gallery.ring_preference())),
        "mms": write("mms.pref", format_preference(maxmin_set(gallery.digits()))),
        "universe": write("mms.universe", format_universe(gallery.mms_universe())),
        "routing": write("cycle.routing", format_routing(gallery.routing_cycle_problem()[0])),
        "policy": write("cycle.policy", format_policy(gallery.routing_cycle_problem()[1])),
        "write": write,
    }


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_solve_and_tsv(files, capsys):
    code, out = run(capsys, "solve", files["graph"], files["pref"], "--format=tsv")
    assert code == 0
    rows = [line.split("\t") for line in out.out.splitlines()]
    assert ["verified", "yes"] in rows
    assert sum(r[0] == "choose" for r in rows) == 5


def test_verify_rejects_pictured_strategy(files, capsys):
    code, out = run(capsys, "verify", files["graph"], files["pref"], files["strategy"])
    assert code == 1
    assert "verified: no" in out.out


def test_paths(files, capsys):
    code, out = run(capsys, "paths", files["graph"], "o'", "--format=tsv")
    assert code == 0
    assert len(out.out.splitlines()) == 4
    code, _ = run(capsys, "paths", files["graph"], "zz")
    assert code == 2


def test_oracle_counts(files, capsys):
    code, out = run(capsys, "oracle", files["ring"], files["ring_pref"], "--format=tsv")
    assert code == 1
    assert out.out.strip().endswith("count\t0")
    code, _ = run(capsys, "oracle", files["ring"], files["ring_pref"], "--cap", "2")
    assert code == 2


def test_condition_commands(files, capsys):
    assert run(capsys, "check-sufficient", files["graph"], files["pref"])[0] == 0
    assert run(capsys, "check-sufficient", files["ring"], files["ring_pref"])[0] == 1
    assert run(capsys, "check-necessary", files["graph"], files["pref"], "--prefix-bound", "2")[0] == 0


def test_closure_prints_provenance(files, capsys):
    code, out = run(capsys, "closure", files["mms"], files["universe"])
    assert code == 1
    assert "derivation:" in out.out and "[atrans" in out.out
    code, out = run(capsys, "closure", files["mms"], files["universe"], "--rules", "trans")
    assert code == 0
    code, _ = run(capsys, "closure", files["mms"], files["universe"], "--rules", "bogus")
    assert code == 2


def test_routing(files, capsys):
    code, out = run(capsys, "routing", "solve", files["routing"], files["policy"])
    assert code == 1
    code, out = run(capsys, "routing", "check", files["routing"], files["policy"], "--total", "--format=tsv")
    assert code == 1
    assert "u.v below v\tfail" in out.out
    minhop = files["write"]("minhop.policy", "minhop\n")
    assert run(capsys, "routing", "solve", files["routing"], minhop)[0] == 0
    assert run(capsys, "routing", "check", files["routing"], minhop)[0] == 0


def test_gallery(capsys):
    code, out = run(capsys, "gallery", "list", "--format=tsv")
    assert code == 0 and len(out.out.splitlines()) == len(gallery.ENTRIES)
    code, out = run(capsys, "gallery", "run", "mms-refutation")
    assert code == 0 and "NECESSARY_VIOLATED" in out.out
    assert run(capsys, "gallery", "run", "nothing-here")[0] == 2


def test_search_is_reproducible(files, capsys):
    small = files["write"]("ab.pref", format_preference(lex(LabelOrder({"a": 0, "b": 1}))))
    first = run(capsys, "search", small, "--seeds", "5", "--seed", "3", "--format=tsv")
    second = run(capsys, "search", small, "--seeds", "5", "--seed", "3", "--format=tsv")
    assert first == second
    assert first[0] == 0


def test_dot(files, capsys):
    code, out = run(capsys, "dot", files["graph"], "--strategy", files["strategy"])
    assert code == 0
    assert out.out.startswith('digraph "numeric"')


def test_bad_input(files, capsys):
    broken = files["write"]("broken.graph", "arc a\n")
    code, out = run(capsys, "solve", broken, files["pref"])
    assert code == 2 and "line 1" in out.err
    assert run(capsys, "solve", "/no/such/file", files["pref"])[0] == 2
