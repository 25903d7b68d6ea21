import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from subgraph_moments import cli
from subgraph_moments.errors import ValidationError
from subgraph_moments.graph import complete, disjoint_union, empty, matching, path, serialize, star
from subgraph_moments.moments import MomentSummary
from subgraph_moments.oracle import count_independent_sets


@pytest.fixture
def write(tmp_path):
    def _write(g, name="g.txt"):
        p = tmp_path / name
        p.write_text(serialize(g))
        return str(p)
    return _write


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_moments(capsys, write):
    env = run_json(capsys, "moments", "--input", write(star(5)), "--c", "3")
    assert env["command"] == "moments"
    assert env["results"]["moments"][0]["s1"] == {"exact": "6/5", "approx": 1.2}
    env = run_json(capsys, "moments", "--input", write(complete(5)), "--c", "2..3")
    assert [m["sigma2"]["exact"] for m in env["results"]["moments"]] == ["0", "0"]


def test_input_digest_is_sha256_of_bytes(capsys, write):
    import hashlib
    path_ = write(star(5))
    env = run_json(capsys, "moments", "-i", path_, "--c", "2")
    with open(path_, "rb") as fh:
        assert env["input_digest"] == hashlib.sha256(fh.read()).hexdigest()


def test_output_is_deterministic(capsys, write):
    path_ = write(star(7))
    first = run(capsys, "tails", "-i", path_, "--c", "4", "--t", "2")[1]
    second = run(capsys, "tails", "-i", path_, "--c", "4", "--t", "2")[1]
    assert first == second


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(b"0 1\n1 2\n")))
    env = run_json(capsys, "moments", "--c", "all")
    assert [m["c"] for m in env["results"]["moments"]] == [2, 3]


def test_bounds(capsys, write):
    res = run_json(capsys, "bounds", "-i", write(star(8)), "--c", "4")["results"]
    assert res["density_bounds"]["bd_densest_lower"] == 3
    assert res["density_bounds"]["bd_sparsest_upper"] == 0
    res = run_json(capsys, "bounds", "-i", write(complete(6)), "--c", "4")["results"]
    assert res["density_bounds"]["bd_densest_lower"] == 6
    env = run_json(capsys, "bounds", "-i", write(empty(5)), "--c", "3")
    assert "S1 = 0; Frechet bound undefined; u(c) >= 0 reported" in env["warnings"]
    assert env["results"]["dominance"] is None


def test_bounds_inconsistent_overrides(capsys, write):
    code, _, err = run(capsys, "bounds", "-i", write(complete(5)), "--c", "3", "--u", "2")
    assert code == 2 and "error" in err


def test_tails(capsys, write):
    tail = run_json(capsys, "tails", "-i", write(star(9)), "--c", "3", "--t", "0")["results"]["tail"]
    assert tail["combined_ub"]["exact"] == "1"
    tail = run_json(capsys, "tails", "-i", write(star(9)), "--c", "3", "--t", "2")["results"]["tail"]
    assert Fraction(tail["combined_ub"]["exact"]) >= Fraction(1, 3)
    tail = run_json(capsys, "tails", "-i", write(complete(5)), "--c", "3", "--t", "3")["results"]["tail"]
    assert (tail["petrov_lb"]["exact"], tail["combined_ub"]["exact"]) == ("1/9", "1")


def test_tails_diagnostics(capsys, write):
    env = run_json(capsys, "tails", "-i", write(star(8)), "--c", "4", "--t", "3", "--diagnostics")
    assert "printed_variants" in env["results"]
    assert any("not certified" in w for w in env["warnings"])


def test_tails_out_of_range(capsys, write):
    assert run(capsys, "tails", "-i", write(star(8)), "--c", "4", "--t", "7")[0] == 2


def test_count(capsys, write):
    res = run_json(capsys, "count", "-i", write(star(6)), "--kind", "independent_sets")["results"]
    assert res["tree_aggregate"]["exact"] == "33"
    res = run_json(capsys, "count", "-i", write(star(5)), "--kind", "subtrees")["results"]
    assert res["tree_aggregate"]["exact"] == "20"
    res = run_json(capsys, "count", "-i", write(path(6)), "--kind", "independent_sets")["results"]
    assert Fraction(res["tree_aggregate"]["exact"]) >= count_independent_sets(path(6))
    res = run_json(capsys, "count", "-i", write(complete(6)), "--kind", "cliques", "--c", "3")["results"]
    assert Fraction(res["per_c"][0]["bound"]["exact"]) >= 20
    assert run(capsys, "count", "-i", write(complete(4)), "--kind", "subtrees")[0] == 2


def test_significance(capsys, write, tmp_path):
    g = disjoint_union(star(20), complete(5))
    res = run_json(capsys, "significance", "-i", write(g), "--community", "20,21,22,23,24",
                   "--alpha", "0.05")["results"]
    assert res["hyper_density"]["m_C"] == 10 and res["hyper_density"]["significant"]
    assert res["consistent"] is True
    res = run_json(capsys, "significance", "-i", write(complete(5)), "--community",
                   "0,1,2,3,4", "--alpha", "0.5")["results"]
    assert not res["hyper_density"]["significant"]
    members = tmp_path / "members.txt"
    members.write_text("# leaves\n1\n2\n3\n")
    res = run_json(capsys, "significance", "-i", write(star(10)), "--community-file",
                   str(members), "--alpha", "0.9")["results"]
    assert res["hyper_density"]["m_C"] == 0 and not res["hyper_density"]["significant"]
    assert run(capsys, "significance", "-i", write(star(5)), "--community", "1,1")[0] == 2


def test_oracle(capsys, write):
    res = run_json(capsys, "oracle", "-i", write(star(5)), "--c", "3")["results"]
    assert res["distribution"]["counts"] == {"0": "4", "2": "6"}
    assert res["match"] is True
    res = run_json(capsys, "oracle", "-i", write(matching(3)), "--c", "2")["results"]
    assert res["distribution"]["counts"] == {"0": "12", "1": "3"}


def test_oracle_budget_refusal(capsys, write):
    code, _, err = run(capsys, "oracle", "-i", write(complete(30)), "--c", "15")
    assert code == 3
    assert "--budget 155117520" in err


def test_oracle_mismatch_exit_code(capsys, write, monkeypatch):
    def wrong(stats, c):
        return MomentSummary.from_binomial(c, Fraction(0), Fraction(0))
    monkeypatch.setattr(cli, "binomial_moments", wrong)
    code, out, _ = run(capsys, "oracle", "-i", write(star(5)), "--c", "3")
    assert code == 4
    assert json.loads(out)["results"]["match"] is False


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n1 2 3\n")
    code, _, err = run(capsys, "moments", "-i", bad, "--c", "2")
    assert code == 2 and "line 2" in err
    assert run(capsys, "moments", "-i", tmp_path / "missing.txt", "--c", "2")[0] == 2


def test_gen(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "complete", "5")
    assert code == 0 and len(out.splitlines()) == 11
    code, out, _ = run(capsys, "gen", "matching", "3")
    assert out.splitlines()[0] == "n 6" and len(out.splitlines()) == 4
    target = tmp_path / "g.txt"
    run(capsys, "gen", "gnm", "1000", "5000", "--seed", "42", "--output", target)
    first = target.read_text()
    run(capsys, "gen", "gnm", "1000", "5000", "--seed", "42", "--output", target)
    assert target.read_text() == first and len(first.splitlines()) == 5001
    assert run(capsys, "gen", "gnm", "4", "7")[0] == 2


def test_pretty(capsys, write):
    code, out, _ = run(capsys, "moments", "-i", write(star(5)), "--c", "3", "--pretty")
    assert code == 0
    assert out.startswith("# moments") and "6/5 (~1.2)" in out


def test_render_rational():
    assert cli.render_rational(Fraction(2, 3)) == {"exact": "2/3", "approx": 0.666667}
    # ties go to the even digit
    assert cli.render_rational(Fraction(1234565, 10**6))["approx"] == 1.23456
    assert cli.render_rational(Fraction(1234575, 10**6))["approx"] == 1.23458
    assert cli.render_rational(Fraction(5))["exact"] == "5"


def test_parse_c_range():
    assert cli.parse_c_range("3", 6) == [3]
    assert cli.parse_c_range("2..4", 6) == [2, 3, 4]
    assert cli.parse_c_range("2-4", 6) == [2, 3, 4]
    assert cli.parse_c_range("2,5", 6) == [2, 5]
    assert cli.parse_c_range("all", 4) == [2, 3, 4]
    for bad in ("1", "7", "x", "5..3", "-2"):
        with pytest.raises(ValidationError):
            cli.parse_c_range(bad, 6)


def test_console_script(tmp_path):
    src = tmp_path / "s.txt"
    src.write_text(serialize(star(5)))
    proc = subprocess.run([sys.executable, "-m", "subgraph_moments.cli", "moments",
                           "--input", str(src), "--c", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["moments"][0]["s1"]["exact"] == "6/5"
