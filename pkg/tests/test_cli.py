import json

from click.testing import CliRunner

from gillab.cli import main

runner = CliRunner()

SMALL = ["--level", "1", "--budget", "24", "--stage", "4"]


def invoke(*args):
    return runner.invoke(main, list(args))


class TestEval:
    def test_smallest_set_point(self):
        res = invoke("eval", "1/4", *SMALL)
        assert res.exit_code == 0
        obj = json.loads(res.output)
        assert obj["lowerMax"] == "1" and obj["upperMax"] == "1"
        assert not obj["singleton"]

    def test_zero(self):
        obj = json.loads(invoke("eval", "0", *SMALL).output)
        assert obj["singleton"] and obj["pointValue"] == "0"

    def test_gap_point_tent(self):
        obj = json.loads(invoke("eval", "1/2", "--mode", "tent", *SMALL).output)
        assert obj["singleton"] and obj["pointValue"] == "1/72"

    def test_bad_rational(self):
        assert invoke("eval", "pi", *SMALL).exit_code == 2

    def test_out_of_range(self):
        assert invoke("eval", "3/2", *SMALL).exit_code == 2


class TestVerify:
    def test_cycles_pass(self):
        res = invoke("verify", "cycles", "--max-period", "6", *SMALL)
        assert res.exit_code == 0
        obj = json.loads(res.output)
        assert obj["ok"] and len(obj["suites"]["cycles"]["cycles"]) == 6

    def test_nesting_pass(self):
        res = invoke("verify", "nesting", *SMALL)
        assert res.exit_code == 0
        assert json.loads(res.output)["suites"]["nesting"]["ok"]

    def test_unknown_suite_usage_error(self):
        assert invoke("verify", "nonsense", *SMALL).exit_code == 2

    def test_deterministic_bytes(self):
        a = invoke("verify", "treelike", "--seed", "5", *SMALL).output
        b = invoke("verify", "treelike", "--seed", "5", *SMALL).output
        assert a == b


class TestFamily:
    def test_build_then_inspect(self, tmp_path):
        res = invoke("family", "build", "--cache-dir", str(tmp_path), *SMALL)
        assert res.exit_code == 0
        built = json.loads(res.output)
        assert built["members"] == ["0", "1/2", "1"]
        res = invoke("family", "inspect", "--cache-dir", str(tmp_path), *SMALL)
        assert res.exit_code == 0
        obj = json.loads(res.output)
        assert obj["nesting"]["ok"]
        assert "1/2" in obj["members"]

    def test_inspect_missing_cache(self, tmp_path):
        res = invoke("family", "inspect", "--cache-dir", str(tmp_path / "x"), *SMALL)
        assert res.exit_code == 3
        assert "not built" in res.output

    def test_build_requires_cache_dir(self):
        assert invoke("family", "build", *SMALL).exit_code == 2

    def test_rebuild_byte_identical(self, tmp_path):
        invoke("family", "build", "--cache-dir", str(tmp_path), *SMALL)
        files = list(tmp_path.iterdir())
        assert len(files) == 1
        first = files[0].read_bytes()
        invoke("family", "build", "--cache-dir", str(tmp_path), *SMALL)
        assert files[0].read_bytes() == first


class TestExport:
    def test_cantor_text(self):
        res = invoke("export", "cantor", "--member", "1/2", "--stage", "2", *SMALL)
        assert res.exit_code == 0
        assert ".." in res.output and ";" in res.output

    def test_graph_csv(self, tmp_path):
        out = tmp_path / "g.csv"
        res = invoke("export", "graph", "--stage", "3", "--out", str(out), *SMALL)
        assert res.exit_code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "x_lo,x_hi,y_lo,y_hi"
        assert len(lines) > 3

    def test_graph_svg(self):
        res = invoke("export", "graph", "--stage", "2", "--format", "svg",
                     "--mode", "tent", *SMALL)
        assert res.exit_code == 0
        assert res.output.startswith("<svg") and "</svg>" in res.output

    def test_graph_json(self):
        res = invoke("export", "graph", "--stage", "2", "--format", "json", *SMALL)
        assert res.exit_code == 0
        assert "boxes" in json.loads(res.output)

    def test_mahavier_csv(self):
        res = invoke("export", "mahavier", "--n", "2", "--stage", "2", *SMALL)
        assert res.exit_code == 0
        assert res.output.splitlines()[0] == "x0_lo,x0_hi,x1_lo,x1_hi,x2_lo,x2_hi"

    def test_arc_csv(self):
        res = invoke("export", "arc", "--arc-n", "1", "--coords", "0,1", *SMALL)
        assert res.exit_code == 0
        assert res.output.splitlines()[0] == "param,coord_0,coord_1"

    def test_bad_coords(self):
        assert invoke("export", "arc", "--coords", "zz", *SMALL).exit_code == 2

    def test_unknown_member(self):
        assert invoke("export", "cantor", "--member", "1/3", *SMALL).exit_code == 2
