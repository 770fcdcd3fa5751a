import json

import pytest

from trailfinder.cli import RunReport, main, parse_path_arg
from trailfinder.graph import GraphError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFindTrail:
    def test_twist10_b2_json(self, capsys, fixture_dir):
        code, out, _ = run(
            capsys, "find-trail", str(fixture_dir / "twist10.edges"), "0", "7",
            "--algo", "b2", "--json",
        )
        assert code == 0
        report = RunReport.from_json(out)
        assert report.status == "trail"
        assert report.length == 7
        assert report.distance == 5
        assert report.path == [0, 1, 2, 3, 4, 5, 6, 7]

    def test_cycle6_adjacent_trailless(self, capsys, fixture_dir):
        code, out, _ = run(
            capsys, "find-trail", str(fixture_dir / "cycle6.edges"), "0", "1",
            "--algo", "n6",
        )
        assert code == 0
        assert out.strip() == "trailless"

    def test_cycle5_brute(self, capsys, fixture_dir):
        code, out, _ = run(
            capsys, "find-trail", str(fixture_dir / "cycle5.edges"), "0", "2",
            "--algo", "brute",
        )
        assert code == 0
        assert "0-4-3-2" in out

    def test_missing_file_is_input_error(self, capsys):
        code, _, err = run(capsys, "find-trail", "no-such-file", "0", "1")
        assert code == 2
        assert "error" in err

    def test_out_of_range_endpoint_is_input_error(self, capsys, fixture_dir):
        code, _, _ = run(
            capsys, "find-trail", str(fixture_dir / "cycle5.edges"), "0", "9"
        )
        assert code == 2

    def test_json_report_round_trips(self, capsys, fixture_dir):
        _, out, _ = run(
            capsys, "find-trail", str(fixture_dir / "twist10.edges"), "0", "7",
            "--json",
        )
        report = RunReport.from_json(out)
        assert RunReport.from_json(report.to_json()) == report


class TestVerify:
    def test_accepts_the_twist10_trail(self, capsys, fixture_dir):
        code, out, _ = run(
            capsys, "verify", str(fixture_dir / "twist10.edges"), "0", "7",
            "0-1-2-3-4-5-6-7",
        )
        assert code == 0
        assert out.strip() == "true"

    def test_reports_the_chord(self, capsys, fixture_dir):
        code, out, _ = run(
            capsys, "verify", str(fixture_dir / "cycle6.edges"), "0", "1",
            "0-5-4-3-2-1",
        )
        assert code == 0
        assert out.strip() == "false chord at (0,1)"

    def test_repeated_vertex_is_not_a_path(self, capsys, fixture_dir):
        code, out, _ = run(
            capsys, "verify", str(fixture_dir / "cycle5.edges"), "0", "2",
            "0-1-0-1-2",
        )
        assert out.strip() == "false not-path"

    def test_short_path_is_reported(self, capsys, fixture_dir):
        code, out, _ = run(
            capsys, "verify", str(fixture_dir / "cycle5.edges"), "0", "2", "0-1-2"
        )
        assert out.strip() == "false not-longer-than-distance"

    def test_path_arg_parsing(self):
        assert parse_path_arg("0-1-2") == [0, 1, 2]
        assert parse_path_arg("3,4,5") == [3, 4, 5]
        with pytest.raises(GraphError):
            parse_path_arg("a-b")


class TestGen:
    def test_deterministic_under_seed(self, capsys):
        _, first, _ = run(capsys, "gen", "layered", "20", "7")
        _, second, _ = run(capsys, "gen", "layered", "20", "7")
        assert first == second

    def test_two_vertex_layered_is_a_single_edge(self, capsys):
        _, out, _ = run(capsys, "gen", "layered", "2", "0")
        lines = [l for l in out.splitlines() if not l.startswith("#")]
        assert lines == ["2 1", "0 1"]

    def test_planted_records_its_trail(self, capsys):
        _, out, _ = run(capsys, "gen", "planted", "8", "1")
        assert "planted-trail=" in out

    def test_impossible_parameters(self, capsys):
        code, _, _ = run(capsys, "gen", "layered", "1", "0")
        assert code == 2


class TestOtherCommands:
    def test_wings_dump(self, capsys, fixture_dir):
        code, out, _ = run(
            capsys, "wings-dump", str(fixture_dir / "twist10.edges"), "0", "7"
        )
        assert code == 0
        assert "pairs" in out

    def test_dc_replay(self, capsys, tmp_path):
        from trailfinder.dyncon import format_script
        from trailfinder.generators import gen_dc_script

        script = tmp_path / "ops.txt"
        script.write_text(format_script(gen_dc_script(50, 800, 2)))
        code, out, _ = run(
            capsys, "dc-replay", str(script), "--n", "50", "--backend", "hdt"
        )
        assert code == 0
        assert "0 mismatches" in out

    def test_bench_empty_suite(self, capsys):
        code, out, _ = run(capsys, "bench", "--sizes", "")
        assert code == 0
        assert out.strip() == ""

    def test_bench_csv(self, capsys):
        code, out, _ = run(
            capsys, "bench", "--sizes", "30", "--repeats", "1", "--csv"
        )
        assert code == 0
        assert out.splitlines()[0].startswith("n,")
