import pytest

from equitynet.cli import main
from equitynet.dataset import load_csv


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture(scope="module")
def trained(tmp_path_factory):
    """A small dataset and model produced through the CLI itself."""
    root = tmp_path_factory.mktemp("cli")
    data = root / "data.csv"
    model = root / "model.bin"
    assert main(["gen-dataset", "--out", str(data), "--count", "150",
                 "--seed", "6", "--label-rollouts", "120"]) == 0
    assert main(["train", "--data", str(data), "--out", str(model),
                 "--epochs", "40"]) == 0
    return data, model


class TestUsageErrors:
    def test_no_command_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 1

    def test_unknown_command_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["conjure"])
        assert exc.value.code == 1

    def test_bad_option_value_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["equity", "--hole", "Ah", "Kd", "--n", "many"])
        assert exc.value.code == 1

    def test_missing_required_flag_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["equity", "--n", "100"])
        assert exc.value.code == 1
        with pytest.raises(SystemExit) as exc:
            main(["gen-dataset", "--count", "5"])
        assert exc.value.code == 1


class TestEval:
    def test_ranks_a_hand(self, capsys):
        code, out, _ = run(capsys, "eval", "--cards", "Ah", "Kh", "Qh", "Jh", "Th")
        assert code == 0
        assert "straight_flush" in out

    def test_accepts_one_quoted_string(self, capsys):
        code, out, _ = run(capsys, "eval", "--cards", "As Ks Qs Js Ts")
        assert code == 0
        assert "straight_flush" in out

    def test_domain_error_exit_2(self, capsys):
        code, _, err = run(capsys, "eval", "--cards", "Zz", "2c")
        assert code == 2
        assert "error:" in err
        code, _, _ = run(capsys, "eval", "--cards", "2c", "2c")
        assert code == 2


class TestEquity:
    def test_mc_prints_seed_and_estimate(self, capsys):
        code, out, _ = run(capsys, "equity", "--hole", "Qs", "Qd",
                           "--board", "5c", "6d", "7h", "--n", "300",
                           "--seed", "11")
        assert code == 0
        assert "seed=11" in out
        assert "p_win=" in out and "p_tie=" in out and "n=300" in out

    def test_royal_board_ties_always(self, capsys):
        code, out, _ = run(capsys, "equity", "--hole", "2c 3d",
                           "--board", "Ts Js Qs Ks As", "--n", "1000",
                           "--seed", "1")
        assert code == 0
        assert "p_win=0.000000" in out
        assert "p_tie=1.000000" in out

    def test_exact_on_turn(self, capsys):
        code, out, _ = run(capsys, "equity", "--hole", "As", "Kd",
                           "--board", "7h", "8h", "9c", "2d", "--exact")
        assert code == 0
        assert "method=exact" in out
        assert "n=45540" in out

    def test_exact_preflop_is_domain_error(self, capsys):
        code, _, err = run(capsys, "equity", "--hole", "Ah", "Kd", "--exact")
        assert code == 2

    def test_duplicate_cards_domain_error(self, capsys):
        code, _, _ = run(capsys, "equity", "--hole", "Ah", "Ah")
        assert code == 2


class TestFeatures:
    def test_prints_29_lines(self, capsys):
        code, out, _ = run(capsys, "features", "--hole", "As", "Ah")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 29
        assert lines[0].startswith("f1=")
        assert lines[-1].startswith("f29=")

    def test_csv_row_on_stdout(self, capsys):
        code, out, _ = run(capsys, "features", "--hole", "As", "Ah", "--csv")
        assert code == 0
        header, row = out.strip().split("\n")
        assert header.split(",") == [f"f{i}" for i in range(1, 30)]
        values = row.split(",")
        assert len(values) == 29
        assert float(values[24]) == 1.0  # f25: high hole rank (ace)

    def test_csv_to_file(self, capsys, tmp_path):
        out_csv = tmp_path / "features.csv"
        code, _, _ = run(capsys, "features", "--hole", "Qs", "Qd",
                         "--board", "5c", "6d", "7h", "--csv",
                         "--out", str(out_csv))
        assert code == 0
        header, row = out_csv.read_text().strip().split("\n")
        assert header.startswith("f1,") and header.endswith(",f29")
        assert len(row.split(",")) == 29


class TestConfigFile:
    def test_config_supplies_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("n=222\nseed=5\n")
        code, out, _ = run(capsys, "equity", "--hole", "Ah", "Kd",
                           "--config", str(cfg))
        assert code == 0
        assert "n=222" in out and "seed=5" in out

    def test_config_can_supply_required_flag(self, capsys, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("hole=Ah Kd\nn=50\n")
        code, out, _ = run(capsys, "equity", "--config", str(cfg))
        assert code == 0
        assert "n=50" in out

    def test_explicit_flag_beats_config(self, capsys, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("n=222\n")
        code, out, _ = run(capsys, "equity", "--hole", "Ah", "Kd",
                           "--config", str(cfg), "--n", "99")
        assert code == 0
        assert "n=99" in out

    def test_unknown_key_is_usage_error(self, capsys, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("volume=11\n")
        with pytest.raises(SystemExit) as exc:
            main(["equity", "--hole", "Ah", "Kd", "--config", str(cfg)])
        assert exc.value.code == 1

    def test_missing_config_file_is_io_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "equity", "--hole", "Ah", "Kd",
                           "--config", str(tmp_path / "nope"))
        assert code == 3

    def test_malformed_config_line(self, capsys, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("just words\n")
        code, _, err = run(capsys, "equity", "--hole", "Ah", "Kd",
                           "--config", str(cfg))
        assert code == 2


class TestGenDataset:
    def test_writes_loadable_csv(self, trained, capsys):
        data, _ = trained
        records = load_csv(data)
        assert len(records) == 150

    def test_refuses_overwrite_without_force(self, trained, capsys):
        data, _ = trained
        code, _, err = run(capsys, "gen-dataset", "--out", str(data),
                           "--count", "5")
        assert code == 3
        assert "--force" in err

    def test_jobs_do_not_change_bytes(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["--count", "40", "--seed", "2", "--label-rollouts", "80"]
        assert main(["gen-dataset", "--out", str(a), *args, "--jobs", "1"]) == 0
        assert main(["gen-dataset", "--out", str(b), *args, "--jobs", "3"]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()


class TestTrainInfer:
    def test_train_reports_and_saves(self, trained, capsys, tmp_path):
        data, _ = trained
        out_model = tmp_path / "m2.bin"
        report = tmp_path / "r.csv"
        code, out, _ = run(capsys, "train", "--data", str(data),
                           "--out", str(out_model), "--epochs", "5",
                           "--batch", "100", "--report", str(report))
        assert code == 0
        assert "8400 bytes" in out
        assert "split_seed=0" in out
        assert report.read_text().startswith("metric,")

    def test_train_missing_data_io_error(self, capsys, tmp_path):
        code, _, _ = run(capsys, "train", "--data", str(tmp_path / "no.csv"),
                         "--out", str(tmp_path / "m.bin"))
        assert code == 3

    def test_infer_prints_probabilities(self, trained, capsys):
        _, model = trained
        code, out, _ = run(capsys, "infer", "--model", str(model),
                           "--hole", "Qs", "Qd", "--board", "5c", "6d", "7h")
        assert code == 0
        assert out.startswith("p_win=")
        assert "stage=flop" in out

    def test_infer_corrupt_model_domain_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.bin"
        bad.write_bytes(b"PKNNxxxx")
        code, _, _ = run(capsys, "infer", "--model", str(bad),
                         "--hole", "Ah", "Kd")
        assert code == 2


class TestBenchCommand:
    def test_bench_runs_and_writes(self, trained, capsys, tmp_path):
        _, model = trained
        out_csv = tmp_path / "bench.csv"
        code, out, _ = run(capsys, "bench", "--model", str(model),
                           "--states", "3", "--rollouts", "60",
                           "--out", str(out_csv))
        assert code == 0
        assert "seed=0" in out
        assert "speedup" in out
        text = out_csv.read_text()
        assert "# model_bytes: 8400" in text
        assert "stage,method,calls,mean_s,median_s,p95_s" in text


class TestConvergenceCommand:
    def test_prints_trace(self, capsys):
        code, out, _ = run(capsys, "convergence", "--hole", "Qs", "Qd",
                           "--board", "5c", "6d", "7h",
                           "--nmax", "600", "--every", "300")
        assert code == 0
        lines = out.strip().split("\n")
        assert "seed=0" in lines[0]
        assert lines[1] == "run,n,p_win,p_tie"
        assert lines[2].startswith("0,300,")
        assert lines[3].startswith("0,600,")

    def test_multiple_runs_write_csv(self, capsys, tmp_path):
        out_csv = tmp_path / "trace.csv"
        code, out, _ = run(capsys, "convergence", "--hole", "Ah", "Kd",
                           "--nmax", "400", "--runs", "3", "--every", "200",
                           "--out", str(out_csv))
        assert code == 0
        lines = out_csv.read_text().strip().split("\n")
        assert lines[0] == "run,n,p_win,p_tie"
        runs_seen = {line.split(",")[0] for line in lines[1:]}
        assert runs_seen == {"0", "1", "2"}
        # each run: points at 200 and 400
        assert len(lines) == 1 + 3 * 2
