import io
import json
from fractions import Fraction

import pytest

import digitpow as dp
from digitpow.cli import main
from digitpow.sweep import CSV_HEADER, sample_split_positions
from oracles import bfile_text, oracle_digit_sum


def run_csv(cfg: dp.SweepConfig) -> tuple[dp.SweepSummary, list[str]]:
    buf = io.StringIO()
    summary, _ = dp.run_sweep(cfg, out=buf)
    return summary, buf.getvalue().splitlines()


def test_sweep_small_records():
    summary, records = dp.run_sweep(dp.SweepConfig(max_n=10), collect=True)
    assert summary.ok and summary.rows == 10
    assert [r.n for r in records] == list(range(1, 11))
    last = records[-1]
    assert (last.s, last.digit_count, last.m) == (7, 4, 3)
    assert last.theorem_ok and last.lemma2_ok and last.gap_ok and last.fourpow_ok
    assert last.ekbound_ok and last.digitcount_ok and last.mod9_ok
    assert last.lemma2_checked == 3  # min(n, digit_count - 1)
    assert records[0].s == 2
    assert [r.s for r in records] == [oracle_digit_sum(n) for n in range(1, 11)]


def test_sweep_csv_shape():
    summary, lines = run_csv(dp.SweepConfig(max_n=10))
    assert summary.ok
    assert lines[0] == CSV_HEADER
    assert len(lines) == 11
    assert lines[-1] == "10,7,4,0.7000000000,0.7000000000,1,1,1,1"


def test_sweep_single_row():
    summary, lines = run_csv(dp.SweepConfig(max_n=1))
    assert summary.ok
    assert lines[1].startswith("1,2,1,2.0000000000,2.0000000000,1,")


def test_sweep_deterministic_bytes():
    _, first = run_csv(dp.SweepConfig(max_n=50, seed=7))
    _, second = run_csv(dp.SweepConfig(max_n=50, seed=7))
    assert first == second


def test_sweep_json_rows():
    buf = io.StringIO()
    summary, _ = dp.run_sweep(dp.SweepConfig(max_n=5), out=buf, fmt="json")
    assert summary.ok
    rows = [json.loads(line) for line in buf.getvalue().splitlines()]
    assert len(rows) == 5
    assert rows[-1]["s"] == 5 and rows[-1]["m"] == 2
    assert rows[-1]["theorem_ok"] is True
    assert "ekbound_ok" in rows[-1] and "mod9_ok" in rows[-1]


def test_sweep_other_multiplier():
    summary, records = dp.run_sweep(dp.SweepConfig(max_n=30, multiplier=3), collect=True)
    assert summary.ok
    for rec in records:
        assert rec.s == oracle_digit_sum(rec.n, 3)
        assert rec.theorem_ok is None and rec.lemma2_ok is None
        assert rec.gap_ok is None and rec.fourpow_ok is None
        assert rec.mod9_ok
    _, lines = run_csv(dp.SweepConfig(max_n=5, multiplier=3))
    assert lines[1].endswith(",,,,")  # inapplicable checks render blank


def test_sweep_multiplier_ending_in_zero():
    summary, records = dp.run_sweep(dp.SweepConfig(max_n=20, multiplier=20), collect=True)
    assert summary.ok
    assert records[-1].s == oracle_digit_sum(20, 20)


def test_sweep_emit_range():
    summary, records = dp.run_sweep(
        dp.SweepConfig(max_n=20, emit_range=(5, 8)), collect=True
    )
    assert [r.n for r in records] == [5, 6, 7, 8]
    assert summary.rows == 4


def test_sweep_window_means():
    buf = io.StringIO()
    dp.run_sweep(dp.SweepConfig(max_n=10, window=3), out=buf)
    lines = buf.getvalue().splitlines()
    ratios = {n: Fraction(oracle_digit_sum(n), n) for n in range(1, 11)}
    mean_n2 = (ratios[1] + ratios[2]) / 2  # prefix-truncated window
    mean_n10 = (ratios[8] + ratios[9] + ratios[10]) / 3
    assert lines[2].split(",")[4] == dp.render_fraction(mean_n2, 10)
    assert lines[10].split(",")[4] == dp.render_fraction(mean_n10, 10)


def test_sweep_full_k():
    summary, records = dp.run_sweep(
        dp.SweepConfig(max_n=40, split_checks="full"), collect=True
    )
    assert summary.ok
    for rec in records:
        assert rec.lemma2_checked == min(rec.n, rec.digit_count - 1)


def test_sweep_rejects_bad_config():
    with pytest.raises(ValueError):
        dp.run_sweep(dp.SweepConfig(max_n=0))
    with pytest.raises(ValueError):
        dp.run_sweep(dp.SweepConfig(max_n=10, split_checks="sometimes"))
    with pytest.raises(ValueError):
        dp.run_sweep(dp.SweepConfig(max_n=10, emit_range=(5, 20)))
    with pytest.raises(ValueError):
        dp.run_sweep(dp.SweepConfig(max_n=10, multiplier=10))


def test_sweep_resume_matches_fresh(tmp_path):
    fresh = io.StringIO()
    dp.run_sweep(dp.SweepConfig(max_n=60, window=5), out=fresh)
    ckdir = tmp_path / "ck"
    dp.run_sweep(
        dp.SweepConfig(max_n=30, window=5, checkpoint_dir=ckdir, checkpoint_every=10**9)
    )
    ckpt = ckdir / "ckpt-n000000000030.txt"
    assert ckpt.exists()
    resumed = io.StringIO()
    dp.run_sweep(
        dp.SweepConfig(max_n=60, window=5, start_checkpoint=ckpt), out=resumed
    )
    fresh_rows = fresh.getvalue().splitlines()
    resumed_rows = resumed.getvalue().splitlines()
    assert resumed_rows[0] == CSV_HEADER
    assert resumed_rows[1:] == fresh_rows[31:]


def test_sweep_resume_detects_tampered_chain(tmp_path):
    # mod-9-consistent wrong value: the split checks catch it downstream
    ckpt = dp.save_checkpoint(
        dp.PowerState(10, dp.from_small(1033), 2), tmp_path / "ck.txt"
    )
    summary, records = dp.run_sweep(
        dp.SweepConfig(max_n=12, start_checkpoint=ckpt), collect=True
    )
    assert not summary.ok
    assert "lemma2_ok" in summary.check_failures
    assert any(rec.lemma2_ok is False for rec in records)


def test_sweep_checkpoint_cadence(tmp_path):
    ckdir = tmp_path / "ck"
    dp.run_sweep(dp.SweepConfig(max_n=25, checkpoint_dir=ckdir, checkpoint_every=10))
    names = sorted(p.name for p in ckdir.iterdir())
    assert names == [
        "ckpt-n000000000010.txt",
        "ckpt-n000000000020.txt",
        "ckpt-n000000000025.txt",
    ]


def test_sample_split_positions():
    ks = sample_split_positions(10_000, 3010, seed=0)
    assert ks == sorted(set(ks))
    assert ks[0] == 1 and ks[-1] == 3010
    assert len(ks) == 14  # ceil(log2(10000))
    assert all(1 <= k <= 3010 for k in ks)
    assert sample_split_positions(10_000, 3010, seed=0) == ks
    assert sample_split_positions(10_000, 3010, seed=1) != ks
    assert sample_split_positions(10_000, 5, seed=0) == [1, 2, 3, 4, 5]
    assert sample_split_positions(4, 0, seed=0) == []


def test_bench_smoke():
    result = dp.run_bench(500)
    assert result.steps == 500
    assert result.digits_summed > 0
    assert "doublings" in result.describe()


# --- command line ---


def test_cli_bounds(capsys):
    assert main(["bounds", "6"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "k,B_k,four_power,holds"
    assert [int(line.split(",")[1]) for line in out[1:]] == [0, 3, 13, 46, 156, 521]
    assert all(line.split(",")[3] == "1" for line in out[1:])


def test_cli_bounds_k1(capsys):
    assert main(["bounds", "1"]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "1,0,1,1"


def test_cli_bounds_k2(capsys):
    assert main(["bounds", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [int(line.split(",")[1]) for line in lines[1:]] == [0, 3]


def test_resume_adopts_checkpoint_multiplier(tmp_path):
    state = dp.PowerState.start(3)
    for _ in range(10):
        state.step()
    ckpt = dp.save_checkpoint(state, tmp_path / "ck.txt")
    summary, records = dp.run_sweep(
        dp.SweepConfig(max_n=15, start_checkpoint=ckpt), collect=True
    )
    assert summary.multiplier == 3
    assert records[-1].s == oracle_digit_sum(15, 3)
    with pytest.raises(ValueError):
        dp.run_sweep(dp.SweepConfig(max_n=15, multiplier=2, start_checkpoint=ckpt))


def test_cli_verify(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    assert main(["verify", "--max-n", "10", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[10].startswith("10,7,4,")
    err = capsys.readouterr().err
    assert "verify: rows 10" in err and "ok" in err


def test_cli_verify_rejects_power_of_ten(capsys):
    assert main(["verify", "--max-n", "5", "--multiplier", "10"]) == 2
    assert "power of ten" in capsys.readouterr().err


def test_cli_verify_resume_failure_exit(tmp_path, capsys):
    ckpt = dp.save_checkpoint(
        dp.PowerState(10, dp.from_small(1033), 2), tmp_path / "ck.txt"
    )
    out = tmp_path / "rows.csv"
    code = main([
        "verify", "--max-n", "12", "--start-checkpoint", str(ckpt), "--out", str(out)
    ])
    assert code == 1
    assert "FAIL" in capsys.readouterr().err


def test_cli_stats(tmp_path, capsys):
    out = tmp_path / "stats.csv"
    assert main([
        "stats", "--range", "1:10", "--window", "1", "--out", str(out)
    ]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    for line in lines[1:]:
        parts = line.split(",")
        assert parts[3] == parts[4]  # window=1: running mean equals the ratio
        assert parts[6] == ""  # split checks are off in stats mode
    n10 = lines[10].split(",")
    assert n10[0] == "10" and n10[3] == "0.7000000000"
    assert "reference constant" in capsys.readouterr().err


def test_cli_stats_needs_range(capsys):
    assert main(["stats"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_decompose(capsys):
    assert main(["decompose", "10"]) == 0
    out = capsys.readouterr().out
    assert "terms: (4,0) (2,1) (1,3)" in out
    assert "s=7" in out and "m=3" in out
    assert "gap_ok=1 fourpow_ok=1" in out


def test_cli_decompose_zero(capsys):
    assert main(["decompose", "0"]) == 0
    assert "terms: (1,0)" in capsys.readouterr().out


def test_cli_decompose_json(capsys):
    assert main(["decompose", "20", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["s"] == 31 and obj["m"] == 6
    assert obj["terms"] == [[6, 0], [7, 1], [5, 2], [8, 3], [4, 4], [1, 6]]
    assert obj["gap_ok"] is True and obj["fourpow_ok"] is True


def test_cli_oeis_clean(tmp_path, capsys):
    values = {n: oracle_digit_sum(n) for n in range(51)}
    path = tmp_path / "b.txt"
    path.write_text(bfile_text(values))
    assert main(["oeis", str(path)]) == 0
    assert "0 mismatches" in capsys.readouterr().err


def test_cli_oeis_mismatch(tmp_path, capsys):
    values = {n: oracle_digit_sum(n) for n in range(51)}
    values[17] += 1
    path = tmp_path / "b.txt"
    path.write_text(bfile_text(values))
    assert main(["oeis", str(path)]) == 1
    err = capsys.readouterr().err
    assert "MISMATCH n=17" in err


def test_cli_oeis_empty_overlap(tmp_path, capsys):
    path = tmp_path / "b.txt"
    path.write_text("200 5\n201 6\n")
    assert main(["oeis", str(path), "--max-n", "50"]) == 2
    assert "overlap" in capsys.readouterr().err


def test_cli_oeis_malformed(tmp_path, capsys):
    path = tmp_path / "b.txt"
    path.write_text("0 one\n")
    assert main(["oeis", str(path)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_cli_oeis_missing_file(capsys):
    assert main(["oeis", "/nonexistent/b.txt"]) == 2


def test_cli_bench(capsys):
    assert main(["bench", "--max-n", "300"]) == 0
    out = capsys.readouterr().out
    assert "doublings: 300" in out and "digit sums:" in out


def test_cli_verify_json(tmp_path):
    out = tmp_path / "rows.json"
    assert main(["verify", "--max-n", "5", "--format", "json", "--out", str(out)]) == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert [r["n"] for r in rows] == [1, 2, 3, 4, 5]
