"""Tests for the sweep harness, CSV round-tripping, reports, and the CLI."""

from __future__ import annotations

import io
import math

import numpy as np
import pytest

from secnet import (
    CSV_HEADER,
    KeyScheme,
    NetworkParams,
    Region,
    RegimeBranch,
    SweepConfig,
    SweepMode,
    alpha_from_radius,
    analyze,
    analytic_report,
    coupling_domination_experiment,
    critical_range_torus,
    emit_csv,
    geometric_pairs,
    isolated_prob_square,
    isolated_prob_torus,
    load_csv,
    pair_share_flags,
    render_report,
    rng_for,
    run_sweep,
    sample_positions,
    sample_rings,
)
from secnet.cli import main as cli_main
from secnet.harness import _coupled_trial

TORUS, SQUARE = Region.TORUS, Region.SQUARE


def _small_config(**overrides) -> SweepConfig:
    base = dict(
        region=TORUS,
        n=120,
        scheme=KeyScheme(3, 30),
        r_min=0.05,
        r_max=0.25,
        r_steps=6,
        trials=40,
        seed=7,
        mode=SweepMode.COUPLED,
    )
    base.update(overrides)
    return SweepConfig(**base)


def _csv_bytes(result) -> str:
    buf = io.StringIO()
    emit_csv(result, buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# sweep mechanics
# ---------------------------------------------------------------------------


def test_sweep_rows_shape_and_ranges():
    config = _small_config()
    result = run_sweep(config)
    assert len(result.rows) == 6
    np.testing.assert_allclose([row.r for row in result.rows], config.radii())
    for row in result.rows:
        assert row.region == "torus"
        assert (row.n, row.K, row.P) == (120, 3, 30)
        assert row.trials == 40 and row.seed == 7
        assert 0 <= row.connected_count <= row.trials
        assert row.connected_frac == row.connected_count / row.trials
        assert 0.0 <= row.mean_isolated <= row.n
        assert 1.0 <= row.mean_components <= row.n
        assert row.mean_edges >= 0.0


def test_sweep_is_deterministic():
    r1 = run_sweep(_small_config())
    r2 = run_sweep(_small_config())
    assert r1.rows == r2.rows
    assert run_sweep(_small_config(seed=8)).rows != r1.rows


def test_parallel_sweep_matches_sequential():
    config = _small_config(trials=12)
    assert run_sweep(config, workers=2).rows == run_sweep(config).rows


def test_coupled_sweep_is_monotone_in_radius():
    rows = run_sweep(_small_config(trials=60)).rows
    connected = [row.connected_count for row in rows]
    edges = [row.mean_edges for row in rows]
    isolated = [row.mean_isolated for row in rows]
    assert connected == sorted(connected)
    assert edges == sorted(edges)
    assert isolated == sorted(isolated, reverse=True)


def test_independent_sweep_runs():
    rows = run_sweep(_small_config(mode=SweepMode.INDEPENDENT, trials=25)).rows
    assert len(rows) == 6
    assert all(0.0 <= row.connected_frac <= 1.0 for row in rows)


def test_coupled_trial_agrees_with_full_reanalysis():
    # rebuild the exact per-trial sample and check every radius against the
    # one-shot analyzer: validates the incremental union-find bookkeeping
    config = _small_config(trials=1)
    stats = _coupled_trial(config, trial=0)
    rng = rng_for(config.seed, 0)
    positions = sample_positions(rng, config.n)
    rings = sample_rings(rng, config.n, config.scheme)
    gi, gj, gd = geometric_pairs(positions, config.r_max, config.region)
    share = pair_share_flags(rings, gi, gj)
    for ri, r in enumerate(config.radii()):
        keep = share & (gd <= r)
        got = analyze(config.n, np.column_stack([gi[keep], gj[keep]]))
        assert stats[0, ri] == int(got.is_connected)
        assert stats[1, ri] == got.isolated_count
        assert stats[2, ri] == got.edge_count
        assert stats[3, ri] == got.component_count


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        _small_config(r_min=0.3, r_max=0.2)
    with pytest.raises(ValueError):
        _small_config(r_steps=0)
    with pytest.raises(ValueError):
        _small_config(r_steps=1)  # single step needs r_min == r_max
    with pytest.raises(ValueError):
        _small_config(trials=0)
    single = _small_config(r_min=0.2, r_max=0.2, r_steps=1)
    assert list(single.radii()) == [0.2]


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------


def test_csv_header_is_frozen():
    assert CSV_HEADER == (
        "region,n,K,P,r,trials,seed,connected_count,connected_frac,"
        "mean_isolated,mean_edges,mean_components"
    )


def test_csv_bytes_are_deterministic():
    text1 = _csv_bytes(run_sweep(_small_config()))
    text2 = _csv_bytes(run_sweep(_small_config()))
    assert text1 == text2
    lines = text1.splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 7
    assert text1.endswith("\n") and "\r" not in text1


def test_csv_round_trip():
    result = run_sweep(_small_config())
    text = _csv_bytes(result)
    parsed = load_csv(io.StringIO(text))
    assert len(parsed) == len(result.rows)
    for row, back in zip(result.rows, parsed):
        assert back.region == row.region
        assert (back.n, back.K, back.P) == (row.n, row.K, row.P)
        assert (back.trials, back.seed) == (row.trials, row.seed)
        assert back.connected_count == row.connected_count
        assert back.r == pytest.approx(row.r, rel=1e-8)
        assert back.mean_edges == pytest.approx(row.mean_edges, rel=1e-8)
    # emitting the parsed rows again reproduces the same bytes
    buf = io.StringIO()
    emit_csv(load_csv(io.StringIO(text)), buf)
    assert buf.getvalue() == text


def test_csv_file_output(tmp_path):
    result = run_sweep(_small_config(trials=5))
    path = tmp_path / "sweep.csv"
    emit_csv(result, path)
    assert path.read_text() == _csv_bytes(result)
    assert load_csv(path) == load_csv(io.StringIO(_csv_bytes(result)))


def test_load_csv_rejects_wrong_header():
    with pytest.raises(ValueError):
        load_csv(io.StringIO("a,b,c\n1,2,3\n"))


def test_emit_csv_reports_path_on_io_error():
    result = run_sweep(_small_config(trials=2))
    with pytest.raises(OSError):
        emit_csv(result, "/nonexistent-dir/sweep.csv")


# ---------------------------------------------------------------------------
# analytic report
# ---------------------------------------------------------------------------


def test_analytic_report_torus_fields():
    n, scheme, r = 2000, KeyScheme(20, 10**4), 0.2
    rep = analytic_report(n, scheme, r, TORUS)
    assert (rep.n, rep.K, rep.P, rep.r) == (n, 20, 10**4, r)
    assert rep.region == "torus"
    assert rep.r_star == pytest.approx(critical_range_torus(n, scheme), rel=1e-12)
    assert rep.alpha == alpha_from_radius(NetworkParams(n, scheme, r, TORUS))[0]
    assert rep.isolated_prob == isolated_prob_torus(NetworkParams(n, scheme, r, TORUS))
    assert rep.expected_isolated == pytest.approx(n * rep.isolated_prob, rel=1e-12)
    assert rep.isolation_zones is None  # zone split is square-only
    assert rep.branch is None  # branch selection only applies to the square
    assert rep.edge_prob_low == rep.edge_prob_high  # no boundary clipping
    assert 0.0 < rep.edge_prob_low < 1.0
    assert set(rep.theorem1) >= {"all"}
    assert set(rep.theorem2) >= {"all"}
    assert rep.coupling is None  # K = 20 is below the 3 ln n coupling floor


def test_analytic_report_square_fields():
    rep = analytic_report(500, KeyScheme(10, 10**3), 0.1, SQUARE)
    params = NetworkParams(500, KeyScheme(10, 10**3), 0.1, SQUARE)
    assert rep.branch is RegimeBranch.DENSE
    assert rep.edge_prob_low < rep.edge_prob_high  # boundary clipping bracket
    assert rep.isolated_prob == isolated_prob_square(params).total
    assert rep.isolation_zones is not None
    assert rep.isolation_zones.total == rep.isolated_prob
    wide = analytic_report(500, KeyScheme(10, 10**3), 0.3, SQUARE)
    assert wide.isolated_prob is None  # outside the quadrature gate r < 1/4
    assert wide.isolation_zones is None


def test_analytic_report_includes_coupling_when_feasible():
    rep = analytic_report(10**4, KeyScheme(10**3, 10**7), 0.05, TORUS)
    assert rep.coupling is not None
    assert rep.coupling.checks["all"]


def test_render_report_mentions_key_quantities():
    rep = analytic_report(2000, KeyScheme(20, 10**4), 0.2, TORUS)
    text = render_report(rep)
    for needle in ("torus", "r* ", "alpha", "p_s", "isolated"):
        assert needle in text, needle
    # renders without isolation/coupling blocks too
    assert render_report(analytic_report(500, KeyScheme(10, 10**3), 0.3, SQUARE))


# ---------------------------------------------------------------------------
# dominated-coupling experiment
# ---------------------------------------------------------------------------


def test_coupling_domination_experiment_small_run():
    scheme = KeyScheme(30, 3000)
    radii = (0.14, 0.155, 0.17)
    result = coupling_domination_experiment(
        250, scheme, radii, trials=40, seed=3, region=TORUS
    )
    assert result.radii == radii
    assert result.trials == 40
    assert 0.0 < result.er_edge_prob < 30 * 30 / 3000
    for counts in (result.keygraph_connected, result.er_connected):
        assert len(counts) == 3
        assert all(0 <= c <= 40 for c in counts)
        assert list(counts) == sorted(counts)  # coupled in r per trial


def test_coupling_domination_experiment_validates_scheme():
    with pytest.raises(ValueError):
        coupling_domination_experiment(250, KeyScheme(5, 100), (0.1,), 5, 0)


# ---------------------------------------------------------------------------
# command line interface
# ---------------------------------------------------------------------------


def test_cli_critical_range(capsys):
    code = cli_main(
        ["critical-range", "--n", "2000", "--k", "40", "--p", "10000", "--region", "square"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "0.0845650509" in out
    assert "dense" in out


def test_cli_isolated_matches_library(capsys):
    code = cli_main(
        ["isolated", "--n", "500", "--k", "10", "--p", "1000", "--r", "0.1",
         "--region", "square"]
    )
    out = capsys.readouterr().out
    assert code == 0
    params = NetworkParams(500, KeyScheme(10, 10**3), 0.1, SQUARE)
    assert f"{isolated_prob_square(params).total:.9g}" in out


def test_cli_sweep_writes_csv(tmp_path, capsys):
    out_path = tmp_path / "rows.csv"
    code = cli_main(
        ["sweep", "--n", "80", "--k", "3", "--p", "30", "--region", "torus",
         "--r-min", "0.05", "--r-max", "0.2", "--r-steps", "3",
         "--trials", "5", "--seed", "1", "--out", str(out_path)]
    )
    assert code == 0
    rows = load_csv(out_path)
    assert len(rows) == 3
    assert rows[0].n == 80
    # stdout emission is identical CSV text
    code = cli_main(
        ["sweep", "--n", "80", "--k", "3", "--p", "30", "--region", "torus",
         "--r-min", "0.05", "--r-max", "0.2", "--r-steps", "3",
         "--trials", "5", "--seed", "1"]
    )
    assert code == 0
    assert capsys.readouterr().out == out_path.read_text()


def test_cli_report_and_conditions_and_coupling(capsys):
    assert cli_main(["report", "--n", "2000", "--k", "20", "--p", "10000",
                     "--r", "0.2", "--region", "torus"]) == 0
    assert "r* " in capsys.readouterr().out
    assert cli_main(["check-conditions", "--n", "1000000", "--k", "50", "--p", "100000"]) == 0
    out = capsys.readouterr().out
    assert "ring_at_least_log" in out and "yes" in out
    assert cli_main(["coupling", "--n", "10000", "--k", "1000", "--p", "10000000"]) == 0
    assert "8.33774186e-05" in capsys.readouterr().out


def test_cli_pair_isolated(capsys):
    args = ["pair-isolated", "--n", "500", "--k", "4", "--p", "200", "--r", "0.1"]
    assert cli_main(args + ["--u", "0"]) == 0
    with_u = capsys.readouterr().out
    params = NetworkParams(500, KeyScheme(4, 200), 0.1, TORUS)
    from secnet import pair_isolation_torus

    assert f"{pair_isolation_torus(params, 0):.9g}" in with_u
    assert cli_main(args) == 0  # overlap-averaged form


def test_cli_domain_errors_exit_one(capsys):
    # square isolation outside the r < 1/4 gate
    assert cli_main(["isolated", "--n", "500", "--k", "10", "--p", "1000",
                     "--r", "0.3", "--region", "square"]) == 1
    assert cli_main(["pair-isolated", "--n", "500", "--k", "4", "--p", "200",
                     "--r", "0.1", "--u", "9"]) == 1
    assert cli_main(["coupling", "--n", "1000", "--k", "20", "--p", "100000"]) == 1
    err = capsys.readouterr().err
    assert "error" in err.lower()


def test_cli_io_errors_exit_two(capsys):
    code = cli_main(
        ["sweep", "--n", "40", "--k", "3", "--p", "30", "--region", "torus",
         "--r-min", "0.1", "--r-max", "0.1", "--r-steps", "1", "--trials", "2",
         "--seed", "0", "--out", "/nonexistent-dir/rows.csv"]
    )
    assert code == 2
    assert "nonexistent-dir" in capsys.readouterr().err
