"""Sweep driver determinism, presets, and companion-column consistency."""

from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from mirroratoms import coefficients as co
from mirroratoms import sweeps as sw

X = (1.0, 0.0, 0.0)
Y = (0.0, 1.0, 0.0)


def small_spec(**kw):
    base = co.PhysicalConfig.from_ratios(0.5, 1.0, 0.5, "vertical",
                                         d1=X, d2=X)
    defaults = dict(label="t", base=base, axis="boundary_distance",
                    values=(0.1, 0.7), initial_state="S", horizon=10.0,
                    sample_step=0.02, outputs=("maxc", "events"))
    defaults.update(kw)
    return sw.SweepSpec(**defaults)


def test_spec_validation():
    with pytest.raises(ValueError):
        small_spec(axis="frequency")
    with pytest.raises(ValueError):
        small_spec(values=())
    with pytest.raises(ValueError):
        small_spec(values=(np.inf,))
    with pytest.raises(ValueError):
        small_spec(outputs=("maxc", "plot"))
    with pytest.raises(ValueError):
        small_spec(horizon=-1.0)


def test_axis_semantics():
    spec = small_spec(axis="acceleration")
    assert spec.config_at(0.9).a == 0.9
    spec = small_spec(axis="separation")
    c = spec.config_at(2.0)
    assert c.L == 2.0
    assert abs(c.y_over_L - 0.5) < 1e-15  # ratio preserved
    spec = small_spec(axis="boundary_distance")
    assert abs(spec.config_at(0.25).y - 0.25) < 1e-15


def test_run_sweep_is_deterministic():
    spec = small_spec()
    first = sw.run_sweep(spec)
    second = sw.run_sweep(spec)
    assert first.rows == second.rows


def test_concurrent_map_matches_serial():
    spec = small_spec(values=(0.1, 0.4, 0.7, 1.2))
    serial = sw.run_sweep(spec)
    with ThreadPoolExecutor(max_workers=4) as pool:
        threaded = sw.run_sweep(spec, map_fn=pool.map)
    assert serial.rows == threaded.rows


def test_rows_carry_the_point_parameters():
    res = sw.run_sweep(small_spec())
    assert [r["axis_value"] for r in res.rows] == [0.1, 0.7]
    assert all(r["alignment"] == "vertical" for r in res.rows)
    assert all(r["error"] == "" for r in res.rows)
    assert res.rows[0]["max_c"] == pytest.approx(1.0, abs=1e-9)


def test_curve_output_and_free_space_companion():
    spec = small_spec(values=(1e3,), outputs=("curve", "maxc"),
                      include_free_space=True, horizon=5.0)
    res = sw.run_sweep(spec)
    row = res.rows[0]
    curve = res.curves[0]
    # right against the free-space companion at y/L = 1e3
    assert np.max(np.abs(curve["concurrence"]
                         - curve["free_concurrence"])) <= 1e-5
    assert abs(row["max_c"] - row["free_max_c"]) <= 1e-5


def test_point_failures_are_recorded_not_raised():
    spec = small_spec(axis="separation", values=(1.0, -2.0))
    res = sw.run_sweep(spec)
    assert res.rows[0]["error"] == ""
    assert "positive" in res.rows[1]["error"]


def test_frozen_point_is_flagged():
    base = co.PhysicalConfig.from_ratios(0.5, 1.0, 1e-4, "parallel",
                                         d1=X, d2=(0.0, 0.0, 1.0))
    spec = sw.SweepSpec(label="frozen", base=base, axis="acceleration",
                        values=(0.5,), initial_state="S", horizon=2.0,
                        outputs=("maxc",))
    res = sw.run_sweep(spec)
    assert res.rows[0]["frozen"]
    assert res.rows[0]["max_c"] == pytest.approx(1.0, abs=1e-9)


def test_time_axis_returns_a_curve():
    spec = small_spec(axis="time", values=(0.0, 0.5, 1.0),
                      outputs=("curve",))
    res = sw.run_sweep(spec)
    curve = res.curves[0]
    assert list(curve["times"]) == [0.0, 0.5, 1.0]
    assert curve["concurrence"][0] == pytest.approx(1.0)


# ---------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------

def test_presets_cover_the_figure_range():
    presets = sw.figure_presets()
    for k in range(2, 17):
        assert f"fig{k}" in presets
    assert len(presets) >= 15


def test_fig2_preset_parameters():
    p = sw.figure_presets()["fig2"]
    assert len(p.specs) == 2
    for spec in p.specs:
        assert spec.values == (0.1, 0.7, 1.2)
        assert spec.base.a == 0.5
        assert spec.base.L == 1.0
        assert spec.initial_state == "S"
        assert spec.include_free_space
    assert {s.base.alignment for s in p.specs} == {"parallel", "vertical"}


def test_fig7_preset_parameters():
    p = sw.figure_presets()["fig7"]
    for spec in p.specs:
        assert spec.values == (0.3, 0.7, 1.2)
        assert abs(spec.base.L - 2.0 / 3.0) < 1e-15
        assert spec.initial_state == "E"


def test_boundary_distance_scan_presets_exist():
    # a y/L sweep at omega L = 1 with a in {0, 1/2, 1} (maximal concurrence)
    presets = sw.figure_presets()
    p = presets["fig19"]
    accels = {s.base.a for s in p.specs}
    assert accels == {0.0, 0.5, 1.0}
    assert all(s.axis == "boundary_distance" for s in p.specs)
    assert all(s.base.L == 1.0 for s in p.specs)


def test_window_edge_refinement():
    base = co.PhysicalConfig.from_ratios(0.5, 1.0, 0.5, "parallel",
                                         d1=X, d2=Y)
    spec = sw.SweepSpec(label="edge", base=base, axis="acceleration",
                        values=(0.1,), initial_state="E", horizon=15.0,
                        outputs=("maxc",))
    # entanglement generation dies out at large a; bracket the edge
    edge = sw.refine_window_edge(spec, 0.5, 3.0, threshold=1e-4,
                                 axis_tol=1e-3)
    assert 0.5 < edge < 3.0
    lo = sw.run_sweep(sw.SweepSpec(label="e", base=base, axis="acceleration",
                                   values=(edge - 0.05,), initial_state="E",
                                   horizon=15.0, outputs=("maxc",)))
    hi = sw.run_sweep(sw.SweepSpec(label="e", base=base, axis="acceleration",
                                   values=(edge + 0.05,), initial_state="E",
                                   horizon=15.0, outputs=("maxc",)))
    assert (lo.rows[0]["max_c"] > 1e-4) != (hi.rows[0]["max_c"] > 1e-4)
