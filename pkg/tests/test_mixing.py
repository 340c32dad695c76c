import numpy as np
import pytest

from expander_cutoff.graphs import GraphError
from expander_cutoff.mixing import (
    TVProfile,
    check_dist,
    cutoff_report,
    default_laziness,
    default_starts,
    mixing_time,
    mixing_time_bracket,
    point_mass,
    step,
    summarize_profile,
    tv_profile,
    tv_profile_until,
    tv_to_uniform,
    uniform_dist,
)

from conftest import complete_graph, cycle_graph, graph_from_edges


# ---------------------------------------------------------------------------
# step


def test_uniform_is_stationary():
    g = complete_graph(6)
    p = uniform_dist(6)
    q = step(g, p)
    assert np.abs(q - p).max() < 1e-12


def test_point_mass_flips_on_k2():
    g = graph_from_edges(2, [(0, 1)])
    q = step(g, point_mass(2, 0))
    assert q.tolist() == [0.0, 1.0]


def test_two_steps_on_c4():
    g = cycle_graph(4)
    p = point_mass(4, 0)
    p = step(g, step(g, p))
    assert np.allclose(p, [0.5, 0.0, 0.5, 0.0])


def test_lazy_step_mixes_mass():
    g = graph_from_edges(2, [(0, 1)])
    q = step(g, point_mass(2, 0), laziness=0.5)
    assert np.allclose(q, [0.5, 0.5])


def test_mass_conserved_along_profile(five_reg_h1):
    p = point_mass(five_reg_h1.vertex_count, 0)
    for t in range(1, 201):
        p = step(five_reg_h1, p)
        if t % 100 == 0:
            assert abs(p.sum() - 1.0) < 1e-12
            assert p.min() >= 0.0


def test_laziness_must_be_bounded():
    g = cycle_graph(4)
    with pytest.raises(GraphError):
        step(g, point_mass(4, 0), laziness=0.7)


def test_check_dist_contract():
    check_dist(uniform_dist(9))
    with pytest.raises(GraphError, match="negative"):
        check_dist(np.array([1.5, -0.5]))
    with pytest.raises(GraphError, match="mass"):
        check_dist(np.array([0.3, 0.3]))


# ---------------------------------------------------------------------------
# tv distance


def test_tv_point_mass():
    assert tv_to_uniform(point_mass(10, 3)) == pytest.approx(1 - 1 / 10)


def test_tv_uniform_zero():
    assert tv_to_uniform(uniform_dist(7)) == 0.0


def test_tv_two_states():
    assert tv_to_uniform(np.array([0.75, 0.25])) == pytest.approx(0.25)


# ---------------------------------------------------------------------------
# profiles


def test_profile_tmax_zero():
    g = cycle_graph(5)
    prof = tv_profile(g, 0, t_max=0)
    assert prof.times.tolist() == [0]
    assert prof.tv[0] == pytest.approx(1 - 1 / 5)


def test_lazy_cycle_converges():
    g = cycle_graph(4)
    prof = tv_profile(g, 0, t_max=200, stride=1, laziness=0.5)
    assert prof.tv[-1] < 1e-3


def test_profile_shape_five_regular(five_reg_h1):
    # fall past the theoretical time scale: high at the start, below 0.1
    # by twice the predicted worst-case time (values frozen from the exact
    # evolution: tv(12) = 0.5382, tv(50) = 0.0191)
    tstar = five_reg_h1.meta["tstar"]
    prof = tv_profile(five_reg_h1, 0, t_max=int(2 * tstar), stride=1)
    tv = dict(zip(prof.times.tolist(), prof.tv.tolist()))
    assert tv[2] > 0.9
    assert tv[int(0.5 * tstar)] == pytest.approx(0.5382, abs=2e-3)
    assert tv[int(2 * tstar)] == pytest.approx(0.0191, abs=2e-3)
    assert tv[int(2 * tstar)] < 0.1


def test_profile_until_stops_at_target():
    g = cycle_graph(4)
    prof = tv_profile_until(g, 0, target=0.01, t_cap=1000, stride=1,
                            laziness=0.5)
    assert prof.tv[-1] < 0.01
    assert prof.tv[-2] >= 0.01


def test_profile_until_respects_cap():
    g = cycle_graph(4)
    with pytest.raises(GraphError, match="not mixed"):
        tv_profile_until(g, 0, target=1e-9, t_cap=5, stride=1, laziness=0.5)


# ---------------------------------------------------------------------------
# mixing times


def _toy_profile():
    return TVProfile(start=0, times=np.array([0, 1, 2]),
                     tv=np.array([1.0, 0.3, 0.05]), laziness=0.0, stride=1)


def test_mixing_time_first_crossing():
    assert mixing_time(_toy_profile(), 0.25) == 2
    assert mixing_time(_toy_profile(), 0.5) == 1


def test_mixing_time_never_reached():
    with pytest.raises(GraphError, match="not mixed"):
        mixing_time(_toy_profile(), 0.01)


def test_mixing_time_bracket():
    assert mixing_time_bracket(_toy_profile(), 0.25) == (1, 2)


def test_summary_monotone_in_eps():
    prof = _toy_profile()
    s = summarize_profile(prof, (0.25, 0.5, 0.75))
    eps_sorted = sorted(s.tmix)
    times = [s.tmix[e] for e in eps_sorted]
    assert times == sorted(times, reverse=True)
    assert s.cutoff_ratio >= 1.0


def test_sharp_profile_ratio_near_one():
    times = np.arange(0, 101)
    tv = np.where(times < 50, 1.0, 0.0)
    prof = TVProfile(start=0, times=times, tv=tv, laziness=0.0, stride=1)
    s = summarize_profile(prof)
    assert s.cutoff_ratio == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# structural properties of profiles


def test_submultiplicative_envelope(five_reg_h1):
    prof = tv_profile(five_reg_h1, 0, t_max=120, stride=1)
    tv = dict(zip(prof.times.tolist(), prof.tv.tolist()))
    for t in (10, 20, 40):
        for s in (10, 30, 60):
            assert tv[t + s] <= 2 * tv[t] * tv[s] + 1e-10


def test_reversibility_spot_check(five_reg_h1):
    # regular graph: mass sent x -> y equals mass sent y -> x at any time
    g = five_reg_h1
    x, y = 0, 100
    t = 40
    px = point_mass(g.vertex_count, x)
    py = point_mass(g.vertex_count, y)
    for _ in range(t):
        px = step(g, px)
        py = step(g, py)
    assert px[y] == pytest.approx(py[x], rel=1e-9, abs=1e-15)


def test_bottom_start_mixes_faster(five_reg_h2):
    starts = default_starts(five_reg_h2)
    levels = [int(five_reg_h2.level[s]) for s in starts]
    root = starts[levels.index(0)]
    bottom = starts[levels.index(2 * 2 + 2)]
    summaries, worst = cutoff_report(five_reg_h2, [root, bottom], stride=1)
    by_start = {s.start: s for s in summaries}
    assert by_start[root].tmix[0.25] > by_start[bottom].tmix[0.25]
    assert worst.start == root
    assert worst.tstar_theory == pytest.approx(five_reg_h2.meta["tstar"])


def test_default_starts_cover_bands(five_reg_h2):
    starts = default_starts(five_reg_h2)
    lvls = {int(five_reg_h2.level[s]) for s in starts}
    assert {0, 4, 6, 8} <= lvls


def test_default_laziness(five_reg_h1):
    assert default_laziness(five_reg_h1) == 0.0
    assert default_laziness(cycle_graph(4).with_meta(bipartite=True)) == 0.5


def test_cutoff_report_requires_starts(five_reg_h1):
    with pytest.raises(GraphError, match="nonempty"):
        cutoff_report(five_reg_h1, [])
