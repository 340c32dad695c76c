import numpy as np
import pytest

from expander_cutoff.construction import ConstructionParams, standalone_cylinder
from expander_cutoff.graphs import GraphError, build_tree, stretch_edges
from expander_cutoff.montecarlo import (
    absorbing_mean_hitting,
    bimodality_check,
    chain_hitting_stats,
    cylinder_passage_exact,
    cylinder_passage_oracle,
    descent_chain,
    hitting_mixing_ratio,
    hitting_stats,
    path_passage_exact,
    path_passage_oracle,
    predicted_tau,
    sample_hitting_time,
    sample_hitting_times,
    stretched_edge_delay,
    stretched_edge_delay_mc,
)
from expander_cutoff.montecarlo import _build_five_family_chain


# ---------------------------------------------------------------------------
# closed forms


def test_predicted_tau_branches_agree_at_two():
    for h in (1, 3, 10):
        for L in (1, 2, 5):
            assert predicted_tau(2.0, h, L) == predicted_tau(2.0 + 0.0, h, L)
            lo = predicted_tau(2.0, h, L)
            assert lo == pytest.approx((5.0 / 3.0) * h)


def test_predicted_tau_values():
    assert predicted_tau(3.0, 7, 2) == 0.0
    assert predicted_tau(0.0, 3, 1) == pytest.approx(15.0)
    assert predicted_tau(0.0, 4, 2) == pytest.approx(100.0)


def test_predicted_tau_domain():
    with pytest.raises(GraphError):
        predicted_tau(-0.1, 2, 2)
    with pytest.raises(GraphError):
        predicted_tau(3.2, 2, 2)


def test_stretched_edge_delay_values():
    assert stretched_edge_delay(1) == 1.0
    assert stretched_edge_delay(2) == 7.0
    assert stretched_edge_delay(4) == 34.0


# ---------------------------------------------------------------------------
# one-dimensional oracles


def test_path_passage_length_one():
    mean_t, mean_v = path_passage_oracle(1, 2000, seed=5)
    assert mean_t == 1.0
    assert mean_v == 1.0


def test_path_passage_exact_solver():
    for L in (1, 2, 5, 8):
        t, v = path_passage_exact(L)
        assert t == pytest.approx(L * L, rel=1e-10)
        assert v == pytest.approx(L, rel=1e-10)


def test_path_passage_oracle_matches_exact():
    n = 100000
    mean_t, mean_v = path_passage_oracle(5, n, seed=42)
    assert abs(mean_t - 25.0) / 25.0 < 0.02
    assert abs(mean_v - 5.0) / 5.0 < 0.02
    # 4 standard errors against the absorbing-chain solve
    samples_std = np.sqrt((2 * 5 ** 4 - 2 * 5 ** 2) / 3)
    assert abs(mean_t - 25.0) < 4 * samples_std / np.sqrt(n)


def test_stretched_edge_delay_mc_matches_formula():
    mc = stretched_edge_delay_mc(2, 100000, seed=3)
    assert abs(mc - 7.0) / 7.0 < 0.03
    mc4 = stretched_edge_delay_mc(4, 50000, seed=4)
    assert abs(mc4 - 34.0) / 34.0 < 0.03


def test_oracle_determinism():
    a = path_passage_oracle(5, 5000, seed=9)
    b = path_passage_oracle(5, 5000, seed=9)
    assert a == b


# ---------------------------------------------------------------------------
# hitting times on graphs


def test_leaf_start_hits_immediately(five_reg_h1):
    leaf = int(np.flatnonzero(five_reg_h1.role == 3)[0])
    assert sample_hitting_time(five_reg_h1, leaf, seed=1) == 0


def test_stretched_edge_graph_mean():
    k2 = build_tree(1, 1, 1)
    p = stretch_edges(k2, [(0, 1)], 2)
    exact = absorbing_mean_hitting(p, 0, np.flatnonzero(p.role == 3))
    assert exact == pytest.approx(4.0)
    stats = sample_hitting_times(p, 0, 4000, seed=2)
    assert abs(stats.mean - exact) < 4 * stats.stderr()


def test_trajectory_seed_determinism(five_reg_h1):
    a = sample_hitting_time(five_reg_h1, 0, seed=3, stream_index=5)
    b = sample_hitting_time(five_reg_h1, 0, seed=3, stream_index=5)
    c = sample_hitting_time(five_reg_h1, 0, seed=4, stream_index=5)
    assert a == b
    assert isinstance(c, int)


def test_batch_independent_of_size(five_reg_h1):
    big = sample_hitting_times(five_reg_h1, 0, 50, seed=6)
    small = sample_hitting_times(five_reg_h1, 0, 10, seed=6)
    assert big.samples[:10].tolist() == small.samples.tolist()


# ---------------------------------------------------------------------------
# the descent chain against the materialized graph


def test_chain_mean_matches_graph_five_regular(five_reg_h2):
    chain = descent_chain(ConstructionParams(h=2, L=2))
    exact = chain.exact_mean()
    stats = sample_hitting_times(five_reg_h2, 0, 2500, seed=11)
    assert abs(stats.mean - exact) < 4 * stats.stderr()


def test_chain_quantiles_match_graph(five_reg_h2):
    chain = descent_chain(ConstructionParams(h=2, L=2))
    graph_samples = sample_hitting_times(five_reg_h2, 0, 2500, seed=12).samples
    chain_samples = chain.sample(25000, seed=13)
    for q in (0.25, 0.5, 0.75):
        gq = np.quantile(graph_samples, q)
        cq = np.quantile(chain_samples, q)
        assert abs(gq - cq) <= 3.0, q


def test_chain_mean_matches_graph_no_cutoff(no_cutoff_h2):
    chain = descent_chain(
        ConstructionParams(h=2, L=2, L_prime=4, variant="no_cutoff"))
    exact = chain.exact_mean()
    stats = sample_hitting_times(no_cutoff_h2, 0, 2500, seed=14)
    assert abs(stats.mean - exact) < 4 * stats.stderr()


def test_chain_tracks_prediction_at_large_h():
    for h, L in ((8, 2), (40, 2), (12, 3)):
        chain = _build_five_family_chain(h, L)
        ratio = chain.exact_mean() / predicted_tau(0, h, L)
        assert abs(ratio - 1.0) < 0.05, (h, L)


def test_chain_sampler_agrees_with_linear_solve():
    chain = _build_five_family_chain(4, 2)
    samples = chain.sample(40000, seed=21)
    exact = chain.exact_mean()
    se = samples.std() / np.sqrt(len(samples))
    assert abs(samples.mean() - exact) < 4 * se


def test_chain_survival_is_monotone():
    chain = _build_five_family_chain(2, 2)
    surv = chain.survival(400)
    assert surv[0] == 1.0
    assert (np.diff(surv) <= 1e-12).all()
    assert surv[-1] < 0.01


def test_chain_start_levels():
    chain = _build_five_family_chain(4, 2)
    stats_root = chain_hitting_stats(chain, 2000, seed=8, start_level=0)
    stats_low = chain_hitting_stats(chain, 2000, seed=8, start_level=10)
    assert stats_low.mean < stats_root.mean
    assert chain_hitting_stats(chain, 10, seed=8, start_level=14).mean == 0.0


def test_chain_rejects_other_variants():
    with pytest.raises(GraphError):
        descent_chain(ConstructionParams(h=2, L=2, variant="cubic"))


# ---------------------------------------------------------------------------
# bimodality


def test_bimodality_synthetic_mixture():
    gen = np.random.default_rng(0)
    samples = gen.permutation(np.concatenate(
        [np.full(600, 100), np.full(600, 200)]))
    rep = bimodality_check(hitting_stats(samples))
    assert rep.flag
    assert rep.cluster_means == (100.0, 200.0)
    assert rep.cluster_weights == (0.5, 0.5)
    assert rep.separation == np.inf


def test_bimodality_needs_mass():
    with pytest.raises(GraphError, match="1000"):
        bimodality_check(hitting_stats(np.arange(100)))


def test_five_regular_concentrates():
    chain = _build_five_family_chain(3, 2)
    rep = bimodality_check(hitting_stats(chain.sample(10000, seed=7)))
    assert not rep.flag


def test_uneven_stretch_departs_from_concentration():
    # the two descent routes separate as h grows; at h = 24 the detector
    # fires stably, and the quantile ratio is already far from 1 at h = 4
    even = _build_five_family_chain(24, 2)
    uneven = _build_five_family_chain(24, 2, 4)
    assert not bimodality_check(hitting_stats(even.sample(50000, seed=7))).flag
    rep = bimodality_check(hitting_stats(uneven.sample(50000, seed=7)))
    assert rep.flag
    assert rep.cluster_means[1] / rep.cluster_means[0] > 1.5

    small = hitting_stats(_build_five_family_chain(4, 2, 4).sample(10000, seed=7))
    assert hitting_mixing_ratio(small) > 1.5


def test_concentration_tightens_with_h():
    cvs = []
    for h in (2, 3, 4):
        chain = _build_five_family_chain(h, 2)
        s = chain.sample(20000, seed=17)
        cvs.append(s.std() / s.mean())
    assert cvs[0] > cvs[1] > cvs[2]


# ---------------------------------------------------------------------------
# cylinder passage


def test_cylinder_length_one_is_single_step():
    gad = standalone_cylinder(1)
    assert cylinder_passage_oracle(gad, 1, 500, seed=1) == 1.0
    assert cylinder_passage_exact(gad) == pytest.approx(1.0)


def test_cylinder_oracle_matches_linear_solve():
    for L, n in ((5, 40000), (9, 20000)):
        gad = standalone_cylinder(L)
        exact = cylinder_passage_exact(gad)
        mc = cylinder_passage_oracle(gad, L, n, seed=6)
        assert abs(mc - exact) / exact < 0.05


def test_cylinder_exact_values():
    # frozen from the absorbing-chain solve of the ladder gadget
    assert cylinder_passage_exact(standalone_cylinder(5)) == pytest.approx(35.0)
    assert cylinder_passage_exact(standalone_cylinder(9)) == pytest.approx(114.0)
    assert cylinder_passage_exact(standalone_cylinder(13)) == pytest.approx(238.0)
