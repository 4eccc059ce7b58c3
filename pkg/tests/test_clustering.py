import numpy as np
import pytest

from vscan.clustering import (NOISE, ClusteringParams, Mode, adjacency, adjacency_from_scores,
                              cluster, cluster_graph, neighborhood)
from vscan.errors import UnknownFrame
from vscan.features import FeatureDatabase
from vscan.similarity import SimilarityThresholds, score_matrix

from oracle import oracle_cluster, random_score_matrix
from synthetic import random_db


def angle_dist(deg):
    """Two-bin distribution whose coefficient with angle_dist(d') is cos(deg - d')."""
    t = np.radians(deg)
    return np.array([np.cos(t) ** 2, np.sin(t) ** 2])


def angle_db(color_deg, texture_deg):
    return FeatureDatabase(
        tuple(range(len(color_deg))),
        np.array([angle_dist(d) for d in color_deg]),
        np.array([angle_dist(d) for d in texture_deg]),
    )


DEFAULTS = ClusteringParams()


def test_params_defaults():
    assert DEFAULTS.thresholds == SimilarityThresholds(0.97, 0.97)
    assert (DEFAULTS.eps, DEFAULTS.minpts, DEFAULTS.mode) == (2, 1, Mode.DUAL)


@pytest.mark.parametrize("kw", [{"eps": 3}, {"minpts": 0}, {"mode": "kmeans"}])
def test_params_validation(kw):
    with pytest.raises(ValueError):
        ClusteringParams(**kw)


def test_neighborhood_single_frame():
    assert neighborhood(0, angle_db([0], [0]), DEFAULTS) == set()


def test_neighborhood_identical_frames():
    db = angle_db([5, 5, 5], [40, 40, 40])
    assert [len(neighborhood(i, db, DEFAULTS)) for i in range(3)] == [2, 2, 2]


def test_neighborhood_needs_both_features_at_eps_2():
    db = angle_db([0, 5], [0, 60])  # color-similar only
    assert neighborhood(0, db, DEFAULTS) == set()
    assert neighborhood(0, db, ClusteringParams(eps=1)) == {1}
    assert neighborhood(0, db, ClusteringParams.db_color()) == {1}


def test_neighborhood_unknown():
    with pytest.raises(UnknownFrame):
        neighborhood(9, angle_db([0], [0]), DEFAULTS)


FIVE_FRAMES = angle_db([0, 0, 0, 10, 20], [0, 0, 0, 60, 0])


def test_five_frame_example_scores():
    m = score_matrix(FIVE_FRAMES)
    assert (m[:3, :3] == 2).all()
    off = m[3:].copy()
    np.fill_diagonal(off[:, 3:], 1)
    assert (off == 1).all()


def test_five_frame_example():
    a = cluster(FIVE_FRAMES, DEFAULTS)
    assert a.clusters() == {1: [0, 1, 2]}
    assert a.noise() == [3, 4]
    cores, noise, clusters = oracle_cluster(score_matrix(FIVE_FRAMES), 2, 1)
    assert set(a.core_frames()) == cores and set(a.noise()) == noise


def test_all_identical():
    a = cluster(angle_db([7] * 6, [3] * 6), DEFAULTS)
    assert a.clusters() == {1: list(range(6))}
    assert a.noise() == []
    assert a.core.all()


def test_all_dissimilar():
    a = cluster(angle_db([0, 30, 60, 90], [0, 30, 60, 90]), DEFAULTS)
    assert a.n_clusters == 0
    assert a.noise() == [0, 1, 2, 3]
    assert not a.core.any()


def test_chain_is_one_cluster():
    a = cluster(angle_db([0, 10, 20], [0, 10, 20]), DEFAULTS)
    assert a.clusters() == {1: [0, 1, 2]}


def test_border_frame_minpts_2():
    # 0,1,2 mutually similar; 3 similar only to 2
    m = np.zeros((4, 4), int)
    m[:3, :3] = 2
    m[2, 3] = m[3, 2] = 2
    np.fill_diagonal(m, 2)
    a = cluster_graph(adjacency_from_scores(m, 2), minpts=2)
    assert a.labels.tolist() == [1, 1, 1, 1]
    assert a.core.tolist() == [True, True, True, False]


def _graph(n, edges):
    adj = np.zeros((n, n), bool)
    for p, q in edges:
        adj[p, q] = adj[q, p] = True
    return adj


def test_border_goes_to_first_cluster():
    # two 4-cliques {0..3} and {5..8}; frame 4 touches 3 and 5 but is not core at minpts 3
    clique = lambda nodes: [(p, q) for i, p in enumerate(nodes) for q in nodes[i + 1:]]
    adj = _graph(9, clique([0, 1, 2, 3]) + clique([5, 6, 7, 8]) + [(3, 4), (4, 5)])
    a = cluster_graph(adj, minpts=3)
    assert a.core.tolist() == [True] * 4 + [False] + [True] * 4
    assert a.labels.tolist() == [1, 1, 1, 1, 1, 2, 2, 2, 2]
    rev = cluster_graph(adj[::-1, ::-1], minpts=3)
    # visiting in reverse hands the border to the other side
    assert rev.labels.tolist() == [1, 1, 1, 1, 1, 2, 2, 2, 2]
    assert rev.core.tolist()[::-1] == a.core.tolist()


def _check_against_oracle(m, eps, minpts):
    a = cluster_graph(adjacency_from_scores(m, eps), minpts)
    cores, noise, clusters = oracle_cluster(m, eps, minpts)
    assert set(a.core_frames()) == cores
    assert set(a.noise()) == noise
    for cid, members in a.clusters().items():
        member_cores = {p for p in members if p in cores}
        match = [c for c in clusters if {p for p in c if p in cores} == member_cores]
        assert len(match) == 1
        assert set(members) <= match[0]
    assert a.n_clusters == len(clusters)


@pytest.mark.parametrize("minpts", [1, 2, 3, 5])
@pytest.mark.parametrize("eps", [0, 1, 2])
def test_matches_oracle_random(rng, eps, minpts):
    for _ in range(40):
        n = int(rng.integers(1, 25))
        weights = rng.dirichlet([1, 1, 1])
        _check_against_oracle(random_score_matrix(rng, n, p=weights), eps, minpts)


def test_cluster_invariants_random(rng):
    for _ in range(60):
        n = int(rng.integers(2, 30))
        m = random_score_matrix(rng, n, p=(0.8, 0.1, 0.1))
        minpts = int(rng.integers(1, 4))
        adj = adjacency_from_scores(m, 2)
        a = cluster_graph(adj, minpts)
        for cid, members in a.clusters().items():
            if minpts == 1:
                assert len(members) >= 2
            else:
                # borders may already belong to an earlier cluster
                c = next(p for p in members if a.core[p])
                assert np.count_nonzero(adj[c]) + 1 >= minpts + 1
            assert a.core[members].any()
            # connectivity through core frames
            cores = [p for p in members if a.core[p]]
            seen, todo = {cores[0]}, [cores[0]]
            while todo:
                q = todo.pop()
                for r in np.flatnonzero(adj[q]):
                    if a.core[r] and r not in seen:
                        seen.add(int(r))
                        todo.append(int(r))
            assert seen == set(cores)
            # maximality: every neighbor of a core joins some cluster, core neighbors join this one
            for c in cores:
                for r in np.flatnonzero(adj[c]):
                    assert a.labels[r] != NOISE
                    if a.core[r]:
                        assert a.labels[r] == cid
        assert not a.core[a.labels == NOISE].any()


def test_core_and_noise_independent_of_order(rng):
    for _ in range(30):
        n = int(rng.integers(2, 20))
        m = random_score_matrix(rng, n, p=(0.6, 0.2, 0.2))
        a = cluster_graph(adjacency_from_scores(m, 2), 2)
        perm = rng.permutation(n)
        b = cluster_graph(adjacency_from_scores(m[np.ix_(perm, perm)], 2), 2)
        assert {int(perm[k]) for k in b.core_frames()} == set(a.core_frames())
        assert {int(perm[k]) for k in b.noise()} == set(a.noise())


def test_neighborhood_consistent_with_cluster_graph(rng):
    for mode in (Mode.DUAL, Mode.COLOR):
        params = ClusteringParams(mode=mode)
        db = random_db(rng, 30)
        adj = adjacency(db, params)
        for p in range(30):
            hood = neighborhood(p, db, params)
            assert hood == set(np.flatnonzero(adj[p]).tolist())
            assert all(p in neighborhood(q, db, params) for q in hood)


def test_minpts_one_has_no_singletons(rng):
    for _ in range(20):
        a = cluster(random_db(rng, 40), DEFAULTS)
        assert all(len(m) >= 2 for m in a.clusters().values())
        # with minpts = 1 every clustered frame is core
        assert a.core[a.labels != NOISE].all()


def test_color_mode_ignores_eps_and_texture(rng):
    db = random_db(rng, 25)
    a = cluster(db, ClusteringParams(SimilarityThresholds(0.97, 0.1), eps=0, mode="color"))
    b = cluster(db, ClusteringParams(SimilarityThresholds(0.97, 0.99), eps=2, mode="color"))
    assert a == b


def test_dual_refines_color(rng):
    for _ in range(20):
        db = random_db(rng, 40)
        dual = cluster(db, DEFAULTS)
        color = cluster(db, ClusteringParams.db_color())
        for members in dual.clusters().values():
            labels = {int(color.labels[p]) for p in members} - {NOISE}
            assert len(labels) <= 1


def test_non_contiguous_indices():
    db = FeatureDatabase((4, 9, 12), np.array([angle_dist(0)] * 3), np.array([angle_dist(0)] * 3))
    a = cluster(db, DEFAULTS)
    assert a.clusters() == {1: [4, 9, 12]}
    assert neighborhood(9, db, DEFAULTS) == {4, 12}
    assert a.label_of(12) == 1
