import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from vscan.errors import NormalizationError, ShapeError, UnknownFrame
from vscan.features import FeatureDatabase
from vscan.similarity import (SimilarityThresholds, bhattacharyya, composite_score, cross,
                              pairwise, score_matrix)

from synthetic import perturb, random_distribution


def brute_coefficient(p, q):
    return math.fsum(math.sqrt(a * b) for a, b in zip(p, q))


def test_identity():
    p = np.array([0.2, 0.3, 0.5])
    assert bhattacharyya(p, p) == pytest.approx(1.0, abs=1e-12)


def test_disjoint():
    assert bhattacharyya([1.0, 0.0], [0.0, 1.0]) == 0.0


def test_half_overlap():
    assert bhattacharyya([0.5, 0.5], [1.0, 0.0]) == pytest.approx(math.sqrt(0.5), abs=1e-15)


def test_length_mismatch():
    with pytest.raises(ShapeError):
        bhattacharyya([1.0], [0.5, 0.5])


@pytest.mark.parametrize("bad", [[0.5, 0.4], [1.2, -0.2], [np.nan, 1.0]])
def test_unnormalized(bad):
    with pytest.raises(NormalizationError):
        bhattacharyya(bad, [0.5, 0.5])


def test_tolerates_tiny_normalization_error():
    assert bhattacharyya([0.5, 0.5 + 5e-7], [0.5, 0.5]) == pytest.approx(1.0, abs=1e-6)


distributions = arrays(np.float64, st.integers(1, 64),
                       elements=st.floats(0, 1e3, allow_nan=False, allow_subnormal=False))


@settings(max_examples=200, deadline=None)
@given(distributions, st.data())
def test_range_symmetry_and_brute_force(raw, data):
    if raw.sum() == 0:
        raw = raw.copy()
        raw[0] = 1.0
    p = raw / raw.sum()
    other = data.draw(arrays(np.float64, p.shape, elements=st.floats(0, 1e3, allow_nan=False)))
    if other.sum() == 0:
        other[-1] = 1.0
    q = other / other.sum()
    b = bhattacharyya(p, q)
    assert 0.0 <= b <= 1.0 + 1e-9
    assert b == bhattacharyya(q, p)
    assert b == pytest.approx(brute_coefficient(p, q), abs=1e-12)


def test_pairwise_and_cross_agree_with_scalar(rng):
    x = np.array([random_distribution(rng, 40) for _ in range(12)])
    m = pairwise(x)
    c = cross(x[:5], x)
    assert np.array_equal(m, m.T)
    for i in range(12):
        for j in range(12):
            assert m[i, j] == pytest.approx(bhattacharyya(x[i], x[j]), abs=1e-13)
    assert np.allclose(c, m[:5], atol=1e-15)
    assert np.allclose(np.diag(m), 1.0, atol=1e-12)


def _db(colors, textures):
    return FeatureDatabase(tuple(range(len(colors))), np.array(colors), np.array(textures))


def test_composite_self_similarity(rng):
    db = _db([random_distribution(rng, 8)], [random_distribution(rng, 6)])
    assert composite_score(0, 0, db.cd, db.td) == 2


def test_composite_one_feature():
    # color coefficient 0.99 (>= 0.97), texture 0.5
    a = np.array([1.0, 0.0])
    c = 0.99 ** 2
    b = np.array([c, 1 - c])
    t1, t2 = np.array([1.0, 0.0]), np.array([0.25, 0.75])
    assert bhattacharyya(a, b) == pytest.approx(0.99)
    assert bhattacharyya(t1, t2) == pytest.approx(0.5)
    db = _db([a, b], [t1, t2])
    assert composite_score(0, 1, db.cd, db.td, SimilarityThresholds(0.97, 0.97)) == 1
    assert composite_score(1, 0, db.cd, db.td, SimilarityThresholds(0.97, 0.97)) == 1


def test_composite_neither():
    c = 0.1 ** 2
    a, b = np.array([1.0, 0.0]), np.array([c, 1 - c])
    db = _db([a, b], [a, b])
    assert composite_score(0, 1, db.cd, db.td) == 0


def test_composite_unknown_frame(rng):
    db = _db([random_distribution(rng, 4)], [random_distribution(rng, 4)])
    with pytest.raises(UnknownFrame):
        composite_score(0, 7, db.cd, db.td)


def test_composite_accepts_plain_mappings():
    cd = {10: np.array([1.0, 0.0]), 20: np.array([1.0, 0.0])}
    td = {10: np.array([0.0, 1.0]), 20: np.array([1.0, 0.0])}
    assert composite_score(10, 20, cd, td) == 1
    with pytest.raises(UnknownFrame):
        composite_score(10, 30, cd, td)


def test_threshold_validation():
    with pytest.raises(ValueError):
        SimilarityThresholds(1.5, 0.5)


def _random_db(rng, n):
    protos_c = [random_distribution(rng, 32) for _ in range(3)]
    protos_t = [random_distribution(rng, 24) for _ in range(3)]
    colors = [perturb(rng, protos_c[rng.integers(3)], rng.uniform(0.05, 0.4)) for _ in range(n)]
    textures = [perturb(rng, protos_t[rng.integers(3)], rng.uniform(0.05, 0.4)) for _ in range(n)]
    return _db(colors, textures)


def test_score_matrix_matches_composite(rng):
    db = _random_db(rng, 15)
    m = score_matrix(db)
    assert np.array_equal(m, m.T)
    assert (np.diag(m) == 2).all()
    for i in range(15):
        for j in range(15):
            assert m[i, j] == composite_score(i, j, db.cd, db.td)
    assert len(np.unique(m)) > 1


@settings(max_examples=50, deadline=None)
@given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.integers(0, 2 ** 32 - 1))
def test_lowering_thresholds_never_lowers_scores(c_hi, t_hi, c_scale, t_scale, seed):
    rng = np.random.default_rng(seed)
    db = _random_db(rng, 8)
    hi = SimilarityThresholds(c_hi, t_hi)
    lo = SimilarityThresholds(c_hi * c_scale, t_hi * t_scale)
    assert (score_matrix(db, lo) >= score_matrix(db, hi)).all()
