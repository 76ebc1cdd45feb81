import json

import numpy as np
import pytest

from novhom import (
    CrossingIsolationError,
    DegenerateEndpoint,
    PathError,
    SymplecticPath,
    block_sum_path,
    conley_zehnder,
    crossing_index,
    hyperbolic_path,
    loop_shifted,
    reduce_index,
    rotation_path,
    winding_index_2d,
)
from novhom.cz import path_from_json_dict, path_to_json_dict


@pytest.mark.parametrize(
    "alpha,expected",
    [(0.3, 1), (0.7, 1), (1.5, 3), (2.5, 5), (-0.3, -1), (-1.5, -3)],
)
def test_rotation_indices_match_crossing_oracle(alpha, expected):
    path = rotation_path(alpha)
    assert winding_index_2d(path) == expected
    assert crossing_index(path) == expected
    assert conley_zehnder(path) == expected


def test_hyperbolic_path_has_index_zero():
    path = hyperbolic_path(1.0)
    assert winding_index_2d(path) == 0
    assert crossing_index(path) == 0


@pytest.mark.parametrize(
    "alphas",
    [(0.3, 0.7), (1.5, 0.3), (2.5, 1.5)],
)
def test_block_sum_additivity(alphas):
    a, b = alphas
    combined = block_sum_path(rotation_path(a, 1024), rotation_path(b, 1024))
    assert crossing_index(combined) == conley_zehnder(rotation_path(a)) + conley_zehnder(
        rotation_path(b)
    )


def test_block_sum_with_hyperbolic_factor():
    combined = block_sum_path(rotation_path(0.3, 1024), hyperbolic_path(1.0, 1024))
    assert crossing_index(combined) == 1


@pytest.mark.parametrize("k", [-2, -1, 0, 1, 2])
def test_loop_shift_one_plane(k):
    base = rotation_path(0.3, 1024)
    assert conley_zehnder(loop_shifted(base, k)) == 1 + 2 * k


@pytest.mark.parametrize("k", [-2, -1, 0, 1, 2])
def test_loop_shift_two_planes(k):
    base = block_sum_path(rotation_path(0.3, 2048), hyperbolic_path(1.0, 2048))
    assert crossing_index(loop_shifted(base, k)) == 1 + 2 * k


@pytest.mark.parametrize("alpha", [0.3, 1.5, 2.5, -0.7])
def test_refinement_does_not_change_index(alpha):
    coarse = conley_zehnder(rotation_path(alpha, 512))
    fine = conley_zehnder(rotation_path(alpha, 1024))
    finest = conley_zehnder(rotation_path(alpha, 2048))
    assert coarse == fine == finest


def test_winding_agrees_with_crossing_on_random_paths():
    rng = np.random.default_rng(5)
    t = np.linspace(0.0, 1.0, 1025)
    for _ in range(20):
        # random quadratic generator S(t), constant in time
        s = rng.uniform(-1, 1, size=(2, 2))
        S = 0.5 * (s + s.T) + np.eye(2) * rng.uniform(-2, 2)
        J = np.array([[0.0, -1.0], [1.0, 0.0]])
        A = J @ S
        mats = np.stack([_expm(A * ti) for ti in t])
        path = SymplecticPath(mats)
        try:
            w = winding_index_2d(path)
        except (DegenerateEndpoint, PathError):
            continue
        assert w == crossing_index(path)


def _expm(a):
    out = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for k in range(1, 24):
        term = term @ a / k
        out = out + term
    return out


def test_degenerate_endpoint_rejected():
    path = rotation_path(2.0)  # endpoint is the identity
    with pytest.raises(DegenerateEndpoint):
        conley_zehnder(path)


def test_non_symplectic_samples_rejected():
    mats = np.stack([np.eye(2) * (1 + 0.5 * t) for t in np.linspace(0, 1, 600)])
    with pytest.raises(PathError):
        conley_zehnder(SymplecticPath(mats))


def test_not_starting_at_identity_rejected():
    mats = rotation_path(0.3).samples.copy()
    mats[0] = mats[5]
    with pytest.raises(PathError):
        conley_zehnder(SymplecticPath(mats))


def test_too_few_samples_rejected():
    with pytest.raises(PathError):
        conley_zehnder(rotation_path(0.3, samples=100))


def test_fast_rotation_needs_fine_sampling():
    # winding route rejects paths advancing more than pi/2 per sample
    with pytest.raises(CrossingIsolationError):
        winding_index_2d(rotation_path(200.3, samples=512))


def test_reduce_index_cyclic():
    assert reduce_index(5, None) == 5
    assert reduce_index(5, 4) == 1
    assert reduce_index(-1, 6) == 5
    with pytest.raises(ValueError):
        reduce_index(1, 3)


def test_json_round_trip():
    path = rotation_path(0.3)
    data = json.loads(json.dumps(path_to_json_dict(path)))
    back = path_from_json_dict(data)
    assert conley_zehnder(back) == 1
