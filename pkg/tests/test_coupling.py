import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oscopt.coupling import (TWO_PI, BumpSpec, PhaseInteraction, build_hc_interaction,
                             build_max_k_cut_interaction, build_tsp_interaction, eval_f, grid_distance,
                             quadrature_split, wrap_angle)


def builders():
    for K in range(2, 9):
        yield f"maxkcut-{K}", build_max_k_cut_interaction(K)
    for N in range(4, 13):
        yield f"tsp-{N}", build_tsp_interaction(N)
        yield f"hc-{N}", build_hc_interaction(N)


ALL = dict(builders())


def test_k2_is_identically_zero():
    fi = build_max_k_cut_interaction(2)
    assert fi.is_zero
    assert eval_f(fi, np.linspace(-7, 7, 101)).max() == 0.0


def test_k3_reference_value():
    fi = build_max_k_cut_interaction(3)
    assert abs(eval_f(fi, TWO_PI / 3) - math.pi / 3) < 1e-9


def test_k3_second_bump_lands_on_pi():
    fi = build_max_k_cut_interaction(3)
    x = 2 * TWO_PI / 3
    # amplitude 5*pi/3 is only meaningful mod 2*pi
    assert math.cos(x + eval_f(fi, x)) == pytest.approx(-1.0, abs=1e-12)


@pytest.mark.parametrize("K", range(2, 9))
def test_cut_slots_map_to_pi(K):
    fi = build_max_k_cut_interaction(K)
    x = TWO_PI * np.arange(1, K) / K
    assert np.allclose(np.cos(x + eval_f(fi, x)), -1.0, atol=1e-12)
    assert eval_f(fi, 0.0) == 0.0


@pytest.mark.parametrize("N", [3, 4, 5, 8, 12])
def test_tsp_targets(N):
    fi = build_tsp_interaction(N)
    k = np.arange(1, N)
    x = TWO_PI * k / N
    c = np.cos(x + eval_f(fi, x))
    adjacent = (k == 1) | (k == N - 1)
    assert np.allclose(c[adjacent], 1.0, atol=1e-12)
    assert np.allclose(c[~adjacent], -1.0, atol=1e-12)
    assert abs(eval_f(fi, 0.0)) < 1e-12


def test_hc_targets_odd_n():
    fi = build_hc_interaction(5)
    assert math.cos(TWO_PI / 5 + eval_f(fi, TWO_PI / 5)) == pytest.approx(-1, abs=1e-12)
    s = 2 * TWO_PI / 5 + eval_f(fi, 2 * TWO_PI / 5)
    assert s == pytest.approx(math.pi / 2, abs=1e-9)


def test_hc_even_n_defaults_to_zero_target():
    fi = build_hc_interaction(8)
    k = np.arange(2, 7)
    x = TWO_PI * k / 8
    assert np.allclose(np.cos(x + eval_f(fi, x)), 1.0, atol=1e-12)
    # pi/2 can still be requested; the antipodal slot then rounds to the penalty 0
    alt = build_hc_interaction(8, nonadjacent_target=math.pi / 2)
    assert 2 * TWO_PI / 8 + eval_f(alt, 2 * TWO_PI / 8) == pytest.approx(math.pi / 2, abs=1e-9)
    assert math.cos(math.pi + eval_f(alt, math.pi)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("name", sorted(ALL))
def test_odd_and_periodic(name, rng):
    fi = ALL[name]
    x = rng.uniform(-4 * math.pi, 4 * math.pi, 1000)
    f = eval_f(fi, x)
    assert np.abs(f + eval_f(fi, -x)).max() < 1e-9
    assert np.abs(eval_f(fi, x + TWO_PI) - f).max() < 1e-9


@pytest.mark.parametrize("name", sorted(ALL))
def test_grid_targets_mod_2pi(name):
    fi = ALL[name]
    for b in fi.bumps:
        if abs(wrap_angle(b.center)) < 1e-9:
            continue  # a bump at 0 meets its own mirror, f(0) = 0
        got = eval_f(fi, b.center)
        assert abs(wrap_angle(got - b.amplitude)) < 1e-6


@pytest.mark.parametrize("name", sorted(ALL))
def test_far_flank_is_flat(name):
    # Gaussian flanks decay as a*d/sigma*exp(-d^2/2); at seven widths that is ~1e-9.
    fi = ALL[name]
    far = 7 * fi.sigma
    x = np.linspace(-math.pi, math.pi, 20001)
    if fi.all_centers().size:
        d = np.abs(wrap_angle(x[:, None] - fi.all_centers()[None, :])).min(axis=1)
        x = x[d >= far]
    h = 1e-6
    deriv = (eval_f(fi, x + h) - eval_f(fi, x - h)) / (2 * h)
    assert np.abs(deriv).max() < 1e-6


def test_sigma_bounds():
    with pytest.raises(ValueError):
        build_max_k_cut_interaction(3, sigma=math.pi / 11)
    with pytest.raises(ValueError):
        build_tsp_interaction(6, sigma=0.0)
    build_max_k_cut_interaction(3, sigma=math.pi / 12)


def test_overlapping_extra_bump_rejected():
    with pytest.raises(ValueError, match="overlap"):
        build_max_k_cut_interaction(3, extra=[BumpSpec(TWO_PI / 3 + 0.05, 0.2)])


def test_extra_bump_accepted_off_grid():
    fi = build_max_k_cut_interaction(3, extra=[BumpSpec(math.pi, math.pi)])
    assert eval_f(fi, math.pi - 1e-12) == pytest.approx(math.pi, abs=1e-6)


def test_off_grid_builder_bump_rejected():
    with pytest.raises(ValueError, match="multiple"):
        PhaseInteraction((BumpSpec(1.0, 0.5),), 0.05, 3)


def test_inconsistent_mirror_rejected():
    with pytest.raises(ValueError, match="disagree"):
        PhaseInteraction((BumpSpec(TWO_PI / 3, 0.3), BumpSpec(2 * TWO_PI / 3, 0.3)), 0.05, 3)


@given(st.floats(-20, 20, allow_nan=False))
def test_quadrature_identity(x):
    fi = build_max_k_cut_interaction(3)
    c, s = quadrature_split(fi, x)
    assert abs(c * math.sin(x) + s * math.cos(x) - math.sin(x + eval_f(fi, x))) < 1e-12


def test_quadrature_examples():
    assert quadrature_split(build_max_k_cut_interaction(2), 1.3) == (1.0, 0.0)
    c, s = quadrature_split(build_max_k_cut_interaction(3), TWO_PI / 3)
    assert (c, s) == pytest.approx((0.5, math.sqrt(3) / 2), abs=1e-9)


def test_grid_distance():
    assert grid_distance(TWO_PI / 3, 3) == pytest.approx(0.0, abs=1e-12)
    assert grid_distance(math.pi, 3) == pytest.approx(math.pi / 3)
