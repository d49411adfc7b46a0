# -*- coding: utf-8 -*-
import math
import time

import numpy as np
import pytest

from src.classifier.boundedness import KernelParameters, Parameters, Regime, bounded_grid, classify
from src.classifier.exponents import ExtendedExponent
from src.classifier.corollaries import (
    classify_kc, classify_projection, exists_bounded_pair, kc_bounded_grid, witness_pair,
)
from src.classifier.sweep import corollary_sweep, inverse_grid, inverse_mesh, region_sweep
from src.core.errors import DomainError, PreconditionError

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
KC_CASES = [(1, 0.0), (2, 0.5)]


def kc_values(n, alpha, count=40):
    # irrational offsets keep every c off the exact region boundaries
    lo, hi = -2.0, n + 2.0 * (1.0 + alpha) + 1.0
    h = (hi - lo) / count
    return [lo + (k + GOLDEN) * h for k in range(count)]


def assert_kc_matches_classify(n, alpha, grid):
    for c in kc_values(n, alpha):
        base = KernelParameters(n=n, a=0.0, b=alpha, c=c, alpha=alpha, beta=alpha)
        general = region_sweep(base, grid)
        corollary = corollary_sweep(lambda p, q: classify_kc(n, c, alpha, p, q), grid)
        mismatches = [(g.inv_p, g.inv_q) for g, k in zip(general, corollary)
                      if g.verdict.bounded != k.verdict.bounded]
        assert not mismatches, f"c={c}: {mismatches[:5]}"


@pytest.mark.parametrize("n, c, alpha, p, q, bounded", [
    (1, 3.0, 0.0, 2, 2, False),
    (1, 1.0, 0.0, 1, 1, True),
    (1, 0.0, 0.0, "inf", 1, True),
    (1, 2.5, 0.0, 4, 1, True),
])
def test_classify_kc_examples(n, c, alpha, p, q, bounded):
    assert classify_kc(n, c, alpha, p, q).bounded is bounded


def test_classify_kc_regime_tags():
    assert classify_kc(1, -1.0, 0.0, 2, 2).regime is Regime.KC_NONPOSITIVE
    assert classify_kc(1, 1.0, 0.0, 2, 2).regime is Regime.KC_MODERATE
    assert classify_kc(1, 2.5, 0.0, 2, 2).regime is Regime.KC_LARGE
    assert classify_kc(1, 3.0, 0.0, 2, 2).regime is Regime.KC_EXCLUDED


@pytest.mark.parametrize("n, alpha", KC_CASES)
def test_kc_encoding_matches_classify(n, alpha):
    assert_kc_matches_classify(n, alpha, inverse_grid(21))


@pytest.mark.slow
@pytest.mark.parametrize("n, alpha", KC_CASES)
def test_kc_encoding_matches_classify_full_grid(n, alpha):
    assert_kc_matches_classify(n, alpha, inverse_grid(101))


def test_kc_encoding_matches_classify_on_full_grid_in_time():
    inv_p, inv_q = inverse_mesh(101)
    start = time.perf_counter()
    for n, alpha in KC_CASES:
        for c in kc_values(n, alpha):
            base = KernelParameters(n=n, a=0.0, b=alpha, c=c, alpha=alpha, beta=alpha)
            general = bounded_grid(base, inv_p, inv_q)
            corollary = kc_bounded_grid(n, c, alpha, inv_p, inv_q)
            assert np.array_equal(general, corollary), f"n={n}, c={c}"
    assert time.perf_counter() - start < 10.0


@pytest.mark.parametrize("n, alpha", KC_CASES)
@pytest.mark.parametrize("c", [-1.0, 0.0, 0.5, 1.0, 2.0, 2.5, 3.0, 4.0, 5.5])
def test_kc_bounded_grid_matches_pointwise_verdicts(n, alpha, c):
    # dyadic c values put boundaries on grid points, which exercises the exact re-check
    inv_p, inv_q = inverse_mesh(17)
    expected = [classify_kc(n, c, alpha, ExtendedExponent.from_inverse(ip), ExtendedExponent.from_inverse(iq)).bounded
                for ip, iq in zip(inv_p, inv_q)]
    assert kc_bounded_grid(n, c, alpha, inv_p, inv_q).tolist() == expected


@pytest.mark.parametrize("base", [
    KernelParameters(n=1, a=0, b=0, c=2),
    KernelParameters(n=1, a=0.5, b=0, c=2.5, alpha=0, beta=0.5),
    KernelParameters(n=2, a=0, b=0.5, c=4.0, alpha=0.5, beta=0.5),
    KernelParameters(n=1, a=1.0, b=0.5, c=2.75, alpha=0.5, beta=0),
    KernelParameters(n=3, a=-0.25, b=1.0, c=3.0, alpha=0, beta=1.0),
    KernelParameters(n=1, a=0, b=-1.5, c=0.5),
    KernelParameters(n=1, a=0.25, b=0, c=1.25, alpha=0.5, beta=0),
])
def test_bounded_grid_matches_region_sweep(base):
    grid = inverse_grid(17)
    inv_p, inv_q = inverse_mesh(17)
    expected = [pt.verdict.bounded for pt in region_sweep(base, grid)]
    assert bounded_grid(base, inv_p, inv_q).tolist() == expected


def test_bounded_grid_rejects_points_outside_square():
    with pytest.raises(DomainError):
        bounded_grid(KernelParameters(1, 0, 0, 2), [0.5, 1.5], [0.5, 0.5])
    with pytest.raises(DomainError):
        kc_bounded_grid(1, 1.0, 0.0, [0.5], [-0.1])


@pytest.mark.parametrize("n, gamma, alpha, beta, p, q, bounded", [
    (1, 0.0, 0.0, 0.0, 2, 2, True),
    (1, 0.0, 0.0, 0.0, 1, 1, False),
    (2, 1.0, 1.0, 1.0, 3, 3, True),
    (1, 0.0, 0.0, 0.0, "inf", 1, True),
    (1, 0.0, 0.0, 0.0, "inf", "inf", False),
])
def test_classify_projection_examples(n, gamma, alpha, beta, p, q, bounded):
    assert classify_projection(n, gamma, alpha, beta, p, q).bounded is bounded


def test_berezin_differs_from_projection_only_at_p_infinity():
    for q in (1, 2, "inf"):
        assert classify_projection(1, 0.0, 0.0, 0.0, "inf", q, operator="berezin").bounded
    assert not classify_projection(1, 0.0, 0.0, 0.0, "inf", "inf").bounded
    for p, q in ((2, 2), (1, 1), (4, 2), (2, "inf")):
        projection = classify_projection(1, 0.5, 0.0, 0.5, p, q)
        transform = classify_projection(1, 0.5, 0.0, 0.5, p, q, operator="berezin")
        assert projection.bounded == transform.bounded


def test_classify_projection_rejects_unknown_operator():
    with pytest.raises(DomainError):
        classify_projection(1, 0.0, 0.0, 0.0, 2, 2, operator="toeplitz")


# dyadic weights keep n+1+γ exact, so both encodings see the same numbers
PROJECTION_GAMMAS = [0.0, 0.5, 1.0, -0.5, 2.0]
PROJECTION_WEIGHTS = [(0.0, 0.0), (0.5, 0.5), (1.0, 0.0), (0.0, 1.0), (-0.5, 0.25)]


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("gamma", PROJECTION_GAMMAS)
def test_projection_encoding_matches_classify(n, gamma):
    grid = inverse_grid(26)
    for alpha, beta in PROJECTION_WEIGHTS:
        projection = KernelParameters(n=n, a=0.0, b=gamma, c=n + 1 + gamma, alpha=alpha, beta=beta)
        berezin = KernelParameters(n=n, a=n + 1 + gamma, b=gamma, c=2 * (n + 1 + gamma), alpha=alpha, beta=beta)
        for ip, iq in grid:
            p, q = ExtendedExponent.from_inverse(ip), ExtendedExponent.from_inverse(iq)
            encoded = classify_projection(n, gamma, alpha, beta, p, q)
            assert classify(projection.at(p, q)).bounded == encoded.bounded, (alpha, beta, ip, iq)
            encoded = classify_projection(n, gamma, alpha, beta, p, q, operator="berezin")
            assert classify(berezin.at(p, q)).bounded == encoded.bounded, (alpha, beta, ip, iq)


@pytest.mark.parametrize("n, c, alpha, expected", [
    (1, 2.9, 0.0, True),
    (1, 3.0, 0.0, False),
    (2, -5.0, 0.5, True),
])
def test_exists_bounded_pair_examples(n, c, alpha, expected):
    assert exists_bounded_pair(n, c, alpha) is expected


@pytest.mark.parametrize("n, c, alpha, p, q", [
    (1, 0.0, 0.0, 2, 2),
    (1, 2.0, 0.0, 2, 2),
    (1, 2.5, 0.0, 4, 1),
])
def test_witness_pair_examples(n, c, alpha, p, q):
    wp, wq = witness_pair(n, c, alpha)
    assert wp.value == pytest.approx(p)
    assert wq.value == pytest.approx(q)


@pytest.mark.parametrize("n, alpha", KC_CASES)
def test_threshold_and_witness_soundness(n, alpha):
    rng = np.random.default_rng(11)
    threshold = n + 2.0 * (1.0 + alpha)
    for c in rng.uniform(-3.0, threshold + 1.0, 200):
        assert exists_bounded_pair(n, c, alpha) == (c < threshold)
        if c < threshold:
            p, q = witness_pair(n, c, alpha)
            assert classify_kc(n, c, alpha, p, q).bounded
        else:
            with pytest.raises(PreconditionError):
                witness_pair(n, c, alpha)


@pytest.mark.parametrize("n, alpha", KC_CASES)
def test_region_is_empty_from_the_threshold_on(n, alpha):
    grid = inverse_grid(50)
    threshold = n + 2.0 * (1.0 + alpha)
    for c in (threshold, threshold + 0.5, threshold + 3.0):
        base = KernelParameters(n=n, a=0.0, b=alpha, c=c, alpha=alpha, beta=alpha)
        assert not any(pt.verdict.bounded for pt in region_sweep(base, grid))


def test_classify_kc_agrees_with_classify_on_examples():
    params = Parameters(n=1, a=0, b=0, c=2.5, alpha=0, beta=0, p=4, q=1)
    assert classify(params).bounded == classify_kc(1, 2.5, 0.0, 4, 1).bounded
