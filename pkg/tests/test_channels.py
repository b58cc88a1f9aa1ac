import math

import numpy as np
import pytest

from homsim import channels as chn
from homsim import fock
from homsim import polarization as pol
from homsim import spectral as spc

CENTER = 2 * math.pi * 193.55
GAUSS = spc.SpectralProfile(spc.Shape.GAUSSIAN, CENTER, math.pi)


def src(photons, p=pol.H, spec=GAUSS):
    return chn.SourceSpec(photons, p, spec)


# ---------------------------------------------------------------------------
# amplitude damping
# ---------------------------------------------------------------------------

def test_damp_number_endpoints():
    assert chn.damp_number(3, 0.0) == ((3, 1.0), (2, 0.0), (1, 0.0), (0, 0.0))
    dist = dict(chn.damp_number(3, 1.0))
    assert dist[0] == 1.0 and dist[3] == 0.0


def test_damp_number_binomial():
    dist = dict(chn.damp_number(4, 0.5))
    expected = {4: 1 / 16, 3: 4 / 16, 2: 6 / 16, 1: 4 / 16, 0: 1 / 16}
    for k, p in expected.items():
        assert dist[k] == pytest.approx(p, rel=1e-15)


@pytest.mark.parametrize("n", [0, 1, 4, 9])
@pytest.mark.parametrize("gamma", [0.0, 0.25, 0.6, 1.0])
def test_damp_number_is_normalized(n, gamma):
    assert math.fsum(p for _, p in chn.damp_number(n, gamma)) == pytest.approx(
        1.0, abs=1e-14)


def test_damp_number_validation():
    with pytest.raises(ValueError):
        chn.damp_number(-1, 0.5)
    with pytest.raises(ValueError):
        chn.damp_number(2, 1.5)


# ---------------------------------------------------------------------------
# channel application
# ---------------------------------------------------------------------------

def test_identity_channel_preserves_source():
    mixed = chn.apply_channel(src(2, pol.D), chn.IDENTITY_CHANNEL)
    assert dict(mixed.number_dist)[2] == 1.0
    assert np.allclose(mixed.pol.rho, pol.D.density().rho, atol=1e-15)
    assert mixed.spec == GAUSS


def test_full_damping_gives_vacuum():
    mixed = chn.apply_channel(src(3), chn.ChannelSpec(gamma=1.0))
    assert dict(mixed.number_dist)[0] == 1.0


def test_broadening_doubles_gaussian_width():
    mixed = chn.apply_channel(src(1), chn.ChannelSpec(xi=2.0))
    assert mixed.spec.effective_width == pytest.approx(2.0 * GAUSS.effective_width)
    assert spc.fwhm(mixed.spec) == pytest.approx(2.0 * spc.fwhm(GAUSS), rel=1e-12)


def test_channel_spec_validation():
    with pytest.raises(ValueError):
        chn.ChannelSpec(gamma=1.2)
    with pytest.raises(ValueError):
        chn.ChannelSpec(p_depol=-0.1)
    with pytest.raises(ValueError):
        chn.ChannelSpec(xi=0.0)


# ---------------------------------------------------------------------------
# mixed coincidences
# ---------------------------------------------------------------------------

def test_pure_sources_reproduce_fock():
    for m, n, phi in ((1, 1, 0.0), (2, 1, 0.4), (3, 2, 1.0)):
        pol_b = pol.rotate(pol.H, phi)
        mixed = chn.mixed_coincidence(
            chn.MixedSource.pure(src(m)),
            chn.MixedSource.pure(chn.SourceSpec(n, pol_b, GAUSS)))
        direct = fock.coincidence(fock.FockPair(m, n, pol.H, pol_b, GAUSS, GAUSS))
        assert mixed == pytest.approx(direct, abs=1e-14)


def test_depolarized_arm_is_two_branch_average():
    # arm A maximally depolarized: H/V branches at weight 1/2 each
    mixed_a = chn.apply_channel(src(1), chn.ChannelSpec(p_depol=0.75))
    pure_b = chn.MixedSource.pure(src(1, pol.rotate(pol.H, 0.3)))
    got = chn.mixed_coincidence(mixed_a, pure_b)
    bs = fock.BeamSplitter.balanced()
    branch_h = fock.coincidence(fock.FockPair(1, 1, pol.H, pol.rotate(pol.H, 0.3), GAUSS, GAUSS))
    branch_v = fock.coincidence(fock.FockPair(1, 1, pol.V, pol.rotate(pol.H, 0.3), GAUSS, GAUSS))
    assert got == pytest.approx(0.5 * branch_h + 0.5 * branch_v, abs=1e-14)


def test_damped_two_one_branch_enumeration():
    g = 0.3
    mixed_a = chn.apply_channel(src(2), chn.ChannelSpec(gamma=g))
    mixed_b = chn.apply_channel(src(1), chn.ChannelSpec(gamma=g))
    got = chn.mixed_coincidence(mixed_a, mixed_b)
    p = lambda m, n: fock.coincidence_raw(m, n, 1.0, fock.BeamSplitter.balanced(),
                                          1.0, 1.0) if m + n >= 1 else 0.0
    w2 = (1 - g) ** 2
    expected = (w2 * (1 - g) * p(2, 1) + w2 * g * p(2, 0)
                + 2 * g * (1 - g) * (1 - g) * p(1, 1) + 2 * g * (1 - g) * g * p(1, 0)
                + g * g * (1 - g) * p(0, 1))
    assert got == pytest.approx(expected, abs=1e-14)


def test_mixed_coincidence_matches_branch_averaged_oracle():
    # with ideal detectors every pure branch is exact, so the mixture must
    # agree with the operator-expansion oracle averaged the same way
    from homsim import oracle
    spec_b = spc.SpectralProfile(spc.Shape.SECH, CENTER, 0.8)
    src_a = chn.SourceSpec(2, pol.rotate(pol.H, 0.4), GAUSS)
    src_b = chn.SourceSpec(2, pol.D, spec_b)
    mixed_a = chn.apply_channel(src_a, chn.ChannelSpec(gamma=0.35, p_depol=0.3))
    mixed_b = chn.apply_channel(src_b, chn.ChannelSpec(gamma=0.1, p_depol=0.6))
    got = chn.mixed_coincidence(mixed_a, mixed_b)
    bs = fock.BeamSplitter.balanced()
    expected = 0.0
    for ka, pka in mixed_a.number_dist:
        for wa, va in pol.eigendecompose(mixed_a.pol):
            for kb, pkb in mixed_b.number_dist:
                for wb, vb in pol.eigendecompose(mixed_b.pol):
                    if ka + kb < 1 or pka * wa * pkb * wb == 0.0:
                        continue
                    pair = fock.FockPair(ka, kb, va, vb, mixed_a.spec,
                                         mixed_b.spec)
                    expected += (pka * wa * pkb * wb
                                 * oracle.oracle_coincidence(pair, bs))
    assert got == pytest.approx(expected, abs=1e-12)


def test_linearity_in_number_distribution():
    # convex combination of number distributions = combination of outcomes
    lam = 0.37
    d1 = chn.damp_number(3, 0.2)
    d2 = chn.damp_number(3, 0.7)
    mix = tuple((k, lam * dict(d1).get(k, 0.0) + (1 - lam) * dict(d2).get(k, 0.0))
                for k in range(3, -1, -1))
    rho = pol.D.density()
    make = lambda nd: chn.MixedSource(nd, rho, GAUSS)
    other = chn.MixedSource.pure(src(1))
    got = chn.mixed_coincidence(make(mix), other)
    expected = (lam * chn.mixed_coincidence(make(d1), other)
                + (1 - lam) * chn.mixed_coincidence(make(d2), other))
    assert got == pytest.approx(expected, abs=1e-12)


def test_linearity_in_commuting_polarization_mixtures():
    lam = 0.61
    rho1 = pol.PolarizationDensity(np.diag([0.8, 0.2]).astype(complex))
    rho2 = pol.PolarizationDensity(np.diag([0.3, 0.7]).astype(complex))
    rho_mix = pol.PolarizationDensity(lam * rho1.rho + (1 - lam) * rho2.rho)
    nd = ((1, 1.0),)
    other = chn.MixedSource.pure(src(1, pol.D))
    make = lambda r: chn.MixedSource(nd, r, GAUSS)
    got = chn.mixed_coincidence(make(rho_mix), other)
    expected = (lam * chn.mixed_coincidence(make(rho1), other)
                + (1 - lam) * chn.mixed_coincidence(make(rho2), other))
    assert got == pytest.approx(expected, abs=1e-12)


def test_trace_preservation():
    for g, p, xi in ((0.3, 0.2, 1.5), (0.9, 0.75, 0.6), (0.0, 1.0, 3.0)):
        mixed = chn.apply_channel(src(4, pol.D), chn.ChannelSpec(g, p, xi))
        assert math.fsum(pk for _, pk in mixed.number_dist) == pytest.approx(
            1.0, abs=1e-12)
        assert np.trace(mixed.pol.rho).real == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# visibility under channels
# ---------------------------------------------------------------------------

def test_equal_damping_leaves_single_photon_visibility():
    base = chn.mixed_visibility(chn.MixedSource.pure(src(1)),
                                chn.MixedSource.pure(src(1)))
    for g in np.linspace(0.0, 0.8, 9):
        va = chn.mixed_visibility(chn.apply_channel(src(1), chn.ChannelSpec(gamma=g)),
                                  chn.apply_channel(src(1), chn.ChannelSpec(gamma=g)))
        assert va == pytest.approx(base, abs=1e-9)


def test_identity_corner_matches_pure_visibility():
    grid = chn.channel_visibility_contour(src(2), src(2),
                                          [chn.IDENTITY_CHANNEL],
                                          [chn.IDENTITY_CHANNEL])
    pure = chn.mixed_visibility(chn.MixedSource.pure(src(2)),
                                chn.MixedSource.pure(src(2)))
    assert grid[0][0] == pytest.approx(pure, abs=1e-14)
    assert grid[0][0] == pytest.approx(5 / 7, rel=1e-12)


def test_damping_can_improve_mismatched_visibility():
    # photon-number mismatch (2, 1): attenuating the heavier arm helps
    base = chn.mixed_visibility(chn.MixedSource.pure(src(2)),
                                chn.MixedSource.pure(src(1)))
    gammas = [chn.ChannelSpec(gamma=g) for g in np.linspace(0.0, 0.9, 10)]
    grid = chn.channel_visibility_contour(src(2), src(1), gammas,
                                          [chn.IDENTITY_CHANNEL] * 1)
    best = max(row[0] for row in grid)
    assert base == pytest.approx(2 / 3, rel=1e-12)
    assert best > base + 0.05


def test_strong_depolarization_saturates():
    # p = 3/4 reaches the maximally mixed fixed point on both arms
    ch = chn.ChannelSpec(p_depol=0.75)
    va = chn.mixed_visibility(chn.apply_channel(src(1, pol.D), ch),
                              chn.apply_channel(src(1, pol.A), ch))
    vb = chn.mixed_visibility(chn.apply_channel(src(1, pol.H), ch),
                              chn.apply_channel(src(1, pol.V), ch))
    assert va == pytest.approx(vb, abs=1e-12)


def test_broadening_mismatch_reduces_visibility():
    matched = chn.mixed_visibility(chn.apply_channel(src(1), chn.ChannelSpec(xi=2.0)),
                                   chn.apply_channel(src(1), chn.ChannelSpec(xi=2.0)))
    mismatched = chn.mixed_visibility(chn.apply_channel(src(1), chn.ChannelSpec(xi=2.0)),
                                      chn.apply_channel(src(1), chn.ChannelSpec(xi=0.5)))
    assert matched == pytest.approx(1.0, abs=1e-9)
    assert mismatched < matched - 0.1


def test_mixed_source_validation():
    with pytest.raises(ValueError):
        chn.MixedSource(((1, 0.6), (0, 0.3)), pol.H.density(), GAUSS)
    with pytest.raises(ValueError):
        chn.SourceSpec(-1, pol.H, GAUSS)
