"""Brute-force reference engine for the Fock coincidence formula.

The two input wavepackets are expanded over four orthonormal single-photon
modes per output port: Gram-Schmidt of the two polarizations times
Gram-Schmidt of the two spectral profiles.  Arm A's creation operator only
touches the (pol_parallel, spec_parallel) mode; arm B's spreads over all
four.  Pushing the beam-splitter map through (t a + r b, r a - t b) and
expanding the resulting operator polynomial exactly gives the full output
photon-number distribution, from which any detector model can be applied
configuration by configuration.  Intended for tests and acceptance only;
guarded to m + n <= 12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import polarization as pol
from . import spectral as spc
from .fock import BeamSplitter, FockPair

__all__ = ["ModeDecomposition", "OutputDistribution", "decompose_modes",
           "expand", "coincidence_from_distribution", "oracle_coincidence"]

_MAX_PHOTONS = 12


@dataclass(frozen=True)
class ModeDecomposition:
    """Component of mode B along mode A (c_parallel) and orthogonal rest."""

    c_parallel: complex
    c_perp: float

    def __post_init__(self):
        if abs(abs(self.c_parallel) ** 2 + self.c_perp**2 - 1.0) > 1e-10:
            raise ValueError("mode decomposition is not normalized")


@dataclass(frozen=True)
class OutputDistribution:
    """Probabilities over output occupation patterns.

    Keys are (port_a_counts, port_b_counts), each a 4-tuple ordered as
    (pol1 spec1, pol1 spec2, pol2 spec1, pol2 spec2) where pol1/spec1 are
    arm A's polarization and spectrum.
    """

    probs: dict[tuple[tuple[int, int, int, int], tuple[int, int, int, int]], float]
    pol_decomp: ModeDecomposition
    spec_decomp: ModeDecomposition
    pol_basis: tuple[pol.PolarizationVector, pol.PolarizationVector]

    def total(self) -> float:
        return math.fsum(self.probs.values())


def decompose_modes(pair: FockPair) -> tuple[ModeDecomposition, ModeDecomposition,
                                             tuple[pol.PolarizationVector,
                                                   pol.PolarizationVector]]:
    """Gram-Schmidt of B's polarization and spectrum against A's."""
    cp = (pair.pol_a.h.conjugate() * pair.pol_b.h
          + pair.pol_a.v.conjugate() * pair.pol_b.v)
    sp = math.sqrt(max(0.0, 1.0 - abs(cp) ** 2))
    if pair.spec_a is not None and pair.spec_b is not None:
        cs = spc.overlap(pair.spec_a, pair.spec_b).value
    else:
        cs = 1.0 + 0.0j
    ss = math.sqrt(max(0.0, 1.0 - abs(cs) ** 2))
    basis = (pair.pol_a, pol.orthogonal(pair.pol_a))
    return (ModeDecomposition(complex(cp), sp), ModeDecomposition(complex(cs), ss),
            basis)


def _poly_multiply(poly: dict[tuple[int, ...], complex],
                   terms: list[tuple[int, complex]]) -> dict[tuple[int, ...], complex]:
    """Multiply a monomial dict by a linear form sum_i coeff_i x_i."""
    out: dict[tuple[int, ...], complex] = {}
    for mono, coeff in poly.items():
        for idx, c in terms:
            if c == 0:
                continue
            key = list(mono)
            key[idx] += 1
            key_t = tuple(key)
            out[key_t] = out.get(key_t, 0.0 + 0.0j) + coeff * c
    return out


def expand(pair: FockPair, bs: BeamSplitter) -> OutputDistribution:
    """Exact output distribution of the beam splitter over the 4x2 modes."""
    m, n = pair.m, pair.n
    if m + n > _MAX_PHOTONS:
        raise ValueError(f"oracle limited to m + n <= {_MAX_PHOTONS}")
    pol_d, spec_d, basis = decompose_modes(pair)
    t = math.sqrt(bs.transmissivity)
    r = math.sqrt(bs.reflectivity)

    # variable order: a-port modes 0..3, b-port modes 4..7, mode index
    # mu = 2*(pol component) + (spec component)
    beta = [
        pol_d.c_parallel * spec_d.c_parallel,
        pol_d.c_parallel * spec_d.c_perp,
        pol_d.c_perp * spec_d.c_parallel,
        pol_d.c_perp * spec_d.c_perp,
    ]
    a_form = [(0, complex(t)), (4, complex(r))]
    b_form = [(mu, r * beta[mu]) for mu in range(4)]
    b_form += [(4 + mu, -t * beta[mu]) for mu in range(4)]

    poly: dict[tuple[int, ...], complex] = {(0,) * 8: 1.0 + 0.0j}
    for _ in range(m):
        poly = _poly_multiply(poly, a_form)
    for _ in range(n):
        poly = _poly_multiply(poly, b_form)

    norm = math.factorial(m) * math.factorial(n)
    probs: dict = {}
    for mono, coeff in poly.items():
        fact = 1.0
        for k in mono:
            fact *= math.factorial(k)
        p = abs(coeff) ** 2 * fact / norm
        if p > 0.0:
            key = (mono[:4], mono[4:])
            probs[key] = probs.get(key, 0.0) + p
    dist = OutputDistribution(probs, pol_d, spec_d, basis)
    if abs(dist.total() - 1.0) > 1e-10:
        raise RuntimeError(f"oracle distribution not normalized: {dist.total()}")
    return dist


def coincidence_from_distribution(dist: OutputDistribution,
                                  det_a: pol.Detector,
                                  det_b: pol.Detector) -> float:
    """Apply the threshold click model per output configuration and sum.

    Each of the four basis modes carries one of the two Gram-Schmidt
    polarizations; the per-port no-click probability is the product of
    (1 - eta)^count over modes.
    """
    p1, p2 = dist.pol_basis
    eff_a = (pol.effective_efficiency(det_a, p1), pol.effective_efficiency(det_a, p2))
    eff_b = (pol.effective_efficiency(det_b, p1), pol.effective_efficiency(det_b, p2))
    mode_pol = (0, 0, 1, 1)  # modes 0,1 carry p1; modes 2,3 carry p2
    total = 0.0
    for (ca, cb), p in sorted(dist.probs.items()):
        miss_a = 1.0
        miss_b = 1.0
        for mu in range(4):
            miss_a *= (1.0 - eff_a[mode_pol[mu]]) ** ca[mu]
            miss_b *= (1.0 - eff_b[mode_pol[mu]]) ** cb[mu]
        total += p * (1.0 - miss_a) * (1.0 - miss_b)
    return total


def oracle_coincidence(pair: FockPair, bs: BeamSplitter,
                       det_a: pol.Detector = pol.IDEAL_DETECTOR,
                       det_b: pol.Detector = pol.IDEAL_DETECTOR) -> float:
    """Exact coincidence probability by full expansion plus click model."""
    return coincidence_from_distribution(expand(pair, bs), det_a, det_b)
