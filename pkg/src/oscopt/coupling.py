"""Engineered phase-offset functions built from Gaussian bumps.

A phase interaction ``f`` shifts the argument of the pairwise coupling term,
``sin(dphi + f(dphi))``, so that the discrete phase differences a problem
wants to reward land on ``pi`` (lowest energy) and the ones it wants to
penalize land on ``0``.  ``f`` is a sum of narrow Gaussians centred on the
grid ``2*pi*k/order``; each bump at ``+c`` is paired with a bump of negated
amplitude at ``-c`` so ``f`` is odd by construction.

Only ``f`` modulo ``2*pi`` affects the dynamics.  A strictly odd,
``2*pi``-periodic ``f`` must satisfy ``f(2*pi - c) = -f(c)``, so bumps given
on the upper half-circle ``(pi, 2*pi)`` are folded onto their mirror on the
lower half and their amplitudes are compared modulo ``2*pi``.  A bump exactly
at ``pi`` can only carry ``0`` or ``pi``; on the seam ``x = +-pi`` the
function then jumps by ``2*pi``, which leaves ``exp(1j*f)`` smooth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

TWO_PI = 2.0 * math.pi

# Tolerance for deciding that a center lies on a grid point or on pi.
_ANGLE_TOL = 1e-9


def wrap_angle(x):
    """Map angles to ``(-pi, pi]``."""
    return math.pi - np.mod(math.pi - np.asarray(x, dtype=float), TWO_PI)


def _wrap_scalar(x: float) -> float:
    return math.pi - math.fmod(math.fmod(math.pi - x, TWO_PI) + TWO_PI, TWO_PI)


@dataclass(frozen=True)
class BumpSpec:
    center: float
    amplitude: float


@dataclass(frozen=True)
class PhaseInteraction:
    """Odd, 2*pi-periodic sum of Gaussian bumps.

    Parameters
    ----------
    bumps:
        Positive-side bumps; the mirrored ``(-center, -amplitude)`` partner of
        each one is implicit.
    sigma:
        Common Gaussian width, ``exp(-d**2 / (2 sigma**2))``.
    grid_order:
        The harmonic order whose grid ``2*pi*k/grid_order`` the builder bumps
        sit on (``K`` for Max-K-Cut, ``N`` for TSP and Hamiltonian cycle).
    extra:
        Caller-supplied penalty bumps.  They may sit off the grid but must
        respect the same minimum separation.
    """

    bumps: tuple[BumpSpec, ...]
    sigma: float
    grid_order: int
    extra: tuple[BumpSpec, ...] = field(default=())

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.grid_order < 1:
            raise ValueError(f"grid_order must be >= 1, got {self.grid_order}")
        step = TWO_PI / self.grid_order
        for b in self.bumps:
            k = b.center / step
            if abs(k - round(k)) > _ANGLE_TOL * self.grid_order:
                raise ValueError(f"bump center {b.center} is not a multiple of 2*pi/{self.grid_order}")
        # Fold now so inconsistent or overlapping bumps fail at construction.
        self._folded
        self._check_separation()

    @cached_property
    def _folded(self) -> tuple[np.ndarray, np.ndarray]:
        """Effective bumps with centers in ``(0, pi]`` and amplitudes reduced mod 2*pi."""
        folded: dict[float, float] = {}
        for b in self.bumps + self.extra:
            c = math.fmod(b.center, TWO_PI)
            if c < 0:
                c += TWO_PI
            a = b.amplitude
            if c < _ANGLE_TOL or TWO_PI - c < _ANGLE_TOL:
                # A bump at 0 meets its own mirror and cancels.
                continue
            if abs(c - math.pi) < _ANGLE_TOL:
                c = math.pi
                a = _wrap_scalar(a)
                if min(abs(a), abs(abs(a) - math.pi)) > 1e-9:
                    raise ValueError(
                        f"a bump at pi must carry 0 or pi (mod 2*pi) to stay odd, got {b.amplitude}")
                a = 0.0 if abs(a) < 1e-9 else math.pi
            elif c > math.pi:
                c, a = TWO_PI - c, -a
            a = _wrap_scalar(a)
            key = round(c, 9)
            if key in folded:
                if abs(_wrap_scalar(folded[key] - a)) > 1e-9:
                    raise ValueError(
                        f"bumps at {c:.6f} and its mirror disagree: {folded[key]} vs {a} (mod 2*pi)")
                continue
            folded[key] = a
        items = sorted((c, a) for c, a in folded.items() if a != 0.0)
        centers = np.array([math.pi if abs(c - math.pi) < 1e-9 else c for c, _ in items])
        amps = np.array([a for _, a in items])
        return centers, amps

    @property
    def centers(self) -> np.ndarray:
        """Effective centers in ``(0, pi]`` (zero-amplitude bumps dropped)."""
        return self._folded[0]

    @property
    def amplitudes(self) -> np.ndarray:
        return self._folded[1]

    @property
    def is_zero(self) -> bool:
        return self.centers.size == 0

    def all_centers(self) -> np.ndarray:
        """Every effective center on the circle, both signs, in ``(-pi, pi]``."""
        c = self.centers
        out = np.concatenate([c, -c[c < math.pi]])
        return np.sort(out)

    def _check_separation(self):
        pts = self.all_centers()
        if pts.size < 2:
            return
        gaps = np.diff(np.concatenate([pts, [pts[0] + TWO_PI]]))
        if gaps.min() < 6.0 * self.sigma - 1e-12:
            raise ValueError(
                f"bumps overlap: closest centers are {gaps.min():.4g} apart, "
                f"need at least 6*sigma = {6 * self.sigma:.4g}")

    def __call__(self, dphi):
        return eval_f(self, dphi)


def eval_f(fi: PhaseInteraction, dphi):
    """Evaluate ``f`` at arbitrary (array) phase differences."""
    x = wrap_angle(dphi)
    out = np.zeros_like(x)
    inv = -0.5 / fi.sigma**2
    for c, a in zip(fi.centers, fi.amplitudes):
        if c == math.pi:
            # Seam bump: the two terms are each other's periodic images.
            out += a * (np.exp(inv * (x - c) ** 2) - np.exp(inv * (x + c) ** 2))
            continue
        for shift in (0.0, TWO_PI, -TWO_PI):
            out += a * (np.exp(inv * (x - c + shift) ** 2) - np.exp(inv * (x + c + shift) ** 2))
    if np.ndim(dphi) == 0:
        return float(out)
    return out


def quadrature_split(fi: PhaseInteraction, dphi):
    """Return ``(cos f, sin f)``; ``c*sin(x) + s*cos(x) == sin(x + f(x))``."""
    f = eval_f(fi, dphi)
    return np.cos(f), np.sin(f)


def grid_distance(x, order: int):
    """Wrapped distance from each angle to the nearest point of ``2*pi*k/order``."""
    step = TWO_PI / order
    r = np.mod(np.asarray(x, dtype=float), step)
    return np.minimum(r, step - r)


def _check_sigma(sigma: float | None, order: int) -> float:
    limit = math.pi / (4 * order)
    if sigma is None:
        return math.pi / (8 * order)
    if not 0 < sigma <= limit + 1e-15:
        raise ValueError(f"sigma must lie in (0, pi/(4*{order})] = (0, {limit:.4g}], got {sigma}")
    return float(sigma)


def build_max_k_cut_interaction(K: int, sigma: float | None = None,
                                extra: Iterable[BumpSpec] = ()) -> PhaseInteraction:
    """Coupling offset for Max-K-Cut.

    Bump ``k`` sits at ``2*pi*k/K`` with amplitude ``(2k-1)*pi - 2*pi*k/K`` so
    that ``dphi + f(dphi)`` is an odd multiple of ``pi`` whenever the two
    oscillators occupy different grid points.  ``K = 2`` gives ``f == 0``.
    """
    if K < 2:
        raise ValueError(f"K must be >= 2, got {K}")
    sigma = _check_sigma(sigma, K)
    bumps = tuple(
        BumpSpec(TWO_PI * k / K, (2 * k - 1) * math.pi - TWO_PI * k / K) for k in range(1, K))
    return PhaseInteraction(bumps, sigma, K, tuple(extra))


def build_tsp_interaction(N: int, sigma: float | None = None,
                          extra: Iterable[BumpSpec] = ()) -> PhaseInteraction:
    """Coupling offset for TSP: adjacent slots map to 0, all other slots to pi."""
    if N < 3:
        raise ValueError(f"N must be >= 3, got {N}")
    sigma = _check_sigma(sigma, N)
    bumps = [BumpSpec(TWO_PI * g / N, -TWO_PI * g / N) for g in sorted({1, N - 1})]
    bumps += [BumpSpec(TWO_PI * k / N, math.pi - TWO_PI * k / N)
              for k in range(2, N + 1) if k != N - 1]
    return PhaseInteraction(tuple(bumps), sigma, N, tuple(extra))


def build_hc_interaction(N: int, sigma: float | None = None, nonadjacent_target: float | None = None,
                         extra: Iterable[BumpSpec] = ()) -> PhaseInteraction:
    """Coupling offset for Hamiltonian cycle / path.

    Adjacent slots (``+-2*pi/N``) map to ``pi``, which rewards an edge between
    neighbours in the phase ordering.  Non-adjacent slots map to
    ``+-nonadjacent_target`` (sign follows the half-circle, as oddness
    requires).  The default target is ``pi/2`` for odd ``N``; for even ``N``
    the antipodal slot can only carry ``0`` or ``pi``, so the default switches
    to ``0`` for every non-adjacent slot, which keeps the energy ranking equal
    to the number of tour edges present.
    """
    if N < 3:
        raise ValueError(f"N must be >= 3, got {N}")
    sigma = _check_sigma(sigma, N)
    if nonadjacent_target is None:
        nonadjacent_target = math.pi / 2 if N % 2 else 0.0
    bumps = [BumpSpec(TWO_PI * g / N, math.pi - TWO_PI * g / N) for g in sorted({1, N - 1})]
    for k in range(2, N + 1):
        if k == N - 1:
            continue
        c = TWO_PI * k / N
        target = nonadjacent_target if c < math.pi else -nonadjacent_target
        if 2 * k == N:
            target = 0.0 if abs(_wrap_scalar(nonadjacent_target)) <= math.pi / 2 else math.pi
        bumps.append(BumpSpec(c, target - c))
    return PhaseInteraction(tuple(bumps), sigma, N, tuple(extra))
