"""Maximal weights of a measure along one-parameter directions.

For a direction A with eigenvalue clusters c_0 < ... < c_r, every atom flows
to the eigenspace of the highest cluster it meets; the mass landing on each
cluster gives the stratum masses, and the maximal weight is

    lambda(nu, A) = sum_i c_i * mass_i.

A measure is semistable exactly when lambda >= 0 for every direction and
stable when lambda > 0 for every direction.  For a proper subspace L of
projective dimension d spanned by given points, the associated destabilizing
direction takes the value d - n on L and d + 1 on its orthogonal complement;
along it lambda = (d + 1) - (n + 1) nu(L).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptySpan, InvalidInput, SpanIsFull
from .geometry import (
    DEFAULT_COMPONENT_TOL,
    ProjectivePoint,
    SpectralDirection,
    direction_from_projectors,
    flow_point,
    mu_component,
)
from .measures import AtomicMeasure

RANK_TOL = 1e-10  # relative singular value cutoff for span ranks


@dataclass(eq=False)
class WeightReport:
    """Stratum masses of a measure along a direction, with optional weight."""

    direction: SpectralDirection
    masses: np.ndarray
    lam: float | None = None

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.direction.eigenvalues

    @property
    def stratum_masses(self) -> list:
        """List of (critical value, mass) pairs, ascending critical values."""
        return [(float(c), float(m)) for c, m in zip(self.eigenvalues, self.masses)]


def unstable_partition(
    nu: AtomicMeasure,
    d: SpectralDirection,
    component_tol: float = DEFAULT_COMPONENT_TOL,
) -> WeightReport:
    """Mass of nu landing on each eigenvalue cluster under the flow of A.

    Atom i belongs to the stratum of the highest cluster on which its
    representative has a spectral component of norm above component_tol.
    """
    if d.size != nu.dim + 1:
        raise InvalidInput("direction size does not match the measure")
    z = nu.coeff_matrix()  # (m, n+1)
    comps = np.empty((d.levels, nu.atom_count))
    for i, proj in enumerate(d.projectors):
        comps[i] = np.linalg.norm(z @ proj.T, axis=1)
    flags = comps > component_tol
    # highest present cluster per atom: first True in the reversed scan
    strata = d.levels - 1 - np.argmax(flags[::-1], axis=0)
    masses = np.bincount(strata, weights=nu.weights, minlength=d.levels)
    return WeightReport(direction=d, masses=masses)


def maximal_weight(
    nu: AtomicMeasure,
    d: SpectralDirection,
    component_tol: float = DEFAULT_COMPONENT_TOL,
) -> WeightReport:
    """Stratum masses together with lambda = sum_i c_i * mass_i."""
    report = unstable_partition(nu, d, component_tol=component_tol)
    report.lam = float(report.eigenvalues @ report.masses)
    return report


def lambda_via_flow(nu: AtomicMeasure, d: SpectralDirection, t_max: float = 40.0) -> float:
    """Numeric check of lambda: the momentum component at the flowed measure.

    Evaluates sum_i w_i <mu(exp(t_max A) z_i), A>, which increases to lambda
    as t_max grows.  Intended as an independent oracle, not a fast path.
    """
    if t_max < 0:
        raise InvalidInput("t_max must be nonnegative")
    total = 0.0
    for p, w in nu.atoms:
        total += float(w) * mu_component(flow_point(p, d, t_max), d)
    return total


def span_basis(points: list, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the linear span of the given points."""
    if not points:
        raise EmptySpan("no points were given")
    cols = np.array([p.coeffs for p in points]).T  # (n+1, k)
    u, s, _ = np.linalg.svd(cols, full_matrices=False)
    rank = int(np.sum(s > rank_tol * s[0])) if s[0] > 0 else 0
    if rank == 0:
        raise EmptySpan("points span a numerically zero subspace")
    return u[:, :rank]


def destabilizing_direction(points: list, n: int | None = None) -> SpectralDirection:
    """Direction whose flow contracts onto the span L of the given points.

    Eigenvalue d - n on L (projective dimension d) and d + 1 on its
    orthogonal complement; traceless by construction.  Along it the maximal
    weight of any measure is (d + 1) - (n + 1) nu(L).
    """
    if not points:
        raise EmptySpan("no points were given")
    points = [
        p if isinstance(p, ProjectivePoint) else ProjectivePoint(p) for p in points
    ]
    size = points[0].coeffs.size
    if n is None:
        n = size - 1
    elif n != size - 1:
        raise InvalidInput("points do not live in CP^n for the requested n")
    q = span_basis(points)
    d = q.shape[1] - 1
    if d == n:
        raise SpanIsFull("points span all of C^(n+1); no proper subspace")
    proj = q @ q.conj().T
    comp = np.eye(size) - proj
    return direction_from_projectors(
        eigenvalues=[float(d - n), float(d + 1)],
        projectors=[proj, comp],
        multiplicities=[d + 1, n - d],
    )


def lambda_closed_form(nu: AtomicMeasure, subspace_mass: float, d: int) -> float:
    """(d + 1) - (n + 1) * nu(L) for a subspace of projective dimension d."""
    n = nu.dim
    return float((d + 1) - (n + 1) * subspace_mass)
