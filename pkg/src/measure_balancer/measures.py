"""Atomic probability measures on CP^n and their Kempf-Ness energy.

A measure is a finite list of (point, weight) atoms with positive weights
summing to 1.  Construction canonicalizes: weights are renormalized (small
drift only; a deviation beyond 1e-6 is an error), coincident atoms are
merged into the earliest occurrence, and points carry the canonical phase
from :mod:`measure_balancer.geometry`.

The Kempf-Ness energy of a measure under g in SL(n+1, C) is

    Psi(nu, g) = sum_i w_i log ||g z_i||      (z_i unit representatives),

whose derivative along a direction A at g recovers the momentum pairing
<F(g.nu), A> with F(nu) = sum_i w_i (z_i z_i* - Id/(n+1)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NumericalDegeneracy
from .geometry import (
    GroupElement,
    MomentumMatrix,
    ProjectivePoint,
    SpectralDirection,
)
from .util import canonical_json, complex_to_pair, pair_to_complex

WEIGHT_SUM_TOL = 1e-6  # weights may drift this far from 1 before renormalizing
DEFAULT_MERGE_TOL = 1e-12  # atoms closer than this (phase-invariant) are merged


@dataclass(eq=False)
class AtomicMeasure:
    """A finitely supported probability measure on CP^n."""

    points: list
    weights: np.ndarray

    def __init__(self, points, weights, merge_tol: float = DEFAULT_MERGE_TOL):
        points = [
            p if isinstance(p, ProjectivePoint) else ProjectivePoint(p)
            for p in points
        ]
        weights = np.asarray(weights, dtype=float).reshape(-1)
        if len(points) == 0:
            raise InvalidInput("a measure needs at least one atom")
        if weights.size != len(points):
            raise InvalidInput("points and weights must have equal length")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0.0):
            raise InvalidInput("atom weights must be finite and positive")
        sizes = {p.coeffs.size for p in points}
        if len(sizes) != 1:
            raise InvalidInput("all atoms must live in the same CP^n")
        total = float(weights.sum())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidInput(
                f"atom weights sum to {total!r}, farther than {WEIGHT_SUM_TOL} from 1"
            )
        if total != 1.0 and abs(total - 1.0) > 1e-12:
            weights = weights / total
        points, weights = _merge_atoms(points, weights, merge_tol)
        weights.flags.writeable = False
        self.points = points
        self.weights = weights

    @property
    def dim(self) -> int:
        """Ambient projective dimension n."""
        return self.points[0].dim

    @property
    def atom_count(self) -> int:
        return len(self.points)

    @property
    def atoms(self) -> list:
        """List of (point, weight) pairs."""
        return list(zip(self.points, self.weights))

    def coeff_matrix(self) -> np.ndarray:
        """(m, n+1) array whose rows are the unit atom representatives."""
        return np.array([p.coeffs for p in self.points])

    # ---- JSON schema -----------------------------------------------------
    # {"n": int, "atoms": [{"z": [[re, im], ...], "w": weight}, ...]}

    def to_json_dict(self) -> dict:
        return {
            "n": self.dim,
            "atoms": [
                {"z": [complex_to_pair(v) for v in p.coeffs], "w": float(w)}
                for p, w in self.atoms
            ],
        }

    def to_json(self) -> str:
        return canonical_json(self.to_json_dict()) + "\n"

    @classmethod
    def from_json_dict(cls, data) -> "AtomicMeasure":
        if not isinstance(data, dict):
            raise InvalidInput("measure document must be a JSON object")
        if "n" not in data or "atoms" not in data:
            raise InvalidInput('measure document needs keys "n" and "atoms"')
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InvalidInput('"n" must be an integer >= 1')
        raw_atoms = data["atoms"]
        if not isinstance(raw_atoms, list) or not raw_atoms:
            raise InvalidInput('"atoms" must be a non-empty list')
        points, weights = [], []
        for entry in raw_atoms:
            if not isinstance(entry, dict) or "z" not in entry or "w" not in entry:
                raise InvalidInput('each atom needs keys "z" and "w"')
            zpairs = entry["z"]
            if not isinstance(zpairs, list) or len(zpairs) != n + 1:
                raise InvalidInput(f'atom "z" must list n+1 = {n + 1} coordinates')
            z = np.array([pair_to_complex(v) for v in zpairs])
            w = entry["w"]
            if isinstance(w, bool) or not isinstance(w, (int, float)):
                raise InvalidInput('atom "w" must be a number')
            points.append(ProjectivePoint(z))
            weights.append(float(w))
        return cls(points, weights)

    @classmethod
    def from_json(cls, text: str) -> "AtomicMeasure":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"invalid JSON: {exc}") from exc
        return cls.from_json_dict(data)


def _merge_atoms(points, weights, merge_tol):
    """Fold atoms with pairwise overlap >= 1 - merge_tol into first occurrences."""
    z = np.array([p.coeffs for p in points])
    overlaps = np.abs(z @ z.conj().T)
    keep: list[int] = []
    target = {}
    for i in range(len(points)):
        owner = -1
        for j in keep:
            if overlaps[i, j] >= 1.0 - merge_tol:
                owner = j
                break
        if owner < 0:
            keep.append(i)
            target[i] = i
        else:
            target[i] = owner
    if len(keep) == len(points):
        return points, weights
    merged_w = {j: 0.0 for j in keep}
    for i in range(len(points)):
        merged_w[target[i]] += weights[i]
    new_points = [points[j] for j in keep]
    new_weights = np.array([merged_w[j] for j in keep])
    return new_points, new_weights


def pushforward(g: GroupElement, nu: AtomicMeasure) -> AtomicMeasure:
    """The image measure g.nu: each atom moved by the projective action."""
    if g.size != nu.dim + 1:
        raise InvalidInput("group element size does not match the measure")
    moved = (g.g @ nu.coeff_matrix().T).T
    norms = np.linalg.norm(moved, axis=1)
    if np.any(norms < 1e-150):
        raise NumericalDegeneracy("group action annihilated an atom representative")
    return AtomicMeasure([ProjectivePoint(row) for row in moved], nu.weights)


def momentum(nu: AtomicMeasure) -> MomentumMatrix:
    """F(nu) = sum_i w_i (z_i z_i* - Id/(n+1))."""
    z = nu.coeff_matrix()
    k = nu.dim + 1
    m = (z.T * nu.weights) @ z.conj() - np.eye(k) / k
    return MomentumMatrix(m)


def kempf_ness(nu: AtomicMeasure, g: GroupElement) -> float:
    """Psi(nu, g) = sum_i w_i log ||g z_i||."""
    if g.size != nu.dim + 1:
        raise InvalidInput("group element size does not match the measure")
    moved = (g.g @ nu.coeff_matrix().T).T
    norms = np.linalg.norm(moved, axis=1)
    if np.any(norms < 1e-150):
        raise NumericalDegeneracy("||g z|| underflowed in the energy evaluation")
    return float(nu.weights @ np.log(norms))


def kempf_ness_derivative(
    nu: AtomicMeasure, g: GroupElement, d: SpectralDirection
) -> float:
    """d/dt Psi(nu, exp(tA) g) at t = 0, i.e. <F(g.nu), A>."""
    if d.size != nu.dim + 1:
        raise InvalidInput("direction size does not match the measure")
    return momentum(pushforward(g, nu)).pairing(d)
