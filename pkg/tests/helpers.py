"""Deterministic generators and independent oracles shared by the tests.

Everything here is seeded through numpy's PCG64 generator; no test should
draw from global random state.  The oracles (bisection, finite differences,
hull membership) are written from scratch on purpose — they cross-check the
package instead of reusing its internals.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import linprog

from measure_balancer import (
    AtomicMeasure,
    GroupElement,
    ProjectivePoint,
    SpectralDirection,
    StabilityKind,
    classify,
    pushforward,
    spectral_decompose,
)


def rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


# ---------------------------------------------------------------------------
# basic random objects


def random_vector(r: np.random.Generator, k: int) -> np.ndarray:
    """Complex standard-normal vector (Fubini-Study uniform after scaling)."""
    return r.normal(size=k) + 1j * r.normal(size=k)


def random_point(r: np.random.Generator, k: int) -> ProjectivePoint:
    return ProjectivePoint(random_vector(r, k))


def random_unitary(r: np.random.Generator, k: int) -> np.ndarray:
    """Haar-ish unitary: QR of a complex Gaussian with phase-fixed diagonal."""
    a = r.normal(size=(k, k)) + 1j * r.normal(size=(k, k))
    q, rr = np.linalg.qr(a)
    d = np.diagonal(rr)
    return q * (d / np.abs(d))


def random_group(
    r: np.random.Generator, k: int, max_log_cond: float = 2.0
) -> GroupElement:
    """Random element with controlled condition number exp(max_log_cond)."""
    t = r.uniform(-max_log_cond / 2.0, max_log_cond / 2.0, size=k)
    t = t - t.mean()
    return GroupElement(random_unitary(r, k) @ np.diag(np.exp(t)) @ random_unitary(r, k))


def random_measure(
    r: np.random.Generator, n: int, m: int, weights: str = "dirichlet"
) -> AtomicMeasure:
    pts = [random_point(r, n + 1) for _ in range(m)]
    if weights == "equal":
        w = np.full(m, 1.0 / m)
    else:
        w = r.dirichlet(np.full(m, 3.0))
        w = np.maximum(w, 1e-3)
        w = w / w.sum()
    return AtomicMeasure(pts, w)


def random_traceless_hermitian(r: np.random.Generator, k: int) -> np.ndarray:
    a = r.normal(size=(k, k)) + 1j * r.normal(size=(k, k))
    a = (a + a.conj().T) / 2.0
    a = a - np.eye(k) * (np.trace(a).real / k)
    return a


# ---------------------------------------------------------------------------
# directions and points with controlled spectral structure


def gapped_direction(
    r: np.random.Generator, k: int, min_gap: float = 0.3
) -> SpectralDirection:
    """Direction with simple spectrum and all eigenvalue gaps >= min_gap."""
    gaps = r.uniform(min_gap, min_gap + 1.0, size=k - 1)
    vals = np.concatenate([[0.0], np.cumsum(gaps)])
    vals = vals - vals.mean()
    v = random_unitary(r, k)
    return spectral_decompose(v @ np.diag(vals) @ v.conj().T)


def point_with_components(
    r: np.random.Generator, d: SpectralDirection, min_comp: float = 0.05
) -> ProjectivePoint:
    """Point whose component in every eigenspace of d has norm >= min_comp.

    Components are given magnitudes in [2*min_comp, 1]; after normalization
    by the total norm (at most sqrt(levels)) each stays above min_comp for
    levels <= 4.
    """
    k = d.size
    z = np.zeros(k, dtype=complex)
    for proj in d.projectors:
        u = proj @ random_vector(r, k)
        u = u / np.linalg.norm(u)
        mag = r.uniform(2.0 * min_comp, 1.0)
        phase = np.exp(2j * np.pi * r.uniform())
        z = z + mag * phase * u
    return ProjectivePoint(z)


def gapped_pair(
    r: np.random.Generator, n: int, m: int
) -> tuple[AtomicMeasure, SpectralDirection]:
    """(measure, direction) on which the flow oracle is sharp at t_max = 40."""
    d = gapped_direction(r, n + 1)
    pts = [point_with_components(r, d) for _ in range(m)]
    w = r.dirichlet(np.full(m, 3.0))
    w = np.maximum(w, 1e-2)
    return AtomicMeasure(pts, w / w.sum()), d


# ---------------------------------------------------------------------------
# verdict-class generators (each asserts the verdict it promises)


def stable_measure(
    r: np.random.Generator, n: int, m: int | None = None, weights: str = "equal"
) -> AtomicMeasure:
    m = m if m is not None else n + 3
    while True:
        nu = random_measure(r, n, m, weights=weights)
        if classify(nu).kind is StabilityKind.STABLE:
            return nu


def unstable_measure(
    r: np.random.Generator, n: int, excess: float = 0.08
) -> tuple[AtomicMeasure, list, float, int]:
    """Measure with a planted over-massive subspace.

    Returns (measure, planted points, planted mass, projective dim d); the
    planted subspace carries mass (d+1)/(n+1) + excess.
    """
    d = int(r.integers(0, n))  # projective dimension of the planted span
    u = random_unitary(r, n + 1)
    inside_dim = d + 1
    inside = []
    for _ in range(inside_dim):
        coeff = random_vector(r, inside_dim)
        inside.append(ProjectivePoint(u[:, :inside_dim] @ coeff))
    outside = [random_point(r, n + 1) for _ in range(n + 2)]
    mass_in = (d + 1) / (n + 1) + excess
    w_in = np.full(inside_dim, mass_in / inside_dim)
    w_out = r.dirichlet(np.full(len(outside), 3.0)) * (1.0 - mass_in)
    nu = AtomicMeasure(inside + outside, np.concatenate([w_in, w_out]))
    verdict = classify(nu)
    assert verdict.kind is StabilityKind.UNSTABLE
    return nu, inside, mass_in, d


def polystable_measure(
    r: np.random.Generator, n: int, move: bool = True
) -> tuple[AtomicMeasure, list[int]]:
    """Measure assembled from a genuine splitting, optionally moved by g.

    Returns (measure, block linear dimensions).  Blocks of linear dimension
    one get a single atom; larger blocks get dim+2 atoms in general position
    inside the block with equal weights (stable inside the block).
    """
    k = n + 1
    for _ in range(20):
        dims: list[int] = []
        left = k
        while left > 0:
            dmax = left if dims else left - 1  # at least two blocks
            d = int(r.integers(1, max(2, dmax + 1)))
            dims.append(d)
            left -= d
        u = random_unitary(r, k)
        pts, ws = [], []
        offset = 0
        for d in dims:
            block = u[:, offset : offset + d]
            offset += d
            mass = d / k
            if d == 1:
                pts.append(ProjectivePoint(block[:, 0]))
                ws.append(mass)
            else:
                count = d + 2
                for _ in range(count):
                    pts.append(ProjectivePoint(block @ random_vector(r, d)))
                ws.extend([mass / count] * count)
        nu = AtomicMeasure(pts, ws)
        if move:
            nu = pushforward(random_group(r, k, max_log_cond=1.0), nu)
        if classify(nu).kind is StabilityKind.POLYSTABLE_NOT_STABLE:
            return nu, dims
    raise AssertionError("could not draw a polystable-not-stable measure")


def semistable_measure(r: np.random.Generator, n: int) -> AtomicMeasure:
    """Boundary measure with no splitting: semistable but not polystable.

    Mass exactly (d+1)/(n+1) sits on a planted subspace; the remaining atoms
    span the whole space generically, so no complementary block exists.
    """
    k = n + 1
    for _ in range(20):
        d = int(r.integers(0, n))
        u = random_unitary(r, k)
        inside_dim = d + 1
        inside = []
        if inside_dim == 1:
            inside.append(ProjectivePoint(u[:, 0]))
        else:
            for _ in range(inside_dim):
                inside.append(
                    ProjectivePoint(u[:, :inside_dim] @ random_vector(r, inside_dim))
                )
        outside = [random_point(r, k) for _ in range(k + 1)]
        w_in = np.full(inside_dim, (d + 1) / (k * inside_dim))
        w_out = np.full(len(outside), (1.0 - (d + 1) / k) / len(outside))
        nu = AtomicMeasure(inside + outside, np.concatenate([w_in, w_out]))
        if classify(nu).kind is StabilityKind.SEMISTABLE_NOT_POLYSTABLE:
            return nu
    raise AssertionError("could not draw a semistable-not-polystable measure")


# ---------------------------------------------------------------------------
# independent oracles


def torus_gradient(nu: AtomicMeasure, theta: np.ndarray) -> np.ndarray:
    """Gradient of the torus objective: sum_i w_i softmax(2 theta + log|z_i|^2)."""
    z = nu.coeff_matrix()
    sq = np.abs(z) ** 2
    lvals = 2.0 * np.asarray(theta)[None, :] + np.log(np.maximum(sq, 1e-300))
    lvals = np.where(sq > 0, lvals, -np.inf)
    shift = lvals.max(axis=1, keepdims=True)
    e = np.exp(lvals - shift)
    p = e / e.sum(axis=1, keepdims=True)
    return nu.weights @ p


def bisection_torus_n1(nu: AtomicMeasure, p0_target: float, tol: float = 1e-13) -> float:
    """Scalar oracle for n = 1: find t with gradient((t,-t))[0] = p0_target."""
    lo, hi = -40.0, 40.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        val = torus_gradient(nu, np.array([mid, -mid]))[0]
        if val < p0_target:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def in_hull(x: np.ndarray, points: np.ndarray, tol: float = 1e-9) -> bool:
    """LP oracle: is x a convex combination of the given points?"""
    count = points.shape[0]
    res = linprog(
        np.zeros(count),
        A_eq=np.vstack([points.T, np.ones((1, count))]),
        b_eq=np.concatenate([np.asarray(x, dtype=float), [1.0]]),
        bounds=[(0.0, None)] * count,
        method="highs",
    )
    return bool(res.success)


def hermitian_exp(a: np.ndarray) -> np.ndarray:
    """Local matrix exponential for Hermitian input (test-side oracle)."""
    vals, vecs = np.linalg.eigh(np.asarray(a, dtype=complex))
    return (vecs * np.exp(vals)) @ vecs.conj().T


def direct_momentum_residual(g: GroupElement, nu: AtomicMeasure) -> float:
    """Recompute ||sum_i w_i P_{g z_i} - Id/(n+1)||_F from scratch."""
    k = nu.dim + 1
    total = np.zeros((k, k), dtype=complex)
    for p, w in nu.atoms:
        v = g.g @ p.coeffs
        v = v / np.linalg.norm(v)
        total += w * np.outer(v, v.conj())
    return float(np.linalg.norm(total - np.eye(k) / k))


def perturbed_stable(
    r: np.random.Generator, nu: AtomicMeasure, margin: float
) -> AtomicMeasure:
    """Perturb points by FS distance margin/(4(n+1)) and weights by margin/4.

    The weight bump is sum-zero with l1 norm exactly margin/4, so the
    perturbed weights remain a probability vector without renormalization
    (which would silently enlarge the perturbation).
    """
    n = nu.dim
    delta = margin / (4.0 * (n + 1))
    new_pts = []
    for p, _ in nu.atoms:
        u = random_vector(r, n + 1)
        u = u - np.vdot(p.coeffs, u) * p.coeffs
        norm = np.linalg.norm(u)
        if norm < 1e-12:
            new_pts.append(p)
            continue
        new_pts.append(
            ProjectivePoint(np.cos(delta) * p.coeffs + np.sin(delta) * (u / norm))
        )
    bump = r.uniform(-1.0, 1.0, size=nu.weights.size)
    bump = bump - bump.mean()
    bump = bump / np.abs(bump).sum() * (margin / 4.0)
    w = nu.weights + bump
    assert w.min() > 0.0, "perturbation bound exceeded a weight"
    return AtomicMeasure(new_pts, w)
