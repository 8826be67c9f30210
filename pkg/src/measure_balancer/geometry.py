"""Points of complex projective space, group actions, and the momentum map.

A point of CP^n is stored as a unit vector in C^(n+1) with a canonical
phase (first coordinate of modulus > 1e-12 made real and positive), so that
equal points have identical coordinates and serialization is stable.  The
momentum of a point [z] is the traceless Hermitian matrix

    mu([z]) = z z* - Id/(n+1)        (z a unit representative),

paired with direction matrices through the real trace form tr(m a).  A
direction is a nonzero traceless Hermitian matrix A; the associated
one-parameter flow is [z] -> [exp(tA) z], whose t -> +infinity limit is the
projection of z onto the top eigenspace of A that it actually meets.

Everything here is plain numpy and single-threaded; objects are treated as
immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInput, NumericalDegeneracy, ZeroDirection

# Tolerance knobs (absolute unless noted). Overridable per call where they
# appear as keyword arguments.
PHASE_PIVOT_TOL = 1e-12  # |z_i| above this counts as the phase pivot
NORM_SKIP_TOL = 1e-14  # skip renormalization when already unit to this
HERMITIAN_TOL = 1e-12  # ||a - a*||_F allowed when validating directions
DEFAULT_CLUSTER_TOL = 1e-10  # relative eigenvalue gap that separates clusters
DEFAULT_COMPONENT_TOL = 1e-12  # spectral component norm that counts as present
MIN_VECTOR_NORM = 1e-150  # below this a vector is treated as numerically zero


def _canonical_vector(coeffs) -> np.ndarray:
    """Normalize and phase-fix a representative vector; exact no-op if done."""
    z = np.asarray(coeffs, dtype=complex).reshape(-1)
    if z.size < 1:
        raise InvalidInput("a projective point needs at least one coordinate")
    if not np.all(np.isfinite(z)):
        raise InvalidInput("projective point coordinates must be finite")
    nrm = float(np.linalg.norm(z))
    if nrm < MIN_VECTOR_NORM:
        raise NumericalDegeneracy("cannot normalize a (numerically) zero vector")
    if abs(nrm - 1.0) > NORM_SKIP_TOL:
        z = z / nrm
    pivots = np.flatnonzero(np.abs(z) > PHASE_PIVOT_TOL)
    if pivots.size == 0:
        raise NumericalDegeneracy("no coordinate exceeds the phase pivot tolerance")
    piv = z[pivots[0]]
    if not (piv.imag == 0.0 and piv.real > 0.0):
        z = z * (piv.conjugate() / abs(piv))
        # Pin the pivot exactly real so canonicalization is a bit-exact no-op
        # on its own output (a rounding residue here would break byte-for-byte
        # round trips of serialized points).
        z[pivots[0]] = abs(piv)
    z.flags.writeable = False
    return z


@dataclass(eq=False)
class ProjectivePoint:
    """A point of CP^n held as a unit, phase-canonical coefficient vector."""

    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = _canonical_vector(self.coeffs)

    @property
    def dim(self) -> int:
        """Projective dimension n of the ambient CP^n."""
        return self.coeffs.size - 1

    def overlap(self, other: "ProjectivePoint") -> float:
        """|<p, q>| in [0, 1]; equals 1 exactly when the points coincide."""
        return float(abs(np.vdot(self.coeffs, other.coeffs)))

    def isclose(self, other: "ProjectivePoint", tol: float = 1e-10) -> bool:
        """Phase-invariant equality test: |<p, q>| >= 1 - tol."""
        return self.overlap(other) >= 1.0 - tol

    def __repr__(self):  # short, round-trippable enough for debugging
        entries = ", ".join(f"{v.real:+.6g}{v.imag:+.6g}j" for v in self.coeffs)
        return f"ProjectivePoint([{entries}])"


def fs_distance(p: ProjectivePoint, q: ProjectivePoint) -> float:
    """Fubini-Study geodesic distance arccos|<p, q>| in [0, pi/2]."""
    return float(np.arccos(min(1.0, p.overlap(q))))


@dataclass(eq=False)
class MomentumMatrix:
    """A traceless Hermitian matrix, the value of the momentum map."""

    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidInput("momentum value must be a square matrix")
        if np.linalg.norm(m - m.conj().T) > 1e-13 * max(1.0, np.linalg.norm(m)):
            raise InvalidInput("momentum value must be Hermitian")
        if abs(np.trace(m)) > 1e-13 * max(1.0, np.linalg.norm(m)):
            raise InvalidInput("momentum value must be traceless")
        m.flags.writeable = False
        self.m = m

    @property
    def norm(self) -> float:
        """Frobenius norm."""
        return float(np.linalg.norm(self.m))

    def pairing(self, d: "SpectralDirection") -> float:
        """Real trace form tr(m . A) against a direction."""
        return float(np.trace(self.m @ d.a).real)


def momentum_of_point(p: ProjectivePoint) -> MomentumMatrix:
    """Momentum mu([z]) = z z* - Id/(n+1) of a single point."""
    z = p.coeffs
    k = z.size
    return MomentumMatrix(np.outer(z, z.conj()) - np.eye(k) / k)


@dataclass(eq=False)
class GroupElement:
    """An element of SL(n+1, C), stored with determinant renormalized to 1."""

    g: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.g, dtype=complex)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise InvalidInput("group element must be a square matrix")
        if not np.all(np.isfinite(g)):
            raise InvalidInput("group element entries must be finite")
        det = np.linalg.det(g)
        if abs(det) < MIN_VECTOR_NORM:
            raise InvalidInput("group element must be invertible")
        if abs(det - 1.0) > 1e-13:
            g = g * det ** (-1.0 / g.shape[0])
        g.flags.writeable = False
        self.g = g

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        """Identity element acting on CP^n."""
        return cls(np.eye(n + 1, dtype=complex))

    @classmethod
    def from_hermitian(cls, a: np.ndarray) -> "GroupElement":
        """exp(a) for a traceless Hermitian a (a positive element)."""
        return cls(herm_exp(a))

    @property
    def size(self) -> int:
        return self.g.shape[0]

    def inverse(self) -> "GroupElement":
        return GroupElement(np.linalg.inv(self.g))

    def compose(self, other: "GroupElement") -> "GroupElement":
        """Matrix product self . other (acts by other first)."""
        return GroupElement(self.g @ other.g)


def herm_exp(a: np.ndarray) -> np.ndarray:
    """Matrix exponential of a Hermitian matrix via eigendecomposition."""
    a = np.asarray(a, dtype=complex)
    vals, vecs = np.linalg.eigh(a)
    return (vecs * np.exp(vals)) @ vecs.conj().T


def act_point(g: GroupElement, p: ProjectivePoint) -> ProjectivePoint:
    """Projective action [z] -> [g z]."""
    w = g.g @ p.coeffs
    if float(np.linalg.norm(w)) < MIN_VECTOR_NORM:
        raise NumericalDegeneracy("group action annihilated the representative")
    return ProjectivePoint(w)


def mu_component(p: ProjectivePoint, d: "SpectralDirection") -> float:
    """Component <mu([z]), A> = z* A z of the momentum along a direction."""
    z = p.coeffs
    return float(np.vdot(z, d.a @ z).real)


@dataclass(eq=False)
class SpectralDirection:
    """A nonzero traceless Hermitian direction with its spectral data.

    ``eigenvalues`` are the distinct (cluster-merged) eigenvalues in strictly
    ascending order; ``projectors[i]`` is the orthogonal projector onto the
    i-th eigenspace and ``multiplicities[i]`` its rank.
    """

    a: np.ndarray
    eigenvalues: np.ndarray
    projectors: list = field(repr=False)
    multiplicities: np.ndarray

    @property
    def size(self) -> int:
        return self.a.shape[0]

    @property
    def levels(self) -> int:
        """Number of distinct eigenvalue clusters."""
        return self.eigenvalues.size

    def scaled(self, factor: float) -> "SpectralDirection":
        """The direction factor*A (factor > 0 keeps the eigenvalue order)."""
        if factor <= 0:
            raise InvalidInput("scaling factor must be positive")
        return SpectralDirection(
            a=self.a * factor,
            eigenvalues=self.eigenvalues * factor,
            projectors=self.projectors,
            multiplicities=self.multiplicities,
        )


def spectral_decompose(
    a, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> SpectralDirection:
    """Validate a direction matrix and split its spectrum into clusters.

    Eigenvalues whose gap is at most cluster_tol * ||a||_F are merged into a
    single cluster (the cluster eigenvalue is their mean).
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInput("direction must be a square matrix")
    if not np.all(np.isfinite(a)):
        raise InvalidInput("direction entries must be finite")
    scale = float(np.linalg.norm(a))
    if scale < 1e-14:
        raise ZeroDirection("direction matrix has (numerically) zero norm")
    if np.linalg.norm(a - a.conj().T) > HERMITIAN_TOL * max(1.0, scale):
        raise InvalidInput("direction matrix must be Hermitian")
    a = (a + a.conj().T) / 2.0
    k = a.shape[0]
    tr = np.trace(a).real
    if abs(tr) > 1e-10 * max(1.0, scale):
        raise InvalidInput("direction matrix must be traceless")
    if tr != 0.0:
        a = a - np.eye(k) * (tr / k)
    vals, vecs = np.linalg.eigh(a)
    gap = cluster_tol * scale
    clusters: list[list[int]] = [[0]]
    for i in range(1, k):
        if vals[i] - vals[i - 1] <= gap:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    eigenvalues = np.array([float(np.mean(vals[c])) for c in clusters])
    projectors = []
    for c in clusters:
        v = vecs[:, c]
        projectors.append(v @ v.conj().T)
    multiplicities = np.array([len(c) for c in clusters], dtype=int)
    a.flags.writeable = False
    return SpectralDirection(
        a=a,
        eigenvalues=eigenvalues,
        projectors=projectors,
        multiplicities=multiplicities,
    )


def direction_from_projectors(
    eigenvalues, projectors, multiplicities
) -> SpectralDirection:
    """Assemble a SpectralDirection from known exact spectral pieces."""
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    a = sum(c * p for c, p in zip(eigenvalues, projectors))
    a = np.asarray(a, dtype=complex)
    a.flags.writeable = False
    return SpectralDirection(
        a=a,
        eigenvalues=eigenvalues,
        projectors=list(projectors),
        multiplicities=np.asarray(multiplicities, dtype=int),
    )


def flow_limit(
    p: ProjectivePoint,
    d: SpectralDirection,
    component_tol: float = DEFAULT_COMPONENT_TOL,
) -> tuple[int, ProjectivePoint]:
    """Limit of [exp(tA) z] as t -> +infinity.

    Returns (stratum index, limit point): the index of the highest eigenvalue
    cluster on which z has a component of norm above component_tol, and the
    normalized projection of z onto that eigenspace.
    """
    comps = [float(np.linalg.norm(proj @ p.coeffs)) for proj in d.projectors]
    idx = -1
    for i, c in enumerate(comps):
        if c > component_tol:
            idx = i
    if idx < 0:
        raise NumericalDegeneracy("point has no spectral component above tolerance")
    return idx, ProjectivePoint(d.projectors[idx] @ p.coeffs)


def flow_point(p: ProjectivePoint, d: SpectralDirection, t: float) -> ProjectivePoint:
    """The flowed point [exp(tA) z], renormalized at evaluation.

    The dominant present eigenvalue is factored out before exponentiation so
    the computation never overflows; components whose relative factor
    underflows to zero are exactly the ones the limit discards.
    """
    parts = [proj @ p.coeffs for proj in d.projectors]
    norms = np.array([np.linalg.norm(q) for q in parts])
    present = norms > 0.0
    if not present.any():
        raise NumericalDegeneracy("point has no nonzero spectral component")
    shift = float(np.max(d.eigenvalues[present]))
    w = np.zeros_like(p.coeffs)
    for c, q in zip(d.eigenvalues, parts):
        factor = np.exp((c - shift) * t)
        w = w + factor * q
    if float(np.linalg.norm(w)) < MIN_VECTOR_NORM:
        raise NumericalDegeneracy("flowed representative underflowed to zero")
    return ProjectivePoint(w)


def traceless_hermitian_basis(size: int) -> list[np.ndarray]:
    """Orthonormal basis of traceless Hermitian size x size matrices.

    Off-diagonal symmetric/antisymmetric pairs (already orthonormal under the
    trace form) followed by the Gram-Schmidt-orthonormalized chain of
    consecutive diagonal differences.  Length is size^2 - 1.
    """
    if size < 2:
        raise InvalidInput("need size >= 2 for a nontrivial traceless basis")
    basis: list[np.ndarray] = []
    for j in range(size):
        for k in range(j + 1, size):
            sym = np.zeros((size, size), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0 / np.sqrt(2.0)
            basis.append(sym)
            skw = np.zeros((size, size), dtype=complex)
            skw[j, k] = -1j / np.sqrt(2.0)
            skw[k, j] = 1j / np.sqrt(2.0)
            basis.append(skw)
    for j in range(size - 1):
        d = np.zeros((size, size), dtype=complex)
        d[j, j] = 1.0
        d[j + 1, j + 1] = -1.0
        for b in basis[size * (size - 1):]:  # previously added diagonal elements
            d = d - np.trace(d @ b).real * b
        d = d / np.linalg.norm(d)
        basis.append(d)
    return basis


def random_direction_matrices(count: int, size: int, seed: int = 0) -> np.ndarray:
    """Sample GUE-style directions: Hermitian Gaussian, traceless, unit norm.

    Uses numpy's PCG64 generator, so draws are portable across platforms for
    a fixed seed.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    out = np.empty((count, size, size), dtype=complex)
    for i in range(count):
        x = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
        h = (x + x.conj().T) / 2.0
        h -= np.eye(size) * (np.trace(h).real / size)
        nrm = np.linalg.norm(h)
        if nrm < 1e-12:  # astronomically unlikely; resample deterministically
            h = np.diag([1.0] + [0.0] * (size - 2) + [-1.0]).astype(complex)
            nrm = np.linalg.norm(h)
        out[i] = h / nrm
    return out


def random_directions(
    count: int,
    n: int,
    seed: int = 0,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> list[SpectralDirection]:
    """Seeded random directions on CP^n, decomposed and ready to use."""
    mats = random_direction_matrices(count, n + 1, seed=seed)
    return [spectral_decompose(a, cluster_tol=cluster_tol) for a in mats]
