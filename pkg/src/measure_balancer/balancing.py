"""Solvers that move a measure to a prescribed momentum value.

Balancing solves F(g.nu) = 0 over g in SL(n+1, C).  Writing g = S^(1/2) for
a positive definite Hermitian S of determinant 1, the zero-momentum equation
becomes the fixed-point condition

    S = det(R(S))^(1/(n+1)) * R(S)^(-1),
    R(S) = sum_i w_i z_i z_i* / (z_i* S z_i),

iterated directly (the default), or the Kempf-Ness energy
Psi(nu, g) = sum w_i log||g z_i|| is minimized by geodesic steepest descent
g <- exp(-s F(g.nu)) g with Armijo backtracking.  A stable measure has a
unique balanced S; an unstable or boundary-semistable one drives cond(S) to
infinity, detected and certified by the subspace its small eigenvectors
collapse onto.

For an interior target state rho (positive definite, trace 1) the equation
F(g.nu) = rho - Id/(n+1) is solved by Newton steps on the direction
coefficients, using the Gram operator of the momentum derivative.  The
diagonal-torus version (targets on the momentum polytope of the coordinate
torus) is a damped Newton solve of a convex log-sum-exp objective.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import (
    DegenerateHull,
    InvalidInput,
    MaxIterations,
    NotPositiveTarget,
    NotStable,
    NumericalDegeneracy,
    SingularGram,
    TargetOutsidePolytope,
    TooManyAtoms,
)
from .geometry import (
    GroupElement,
    SpectralDirection,
    herm_exp,
    traceless_hermitian_basis,
)
from .measures import AtomicMeasure
from .stability import StabilityKind, Subspace, classify
from .weights import span_basis

VERDICT_CONVERGED = "converged"
VERDICT_DIVERGED = "diverged"
VERDICT_MAX_ITERATIONS = "max-iterations"

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 2000
COND_LIMIT = 1e12  # cond(S) beyond this certifies divergence
MIN_DAMPING = 2.0**-10
MIN_STEP = 2.0**-40
ARMIJO_C = 1e-4


@dataclass(eq=False)
class BalanceResult:
    """Outcome of a balancing or target solve.

    ``trace`` holds one (iteration, residual, kempf_ness value) triple per
    iteration, including the starting state.  For the zero-momentum solvers
    ``g`` is the canonical Hermitian positive square root; for nonzero
    targets it is the composed group element (a polar representative would
    conjugate the momentum away from the target).
    """

    g: GroupElement
    residual: float
    iterations: int
    trace: list
    verdict: str
    certificate: Subspace | None = None


@dataclass(eq=False)
class TorusSolveResult:
    theta: np.ndarray
    residual: float
    iterations: int
    converged: bool


def _herm_sqrt(s: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(s)
    vals = np.maximum(vals, 0.0)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def _det_normalize(s: np.ndarray) -> np.ndarray:
    sign, logdet = np.linalg.slogdet(s)
    return s * np.exp(-logdet / s.shape[0])


def _start_state(nu: AtomicMeasure, start) -> np.ndarray:
    k = nu.dim + 1
    if start is None:
        return np.eye(k, dtype=complex)
    if isinstance(start, GroupElement):
        g0 = start.g
    else:
        g0 = GroupElement(start).g
    if g0.shape[0] != k:
        raise InvalidInput("start element size does not match the measure")
    return _det_normalize(g0.conj().T @ g0)


def _tyler_state(z: np.ndarray, w: np.ndarray, s: np.ndarray):
    """q_i = z_i* S z_i, the reweighted scatter R, residual and energy at S."""
    k = s.shape[0]
    q = np.einsum("ma,ab,mb->m", z.conj(), s, z).real
    if np.any(q <= 0.0) or not np.all(np.isfinite(q)):
        return q, None, None, np.inf, np.inf
    r_mat = (z.T * (w / q)) @ z.conj()
    s_half = _herm_sqrt(s)
    mom = s_half @ r_mat @ s_half - np.eye(k) / k
    residual = float(np.linalg.norm(mom))
    energy = 0.5 * float(w @ np.log(q))
    return q, r_mat, s_half, residual, energy


def _full_span_certificate(nu: AtomicMeasure) -> Subspace:
    q = span_basis(nu.points)
    return Subspace(
        basis=q, atom_indices=tuple(range(nu.atom_count)), mass=1.0
    )


def _divergence_certificate(nu: AtomicMeasure, s: np.ndarray) -> Subspace:
    """Subspace the diverging S collapses onto, with its mass violation.

    Scans spans of the atoms lying in the small-eigenvalue eigenspaces of S
    and returns the one with the largest mass excess; falls back to the
    classifier's certificate when no scanned span shows one.
    """
    k = nu.dim + 1
    z = nu.coeff_matrix()
    vals, vecs = np.linalg.eigh(s)
    best = None
    best_viol = -np.inf
    for j in range(1, k):
        q_small = vecs[:, :j]
        resid = z.T - q_small @ (q_small.conj().T @ z.T)
        inside = np.linalg.norm(resid, axis=0) <= 1e-8
        if not inside.any():
            continue
        members = tuple(int(i) for i in np.flatnonzero(inside))
        pts = [nu.points[i] for i in members]
        q_span = span_basis(pts)
        if q_span.shape[1] >= k:
            continue
        mass = float(nu.weights[list(members)].sum())
        viol = mass - q_span.shape[1] / k
        if viol > best_viol:
            best_viol = viol
            best = Subspace(basis=q_span, atom_indices=members, mass=mass)
    if best is not None and best_viol >= -1e-9:
        return best
    try:
        verdict = classify(nu)
        if verdict.certificate is not None:
            return verdict.certificate
    except TooManyAtoms:
        pass
    if best is None:  # no atoms in the collapsing eigenspace at all
        best = _full_span_certificate(nu)
    return best


def _tyler_balance(nu, tol, max_iter, start) -> BalanceResult:
    k = nu.dim + 1
    z = nu.coeff_matrix()
    w = nu.weights
    sv = np.linalg.svd(z, compute_uv=False)
    s = _start_state(nu, start)
    q, r_mat, s_half, residual, energy = _tyler_state(z, w, s)
    trace = [(0, residual, energy)]
    if z.shape[0] < k or sv[-1] <= 1e-10 * sv[0]:
        # atoms span a proper subspace: full mass on it, nothing to balance
        return BalanceResult(
            g=GroupElement(s_half),
            residual=residual,
            iterations=0,
            trace=trace,
            verdict=VERDICT_DIVERGED,
            certificate=_full_span_certificate(nu),
        )
    if residual <= tol:
        return BalanceResult(
            g=GroupElement(s_half),
            residual=residual,
            iterations=0,
            trace=trace,
            verdict=VERDICT_CONVERGED,
        )
    damping = 1.0
    for it in range(1, max_iter + 1):
        s_prop = _det_normalize(np.linalg.inv(r_mat))
        s_prop = (s_prop + s_prop.conj().T) / 2.0
        # Accept a step unless the residual grows meaningfully: divergent
        # iterates often hold the residual constant while S degenerates, and
        # rejecting ulp-level wobble would stall them short of the
        # condition-number certificate.
        while True:
            if damping >= 1.0:
                cand = s_prop
            else:
                cand = _det_normalize((1.0 - damping) * s + damping * s_prop)
            out = _tyler_state(z, w, cand)
            accept_band = residual + max(1e-9 * residual, 1e-14)
            if out[3] <= accept_band or damping <= MIN_DAMPING:
                break
            damping /= 2.0
        damping = min(1.0, damping * 2.0)
        s = cand
        q, r_mat, s_half, residual, energy = out
        trace.append((it, residual, energy))
        if not np.isfinite(residual):
            return BalanceResult(
                g=GroupElement(np.eye(k, dtype=complex)),
                residual=float(residual),
                iterations=it,
                trace=trace,
                verdict=VERDICT_DIVERGED,
                certificate=_divergence_certificate(nu, s),
            )
        if residual <= tol:
            return BalanceResult(
                g=GroupElement(s_half),
                residual=residual,
                iterations=it,
                trace=trace,
                verdict=VERDICT_CONVERGED,
            )
        vals = np.linalg.eigvalsh(s)
        if vals[0] <= 0.0 or vals[-1] / vals[0] > COND_LIMIT:
            return BalanceResult(
                g=GroupElement(s_half),
                residual=residual,
                iterations=it,
                trace=trace,
                verdict=VERDICT_DIVERGED,
                certificate=_divergence_certificate(nu, s),
            )
    return BalanceResult(
        g=GroupElement(s_half),
        residual=residual,
        iterations=max_iter,
        trace=trace,
        verdict=VERDICT_MAX_ITERATIONS,
    )


def _descent_state(z, w, k, g):
    moved = (g @ z.T).T
    norms = np.linalg.norm(moved, axis=1)
    if np.any(norms < 1e-150):
        raise NumericalDegeneracy("an atom representative underflowed")
    unit = moved / norms[:, None]
    mom = (unit.T * w) @ unit.conj() - np.eye(k) / k
    residual = float(np.linalg.norm(mom))
    energy = float(w @ np.log(norms))
    return mom, residual, energy


def _descent_balance(nu, tol, max_iter, start) -> BalanceResult:
    k = nu.dim + 1
    z = nu.coeff_matrix()
    w = nu.weights
    if start is None:
        g = np.eye(k, dtype=complex)
    else:
        g = start.g if isinstance(start, GroupElement) else GroupElement(start).g
    sv = np.linalg.svd(z, compute_uv=False)
    if z.shape[0] < k or sv[-1] <= 1e-10 * sv[0]:
        s_half = _herm_sqrt(_det_normalize(g.conj().T @ g))
        mom, residual, energy = _descent_state(z, w, k, s_half)
        return BalanceResult(
            g=GroupElement(s_half),
            residual=residual,
            iterations=0,
            trace=[(0, residual, energy)],
            verdict=VERDICT_DIVERGED,
            certificate=_full_span_certificate(nu),
        )
    trace = []
    verdict = VERDICT_MAX_ITERATIONS
    iterations = max_iter
    for it in range(max_iter + 1):
        mom, residual, energy = _descent_state(z, w, k, g)
        trace.append((it, residual, energy))
        if residual <= tol:
            verdict = VERDICT_CONVERGED
            iterations = it
            break
        s_now = _det_normalize(g.conj().T @ g)
        vals = np.linalg.eigvalsh(s_now)
        if vals[0] <= 0.0 or vals[-1] / vals[0] > COND_LIMIT:
            s_half = _herm_sqrt(s_now)
            return BalanceResult(
                g=GroupElement(s_half),
                residual=residual,
                iterations=it,
                trace=trace,
                verdict=VERDICT_DIVERGED,
                certificate=_divergence_certificate(nu, s_now),
            )
        if it == max_iter:
            break
        slope = residual * residual  # -d/ds Psi along the steepest direction
        step = 1.0
        accepted = False
        while step >= MIN_STEP:
            g_try = herm_exp(-step * mom) @ g
            _, residual_try, energy_try = _descent_state(z, w, k, g_try)
            needed = ARMIJO_C * step * slope
            # Near the minimum the Armijo decrease falls below the energy's
            # floating-point resolution; switch to the residual, which stays
            # resolvable down to the stopping tolerance.
            if energy_try <= energy - needed or (
                needed <= 1e-14 * max(1.0, abs(energy)) and residual_try < residual
            ):
                accepted = True
                break
            step /= 2.0
        if not accepted:  # flat to machine precision; cannot make progress
            iterations = it
            break
        g = GroupElement(g_try).g
    s_half = _herm_sqrt(_det_normalize(g.conj().T @ g))
    mom, residual, _ = _descent_state(z, w, k, s_half)
    return BalanceResult(
        g=GroupElement(s_half),
        residual=residual,
        iterations=iterations,
        trace=trace,
        verdict=verdict,
        certificate=None,
    )


def balance(
    nu: AtomicMeasure,
    target_rho: np.ndarray | None = None,
    method: str = "fixed-point",
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    start: GroupElement | None = None,
) -> BalanceResult:
    """Move nu to zero momentum (or to a given target state).

    Parameters
    ----------
    nu : AtomicMeasure
    target_rho : optional (n+1, n+1) positive definite trace-1 matrix; when
        given the solve is delegated to :func:`solve_target`.
    method : "fixed-point" (default) or "geodesic-descent".
    tol : momentum residual (Frobenius) declared converged.
    max_iter : iteration cap.
    start : optional GroupElement used as the starting iterate.
    """
    if target_rho is not None:
        return solve_target(nu, target_rho, tol=tol, max_iter=max_iter, start=start)
    key = method.replace("_", "-").lower()
    if key in ("fixed-point", "fixedpoint"):
        return _tyler_balance(nu, tol, max_iter, start)
    if key in ("geodesic-descent", "descent", "geodesicdescent"):
        return _descent_balance(nu, tol, max_iter, start)
    raise InvalidInput(f"unknown balancing method {method!r}")


def _gram_from_arrays(z: np.ndarray, w: np.ndarray, mats: list) -> np.ndarray:
    """Gram matrix of momentum derivatives for unit atom rows z."""
    count = len(mats)
    az = [z @ a.T for a in mats]  # row i of z @ a.T is (a z_i)^T
    mus = [np.einsum("mc,mc->m", z.conj(), azj).real for azj in az]
    gram = np.empty((count, count))
    for j in range(count):
        for l in range(j, count):
            dots = np.einsum("mc,mc->m", az[j].conj(), az[l]).real
            val = 2.0 * float(w @ (dots - mus[j] * mus[l]))
            gram[j, l] = gram[l, j] = val
    return gram


def gram_operator(nu: AtomicMeasure, basis: list) -> np.ndarray:
    """Symmetric positive semidefinite Gram matrix of momentum derivatives.

    Entry (j, l) is sum_i w_i 2 Re[(A_j z_i)* (Id - z_i z_i*) (A_l z_i)], the
    L^2 pairing of the fundamental vector fields of the basis directions;
    it equals d/dt <F(exp(t A_j).nu), A_l> at t = 0.
    """
    mats = [
        b.a if isinstance(b, SpectralDirection) else np.asarray(b, dtype=complex)
        for b in basis
    ]
    for a in mats:
        if a.shape != (nu.dim + 1, nu.dim + 1):
            raise InvalidInput("basis direction size does not match the measure")
    return _gram_from_arrays(nu.coeff_matrix(), nu.weights, mats)


def _validate_target(rho, k: int) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (k, k):
        raise InvalidInput(f"target state must be a {k}x{k} matrix")
    if not np.all(np.isfinite(rho)):
        raise InvalidInput("target state entries must be finite")
    if np.linalg.norm(rho - rho.conj().T) > 1e-12 * max(1.0, np.linalg.norm(rho)):
        raise InvalidInput("target state must be Hermitian")
    rho = (rho + rho.conj().T) / 2.0
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise InvalidInput("target state must have unit trace")
    if np.linalg.eigvalsh(rho)[0] < 1e-10:
        raise NotPositiveTarget(
            "target state must be positive definite (eigenvalues >= 1e-10)"
        )
    return rho


def solve_target(
    nu: AtomicMeasure,
    rho,
    tol: float = DEFAULT_TOL,
    max_iter: int = 200,
    start: GroupElement | None = None,
    tol_eq: float = 1e-9,
) -> BalanceResult:
    """Solve F(g.nu) = rho - Id/(n+1) for an interior target state rho.

    Requires nu stable (checked first).  Newton steps on direction
    coefficients use the Gram operator of the momentum derivative at the
    current configuration, with Armijo backtracking on the squared residual.
    """
    k = nu.dim + 1
    rho = _validate_target(rho, k)
    verdict = classify(nu, tol_eq=tol_eq)
    if verdict.kind is not StabilityKind.STABLE:
        raise NotStable(f"target solve needs a stable measure, got {verdict.kind.value}")
    beta = rho - np.eye(k) / k
    basis = traceless_hermitian_basis(k)
    z = nu.coeff_matrix()
    w = nu.weights
    if start is None:
        g = np.eye(k, dtype=complex)
    else:
        g = start.g if isinstance(start, GroupElement) else GroupElement(start).g

    def state(gmat):
        moved = (gmat @ z.T).T
        norms = np.linalg.norm(moved, axis=1)
        if np.any(norms < 1e-150):
            raise NumericalDegeneracy("an atom representative underflowed")
        unit = moved / norms[:, None]
        mom = (unit.T * w) @ unit.conj() - np.eye(k) / k
        residual = float(np.linalg.norm(mom - beta))
        energy = float(w @ np.log(norms))
        return unit, mom, residual, energy

    trace = []
    unit, mom, residual, energy = state(g)
    for it in range(max_iter + 1):
        trace.append((it, residual, energy))
        if residual <= tol:
            return BalanceResult(
                g=GroupElement(g),
                residual=residual,
                iterations=it,
                trace=trace,
                verdict=VERDICT_CONVERGED,
            )
        if it == max_iter:
            break
        gram = _gram_from_arrays(unit, w, basis)
        rhs = np.array([np.trace((beta - mom) @ a).real for a in basis])
        try:
            cond = np.linalg.cond(gram)
            if not np.isfinite(cond) or cond > 1e14:
                raise SingularGram(
                    f"Gram operator condition number {cond:.3e} is too large"
                )
            coeffs = np.linalg.solve(gram, rhs)
        except np.linalg.LinAlgError as exc:
            raise SingularGram("Gram operator solve failed") from exc
        direction = sum(c * a for c, a in zip(coeffs, basis))
        target_sq = residual * residual
        step = 1.0
        accepted = False
        while step >= MIN_STEP:
            g_try = herm_exp(step * direction) @ g
            g_try = GroupElement(g_try).g
            try:
                out = state(g_try)
            except NumericalDegeneracy:
                step /= 2.0
                continue
            if out[2] ** 2 <= (1.0 - ARMIJO_C * step) * target_sq:
                accepted = True
                break
            step /= 2.0
        if not accepted:
            break
        g = g_try
        unit, mom, residual, energy = out
    return BalanceResult(
        g=GroupElement(g),
        residual=residual,
        iterations=min(len(trace) - 1, max_iter),
        trace=trace,
        verdict=VERDICT_MAX_ITERATIONS,
    )


# ---------------------------------------------------------------------------
# torus solver


def _sum_zero_basis(k: int) -> np.ndarray:
    """Orthonormal basis (columns) of the sum-zero subspace of R^k."""
    full = np.eye(k)
    ones = np.ones((k, 1)) / np.sqrt(k)
    qmat, _ = np.linalg.qr(np.hstack([ones, full]))
    return qmat[:, 1:k]


def _check_torus_target(w, support, p_target):
    """Strict-interior membership of the target in the reachable polytope.

    The reachable set is the Minkowski combination sum_i w_i Delta(S_i) of
    simplices on each atom's coordinate support; strict interiority is
    certified by an LP maximizing the floor delta of all support
    coordinates q_ij >= delta.
    """
    m, k = support.shape
    covered = support.any(axis=0)
    for j in range(k):
        if not covered[j] and abs(p_target[j]) > 1e-12:
            raise TargetOutsidePolytope(
                f"coordinate {j} is unreachable (no atom touches it)"
            )
    var_index = {}
    for i in range(m):
        for j in range(k):
            if support[i, j]:
                var_index[(i, j)] = len(var_index)
    nvar = len(var_index)
    c = np.zeros(nvar + 1)
    c[-1] = -1.0  # maximize delta
    a_eq = []
    b_eq = []
    for i in range(m):
        row = np.zeros(nvar + 1)
        for j in range(k):
            if support[i, j]:
                row[var_index[(i, j)]] = 1.0
        a_eq.append(row)
        b_eq.append(1.0)
    for j in range(k):
        if not covered[j]:
            continue
        row = np.zeros(nvar + 1)
        for i in range(m):
            if support[i, j]:
                row[var_index[(i, j)]] = w[i]
        a_eq.append(row)
        b_eq.append(p_target[j])
    a_ub = np.zeros((nvar, nvar + 1))
    for idx in range(nvar):
        a_ub[idx, idx] = -1.0
        a_ub[idx, -1] = 1.0
    res = linprog(
        c,
        A_ub=a_ub,
        b_ub=np.zeros(nvar),
        A_eq=np.array(a_eq),
        b_eq=np.array(b_eq),
        bounds=[(0.0, 1.0)] * nvar + [(0.0, 1.0)],
        method="highs",
    )
    if not res.success or -res.fun <= 1e-9:
        raise TargetOutsidePolytope(
            "target is outside (or on the boundary of) the reachable polytope"
        )


def torus_solve(
    nu: AtomicMeasure,
    beta,
    tol: float = DEFAULT_TOL,
    max_iter: int = 200,
) -> TorusSolveResult:
    """Find theta (sum zero) with diag-momentum target beta.

    Minimizes f(theta) - <beta + 1/(n+1), theta> where
    f(theta) = sum_i w_i (1/2) log(sum_j e^(2 theta_j) |z_ij|^2) by damped
    Newton on the sum-zero subspace.  The target must lie strictly inside
    the reachable polytope (LP-checked); MaxIterations is raised when the
    cap is hit, as happens for targets approaching the boundary.
    """
    k = nu.dim + 1
    beta = np.asarray(beta, dtype=float).reshape(-1)
    if beta.size != k:
        raise InvalidInput(f"beta must have n+1 = {k} components")
    if not np.all(np.isfinite(beta)):
        raise InvalidInput("beta components must be finite")
    if abs(beta.sum()) > 1e-9:
        raise InvalidInput("beta components must sum to zero")
    beta = beta - beta.sum() / k
    p_target = beta + 1.0 / k
    z = nu.coeff_matrix()
    w = nu.weights
    sq = np.abs(z) ** 2  # (m, k)
    support = np.abs(z) > 1e-12
    _check_torus_target(w, support, p_target)
    with np.errstate(divide="ignore"):
        log_sq = np.where(support, np.log(np.where(support, sq, 1.0)), -np.inf)
    reduced = _sum_zero_basis(k)
    theta = np.zeros(k)

    def state(th):
        lvals = 2.0 * th[None, :] + log_sq
        shift = lvals.max(axis=1)
        expd = np.exp(lvals - shift[:, None])
        denom = expd.sum(axis=1)
        p = expd / denom[:, None]
        grad = w @ p
        value = float(w @ (0.5 * (np.log(denom) + shift)))
        objective = value - float(p_target @ th)
        resvec = grad - p_target
        return p, resvec, float(np.linalg.norm(resvec)), objective

    p, resvec, residual, objective = state(theta)
    for it in range(max_iter + 1):
        if residual <= tol:
            return TorusSolveResult(
                theta=theta, residual=residual, iterations=it, converged=True
            )
        if it == max_iter:
            break
        hess = 2.0 * (np.diag(w @ p) - p.T @ (w[:, None] * p))
        hred = reduced.T @ hess @ reduced
        hred = hred + np.eye(k - 1) * 1e-14 * max(1.0, float(np.abs(hred).max()))
        try:
            dred = np.linalg.solve(hred, -(reduced.T @ resvec))
        except np.linalg.LinAlgError:
            dred, *_ = np.linalg.lstsq(hred, -(reduced.T @ resvec), rcond=None)
        step_dir = reduced @ dred
        slope = float(resvec @ step_dir)
        if slope >= 0.0:  # fall back to plain gradient descent direction
            step_dir = -(resvec - resvec.mean())
            slope = float(resvec @ step_dir)
        step = 1.0
        accepted = False
        while step >= MIN_STEP:
            theta_try = theta + step * step_dir
            theta_try = theta_try - theta_try.mean()
            out = state(theta_try)
            if out[3] <= objective + ARMIJO_C * step * slope:
                accepted = True
                break
            step /= 2.0
        if not accepted:
            break
        theta = theta_try
        p, resvec, residual, objective = out
    raise MaxIterations(
        f"torus solve residual {residual:.3e} after {max_iter} iterations",
        theta=theta,
        residual=residual,
    )


def _in_hull(x: np.ndarray, others: np.ndarray) -> bool:
    """LP feasibility: is x a convex combination of the given points?"""
    count = others.shape[0]
    a_eq = np.vstack([others.T, np.ones((1, count))])
    b_eq = np.concatenate([x, [1.0]])
    res = linprog(
        np.zeros(count),
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(0.0, None)] * count,
        method="highs",
    )
    return bool(res.success)


def polytope_centroid_shift(vertex_images) -> np.ndarray:
    """Average of the distinct vertices of the convex hull of the inputs.

    Used to recenter torus targets: subtracting the shift moves the centroid
    of the vertex images to the origin.  Raises DegenerateHull when all
    points coincide.
    """
    pts = np.asarray(vertex_images, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise InvalidInput("vertex_images must be a non-empty list of real vectors")
    if not np.all(np.isfinite(pts)):
        raise InvalidInput("vertex images must be finite")
    distinct: list[np.ndarray] = []
    for row in pts:
        if not any(np.max(np.abs(row - q)) <= 1e-12 for q in distinct):
            distinct.append(row)
    if len(distinct) == 1:
        raise DegenerateHull("all vertex images coincide")
    arr = np.array(distinct)
    extreme = []
    for i in range(arr.shape[0]):
        others = np.delete(arr, i, axis=0)
        if not _in_hull(arr[i], others):
            extreme.append(arr[i])
    if not extreme:  # numerically everything looked interior; degenerate data
        raise DegenerateHull("no extreme points could be identified")
    return np.mean(np.array(extreme), axis=0)
