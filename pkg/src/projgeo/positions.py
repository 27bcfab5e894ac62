"""Classical positions of convex bodies and the associated certificates.

Every operator returns a :class:`PositionResult` describing the affine map
``x -> scale * transform @ (x - shift)`` with a unimodular linear part
(|det transform| = 1), together with a residual that certifies how close the
positioned body is to the defining fixed-point condition:

* minimal surface area: the normalized surface-area measure is isotropic,
  residual = ||n M - I||_F with M = (1/S) sum_i a_i u_i u_i^T;
* isotropic: the covariance of the volume-1 body is L^2 I, computed in closed
  form from the exact covariance (residual is roundoff);
* John / Loewner: largest inscribed / smallest circumscribed ellipsoid, the
  residual is the relative KKT stationarity / dual gap of the solver;
* minimal mean width: first-order condition w(K) = n E[<xi, theta>^2 h(theta)]
  for every xi, estimated on the optimization sample set (best effort).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize, nnls

from .bodyops import Body, support_points, to_polytope, transform_body
from .polytope import Polytope, centroid_and_covariance, inradius, polar
from .quermass import omega
from .sampling import RngSeed, sphere_points


@dataclass(frozen=True)
class Ellipsoid:
    """The set {x : (x - center)^T shape^{-1} (x - center) <= 1} with shape SPD."""

    shape: np.ndarray
    center: np.ndarray

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    def volume(self) -> float:
        return omega(self.dim) * float(np.sqrt(np.linalg.det(self.shape)))

    def radii(self) -> np.ndarray:
        """Semi-axis lengths, descending."""
        return np.sqrt(np.linalg.eigvalsh(self.shape))[::-1]


@dataclass(frozen=True)
class PositionResult:
    """An affine position map x -> scale * transform @ (x - shift)."""

    transform: np.ndarray
    residual: float
    objective: float
    iterations: int
    converged: bool
    scale: float = 1.0
    shift: np.ndarray = field(default=None)  # type: ignore[assignment]
    history: tuple = ()  # objective value at each accepted iterate

    def __post_init__(self):
        if self.shift is None:
            object.__setattr__(self, "shift", np.zeros(self.transform.shape[0]))

    def apply(self, body: Body) -> Body:
        return transform_body(body, self.transform, self.shift, self.scale)


def _unimodular(matrix: np.ndarray) -> np.ndarray:
    det = abs(float(np.linalg.det(matrix)))
    return matrix / det ** (1.0 / matrix.shape[0])


# ---------------------------------------------------------------------------
# minimal surface area


def minimal_surface_position(body: Body, tol: float = 1e-6, max_iter: int = 500,
                             step_power: float = 0.5) -> tuple[PositionResult, float]:
    """Damped fixed-point iteration for the minimal surface area position.

    Pushes the surface-area measure toward isotropy by the volume-preserving
    step A = (n M)^step_power; the measure of the image is transported in
    closed form (u -> A^{-T}u normalized, a -> a ||A^{-T}u||), so no hulls are
    rebuilt inside the loop.  Returns the position and the minimal surface
    quotient S(TK)/|TK|^{(n-1)/n}.
    """
    meas = body.surface_measure()
    normals = meas.normals.copy()
    weights = meas.weights.copy()
    n = body.dim
    eye = np.eye(n)
    total_transform = eye.copy()
    residual = np.inf
    iterations = 0
    converged = False
    for iterations in range(max_iter + 1):
        total = weights.sum()
        moment = (normals * weights[:, None]).T @ normals / total
        residual = float(np.linalg.norm(n * moment - eye))
        if residual < tol:
            converged = True
            break
        if iterations == max_iter:
            break
        eigval, eigvec = np.linalg.eigh(n * moment)
        eigval = np.clip(eigval, 1e-12, None)
        step = (eigvec * eigval ** step_power) @ eigvec.T
        step /= np.linalg.det(step) ** (1.0 / n)
        back = np.linalg.inv(step).T
        moved = normals @ back.T
        lengths = np.linalg.norm(moved, axis=1)
        normals = moved / lengths[:, None]
        weights = weights * lengths
        total_transform = _unimodular(step @ total_transform)
    surface = float(weights.sum())
    volume = body.volume()
    quotient = surface / volume ** ((n - 1) / n)
    result = PositionResult(transform=total_transform, residual=residual,
                            objective=surface, iterations=iterations,
                            converged=converged)
    return result, quotient


def minimal_surface_quotient(body: Body, tol: float = 1e-6, max_iter: int = 500) -> float:
    """S(TK)/|TK|^{(n-1)/n} at the minimal surface area position."""
    return minimal_surface_position(body, tol=tol, max_iter=max_iter)[1]


# ---------------------------------------------------------------------------
# isotropic


def isotropic_position(body: Body) -> tuple[PositionResult, float]:
    """Closed-form isotropic position (volume 1, centered, covariance L^2 I).

    Returns the affine map and the isotropic constant L of the body.
    """
    poly = to_polytope(body)
    n = poly.dim
    centroid, cov = centroid_and_covariance(poly)
    volume = poly.volume()
    cov1 = cov / volume ** (2.0 / n)
    constant = float(np.linalg.det(cov1)) ** (1.0 / (2 * n))
    eigval, eigvec = np.linalg.eigh(cov1)
    whiten = (eigvec * eigval ** -0.5) @ eigvec.T
    linear = constant * whiten
    scale = volume ** (-1.0 / n)
    placed_cov = (scale * linear) @ cov @ (scale * linear).T
    residual = float(np.linalg.norm(placed_cov / constant ** 2 - np.eye(n)))
    result = PositionResult(transform=linear, residual=residual,
                            objective=constant, iterations=1, converged=True,
                            scale=scale, shift=centroid)
    return result, constant


# ---------------------------------------------------------------------------
# Loewner (smallest circumscribed ellipsoid)


def lowner_position(body: Body, tol: float = 1e-7,
                    max_iter: int = 500_000) -> tuple[PositionResult, Ellipsoid]:
    """Minimum-volume enclosing ellipsoid by Frank-Wolfe with away steps.

    The residual is the relative violation of the optimality condition
    max_i M_i <= (1 + tol)(n + 1), min over support M_i >= (1 - tol)(n + 1).
    The returned position maps the ellipsoid to the unit ball.
    """
    points = to_polytope(body).vertices
    count, n = points.shape
    lifted = np.hstack([points, np.ones((count, 1))])
    u = np.full(count, 1.0 / count)
    d1 = n + 1
    iterations = 0
    residual = np.inf
    for iterations in range(max_iter):
        scatter = lifted.T @ (lifted * u[:, None])
        inv = np.linalg.inv(scatter)
        levels = np.einsum("ij,jk,ik->i", lifted, inv, lifted)
        hi = int(np.argmax(levels))
        support = u > 0
        lo_idx = np.flatnonzero(support)
        lo = lo_idx[int(np.argmin(levels[lo_idx]))]
        eps_hi = levels[hi] / d1 - 1.0
        eps_lo = 1.0 - levels[lo] / d1
        residual = max(eps_hi, eps_lo)
        if residual < tol:
            break
        if eps_hi >= eps_lo:
            m = levels[hi]
            lam = (m - d1) / (d1 * (m - 1.0))
            u *= 1.0 - lam
            u[hi] += lam
        else:
            m = levels[lo]
            lam = (d1 - m) / (d1 * (m - 1.0))
            lam = min(lam, u[lo] / (1.0 - u[lo]))
            u *= 1.0 + lam
            u[lo] -= lam
            u = np.maximum(u, 0.0)
    center = points.T @ u
    scatter_c = points.T @ (points * u[:, None]) - np.outer(center, center)
    shape = n * scatter_c
    ellipsoid = Ellipsoid(shape=shape, center=center)
    eigval, eigvec = np.linalg.eigh(shape)
    eigval = np.clip(eigval, 1e-300, None)
    whiten = (eigvec * eigval ** -0.5) @ eigvec.T
    scale = float(np.linalg.det(whiten)) ** (1.0 / n)
    result = PositionResult(transform=whiten / scale, residual=float(residual),
                            objective=ellipsoid.volume(), iterations=iterations,
                            converged=residual < tol, scale=scale, shift=center)
    return result, ellipsoid


# ---------------------------------------------------------------------------
# John (largest inscribed ellipsoid)


def _sym_to_vec(mat: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    iu = np.triu_indices(n)
    weights = np.where(iu[0] == iu[1], 1.0, np.sqrt(2.0))
    return mat[iu] * weights


def _is_origin_symmetric(points: np.ndarray, tol: float = 1e-9) -> bool:
    scale = np.abs(points).max() + 1e-300
    rounded = np.round(points / (scale * tol)).astype(np.int64)
    have = {tuple(row) for row in rounded}
    return all(tuple(-row) in have for row in rounded)


def john_position(body: Body, tol: float = 1e-7,
                  max_iter: int = 300) -> tuple[PositionResult, Ellipsoid]:
    """Largest inscribed ellipsoid by sequential quadratic programming.

    The ellipsoid L B_2^n + d is parametrized by a lower-triangular L with
    positive diagonal, so maximizing the volume is minimizing
    -sum log L_ii under the smooth facet constraints
    ||L^T u_i|| + <u_i, d> <= b_i.  For origin-symmetric bodies the center
    stays fixed at 0.  The reported residual is the relative norm of the
    log-det gradient projected onto the active-facet cone (NNLS), i.e. a
    KKT stationarity certificate computed independently of the solver.
    """
    poly = to_polytope(body)
    n = poly.dim
    normals = poly.facet_normals
    offsets = poly.facet_offsets
    symmetric = _is_origin_symmetric(poly.vertices)
    r0, center0 = inradius(poly)
    q = n * (n + 1) // 2
    il = np.tril_indices(n)
    diag_pos = np.where(il[0] == il[1])[0]
    free_center = 0 if symmetric else n

    def unpack(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        low = np.zeros((n, n))
        low[il] = x[:q]
        cen = np.zeros(n) if symmetric else x[q:]
        return low, cen

    def objective(x: np.ndarray) -> float:
        return -float(np.sum(np.log(x[:q][diag_pos])))

    def objective_grad(x: np.ndarray) -> np.ndarray:
        g = np.zeros(x.size)
        g[diag_pos] = -1.0 / x[:q][diag_pos]
        return g

    def constraints(x: np.ndarray) -> np.ndarray:
        low, cen = unpack(x)
        return offsets - normals @ cen - np.linalg.norm(normals @ low, axis=1)

    def constraints_jac(x: np.ndarray) -> np.ndarray:
        low, cen = unpack(x)
        prods = normals @ low
        lens = np.maximum(np.linalg.norm(prods, axis=1), 1e-300)
        full = normals[:, :, None] * (prods / lens[:, None])[:, None, :]
        jac = np.zeros((normals.shape[0], x.size))
        jac[:, :q] = -full[:, il[0], il[1]]
        if not symmetric:
            jac[:, q:] = -normals
        return jac

    x0 = np.zeros(q + free_center)
    x0[:q] = (0.9 * r0) * np.eye(n)[il]
    if not symmetric:
        x0[q:] = center0
    lower = np.full(x0.size, -np.inf)
    lower[diag_pos] = 1e-9 * r0
    solve = minimize(
        objective, x0, jac=objective_grad, method="SLSQP",
        constraints=[{"type": "ineq", "fun": constraints,
                      "jac": constraints_jac}],
        bounds=list(zip(lower, np.full(x0.size, np.inf))),
        options={"maxiter": max_iter, "ftol": 1e-14})
    low, d = unpack(solve.x)

    # SPD square root of the shape so the certificate and the returned
    # transform are parametrization-free
    shape = low @ low.T
    eigval, eigvec = np.linalg.eigh(shape)
    mat = (eigvec * np.sqrt(np.clip(eigval, 1e-300, None))) @ eigvec.T

    inv = np.linalg.inv(mat)
    grad_full = np.concatenate(
        [_sym_to_vec(0.5 * (inv + inv.T)), np.zeros(free_center)])
    lengths = np.linalg.norm(normals @ mat, axis=1)
    slack = offsets - lengths - normals @ d
    # absolute activation threshold: offsets of facets through the origin
    # vanish, so a relative-to-offset test would drop them from the cone
    body_scale = max(float(np.abs(offsets).max()), r0)
    active = slack <= 1e-6 * body_scale
    if np.any(active):
        cols = []
        for i in np.flatnonzero(active):
            u = normals[i]
            au = mat @ u
            outer = np.outer(au, u)
            grad_con = _sym_to_vec(0.5 * (outer + outer.T) / max(lengths[i], 1e-300))
            if symmetric:
                cols.append(grad_con)
            else:
                cols.append(np.concatenate([grad_con, u]))
        cmat = np.array(cols).T
        coef, _ = nnls(cmat, grad_full)
        proj = grad_full - cmat @ coef
    else:
        proj = grad_full
    gnorm = float(np.linalg.norm(grad_full))
    residual = float(np.linalg.norm(proj)) / max(gnorm, 1e-300)

    ellipsoid = Ellipsoid(shape=shape, center=d)
    det = abs(float(np.linalg.det(inv)))
    result = PositionResult(transform=inv / det ** (1.0 / n), residual=residual,
                            objective=ellipsoid.volume(),
                            iterations=int(solve.nit),
                            converged=residual <= tol,
                            scale=det ** (1.0 / n), shift=d)
    return result, ellipsoid


# ---------------------------------------------------------------------------
# minimal mean width


def min_mean_width_position(body: Body, samples: int = 2000, max_iter: int = 300,
                            tol: float = 0.02,
                            seed: RngSeed = RngSeed()) -> PositionResult:
    """Stochastic minimization of the mean width over SL(n) (best effort).

    The objective is the empirical mean width on a fixed antithetic direction
    panel (common random numbers), descended along the exact subgradient
    with multiplicative exp-steps, which keeps det T = 1.  The residual is
    the sup-norm deviation of the first-order condition
    w(K) = n E[<xi, theta>^2 h_K(theta)] estimated on the same panel.
    """
    n = body.dim
    pairs = max(8, samples // 2)
    thetas = sphere_points(n, pairs, seed.derive("min-width-panel").generator())
    transform = np.eye(n)

    def width_stats(t_mat: np.ndarray):
        dirs = thetas @ t_mat
        h_plus = body.support_batch(dirs)
        h_minus = body.support_batch(-dirs)
        width = 0.5 * (h_plus + h_minus)
        return float(width.mean()), dirs, h_plus, h_minus

    value, dirs, h_plus, h_minus = width_stats(transform)
    history = [value]
    step = 0.1
    iterations = 0
    for iterations in range(1, max_iter + 1):
        pts = 0.5 * (support_points(body, dirs) - support_points(body, -dirs))
        moment = (transform @ pts.T) @ thetas / pairs
        grad = 0.5 * (moment + moment.T)
        grad -= np.trace(grad) / n * np.eye(n)
        gnorm = float(np.linalg.norm(grad))
        if gnorm * n / max(value, 1e-300) <= 1e-4:
            break
        direction = -grad / gnorm
        accepted = False
        while step > 1e-10:
            eigval, eigvec = np.linalg.eigh(step * direction)
            mover = (eigvec * np.exp(eigval)) @ eigvec.T
            cand = mover @ transform
            cand_value = width_stats(cand)[0]
            if cand_value < value - 1e-12 * abs(value):
                transform = cand
                value, dirs, h_plus, h_minus = width_stats(transform)
                history.append(value)
                step = min(step * 1.5, 1.0)
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
    height = 0.5 * (h_plus + h_minus)
    outer = (thetas[:, :, None] * thetas[:, None, :])
    second = np.einsum("b,bij->ij", height, outer) / pairs
    deviation = n * second / max(value, 1e-300) - np.eye(n)
    residual = float(np.abs(np.linalg.eigvalsh(deviation)).max())
    entry_sd = float(np.einsum("b,bij->ij", height ** 2, outer ** 2).max()) ** 0.5
    noise = n * entry_sd / (max(value, 1e-300) * np.sqrt(pairs))
    return PositionResult(transform=_unimodular(transform), residual=residual,
                          objective=value, iterations=iterations,
                          converged=residual <= max(tol, 3.0 * noise),
                          history=tuple(history))


# ---------------------------------------------------------------------------
# volume ratios


def volume_ratio(body: Body, tol: float = 1e-7) -> float:
    """vr(K) = (|K| / |E_John(K)|)^{1/n}."""
    poly = to_polytope(body)
    _, ellipsoid = john_position(poly, tol=tol)
    return (poly.volume() / ellipsoid.volume()) ** (1.0 / poly.dim)


def outer_volume_ratio(body: Body, tol: float = 1e-7) -> float:
    """ovr(K) = vr(K°), the volume ratio of the polar body (origin interior)."""
    return volume_ratio(polar(to_polytope(body)), tol=tol)
