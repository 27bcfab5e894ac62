"""Convex polytopes with exact facet, ridge, and projection data.

A :class:`Polytope` is built as the convex hull of points (qhull underneath).
The triangulated qhull output is merged into true facets by a union-find over
coplanar neighboring simplices, which gives

  * the facet normals u_i, offsets b_i = h_K(u_i) and (n-1)-measures a_i
    (the atomic surface-area measure of the polytope), and
  * the ridges (facet-facet intersections) with their (n-2)-volumes and the
    pair of adjacent facet normals.

The ridge bundle makes two quantities exact and fast, batched over many
directions at once:

  * shadow volume   |P_{ξ⊥}K| = (1/2) Σ_i a_i |⟨ξ, u_i⟩|      (Cauchy), and
  * shadow surface  S(P_{ξ⊥}K) = Σ_ridges vol_{n-2}(r) · ‖P_{span(u_a,u_b)}ξ‖
    over the ridges whose adjacent facets separate ξ (⟨u_a,ξ⟩⟨u_b,ξ⟩ < 0,
    weight 1/2 on the boundary case): exactly the ridges on the shadow's
    silhouette, each contributing its projected volume.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull
from scipy.spatial import QhullError

from .sampling import Direction, SubspaceBasis

__all__ = [
    "Polytope",
    "SurfaceAreaMeasure",
    "DegenerateInputError",
    "BudgetError",
    "convex_hull",
    "from_halfspaces",
    "volume",
    "surface_area",
    "surface_measure",
    "support",
    "gauge",
    "polar",
    "project",
    "interval_shadow",
    "transform",
    "surface_area_under_transform",
    "inradius",
    "circumradius",
    "centroid_and_covariance",
]

_MERGE_ANGLE_TOL = 1e-8
_MERGE_OFFSET_TOL = 1e-8
_HREP_VERTEX_BUDGET = 200_000


class DegenerateInputError(ValueError):
    """Input points/halfspaces do not define a full-dimensional body."""


class BudgetError(ValueError):
    """An enumeration would exceed its combinatorial budget."""


@dataclass(frozen=True)
class SurfaceAreaMeasure:
    """Atomic surface-area measure of a polytope: Σ_i a_i δ_{u_i}."""

    normals: np.ndarray  # (F, n), unit rows
    weights: np.ndarray  # (F,), positive

    @property
    def total(self) -> float:
        """Total mass = surface area."""
        return float(self.weights.sum())

    def centroid_defect(self) -> float:
        """‖Σ a_i u_i‖ — zero for any closed convex surface."""
        return float(np.linalg.norm(self.weights @ self.normals))


@dataclass(frozen=True)
class _RidgeData:
    volumes: np.ndarray   # (R,)   (n-2)-volume of each ridge
    normal_a: np.ndarray  # (R, n) first adjacent facet normal
    normal_b: np.ndarray  # (R, n) second adjacent facet normal
    ortho_b: np.ndarray   # (R, n) normal_b orthonormalized against normal_a
    angles: np.ndarray    # (R,)   exterior dihedral angle in (0, π)


def _simplex_volumes(pts: np.ndarray) -> np.ndarray:
    """(S,) j-volumes of S simplices given as (S, j+1, n) vertex stacks."""
    edges = pts[:, 1:, :] - pts[:, :1, :]
    j = edges.shape[1]
    gram = np.einsum("sik,sjk->sij", edges, edges)
    det = np.linalg.det(gram) if j > 0 else np.ones(len(pts))
    return np.sqrt(np.maximum(det, 0.0)) / math.factorial(j)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


class Polytope:
    """Full-dimensional convex polytope, the hull of its vertices."""

    def __init__(self, points):
        pts = np.ascontiguousarray(points, dtype=float)
        if pts.ndim != 2:
            raise ValueError("points must be a (N, n) array")
        n = pts.shape[1]
        if n < 2:
            raise ValueError("ambient dimension must be >= 2")
        if pts.shape[0] < n + 1:
            raise DegenerateInputError(
                f"need at least {n + 1} points in R^{n}, got {pts.shape[0]}"
            )
        if not np.all(np.isfinite(pts)):
            raise ValueError("points contain non-finite values")
        center = pts.mean(axis=0)
        sv = np.linalg.svd(pts - center, compute_uv=False)
        if sv[-1] <= max(sv[0], 1e-30) * 1e-10:
            rank = int((sv > sv[0] * 1e-10).sum())
            raise DegenerateInputError(
                f"points span an affine subspace of dimension {rank} < {n}"
            )
        try:
            hull = ConvexHull(pts)
        except QhullError as exc:  # pragma: no cover - rank check catches most
            raise DegenerateInputError(f"hull construction failed: {exc}") from exc

        self.dim: int = n
        # Keep only extreme points, reindexed.
        keep = np.asarray(hull.vertices, dtype=int)
        remap = np.full(pts.shape[0], -1, dtype=int)
        remap[keep] = np.arange(keep.size)
        self.vertices: np.ndarray = pts[keep]
        self.scale: float = float(np.max(np.linalg.norm(self.vertices, axis=1)))

        simplices = remap[hull.simplices]
        u_s = hull.equations[:, :n]
        b_s = -hull.equations[:, n]
        tri_vol = _simplex_volumes(self.vertices[simplices])

        # Merge coplanar neighboring simplices into facets.
        uf = _UnionFind(len(simplices))
        off_tol = _MERGE_OFFSET_TOL * max(self.scale, 1.0)
        for s, nbrs in enumerate(hull.neighbors):
            us = u_s[s]
            bs = b_s[s]
            for t in nbrs:
                t = int(t)
                if t <= s:
                    continue
                if (us @ u_s[t] > 1.0 - _MERGE_ANGLE_TOL
                        and abs(bs - b_s[t]) <= off_tol):
                    uf.union(s, t)
        roots: dict[int, int] = {}
        gid = np.empty(len(simplices), dtype=int)
        for s in range(len(simplices)):
            gid[s] = roots.setdefault(uf.find(s), len(roots))
        nfacets = len(roots)

        normals = np.zeros((nfacets, n))
        np.add.at(normals, gid, u_s * tri_vol[:, None])
        normals /= np.linalg.norm(normals, axis=1, keepdims=True)
        # Offsets as exact support values in the merged normal directions.
        offsets = (self.vertices @ normals.T).max(axis=0)
        # Re-measure the triangulation as determinants with the merged unit
        # normal appended as a row: |det([v_1-v_0; ...; v_{n-1}-v_0; u_f])|
        # equals the (n-1)-area of the simplex projected onto the facet
        # hyperplane.  This is backward-stable where sqrt(Gram det) is not —
        # qhull's triangulations of merged facets contain slivers whose Gram
        # determinants cancel catastrophically (~sqrt(eps) absolute noise).
        tri_pts = self.vertices[simplices]
        edges = tri_pts[:, 1:, :] - tri_pts[:, :1, :]
        stacked = np.concatenate([edges, normals[gid][:, None, :]], axis=1)
        tri_vol = np.abs(np.linalg.det(stacked)) / math.factorial(n - 1)
        areas = np.zeros(nfacets)
        np.add.at(areas, gid, tri_vol)

        self.facet_normals: np.ndarray = normals
        self.facet_offsets: np.ndarray = offsets
        self.facet_areas: np.ndarray = areas
        self.interior_point: np.ndarray = self.vertices.mean(axis=0)

        self._tri_simplices = simplices
        self._tri_volumes = tri_vol
        self._tri_facet = gid
        self._hull_neighbors = np.asarray(hull.neighbors, dtype=int)
        self._ridges: _RidgeData | None = None
        self._volume: float | None = None

    # -- derived data -------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_facets(self) -> int:
        return self.facet_normals.shape[0]

    def volume(self) -> float:
        """Exact volume: cone formula in per-simplex determinant form.

        Each boundary simplex contributes the volume of its cone from an
        interior point, |det(v_i - z)| / n! — the same cone identity as
        Σ a_i (b_i - ⟨u_i, z⟩)/n at the facet level, but exact in floating
        point (facet-level areas inherit qhull's planarity tolerance).
        """
        if self._volume is None:
            edges = self.vertices[self._tri_simplices] - self.interior_point
            self._volume = float(
                np.abs(np.linalg.det(edges)).sum() / math.factorial(self.dim)
            )
        return self._volume

    def volume_cone_facets(self) -> float:
        """Facet-level cone formula Σ a_i (b_i - ⟨u_i, z⟩)/n (cross-check)."""
        z = self.interior_point
        heights = self.facet_offsets - self.facet_normals @ z
        return float((self.facet_areas * heights).sum() / self.dim)

    def surface_area(self) -> float:
        return float(self.facet_areas.sum())

    def surface_measure(self) -> SurfaceAreaMeasure:
        return SurfaceAreaMeasure(self.facet_normals, self.facet_areas)

    def ridges(self) -> _RidgeData:
        """Ridge bundle (built lazily; needs n >= 3)."""
        if self.dim < 3:
            raise ValueError("ridges need ambient dimension >= 3")
        if self._ridges is None:
            self._ridges = self._build_ridges()
        return self._ridges

    def _build_ridges(self) -> _RidgeData:
        simplices = self._tri_simplices
        gid = self._tri_facet
        n = self.dim
        sorted_simpl = np.sort(simplices, axis=1)
        pieces: dict[tuple[int, int], list[np.ndarray]] = {}
        for s, nbrs in enumerate(self._hull_neighbors):
            ga = gid[s]
            row = sorted_simpl[s]
            for t in nbrs:
                t = int(t)
                if t <= s:
                    continue
                gb = gid[t]
                if ga == gb:
                    continue
                shared = row[np.isin(row, sorted_simpl[t], assume_unique=True)]
                if shared.size < n - 1:
                    continue  # precision sliver: measure-zero ridge piece
                key = (min(ga, gb), max(ga, gb))
                pieces.setdefault(key, []).append(shared[: n - 1])
        keys = sorted(pieces)
        ua = self.facet_normals[[k[0] for k in keys]]
        ub = self.facet_normals[[k[1] for k in keys]]
        cos = np.clip(np.einsum("rk,rk->r", ua, ub), -1.0, 1.0)
        ortho = ub - cos[:, None] * ua
        nrm = np.linalg.norm(ortho, axis=1, keepdims=True)
        nrm[nrm < 1e-300] = 1.0
        ortho = ortho / nrm
        angles = np.arccos(cos)
        # Measure every ridge piece as |det([edges; u_a; ortho_b])|/(n-2)!,
        # the (n-2)-volume of its projection onto the ridge's affine plane —
        # stable for the sliver pieces that qhull triangulations produce.
        key_of = np.array(
            [i for i, k in enumerate(keys) for _ in pieces[k]], dtype=int
        )
        idx = np.array([arr for k in keys for arr in pieces[k]], dtype=int)
        pts = self.vertices[idx]
        edges = pts[:, 1:, :] - pts[:, :1, :]
        stacked = np.concatenate(
            [edges, ua[key_of][:, None, :], ortho[key_of][:, None, :]], axis=1
        )
        piece_vol = np.abs(np.linalg.det(stacked)) / math.factorial(n - 2)
        vols = np.zeros(len(keys))
        np.add.at(vols, key_of, piece_vol)
        return _RidgeData(vols, ua, ub, ortho, angles)

    # -- support / gauge ----------------------------------------------------

    def support_batch(self, directions: np.ndarray) -> np.ndarray:
        """h_K at each row of a (B, n) array (rows need not be unit)."""
        return (np.asarray(directions, dtype=float) @ self.vertices.T).max(axis=1)

    def support(self, theta) -> float:
        v = theta.coords if isinstance(theta, Direction) else np.asarray(theta, float)
        return float(self.support_batch(v[None])[0])

    def width_batch(self, directions: np.ndarray) -> np.ndarray:
        d = np.asarray(directions, dtype=float)
        prods = d @ self.vertices.T
        return prods.max(axis=1) - prods.min(axis=1)

    def gauge(self, theta) -> float:
        """Minkowski functional ‖θ‖_K = max_i ⟨u_i, θ⟩ / b_i (origin interior)."""
        v = theta.coords if isinstance(theta, Direction) else np.asarray(theta, float)
        if np.any(self.facet_offsets <= 1e-12 * max(self.scale, 1.0)):
            raise ValueError("gauge needs the origin in the interior")
        return float(np.max((self.facet_normals @ v) / self.facet_offsets))

    def gauge_batch(self, directions: np.ndarray) -> np.ndarray:
        if np.any(self.facet_offsets <= 1e-12 * max(self.scale, 1.0)):
            raise ValueError("gauge needs the origin in the interior")
        d = np.asarray(directions, dtype=float)
        return (d @ self.facet_normals.T / self.facet_offsets).max(axis=1)

    def contains(self, x, tol: float = 1e-9) -> bool:
        v = np.asarray(x, dtype=float)
        slack = self.facet_offsets - self.facet_normals @ v
        return bool(np.all(slack >= -tol * max(self.scale, 1.0)))

    # -- shadows ------------------------------------------------------------

    def shadow_volumes(self, directions: np.ndarray) -> np.ndarray:
        """|P_{ξ⊥}K| for each unit row ξ, by the Cauchy projection formula."""
        d = np.atleast_2d(np.asarray(directions, dtype=float))
        return 0.5 * (np.abs(d @ self.facet_normals.T) @ self.facet_areas)

    def shadow_surfaces(self, directions: np.ndarray, chunk: int | None = None) -> np.ndarray:
        """S(P_{ξ⊥}K) for each unit row ξ, by the ridge silhouette formula."""
        rd = self.ridges()
        d = np.atleast_2d(np.asarray(directions, dtype=float))
        nr = max(rd.volumes.size, 1)
        if chunk is None:
            chunk = max(16, int(2.5e7 / nr))
        out = np.empty(d.shape[0])
        for lo in range(0, d.shape[0], chunk):
            xi = d[lo:lo + chunk]
            da = xi @ rd.normal_a.T
            db = xi @ rd.normal_b.T
            prod = da * db
            w = np.where(prod < 0.0, 1.0,
                         np.where((da == 0.0) ^ (db == 0.0), 0.5, 0.0))
            span = np.sqrt(da ** 2 + (xi @ rd.ortho_b.T) ** 2)
            out[lo:lo + chunk] = (w * span) @ rd.volumes
        return out

    # -- misc exact quantities ----------------------------------------------

    def mean_width_exact_2codim(self) -> float:
        """V_{n-2} of the polytope via ridge volumes and dihedral angles."""
        rd = self.ridges()
        return float((rd.volumes * rd.angles).sum()
                     / (2.0 * math.comb(self.dim, 2)))

    def __repr__(self) -> str:  # pragma: no cover
        return (f"Polytope(dim={self.dim}, vertices={self.n_vertices}, "
                f"facets={self.n_facets})")


# ---------------------------------------------------------------------------
# Module-level operations (the public construction/query surface).
# ---------------------------------------------------------------------------


def convex_hull(points, d: int | None = None) -> Polytope:
    """Polytope spanned by ``points``; ``d`` optionally pins the dimension."""
    pts = np.asarray(points, dtype=float)
    if d is not None and (pts.ndim != 2 or pts.shape[1] != d):
        raise ValueError(f"expected points in R^{d}, got shape {pts.shape}")
    return Polytope(pts)


def from_halfspaces(normals, offsets) -> Polytope:
    """Polytope {x : ⟨u_i, x⟩ <= b_i} by vertex enumeration.

    Enumerates n-subsets of facets (budgeted), solves each linear system, and
    keeps the feasible intersection points.  Intended for modest facet counts.
    """
    u = np.asarray(normals, dtype=float)
    b = np.asarray(offsets, dtype=float).ravel()
    if u.ndim != 2 or u.shape[0] != b.size:
        raise ValueError("normals must be (F, n) with matching offsets")
    f, n = u.shape
    nrm = np.linalg.norm(u, axis=1)
    if np.any(nrm == 0.0):
        raise ValueError("zero normal vector")
    u = u / nrm[:, None]
    b = b / nrm
    if f < n + 1:
        raise DegenerateInputError("too few halfspaces to bound a body")
    if math.comb(f, n) > _HREP_VERTEX_BUDGET:
        raise BudgetError(
            f"vertex enumeration over C({f},{n}) subsets exceeds the budget"
        )
    idx = np.array(list(itertools.combinations(range(f), n)), dtype=int)
    mats = u[idx]
    rhs = b[idx]
    det = np.abs(np.linalg.det(mats))
    good = det > 1e-12
    if not good.any():
        raise DegenerateInputError("no non-degenerate facet intersections")
    sols = np.linalg.solve(mats[good], rhs[good][..., None])[..., 0]
    scale_guess = float(np.percentile(np.abs(sols), 90)) + 1.0
    feas = np.all(sols @ u.T <= b[None, :] + 1e-9 * scale_guess, axis=1)
    pts = sols[feas]
    if pts.shape[0] < n + 1:
        raise DegenerateInputError("halfspace intersection is not a body")
    # Deduplicate.
    pts = np.unique(np.round(pts / (1e-10 * scale_guess)), axis=0) * (1e-10 * scale_guess)
    return Polytope(pts)


def volume(p: Polytope) -> float:
    return p.volume()


def surface_area(p: Polytope) -> float:
    return p.surface_area()


def surface_measure(p: Polytope) -> SurfaceAreaMeasure:
    return p.surface_measure()


def support(p: Polytope, theta) -> float:
    return p.support(theta)


def gauge(p: Polytope, theta) -> float:
    return p.gauge(theta)


def polar(p: Polytope) -> Polytope:
    """Polar body K° = hull of u_i / b_i (origin must be interior)."""
    if np.any(p.facet_offsets <= 1e-12 * max(p.scale, 1.0)):
        raise ValueError("polar needs the origin in the interior")
    return Polytope(p.facet_normals / p.facet_offsets[:, None])


def project(p: Polytope, subspace) -> Polytope:
    """Orthogonal shadow P_F K in the frame's coordinates (k >= 2)."""
    frame = subspace.frame if isinstance(subspace, SubspaceBasis) else np.asarray(subspace, float)
    k, n = frame.shape
    if n != p.dim:
        raise ValueError("frame ambient dimension mismatch")
    if not 2 <= k <= n - 1:
        raise ValueError("projection subspace must have 2 <= k <= n-1")
    return Polytope(p.vertices @ frame.T)


def interval_shadow(p: Polytope, theta) -> tuple[float, float]:
    """The segment P_{span θ}K as (lo, hi) coordinates along θ."""
    v = theta.coords if isinstance(theta, Direction) else np.asarray(theta, float)
    prods = p.vertices @ v
    return float(prods.min()), float(prods.max())


def transform(p: Polytope, t_matrix) -> Polytope:
    """Image T·K (hull of transformed vertices, facet data recomputed)."""
    t = np.asarray(t_matrix, dtype=float)
    if t.shape != (p.dim, p.dim):
        raise ValueError("transform must be a square matrix of matching size")
    if abs(np.linalg.det(t)) < 1e-12:
        raise DegenerateInputError("transform is singular")
    return Polytope(p.vertices @ t.T)


def surface_area_under_transform(p: Polytope, t_matrix) -> float:
    """S(T·K) = |det T| · Σ a_i ‖T^{-T} u_i‖, without rebuilding the hull."""
    t = np.asarray(t_matrix, dtype=float)
    det = np.linalg.det(t)
    if abs(det) < 1e-12:
        raise DegenerateInputError("transform is singular")
    tinv_t = np.linalg.inv(t).T
    return float(abs(det) * (p.facet_areas
                             * np.linalg.norm(p.facet_normals @ tinv_t.T, axis=1)).sum())


def inradius(p: Polytope) -> tuple[float, np.ndarray]:
    """Largest inscribed ball: (radius, center), via the Chebyshev-center LP."""
    f, n = p.facet_normals.shape
    # max r  s.t.  U c + r <= b   →  min -r.
    c_obj = np.zeros(n + 1)
    c_obj[-1] = -1.0
    a_ub = np.hstack([p.facet_normals, np.ones((f, 1))])
    bounds = [(None, None)] * n + [(0.0, None)]
    res = linprog(c_obj, A_ub=a_ub, b_ub=p.facet_offsets, bounds=bounds,
                  method="highs")
    if not res.success:
        raise RuntimeError(f"inradius LP failed: {res.message}")
    return float(res.x[-1]), np.asarray(res.x[:n])


def circumradius(p: Polytope) -> float:
    """max_i ‖v_i‖ — radius of the smallest origin-centered enclosing ball."""
    return float(np.max(np.linalg.norm(p.vertices, axis=1)))


def centroid_and_covariance(p: Polytope) -> tuple[np.ndarray, np.ndarray]:
    """Centroid and covariance of the uniform probability measure on K.

    Computed exactly by fanning the facet triangulation from an interior
    point and applying the standard simplex moment formulas.
    """
    n = p.dim
    z = p.interior_point
    tri = p.vertices[p._tri_simplices]           # (S, n, n)
    edges = tri - z[None, None, :]
    vols = np.abs(np.linalg.det(edges)) / math.factorial(n)
    w = np.concatenate([np.broadcast_to(z, (len(tri), 1, n)), tri], axis=1)  # (S, n+1, n)
    total = vols.sum()
    first = (vols[:, None] * w.mean(axis=1)).sum(axis=0)
    centroid = first / total
    ssum = w.sum(axis=1)                          # (S, n)
    outer_sum = np.einsum("sin,sim->snm", w, w)   # Σ_i w_i w_iᵀ per simplex
    second = np.einsum("s,snm->nm",
                       vols / ((n + 1) * (n + 2)),
                       outer_sum + np.einsum("sn,sm->snm", ssum, ssum))
    cov = second / total - np.outer(centroid, centroid)
    return centroid, cov
