"""Random directions, random subspaces, and stochastic minimization.

Every sampler takes an explicit :class:`RngSeed` (a root seed plus a stream
id), so any number produced by the library can be regenerated bit for bit
from the pair alone.  Stream ids for named purposes are derived by hashing
label strings (see :meth:`RngSeed.derive`), which keeps concurrent consumers
independent without global state.

Conventions:
  * directions are unit vectors in R^n, sampled uniformly on S^{n-1} by
    normalizing Gaussians;
  * a k-dimensional subspace is represented by an orthonormal frame with the
    k basis vectors as *rows*, Haar-sampled by QR of a Gaussian matrix with
    the sign of diag(R) fixed (otherwise QR is not Haar).
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Direction",
    "SubspaceBasis",
    "Estimate",
    "RngSeed",
    "ObjectiveError",
    "sample_sphere",
    "sample_grassmannian",
    "sphere_points",
    "grassmann_frames",
    "mc_estimate",
    "minimize_on_sphere",
    "minimize_on_grassmannian",
]

_MASK64 = (1 << 64) - 1

DEFAULT_SPHERE_SAMPLES = 20_000
DEFAULT_GRASSMANN_SAMPLES = 10_000


class ObjectiveError(ValueError):
    """An objective returned a non-finite value during minimization."""


@dataclass(frozen=True)
class RngSeed:
    """Root seed plus stream id; equal pairs give equal sample sequences."""

    seed: int = 0
    stream: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(
            entropy=(self.seed & _MASK64, self.stream & _MASK64)
        )
        return np.random.Generator(np.random.PCG64(ss))

    def derive(self, *labels) -> "RngSeed":
        """A child seed whose stream id hashes the given labels.

        The hash is a stable digest (not Python's salted ``hash``), so derived
        streams are reproducible across processes and runs.
        """
        text = ":".join(str(lb) for lb in labels)
        digest = hashlib.sha256(text.encode("utf-8")).digest()
        return RngSeed(self.seed, int.from_bytes(digest[:8], "little"))


@dataclass(frozen=True)
class Direction:
    """A unit vector on S^{n-1}."""

    coords: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.coords, dtype=float)
        if v.ndim != 1 or v.size < 2:
            raise ValueError("a direction is a vector in R^n, n >= 2")
        nrm = float(np.linalg.norm(v))
        if not math.isfinite(nrm) or abs(nrm - 1.0) > 1e-9:
            raise ValueError(f"direction must have unit norm, got {nrm!r}")
        object.__setattr__(self, "coords", v / nrm)

    @property
    def dim(self) -> int:
        return self.coords.size

    def __neg__(self) -> "Direction":
        return Direction(-self.coords)


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal frame of a k-dimensional subspace of R^n (rows = basis)."""

    frame: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.frame, dtype=float)
        if f.ndim != 2 or not (1 <= f.shape[0] <= f.shape[1]):
            raise ValueError("frame must be a (k, n) matrix with k <= n")
        gram = f @ f.T
        if not np.allclose(gram, np.eye(f.shape[0]), atol=1e-9):
            raise ValueError("frame rows must be orthonormal")
        object.__setattr__(self, "frame", f)

    @property
    def ambient_dim(self) -> int:
        return self.frame.shape[1]

    @property
    def subspace_dim(self) -> int:
        return self.frame.shape[0]

    def project(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of x in the frame (a k-vector)."""
        return self.frame @ np.asarray(x, dtype=float)


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo estimate with its standard error."""

    value: float
    stderr: float
    n_samples: int

    def __float__(self) -> float:
        return self.value


def sphere_points(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """(count, n) array of uniform points on S^{n-1}."""
    if n < 2:
        raise ValueError("ambient dimension must be >= 2")
    if count < 1:
        raise ValueError("count must be >= 1")
    g = rng.standard_normal((count, n))
    nrm = np.linalg.norm(g, axis=1, keepdims=True)
    # Resample exact zeros (probability zero, but cheap to be safe).
    while np.any(nrm == 0.0):
        bad = nrm[:, 0] == 0.0
        g[bad] = rng.standard_normal((int(bad.sum()), n))
        nrm = np.linalg.norm(g, axis=1, keepdims=True)
    return g / nrm


def grassmann_frames(n: int, k: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """(count, k, n) array of Haar-distributed orthonormal frames."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if count < 1:
        raise ValueError("count must be >= 1")
    g = rng.standard_normal((count, n, k))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.einsum("bii->bi", r))
    signs[signs == 0.0] = 1.0
    return np.swapaxes(q * signs[:, None, :], 1, 2)


def sample_sphere(n: int, count: int, seed: RngSeed) -> list[Direction]:
    """Uniform directions on S^{n-1}; identical (seed, stream) ⇒ identical list."""
    pts = sphere_points(n, count, seed.generator())
    return [Direction(p) for p in pts]


def sample_grassmannian(n: int, k: int, count: int, seed: RngSeed) -> list[SubspaceBasis]:
    """Haar-uniform k-subspaces of R^n as orthonormal frames."""
    frames = grassmann_frames(n, k, count, seed.generator())
    return [SubspaceBasis(f) for f in frames]


def mc_estimate(values) -> Estimate:
    """Mean, standard error (ddof=1; zero for a single sample), and count."""
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("cannot estimate from an empty sample")
    if not np.all(np.isfinite(v)):
        raise ValueError("sample contains non-finite values")
    mean = float(v.mean())
    stderr = 0.0 if v.size == 1 else float(v.std(ddof=1) / math.sqrt(v.size))
    return Estimate(mean, stderr, int(v.size))


# ---------------------------------------------------------------------------
# Stochastic minimization on the sphere / Grassmannian.
#
# Multi-start projected (sub)gradient descent, run on all restarts at once as
# array rows: finite-difference gradients of f∘retract, per-restart Armijo
# step control, each restart iterated until its step drops below 1e-10.  The
# best point is then polished by a shrinking pattern search (handles kinks,
# where gradient steps stall at ~sqrt(fd_step) accuracy).  The returned value
# is the minimum over every point evaluated anywhere in the procedure.
# ---------------------------------------------------------------------------


def _normalize_rows(x: np.ndarray) -> np.ndarray:
    nrm = np.linalg.norm(x, axis=-1, keepdims=True)
    nrm[nrm < 1e-300] = 1.0
    return x / nrm


class _BestTracker:
    """Wraps a batched objective; keeps the best (point, value) ever seen."""

    def __init__(self, fbatch):
        self._f = fbatch
        self.best_x = None
        self.best_v = math.inf

    def __call__(self, x: np.ndarray) -> np.ndarray:
        v = np.asarray(self._f(x), dtype=float)
        if v.shape != (x.shape[0],):
            raise ObjectiveError(
                f"objective returned shape {v.shape}, expected ({x.shape[0]},)"
            )
        if not np.all(np.isfinite(v)):
            i = int(np.flatnonzero(~np.isfinite(v))[0])
            raise ObjectiveError(f"objective is not finite at {x[i]!r}")
        i = int(np.argmin(v))
        if v[i] < self.best_v:
            self.best_v = float(v[i])
            self.best_x = x[i].copy()
        return v


def _descend(fb: _BestTracker, x0: np.ndarray, retract, max_iter: int = 400,
             fd_step: float = 1e-6, step_min: float = 1e-10) -> None:
    """Batched multi-start descent; results accumulate inside ``fb``."""
    x = retract(x0.copy())
    fx = fb(x)
    r, d = x.shape
    t = np.full(r, 0.25)
    grad = np.empty_like(x)
    for _ in range(max_iter):
        live = t >= step_min
        if not live.any():
            break
        # FD gradient of f∘retract, one coordinate at a time (batched rows).
        for j in range(d):
            xp = x.copy()
            xp[:, j] += fd_step
            grad[:, j] = (fb(retract(xp)) - fx) / fd_step
        gn2 = np.einsum("ij,ij->i", grad, grad)
        prop = retract(x - (t * live)[:, None] * grad)
        fp = fb(prop)
        ok = live & (fp <= fx - 1e-4 * t * gn2)
        x[ok] = prop[ok]
        fx[ok] = fp[ok]
        t[ok] = np.minimum(t[ok] * 1.25, 1.0)
        t[live & ~ok] *= 0.5


def _pattern_polish(fb: _BestTracker, retract, d: int,
                    gen: np.random.Generator,
                    start_scale: float = 1e-2, end_scale: float = 1e-9,
                    stall_redraws: int = 3) -> None:
    """Pattern search around the incumbent best point, with scale adaptation.

    Probes +- scale along an orthonormal frame.  A successful poll expands
    the scale (so shallow valleys are crossed in strides rather than
    ulp-sized steps); a stalled poll redraws a random frame before the scale
    shrinks, because piecewise-linear objectives have conical minima whose
    descent cone can elude any fixed probe set.  The relative improvement
    cutoff keeps kinked minima from creeping downward forever.
    """
    scale = start_scale
    basis = np.eye(d)
    redraws = 0
    polls = 0
    while scale >= end_scale and polls < 500 * d:
        x = fb.best_x
        cands = retract(np.concatenate([x + scale * basis,
                                        x - scale * basis]))
        before = fb.best_v
        fb(cands)
        polls += 1
        if fb.best_v < before - 1e-13 * abs(before) - 1e-300:
            redraws = 0
            scale = min(scale * 2.0, start_scale)
        elif redraws < stall_redraws:
            basis, _ = np.linalg.qr(gen.standard_normal((d, d)))
            redraws += 1
        else:
            redraws = 0
            scale *= 0.5


def _run_minimizer(objective, n_flat: int, starts: np.ndarray, retract,
                   vectorized: bool, wrap_point, polish,
                   polish_gen: np.random.Generator | None = None):
    if vectorized:
        fbatch = objective
    else:
        def fbatch(xs):
            return np.array([float(objective(wrap_point(row))) for row in xs])
    fb = _BestTracker(fbatch)
    _descend(fb, starts, retract)
    if polish:
        if polish_gen is None:
            polish_gen = np.random.default_rng(0)
        _pattern_polish(fb, retract, n_flat, polish_gen)
    return fb.best_x, fb.best_v


def minimize_on_sphere(objective, n: int, restarts: int | None = None,
                       seed: RngSeed = RngSeed(), *, vectorized: bool = False,
                       polish: bool = True) -> tuple[Direction, float]:
    """Minimize a function on S^{n-1}.

    ``objective`` maps a :class:`Direction` to a finite scalar; pass
    ``vectorized=True`` if it instead maps a (B, n) array of unit rows to a
    (B,) array (much faster for array-native objectives).  Returns the best
    direction found and its value, which is ≤ the objective at every point
    evaluated during the search.
    """
    if restarts is None:
        restarts = 8 * n
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    starts = sphere_points(n, restarts, seed.generator())
    x, v = _run_minimizer(
        objective, n, starts, _normalize_rows, vectorized,
        lambda row: Direction(row), polish,
        polish_gen=seed.derive("polish").generator(),
    )
    return Direction(x), v


def minimize_on_grassmannian(objective, n: int, k: int,
                             restarts: int | None = None,
                             seed: RngSeed = RngSeed(), *,
                             vectorized: bool = False,
                             polish: bool = True) -> tuple[SubspaceBasis, float]:
    """Minimize a function on the Grassmannian G_{n,k}.

    ``objective`` maps a :class:`SubspaceBasis` to a finite scalar; with
    ``vectorized=True`` it maps a (B, k, n) stack of frames to a (B,) array.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if restarts is None:
        restarts = 8 * n
    if restarts < 1:
        raise ValueError("restarts must be >= 1")

    def retract(flat: np.ndarray) -> np.ndarray:
        mats = flat.reshape(-1, k, n)
        q, r = np.linalg.qr(np.swapaxes(mats, 1, 2))
        signs = np.sign(np.einsum("bii->bi", r))
        signs[signs == 0.0] = 1.0
        frames = np.swapaxes(q * signs[:, None, :], 1, 2)
        return frames.reshape(flat.shape[0], k * n)

    starts = grassmann_frames(n, k, restarts, seed.generator()).reshape(restarts, k * n)
    if vectorized:
        fobj = lambda flat: objective(flat.reshape(-1, k, n))
    else:
        fobj = objective
    x, v = _run_minimizer(
        fobj, k * n, starts, retract, vectorized,
        lambda row: SubspaceBasis(row.reshape(k, n)), polish,
        polish_gen=seed.derive("polish").generator(),
    )
    return SubspaceBasis(x.reshape(k, n)), v
