"""Named body constructors, the default verification corpus, and body files.

A :class:`BodySpec` is a small, JSON-serializable recipe: every body in a
report can be rebuilt bit-exactly from its spec (random families carry their
seed; data-backed specs carry the raw points or generators).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bodyops import Body
from .polytope import Polytope, centroid_and_covariance
from .sampling import RngSeed, sphere_points
from .zonotope import Zonotope

_BALL_STREAM = 90_915_23  # internal stream tag: ball approximants ignore the run seed


@dataclass(frozen=True)
class BodySpec:
    """A reconstructible recipe for a convex body."""

    name: str
    kind: str
    dim: int
    params: dict = field(default_factory=dict)

    def build(self) -> Body:
        builder = _BUILDERS.get(self.kind)
        if builder is None:
            raise ValueError(f"unknown body kind {self.kind!r}")
        return builder(self)

    def to_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind, "dim": self.dim,
                "params": _jsonable(self.params)}

    @staticmethod
    def from_dict(data: dict) -> "BodySpec":
        return BodySpec(name=data["name"], kind=data["kind"], dim=int(data["dim"]),
                        params=dict(data.get("params", {})))


def _jsonable(params: dict) -> dict:
    out = {}
    for key, value in params.items():
        out[key] = value.tolist() if isinstance(value, np.ndarray) else value
    return out


# ---------------------------------------------------------------------------
# constructors


def cube(n: int, half_side: float = 1.0) -> BodySpec:
    """The cube [-half_side, half_side]^n (default Q_n = [-1, 1]^n)."""
    name = "cube" if half_side == 1.0 else f"cube({half_side:g})"
    return BodySpec(name=name, kind="cube", dim=n, params={"half_side": half_side})


def cross_polytope(n: int) -> BodySpec:
    """The unit cross-polytope conv(+-e_i)."""
    return BodySpec(name="cross", kind="cross", dim=n)


def simplex(n: int) -> BodySpec:
    """The regular simplex with circumradius 1, centered at the origin."""
    return BodySpec(name="simplex", kind="simplex", dim=n)


def ball_approx(n: int, count: int = 500) -> BodySpec:
    """Convex hull of ``count`` fixed quasi-uniform sphere points.

    The generating stream is internal (independent of the run seed) so the
    same name always denotes the same body.
    """
    return BodySpec(name=f"ball-approx({count})", kind="ball-approx", dim=n,
                    params={"count": count})


def random_hull(n: int, count: int, seed: int) -> BodySpec:
    """Centroid-centered hull of ``count`` Gaussian points."""
    return BodySpec(name=f"random-hull({count},{seed})", kind="random-hull",
                    dim=n, params={"count": count, "seed": seed})


def random_zonotope(n: int, generators: int, seed: int) -> BodySpec:
    """Origin-symmetric zonotope with Gaussian generators."""
    return BodySpec(name=f"random-zonotope({generators},{seed})",
                    kind="random-zonotope", dim=n,
                    params={"generators": generators, "seed": seed})


def from_points(points, name: str = "points") -> BodySpec:
    points = np.asarray(points, dtype=float)
    return BodySpec(name=name, kind="points", dim=points.shape[1],
                    params={"points": points.tolist()})


def from_generators(generators, center=None, name: str = "zonotope") -> BodySpec:
    generators = np.asarray(generators, dtype=float)
    params = {"generators_data": generators.tolist()}
    if center is not None:
        params["center"] = np.asarray(center, dtype=float).tolist()
    return BodySpec(name=name, kind="generators", dim=generators.shape[1],
                    params=params)


# ---------------------------------------------------------------------------
# builders


def _helmert_basis(n: int) -> np.ndarray:
    """Orthonormal rows spanning the sum-zero hyperplane of R^{n+1}."""
    basis = np.zeros((n, n + 1))
    for i in range(1, n + 1):
        basis[i - 1, :i] = 1.0
        basis[i - 1, i] = -float(i)
        basis[i - 1] /= np.sqrt(i * (i + 1.0))
    return basis


def _build_cube(spec: BodySpec) -> Polytope:
    h = float(spec.params.get("half_side", 1.0))
    n = spec.dim
    grid = np.indices((2,) * n).reshape(n, -1).T
    return Polytope((2.0 * grid - 1.0) * h)


def _build_cross(spec: BodySpec) -> Polytope:
    eye = np.eye(spec.dim)
    return Polytope(np.vstack([eye, -eye]))


def _build_simplex(spec: BodySpec) -> Polytope:
    n = spec.dim
    corners = np.eye(n + 1) - np.full((n + 1, n + 1), 1.0 / (n + 1))
    verts = corners @ _helmert_basis(n).T
    radii = np.linalg.norm(verts, axis=1)
    return Polytope(verts / radii[:, None])


def _build_ball_approx(spec: BodySpec) -> Polytope:
    count = int(spec.params["count"])
    rng = RngSeed(0, _BALL_STREAM).derive("ball-approx", spec.dim, count).generator()
    return Polytope(sphere_points(spec.dim, count, rng))


def _build_random_hull(spec: BodySpec) -> Polytope:
    count = int(spec.params["count"])
    seed = int(spec.params["seed"])
    rng = RngSeed(seed).derive("random-hull", spec.dim, count).generator()
    hull = Polytope(rng.standard_normal((count, spec.dim)))
    centroid, _ = centroid_and_covariance(hull)
    return Polytope(hull.vertices - centroid)


def _build_random_zonotope(spec: BodySpec) -> Zonotope:
    m = int(spec.params["generators"])
    seed = int(spec.params["seed"])
    rng = RngSeed(seed).derive("random-zonotope", spec.dim, m).generator()
    return Zonotope(rng.standard_normal((m, spec.dim)))


def _build_points(spec: BodySpec) -> Polytope:
    return Polytope(np.asarray(spec.params["points"], dtype=float))


def _build_generators(spec: BodySpec) -> Zonotope:
    gens = np.asarray(spec.params["generators_data"], dtype=float)
    center = spec.params.get("center")
    return Zonotope(gens, None if center is None else np.asarray(center, dtype=float))


_BUILDERS = {
    "cube": _build_cube,
    "cross": _build_cross,
    "simplex": _build_simplex,
    "ball-approx": _build_ball_approx,
    "random-hull": _build_random_hull,
    "random-zonotope": _build_random_zonotope,
    "points": _build_points,
    "generators": _build_generators,
}


# ---------------------------------------------------------------------------
# corpus and name parsing


def corpus(n: int) -> list[BodySpec]:
    """The default verification corpus for dimension n (14 bodies)."""
    specs = [cube(n), cross_polytope(n), simplex(n), ball_approx(n, 500)]
    specs += [random_hull(n, 2 * n + 4, seed) for seed in range(1, 6)]
    specs += [random_zonotope(n, n + 3, seed) for seed in range(1, 6)]
    return specs


_NAME_RE = re.compile(r"^(?P<head>[a-z-]+)(?:\((?P<args>[-0-9,.\s]*)\))?$")


def from_name(text: str, dim: int) -> BodySpec:
    """Parse a body name like ``cube``, ``ball-approx(500)``, ``random-hull(10,1)``."""
    match = _NAME_RE.match(text.strip())
    if not match:
        raise ValueError(f"cannot parse body name {text!r}")
    head = match.group("head")
    args = [a.strip() for a in (match.group("args") or "").split(",") if a.strip()]
    if head == "cube":
        return cube(dim, float(args[0])) if args else cube(dim)
    if head == "cross":
        return cross_polytope(dim)
    if head == "simplex":
        return simplex(dim)
    if head == "ball-approx":
        return ball_approx(dim, int(args[0]) if args else 500)
    if head == "random-hull":
        if len(args) != 2:
            raise ValueError("random-hull needs (count, seed)")
        return random_hull(dim, int(args[0]), int(args[1]))
    if head == "random-zonotope":
        if len(args) != 2:
            raise ValueError("random-zonotope needs (generators, seed)")
        return random_zonotope(dim, int(args[0]), int(args[1]))
    raise ValueError(f"unknown body name {text!r}")


# ---------------------------------------------------------------------------
# body files


def write_body(spec: BodySpec, path) -> None:
    Path(path).write_text(json.dumps(spec.to_dict(), indent=2, sort_keys=True) + "\n")


def read_body(path) -> BodySpec:
    data = json.loads(Path(path).read_text())
    if "kind" in data and "name" in data:
        return BodySpec.from_dict(data)
    # bare data files: either a point cloud or a generator list
    if "points" in data:
        return from_points(data["points"], name=Path(path).stem)
    if "generators" in data:
        spec = from_generators(data["generators"], data.get("center"),
                               name=Path(path).stem)
        return spec
    raise ValueError(f"{path}: not a recognizable body file")
