"""Parallelepipeds, simplices, de Gua's theorem and content of immersions.

Immersion content is the integral of √det(g) over a rectangular parameter
domain, where g = JᵗJ is the first fundamental form of the map's Jacobian J.
It is evaluated with the composite midpoint rule on a uniform grid.
"""
from __future__ import annotations

import ast
import math
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Optional, Sequence

import numpy as np

from .content import ContentReport, pythagorean_check
from .errors import DomainError
from .matrix import Matrix, Mode, Scalar, infer_mode

NEGATIVE_DET_FLOOR = -1e-12
_CHUNK = 1 << 16


@dataclass(frozen=True)
class Parallelepiped:
    """Spanned by the columns of ``vectors`` (n x k, k <= n)."""

    vectors: Matrix

    def __post_init__(self) -> None:
        if self.vectors.cols > self.vectors.rows:
            raise DomainError(
                f"{self.vectors.cols} spanning vectors in R^{self.vectors.rows}: k must be <= n"
            )

    @classmethod
    def spanned_by(cls, *vectors: Sequence, mode: Mode | None = None) -> "Parallelepiped":
        return cls(Matrix.from_columns(vectors, mode))


def parallelepiped_content(p: Parallelepiped | Matrix) -> ContentReport:
    a = p.vectors if isinstance(p, Parallelepiped) else p
    return pythagorean_check(a)


@dataclass(frozen=True)
class Simplex:
    vertices: tuple

    def __post_init__(self) -> None:
        verts = tuple(tuple(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise DomainError("a simplex needs at least one vertex")
        n = len(verts[0])
        if any(len(v) != n for v in verts):
            raise DomainError("simplex vertices must share one dimension")
        if len(verts) > n + 1:
            raise DomainError(f"{len(verts)} vertices do not span a simplex in R^{n}")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def edge_matrix(self, mode: Mode | None = None) -> Matrix:
        v0 = self.vertices[0]
        n = len(v0)
        if mode is None:
            mode = infer_mode([x for v in self.vertices for x in v])
        if mode is Mode.EXACT:
            v0 = [Fraction(x) for x in v0]
        edges = [[x - y for x, y in zip(v, v0)] for v in self.vertices[1:]]
        return Matrix.from_columns(edges, mode, rows=n)


def simplex_content_sq(s: Simplex, mode: Mode | None = None) -> Scalar:
    """Squared k-content: det(gram(edges)) / (k!)², exact when the vertices are."""
    report = pythagorean_check(s.edge_matrix(mode))
    return report.gram_det / (math.factorial(s.dim) ** 2)


def simplex_content(s: Simplex) -> float:
    report = pythagorean_check(s.edge_matrix())
    return report.content / math.factorial(s.dim)


@dataclass(frozen=True)
class DeGuaResult:
    leg_sq_sum: Scalar
    hyp_sq: Scalar
    residual: Scalar

    @property
    def relative_residual(self) -> float:
        return abs(float(self.residual)) / abs(float(self.hyp_sq))


def de_gua_check(a, b, c) -> DeGuaResult:
    """Right tetrahedron with legs a, b, c on the axes.

    Both sides are evaluated in exact arithmetic on the binary values of the
    inputs: the hypotenuse edges are nearly parallel when one leg dominates,
    and a binary64 Gram determinant loses most of its digits there.  Float
    inputs get float results.
    """
    vals = (a, b, c)
    exact = all(isinstance(v, Rational) and not isinstance(v, bool) for v in vals)
    for v in vals:
        if isinstance(v, bool) or not (exact or math.isfinite(float(v))) or not v > 0:
            raise DomainError(f"de Gua legs must be positive and finite, got {v!r}")
    a, b, c = (Fraction(v) if exact else Fraction(float(v)) for v in vals)
    zero = Fraction(0)
    o = (zero, zero, zero)
    pa, pb, pc = (a, zero, zero), (zero, b, zero), (zero, zero, c)
    legs = [Simplex((o, pa, pb)), Simplex((o, pa, pc)), Simplex((o, pb, pc))]
    leg_sq = sum((simplex_content_sq(t, Mode.EXACT) for t in legs), zero)
    hyp_sq = simplex_content_sq(Simplex((pa, pb, pc)), Mode.EXACT)
    if exact:
        return DeGuaResult(leg_sq, hyp_sq, leg_sq - hyp_sq)
    return DeGuaResult(float(leg_sq), float(hyp_sq), float(leg_sq - hyp_sq))


# -- immersions ---------------------------------------------------------------

Jacobian = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ImmersionSpec:
    """A parametrized k-dimensional immersion into R^n.

    ``jacobian`` maps an (N, k) array of parameter points to the (N, n, k)
    array of partial derivatives.
    """

    param_dim: int
    ambient: int
    domain: tuple
    jacobian: Jacobian
    resolution: tuple
    name: str = "custom"
    analytic: Optional[float] = None

    def __post_init__(self) -> None:
        dom = tuple((float(lo), float(hi)) for lo, hi in self.domain)
        object.__setattr__(self, "domain", dom)
        res = self.resolution
        if isinstance(res, int):
            res = (res,) * self.param_dim
        object.__setattr__(self, "resolution", tuple(int(r) for r in res))
        if len(dom) != self.param_dim or len(self.resolution) != self.param_dim:
            raise DomainError("domain and resolution need one entry per parameter")
        for lo, hi in dom:
            if not hi > lo:
                raise DomainError(f"degenerate parameter interval [{lo}, {hi}]")
        if any(r < 1 for r in self.resolution):
            raise DomainError("resolution must be >= 1 on every axis")

    def with_resolution(self, resolution) -> "ImmersionSpec":
        return ImmersionSpec(self.param_dim, self.ambient, self.domain, self.jacobian,
                             resolution, self.name, self.analytic)

    @property
    def domain_measure(self) -> float:
        return math.prod(hi - lo for lo, hi in self.domain)

    @classmethod
    def from_map(cls, f: Callable[[np.ndarray], np.ndarray], param_dim: int, ambient: int,
                 domain, resolution, name: str = "sampled") -> "ImmersionSpec":
        """Jacobian by central differences of a vectorized map (N, k) -> (N, n)."""
        return cls(param_dim, ambient, domain, central_difference_jacobian(f), resolution, name)


def central_difference_jacobian(f: Callable[[np.ndarray], np.ndarray]) -> Jacobian:
    step = np.finfo(float).eps ** (1.0 / 3.0)

    def jac(points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        cols = []
        for axis in range(points.shape[1]):
            h = step * np.maximum(1.0, np.abs(points[:, axis]))
            e = np.zeros_like(points)
            e[:, axis] = h
            cols.append((np.asarray(f(points + e)) - np.asarray(f(points - e))) / (2.0 * h)[:, None])
        return np.stack(cols, axis=-1)

    return jac


def _midpoints(spec: ImmersionSpec) -> list[np.ndarray]:
    axes = []
    for (lo, hi), r in zip(spec.domain, spec.resolution):
        h = (hi - lo) / r
        axes.append(lo + h * (np.arange(r) + 0.5))
    return axes


def immersion_content(spec: ImmersionSpec) -> float:
    """Midpoint-rule integral of √det(JᵗJ).  Cells are summed in lex order."""
    axes = _midpoints(spec)
    grids = np.meshgrid(*axes, indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=-1)
    samples = []
    for start in range(0, len(points), _CHUNK):
        chunk = points[start:start + _CHUNK]
        j = np.asarray(spec.jacobian(chunk), dtype=float)
        if j.shape != (len(chunk), spec.ambient, spec.param_dim):
            raise DomainError(
                f"Jacobian sampler returned shape {j.shape}, expected "
                f"{(len(chunk), spec.ambient, spec.param_dim)}"
            )
        g = np.einsum("pik,pil->pkl", j, j)
        det = np.linalg.det(g)
        if np.any(det < NEGATIVE_DET_FLOOR):
            raise DomainError(f"first fundamental form has negative determinant {det.min():g}")
        samples.append(np.sqrt(np.clip(det, 0.0, None)))
    # mean sample times domain measure: exact for constant integrands
    values = np.concatenate(samples).tolist()
    return math.fsum(values) / len(values) * spec.domain_measure


# -- built-in shapes ----------------------------------------------------------

def _segment(p):
    a = np.array([p.get("ax", 0.0), p.get("ay", 0.0), p.get("az", 0.0)])
    b = np.array([p.get("bx", 1.0), p.get("by", 0.0), p.get("bz", 0.0)])
    d = b - a

    def jac(t):
        return np.broadcast_to(d[None, :, None], (len(t), 3, 1)).copy()

    return 1, 3, [(0.0, 1.0)], jac, float(np.linalg.norm(d))


def _circle(p):
    r = p.get("r", 1.0)
    t0, t1 = p.get("start", 0.0), p.get("end", 2 * math.pi)

    def jac(t):
        s = t[:, 0]
        return np.stack([-r * np.sin(s), r * np.cos(s)], axis=-1)[:, :, None]

    return 1, 2, [(t0, t1)], jac, abs(r) * (t1 - t0)


def _helix(p):
    r, pitch, turns = p.get("r", 1.0), p.get("pitch", 0.5), p.get("turns", 1.0)
    rise = pitch / (2 * math.pi)

    def jac(t):
        s = t[:, 0]
        return np.stack([-r * np.sin(s), r * np.cos(s), np.full_like(s, rise)], axis=-1)[:, :, None]

    span = 2 * math.pi * turns
    return 1, 3, [(0.0, span)], jac, span * math.hypot(r, rise)


def _patch(p):
    w, h = p.get("w", 1.0), p.get("h", 1.0)

    def jac(x):
        out = np.zeros((len(x), 3, 2))
        out[:, 0, 0] = 1.0
        out[:, 1, 1] = 1.0
        return out

    return 2, 3, [(0.0, w), (0.0, h)], jac, w * h


def _sphere(p):
    r = p.get("r", 1.0)

    def jac(x):
        th, ph = x[:, 0], x[:, 1]
        out = np.empty((len(x), 3, 2))
        out[:, 0, 0] = r * np.cos(th) * np.cos(ph)
        out[:, 1, 0] = r * np.cos(th) * np.sin(ph)
        out[:, 2, 0] = -r * np.sin(th)
        out[:, 0, 1] = -r * np.sin(th) * np.sin(ph)
        out[:, 1, 1] = r * np.sin(th) * np.cos(ph)
        out[:, 2, 1] = 0.0
        return out

    return 2, 3, [(0.0, math.pi), (0.0, 2 * math.pi)], jac, 4 * math.pi * r * r


def _torus(p):
    big, small = p.get("R", 2.0), p.get("r", 1.0)

    def jac(x):
        u, v = x[:, 0], x[:, 1]
        rad = big + small * np.cos(v)
        out = np.empty((len(x), 3, 2))
        out[:, 0, 0] = -rad * np.sin(u)
        out[:, 1, 0] = rad * np.cos(u)
        out[:, 2, 0] = 0.0
        out[:, 0, 1] = -small * np.sin(v) * np.cos(u)
        out[:, 1, 1] = -small * np.sin(v) * np.sin(u)
        out[:, 2, 1] = small * np.cos(v)
        return out

    return 2, 3, [(0.0, 2 * math.pi), (0.0, 2 * math.pi)], jac, 4 * math.pi ** 2 * big * small


def _graph(p):
    # z = a x² + b y² over [0, w] x [0, h]
    a, b = p.get("a", 0.5), p.get("b", 0.5)
    w, h = p.get("w", 1.0), p.get("h", 1.0)

    def jac(x):
        out = np.zeros((len(x), 3, 2))
        out[:, 0, 0] = 1.0
        out[:, 1, 1] = 1.0
        out[:, 2, 0] = 2 * a * x[:, 0]
        out[:, 2, 1] = 2 * b * x[:, 1]
        return out

    analytic = w * h if a == 0 and b == 0 else None
    return 2, 3, [(0.0, w), (0.0, h)], jac, analytic


def _sphere3(p):
    # hyperspherical coordinates on S³ ⊂ R⁴; volume 2π²r³
    r = p.get("r", 1.0)

    def jac(x):
        a, b, c = x[:, 0], x[:, 1], x[:, 2]
        sa, ca, sb, cb, sc, cc = np.sin(a), np.cos(a), np.sin(b), np.cos(b), np.sin(c), np.cos(c)
        out = np.zeros((len(x), 4, 3))
        out[:, 0, 0] = -sa
        out[:, 1, 0] = ca * cb
        out[:, 2, 0] = ca * sb * cc
        out[:, 3, 0] = ca * sb * sc
        out[:, 1, 1] = -sa * sb
        out[:, 2, 1] = sa * cb * cc
        out[:, 3, 1] = sa * cb * sc
        out[:, 2, 2] = -sa * sb * sc
        out[:, 3, 2] = sa * sb * cc
        return r * out

    return 3, 4, [(0.0, math.pi), (0.0, math.pi), (0.0, 2 * math.pi)], jac, 2 * math.pi ** 2 * r ** 3


# name -> (builder, accepted parameters)
SHAPES = {
    "segment": (_segment, ("ax", "ay", "az", "bx", "by", "bz")),
    "circle": (_circle, ("r", "start", "end")),
    "helix": (_helix, ("r", "pitch", "turns")),
    "patch": (_patch, ("w", "h")),
    "sphere": (_sphere, ("r",)),
    "torus": (_torus, ("R", "r")),
    "graph": (_graph, ("a", "b", "w", "h")),
    "sphere3": (_sphere3, ("r",)),
}

_SHAPE_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$")


_CONSTANTS = {"pi": math.pi, "tau": math.tau, "e": math.e}
_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def _param_value(text: str) -> float:
    """Numeric literal or small arithmetic expression (``2*pi``, ``pi/2``, ``2pi``)."""
    text = re.sub(r"(\d)\s*(pi|tau)\b", r"\1*\2", text.strip())

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _CONSTANTS:
            return _CONSTANTS[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise ValueError(text)

    try:
        value = ev(ast.parse(text, mode="eval"))
    except SyntaxError:
        raise ValueError(text) from None
    if not math.isfinite(value):
        raise ValueError(text)
    return value


def parse_shape(text: str) -> tuple[str, dict]:
    """``sphere(r=2)`` -> ("sphere", {"r": 2.0})."""
    m = _SHAPE_RE.match(text)
    if not m:
        raise DomainError(f"cannot parse shape spec {text!r}")
    name, body = m.group(1), m.group(2) or ""
    if name not in SHAPES:
        raise DomainError(f"unknown shape {name!r}; known: {', '.join(sorted(SHAPES))}")
    params = {}
    for item in filter(None, (s.strip() for s in body.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise DomainError(f"shape parameter {item!r} is not key=value")
        try:
            params[key.strip()] = _param_value(val)
        except (ValueError, ZeroDivisionError, OverflowError):
            raise DomainError(f"bad value for {key.strip()!r}: {val!r}") from None
    return name, params


def shape_spec(text: str, resolution=64) -> ImmersionSpec:
    name, params = parse_shape(text)
    builder, known = SHAPES[name]
    unknown = set(params) - set(known)
    if unknown:
        raise DomainError(f"unknown parameter(s) {sorted(unknown)} for {name}; accepted: {', '.join(known)}")
    k, n, domain, jac, analytic = builder(params)
    return ImmersionSpec(k, n, domain, jac, resolution, name, analytic)
