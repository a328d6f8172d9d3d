import math
import random
from fractions import Fraction

import numpy as np
import pytest

from extcontent.errors import DomainError
from extcontent.geometry import (
    ImmersionSpec,
    Parallelepiped,
    Simplex,
    de_gua_check,
    immersion_content,
    parallelepiped_content,
    parse_shape,
    shape_spec,
    simplex_content,
    simplex_content_sq,
)
from extcontent.matrix import Matrix, Mode


def test_parallelepiped_examples():
    assert parallelepiped_content(Parallelepiped.spanned_by((1, 0, 0), (0, 1, 0))).content == 1.0
    rep = parallelepiped_content(Parallelepiped.spanned_by((1, 2, 3), (4, 5, 6)))
    assert rep.gram_det == 54 and rep.content == pytest.approx(math.sqrt(54))
    rep = parallelepiped_content(Parallelepiped.spanned_by((3, 4)))
    assert rep.content == 5.0
    assert [abs(m) for m in rep.minors.values()] == [3, 4]


def test_parallelepiped_too_many_vectors():
    with pytest.raises(DomainError):
        Parallelepiped.spanned_by((1, 0), (0, 1), (1, 1))


def test_simplex_examples():
    assert simplex_content(Simplex([(0, 0), (1, 0), (0, 1)])) == 0.5
    assert simplex_content(Simplex([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])) == pytest.approx(1 / 6)
    assert simplex_content_sq(Simplex([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])) == Fraction(1, 36)
    assert simplex_content(Simplex([(4, 5)])) == 1.0


def test_hypotenuse_face_closed_form():
    for a, b, c in [(1, 2, 3), (0.5, 7.0, 2.25), (3, 4, 5)]:
        face = Simplex([(a, 0, 0), (0, b, 0), (0, 0, c)])
        want = 0.5 * math.sqrt(a * a * b * b + a * a * c * c + b * b * c * c)
        assert simplex_content(face) == pytest.approx(want, rel=1e-14)


def test_unit_legs():
    legs = [
        Simplex([(0, 0, 0), (1, 0, 0), (0, 1, 0)]),
        Simplex([(0, 0, 0), (1, 0, 0), (0, 0, 1)]),
        Simplex([(0, 0, 0), (0, 1, 0), (0, 0, 1)]),
    ]
    assert [simplex_content(t) for t in legs] == [0.5, 0.5, 0.5]
    assert sum(simplex_content_sq(t) for t in legs) == Fraction(3, 4)
    hyp = Simplex([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert simplex_content(hyp) == pytest.approx(math.sqrt(3) / 2)
    assert simplex_content_sq(hyp) == Fraction(3, 4)


def test_simplex_invariances():
    rng = random.Random(5)
    verts = [tuple(rng.randint(-9, 9) for _ in range(4)) for _ in range(4)]
    base = simplex_content_sq(Simplex(verts))
    for perm in ([1, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1]):
        assert simplex_content_sq(Simplex([verts[i] for i in perm])) == base
    shift = (7, -3, 2, 11)
    assert simplex_content_sq(Simplex([tuple(x + s for x, s in zip(v, shift)) for v in verts])) == base


def test_simplex_validation():
    with pytest.raises(DomainError):
        Simplex([])
    with pytest.raises(DomainError):
        Simplex([(0, 0), (1, 0), (0, 1), (1, 1)])
    with pytest.raises(DomainError):
        Simplex([(0, 0), (1, 0, 0)])


def test_de_gua_examples():
    r = de_gua_check(1, 1, 1)
    assert r.leg_sq_sum == r.hyp_sq == Fraction(3, 4) and r.residual == 0
    r = de_gua_check(1.0, 1.0, 1.0)
    assert r.leg_sq_sum == r.hyp_sq == 0.75
    r = de_gua_check(3, 4, 5)
    assert r.leg_sq_sum == r.hyp_sq == Fraction(769, 4)
    assert float(r.hyp_sq) == 192.25
    assert de_gua_check(2.5, 0.3, 9.0) == de_gua_check(0.3, 2.5, 9.0)


def test_de_gua_log_grid():
    grid = np.logspace(-3, 3, 7)
    for a in grid:
        for b in grid:
            for c in grid:
                r = de_gua_check(float(a), float(b), float(c))
                assert r.relative_residual <= 1e-12
                closed = 0.25 * (a * a * b * b + a * a * c * c + b * b * c * c)
                assert r.leg_sq_sum == pytest.approx(closed, rel=1e-12)


@pytest.mark.parametrize("bad", [(0, 1, 1), (-1.0, 2.0, 3.0), (1.0, float("inf"), 1.0), (float("nan"), 1, 1)])
def test_de_gua_rejects_nonpositive(bad):
    with pytest.raises(DomainError):
        de_gua_check(*bad)


def test_flat_patch_any_resolution():
    for res in (1, 2, 7, 32):
        assert immersion_content(shape_spec("patch()", res)) == 1.0


def test_circle_arc_length():
    v = immersion_content(shape_spec("circle(r=1)", 10_000))
    assert abs(v - 2 * math.pi) <= 1e-12 * 2 * math.pi


def test_sphere_area():
    v = immersion_content(shape_spec("sphere(r=1)", 512))
    assert abs(v - 4 * math.pi) <= 1e-4 * 4 * math.pi


def test_sphere_convergence_monotone():
    errs = [abs(immersion_content(shape_spec("sphere()", r)) - 4 * math.pi) for r in (64, 128, 256, 512, 1024)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


@pytest.mark.parametrize("text,res,rel", [
    ("torus(R=3,r=0.5)", 128, 1e-12),
    ("helix(r=1,pitch=0.5,turns=3)", 64, 1e-12),
    ("segment(ax=1,ay=1,bx=4,by=5)", 1, 1e-15),
    ("sphere3(r=1)", 48, 1e-3),
    ("circle(r=2,start=0,end=pi/2)", 16, 1e-14),
])
def test_builtin_shapes_against_analytic(text, res, rel):
    spec = shape_spec(text, res)
    assert immersion_content(spec) == pytest.approx(spec.analytic, rel=rel)


def test_affine_map_equals_parallelepiped_times_measure():
    rng = random.Random(11)
    for _ in range(5):
        cols = [[rng.uniform(-2, 2) for _ in range(4)] for _ in range(2)]
        a = Matrix.from_columns(cols, Mode.FLOAT)
        jac_const = np.array(a.to_lists())
        spec = ImmersionSpec(2, 4, [(0, 2), (-1, 0.5)], lambda p: np.broadcast_to(jac_const, (len(p), 4, 2)), (3, 5))
        want = parallelepiped_content(a).content * spec.domain_measure
        assert immersion_content(spec) == pytest.approx(want, rel=1e-12)


def test_central_difference_fallback():
    def f(p):
        th, ph = p[:, 0], p[:, 1]
        return np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1)

    spec = ImmersionSpec.from_map(f, 2, 3, [(0, math.pi), (0, 2 * math.pi)], 256)
    analytic = immersion_content(shape_spec("sphere()", 256))
    assert immersion_content(spec) == pytest.approx(analytic, rel=1e-8)


def test_graph_patch_matches_numeric_integral():
    # ∫∫ sqrt(1 + x² + y²) over [0,1]², independent 1-D Gauss-Legendre tensor rule
    xs, ws = np.polynomial.legendre.leggauss(40)
    xs, ws = (xs + 1) / 2, ws / 2
    ref = sum(wi * wj * math.sqrt(1 + xi * xi + xj * xj) for xi, wi in zip(xs, ws) for xj, wj in zip(xs, ws))
    v = immersion_content(shape_spec("graph(a=0.5,b=0.5)", 400))
    assert v == pytest.approx(ref, rel=1e-5)


def test_wrong_jacobian_shape():
    spec = ImmersionSpec(1, 2, [(0, 1)], lambda p: np.zeros((len(p), 3, 1)), 4)
    with pytest.raises(DomainError, match="shape"):
        immersion_content(spec)


def test_spec_validation():
    jac = lambda p: np.zeros((len(p), 2, 1))
    with pytest.raises(DomainError):
        ImmersionSpec(1, 2, [(1, 1)], jac, 4)
    with pytest.raises(DomainError):
        ImmersionSpec(1, 2, [(0, 1)], jac, 0)
    with pytest.raises(DomainError):
        ImmersionSpec(2, 2, [(0, 1)], jac, 4)


def test_parse_shape():
    assert parse_shape("sphere(r=2)") == ("sphere", {"r": 2.0})
    assert parse_shape("patch()") == ("patch", {})
    assert parse_shape("patch") == ("patch", {})
    name, params = parse_shape("circle(end=2pi, r=1/2)")
    assert params == {"end": 2 * math.pi, "r": 0.5}
    with pytest.raises(DomainError):
        parse_shape("blob(r=1)")
    with pytest.raises(DomainError):
        parse_shape("sphere(r)")
    with pytest.raises(DomainError):
        shape_spec("sphere(q=1)")
