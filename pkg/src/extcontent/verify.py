"""Seeded randomized property suites behind ``extcontent verify``."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .content import (
    FLOAT_REL_TOL,
    adjoint_content_check,
    content,
    gram_eigen_content_sq,
    multiplicativity_check,
    pythagorean_check,
)
from .exterior import compound, mv_inner, wedge
from .geometry import de_gua_check
from .matrix import (
    Matrix,
    Mode,
    det_cofactor,
    determinant,
    exact_rank,
    mat_mul,
    transpose,
)


def random_exact_matrix(rng: random.Random, n: int, k: int, lo: int = -9, hi: int = 9) -> Matrix:
    return Matrix(n, k, tuple(Fraction(rng.randint(lo, hi)) for _ in range(n * k)), Mode.EXACT)


def random_float_matrix(rng: random.Random, n: int, k: int, lo: float = -1.0, hi: float = 1.0) -> Matrix:
    return Matrix(n, k, tuple(rng.uniform(lo, hi) for _ in range(n * k)), Mode.FLOAT)


def random_rank_matrix(rng: random.Random, n: int, k: int, r: int, lo: int = -5, hi: int = 5) -> Matrix:
    """Exact n x k matrix of rank exactly r, as a product of n x r and r x k factors."""
    while True:
        m = mat_mul(random_exact_matrix(rng, n, r, lo, hi), random_exact_matrix(rng, r, k, lo, hi))
        if exact_rank(m) == r:
            return m


def random_shape(rng: random.Random, max_n: int, max_k: int) -> tuple[int, int]:
    n = rng.randint(1, max_n)
    return n, rng.randint(1, min(n, max_k))


@dataclass
class SuiteResult:
    suite: str
    trials: int
    seed: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.trials - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def reproduce(self) -> str:
        return f"extcontent verify --suite {self.suite} --trials {self.trials} --seed {self.seed}"

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "ok": self.ok,
            "failures": self.failures,
        }


# Each trial returns None on success or a failure description.
Trial = Callable[[random.Random], "str | None"]


def _pythagorean(rng):
    n, k = random_shape(rng, 10, 10)
    a = random_exact_matrix(rng, n, k)
    rep = pythagorean_check(a)
    if rep.residual != 0:
        return f"{n}x{k}: residual {rep.residual}"
    w = wedge(a)
    if mv_inner(w, w) != rep.gram_det:
        return f"{n}x{k}: <wedge, wedge> != det(AᵗA)"
    return None


def _pythagorean_float(rng):
    n, k = random_shape(rng, 12, 6)
    rep = pythagorean_check(random_float_matrix(rng, n, k))
    if rep.relative_residual > FLOAT_REL_TOL:
        return f"{n}x{k}: relative residual {rep.relative_residual:.3e}"
    return None


def _functoriality(rng):
    n, m, k = (rng.randint(1, 6) for _ in range(3))
    a, b = random_exact_matrix(rng, n, m), random_exact_matrix(rng, m, k)
    ab = mat_mul(a, b)
    for i in range(min(n, m, k) + 1):
        lhs = compound(ab, i).matrix
        rhs = mat_mul(compound(a, i).matrix, compound(b, i).matrix)
        if lhs != rhs:
            return f"{n}x{m} times {m}x{k}: grade {i} differs"
    return None


def _adjoint(rng):
    n, k = rng.randint(1, 6), rng.randint(1, 6)
    a = random_exact_matrix(rng, n, k)
    for i in range(min(n, k) + 1):
        if compound(transpose(a), i).matrix != transpose(compound(a, i).matrix):
            return f"{n}x{k}: grade {i} differs"
    return None


def _multiplicativity(rng):
    while True:
        l, e = random_float_matrix(rng, 5, 2), random_float_matrix(rng, 3, 2)
        try:
            res = multiplicativity_check(l, e)
        except ValueError:
            continue
        break
    if res.relative_gap > FLOAT_REL_TOL:
        return f"relative gap {res.relative_gap:.3e}"
    return None


def _adjoint_content(rng):
    n, k = random_shape(rng, 6, 6)
    a = random_float_matrix(rng, n, k)
    ca, cat = adjoint_content_check(a)
    if abs(ca.value - cat.value) > FLOAT_REL_TOL * ca.value:
        return f"{n}x{k}: c(A)={ca.value!r} c(Aᵗ)={cat.value!r}"
    return None


def _rank_deficient(rng):
    n, k = rng.randint(2, 7), rng.randint(2, 7)
    r = rng.randint(1, min(n, k) - 1)
    a = random_rank_matrix(rng, n, k, r)
    c = content(a)
    oracle = gram_eigen_content_sq(a, rank=r)
    if c.rank != r or abs(float(c.squared) - oracle) > 1e-8 * abs(oracle):
        return f"{n}x{k} rank {r}: content² {c.squared} vs eigen product {oracle!r}"
    return None


def _degua(rng):
    a, b, c = (10 ** rng.uniform(-3, 3) for _ in range(3))
    res = de_gua_check(a, b, c)
    if res.relative_residual > 1e-12:
        return f"({a!r}, {b!r}, {c!r}): relative residual {res.relative_residual:.3e}"
    return None


def _determinant(rng):
    n = rng.randint(0, 5)
    a = random_exact_matrix(rng, n, n, -3, 3)
    if determinant(a) != det_cofactor(a):
        return f"{n}x{n}: Bareiss disagrees with cofactor expansion"
    f = a.to_float()
    ref = float(det_cofactor(a))
    if abs(determinant(f) - ref) > 1e-10 * max(1.0, abs(ref)):
        return f"{n}x{n}: float elimination disagrees with cofactor expansion"
    return None


SUITES: dict[str, Trial] = {
    "pythagorean": _pythagorean,
    "pythagorean-float": _pythagorean_float,
    "functoriality": _functoriality,
    "adjoint": _adjoint,
    "adjoint-content": _adjoint_content,
    "multiplicativity": _multiplicativity,
    "rank-deficient": _rank_deficient,
    "degua": _degua,
    "determinant": _determinant,
}


def run_suite(name: str, trials: int, seed: int) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    rng = random.Random(seed)
    result = SuiteResult(name, trials, seed)
    trial = SUITES[name]
    for t in range(trials):
        msg = trial(rng)
        if msg is not None:
            result.failures.append({"trial": t, "detail": msg})
    return result
