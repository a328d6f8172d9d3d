"""Lexicographically ordered k-subsets of {1, ..., n}.

Subsets index the basis vectors e_I of the exterior powers and the rows and
columns of compound matrices.  Elements are 1-based; ranks are 0-based.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import DomainError


def binomial(n: int, k: int, max_bits: Optional[int] = None) -> int:
    """Exact C(n, k).

    ``max_bits`` emulates a fixed-width unsigned integer: a result that does
    not fit raises OverflowError instead of wrapping.
    """
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"binomial({n}, {k}) requires 0 <= k <= n")
    value = math.comb(n, k)
    if max_bits is not None and value.bit_length() > max_bits:
        raise OverflowError(f"C({n},{k}) = {value} does not fit in {max_bits} bits")
    return value


@dataclass(frozen=True, order=True)
class SubsetIndex:
    """A sorted subset of {1..n} together with its lexicographic rank."""

    n: int
    elements: tuple[int, ...]
    rank: int = field(default=-1, compare=False)

    def __post_init__(self) -> None:
        elems = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        if self.n < 0:
            raise DomainError(f"ambient size must be >= 0, got {self.n}")
        for a, b in zip(elems, elems[1:]):
            if not a < b:
                raise DomainError(f"subset elements must be strictly increasing: {elems}")
        if elems and (elems[0] < 1 or elems[-1] > self.n):
            raise DomainError(f"subset {elems} not contained in {{1..{self.n}}}")
        r = _rank(self.n, elems)
        if self.rank not in (-1, r):
            raise DomainError(f"rank {self.rank} does not match subset {elems} (rank {r})")
        object.__setattr__(self, "rank", r)

    @property
    def k(self) -> int:
        return len(self.elements)

    def zero_based(self) -> tuple[int, ...]:
        return tuple(e - 1 for e in self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"


def _rank(n: int, elements: Sequence[int]) -> int:
    # Count the subsets that precede `elements` position by position.
    k = len(elements)
    r = 0
    prev = 0
    for pos, e in enumerate(elements):
        remaining = k - pos - 1
        for skipped in range(prev + 1, e):
            r += math.comb(n - skipped, remaining)
        prev = e
    return r


def rank(s: SubsetIndex | Sequence[int], n: Optional[int] = None) -> int:
    """Lexicographic rank of a subset among all subsets of the same size."""
    if isinstance(s, SubsetIndex):
        return s.rank
    if n is None:
        raise DomainError("rank of a bare sequence needs the ambient size n")
    return SubsetIndex(n, tuple(s)).rank


def unrank(n: int, k: int, r: int) -> SubsetIndex:
    total = binomial(n, k)
    if not 0 <= r < total:
        raise DomainError(f"rank {r} out of range [0, {total}) for C({n},{k})")
    elements = []
    x = 1
    left = r
    for pos in range(k):
        remaining = k - pos - 1
        while True:
            block = math.comb(n - x, remaining)
            if left < block:
                break
            left -= block
            x += 1
        elements.append(x)
        x += 1
    return SubsetIndex(n, tuple(elements), r)


def k_subsets(n: int, k: int) -> list[SubsetIndex]:
    """All k-subsets of {1..n} in increasing lexicographic order."""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"no {k}-subsets of {{1..{n}}}")
    return [
        SubsetIndex(n, combo, r)
        for r, combo in enumerate(itertools.combinations(range(1, n + 1), k))
    ]


def parse_subset(text: str, n: int) -> SubsetIndex:
    """Parse ``{1,3,4}`` (braces optional)."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    body = body.strip()
    try:
        elems = tuple(int(tok) for tok in body.split(",")) if body else ()
    except ValueError as exc:
        raise DomainError(f"cannot parse subset {text!r}") from exc
    return SubsetIndex(n, elems)
