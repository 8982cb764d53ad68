"""Diagonal enumeration of the countable base pairs (N, P).

The base elements are indexed by a patch index N >= 1 and a polynomial P with
coefficients in Q + iQ.  The enumeration is graded: entry weights are

    size(N, P) = (N - 1) + deg(P) + sum of coefficient heights,

where the height of a reduced fraction p/q is |p| + q - 1 (so height 0 is
exactly 0) and a complex coefficient weighs the sum of its parts.  Each
diagonal block (one value of the size) is finite and enforces the block
bounds: coefficient parts of height <= 16 and degree <= 8.  Within a block,
entries are ordered by N ascending, then by degree, then lexicographically by
coefficient (height first, then numerator, then denominator, real part before
imaginary part).

The map m -> (N, P) is a bijection onto all pairs within the block bounds;
both directions are exposed and round-trip exactly.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple

from .kernels import RationalPolynomial

PART_HEIGHT_CAP = 16
DEGREE_CAP = 8

_Coeff = tuple[Fraction, Fraction]


def rational_height(r: Fraction) -> int:
    return abs(r.numerator) + r.denominator - 1


def coefficient_height(c: _Coeff) -> int:
    return rational_height(c[0]) + rational_height(c[1])


def polynomial_weight(poly: RationalPolynomial) -> int:
    return poly.degree + sum(coefficient_height(c) for c in poly.coefficients)


@lru_cache(maxsize=None)
def _rationals_of_height(k: int) -> tuple[Fraction, ...]:
    if k == 0:
        return (Fraction(0),)
    if k > PART_HEIGHT_CAP:
        return ()
    found = []
    for q in range(1, k + 1):
        p = k + 1 - q
        if math.gcd(p, q) == 1:
            found.append(Fraction(-p, q))
            found.append(Fraction(p, q))
    found.sort(key=lambda r: (r.numerator, r.denominator))
    return tuple(found)


@lru_cache(maxsize=None)
def _coefficients_of_height(k: int) -> tuple[_Coeff, ...]:
    out = []
    for h_re in range(k + 1):
        for re in _rationals_of_height(h_re):
            for im in _rationals_of_height(k - h_re):
                out.append((re, im))
    return tuple(out)


def _coefficient_tuples(positions: int, budget: int,
                        last_nonzero: bool) -> Iterator[tuple[_Coeff, ...]]:
    """All coefficient tuples with total height == budget, in fixed order."""
    if positions == 1:
        if last_nonzero and budget == 0:
            return
        for c in _coefficients_of_height(budget):
            yield (c,)
        return
    for h0 in range(budget + 1):
        for c0 in _coefficients_of_height(h0):
            for rest in _coefficient_tuples(positions - 1, budget - h0,
                                            last_nonzero):
                yield (c0,) + rest


@lru_cache(maxsize=None)
def _polynomials_of_weight(w: int) -> tuple[RationalPolynomial, ...]:
    out = []
    for degree in range(min(DEGREE_CAP, w) + 1):
        budget = w - degree
        for coeffs in _coefficient_tuples(degree + 1, budget,
                                          last_nonzero=degree >= 1):
            out.append(RationalPolynomial(coeffs))
    return tuple(out)


class BaseIndex(NamedTuple):
    m: int
    patch_index: int
    polynomial: RationalPolynomial


_levels: list[tuple[tuple[int, RationalPolynomial], ...]] = []
_offsets: list[int] = [0]
_lock = threading.Lock()


def _level(index: int) -> tuple[tuple[int, RationalPolynomial], ...]:
    with _lock:
        while len(_levels) <= index:
            level = len(_levels)
            entries = []
            for n in range(1, level + 2):
                entries.extend(
                    (n, poly)
                    for poly in _polynomials_of_weight(level - (n - 1)))
            _levels.append(tuple(entries))
            _offsets.append(_offsets[-1] + len(entries))
        return _levels[index]


def enumerate_base(m: int) -> BaseIndex:
    """Decode the m-th base entry (1-indexed); total for every m >= 1."""
    if m < 1:
        raise ValueError("base index m starts at 1")
    level = 0
    while True:
        entries = _level(level)
        if m - 1 < _offsets[level + 1]:
            n, poly = entries[m - 1 - _offsets[level]]
            return BaseIndex(m, n, poly)
        level += 1


def encode_base(patch_index: int, poly: RationalPolynomial) -> int:
    """Inverse of enumerate_base for pairs within the block bounds."""
    if patch_index < 1:
        raise ValueError("patch index starts at 1")
    if poly.degree > DEGREE_CAP:
        raise ValueError(f"degree exceeds the block bound {DEGREE_CAP}")
    for re, im in poly.coefficients:
        if max(rational_height(re), rational_height(im)) > PART_HEIGHT_CAP:
            raise ValueError(
                f"coefficient height exceeds the block bound {PART_HEIGHT_CAP}")
    level = (patch_index - 1) + polynomial_weight(poly)
    entries = _level(level)
    idx = entries.index((patch_index, poly))
    return _offsets[level] + idx + 1
