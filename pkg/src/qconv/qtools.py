"""Named q-objects: Pochhammer products, Gaussian polynomials, Rogers-Szego
polynomials, divisor sums, and partition counts with a brute-force oracle.

The generalized Pochhammer product prod_{k=0}^{n-1} (1 - a*q^(e0 + k*step))
is the single primitive behind (q)_n = (q; q)_n, (a; q)_n, and (q^6; q^6)_n.
Everything is a pure function over immutable inputs; Gaussian rows and the
partition table are recomputed per call, so there is no shared state.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Iterator

from .polys import ParamPoly
from .series import QSeries

DEFAULT_ORACLE_BOUND = 40


@dataclass(frozen=True)
class PochhammerSpec:
    """The product prod_{k=0}^{n-1} (1 - a * q^(e0 + k*step)); n=0 denotes 1."""

    a: ParamPoly
    e0: int
    step: int
    n: int

    def __post_init__(self):
        if self.e0 < 0:
            raise ValueError("e0 must be nonnegative")
        if self.step < 1:
            raise ValueError("step must be positive")
        if self.n < 0:
            raise ValueError("n must be nonnegative")


def pochhammer(spec: PochhammerSpec, qorder: int) -> QSeries:
    """Exact truncated expansion of a generalized Pochhammer product.

    Factors whose q-exponent exceeds qorder reduce to 1 under truncation
    (the prefactor carries no q) and are skipped; everything else is plain
    truncated multiplication.
    """
    params = spec.a.params
    result = QSeries.one(qorder, params)
    for k in range(spec.n):
        e = spec.e0 + k * spec.step
        if e > qorder:
            continue
        factor = QSeries.one(qorder, params) - QSeries.monomial(qorder, e, spec.a)
        result = result * factor
    return result


def qpoch(n: int, qorder: int, params: Iterable[str] = ()) -> QSeries:
    """(q; q)_n = prod_{k=1}^{n} (1 - q^k), truncated."""
    params = tuple(params)
    return pochhammer(PochhammerSpec(ParamPoly.const(params, 1), 1, 1, n), qorder)


def param_poch(name: str, n: int, qorder: int, params: Iterable[str]) -> QSeries:
    """(a; q)_n = prod_{k=0}^{n-1} (1 - a*q^k) with a the named parameter."""
    params = tuple(params)
    return pochhammer(PochhammerSpec(ParamPoly.var(params, name), 0, 1, n), qorder)


def q6poch(n: int, qorder: int, params: Iterable[str] = ()) -> QSeries:
    """(q^6; q^6)_n = prod_{k=1}^{n} (1 - q^(6k)), truncated."""
    params = tuple(params)
    return pochhammer(PochhammerSpec(ParamPoly.const(params, 1), 6, 6, n), qorder)


def _gaussian_rows(n: int) -> list[list[int]]:
    """Row n of the q-Pascal triangle: entry m is the coefficient list of [n m].

    Uses [n m] = [n-1 m-1] + q^m [n-1 m], so every entry is an exact integer
    polynomial of degree m(n-m).
    """
    row: list[list[int]] = [[1]]
    for k in range(1, n + 1):
        new: list[list[int]] = []
        for m in range(k + 1):
            left = row[m - 1] if m >= 1 else []
            right = row[m] if m < k else []
            size = max(len(left), m + len(right)) if (left or right) else 0
            entry = [0] * size
            for i, c in enumerate(left):
                entry[i] += c
            for i, c in enumerate(right):
                entry[m + i] += c
            new.append(entry)
        row = new
    return row


def gaussian_binomial(n: int, m: int, qorder: int, params: Iterable[str] = ()) -> QSeries:
    """The Gaussian polynomial [n m] as a truncated series; 0 when m<0 or m>n.

    Computed by the q-Pascal recurrence, so the result is the exact integer
    polynomial whenever its degree m(n-m) fits inside qorder, and its
    truncation otherwise.
    """
    params = tuple(params)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if m < 0 or m > n:
        return QSeries.zero(qorder, params)
    entry = _gaussian_rows(n)[m]
    return QSeries.from_coeffs(entry, qorder=qorder, params=params)


def rogers_szego(n: int, qorder: int, params: Iterable[str] = ("x",), var: str = "x") -> QSeries:
    """H_n(x) = sum_{j=0}^{n} [n j] x^j, coefficients polynomials in x."""
    params = tuple(params)
    if var not in params:
        raise ValueError(f"parameter {var!r} must be declared (got {params})")
    if n < 0:
        raise ValueError("n must be nonnegative")
    rows = _gaussian_rows(n)
    var_index = params.index(var)
    coeff_terms: list[dict[tuple[int, ...], int]] = [dict() for _ in range(qorder + 1)]
    for j, entry in enumerate(rows):
        exps = tuple(j if i == var_index else 0 for i in range(len(params)))
        for q_exp, c in enumerate(entry):
            if c and q_exp <= qorder:
                coeff_terms[q_exp][exps] = coeff_terms[q_exp].get(exps, 0) + c
    return QSeries(qorder, [ParamPoly(params, t) for t in coeff_terms])


def sigma(k: int) -> int:
    """Sum of the positive divisors of k."""
    if k < 1:
        raise ValueError("sigma is defined for positive integers")
    total = 0
    for d in range(1, isqrt(k) + 1):
        if k % d == 0:
            total += d
            other = k // d
            if other != d:
                total += other
    return total


def partition_p(n_max: int) -> list[int]:
    """p(0..n_max) via the divisor-sum convolution n*p(n) = sum sigma(k)*p(n-k)."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    sigmas = [0] + [sigma(k) for k in range(1, n_max + 1)]
    p = [1]
    for n in range(1, n_max + 1):
        total = sum(sigmas[k] * p[n - k] for k in range(1, n + 1))
        value, rem = divmod(total, n)
        if rem:
            raise ArithmeticError(
                f"convolution gave non-integer p({n}) = {total}/{n}; implementation bug"
            )
        p.append(value)
    return p


def _partitions(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def partition_oracle(n: int, bound: int = DEFAULT_ORACLE_BOUND) -> int:
    """Count partitions of n by listing every one of them.

    Deliberately shares nothing with partition_p; the bound keeps the
    enumeration at desk scale.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > bound:
        raise ValueError(f"n={n} exceeds the oracle bound {bound}")
    return sum(1 for _ in _partitions(n, n))


def triangular_weight(n: int, qorder: int, params: Iterable[str] = ()) -> QSeries:
    """The monomial q^(n(n-1)/2), truncated (zero if the exponent exceeds qorder)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return QSeries.monomial(qorder, n * (n - 1) // 2, 1, tuple(params))
