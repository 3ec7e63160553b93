"""Shared generators and reference implementations for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from qconv.engine import Factor, LinearFn, ProductSpec
from qconv.polys import ParamPoly, Rat, normalize_rat
from qconv.series import TSeries, expand_factor


def random_rat(rng: random.Random, scale: int = 3, max_den: int = 7) -> Rat:
    den = rng.randint(1, max_den)
    num = rng.randint(-scale * den, scale * den)
    return normalize_rat(Fraction(num, den))


def random_param_poly(
    rng: random.Random,
    params: tuple[str, ...],
    max_terms: int = 2,
    max_exp: int = 2,
) -> ParamPoly:
    """A small nonzero polynomial with integer coefficients in -2..2."""
    terms: dict[tuple[int, ...], Rat] = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, max_exp) for _ in params)
        terms[exps] = terms.get(exps, 0) + rng.choice([-2, -1, 1, 2])
    terms = {e: c for e, c in terms.items() if c}
    if not terms:
        terms = {(0,) * len(params): 1}
    return ParamPoly(params, terms)


def random_qseries_coeffs(
    rng: random.Random, qorder: int, params: tuple[str, ...] = ()
) -> list[ParamPoly]:
    out = []
    for _ in range(qorder + 1):
        if rng.random() < 0.3:
            out.append(ParamPoly.zero(params))
        else:
            out.append(random_param_poly(rng, params))
    return out


def random_product_spec(rng: random.Random) -> ProductSpec:
    """Specs within the documented equivalence-test bounds.

    r <= 3, alpha in 1..3, beta in 0..4, b in -2..2, linear f with c in -2..2;
    prefactors are small polynomials over zero, one, or two parameters.
    """
    params = rng.choice([(), (), (), ("a",), ("a", "x")])
    factors = []
    for _ in range(rng.randint(1, 3)):
        factors.append(
            Factor(
                random_param_poly(rng, params),
                rng.randint(-2, 2),
                rng.randint(1, 3),
                rng.randint(0, 4),
                LinearFn(rng.randint(-2, 2)),
            )
        )
    return ProductSpec("random", tuple(factors), params)


def naive_expand_product(spec: ProductSpec, torder: int, qorder: int) -> TSeries:
    """Reference product expansion: a plain fold of full TSeries multiplies.

    Expands (1 - a t q^beta)^(-b) and every (1 - a t q^(alpha n + beta))^(-f(n)/n)
    with alpha n + beta <= qorder via expand_factor, then multiplies them in
    order; slower than the engine's fused version but independent of it.
    """
    acc = TSeries.one(torder, qorder, spec.params)
    for fac in spec.factors:
        acc = acc * expand_factor(fac.a, fac.beta, fac.b, torder, qorder)
        n = 1
        while fac.alpha * n + fac.beta <= qorder:
            e = fac.alpha * n + fac.beta
            acc = acc * expand_factor(fac.a, e, fac.f.ratio(n), torder, qorder)
            n += 1
    return acc


def partitions_with_parts_at_most(n: int, m: int) -> int:
    """Count partitions of n into parts <= m, by direct recursion."""
    if n == 0:
        return 1
    if n < 0 or m == 0:
        return 0
    return partitions_with_parts_at_most(n - m, m) + partitions_with_parts_at_most(
        n, m - 1
    )
