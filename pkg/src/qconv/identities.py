"""Executable verifiers for five families of q-series convolution identities.

Every identity here is an instance of the recurrence n A(n) = sum A(k) h(n-k)
for a specific product spec, with A(n) replaced by its closed form:

    T1a  A(n) = 1/(q)_n                    h(m) = 1/(1-q^m)
    T1b  A(n) = q^(n(n-1)/2)/(q)_n         h(m) = (-1)^(m+1)/(1-q^m)
    T2   A(n) = sum_k q^(T(n-k))/((q)_k (q)_(n-k)),  h(m) = 2/(1-q^m) odd m, 0 even
    T3   A(n) = (a)_n/(q)_n                h(m) = (1-a^m)/(1-q^m)
    T4   A(n) = H_n(x)/(q)_n               h(m) = (1+x^m)/(1-q^m)
    T5   A(n) = Lambda_n/(q^6;q^6)_n       h(m) = ((-1)^(m+1)(q^2m+q^4m+q^5m)+1)/(1-q^6m)

Each verifier builds both sides as exact truncated QSeries and reports the
first mismatching q-coefficient, if any.  Sides-builder functions are exposed
separately so truncation-stability checks can compare raw series across
different qorders.

Two transcription hazards are handled explicitly rather than silently:

* The T2 right-hand side is implemented as n sum_k q^(T(n-k))/((q)_k (q)_(n-k)).
  The variant without the 1/(q)_k factor is also computed and its (failing)
  status is recorded in the case details; it disagrees with the left side
  already at n=1 (2/(1-q) vs (2-q)/(1-q)).
* For T4 the kernel 2/(1-q^m) reproduces n H_n(x)/(q)_n only at x=1; the
  x-correct kernel is (1+x^m)/(1-q^m), which this verifier takes from
  compute_h on the rogers_szego catalog spec.  The verifier gates on the
  engine kernel symbolically and on the 2/(1-q^m) forms at x=1, and records
  the symbolic status of the latter in the details.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import ProductSpec, Factor, LinearFn, compute_A, compute_h
from .polys import ParamPoly, Rat
from .qtools import param_poch, q6poch, qpoch, rogers_szego, triangular_weight
from .series import Mismatch, QSeries, first_mismatch

IDENTITY_IDS = ("T1a", "T1b", "T2", "T3", "T4", "T5")


@dataclass(frozen=True)
class IdentityCase:
    """Outcome of one identity check at one (n, qorder)."""

    id: str
    n: int
    qorder: int
    ok: bool
    mismatch: Mismatch | None
    warnings: tuple[str, ...] = ()
    details: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "type": "identity",
            "id": self.id,
            "n": self.n,
            "qorder": self.qorder,
            "pass": self.ok,
            "first_mismatch": self.mismatch.to_record() if self.mismatch else None,
            "warnings": list(self.warnings),
            "details": self.details,
        }

    def line(self) -> str:
        if self.ok:
            text = f"{self.id} n={self.n} qorder={self.qorder}: PASS"
        else:
            mm = self.mismatch
            loc = (
                f" at q^{mm.q_exp}: lhs={mm.lhs_term}, rhs={mm.rhs_term}"
                if mm
                else ""
            )
            text = f"{self.id} n={self.n} qorder={self.qorder}: FAIL{loc}"
        for w in self.warnings:
            text += f" [warning: {w}]"
        return text


def recommended_qorder(n: int) -> int:
    """Headroom so triangular exponents and q^6-step denominators are exercised."""
    return n * (n + 1) // 2 + 6 * n


def _headroom(n: int, qorder: int) -> tuple[str, ...]:
    want = recommended_qorder(n)
    if qorder < want:
        return (f"qorder {qorder} is thin for n={n}; recommend >= {want}",)
    return ()


def _geom(k: int, qorder: int, params=()) -> QSeries:
    """1/(1-q^k) truncated; equals 1 when k exceeds the truncation order."""
    base = QSeries.one(qorder, params) - QSeries.monomial(qorder, k, 1, params)
    return base.invert()


def _inv_qpoch(n: int, qorder: int, params=()) -> QSeries:
    return qpoch(n, qorder, params).invert()


def _draw_rat(rng: random.Random) -> Rat:
    """A random rational with |value| <= 3 and denominator <= 7."""
    den = rng.randint(1, 7)
    num = rng.randint(-3 * den, 3 * den)
    value = Fraction(num, den)
    return int(value) if value.denominator == 1 else value


# -- the catalog --------------------------------------------------------------


def euler1_spec() -> ProductSpec:
    """prod_{j>=0} (1 - t q^j)^(-1); A(n) = 1/(q)_n."""
    return ProductSpec(
        "euler1", (Factor(ParamPoly.const((), 1), 1, 1, 0, LinearFn(1)),)
    )


def euler2_spec() -> ProductSpec:
    """prod_{j>=0} (1 + t q^j); A(n) = q^(n(n-1)/2)/(q)_n."""
    return ProductSpec(
        "euler2", (Factor(ParamPoly.const((), -1), -1, 1, 0, LinearFn(-1)),)
    )


def theorem2_spec() -> ProductSpec:
    """prod_{j>=0} (1 + t q^j)/(1 - t q^j); h vanishes at even m."""
    return euler1_spec().concat(euler2_spec(), name="theorem2")


def cauchy_spec() -> ProductSpec:
    """prod_{j>=0} (1 - a t q^j)/(1 - t q^j); A(n) = (a)_n/(q)_n."""
    params = ("a",)
    a = ParamPoly.var(params, "a")
    one = ParamPoly.const(params, 1)
    return ProductSpec(
        "cauchy",
        (Factor(a, -1, 1, 0, LinearFn(-1)), Factor(one, 1, 1, 0, LinearFn(1))),
        params,
    )


def rogers_szego_spec() -> ProductSpec:
    """1/((t; q)_inf (x t; q)_inf); A(n) = H_n(x)/(q)_n."""
    params = ("x",)
    x = ParamPoly.var(params, "x")
    one = ParamPoly.const(params, 1)
    return ProductSpec(
        "rogers_szego",
        (Factor(one, 1, 1, 0, LinearFn(1)), Factor(x, 1, 1, 0, LinearFn(1))),
        params,
    )


def lambda_spec() -> ProductSpec:
    """(-tq^2; q^6)_inf (-tq^4; q^6)_inf (-tq^5; q^6)_inf / (t; q^6)_inf."""
    neg = ParamPoly.const((), -1)
    one = ParamPoly.const((), 1)
    return ProductSpec(
        "lambda",
        (
            Factor(neg, -1, 6, 2, LinearFn(-1)),
            Factor(neg, -1, 6, 4, LinearFn(-1)),
            Factor(neg, -1, 6, 5, LinearFn(-1)),
            Factor(one, 1, 6, 0, LinearFn(1)),
        ),
    )


def catalog() -> list[ProductSpec]:
    """The built-in named specs, one per identity family plus their T2 product."""
    return [
        euler1_spec(),
        euler2_spec(),
        theorem2_spec(),
        cauchy_spec(),
        rogers_szego_spec(),
        lambda_spec(),
    ]


def lambda_sequence(n_max: int, qorder: int) -> list[QSeries]:
    """Lambda_0..Lambda_n_max: the recurrence coefficients scaled by (q^6; q^6)_n."""
    a_list = compute_A(lambda_spec(), n_max, qorder)
    return [a_list[n] * q6poch(n, qorder) for n in range(n_max + 1)]


# -- sides builders ------------------------------------------------------------


def t1a_sides(n: int, qorder: int) -> tuple[QSeries, QSeries]:
    """sum_{k=1}^n 1/((1-q^k)(q)_(n-k))  vs  n/(q)_n."""
    lhs = QSeries.zero(qorder)
    for k in range(1, n + 1):
        lhs = lhs + _geom(k, qorder) * _inv_qpoch(n - k, qorder)
    rhs = _inv_qpoch(n, qorder) * n
    return lhs, rhs


def t1b_sides(n: int, qorder: int) -> tuple[QSeries, QSeries]:
    """Signed variant with triangular weights q^(j(j-1)/2)."""
    lhs = QSeries.zero(qorder)
    for k in range(1, n + 1):
        term = _geom(k, qorder) * triangular_weight(n - k, qorder)
        term = term * _inv_qpoch(n - k, qorder)
        lhs = lhs + (term if k % 2 == 1 else -term)
    rhs = triangular_weight(n, qorder) * _inv_qpoch(n, qorder) * n
    return lhs, rhs


def t2_sides(n: int, qorder: int) -> tuple[QSeries, QSeries, QSeries]:
    """Odd-kernel double sum vs n sum_k q^(T(n-k))/((q)_k (q)_(n-k)).

    Returns (lhs, rhs, rhs_variant) where rhs_variant drops the 1/(q)_k
    factor; the variant is what the displayed form of this identity sometimes
    looks like, and it is not equal to the left side.
    """
    lhs = QSeries.zero(qorder)
    for k in range(1, (n + 1) // 2 + 1):
        inner = QSeries.zero(qorder)
        for l in range(0, n - 2 * k + 2):
            j = n - 2 * k - l + 1
            inner = inner + (
                triangular_weight(j, qorder)
                * _inv_qpoch(l, qorder)
                * _inv_qpoch(j, qorder)
            )
        lhs = lhs + _geom(2 * k - 1, qorder) * inner * 2
    rhs = QSeries.zero(qorder)
    variant = QSeries.zero(qorder)
    for k in range(0, n + 1):
        j = n - k
        tail = triangular_weight(j, qorder) * _inv_qpoch(j, qorder)
        rhs = rhs + tail * _inv_qpoch(k, qorder)
        variant = variant + tail
    return lhs, rhs * n, variant * n


def t3_sides(n: int, qorder: int) -> tuple[QSeries, QSeries]:
    """sum_k [(a)_(n-k)/(q)_(n-k)]*[(1-a^k)/(1-q^k)]  vs  n (a)_n/(q)_n, a symbolic."""
    params = ("a",)
    a = ParamPoly.var(params, "a")
    lhs = QSeries.zero(qorder, params)
    for k in range(1, n + 1):
        term = param_poch("a", n - k, qorder, params) * _inv_qpoch(n - k, qorder, params)
        term = term * _geom(k, qorder, params)
        lhs = lhs + term * (1 - a**k)
    rhs = param_poch("a", n, qorder, params) * _inv_qpoch(n, qorder, params) * n
    return lhs, rhs


def t4_sides(n: int, qorder: int) -> tuple[QSeries, QSeries, QSeries, QSeries]:
    """n H_n(x)/(q)_n against three kernels, x symbolic.

    Returns (lhs, engine_rhs, halved_rhs, halved_reindexed): engine_rhs uses
    h(k) = compute_h on the rogers_szego spec, i.e. (1+x^k)/(1-q^k); the other
    two use the halved kernel 2/(1-q^k) with the two loop orderings k=1..n
    and k=0..n-1.
    """
    params = ("x",)
    spec = rogers_szego_spec()
    h_series = [None] + [compute_h(spec, k, qorder) for k in range(1, n + 1)]
    tails = [
        rogers_szego(j, qorder) * _inv_qpoch(j, qorder, params) for j in range(n + 1)
    ]
    lhs = tails[n] * n
    engine_rhs = QSeries.zero(qorder, params)
    halved_rhs = QSeries.zero(qorder, params)
    for k in range(1, n + 1):
        engine_rhs = engine_rhs + tails[n - k] * h_series[k]
        halved_rhs = halved_rhs + tails[n - k] * _geom(k, qorder, params) * 2
    halved_reindexed = QSeries.zero(qorder, params)
    for k in range(0, n):
        halved_reindexed = halved_reindexed + tails[k] * _geom(n - k, qorder, params) * 2
    return lhs, engine_rhs, halved_rhs, halved_reindexed


def t5_kernel(k: int, qorder: int) -> QSeries:
    """((-1)^(k+1)(q^2k + q^4k + q^5k) + 1)/(1 - q^6k), truncated."""
    sign = 1 if k % 2 == 1 else -1
    num = QSeries.one(qorder)
    for e in (2 * k, 4 * k, 5 * k):
        num = num + QSeries.monomial(qorder, e, sign)
    den = QSeries.one(qorder) - QSeries.monomial(qorder, 6 * k)
    return num * den.invert()


def t5_sides(
    n: int, qorder: int, lambdas: list[QSeries]
) -> tuple[QSeries, QSeries, QSeries]:
    """n Lambda_n/(q^6;q^6)_n against both loop orderings of the q^6 kernel."""
    inv6 = [q6poch(j, qorder).invert() for j in range(n + 1)]
    lhs = lambdas[n] * inv6[n] * n
    forward = QSeries.zero(qorder)
    for k in range(1, n + 1):
        forward = forward + lambdas[n - k] * inv6[n - k] * t5_kernel(k, qorder)
    reindexed = QSeries.zero(qorder)
    for k in range(0, n):
        reindexed = reindexed + lambdas[k] * inv6[k] * t5_kernel(n - k, qorder)
    return lhs, forward, reindexed


# -- verifiers -----------------------------------------------------------------


def _require_positive(n: int) -> None:
    if n < 1:
        raise ValueError("identity checks are stated for n >= 1")


def verify_t1a(n: int, qorder: int) -> IdentityCase:
    _require_positive(n)
    lhs, rhs = t1a_sides(n, qorder)
    mm = first_mismatch(lhs, rhs)
    return IdentityCase("T1a", n, qorder, mm is None, mm, _headroom(n, qorder))


def verify_t1b(n: int, qorder: int) -> IdentityCase:
    _require_positive(n)
    lhs, rhs = t1b_sides(n, qorder)
    mm = first_mismatch(lhs, rhs)
    return IdentityCase("T1b", n, qorder, mm is None, mm, _headroom(n, qorder))


def verify_t2(n: int, qorder: int) -> IdentityCase:
    _require_positive(n)
    lhs, rhs, variant = t2_sides(n, qorder)
    mm = first_mismatch(lhs, rhs)
    details = {"rhs_without_inner_pochhammer": first_mismatch(lhs, variant) is None}
    return IdentityCase("T2", n, qorder, mm is None, mm, _headroom(n, qorder), details)


def verify_t3(
    n: int, qorder: int, *, spot_checks: int = 0, rng: random.Random | None = None
) -> IdentityCase:
    """Symbolic check in a, optionally followed by rational specializations."""
    _require_positive(n)
    lhs, rhs = t3_sides(n, qorder)
    mm = first_mismatch(lhs, rhs)
    ok = mm is None
    spot_failures = 0
    if spot_checks:
        if rng is None:
            rng = random.Random(0)
        for _ in range(spot_checks):
            value = _draw_rat(rng)
            if first_mismatch(
                lhs.eval_params({"a": value}), rhs.eval_params({"a": value})
            ):
                spot_failures += 1
        ok = ok and spot_failures == 0
    details = {"symbolic": mm is None, "spot_checks": spot_checks}
    if spot_failures:
        details["spot_failures"] = spot_failures
    return IdentityCase("T3", n, qorder, ok, mm, _headroom(n, qorder), details)


def verify_t4(
    n: int, qorder: int, *, spot_checks: int = 0, rng: random.Random | None = None
) -> IdentityCase:
    """Kernel comparison for the H_n(x) recurrence.

    Gates on the engine kernel (1+x^m)/(1-q^m) holding symbolically in x and
    on both 2/(1-q^m) loop orderings holding at x=1; whether those orderings
    also hold symbolically is recorded in the details (they do not for n >= 1).
    """
    _require_positive(n)
    lhs, engine_rhs, halved_rhs, halved_reindexed = t4_sides(n, qorder)
    mm_engine = first_mismatch(lhs, engine_rhs)
    at_one = {"x": 1}
    mm_x1 = first_mismatch(
        lhs.eval_params(at_one), halved_rhs.eval_params(at_one)
    ) or first_mismatch(lhs.eval_params(at_one), halved_reindexed.eval_params(at_one))
    ok = mm_engine is None and mm_x1 is None
    spot_failures = 0
    if spot_checks:
        if rng is None:
            rng = random.Random(0)
        for _ in range(spot_checks):
            value = _draw_rat(rng)
            if first_mismatch(
                lhs.eval_params({"x": value}), engine_rhs.eval_params({"x": value})
            ):
                spot_failures += 1
        ok = ok and spot_failures == 0
    details = {
        "engine_kernel": "(1 + x^m)/(1 - q^m)",
        "engine_kernel_symbolic": mm_engine is None,
        "halved_kernel": "2/(1 - q^m)",
        "halved_kernel_at_x_equal_1": mm_x1 is None,
        "halved_kernel_symbolic": first_mismatch(lhs, halved_rhs) is None,
        "spot_checks": spot_checks,
    }
    if spot_failures:
        details["spot_failures"] = spot_failures
    mm = mm_engine or mm_x1
    return IdentityCase("T4", n, qorder, ok, mm, _headroom(n, qorder), details)


def verify_t5(
    n: int, qorder: int, lambdas: list[QSeries] | None = None
) -> IdentityCase:
    """Recurrence check for Lambda_n; accepts a precomputed Lambda table."""
    _require_positive(n)
    if lambdas is None or len(lambdas) <= n:
        lambdas = lambda_sequence(n, qorder)
    if lambdas[0].qorder != qorder:
        raise ValueError(
            f"lambda table qorder {lambdas[0].qorder} does not match {qorder}"
        )
    lhs, forward, reindexed = t5_sides(n, qorder, lambdas)
    mm = first_mismatch(lhs, forward)
    mm_re = first_mismatch(lhs, reindexed)
    ok = mm is None and mm_re is None
    details = {"loop_orderings_agree": mm_re is None}
    return IdentityCase(
        "T5", n, qorder, ok, mm or mm_re, _headroom(n, qorder), details
    )
