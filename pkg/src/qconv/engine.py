"""Convolution-recurrence engine for generalized q-product generating functions.

A :class:`ProductSpec` describes

    F_q(t) = prod_j (1 - a_j t q^(beta_j))^(-b_j)
                    * prod_{n>=1} (1 - a_j t q^(alpha_j n + beta_j))^(-f_j(n)/n)

with rational b_j, ParamPoly prefactors a_j, alpha_j >= 1, beta_j >= 0, and
arithmetic functions f_j.  Writing F_q(t) = sum_n A(n) t^n, applying t*d/dt to
log F_q(t) turns the product into sum_{m>=1} h(m) t^m with

    h(m) = sum_j b_j a_j^m q^(beta_j m)
         + sum_j sum_{k>=1} a_j^m (f_j(k)/k) q^(m (k alpha_j + beta_j)),

and equating t-coefficients in t F'(t) = F(t) * sum h(m) t^m gives the
recurrence n A(n) = sum_{k=0}^{n-1} A(k) h(n-k) with A(0) = 1.  This module
computes h and A by that recurrence, expands the product directly as an
independent cross-check, and compares the two.

alpha_j >= 1 is required so that every q-coefficient receives finitely many
contributions; it is the formal-series stand-in for the analytic convergence
hypotheses that make the product meaningful at |q| < 1, |t| < 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .polys import ParamPoly, Rat, format_rat, gbinom, normalize_rat, parse_rat
from .series import Mismatch, QSeries, TSeries, first_mismatch


class SpecError(ValueError):
    """Structural problem with a product spec or its serialized form."""


@dataclass(frozen=True)
class LinearFn:
    """f(n) = c * n, so f(n)/n = c at every n >= 1."""

    c: Rat

    def ratio(self, k: int) -> Rat:
        if k < 1:
            raise ValueError("arithmetic functions are indexed from 1")
        return self.c

    def max_index(self) -> int | None:
        return None

    def to_dict(self) -> dict:
        return {"type": "linear", "c": format_rat(self.c)}


@dataclass(frozen=True)
class TabulatedFn:
    """f given by an explicit table f(1), f(2), ...; reading past the table is an error."""

    values: tuple[Rat, ...]

    def ratio(self, k: int) -> Rat:
        if k < 1:
            raise ValueError("arithmetic functions are indexed from 1")
        if k > len(self.values):
            raise SpecError(
                f"tabulated arithmetic function has {len(self.values)} values "
                f"but f({k}) is required"
            )
        return normalize_rat(Fraction(self.values[k - 1]) / k)

    def max_index(self) -> int | None:
        return len(self.values)

    def to_dict(self) -> dict:
        return {"type": "tabulated", "values": [format_rat(v) for v in self.values]}


ArithmeticFn = Union[LinearFn, TabulatedFn]


@dataclass(frozen=True)
class Factor:
    """One factor family (a, b, alpha, beta, f) of a product spec."""

    a: ParamPoly
    b: Rat
    alpha: int
    beta: int
    f: ArithmeticFn

    def __post_init__(self):
        if self.alpha < 1:
            raise SpecError(f"alpha must be >= 1 (got {self.alpha})")
        if self.beta < 0:
            raise SpecError(f"beta must be >= 0 (got {self.beta})")
        object.__setattr__(self, "b", normalize_rat(self.b))


@dataclass(frozen=True)
class ProductSpec:
    """A named product of factor families over one common parameter set."""

    name: str
    factors: tuple[Factor, ...]
    params: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "params", tuple(self.params))
        if not self.factors:
            raise SpecError("a product spec needs at least one factor")
        for i, f in enumerate(self.factors):
            if f.a.params != self.params:
                raise SpecError(
                    f"factors[{i}].a is declared over {f.a.params}, "
                    f"spec over {self.params}"
                )

    def concat(self, other: "ProductSpec", name: str | None = None) -> "ProductSpec":
        """The product of two specs: simply the concatenation of their factors."""
        if other.params != self.params:
            raise SpecError("cannot concatenate specs over different parameter sets")
        return ProductSpec(
            name or f"{self.name}*{other.name}", self.factors + other.factors, self.params
        )


def compute_h(spec: ProductSpec, m: int, qorder: int) -> QSeries:
    """The logarithmic-derivative coefficient h(m), exactly truncated.

    h(m) = sum_j b_j a_j^m q^(beta_j m)
         + sum_j sum_k a_j^m (f_j(k)/k) q^(m (k alpha_j + beta_j)),
    with the k-sum restricted to exponents that survive the truncation.
    """
    if m < 1:
        raise ValueError("h(m) is defined for m >= 1")
    params = spec.params
    acc = [ParamPoly.zero(params) for _ in range(qorder + 1)]
    for idx, fac in enumerate(spec.factors):
        a_m = fac.a ** m
        exp0 = fac.beta * m
        if exp0 <= qorder and fac.b:
            acc[exp0] = acc[exp0] + a_m * fac.b
        if not a_m:
            continue
        k_max = (qorder - m * fac.beta) // (m * fac.alpha)
        bound = fac.f.max_index()
        if bound is not None and k_max > bound:
            raise SpecError(
                f"factors[{idx}]: tabulated f has {bound} values but qorder "
                f"{qorder} needs f(k) up to k={k_max} at m={m}"
            )
        for k in range(1, k_max + 1):
            ratio = fac.f.ratio(k)
            if not ratio:
                continue
            e = m * (k * fac.alpha + fac.beta)
            acc[e] = acc[e] + a_m * ratio
    return QSeries(qorder, acc)


def compute_A(spec: ProductSpec, n_max: int, qorder: int) -> list[QSeries]:
    """Coefficients A(0..n_max) of F_q(t) by the convolution recurrence.

    A(0) = 1 and n A(n) = sum_{k=0}^{n-1} A(k) h(n-k); the division by n is
    exact rational division applied coefficientwise.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    params = spec.params
    a_list = [QSeries.one(qorder, params)]
    h_list = [None] + [compute_h(spec, m, qorder) for m in range(1, n_max + 1)]
    for n in range(1, n_max + 1):
        total = QSeries.zero(qorder, params)
        for k in range(n):
            total = total + a_list[k] * h_list[n - k]
        a_list.append(total * Fraction(1, n))
    return a_list


def _factor_expansions(spec: ProductSpec, qorder: int) -> list[tuple[ParamPoly, int, Rat]]:
    """All (a, q-exponent, inverse-power) factors that survive the truncation.

    For each family this is (a_j, beta_j, b_j) plus (a_j, alpha_j n + beta_j,
    f_j(n)/n) for every n >= 1 with alpha_j n + beta_j <= qorder; later factors
    are exactly 1 modulo the truncation.
    """
    out: list[tuple[ParamPoly, int, Rat]] = []
    for fac in spec.factors:
        out.append((fac.a, fac.beta, fac.b))
        n = 1
        while fac.alpha * n + fac.beta <= qorder:
            out.append((fac.a, fac.alpha * n + fac.beta, fac.f.ratio(n)))
            n += 1
    return out


def _multiply_factor(
    acc: list[QSeries], a: ParamPoly, e: int, c: Rat, torder: int, qorder: int
) -> list[QSeries]:
    """Multiply a t-coefficient list by (1 - a t q^e)^(-c).

    The factor's t^k coefficient is the single monomial gbinom(c,k) a^k q^(ek),
    so each product term is a shift-and-scale rather than a full series
    multiplication.
    """
    weights: list[tuple[int, ParamPoly]] = []
    a_pow = ParamPoly.const(a.params, 1)
    for k in range(1, torder + 1):
        a_pow = a_pow * a
        if e * k > qorder:
            break
        w = a_pow * gbinom(c, k)
        if w:
            weights.append((k, w))
    if not weights:
        return acc
    out = []
    for n in range(torder + 1):
        s = acc[n]
        for k, w in weights:
            if k > n:
                break
            base = acc[n - k]
            if not base.is_zero():
                s = s + base.shift(e * k) * w
        out.append(s)
    return out


def expand_product(spec: ProductSpec, torder: int, qorder: int) -> TSeries:
    """Direct expansion of the product, independent of the recurrence.

    Multiplies out every surviving factor's binomial expansion; used as the
    oracle that cross-checks compute_A.
    """
    acc = list(TSeries.one(torder, qorder, spec.params).coeffs)
    for a, e, c in _factor_expansions(spec, qorder):
        acc = _multiply_factor(acc, a, e, c, torder, qorder)
    return TSeries(torder, acc)


@dataclass(frozen=True)
class CoefficientCheck:
    n: int
    ok: bool
    mismatch: Mismatch | None

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "pass": self.ok,
            "first_mismatch": self.mismatch.to_record() if self.mismatch else None,
        }


@dataclass(frozen=True)
class VerificationReport:
    """Per-coefficient comparison of the recurrence against the direct expansion."""

    spec_name: str
    torder: int
    qorder: int
    cases: tuple[CoefficientCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    def to_record(self) -> dict:
        return {
            "type": "product_check",
            "name": self.spec_name,
            "torder": self.torder,
            "qorder": self.qorder,
            "pass": self.ok,
            "cases": [c.to_record() for c in self.cases],
        }

    def lines(self) -> list[str]:
        out = []
        for c in self.cases:
            if c.ok:
                out.append(f"{self.spec_name} n={c.n}: PASS")
            else:
                mm = c.mismatch
                out.append(
                    f"{self.spec_name} n={c.n}: FAIL at q^{mm.q_exp}: "
                    f"recurrence={mm.lhs_term}, product={mm.rhs_term}"
                )
        return out


def verify_spec(spec: ProductSpec, torder: int, qorder: int) -> VerificationReport:
    """Compare compute_A against the t-coefficients of expand_product, exactly."""
    recurrence = compute_A(spec, torder, qorder)
    product = expand_product(spec, torder, qorder)
    cases = []
    for n in range(torder + 1):
        mm = first_mismatch(recurrence[n], product.coeffs[n])
        cases.append(CoefficientCheck(n, mm is None, mm))
    return VerificationReport(spec.name, torder, qorder, tuple(cases))


# -- serialized spec files ----------------------------------------------------
#
# { "name": str, "parameters": [str],
#   "factors": [ { "a": ParamPoly-string, "b": Rational-string,
#                  "alpha": int, "beta": int,
#                  "f": {"type": "linear", "c": Rational-string}
#                     | {"type": "tabulated", "values": [Rational-string]} } ] }


def _rat_field(value, where: str) -> Rat:
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    if isinstance(value, str):
        try:
            return parse_rat(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"{where}: {exc}") from exc
    raise SpecError(f"{where}: expected a rational string like '3/2' (got {value!r})")


def _int_field(value, where: str, minimum: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SpecError(f"{where}: expected an integer (got {value!r})")
    if value < minimum:
        raise SpecError(f"{where}: must be >= {minimum} (got {value})")
    return value


def _fn_from_dict(data, where: str) -> ArithmeticFn:
    if not isinstance(data, dict):
        raise SpecError(f"{where}: expected an object with a 'type' field")
    kind = data.get("type")
    if kind == "linear":
        if "c" not in data:
            raise SpecError(f"{where}.c: missing")
        return LinearFn(_rat_field(data["c"], f"{where}.c"))
    if kind == "tabulated":
        values = data.get("values")
        if not isinstance(values, list):
            raise SpecError(f"{where}.values: expected a list of rational strings")
        return TabulatedFn(
            tuple(_rat_field(v, f"{where}.values[{i}]") for i, v in enumerate(values))
        )
    raise SpecError(f"{where}.type: expected 'linear' or 'tabulated' (got {kind!r})")


def spec_from_dict(data: dict) -> ProductSpec:
    """Build a ProductSpec from parsed JSON, with field-level diagnostics."""
    if not isinstance(data, dict):
        raise SpecError("spec file must contain a JSON object")
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise SpecError("name: expected a nonempty string")
    raw_params = data.get("parameters", [])
    if not isinstance(raw_params, list) or not all(isinstance(p, str) for p in raw_params):
        raise SpecError("parameters: expected a list of identifiers")
    for p in raw_params:
        if not p.isidentifier() or p in ("q", "t"):
            raise SpecError(f"parameters: {p!r} is not usable (q and t are reserved)")
    if len(set(raw_params)) != len(raw_params):
        raise SpecError("parameters: duplicate names")
    params = tuple(raw_params)
    raw_factors = data.get("factors")
    if not isinstance(raw_factors, list) or not raw_factors:
        raise SpecError("factors: expected a nonempty list")
    factors = []
    for i, rf in enumerate(raw_factors):
        where = f"factors[{i}]"
        if not isinstance(rf, dict):
            raise SpecError(f"{where}: expected an object")
        for key in ("a", "b", "alpha", "beta", "f"):
            if key not in rf:
                raise SpecError(f"{where}.{key}: missing")
        if not isinstance(rf["a"], str):
            raise SpecError(f"{where}.a: expected a polynomial string")
        try:
            a = ParamPoly.parse(params, rf["a"])
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"{where}.a: {exc}") from exc
        b = _rat_field(rf["b"], f"{where}.b")
        try:
            alpha = _int_field(rf["alpha"], f"{where}.alpha", 1)
        except SpecError:
            raise SpecError(
                f"{where}.alpha: must be a positive integer (got {rf['alpha']!r})"
            ) from None
        beta = _int_field(rf["beta"], f"{where}.beta", 0)
        fn = _fn_from_dict(rf["f"], f"{where}.f")
        factors.append(Factor(a, b, alpha, beta, fn))
    return ProductSpec(name, tuple(factors), params)


def spec_to_dict(spec: ProductSpec) -> dict:
    return {
        "name": spec.name,
        "parameters": list(spec.params),
        "factors": [
            {
                "a": str(f.a),
                "b": format_rat(f.b),
                "alpha": f.alpha,
                "beta": f.beta,
                "f": f.f.to_dict(),
            }
            for f in spec.factors
        ],
    }


def load_spec(path: str) -> ProductSpec:
    """Read and validate a ProductSpec JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read spec file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return spec_from_dict(data)
