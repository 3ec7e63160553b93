"""Exact coefficient arithmetic: rational scalars and parameter polynomials.

Scalars are plain ``int`` or ``fractions.Fraction`` (arbitrary precision,
always reduced); integral values normalize to ``int``.  A :class:`ParamPoly`
is a polynomial over a fixed tuple of named formal parameters with rational
coefficients, stored sparsely as {exponent-vector: coefficient} with zero
terms pruned, so equal values always compare equal structurally.

All values are immutable after construction and every operation is a pure
function; everything here can be shared freely across threads.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rat = Union[int, Fraction]

_RAT_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def normalize_rat(value: Rat) -> Rat:
    """Reduce a scalar to canonical form: Fractions with denominator 1 become int."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return value
    if isinstance(value, int):
        return value
    raise TypeError(f"not an exact rational: {value!r}")


def parse_rat(text: str) -> Rat:
    """Parse 'p/q' or 'p' into an exact rational."""
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r} (expected 'p' or 'p/q')")
    num = int(m.group(1))
    if m.group(2) is None:
        return num
    den = int(m.group(2))
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return normalize_rat(Fraction(num, den))


def format_rat(value: Rat) -> str:
    """Canonical rendering: 'p/q' with '/q' omitted when the value is integral."""
    return str(normalize_rat(value))


def gbinom(c: Rat, k: int) -> Rat:
    """Generalized binomial coefficient: product_{i=0}^{k-1} (c+i) / k!.

    These are the expansion coefficients of (1-x)^(-c) = sum_k gbinom(c,k) x^k,
    exact for any rational c.  gbinom(c, 0) = 1.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    num: Rat = 1
    for i in range(k):
        num = num * (c + i)
    return normalize_rat(Fraction(num) / math.factorial(k))


class ParamPoly:
    """Polynomial in a declared set of formal parameters, exact rational coefficients.

    ``params`` is the ordered tuple of parameter names, fixed for a whole
    computation; every exponent vector has one entry per name.  A poly whose
    only term sits at the all-zero exponent behaves like its scalar value, and
    plain scalars coerce automatically in mixed arithmetic.
    """

    __slots__ = ("params", "terms")

    def __init__(self, params: Iterable[str], terms: Mapping[tuple[int, ...], Rat]):
        params = tuple(params)
        width = len(params)
        clean: dict[tuple[int, ...], Rat] = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != width:
                raise ValueError(
                    f"exponent vector {exps} does not match parameters {params}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coeff = normalize_rat(coeff)
            if coeff:
                clean[exps] = coeff
        self.params = params
        self.terms = clean

    @classmethod
    def _raw(cls, params: tuple[str, ...], terms: dict[tuple[int, ...], Rat]) -> ParamPoly:
        # Trusted fast path: terms already use well-formed exponent vectors.
        self = object.__new__(cls)
        self.params = params
        self.terms = {e: c for e, c in terms.items() if c}
        return self

    @classmethod
    def zero(cls, params: Iterable[str] = ()) -> ParamPoly:
        return cls._raw(tuple(params), {})

    @classmethod
    def const(cls, params: Iterable[str], value: Rat) -> ParamPoly:
        params = tuple(params)
        value = normalize_rat(value)
        if not value:
            return cls._raw(params, {})
        return cls._raw(params, {(0,) * len(params): value})

    @classmethod
    def var(cls, params: Iterable[str], name: str) -> ParamPoly:
        params = tuple(params)
        if name not in params:
            raise ValueError(f"unknown parameter {name!r}; declared: {params}")
        exps = tuple(1 if p == name else 0 for p in params)
        return cls._raw(params, {exps: 1})

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            if other.params != self.params:
                raise ValueError(
                    f"parameter sets differ: {self.params} vs {other.params}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return ParamPoly.const(self.params, other)
        return NotImplemented  # type: ignore[return-value]

    # -- ring operations --------------------------------------------------

    def __add__(self, other) -> "ParamPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return ParamPoly._raw(self.params, out)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly._raw(self.params, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "ParamPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return ParamPoly._raw(self.params, out)

    def __rsub__(self, other) -> "ParamPoly":
        return (-self) + other

    def __mul__(self, other) -> "ParamPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return ParamPoly._raw(self.params, {})
        if not self.params:
            # Constant-by-constant fast path; () is the only exponent vector.
            return ParamPoly._raw(self.params, {(): a[()] * b[()]})
        out: dict[tuple[int, ...], Rat] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ParamPoly._raw(self.params, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ParamPoly":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = ParamPoly.const(self.params, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- queries ----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Rat:
        """The scalar value of a constant polynomial; error otherwise."""
        if not self.terms:
            return 0
        if not self.is_constant:
            raise ValueError(f"not a constant polynomial: {self}")
        return self.terms[(0,) * len(self.params)]

    def eval(self, assignment: Mapping[str, Rat]) -> Rat:
        """Substitute rationals for every parameter appearing in the polynomial."""
        needed = [i for i in range(len(self.params)) if any(e[i] for e in self.terms)]
        missing = [self.params[i] for i in needed if self.params[i] not in assignment]
        if missing:
            raise ValueError(f"assignment missing parameters: {missing}")
        values = [assignment.get(p, 0) for p in self.params]
        total: Rat = 0
        for exps, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(exps):
                if e:
                    term = term * values[i] ** e
            total = total + term
        return normalize_rat(total)

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self.params == other.params and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not self.terms:
                return other == 0
            return self.is_constant and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        # Constant polys hash like their scalar value, matching __eq__.
        if not self.terms:
            return hash(0)
        if self.is_constant:
            return hash(self.constant_value())
        return hash((self.params, frozenset(self.terms.items())))

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for exps in sorted(self.terms):
            coeff = self.terms[exps]
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.params, exps)
                if e
            ]
            mag = format_rat(abs(coeff))
            if factors and mag == "1":
                body = "*".join(factors)
            elif factors:
                body = "*".join([mag] + factors)
            else:
                body = mag
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"ParamPoly({self.params!r}, '{self}')"

    @classmethod
    def parse(cls, params: Iterable[str], text: str) -> "ParamPoly":
        """Parse the canonical term-list syntax, e.g. '1 + 2*a - 3/2*a^2*x'."""
        params = tuple(params)
        tokens = _tokenize(text)
        pos = 0
        terms: dict[tuple[int, ...], Rat] = {}
        if not tokens:
            raise ValueError("empty polynomial string")
        while pos < len(tokens):
            sign = 1
            while pos < len(tokens) and tokens[pos] in ("+", "-"):
                if tokens[pos] == "-":
                    sign = -sign
                pos += 1
            if pos >= len(tokens):
                raise ValueError(f"dangling sign in {text!r}")
            coeff: Rat = sign
            exps = [0] * len(params)
            expect_factor = True
            while expect_factor:
                tok = tokens[pos] if pos < len(tokens) else None
                if tok is None:
                    raise ValueError(f"unexpected end of input in {text!r}")
                if tok.isdigit():
                    value: Rat = int(tok)
                    pos += 1
                    if pos + 1 < len(tokens) and tokens[pos] == "/" and tokens[pos + 1].isdigit():
                        den = int(tokens[pos + 1])
                        if den == 0:
                            raise ZeroDivisionError(f"zero denominator in {text!r}")
                        value = Fraction(value, den)
                        pos += 2
                    coeff = coeff * value
                elif tok not in ("+", "-", "*", "/", "^"):
                    if tok not in params:
                        raise ValueError(
                            f"unknown parameter {tok!r} in {text!r}; declared: {params}"
                        )
                    pos += 1
                    power = 1
                    if pos + 1 < len(tokens) and tokens[pos] == "^" and tokens[pos + 1].isdigit():
                        power = int(tokens[pos + 1])
                        pos += 2
                    exps[params.index(tok)] += power
                else:
                    raise ValueError(f"unexpected {tok!r} in {text!r}")
                if pos < len(tokens) and tokens[pos] == "*":
                    pos += 1
                    expect_factor = True
                else:
                    expect_factor = False
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + normalize_rat(coeff)
        return cls(params, terms)


_TOKEN_RE = re.compile(r"\d+|[A-Za-z_]\w*|[+\-*/^]|\S")


def _tokenize(text: str) -> list[str]:
    tokens = _TOKEN_RE.findall(text)
    for t in tokens:
        if not (t.isdigit() or t.isidentifier() or t in "+-*/^"):
            raise ValueError(f"bad token {t!r} in polynomial string")
    return tokens
