"""Truncated formal power series with exact coefficients.

:class:`QSeries` is a series in q truncated at a configured order N
(coefficients are :class:`~qconv.polys.ParamPoly`); :class:`TSeries` is a
series in t truncated at order M whose coefficients are QSeries of one common
qorder.  All arithmetic is exact modulo q^(N+1), respectively (t^(M+1), q^(N+1)).
The truncation order is a property of each value and is checked at operation
time, so the same expression can be evaluated at several orders in one process.

Values are immutable and operations pure; safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .polys import ParamPoly, Rat, gbinom, normalize_rat

Coeff = Union[ParamPoly, int, Fraction]


@dataclass(frozen=True)
class Mismatch:
    """First point where two series disagree: q-exponent plus both terms."""

    q_exp: int
    lhs_term: str
    rhs_term: str

    def to_record(self) -> dict:
        return {"q_exp": self.q_exp, "lhs_term": self.lhs_term, "rhs_term": self.rhs_term}


class QSeries:
    """Power series in q, exact modulo q^(qorder+1), ParamPoly coefficients."""

    __slots__ = ("qorder", "coeffs", "params")

    def __init__(self, qorder: int, coeffs: Sequence[ParamPoly]):
        if qorder < 0:
            raise ValueError("qorder must be nonnegative")
        coeffs = tuple(coeffs)
        if len(coeffs) != qorder + 1:
            raise ValueError(f"need {qorder + 1} coefficients, got {len(coeffs)}")
        params = coeffs[0].params
        for c in coeffs:
            if c.params != params:
                raise ValueError("coefficients use differing parameter sets")
        self.qorder = qorder
        self.coeffs = coeffs
        self.params = params

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, qorder: int, params: Iterable[str] = ()) -> QSeries:
        z = ParamPoly.zero(params)
        return cls(qorder, [z] * (qorder + 1))

    @classmethod
    def one(cls, qorder: int, params: Iterable[str] = ()) -> QSeries:
        return cls.monomial(qorder, 0, 1, params)

    @classmethod
    def monomial(
        cls, qorder: int, exponent: int, coeff: Coeff = 1, params: Iterable[str] = ()
    ) -> QSeries:
        """coeff * q^exponent, truncated (zero series when exponent > qorder)."""
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        if isinstance(coeff, ParamPoly):
            poly, params = coeff, coeff.params
        else:
            params = tuple(params)
            poly = ParamPoly.const(params, coeff)
        z = ParamPoly.zero(params)
        coeffs = [z] * (qorder + 1)
        if exponent <= qorder:
            coeffs[exponent] = poly
        return cls(qorder, coeffs)

    @classmethod
    def from_coeffs(
        cls, coeffs: Sequence[Coeff], qorder: int | None = None, params: Iterable[str] = ()
    ) -> QSeries:
        """Build from scalars/polys for exponents 0..len-1, zero-padded to qorder."""
        params = tuple(params)
        polys = [
            c if isinstance(c, ParamPoly) else ParamPoly.const(params, c) for c in coeffs
        ]
        if polys:
            params = polys[0].params
        if qorder is None:
            qorder = len(polys) - 1
        z = ParamPoly.zero(params)
        polys = polys[: qorder + 1] + [z] * (qorder + 1 - len(polys))
        return cls(qorder, polys)

    # -- helpers ------------------------------------------------------------

    def _check_compatible(self, other: QSeries) -> None:
        if self.qorder != other.qorder:
            raise ValueError(f"qorder mismatch: {self.qorder} vs {other.qorder}")
        if self.params != other.params:
            raise ValueError(f"parameter sets differ: {self.params} vs {other.params}")

    def _coerce_coeff(self, value: Coeff) -> ParamPoly:
        if isinstance(value, ParamPoly):
            if value.params != self.params:
                raise ValueError(f"parameter sets differ: {self.params} vs {value.params}")
            return value
        return ParamPoly.const(self.params, value)

    def coefficient(self, k: int) -> ParamPoly:
        if not 0 <= k <= self.qorder:
            raise IndexError(f"exponent {k} outside 0..{self.qorder}")
        return self.coeffs[k]

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> QSeries:
        if isinstance(other, QSeries):
            self._check_compatible(other)
            return QSeries(
                self.qorder, [a + b for a, b in zip(self.coeffs, other.coeffs)]
            )
        if isinstance(other, (ParamPoly, int, Fraction)):
            poly = self._coerce_coeff(other)
            coeffs = list(self.coeffs)
            coeffs[0] = coeffs[0] + poly
            return QSeries(self.qorder, coeffs)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries(self.qorder, [-c for c in self.coeffs])

    def __sub__(self, other) -> QSeries:
        if isinstance(other, (QSeries, ParamPoly, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> QSeries:
        return (-self) + other

    def __mul__(self, other) -> QSeries:
        if isinstance(other, QSeries):
            self._check_compatible(other)
            n = self.qorder
            acc: list[dict | None] = [None] * (n + 1)
            width = len(self.params)
            for i, ci in enumerate(self.coeffs):
                ti = ci.terms
                if not ti:
                    continue
                for j in range(n + 1 - i):
                    tj = other.coeffs[j].terms
                    if not tj:
                        continue
                    d = acc[i + j]
                    if d is None:
                        d = {}
                        acc[i + j] = d
                    if width:
                        for e1, c1 in ti.items():
                            for e2, c2 in tj.items():
                                e = tuple(x + y for x, y in zip(e1, e2))
                                d[e] = d.get(e, 0) + c1 * c2
                    else:
                        d[()] = d.get((), 0) + ti[()] * tj[()]
            zero = ParamPoly.zero(self.params)
            return QSeries(
                n,
                [zero if d is None else ParamPoly._raw(self.params, d) for d in acc],
            )
        if isinstance(other, (ParamPoly, int, Fraction)):
            poly = self._coerce_coeff(other)
            return QSeries(self.qorder, [c * poly for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def invert(self) -> QSeries:
        """Multiplicative inverse modulo q^(qorder+1).

        Requires the constant coefficient to be a nonzero scalar (no formal
        parameters at q^0); solves s*u = 1 coefficient by coefficient.
        """
        c0 = self.coeffs[0]
        if not c0.is_constant:
            raise ValueError(f"constant term {c0} is not scalar; cannot invert")
        v0 = c0.constant_value()
        if v0 == 0:
            raise ValueError("constant term is zero; series is not invertible")
        inv0: Rat = normalize_rat(Fraction(1) / Fraction(v0))
        inv0_poly = ParamPoly.const(self.params, inv0)
        out = [inv0_poly]
        for k in range(1, self.qorder + 1):
            total = ParamPoly.zero(self.params)
            for i in range(1, k + 1):
                si = self.coeffs[i]
                if si.terms:
                    total = total + si * out[k - i]
            out.append(total * -inv0)
        return QSeries(self.qorder, out)

    def shift(self, e: int) -> QSeries:
        """Multiply by q^e: coefficient k of the result is coefficient k-e of self."""
        if e < 0:
            raise ValueError("shift must be nonnegative")
        if e == 0:
            return self
        if e > self.qorder:
            return QSeries.zero(self.qorder, self.params)
        z = ParamPoly.zero(self.params)
        return QSeries(self.qorder, [z] * e + list(self.coeffs[: self.qorder + 1 - e]))

    def truncate(self, qorder: int) -> QSeries:
        """Drop coefficients above a smaller qorder."""
        if qorder > self.qorder:
            raise ValueError(f"cannot extend qorder {self.qorder} to {qorder}")
        return QSeries(qorder, self.coeffs[: qorder + 1])

    def eval_params(self, assignment: Mapping[str, Rat]) -> QSeries:
        """Specialize every parameter to a rational, yielding a parameter-free series."""
        return QSeries(
            self.qorder,
            [ParamPoly.const((), c.eval(assignment)) for c in self.coeffs],
        )

    # -- comparison and rendering ---------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.qorder == other.qorder
            and self.params == other.params
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.qorder, self.coeffs))

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __str__(self) -> str:
        pieces: list[str] = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            qpart = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if len(c.terms) > 1:
                body, negative = f"({c})", False
            else:
                ((exps, coeff),) = c.terms.items()
                negative = coeff < 0
                mono = ParamPoly._raw(c.params, {exps: abs(coeff)})
                body = str(mono)
                if body == "1" and qpart:
                    body = ""
            if body and qpart:
                piece = f"{body}*{qpart}"
            else:
                piece = body or qpart or "1"
            if not pieces:
                pieces.append(piece if not negative else f"-{piece}")
            else:
                pieces.append(f"+ {piece}" if not negative else f"- {piece}")
        return " ".join(pieces) if pieces else "0"

    def __repr__(self) -> str:
        return f"QSeries(qorder={self.qorder}, '{self}')"

    def to_record(self) -> dict:
        return {"qorder": self.qorder, "coeffs": [str(c) for c in self.coeffs]}


def first_mismatch(lhs: QSeries, rhs: QSeries) -> Mismatch | None:
    """Locate the lowest q-exponent where two series differ, if any."""
    if lhs.qorder != rhs.qorder:
        raise ValueError("cannot compare series of different qorder")
    for k in range(lhs.qorder + 1):
        if lhs.coeffs[k] != rhs.coeffs[k]:
            return Mismatch(k, str(lhs.coeffs[k]), str(rhs.coeffs[k]))
    return None


class TSeries:
    """Power series in t truncated at torder, with QSeries coefficients."""

    __slots__ = ("torder", "qorder", "coeffs", "params")

    def __init__(self, torder: int, coeffs: Sequence[QSeries]):
        if torder < 0:
            raise ValueError("torder must be nonnegative")
        coeffs = tuple(coeffs)
        if len(coeffs) != torder + 1:
            raise ValueError(f"need {torder + 1} coefficients, got {len(coeffs)}")
        qorder = coeffs[0].qorder
        params = coeffs[0].params
        for c in coeffs:
            if c.qorder != qorder:
                raise ValueError("coefficients have nonuniform qorder")
            if c.params != params:
                raise ValueError("coefficients use differing parameter sets")
        self.torder = torder
        self.qorder = qorder
        self.coeffs = coeffs
        self.params = params

    @classmethod
    def one(cls, torder: int, qorder: int, params: Iterable[str] = ()) -> TSeries:
        params = tuple(params)
        coeffs = [QSeries.one(qorder, params)] + [
            QSeries.zero(qorder, params) for _ in range(torder)
        ]
        return cls(torder, coeffs)

    @classmethod
    def zero(cls, torder: int, qorder: int, params: Iterable[str] = ()) -> TSeries:
        params = tuple(params)
        return cls(torder, [QSeries.zero(qorder, params)] * (torder + 1))

    def _check_compatible(self, other: TSeries) -> None:
        if self.torder != other.torder or self.qorder != other.qorder:
            raise ValueError(
                f"order mismatch: (t={self.torder}, q={self.qorder}) vs "
                f"(t={other.torder}, q={other.qorder})"
            )
        if self.params != other.params:
            raise ValueError(f"parameter sets differ: {self.params} vs {other.params}")

    def coefficient(self, n: int) -> QSeries:
        if not 0 <= n <= self.torder:
            raise IndexError(f"t-exponent {n} outside 0..{self.torder}")
        return self.coeffs[n]

    def __add__(self, other) -> TSeries:
        if not isinstance(other, TSeries):
            return NotImplemented
        self._check_compatible(other)
        return TSeries(self.torder, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> TSeries:
        return TSeries(self.torder, [-c for c in self.coeffs])

    def __sub__(self, other) -> TSeries:
        if not isinstance(other, TSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> TSeries:
        if isinstance(other, TSeries):
            self._check_compatible(other)
            out = []
            for n in range(self.torder + 1):
                s = QSeries.zero(self.qorder, self.params)
                for i in range(n + 1):
                    a, b = self.coeffs[i], other.coeffs[n - i]
                    if not (a.is_zero() or b.is_zero()):
                        s = s + a * b
                out.append(s)
            return TSeries(self.torder, out)
        if isinstance(other, (QSeries, ParamPoly, int, Fraction)):
            return TSeries(self.torder, [c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def t_dt(self) -> TSeries:
        """The operator t*d/dt: sends sum A(n) t^n to sum n*A(n) t^n."""
        return TSeries(
            self.torder, [c * n for n, c in enumerate(self.coeffs)]
        )

    def truncate_t(self, torder: int) -> TSeries:
        if torder > self.torder:
            raise ValueError(f"cannot extend torder {self.torder} to {torder}")
        return TSeries(torder, self.coeffs[: torder + 1])

    def truncate_q(self, qorder: int) -> TSeries:
        return TSeries(self.torder, [c.truncate(qorder) for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.torder == other.torder and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.torder, self.coeffs))

    def __str__(self) -> str:
        pieces = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            tpart = "" if n == 0 else ("t" if n == 1 else f"t^{n}")
            body = str(c)
            if tpart and body != "1":
                pieces.append(f"({body})*{tpart}")
            elif tpart:
                pieces.append(tpart)
            else:
                pieces.append(body)
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self) -> str:
        return f"TSeries(torder={self.torder}, qorder={self.qorder}, '{self}')"

    def to_record(self) -> dict:
        return {"torder": self.torder, "coeffs": [c.to_record() for c in self.coeffs]}


def expand_factor(a: ParamPoly, e: int, c: Rat, torder: int, qorder: int) -> TSeries:
    """Expand one product factor (1 - a*t*q^e)^(-c) modulo (t^(M+1), q^(N+1)).

    The t^k coefficient is gbinom(c, k) * a^k * q^(e*k), which truncates to
    zero whenever e*k exceeds the qorder.
    """
    if e < 0:
        raise ValueError("q-exponent must be nonnegative")
    coeffs = []
    a_pow = ParamPoly.const(a.params, 1)
    for k in range(torder + 1):
        if k:
            a_pow = a_pow * a
        if e * k > qorder:
            coeffs.append(QSeries.zero(qorder, a.params))
            continue
        weight = gbinom(c, k)
        coeffs.append(QSeries.monomial(qorder, e * k, a_pow * weight))
    return TSeries(torder, coeffs)
