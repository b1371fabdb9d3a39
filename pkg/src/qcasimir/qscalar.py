"""Exact scalars: rationals, Laurent polynomials in q, q-integers.

Rationals are ``flint.fmpq`` values (arbitrary precision, always in lowest
terms with a positive denominator).  Operator-level work happens over the
rationals at a fixed generic ``q``; :class:`LaurentPoly` is used for closed
form characters and for evaluation at ``q = 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from flint import fmpq, fmpz

Rational = fmpq
Number = Union[int, fmpq, "LaurentPoly"]

__all__ = [
    "Rational", "LaurentPoly", "QContext", "ScalarSyntaxError",
    "as_rational", "parse_rational", "parse_scalar", "q_int", "eval_at",
    "rational_text",
]


def as_rational(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, (int, fmpz)):
        return fmpq(x)
    if isinstance(x, str):
        return parse_rational(x)
    # fractions.Fraction and anything else with numerator/denominator
    num = getattr(x, "numerator", None)
    den = getattr(x, "denominator", None)
    if num is not None and den is not None:
        return fmpq(int(num), int(den))
    raise TypeError(f"cannot convert {x!r} to a rational")


def rational_text(x: fmpq) -> str:
    """Lossless text: ``"p"`` or ``"p/q"``."""
    return str(as_rational(x))


class LaurentPoly:
    """Finite sum ``sum_e c_e q^e`` with rational coefficients.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean: dict[int, fmpq] = {}
        if terms:
            for e, c in terms.items():
                c = as_rational(c)
                if c != 0:
                    clean[int(e)] = c
        self._terms = clean

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c=1) -> LaurentPoly:
        return cls({e: c})

    @classmethod
    def q(cls) -> LaurentPoly:
        return cls({1: 1})

    @classmethod
    def nu(cls) -> LaurentPoly:
        """``q - q^{-1}``."""
        return cls({1: 1, -1: -1})

    @staticmethod
    def coerce(x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.const(as_rational(x))

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict[int, fmpq]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def degree_range(self) -> tuple[int, int]:
        if not self._terms:
            return (0, 0)
        return (min(self._terms), max(self._terms))

    def __getitem__(self, e: int) -> fmpq:
        return self._terms.get(e, fmpq(0))

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, fmpq(0)) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other) -> LaurentPoly:
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        out: dict[int, fmpq] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, fmpq(0)) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            return self.inverse_monomial() ** (-n)
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse_monomial(self) -> LaurentPoly:
        if not self.is_monomial():
            raise ZeroDivisionError("only monomials c*q^n are invertible")
        (e, c), = self._terms.items()
        return LaurentPoly({-e: 1 / c})

    def __truediv__(self, other) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        return self * other.inverse_monomial()

    def __rtruediv__(self, other) -> LaurentPoly:
        return LaurentPoly.coerce(other) / self

    def exact_div(self, other) -> LaurentPoly:
        """Quotient by any nonzero Laurent polynomial; the division must be exact."""
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_monomial():
            return self / other
        rest = self
        top_d = max(other._terms)
        lead = other._terms[top_d]
        low_d = min(other._terms)
        quotient: dict[int, fmpq] = {}
        while not rest.is_zero():
            top = max(rest._terms)
            if top - top_d < min(rest._terms) - low_d:
                raise ArithmeticError(f"{other} does not divide {self}")
            e = top - top_d
            c = rest._terms[top] / lead
            quotient[e] = c
            rest = rest - LaurentPoly.monomial(e, c) * other
        return LaurentPoly(quotient)

    def __eq__(self, other) -> bool:
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted((e, str(c)) for e, c in self._terms.items())))

    def __call__(self, q) -> fmpq:
        q = as_rational(q)
        if q == 0 and any(e < 0 for e in self._terms):
            raise ZeroDivisionError("negative power of q at q = 0")
        total = fmpq(0)
        for e, c in self._terms.items():
            total += c * q ** e
        return total

    # printing -----------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if e == 0:
                body = str(a)
            else:
                power = "q" if e == 1 else f"q^{e}"
                body = power if a == 1 else f"{a}*{power}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def q_int(n: int) -> LaurentPoly:
    """q-integer ``(q^n - q^{-n}) / (q - q^{-1})``."""
    if n == 0:
        return LaurentPoly()
    if n < 0:
        return -q_int(-n)
    return LaurentPoly({n - 1 - 2 * i: 1 for i in range(n)})


@dataclass(frozen=True)
class QContext:
    """A fixed generic value of q.

    ``q`` must avoid -1, 0, 1 and every root of unity of order up to
    ``guard`` (for rational q only +-1 are roots of unity, but the check is
    kept explicit).
    """

    q: fmpq
    guard: int = 64
    nu: fmpq = field(init=False)

    def __post_init__(self):
        q = as_rational(self.q)
        object.__setattr__(self, "q", q)
        if q in (fmpq(-1), fmpq(0), fmpq(1)):
            raise ValueError(f"q = {q} is not generic")
        for k in range(2, self.guard + 1):
            if q ** k == 1:
                raise ValueError(f"q = {q} is a root of unity of order {k}")
        object.__setattr__(self, "nu", q - 1 / q)

    @classmethod
    def parse(cls, text: str, guard: int = 64) -> QContext:
        value = parse_scalar(text)
        if value.degree_range() != (0, 0):
            raise ValueError(f"q must be a rational constant, got {text!r}")
        return cls(value[0], guard)

    def qint(self, n: int) -> fmpq:
        return q_int(n)(self.q)

    def __str__(self) -> str:
        return str(self.q)


def eval_at(p, ctx: QContext | object) -> fmpq:
    q = ctx.q if isinstance(ctx, QContext) else as_rational(ctx)
    return LaurentPoly.coerce(p)(q)


# --------------------------------------------------------------------------
# scalar expression parser
#
#   expr   := term (('+' | '-') term)*
#   term   := unary (('*' | '/') unary)*
#   unary  := ('+' | '-') unary | power
#   power  := atom ('^' ('+' | '-')? INT)?
#   atom   := INT | 'q' | '(' expr ')'

class ScalarSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise ScalarSyntaxError(f"unexpected character {text[start]!r}", text, start)
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("q", "q", m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        raise ScalarSyntaxError(message, self.text, tok[2])

    def parse(self) -> LaurentPoly:
        value = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self) -> LaurentPoly:
        value = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> LaurentPoly:
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op_tok = self.take()
            rhs = self.unary()
            if op_tok[1] == "*":
                value = value * rhs
            else:
                if not rhs.is_monomial():
                    self.error("division by a non-monomial", op_tok)
                value = value / rhs
        return value

    def unary(self) -> LaurentPoly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def power(self) -> LaurentPoly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] in "+-":
                sign = -1 if self.take()[1] == "-" else 1
            tok = self.take()
            if tok[0] != "int":
                self.error("expected integer exponent", tok)
            n = sign * int(tok[1])
            if n < 0 and not base.is_monomial():
                self.error("negative power of a non-monomial", tok)
            return base ** n
        return base

    def atom(self) -> LaurentPoly:
        tok = self.take()
        if tok[0] == "int":
            return LaurentPoly.const(int(tok[1]))
        if tok[0] == "q":
            return LaurentPoly.q()
        if tok == ("op", "(", tok[2]):
            value = self.expr()
            close = self.take()
            if close[1] != ")":
                self.error("expected ')'", close)
            return value
        self.error(f"unexpected {tok[1] or 'end of input'!r}", tok)


def parse_scalar(text: str) -> LaurentPoly:
    """Parse an expression in ``q`` with rational coefficients."""
    return _Parser(text).parse()


def parse_rational(text: str) -> fmpq:
    value = parse_scalar(text)
    if value.degree_range() != (0, 0):
        raise ValueError(f"{text!r} is not a rational constant")
    return value[0]
