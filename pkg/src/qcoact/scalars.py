"""Exact coefficient arithmetic.

A :class:`Scalar` is a Laurent polynomial with Gaussian-rational
coefficients in three variables

    t = q^(1/2),   u = p^(1/2),   w  (a unit-modulus parameter),

so that every coefficient met in the sphere algebras (q^(1/2), q^(-3/2),
1 - q^2, q - p, ...) is representable exactly.  Conjugation fixes t and u
and sends w to w^-1, which makes |w| = 1 structural.

The textual syntax (shared with the ``.qalg`` presentation files) accepts
rationals ``a/b``, the imaginary unit ``i``, the parameters ``q``, ``p``,
``w``, the roots ``sqrt(q)`` and ``sqrt(p)``, integer exponents ``^-1``,
``^2`` and products by juxtaposition or ``*``::

    >>> parse_scalar("-(1-q^2)*sqrt(q)^-1")
    Scalar('-sqrt(q)^-1 + sqrt(q)^3')
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

__all__ = [
    "GaussRational",
    "Scalar",
    "ScalarSyntaxError",
    "parse_scalar",
    "parse_gauss",
    "scalar_add",
    "scalar_mul",
    "scalar_conj",
    "scalar_eval",
]

Exp = Tuple[int, int, int]
Number = Union[int, Fraction, "GaussRational"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


class GaussRational:
    """A complex number ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @staticmethod
    def coerce(x) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussRational")

    def __add__(self, other):
        if not isinstance(other, GaussRational):
            if isinstance(other, (int, Fraction)):
                return GaussRational(self.re + other, self.im)
            return NotImplemented
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussRational):
            if isinstance(other, (int, Fraction)):
                return GaussRational(self.re - other, self.im)
            return NotImplemented
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussRational):
            if isinstance(other, (int, Fraction)):
                return GaussRational(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRational(a * c, _ZERO)
        return GaussRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRational":
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("GaussRational division by zero")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = GaussRational.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) * self.inverse()

    def conj(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __str__(self):
        return _format_gauss(self)

    def __repr__(self):
        return f"GaussRational({_format_gauss(self)!r})"


_G_ONE = GaussRational(1)
_G_ZERO = GaussRational(0)


def _format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _format_gauss(c: GaussRational) -> str:
    if not c.im:
        return _format_rational(c.re)
    if c.im == 1:
        im = "i"
    elif c.im == -1:
        im = "-i"
    else:
        im = f"{_format_rational(c.im)}*i"
    if not c.re:
        return im
    sign = "" if im.startswith("-") else "+"
    return f"({_format_rational(c.re)}{sign}{im})"


class Scalar:
    """Laurent polynomial in t, u, w over the Gaussian rationals.

    ``terms`` maps exponent triples ``(e_t, e_u, e_w)`` to nonzero
    :class:`GaussRational` coefficients; the empty map is zero.  Instances
    are treated as immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Dict[Exp, Number] | None = None):
        clean = {}
        if terms:
            for k, v in terms.items():
                v = GaussRational.coerce(v)
                if v:
                    clean[tuple(k)] = v
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exp, GaussRational]) -> "Scalar":
        s = object.__new__(cls)
        s.terms = terms
        s._hash = None
        return s

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "Scalar":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, et: int = 0, eu: int = 0, ew: int = 0, c: Number = 1) -> "Scalar":
        return cls({(et, eu, ew): c})

    @classmethod
    def t(cls) -> "Scalar":
        return cls.monomial(1, 0, 0)

    @classmethod
    def u(cls) -> "Scalar":
        return cls.monomial(0, 1, 0)

    @classmethod
    def w(cls) -> "Scalar":
        return cls.monomial(0, 0, 1)

    @classmethod
    def q(cls, k: int = 1) -> "Scalar":
        return cls.monomial(2 * k, 0, 0)

    @classmethod
    def p(cls, k: int = 1) -> "Scalar":
        return cls.monomial(0, 2 * k, 0)

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return Scalar.const(GaussRational.coerce(x))

    # ring operations ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            if cur is None:
                out[k] = v
            else:
                s = cur + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction, GaussRational)):
                if not other:
                    return ZERO
                return Scalar._raw({k: v * other for k, v in self.terms.items()})
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO
        if len(a) == 1 and len(b) == 1:
            (ka, va), = a.items()
            (kb, vb), = b.items()
            return Scalar._raw({(ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]): va * vb})
        out: Dict[Exp, GaussRational] = {}
        for (x0, x1, x2), va in a.items():
            for (y0, y1, y2), vb in b.items():
                k = (x0 + y0, x1 + y1, x2 + y2)
                prod = va * vb
                cur = out.get(k)
                out[k] = prod if cur is None else cur + prod
        return Scalar._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "Scalar":
        """Inverse of a unit (a single Laurent monomial)."""
        if len(self.terms) != 1:
            raise ZeroDivisionError(f"{self} is not a unit of the scalar ring")
        (k, v), = self.terms.items()
        return Scalar._raw({(-k[0], -k[1], -k[2]): v.inverse()})

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Scalar":
        return Scalar._raw({(k[0], k[1], -k[2]): v.conj() for k, v in self.terms.items()})

    # predicates ---------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0, 0) in self.terms)

    def constant_value(self) -> GaussRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0, 0, 0), GaussRational(0))

    def is_w_free(self) -> bool:
        return all(k[2] == 0 for k in self.terms)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # evaluation ---------------------------------------------------------
    def eval(self, t_val, u_val, w_val=None) -> GaussRational:
        return scalar_eval(self, t_val, u_val, w_val)

    def subs_w(self, w_val: GaussRational) -> "Scalar":
        """Specialise the unit parameter, keeping t and u symbolic."""
        w_val = _check_unit(w_val)
        out = ZERO
        for (et, eu, ew), c in self.terms.items():
            out = out + Scalar.monomial(et, eu, 0, c * (w_val ** ew))
        return out

    def eval_tu(self, t_val, u_val) -> "Scalar":
        """Specialise t and u to positive rationals, keeping w symbolic."""
        t_val, u_val = _frac(t_val), _frac(u_val)
        if t_val <= 0 or u_val <= 0:
            raise ValueError("t and u must be positive")
        out: Dict[Exp, GaussRational] = {}
        for (et, eu, ew), c in self.terms.items():
            x = out.get((0, 0, ew), _G_ZERO) + c * GaussRational(t_val ** et * u_val ** eu)
            if x:
                out[(0, 0, ew)] = x
            else:
                out.pop((0, 0, ew), None)
        return Scalar._raw(out)

    def p_to_q(self) -> "Scalar":
        """Substitute p = q (u = t)."""
        out = ZERO
        for (et, eu, ew), c in self.terms.items():
            out = out + Scalar.monomial(et + eu, 0, ew, c)
        return out

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


ZERO = Scalar._raw({})
ONE = Scalar._raw({(0, 0, 0): _G_ONE})
Scalar.ZERO = ZERO
Scalar.ONE = ONE


def scalar_add(s1: Scalar, s2: Scalar) -> Scalar:
    return s1 + s2


def scalar_mul(s1: Scalar, s2: Scalar) -> Scalar:
    return s1 * s2


def scalar_conj(s: Scalar) -> Scalar:
    return s.conj()


def _check_unit(w_val) -> GaussRational:
    w_val = GaussRational.coerce(w_val)
    if w_val.abs2() != 1:
        raise ValueError(f"unit parameter must satisfy |w|^2 = 1, got {w_val}")
    return w_val


def scalar_eval(s: Scalar, t_val, u_val, w_val=None) -> GaussRational:
    """Evaluate at t = ``t_val``, u = ``u_val``, w = ``w_val``.

    ``w_val`` defaults to 1.  Raises ``ValueError`` for non-positive t, u
    or a non-unit w.
    """
    t_val, u_val = _frac(t_val), _frac(u_val)
    if t_val <= 0 or u_val <= 0:
        raise ValueError("t and u must be positive")
    w_val = _G_ONE if w_val is None else _check_unit(w_val)
    out = GaussRational(0)
    for (et, eu, ew), c in s.terms.items():
        term = c * (t_val ** et) * (u_val ** eu)
        if ew:
            term = term * (w_val ** ew)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------

def _format_monomial(et: int, eu: int, ew: int) -> list[str]:
    parts = []
    for e, sym in ((et, "q"), (eu, "p")):
        if not e:
            continue
        if e % 2 == 0:
            k = e // 2
            parts.append(sym if k == 1 else f"{sym}^{k}")
        else:
            parts.append(f"sqrt({sym})" if e == 1 else f"sqrt({sym})^{e}")
    if ew:
        parts.append("w" if ew == 1 else f"w^{ew}")
    return parts


def format_scalar(s: Scalar) -> str:
    if not s.terms:
        return "0"
    pieces = []
    for (et, eu, ew) in sorted(s.terms):
        c = s.terms[(et, eu, ew)]
        mono = _format_monomial(et, eu, ew)
        if not mono:
            pieces.append(_format_gauss(c))
            continue
        body = "*".join(mono)
        if c == 1:
            pieces.append(body)
        elif c == -1:
            pieces.append("-" + body)
        else:
            pieces.append(_format_gauss(c) + "*" + body)
    out = pieces[0]
    for piece in pieces[1:]:
        out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
    return out


class ScalarSyntaxError(ValueError):
    """Syntax error in scalar or presentation text, with a 1-based position."""

    def __init__(self, message: str, line: int = 1, col: int = 1, token: str | None = None):
        self.line, self.col, self.token = line, col, token
        where = f"line {line}, column {col}"
        if token is not None:
            where += f" at token {token!r}"
        super().__init__(f"{where}: {message}")


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class Token:
    __slots__ = ("kind", "text", "col", "end")

    def __init__(self, kind, text, col, end):
        self.kind, self.text, self.col, self.end = kind, text, col, end

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.col})"


def tokenize(text: str, line: int = 1) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(Token("num", num, start + 1, m.end()))
        elif name is not None:
            tokens.append(Token("name", name, start + 1, m.end()))
        elif sym is not None:
            if sym.isspace():
                pos = m.end()
                continue
            if sym not in "+-*/^()=":
                raise ScalarSyntaxError(f"unexpected character {sym!r}", line, start + 1, sym)
            tokens.append(Token("sym", sym, start + 1, m.end()))
        pos = m.end()
    tokens.append(Token("end", "", n + 1, n + 1))
    return tokens


_PARAMS = {"q": Scalar.q(), "p": Scalar.p(), "w": Scalar.w()}
_ROOTS = {"q": Scalar.t(), "p": Scalar.u()}


class ScalarParser:
    """Recursive-descent parser for scalar expressions.

    ``params`` restricts which of ``q``, ``p``, ``w`` may appear.
    Subclasses extend :meth:`factor` to admit non-scalar atoms.
    """

    def __init__(self, text: str, params: Iterable[str] = ("q", "p", "w"), line: int = 1):
        self.text = text
        self.line = line
        self.params = set(params)
        self.tokens = tokenize(text, line)
        self.i = 0

    # token helpers
    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ScalarSyntaxError(message, self.line, tok.col, tok.text or "<end>")

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text:
            self.error(f"expected {text!r}")
        return self.next()

    def at(self, *texts: str) -> bool:
        tok = self.peek()
        return tok.kind == "sym" and tok.text in texts

    # grammar
    def parse(self) -> Scalar:
        value = self.expr()
        if self.peek().kind != "end":
            self.error("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while self.at("+", "-"):
            op = self.next().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def starts_factor(self) -> bool:
        tok = self.peek()
        return tok.kind in ("num", "name") or (tok.kind == "sym" and tok.text == "(")

    def term(self):
        sign = 1
        while self.at("+", "-"):
            if self.next().text == "-":
                sign = -sign
        if not self.starts_factor():
            self.error("expected a term")
        value = self.factor()
        while True:
            if self.at("*"):
                self.next()
                if not self.starts_factor():
                    self.error("expected a factor after '*'")
                value = value * self.factor()
            elif self.starts_factor():
                value = value * self.factor()
            else:
                break
        return -value if sign < 0 else value

    def exponent(self) -> int:
        neg = False
        if self.at("("):
            self.next()
            e = self.exponent()
            self.expect(")")
            return e
        if self.at("-"):
            self.next()
            neg = True
        tok = self.peek()
        if tok.kind != "num":
            self.error("expected an integer exponent")
        self.next()
        return -int(tok.text) if neg else int(tok.text)

    def power(self, base):
        if self.at("^"):
            self.next()
            e = self.exponent()
            try:
                return base ** e
            except ZeroDivisionError:
                self.error("negative power of a non-unit")
        return base

    def factor(self):
        return self.power(self.atom())

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            value = Fraction(int(tok.text))
            if self.at("/"):
                self.next()
                den = self.peek()
                if den.kind != "num":
                    self.error("expected a denominator")
                self.next()
                if int(den.text) == 0:
                    self.error("zero denominator", den)
                value = value / int(den.text)
            return Scalar.const(value)
        if tok.kind == "name":
            return self.name_atom(tok)
        if self.at("("):
            self.next()
            value = self.expr()
            self.expect(")")
            return value
        self.error("unexpected token")

    def name_atom(self, tok: Token):
        self.next()
        name = tok.text
        if name == "i":
            return Scalar.const(GaussRational(0, 1))
        if name == "sqrt":
            self.expect("(")
            arg = self.peek()
            if arg.text not in _ROOTS:
                self.error("sqrt() takes q or p")
            if arg.text not in self.params:
                self.error(f"unknown parameter {arg.text!r}", arg)
            self.next()
            self.expect(")")
            return _ROOTS[arg.text]
        if name in _PARAMS:
            if name not in self.params:
                self.error(f"unknown parameter {name!r}", tok)
            return _PARAMS[name]
        self.error(f"unknown name {name!r}", tok)


def parse_scalar(text: str, params: Iterable[str] = ("q", "p", "w")) -> Scalar:
    return ScalarParser(text, params).parse()


def parse_gauss(text: str) -> GaussRational:
    """Parse a constant such as ``3/5+4/5i``."""
    s = parse_scalar(text, params=())
    return s.constant_value()


def scalar_divexact(a: Scalar, b: Scalar):
    """Return ``a / b`` if the quotient is a Laurent polynomial, else ``None``."""
    if not b:
        raise ZeroDivisionError("division by zero Scalar")
    if not a:
        return ZERO
    if b.is_monomial():
        return a * b.inverse()
    lead_b = max(b.terms)
    inv_lb = b.terms[lead_b].inverse()
    # quotient exponents are confined to a box determined by a and b
    lo = tuple(min(k[i] for k in a.terms) - max(k[i] for k in b.terms) for i in range(3))
    hi = tuple(max(k[i] for k in a.terms) - min(k[i] for k in b.terms) for i in range(3))
    rem = a
    quot: Dict[Exp, GaussRational] = {}
    for _ in range(10**6):
        if not rem:
            return Scalar(quot)
        lead = max(rem.terms)
        e = (lead[0] - lead_b[0], lead[1] - lead_b[1], lead[2] - lead_b[2])
        if any(e[i] < lo[i] or e[i] > hi[i] for i in range(3)):
            return None
        c = rem.terms[lead] * inv_lb
        quot[e] = quot.get(e, GaussRational(0)) + c
        rem = rem - Scalar.monomial(*e, c=c) * b
    return None
