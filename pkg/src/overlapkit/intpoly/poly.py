"""Dense univariate polynomials over the integers.

Coefficients are stored ascending (index = degree of the term), with no
trailing zeros; the zero polynomial is the empty tuple. Everything is exact:
division helpers either return an integer-coefficient result or refuse.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from ..errors import DivisorZero, InvalidArgument, PolySyntaxError, UnsupportedExponent

Scalar = Union[int, Fraction]


class IntPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if not isinstance(c, int):
                raise InvalidArgument(f"integer coefficients required, got {c!r}")
        self_coeffs: tuple[int, ...] = tuple(cs)
        object.__setattr__(self, "coeffs", self_coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def one(cls) -> "IntPoly":
        return cls((1,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, coeff: int, exponent: int) -> "IntPoly":
        if exponent < 0:
            raise InvalidArgument(f"exponent must be nonnegative, got {exponent}")
        return cls((0,) * exponent + (coeff,))

    # -- structure ------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({self.to_string()!r})"

    # -- ring arithmetic --------------------------------------------------------

    def __add__(self, other) -> "IntPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "IntPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise InvalidArgument(f"polynomial power needs a nonnegative integer, got {exponent!r}")
        out = IntPoly.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    @staticmethod
    def _coerce(other) -> Optional["IntPoly"]:
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly((other,))
        return None

    # -- evaluation and calculus -------------------------------------------------

    def evaluate(self, x):
        """Horner evaluation; exact in whatever ring x lives in."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def inflate(self, k: int) -> "IntPoly":
        """Substitute x -> x^k."""
        if k < 1:
            raise InvalidArgument(f"inflate needs k >= 1, got {k}")
        if self.is_zero or k == 1:
            return self
        out = [0] * (self.degree * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPoly(out)

    def shift(self, e: int) -> "IntPoly":
        """Multiply by x^e."""
        if e < 0:
            raise InvalidArgument(f"shift needs e >= 0, got {e}")
        if self.is_zero:
            return self
        return IntPoly((0,) * e + self.coeffs)

    def trailing_zeros(self) -> int:
        if self.is_zero:
            return 0
        n = 0
        while self.coeffs[n] == 0:
            n += 1
        return n

    # -- content and normalization --------------------------------------------------

    def content(self) -> int:
        """gcd of the coefficients, nonnegative; 0 only for the zero polynomial."""
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive_part(self) -> "IntPoly":
        if self.is_zero:
            return self
        c = self.content()
        return IntPoly(tuple(v // c for v in self.coeffs))

    def monic_positive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        p = self.primitive_part()
        return -p if p.lc < 0 else p

    def norm1(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def max_norm(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    # -- rendering ----------------------------------------------------------------

    def to_string(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else f"{mag}*"
                body = head + (var if e == 1 else f"{var}^{e}")
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(sign + body)
        return "".join(parts)


# -- exact division ------------------------------------------------------------------


def divmod_frac(dividend: IntPoly, divisor: IntPoly) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over the rationals, coefficient lists ascending."""
    if divisor.is_zero:
        raise DivisorZero("polynomial division by zero")
    rem: list[Fraction] = [Fraction(c) for c in dividend.coeffs]
    dlen = len(divisor.coeffs)
    lead = Fraction(divisor.lc)
    quot: list[Fraction] = [Fraction(0)] * max(0, len(rem) - dlen + 1)
    for top in range(len(rem) - 1, dlen - 2, -1):
        if rem[top] == 0:
            continue
        q = rem[top] / lead
        pos = top - (dlen - 1)
        quot[pos] = q
        for j, dc in enumerate(divisor.coeffs):
            rem[pos + j] -= q * dc
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def exact_div(dividend: IntPoly, divisor: IntPoly) -> Optional[IntPoly]:
    """The quotient U with divisor*U = dividend over the integers, else None."""
    if divisor.is_zero:
        raise DivisorZero("polynomial division by zero")
    if dividend.is_zero:
        return IntPoly()
    if dividend.degree < divisor.degree:
        return None
    if abs(divisor.lc) == 1:
        # Synthetic division stays integral when the divisor is (anti)monic.
        rem = list(dividend.coeffs)
        dlen = len(divisor.coeffs)
        lead = divisor.lc
        quot = [0] * (len(rem) - dlen + 1)
        for top in range(len(rem) - 1, dlen - 2, -1):
            if rem[top] == 0:
                continue
            q = rem[top] * lead  # lead is +-1, so this is exact
            pos = top - (dlen - 1)
            quot[pos] = q
            for j, dc in enumerate(divisor.coeffs):
                rem[pos + j] -= q * dc
        if any(rem[: dlen - 1]):
            return None
        return IntPoly(quot)
    quot, rem = divmod_frac(dividend, divisor)
    if rem:
        return None
    if any(q.denominator != 1 for q in quot):
        return None
    return IntPoly(tuple(int(q) for q in quot))


def _pseudo_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder of lc(b)^(deg a - deg b + 1) * a by b."""
    rem = list(a.coeffs)
    dlen = len(b.coeffs)
    lead = b.lc
    for top in range(len(rem) - 1, dlen - 2, -1):
        head = rem[top]
        for i in range(len(rem)):
            rem[i] *= lead
        if head:
            pos = top - (dlen - 1)
            for j, dc in enumerate(b.coeffs):
                rem[pos + j] -= head * dc
        rem = rem[:top]
    return IntPoly(rem)


def gcd_poly(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (contents are ignored)."""
    if a.is_zero and b.is_zero:
        raise InvalidArgument("gcd of two zero polynomials")
    if a.is_zero:
        return b.monic_positive()
    if b.is_zero:
        return a.monic_positive()
    p, q = a.monic_positive(), b.monic_positive()
    if p.degree < q.degree:
        p, q = q, p
    while not q.is_zero:
        r = _pseudo_rem(p, q)
        p, q = q, r.monic_positive() if not r.is_zero else r
    return p.monic_positive()


# -- the structured families ------------------------------------------------------


def family_poly(n: int, m: int, k: int) -> IntPoly:
    """x^(2k) - n*x^k + m."""
    if k < 1:
        raise InvalidArgument(f"family_poly needs k >= 1, got {k}")
    out = [0] * (2 * k + 1)
    out[0] = m
    out[k] = -n
    out[2 * k] = 1
    return IntPoly(out)


def moran_poly(exponents: Sequence[int]) -> IntPoly:
    """x^(k_t) - sum_i x^(k_t - k_i) for sorted positive exponents k_1 <= ... <= k_t.

    Like terms combine, so repeated exponents produce coefficients below -1.
    """
    ks = list(exponents)
    if not ks:
        raise InvalidArgument("moran_poly needs at least one exponent")
    if any(k < 1 for k in ks):
        raise InvalidArgument(f"moran_poly exponents must be positive, got {ks}")
    if any(ks[i] > ks[i + 1] for i in range(len(ks) - 1)):
        raise InvalidArgument(f"moran_poly exponents must be sorted ascending, got {ks}")
    top = ks[-1]
    out = [0] * (top + 1)
    out[top] += 1
    for k in ks:
        out[top - k] -= 1
    return IntPoly(out)


# -- parsing -------------------------------------------------------------------------

_ADD, _MUL, _POW = 1, 2, 3


class _Parser:
    """Precedence climber over +, -, *, ^, parentheses, integers, one variable.

    Adjacent primaries multiply implicitly, so 3x^2 and 2(x+1) parse.
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.var: Optional[str] = None

    def fail(self, message: str, pos: Optional[int] = None):
        raise PolySyntaxError(message, position=self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        if self.pos >= len(self.text):
            return ""
        ch = self.text[self.pos]
        return "-" if ch == "−" else ch

    def parse(self) -> IntPoly:
        result = self.expr(_ADD)
        self.skip_ws()
        if self.pos < len(self.text):
            self.fail(f"unexpected {self.text[self.pos]!r}")
        return result

    def expr(self, min_prec: int) -> IntPoly:
        left = self.unary()
        while True:
            ch = self.peek()
            # note: peek returns "" at end of input, and "" is a substring of
            # every string, so membership must test against a tuple
            if ch in ("+", "-"):
                prec, right_assoc = _ADD, False
            elif ch == "*":
                prec, right_assoc = _MUL, False
            elif ch == "^":
                prec, right_assoc = _POW, True
            elif ch.isalnum() or ch == "(":
                prec, right_assoc = _MUL, False
                ch = ""  # implicit product: no operator to consume
            else:
                break
            if prec < min_prec:
                break
            op_pos = self.pos
            if ch:
                self.pos += 1
            rhs = self.expr(prec if right_assoc else prec + 1)
            if ch == "+":
                left = left + rhs
            elif ch == "-":
                left = left - rhs
            elif ch == "^":
                left = self._power(left, rhs, op_pos)
            else:
                left = left * rhs
        return left

    def _power(self, base: IntPoly, exponent: IntPoly, op_pos: int) -> IntPoly:
        if exponent.degree > 0:
            raise UnsupportedExponent("exponent must be a constant", position=op_pos)
        e = exponent.lc  # 0 for the zero polynomial
        if e < 0:
            raise UnsupportedExponent(f"exponent must be nonnegative, got {e}", position=op_pos)
        return base**e

    def unary(self) -> IntPoly:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.expr(_MUL)
        if ch == "+":
            self.pos += 1
            return self.expr(_MUL)
        return self.primary()

    def primary(self) -> IntPoly:
        ch = self.peek()
        if ch == "":
            self.fail("unexpected end of input")
        if ch == "(":
            self.pos += 1
            inner = self.expr(_ADD)
            if self.peek() != ")":
                self.fail("expected ')'")
            self.pos += 1
            return inner
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return IntPoly((int(self.text[start : self.pos]),))
        if ch.isalpha():
            if self.var is None:
                self.var = ch
            elif self.var != ch:
                self.fail(f"single variable expected, saw {self.var!r} and {ch!r}")
            self.pos += 1
            return IntPoly.x()
        self.fail(f"unexpected {ch!r}")
        raise AssertionError("unreachable")


def parse_poly(text: str) -> IntPoly:
    """Parse an integer polynomial expression in one variable."""
    if not text.strip():
        raise PolySyntaxError("empty polynomial expression", position=0)
    return _Parser(text).parse()
