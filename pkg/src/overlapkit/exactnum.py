"""Exact arithmetic foundation: big rationals, real quadratic surds, perfect
power detection, and multiplicative dependence of rationals.

Everything here is a pure function on immutable values. Parameters stay
rational (or live in one real quadratic field) so that structural predicates
elsewhere in the toolkit are decided by exact equality, never by epsilon.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional, Union

import mpmath

from .errors import FactorizationUnknown, InvalidArgument, NonPositiveDiscriminant

# Arbitrary precision rationals: stdlib Fraction already keeps the canonical
# reduced form with a positive denominator.
BigRational = Fraction

DEFAULT_PRECISION_BITS = 128

Rationalish = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse 'p' or 'p/q'. Decimal notation is rejected so inputs stay exact."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            return Fraction(int(num.strip()), int(den.strip()))
        return Fraction(int(num.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"not an exact rational: {text!r}") from exc


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def _fraction_to_mpf(value: Fraction) -> mpmath.mpf:
    # Rounds at the caller's working precision; callers add guard bits.
    return mpmath.mpf(value.numerator) / mpmath.mpf(value.denominator)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _squarefree_split(d: int) -> tuple[int, int]:
    """Write d = s^2 * f with f squarefree; returns (s, f).

    Falls back to (1, d) if d resists the factoring budget.
    """
    try:
        fac = factor_integer(d)
    except FactorizationUnknown:
        return 1, d
    s = 1
    f = 1
    for p, e in fac.items():
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    return s, f


class QuadSurd:
    """Exact element a + b*sqrt(D) of a real quadratic field.

    D is normalized to its squarefree part (and must end up > 1), so equal
    reals have equal components and equality is componentwise. Rational
    values (b == 0) compare equal across fields.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a: Rationalish, b: Rationalish, D: int):
        D = int(D)
        if D <= 0:
            raise InvalidArgument(f"radicand must be positive, got {D}")
        if is_square(D):
            raise InvalidArgument(f"radicand must not be a perfect square, got {D}")
        s, f = _squarefree_split(D)
        self.a = Fraction(a)
        self.b = Fraction(b) * s
        self.D = f

    # -- construction helpers -------------------------------------------------

    def _wrap(self, a: Fraction, b: Fraction) -> "QuadSurd":
        out = object.__new__(QuadSurd)
        out.a = a
        out.b = b
        out.D = self.D
        return out

    def _coerce(self, other) -> Optional["QuadSurd"]:
        if isinstance(other, QuadSurd):
            if other.D == self.D or other.b == 0:
                return self._wrap(other.a, other.b if other.D == self.D else Fraction(0))
            if self.b == 0:
                return other  # adopt the other field
            return None
        if isinstance(other, (int, Fraction)):
            return self._wrap(Fraction(other), Fraction(0))
        return None

    # -- ring / field operations ----------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.D != self.D:  # self is rational, other's field wins
            return o + self.a
        return self._wrap(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> "QuadSurd":
        return self._wrap(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o if o.D == self.D else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.D != self.D:
            return o * self.a
        return self._wrap(self.a * o.a + self.b * o.b * self.D, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadSurd":
        return self._wrap(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def inverse(self) -> "QuadSurd":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero surd")
        return self._wrap(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.D != self.D:
            return self.a * o.inverse()
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "QuadSurd":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = self._wrap(Fraction(1), Fraction(0))
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- order and equality ----------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the real value."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        sa = 1 if self.a > 0 else -1
        sb = 1 if self.b > 0 else -1
        if sa == sb:
            return sa
        lhs = self.a * self.a
        rhs = self.b * self.b * self.D
        # lhs == rhs would make sqrt(D) rational; D is not a square.
        return sa if lhs > rhs else sb

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadSurd):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.D == other.D and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def _cmp(self, other) -> Optional[int]:
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign() if o.D == self.D else (-(o - self.a)).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    # -- output -----------------------------------------------------------------

    def __repr__(self) -> str:
        return f"QuadSurd({self.a} + {self.b}*sqrt({self.D}))"

    def __float__(self) -> float:
        return float(surd_to_float(self, 64))


class RationalRoots(NamedTuple):
    """Both roots of a monic quadratic whose discriminant is a square."""

    larger: Fraction
    smaller: Fraction


def quad_roots(n: int, m: int):
    """Both roots of x^2 - n*x + m, exactly.

    Returns a (dominant, conjugate) QuadSurd pair when the discriminant is
    not a perfect square, a RationalRoots pair when it is, and raises
    NonPositiveDiscriminant when n^2 - 4m <= 0.
    """
    if n < 1 or m < 1:
        raise InvalidArgument(f"coefficients must be positive, got (n,m)=({n},{m})")
    disc = n * n - 4 * m
    if disc <= 0:
        raise NonPositiveDiscriminant(
            f"discriminant n^2-4m = {disc} is not positive for (n,m)=({n},{m})",
            n=n,
            m=m,
            discriminant=disc,
        )
    t = math.isqrt(disc)
    if t * t == disc:
        return RationalRoots(Fraction(n + t, 2), Fraction(n - t, 2))
    half = Fraction(1, 2)
    return (QuadSurd(Fraction(n, 2), half, disc), QuadSurd(Fraction(n, 2), -half, disc))


def surd_to_float(x: QuadSurd, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
    """Binary approximation of x, absolute error below 2^(2 - precision_bits)
    at unit scale (guard bits grow with the magnitude of the components)."""
    if precision_bits < 53:
        raise InvalidArgument(f"precision_bits must be >= 53, got {precision_bits}")
    mag = max(abs(x.a), abs(x.b) * (math.isqrt(x.D) + 1), Fraction(1))
    extra = int(mag).bit_length() + 4
    with mpmath.workprec(precision_bits + 12 + extra):
        val = _fraction_to_mpf(x.a) + _fraction_to_mpf(x.b) * mpmath.sqrt(x.D)
    with mpmath.workprec(precision_bits):
        return +val


# -- perfect powers -------------------------------------------------------------


def integer_root(m: int, k: int) -> int:
    """Largest r >= 0 with r^k <= m (exact; m >= 0, k >= 1)."""
    if m < 0 or k < 1:
        raise InvalidArgument(f"integer_root needs m >= 0 and k >= 1, got ({m},{k})")
    if k == 1 or m < 2:
        return m
    if k == 2:
        return math.isqrt(m)
    if k >= m.bit_length():
        return 1
    if m.bit_length() <= 52:
        r = max(int(m ** (1.0 / k)), 1)
    else:
        # Newton from an upper bound; the iteration is monotone decreasing.
        r = 1 << -(-m.bit_length() // k)
        while True:
            s = ((k - 1) * r + m // r ** (k - 1)) // k
            if s >= r:
                break
            r = s
    while r**k > m:
        r -= 1
    while (r + 1) ** k <= m:
        r += 1
    return r


@lru_cache(maxsize=None)
def _primes_upto(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_perfect_power(m: int) -> Optional[tuple[int, int]]:
    """Canonical witness (a, i) with a^i == m, smallest base and largest
    exponent i >= 2; None when m is not a perfect power. 1 reports (1, 2)."""
    if m < 1:
        raise InvalidArgument(f"m must be >= 1, got {m}")
    if m == 1:
        return (1, 2)
    base = m
    exponent = 1
    while True:
        for q in _primes_upto(base.bit_length()):
            r = integer_root(base, q)
            if r**q == base:
                base = r
                exponent *= q
                break
        else:
            break
    if exponent >= 2:
        return (base, exponent)
    return None


# -- integer factorization (trial division, Miller-Rabin, Pollard rho) ----------

_TRIAL_LIMIT = 10**6
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, budget: int) -> Optional[int]:
    """Brent-cycle rho; deterministic (fixed parameter sweep), budgeted."""
    for c in range(1, 20):
        y, m_batch, g, r, q = 2, 128, 1, 1, 1
        x = ys = 2
        spent = 0
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m_batch, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                spent += min(m_batch, r - k)
                g = math.gcd(q, n)
                k += m_batch
            r *= 2
        if g == n:
            g = 1
            while g == 1 and spent < budget:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                spent += 1
        if 1 < g < n:
            return g
    return None


def factor_integer(n: int, rho_budget: int = 200_000) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}.

    Trial division up to 1e6, then Pollard rho on what remains. A cofactor
    that resists the budget raises FactorizationUnknown rather than letting a
    wrong answer through.
    """
    if n < 1:
        raise InvalidArgument(f"factor_integer needs n >= 1, got {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    while p * p <= n and p < _TRIAL_LIMIT:
        for q in (p, p + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        p += 6
    if n == 1:
        return out
    stack = [n]
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_prime(v):
            out[v] = out.get(v, 0) + 1
            continue
        pp = is_perfect_power(v)
        if pp is not None:
            base, exp = pp
            for _ in range(exp):
                stack.append(base)
            continue
        d = _pollard_rho(v, rho_budget)
        if d is None:
            raise FactorizationUnknown(
                f"cofactor {v} resisted the factoring budget", cofactor=str(v)
            )
        stack.append(d)
        stack.append(v // d)
    return out


def exponent_vector(x: Fraction) -> dict[int, int]:
    """Prime exponent vector of a positive rational (negative exponents for
    denominator primes). Empty for x == 1."""
    if x <= 0:
        raise InvalidArgument(f"exponent_vector needs a positive rational, got {x}")
    vec: dict[int, int] = {}
    for p, e in factor_integer(x.numerator).items():
        vec[p] = vec.get(p, 0) + e
    for p, e in factor_integer(x.denominator).items():
        vec[p] = vec.get(p, 0) - e
    return {p: e for p, e in vec.items() if e}


def primitive_direction(vec: dict[int, int]) -> tuple[int, tuple[tuple[int, int], ...]]:
    """(content, unit) with vec == content * unit and unit gcd-reduced."""
    if not vec:
        raise InvalidArgument("zero exponent vector has no direction")
    content = math.gcd(*(abs(e) for e in vec.values()))
    unit = tuple(sorted((p, e // content) for p, e in vec.items()))
    return content, unit


def _vector_to_rational(vec: dict[int, int]) -> Fraction:
    out = Fraction(1)
    for p, e in vec.items():
        out *= Fraction(p) ** e
    return out


class CommonBase(NamedTuple):
    base: Fraction
    x_exponent: int
    y_exponent: int


def multiplicative_dependence(x: Fraction, y: Fraction) -> Optional[CommonBase]:
    """Common-base form x = r^kx, y = r^ky with gcd(kx, ky) = 1, if any.

    Both inputs must lie in (0, 1). The base r is the largest rational with
    coprime exponents, found through prime exponent vectors.
    """
    for v in (x, y):
        if not (0 < v < 1):
            raise InvalidArgument(f"ratio must lie in (0,1), got {v}")
    cx, ux = primitive_direction(exponent_vector(x))
    cy, uy = primitive_direction(exponent_vector(y))
    if ux != uy:
        return None
    g = math.gcd(cx, cy)
    base = _vector_to_rational({p: e * g for p, e in ux})
    return CommonBase(base, cx // g, cy // g)
