"""Complete factorization over the integers: Yun squarefree split, modular
factorization at a good small prime, quadratic Hensel lifting, and Zassenhaus
subset recombination.

The recombination loop filters subsets by degree (subset degree sum at most
half the remaining degree) while letting the subset size run over the full
range, which keeps the search complete; trial division over the integers is
the only acceptance test.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from ..errors import ConsistencyError, InvalidArgument, TooManyModularFactors
from .poly import IntPoly, exact_div, gcd_poly

MAX_MODULAR_FACTORS = 24

# -- arithmetic in GF(p)[x]: plain ascending int lists, no trailing zeros ------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_add(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def _gf_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _gf_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _gf_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("GF(p)[x] division by zero")
    rem = list(a)
    dlen = len(b)
    inv = pow(b[-1], -1, p)
    if len(rem) < dlen:
        return [], _trim(rem)
    quot = [0] * (len(rem) - dlen + 1)
    for top in range(len(rem) - 1, dlen - 2, -1):
        c = rem[top] % p
        if c:
            q = c * inv % p
            pos = top - (dlen - 1)
            quot[pos] = q
            for j, dc in enumerate(b):
                rem[pos + j] = (rem[pos + j] - q * dc) % p
    return _trim(quot), _trim(rem[: dlen - 1])


def _gf_mod(a: list[int], b: list[int], p: int) -> list[int]:
    return _gf_divmod(a, b, p)[1]


def _gf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _gf_mod(a, b, p)
    return _gf_monic(a, p)


def _gf_monic(a: list[int], p: int) -> list[int]:
    if not a or a[-1] == 1:
        return list(a)
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gf_deriv(a: list[int], p: int) -> list[int]:
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def _gf_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    out = [1]
    acc = _gf_mod(base, mod, p)
    while e:
        if e & 1:
            out = _gf_mod(_gf_mul(out, acc, p), mod, p)
        acc = _gf_mod(_gf_mul(acc, acc, p), mod, p)
        e >>= 1
    return out


def _gf_eea(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int], list[int]]:
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_sub(s0, _gf_mul(q, s1, p), p)
        t0, t1 = t1, _gf_sub(t0, _gf_mul(q, t1, p), p)
    if not r0:
        raise ZeroDivisionError("eea of zero polynomials")
    inv = pow(r0[-1], -1, p)
    scale = lambda v: [c * inv % p for c in v]
    return scale(r0), scale(s0), scale(t0)


# -- factorization in GF(p)[x] ---------------------------------------------------


def _ddf(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Distinct-degree split of a monic squarefree f: list of (product, degree)."""
    out: list[tuple[list[int], int]] = []
    h = [0, 1]
    cur = list(f)
    d = 0
    while len(cur) - 1 > 2 * d:
        d += 1
        h = _gf_powmod(h, p, cur, p)
        g = _gf_gcd(_gf_sub(h, [0, 1], p), cur, p)
        if len(g) > 1:
            out.append((g, d))
            cur, rem = _gf_divmod(cur, g, p)
            if rem:
                raise ConsistencyError("distinct-degree split failed to divide")
            h = _gf_mod(h, cur, p)
    if len(cur) > 1:
        out.append((cur, len(cur) - 1))
    return out


def _edf(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus equal-degree split of monic squarefree f into degree-d parts."""
    deg = len(f) - 1
    if deg == d:
        return [list(f)]
    exponent = (p**d - 1) // 2
    while True:
        a = [rng.randrange(p) for _ in range(deg)]
        a = _trim(a)
        if len(a) < 2:
            continue
        g = _gf_gcd(a, f, p)
        if len(g) > 1:
            split = g
        else:
            b = _gf_powmod(a, exponent, f, p)
            split = _gf_gcd(_gf_sub(b, [1], p), f, p)
            if len(split) <= 1 or len(split) == len(f):
                continue
        quot, rem = _gf_divmod(f, split, p)
        if rem:
            raise ConsistencyError("equal-degree split failed to divide")
        return _edf(split, d, p, rng) + _edf(quot, d, p, rng)


def _factor_mod_p(f: list[int], p: int) -> list[list[int]]:
    """All monic irreducible factors of a monic squarefree f in GF(p)[x]."""
    rng = random.Random(0xC0FFEE ^ p ^ len(f))
    out: list[list[int]] = []
    for part, d in _ddf(f, p):
        out.extend(_edf(part, d, p, rng))
    out.sort(key=lambda g: (len(g), tuple(reversed(g))))
    return out


# -- Hensel lifting ----------------------------------------------------------------


def _zx_mod(a: IntPoly, q: int) -> IntPoly:
    return IntPoly(tuple(c % q for c in a.coeffs))


def _zx_sym(a: IntPoly, q: int) -> IntPoly:
    half = q // 2
    return IntPoly(tuple(c - q if c > half else c for c in (v % q for v in a.coeffs)))


def _zx_divmod_monic(a: IntPoly, b: IntPoly, q: int) -> tuple[IntPoly, IntPoly]:
    """Division by monic b with all arithmetic reduced mod q."""
    rem = [c % q for c in a.coeffs]
    dlen = b.degree + 1
    if len(rem) < dlen:
        return IntPoly(), IntPoly(rem)
    quot = [0] * (len(rem) - dlen + 1)
    for top in range(len(rem) - 1, dlen - 2, -1):
        c = rem[top] % q
        if c:
            pos = top - (dlen - 1)
            quot[pos] = c
            for j, dc in enumerate(b.coeffs):
                rem[pos + j] = (rem[pos + j] - c * dc) % q
    return IntPoly(quot), IntPoly(rem[: dlen - 1])


def _hensel_step(
    q: int, f: IntPoly, g: IntPoly, h: IntPoly, s: IntPoly, t: IntPoly
) -> tuple[IntPoly, IntPoly, IntPoly, IntPoly]:
    """One quadratic lift: from f = g*h and s*g + t*h = 1 (mod q) to mod q^2.

    h must be monic; degree bookkeeping follows the classical algorithm.
    """
    q2 = q * q
    e = _zx_mod(f - g * h, q2)
    qq, r = _zx_divmod_monic(s * e, h, q2)
    g1 = _zx_mod(g + t * e + qq * g, q2)
    h1 = _zx_mod(h + r, q2)
    b = _zx_mod(s * g1 + t * h1 - IntPoly.one(), q2)
    cc, d = _zx_divmod_monic(s * b, h1, q2)
    s1 = _zx_mod(s - d, q2)
    t1 = _zx_mod(t - t * b - cc * g1, q2)
    return g1, h1, s1, t1


def _hensel_lift_tree(p: int, f: IntPoly, modular: list[list[int]], target: int) -> list[IntPoly]:
    """Lift monic modular factors of f (f = lc * prod, mod p) to mod p^target.

    Returns monic lifts, in the order of the given modular factors.
    """
    if len(modular) == 1:
        q = p**target
        inv = pow(f.lc % q, -1, q)
        return [_zx_mod(f * inv, q)]
    k = len(modular) // 2
    left, right = modular[:k], modular[k:]
    g0 = [f.lc % p]
    for fac in left:
        g0 = _gf_mul(g0, fac, p)
    h0 = [1]
    for fac in right:
        h0 = _gf_mul(h0, fac, p)
    one, s0, t0 = _gf_eea(g0, h0, p)
    if one != [1]:
        raise ConsistencyError("modular cofactors are not coprime")
    g, h = IntPoly(g0), IntPoly(h0)
    s, t = IntPoly(s0), IntPoly(t0)
    q = p
    level = 1
    while level < target:
        g, h, s, t = _hensel_step(q, _zx_mod(f, q * q), g, h, s, t)
        q *= q
        level *= 2
    qt = p**target
    g, h = _zx_mod(g, qt), _zx_mod(h, qt)
    return _hensel_lift_tree(p, g, left, target) + _hensel_lift_tree(p, h, right, target)


# -- the driver ---------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """unit * content * prod(poly^multiplicity) reconstructs the input exactly."""

    unit: int
    content: int
    factors: tuple[tuple[IntPoly, int], ...]

    def product(self) -> IntPoly:
        out = IntPoly((self.unit * self.content,))
        for poly, mult in self.factors:
            out = out * poly**mult
        return out

    @property
    def is_irreducible_shape(self) -> bool:
        return (
            self.content == 1
            and len(self.factors) == 1
            and self.factors[0][1] == 1
        )


def _mignotte_bound(f: IntPoly) -> int:
    """Coefficient bound for any integer factor of f, scaled by |lc(f)|."""
    d = f.degree
    return (math.isqrt(d + 1) + 1) * (1 << d) * f.max_norm() * abs(f.lc)


def _pick_prime(f: IntPoly) -> int:
    p = 5
    while True:
        if f.lc % p != 0:
            fp = _trim([c % p for c in f.coeffs])
            if len(fp) == len(f.coeffs):
                fp = _gf_monic(fp, p)
                if len(_gf_gcd(fp, _gf_deriv(fp, p), p)) == 1:
                    return p
        p += 2
        while not _is_small_prime(p):
            p += 2


def _is_small_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _yun_squarefree(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Squarefree decomposition of a primitive f with positive leading coefficient."""
    deriv = f.derivative()
    g = gcd_poly(f, deriv)
    if g.degree == 0:
        return [(f, 1)]
    b = _must_div(f, g)
    c = _must_div(deriv, g)
    d = c - b.derivative()
    out: list[tuple[IntPoly, int]] = []
    i = 1
    while b.degree > 0:
        a = gcd_poly(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = _must_div(b, a)
        c = _must_div(d, a)
        d = c - b.derivative()
        i += 1
    return out


def _must_div(a: IntPoly, b: IntPoly) -> IntPoly:
    q = exact_div(a, b)
    if q is None:
        raise ConsistencyError("exact division failed inside squarefree split")
    return q


def _factor_squarefree(f: IntPoly, modular_factor_ceiling: int) -> list[IntPoly]:
    """Irreducible factors of a primitive squarefree f, positive lc, f(0) != 0."""
    if f.degree == 1:
        return [f]
    p = _pick_prime(f)
    fp = _gf_monic(_trim([c % p for c in f.coeffs]), p)
    modular = _factor_mod_p(fp, p)
    if len(modular) == 1:
        return [f]
    if len(modular) > modular_factor_ceiling:
        raise TooManyModularFactors(
            f"{len(modular)} modular factors exceed the recombination ceiling",
            count=len(modular),
            ceiling=modular_factor_ceiling,
        )
    bound = 2 * _mignotte_bound(f) + 1
    target = 1
    while p**target < bound:
        target *= 2
    q = p**target
    lifted = _hensel_lift_tree(p, f, modular, target)

    remaining = list(range(len(lifted)))
    degrees = {i: lifted[i].degree for i in remaining}
    cur = f
    found: list[IntPoly] = []
    s = 1
    while s < len(remaining):
        hit = False
        for combo in combinations(remaining, s):
            if sum(degrees[i] for i in combo) > cur.degree // 2:
                continue
            lead = cur.lc
            # Cheap veto on the constant coefficient before a full product.
            c0 = lead
            for i in combo:
                c0 = c0 * lifted[i][0] % q
            c0 = c0 - q if c0 > q // 2 else c0
            if c0 == 0 or (lead * cur[0]) % c0 != 0:
                continue
            cand = IntPoly((lead,))
            for i in combo:
                cand = _zx_mod(cand * lifted[i], q)
            cand = _zx_sym(cand, q).primitive_part()
            quot = exact_div(cur, cand)
            if quot is None:
                continue
            found.append(cand if cand.lc > 0 else -cand)
            cur = quot
            remaining = [i for i in remaining if i not in combo]
            hit = True
            break
        if not hit:
            s += 1
    if cur.degree > 0:
        # Quotients of positive-lc primitives keep a positive lc.
        found.append(cur)
    elif cur.lc != 1:
        raise ConsistencyError("recombination left a non-unit constant")
    return found


def factor(p: IntPoly, *, modular_factor_ceiling: int = MAX_MODULAR_FACTORS) -> Factorization:
    """Factor a nonzero integer polynomial into primitive irreducibles.

    Factors carry positive leading coefficients and are sorted by degree then
    coefficients; the unit is the sign and the content the coefficient gcd.
    """
    if p.is_zero:
        raise InvalidArgument("cannot factor the zero polynomial")
    unit = 1 if p.lc > 0 else -1
    work = p if unit == 1 else -p
    content = work.content()
    work = work.primitive_part()
    bag: dict[tuple[int, ...], int] = {}
    e = work.trailing_zeros()
    if e:
        bag[(0, 1)] = e
        work = IntPoly(work.coeffs[e:])
    if work.degree >= 1:
        for part, mult in _yun_squarefree(work):
            for irr in _factor_squarefree(part, modular_factor_ceiling):
                key = irr.coeffs
                bag[key] = bag.get(key, 0) + mult
    factors = tuple(
        (IntPoly(coeffs), mult)
        for coeffs, mult in sorted(bag.items(), key=lambda kv: (len(kv[0]), kv[0]))
    )
    return Factorization(unit=unit, content=content, factors=factors)


def is_irreducible(p: IntPoly) -> bool:
    """True iff p is irreducible over the integers (primitive, one factor)."""
    if p.degree < 1:
        raise InvalidArgument("irreducibility is about degree >= 1 polynomials")
    return factor(p).is_irreducible_shape
