"""Self-similar sets on [0,1] with exact overlaps, and dust-like comparison
systems: validation, instance generation, and dimension computations.

A spec is n maps x -> lambda*x + b_i with 0 = b_1 < ... < b_n = 1 - lambda.
Each consecutive offset step is an exact overlap (lambda - lambda^2), a touch
(lambda), or a gap (anything larger); exactly m overlap steps with
1 <= m <= n-2 puts the set in class A(lambda, n, m). All classification is
exact rational arithmetic, never floating point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .errors import (
    BadBoundary,
    Infeasible,
    InvalidArgument,
    InvalidStep,
    NotInClass,
    NotMonotone,
)
from .exactnum import (
    DEFAULT_PRECISION_BITS,
    QuadSurd,
    RationalRoots,
    format_rational,
    parse_rational,
    quad_roots,
    surd_to_float,
)

OVERLAP, TOUCH, GAP = "O", "T", "G"


@dataclass(frozen=True)
class SelfSimilarSpec:
    """Maps f_i(x) = lam*x + offsets[i] on [0,1]; boundary and step classes
    are enforced here, class membership (the m count) is not."""

    lam: Fraction
    offsets: tuple[Fraction, ...]

    def __post_init__(self):
        if not 0 < self.lam < 1:
            raise InvalidArgument(f"ratio must lie in (0,1), got {self.lam}")
        if len(self.offsets) < 2:
            raise InvalidArgument("need at least two maps")
        steps = self.steps
        for i, s in enumerate(steps, start=1):
            if s <= 0:
                raise NotMonotone(f"offsets must be strictly increasing, step {i} is {s}")
        if self.offsets[0] != 0:
            raise BadBoundary(f"first offset must be 0, got {self.offsets[0]}")
        if self.offsets[-1] != 1 - self.lam:
            raise BadBoundary(
                f"last offset must be 1-lambda = {1 - self.lam}, got {self.offsets[-1]}"
            )
        exact = self.lam - self.lam * self.lam
        for i, s in enumerate(steps, start=1):
            if s < self.lam and s != exact:
                raise InvalidStep(
                    f"step {i} = {s} is a positive overlap that is not exact "
                    f"(expected {exact} or at least {self.lam})",
                    index=i,
                )

    @property
    def n(self) -> int:
        return len(self.offsets)

    @property
    def steps(self) -> tuple[Fraction, ...]:
        return tuple(b - a for a, b in zip(self.offsets, self.offsets[1:]))

    def step_kinds(self) -> str:
        exact = self.lam - self.lam * self.lam
        word = []
        for s in self.steps:
            if s == exact:
                word.append(OVERLAP)
            elif s == self.lam:
                word.append(TOUCH)
            else:
                word.append(GAP)
        return "".join(word)

    def to_json(self) -> dict:
        return {
            "lambda": format_rational(self.lam),
            "offsets": [format_rational(b) for b in self.offsets],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SelfSimilarSpec":
        return cls(
            parse_rational(data["lambda"]),
            tuple(parse_rational(b) for b in data["offsets"]),
        )


@dataclass(frozen=True)
class OverlapPattern:
    """Step classification of a validated in-class spec."""

    word: str
    sizes: tuple[Fraction, ...]
    n: int
    m: int

    def to_json(self) -> dict:
        return {
            "pattern": self.word,
            "steps": [
                {"kind": kind, "size": format_rational(size)}
                for kind, size in zip(self.word, self.sizes)
            ],
            "n": self.n,
            "m": self.m,
        }


def validate(lam: Fraction, offsets: Sequence[Fraction]) -> tuple[SelfSimilarSpec, OverlapPattern]:
    """Classify every step exactly and check class membership 1 <= m <= n-2."""
    spec = SelfSimilarSpec(Fraction(lam), tuple(Fraction(b) for b in offsets))
    word = spec.step_kinds()
    m = word.count(OVERLAP)
    n = spec.n
    if not 1 <= m <= n - 2:
        raise NotInClass(
            f"need 1 <= m <= n-2 exact overlaps, got m={m} with n={n} (pattern {word})",
            n=n,
            m=m,
            pattern=word,
        )
    return spec, OverlapPattern(word=word, sizes=spec.steps, n=n, m=m)


def feasibility_slack(n: int, m: int, lam: Fraction) -> Fraction:
    """delta = 1 - n*lam + m*lam^2; nonnegative exactly when lam*beta <= 1."""
    return 1 - n * lam + m * lam * lam


def _check_class(n: int, m: int):
    if not 1 <= m <= n - 2:
        raise NotInClass(f"need 1 <= m <= n-2, got (n,m)=({n},{m})", n=n, m=m)


def _beta(n: int, m: int) -> QuadSurd:
    roots = quad_roots(n, m)
    if isinstance(roots, RationalRoots):
        # unreachable for 1 <= m <= n-2; the discriminant is never a square there
        raise InvalidArgument(f"x^2-{n}x+{m} has rational roots {roots}")
    return roots[0]


def _infeasible(n: int, m: int, lam: Fraction) -> Infeasible:
    beta = _beta(n, m)
    bound = 1 / surd_to_float(beta, 64)
    return Infeasible(
        f"lambda = {lam} exceeds the feasibility bound 1/beta for (n,m)=({n},{m})",
        lam=lam,
        bound=float(bound),
    )


def generate(
    n: int,
    m: int,
    lam: Fraction,
    pattern: Optional[str] = None,
    *,
    seed: int = 0,
    gap_shares: Optional[Sequence[Fraction]] = None,
) -> SelfSimilarSpec:
    """Build offsets realizing a pattern (or a seed-chosen random one).

    O steps are lambda-lambda^2, T steps lambda, and G steps lambda plus a
    positive rational share of the slack delta = 1 - n*lam + m*lam^2. Shares
    are equal unless gap_shares (positive, summing to 1) or a seed is given.
    """
    _check_class(n, m)
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise InvalidArgument(f"ratio must lie in (0,1), got {lam}")
    rng = random.Random(seed)
    if pattern is None:
        pattern = _random_pattern(n, m, rng)
        if gap_shares is None:
            weights = [rng.randint(1, 9) for _ in range(pattern.count(GAP))]
            gap_shares = [Fraction(w, sum(weights)) for w in weights]
    if len(pattern) != n - 1:
        raise InvalidArgument(f"pattern length must be n-1 = {n - 1}, got {len(pattern)!r}")
    if set(pattern) - {OVERLAP, TOUCH, GAP}:
        raise InvalidArgument(f"pattern letters must be O, T or G, got {pattern!r}")
    if pattern.count(OVERLAP) != m:
        raise InvalidArgument(
            f"pattern must contain exactly m={m} O letters, got {pattern.count(OVERLAP)}"
        )
    delta = feasibility_slack(n, m, lam)
    gaps = pattern.count(GAP)
    if delta < 0 or (delta > 0 and gaps == 0) or (delta == 0 and gaps > 0):
        # rational in-class lambda always has delta != 0, so a G-free pattern
        # can never absorb the slack
        raise _infeasible(n, m, lam)
    if gaps:
        if gap_shares is None:
            gap_shares = [Fraction(1, gaps)] * gaps
        shares = [Fraction(s) for s in gap_shares]
        if len(shares) != gaps or any(s <= 0 for s in shares) or sum(shares) != 1:
            raise InvalidArgument("gap_shares must be positive rationals summing to 1")
    step_of = {OVERLAP: lam - lam * lam, TOUCH: lam}
    offsets = [Fraction(0)]
    gap_index = 0
    for letter in pattern:
        if letter == GAP:
            step = lam + shares[gap_index] * delta
            gap_index += 1
        else:
            step = step_of[letter]
        offsets.append(offsets[-1] + step)
    return SelfSimilarSpec(lam, tuple(offsets))


def _random_pattern(n: int, m: int, rng: random.Random) -> str:
    slots = n - 1
    overlap_at = set(rng.sample(range(slots), m))
    rest = [i for i in range(slots) if i not in overlap_at]
    letters = {i: rng.choice([TOUCH, GAP]) for i in rest}
    if all(letters[i] != GAP for i in rest):
        letters[rng.choice(rest)] = GAP  # slack is never zero, so force a gap
    return "".join(OVERLAP if i in overlap_at else letters[i] for i in range(slots))


@dataclass(frozen=True)
class DimensionResult:
    s: mpmath.mpf
    beta: QuadSurd
    lam: Fraction
    n: int
    m: int
    precision_bits: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "lambda": format_rational(self.lam),
            "beta": {
                "a": format_rational(self.beta.a),
                "b": format_rational(self.beta.b),
                "D": self.beta.D,
            },
            "s": mpmath.nstr(self.s, max(17, self.precision_bits * 3 // 10)),
            "precision_bits": self.precision_bits,
        }


def dimension(
    n: int, m: int, lam: Fraction, precision_bits: int = DEFAULT_PRECISION_BITS
) -> DimensionResult:
    """dim_H = log(beta) / -log(lambda) for the class member, beta carried exactly."""
    _check_class(n, m)
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise InvalidArgument(f"ratio must lie in (0,1), got {lam}")
    if precision_bits < 80:
        raise InvalidArgument(f"precision_bits must be >= 80, got {precision_bits}")
    beta = _beta(n, m)
    if lam * beta > 1:
        raise _infeasible(n, m, lam)
    with mpmath.workprec(precision_bits + 16):
        beta_f = surd_to_float(beta, precision_bits + 16)
        lam_f = mpmath.mpf(lam.numerator) / mpmath.mpf(lam.denominator)
        s = mpmath.log(beta_f) / (-mpmath.log(lam_f))
    with mpmath.workprec(precision_bits):
        s = +s
    return DimensionResult(s=s, beta=beta, lam=lam, n=n, m=m, precision_bits=precision_bits)


@dataclass(frozen=True)
class DustIfsSpec:
    """Dust-like system given by explicit ratios or as powers of a base."""

    ratios: Optional[tuple[Fraction, ...]] = None
    base: Optional[Fraction] = None
    exponents: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self):
        explicit = self.ratios is not None
        powered = self.base is not None or self.exponents is not None
        if explicit == powered:
            raise InvalidArgument("give either ratios or base+exponents, not both")
        if explicit:
            if len(self.ratios) < 2:
                raise InvalidArgument("need at least two ratios")
            if any(not 0 < r < 1 for r in self.ratios):
                raise InvalidArgument(f"ratios must lie in (0,1), got {self.ratios}")
        else:
            if self.base is None or self.exponents is None:
                raise InvalidArgument("base and exponents are required together")
            if not 0 < self.base < 1:
                raise InvalidArgument(f"base must lie in (0,1), got {self.base}")
            if len(self.exponents) < 2:
                raise InvalidArgument("need at least two exponents")
            if any(e <= 0 for e in self.exponents):
                raise InvalidArgument(f"exponents must be positive, got {self.exponents}")

    @classmethod
    def from_ratios(cls, ratios: Sequence[Fraction]) -> "DustIfsSpec":
        return cls(ratios=tuple(Fraction(r) for r in ratios))

    @classmethod
    def from_exponents(cls, base: Fraction, exponents: Sequence[Fraction]) -> "DustIfsSpec":
        return cls(base=Fraction(base), exponents=tuple(Fraction(e) for e in exponents))

    @property
    def size(self) -> int:
        return len(self.ratios if self.ratios is not None else self.exponents)

    def ratio_floats(self, precision_bits: int) -> list[mpmath.mpf]:
        with mpmath.workprec(precision_bits):
            if self.ratios is not None:
                return [mpmath.mpf(r.numerator) / mpmath.mpf(r.denominator) for r in self.ratios]
            base = mpmath.mpf(self.base.numerator) / mpmath.mpf(self.base.denominator)
            return [base ** (mpmath.mpf(e.numerator) / mpmath.mpf(e.denominator)) for e in self.exponents]

    def to_json(self) -> dict:
        if self.ratios is not None:
            return {"ratios": [format_rational(r) for r in self.ratios]}
        return {
            "base": format_rational(self.base),
            "exponents": [format_rational(e) for e in self.exponents],
        }


@dataclass(frozen=True)
class MoranRoot:
    s: mpmath.mpf
    residual: mpmath.mpf
    iterations: int


def moran_dimension(dust: DustIfsSpec, precision_bits: int = DEFAULT_PRECISION_BITS) -> MoranRoot:
    """The unique s > 0 with sum r_j^s = 1, by bisection to 1e-12.

    The map s -> sum r_j^s is strictly decreasing from t > 1 toward 0.
    """
    work = max(precision_bits, 80)
    with mpmath.workprec(work):
        ratios = dust.ratio_floats(work)

        def total(s: mpmath.mpf) -> mpmath.mpf:
            return sum(r**s for r in ratios)

        lo, hi = mpmath.mpf(0), mpmath.mpf(1)
        while total(hi) > 1:
            lo, hi = hi, hi * 2
        iterations = 0
        tol = mpmath.mpf(10) ** -12
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if total(mid) > 1:
                lo = mid
            else:
                hi = mid
            iterations += 1
        s = (lo + hi) / 2
        residual = abs(total(s) - 1)
    return MoranRoot(s=s, residual=residual, iterations=iterations)
