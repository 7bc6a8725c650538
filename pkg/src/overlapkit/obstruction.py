"""Decision engine for the dust-equivalence obstruction.

For E in class A(lambda,n,m), Lipschitz equivalence to a dust-like
self-similar set forces x^(2k) - n*x^k + m to be reducible over the integers
for some k >= 2, which in turn forces m to be a perfect power. The verdicts
here report that necessary condition only; they never claim an equivalence
exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional

import mpmath

from .errors import ConsistencyError, InvalidArgument, OutOfClass
from .exactnum import (
    DEFAULT_PRECISION_BITS,
    format_rational,
    is_perfect_power,
    multiplicative_dependence,
    surd_to_float,
)
from .ifs import DustIfsSpec, dimension
from .intpoly import Factorization, IntPoly, factor, family_poly, gcd_poly, moran_poly


class Verdict(str, Enum):
    OBSTRUCTED = "Obstructed"
    NECESSARY_CONDITION_MET = "NecessaryConditionMet"
    NECESSARY_CONDITION_OPEN = "NecessaryConditionOpen"


@dataclass(frozen=True)
class ObstructionReport:
    """Perfect-power status of m plus the reducible exponents found."""

    n: int
    m: int
    kmax: int
    perfect_power: Optional[tuple[int, int]]
    reducible_ks: tuple[tuple[int, Factorization], ...]
    verdict: Verdict

    def to_json(self) -> dict:
        pp = None
        if self.perfect_power is not None:
            pp = {"a": self.perfect_power[0], "i": self.perfect_power[1]}
        return {
            "n": self.n,
            "m": self.m,
            "kmax": self.kmax,
            "perfect_power": pp,
            "reducible_ks": [
                {
                    "k": k,
                    "factors": [
                        f.to_string() for f, mult in fac.factors for _ in range(mult)
                    ],
                }
                for k, fac in self.reducible_ks
            ],
            "verdict": self.verdict.value,
        }


def obstruction_verdict(n: int, m: int, kmax: int = 8) -> ObstructionReport:
    """Verdict for (n, m): Obstructed when m is not a perfect power, else
    NecessaryConditionMet if some x^(2k)-n*x^k+m with 2 <= k <= kmax is
    reducible and NecessaryConditionOpen otherwise.

    Open is inherently inconclusive: reducibility may first appear beyond
    kmax. The non-perfect-power branch cross-checks the factorizer against
    the number-theoretic test; any disagreement is an internal error.
    """
    if kmax < 2:
        raise InvalidArgument(f"kmax must be >= 2, got {kmax}")
    if not 1 <= m <= n - 2:
        raise OutOfClass(f"need 1 <= m <= n-2, got (n,m)=({n},{m})", n=n, m=m)
    pp = is_perfect_power(m)
    reducible: list[tuple[int, Factorization]] = []
    for k in range(1, kmax + 1):
        fac = factor(family_poly(n, m, k))
        if fac.is_irreducible_shape:
            continue
        if k == 1:
            # the discriminant n^2-4m is never a square for 1 <= m <= n-2
            raise ConsistencyError(
                f"x^2-{n}x+{m} factored although its discriminant cannot be square",
                n=n,
                m=m,
            )
        reducible.append((k, fac))
    if pp is None:
        if reducible:
            ks = [k for k, _ in reducible]
            raise ConsistencyError(
                f"m={m} is not a perfect power yet x^(2k)-{n}x^k+{m} factored at k={ks}",
                n=n,
                m=m,
                ks=ks,
            )
        verdict = Verdict.OBSTRUCTED
    elif reducible:
        verdict = Verdict.NECESSARY_CONDITION_MET
    else:
        verdict = Verdict.NECESSARY_CONDITION_OPEN
    return ObstructionReport(
        n=n,
        m=m,
        kmax=kmax,
        perfect_power=pp,
        reducible_ks=tuple(reducible),
        verdict=verdict,
    )


def sweep(
    n_values: Iterable[int],
    *,
    kmax: int = 8,
    m_filter: Optional[Callable[[int, int], bool]] = None,
) -> list[ObstructionReport]:
    """Reports for every in-class (n, m) with n in n_values, (n, m) ascending."""
    reports = []
    for n in sorted(set(n_values)):
        for m in range(1, n - 1):
            if m_filter is not None and not m_filter(n, m):
                continue
            reports.append(obstruction_verdict(n, m, kmax))
    return reports


class Conclusion(str, Enum):
    NOT_RULED_OUT = "NotRuledOut"
    RULED_OUT = "RuledOut"


class RuledOutReason(str, Enum):
    INCOMMENSURABLE_RATIOS = "IncommensurableRatios"
    DIMENSION_MISMATCH = "DimensionMismatch"
    WRONG_FACTOR = "WrongFactor"


@dataclass(frozen=True)
class EquivalenceCheck:
    """Outcome of testing one dust-like candidate against an in-class E.

    The polynomial fields are None when the ratios are already ruled out as
    multiplicatively independent of lambda.
    """

    n: int
    m: int
    lam: Fraction
    dust: DustIfsSpec
    k: Optional[int]
    exponents: Optional[tuple[int, ...]]
    pbar: Optional[IntPoly]
    qbar: Optional[IntPoly]
    gcd: Optional[IntPoly]
    shared_root: bool
    conclusion: Conclusion
    reason: Optional[RuledOutReason]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "lambda": format_rational(self.lam),
            "dust": self.dust.to_json(),
            "k": self.k,
            "exponents": list(self.exponents) if self.exponents is not None else None,
            "pbar": self.pbar.to_string() if self.pbar is not None else None,
            "qbar": self.qbar.to_string() if self.qbar is not None else None,
            "gcd": self.gcd.to_string() if self.gcd is not None else None,
            "shared_root": self.shared_root,
            "conclusion": self.conclusion.value,
            "reason": self.reason.value if self.reason is not None else None,
        }


def _lambda_exponents(lam: Fraction, dust: DustIfsSpec) -> Optional[list[Fraction]]:
    """Each contraction ratio as lambda^e with rational e, or None if any
    ratio is multiplicatively independent of lambda."""
    if dust.exponents is not None:
        if dust.base == lam:
            return list(dust.exponents)
        dep = multiplicative_dependence(lam, dust.base)
        if dep is None:
            return None
        # base = lam^(cy/cx), so rescale the given exponents
        scale = Fraction(dep.y_exponent, dep.x_exponent)
        return [e * scale for e in dust.exponents]
    exponents = []
    for ratio in dust.ratios:
        dep = multiplicative_dependence(lam, ratio)
        if dep is None:
            return None
        exponents.append(Fraction(dep.y_exponent, dep.x_exponent))
    return exponents


def dust_candidate_check(
    n: int,
    m: int,
    lam: Fraction,
    dust: DustIfsSpec,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> EquivalenceCheck:
    """Can the dust-like candidate share E's dimension equation?

    Commensurability first: every dust ratio must be a rational power of
    lambda (else IncommensurableRatios). With lambda = r^k the candidate's
    Moran polynomial and x^(2k)-n*x^k+m must share the factor that has
    beta^(1/k) as a root; a constant gcd means the dimensions differ
    (DimensionMismatch), a non-constant gcd without that root is WrongFactor.
    """
    if not 1 <= m <= n - 2:
        raise OutOfClass(f"need 1 <= m <= n-2, got (n,m)=({n},{m})", n=n, m=m)
    lam = Fraction(lam)
    dim = dimension(n, m, lam, precision_bits)
    exponents = _lambda_exponents(lam, dust)
    if exponents is None:
        return EquivalenceCheck(
            n=n,
            m=m,
            lam=lam,
            dust=dust,
            k=None,
            exponents=None,
            pbar=None,
            qbar=None,
            gcd=None,
            shared_root=False,
            conclusion=Conclusion.RULED_OUT,
            reason=RuledOutReason.INCOMMENSURABLE_RATIOS,
        )
    k = math.lcm(*(e.denominator for e in exponents))
    scaled = tuple(sorted(int(e * k) for e in exponents))
    pbar = family_poly(n, m, k)
    qbar = moran_poly(scaled)
    g = gcd_poly(pbar, qbar)
    if g.degree == 0:
        return EquivalenceCheck(
            n=n,
            m=m,
            lam=lam,
            dust=dust,
            k=k,
            exponents=scaled,
            pbar=pbar,
            qbar=qbar,
            gcd=g,
            shared_root=False,
            conclusion=Conclusion.RULED_OUT,
            reason=RuledOutReason.DIMENSION_MISMATCH,
        )
    with mpmath.workprec(precision_bits):
        beta_f = surd_to_float(dim.beta, precision_bits)
        root = mpmath.root(beta_f, k)
        value = g.evaluate(root)
        tol = mpmath.mpf(10) ** -20 * (1 + g.norm1())
        shared = abs(value) < tol
    if shared:
        conclusion, reason = Conclusion.NOT_RULED_OUT, None
    else:
        conclusion, reason = Conclusion.RULED_OUT, RuledOutReason.WRONG_FACTOR
    return EquivalenceCheck(
        n=n,
        m=m,
        lam=lam,
        dust=dust,
        k=k,
        exponents=scaled,
        pbar=pbar,
        qbar=qbar,
        gcd=g,
        shared_root=shared,
        conclusion=conclusion,
        reason=reason,
    )
