"""Acceptance checks: one test per required behavior, one PASS line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS lines; each
test also enforces its runtime budget.
"""

from __future__ import annotations

import inspect
import random
import time
from fractions import Fraction

import mpmath

from overlapkit import graphdir, ifs, numlab
from overlapkit.exactnum import is_perfect_power, surd_to_float
from overlapkit.graphdir import Policy, build_graph, expand, spectral_radius, verify_beta_eigen
from overlapkit.ifs import DustIfsSpec, dimension, generate, moran_dimension, validate
from overlapkit.intpoly import (
    IntPoly,
    SearchStrategy,
    factor,
    family_poly,
    is_irreducible,
    nonneg_tail_search,
)
from overlapkit.numlab import box_count_dimension, cover, cylinder_growth
from overlapkit.obstruction import Verdict, obstruction_verdict, sweep

F = Fraction


def test_golden_quartic_and_verdict():
    start = time.monotonic()
    fac = factor(family_poly(3, 1, 2))
    assert [f.to_string() for f, _ in fac.factors] == ["x^2-x-1", "x^2+x-1"]
    assert fac.unit == 1 and fac.content == 1
    report = obstruction_verdict(3, 1)
    assert report.verdict is Verdict.NECESSARY_CONDITION_MET
    assert report.reducible_ks[0][0] == 2
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    print(
        f"\nPASS golden quartic: x^4-3*x^2+1 = (x^2-x-1)(x^2+x-1) and (3,1) "
        f"meets the necessary condition [{elapsed:.3f}s < 1s]"
    )


def test_verdict_table_matches_perfect_power_status():
    start = time.monotonic()
    reports = sweep(range(3, 13), kmax=8)
    for report in reports:
        obstructed = report.verdict is Verdict.OBSTRUCTED
        assert obstructed == (is_perfect_power(report.m) is None), (report.n, report.m)
    met = {(r.n, r.m) for r in reports if r.verdict is Verdict.NECESSARY_CONDITION_MET}
    assert met == {(3, 1), (6, 1), (7, 1), (8, 4), (11, 1), (12, 4)}
    elapsed = time.monotonic() - start
    assert elapsed < 30.0
    print(
        f"PASS verdict table: {len(reports)} pairs with n <= 12, Obstructed exactly "
        f"on non-perfect-power m [{elapsed:.2f}s < 30s]"
    )


def test_non_perfect_power_families_stay_irreducible():
    start = time.monotonic()
    checked = 0
    for m in range(2, 11):
        if is_perfect_power(m) is not None:
            continue
        for n in range(m + 2, 13):
            for k in range(1, 7):
                assert is_irreducible(family_poly(n, m, k)), (n, m, k)
                checked += 1
    elapsed = time.monotonic() - start
    assert elapsed < 300.0
    print(
        f"PASS irreducibility: {checked} family polynomials with non-perfect-power "
        f"m never factor [{elapsed:.2f}s < 5min]"
    )


def test_sweep_graphs_spectrally_consistent(sweep_specs):
    start = time.monotonic()
    assert len(sweep_specs) >= 100
    graphs = 0
    for n, m, lam, spec in sweep_specs:
        beta = surd_to_float(ifs._beta(n, m), 96)
        for policy in Policy:
            graph = build_graph(spec, policy)
            if policy is Policy.CUT_AT_TOUCH:
                assert max(v.k for v in graph.vertices) <= m + 1
            rho = spectral_radius(graph.adjacency).rho
            assert abs(rho - beta) < 1e-9 * beta, (n, m, lam, policy)
            assert verify_beta_eigen(graph.adjacency, n, m), (n, m, lam, policy)
            graphs += 1
    golden = build_graph(generate(3, 1, F(1, 4), "OG"), Policy.CUT_AT_TOUCH)
    assert golden.adjacency == ((1, 1), (1, 2))
    four = build_graph(generate(4, 1, F(1, 5), "OTG"), Policy.CUT_AT_TOUCH)
    assert four.adjacency == ((2, 1), (3, 2))
    keep = build_graph(generate(4, 1, F(1, 5), "OTG"), Policy.KEEP_TOUCH)
    assert keep.adjacency == ((1, 1, 0), (1, 2, 1), (1, 2, 2))
    elapsed = time.monotonic() - start
    assert elapsed < 60.0
    print(
        f"PASS spectral sweep: {graphs} graphs from {len(sweep_specs)} specs have "
        f"rho within 1e-9 of beta and det(A - beta I) = 0 exactly; cut-at-touch "
        f"blocks stay below k = m+2 [{elapsed:.2f}s < 1min]"
    )


def test_sweep_row_identities(sweep_specs):
    rows = 0
    for n, m, lam, spec in sweep_specs:
        graph = build_graph(spec, Policy.CUT_AT_TOUCH)
        ks = [v.k for v in graph.vertices]
        for u, row in enumerate(graph.adjacency):
            assert sum(k * a for k, a in zip(ks, row)) == ks[u] * (n - 1) + 1
            assert sum((k - 1) * a for k, a in zip(ks, row)) == ks[u] * m
            rows += 1
    print(
        f"PASS row identities: copy and overlap conservation hold on all "
        f"{rows} adjacency rows with zero violations"
    )


def test_tail_search_exhaustive_and_consistent():
    start = time.monotonic()
    pairs = [(3, 1), (4, 1), (4, 2)]
    searched = 0
    for n, m in pairs:
        for q in (1, 2, 3):
            report = nonneg_tail_search(q, n, m, 8, 10, SearchStrategy.QUOTIENT)
            assert report.counterexamples == (), (q, n, m)
            searched += report.candidates_tested
    for n, m in pairs:
        quotient = nonneg_tail_search(1, n, m, 5, 4, SearchStrategy.QUOTIENT)
        dividend = nonneg_tail_search(1, n, m, 5, 4, SearchStrategy.DIVIDEND)
        assert quotient.counterexamples == dividend.counterexamples == ()
    rng = random.Random(2026)
    for _ in range(10_000):
        n, m = pairs[rng.randrange(3)]
        q = rng.randint(1, 3)
        deg = rng.randint(0, 8)
        u = IntPoly([rng.randint(-9, 9) for _ in range(deg)] + [1])
        product = u * family_poly(n, m, q)
        assert product.lc == 1
        assert any(c > 0 for c in product.coeffs[:-1]), (n, m, q, u.coeffs)
    elapsed = time.monotonic() - start
    assert elapsed < 300.0
    print(
        f"PASS tail search: exhaustive boxes ({searched} leaves) are empty, both "
        f"strategies agree, and 10000 random monic multiples all keep a positive "
        f"tail coefficient [{elapsed:.2f}s < 5min]"
    )


def test_dust_equivalence_candidates():
    from overlapkit.obstruction import Conclusion, dust_candidate_check

    for lam in (F(1, 4), F(1, 5), F(1, 10)):
        dust = DustIfsSpec.from_exponents(lam, [F(1), F(1, 2)])
        check = dust_candidate_check(3, 1, lam, dust)
        assert check.conclusion is Conclusion.NOT_RULED_OUT, lam
        assert check.gcd == IntPoly([-1, -1, 1])
        moran = moran_dimension(dust)
        dim = dimension(3, 1, lam)
        assert abs(moran.s - dim.s) < 1e-9, lam
    print(
        "PASS dust candidates: exponents (1, 1/2) over lambda in {1/4, 1/5, 1/10} "
        "are never ruled out, share gcd x^2-x-1, and the Moran root matches the "
        "dimension within 1e-9"
    )


def test_dimension_counts_and_box_estimate():
    start = time.monotonic()
    dim = dimension(3, 1, F(1, 4))
    assert abs(dim.s - mpmath.mpf("0.6942419136")) < 1e-9
    spec = generate(3, 1, F(1, 4), "OG")
    growth = cylinder_growth(spec, 4)
    assert growth.counts == (1, 3, 8, 21, 55)
    assert growth.recurrence_ok is True
    box = box_count_dimension(spec, 10, 6)
    assert abs(box.estimate - float(dim.s)) < 0.05
    elapsed = time.monotonic() - start
    assert elapsed < 60.0
    print(
        f"PASS numerics: dimension 0.6942419136 +- 1e-9, counts (1,3,8,21,55), "
        f"box estimate {box.estimate:.4f} within 0.05 [{elapsed:.2f}s < 1min]"
    )


def test_exact_paths_never_touch_floats(sweep_specs):
    sources = [
        inspect.getsource(ifs.SelfSimilarSpec.__post_init__),
        inspect.getsource(ifs.SelfSimilarSpec.step_kinds),
        inspect.getsource(ifs.validate),
        inspect.getsource(graphdir.expand),
        inspect.getsource(graphdir.build_graph),
        inspect.getsource(numlab._cover_levels),
    ]
    for source in sources:
        for token in ("float(", "mpmath", "math.", "__float__", "1e-", "0.5"):
            assert token not in source, token
    expansions = 0
    for n, m, lam, spec in sweep_specs[:30]:
        for policy in Policy:
            graph = build_graph(spec, policy)
            for vertex in graph.vertices:
                expand(vertex, spec, policy)  # raises UnexpectedChildGap on drift
                expansions += 1
    level = cover(generate(3, 1, F(1, 4), "OG"), 6)
    assert all(isinstance(off, Fraction) for off in level.offsets)
    print(
        f"PASS exactness: validation, expansion, and cover sources are free of "
        f"floating-point operations and {expansions} re-expansions observed no "
        f"unexpected child offsets"
    )
