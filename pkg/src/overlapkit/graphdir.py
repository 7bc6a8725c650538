"""Graph-directed decomposition of an exact-overlap self-similar set.

A configuration is a block of unit-size copies of E whose consecutive offsets
differ by 1-lambda (exact overlap, letter O) or 1 (touch, letter T). Expanding
every copy one level and regrouping the children yields finitely many
configurations; the bookkeeping matrix A counts children per parent, and its
Perron root must match the dominant root beta of x^2 - nx + m.

Two regroupings are supported: cut-at-touch severs blocks at touching points
(configurations degenerate to all-O runs), keep-touch severs only at strictly
positive gaps.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Optional

import mpmath

from .errors import (
    InvalidArgument,
    NoConvergence,
    UnexpectedChildGap,
    VertexExplosion,
)
from .exactnum import QuadSurd, RationalRoots, quad_roots
from .ifs import GAP, OVERLAP, TOUCH, SelfSimilarSpec

_SPECTRAL_BITS = 128
_RAYLEIGH_TOL_EXP = -13
_ITERATION_CAP = 10**5


class Policy(str, Enum):
    CUT_AT_TOUCH = "cut-touch"
    KEEP_TOUCH = "keep-touch"


@dataclass(frozen=True)
class Configuration:
    """A block of k unit copies; steps is the length-(k-1) word over {O, T}."""

    steps: str

    def __post_init__(self):
        if set(self.steps) - {OVERLAP, TOUCH}:
            raise InvalidArgument(f"configuration steps must be O or T, got {self.steps!r}")

    @property
    def k(self) -> int:
        return len(self.steps) + 1

    def copy_offsets(self, lam: Fraction) -> list[Fraction]:
        """Unit-scale offsets a_1 = 0 < ... < a_k of the copies."""
        out = [Fraction(0)]
        for letter in self.steps:
            out.append(out[-1] + (1 - lam if letter == OVERLAP else 1))
        return out


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    mult: int


@dataclass(frozen=True)
class GraphSystem:
    policy: Policy
    vertices: tuple[Configuration, ...]
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "policy": self.policy.value,
            "vertices": [
                {"id": i, "k": v.k, "steps": v.steps} for i, v in enumerate(self.vertices)
            ],
            "edges": [{"from": e.src, "to": e.dst, "mult": e.mult} for e in self.edges],
            "adjacency": [list(row) for row in self.adjacency],
        }


def expand(
    config: Configuration, spec: SelfSimilarSpec, policy: Policy
) -> dict[Configuration, int]:
    """One-level children of a configuration, grouped into child configurations.

    Each copy E + a spawns children at a + b_j of size lambda. At an exact
    overlap junction the last child of the left copy coincides with the first
    child of the right copy and is counted once. Consecutive child offsets are
    then classified exactly; anything that is neither an exact overlap, a
    touch, nor a gap aborts loudly because it would break the whole analysis.
    """
    lam = spec.lam
    seen = set()
    offsets: list[Fraction] = []
    for a in config.copy_offsets(lam):
        for b in spec.offsets:
            c = a + b
            if c not in seen:
                seen.add(c)
                offsets.append(c)
    offsets.sort()
    exact = lam - lam * lam
    cut_at = {GAP} if policy is Policy.KEEP_TOUCH else {GAP, TOUCH}
    children: dict[Configuration, int] = {}
    word: list[str] = []

    def emit(word_letters: list[str]):
        child = Configuration("".join(word_letters))
        children[child] = children.get(child, 0) + 1

    for left, right in zip(offsets, offsets[1:]):
        d = right - left
        if d == exact:
            kind = OVERLAP
        elif d == lam:
            kind = TOUCH
        elif d > lam:
            kind = GAP
        else:
            raise UnexpectedChildGap(
                f"child offsets {left} and {right} differ by {d}, which is not an "
                f"exact overlap ({exact}), a touch ({lam}), or a gap",
                gap=d,
            )
        if kind in cut_at:
            emit(word)
            word = []
        else:
            word.append(kind)
    emit(word)
    return children


def build_graph(
    spec: SelfSimilarSpec,
    policy: Policy = Policy.CUT_AT_TOUCH,
    vertex_ceiling: Optional[int] = None,
) -> GraphSystem:
    """Breadth-first closure from the single-copy configuration."""
    if vertex_ceiling is None:
        vertex_ceiling = 10 * spec.n
    root = Configuration("")
    vertices: list[Configuration] = [root]
    index = {root: 0}
    parent: dict[Configuration, Optional[Configuration]] = {root: None}
    rows: list[dict[int, int]] = []
    frontier = 0
    while frontier < len(vertices):
        current = vertices[frontier]
        row: dict[int, int] = {}
        for child, mult in expand(current, spec, policy).items():
            if child not in index:
                if len(vertices) >= vertex_ceiling:
                    history = [child.steps]
                    walk: Optional[Configuration] = current
                    while walk is not None:
                        history.append(walk.steps)
                        walk = parent[walk]
                    raise VertexExplosion(
                        f"more than {vertex_ceiling} configurations discovered",
                        ceiling=vertex_ceiling,
                        history=list(reversed(history)),
                    )
                index[child] = len(vertices)
                vertices.append(child)
                parent[child] = current
            row[index[child]] = mult
        rows.append(row)
        frontier += 1
    size = len(vertices)
    adjacency = tuple(tuple(row.get(j, 0) for j in range(size)) for row in rows)
    edges = tuple(
        Edge(src=i, dst=j, mult=adjacency[i][j])
        for i in range(size)
        for j in range(size)
        if adjacency[i][j]
    )
    return GraphSystem(
        policy=policy, vertices=tuple(vertices), edges=edges, adjacency=adjacency
    )


@dataclass(frozen=True)
class SpectralResult:
    rho: mpmath.mpf
    iterations: int
    exact_beta_eigen: Optional[bool] = None

    def with_beta_check(self, value: bool) -> "SpectralResult":
        return replace(self, exact_beta_eigen=value)

    def to_json(self) -> dict:
        return {
            "rho": str(self.rho),
            "iterations": self.iterations,
            "exact_beta_eigen": self.exact_beta_eigen,
        }


def _strongly_connected_components(matrix) -> list[list[int]]:
    """Iterative Tarjan; component order is deterministic."""
    n = len(matrix)
    succ = [[j for j in range(n) if matrix[i][j]] for i in range(n)]
    indexed = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for start in range(n):
        if indexed[start] != -1:
            continue
        work = [(start, 0)]
        while work:
            v, ptr = work[-1]
            if ptr == 0:
                indexed[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for ahead in range(ptr, len(succ[v])):
                w = succ[v][ahead]
                if indexed[w] == -1:
                    work[-1] = (v, ahead + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], indexed[w])
            if advanced:
                continue
            work.pop()
            if low[v] == indexed[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(sorted(comp))
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return components


def spectral_radius(matrix) -> SpectralResult:
    """Perron root of a nonnegative integer matrix by power iteration.

    Runs per strongly connected component on B = A+I (primitive whenever the
    component is irreducible, so the iteration cannot cycle) and takes the
    largest limit. Convergence uses the Collatz-Wielandt sandwich: for any
    positive v, min_i (Bv)_i/v_i <= rho(B) <= max_i (Bv)_i/v_i, so the
    estimate is certified once the two bounds agree to 1e-13. A
    successive-difference test would be unsound here; early Rayleigh
    quotients of integer matrices can repeat exactly while far from the
    limit.
    """
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise InvalidArgument("adjacency matrix must be square and nonempty")
    if any(c < 0 for row in matrix for c in row):
        raise InvalidArgument("adjacency matrix must be nonnegative")
    best = mpmath.mpf(0)
    total_iterations = 0
    with mpmath.workprec(_SPECTRAL_BITS):
        tol = mpmath.mpf(10) ** _RAYLEIGH_TOL_EXP
        for comp in _strongly_connected_components(matrix):
            sub = [[matrix[i][j] + (1 if i == j else 0) for j in comp] for i in comp]
            k = len(sub)
            vec = [mpmath.mpf(1)] * k
            estimate = None
            lo = hi = mpmath.mpf(0)
            for step in range(1, _ITERATION_CAP + 1):
                nxt = [sum(sub[i][j] * vec[j] for j in range(k)) for i in range(k)]
                # entries stay positive: diagonal of A+I is >= 1
                ratios = [nxt[i] / vec[i] for i in range(k)]
                lo, hi = min(ratios), max(ratios)
                norm = sum(nxt)
                vec = [v / norm for v in nxt]
                total_iterations += 1
                if hi - lo < tol:
                    estimate = (lo + hi) / 2
                    break
            if estimate is None:
                raise NoConvergence(
                    "power iteration did not settle within the cap",
                    cap=_ITERATION_CAP,
                    bounds=(str(lo), str(hi)),
                )
            rho = estimate - 1
            if rho > best:
                best = rho
        result = +best
    return SpectralResult(rho=result, iterations=total_iterations)


def verify_beta_eigen(matrix, n: int, m: int) -> bool:
    """Whether det(A - beta*I) is exactly zero in the field holding beta."""
    roots = quad_roots(n, m)
    if isinstance(roots, RationalRoots):
        raise InvalidArgument(
            f"x^2-{n}x+{m} has a square discriminant; beta is not a surd"
        )
    beta = roots[0]
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        raise InvalidArgument("adjacency matrix must be square and nonempty")
    zero = QuadSurd(0, 0, beta.D)
    work = [
        [QuadSurd(matrix[i][j], 0, beta.D) - (beta if i == j else zero) for j in range(size)]
        for i in range(size)
    ]
    det = QuadSurd(1, 0, beta.D)
    for col in range(size):
        pivot = None
        for row in range(col, size):
            if work[row][col] != 0:
                pivot = row
                break
        if pivot is None:
            return True  # a zero column of A - beta*I means determinant zero
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det = det * work[col][col]
        inv = work[col][col].inverse()
        for row in range(col + 1, size):
            factor = work[row][col] * inv
            if factor != 0:
                for j in range(col, size):
                    work[row][j] = work[row][j] - factor * work[col][j]
    return det == 0


def emit_dot(gs: GraphSystem) -> str:
    """Graphviz digraph; labels show copy count and step word, edges their multiplicity."""
    lines = ["digraph overlapkit {", "  rankdir=LR;"]
    for i, v in enumerate(gs.vertices):
        lines.append(f'  v{i} [label="k={v.k}[{v.steps}]"];')
    for e in sorted(gs.edges, key=lambda e: (e.src, e.dst)):
        lines.append(f'  v{e.src} -> v{e.dst} [label="{e.mult}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
