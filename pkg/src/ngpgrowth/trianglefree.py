"""Growth series of products over L-regular triangle-free graphs with constant N >= 3.

With K = floor(N/2) the unknowns are

    G          the growth series,
    G_k        sum over vertices v of the series from state {v^k},
    G_{k,l}    sum over directed edges (u, v) of the series from {u^k, v^l},

for 1 <= k, l <= K.  Sign-flip symmetry folds v^-k onto v^k, which accounts
for the factors 2 below.  The system is

    G       = 2z G_1 + 1
    G_k     = z (G_{k+1} + 2 G_{1,k} + 2(n-L-1) G_1) + n
    G_{k,l} = z (G_{k+1,l} + G_{k,l+1} + 2(L-1)(G_{1,k} + G_{1,l}) + 2L(n-2L) G_1) + nL

with G_{K+1} = G_{K+1,l} = 0.  Pair unknowns are symmetric and stored under
the sorted index pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Polynomial, RationalFunction, Z, expand, solve_linear
from .automaton import GeodesicFSA, PoweredClique, build_fsa, language_counts
from .errors import HypothesisError, InvariantViolation, SingularSystemError
from .graphs import NumberedGraph

Key = tuple[int, ...]


class NotRegularError(HypothesisError):
    pass


class TriangleError(HypothesisError):
    pass


class NonConstantNumberError(HypothesisError):
    pass


class OrderTwoError(HypothesisError):
    """N = 2 everywhere: a right-angled Coxeter group, handled by the link-profile method."""


def key_name(key: Key) -> str:
    if not key:
        return "G"
    if len(key) == 1:
        return f"G_{key[0]}"
    return f"G_{{{key[0]},{key[1]}}}"


@dataclass
class TfSystem:
    n: int
    L: int
    N: int
    K: int
    unknowns: list[Key]
    # one equation per unknown: unknown = rhs + sum coeff * other unknown
    equations: dict[Key, tuple[dict[Key, Polynomial], int]] = field(default_factory=dict)

    def names(self) -> list[str]:
        return [key_name(k) for k in self.unknowns]

    def matrix(self) -> tuple[list[list[Polynomial]], list[Polynomial]]:
        """The system as (I - C) x = rhs with unknowns in self.unknowns order."""
        pos = {k: i for i, k in enumerate(self.unknowns)}
        size = len(self.unknowns)
        rows, rhs = [], []
        for key in self.unknowns:
            terms, const = self.equations[key]
            row = [Polynomial.constant(1 if pos[key] == j else 0) for j in range(size)]
            for other, c in terms.items():
                row[pos[other]] = row[pos[other]] - c
            rows.append(row)
            rhs.append(Polynomial.constant(const))
        return rows, rhs


def check_tf_hypotheses(g: NumberedGraph) -> tuple[int, int]:
    """Return (L, N) or raise the error naming the first violated hypothesis."""
    if not g.vertices:
        raise NotRegularError("the graph has no vertices")
    if not g.all_numbers_equal():
        raise NonConstantNumberError(
            f"vertex numbers are not constant: {sorted(set(g.nums))}"
        )
    N = g.nums[0]
    if N == 2:
        raise OrderTwoError("all vertex numbers are 2; use the right-angled Coxeter method")
    degrees = {v: len(g.neighbors(v)) for v in g.vertices}
    if len(set(degrees.values())) != 1:
        lo = min(degrees, key=degrees.get)
        hi = max(degrees, key=degrees.get)
        raise NotRegularError(
            f"graph is not regular: deg({lo}) = {degrees[lo]}, deg({hi}) = {degrees[hi]}"
        )
    if g.clique_number > 2:
        tri = sorted(g.names(g.clique_masks()[3][0]))
        raise TriangleError(f"graph contains the triangle {tri}")
    return degrees[g.vertices[0]], N


def build_tf_system(g: NumberedGraph) -> TfSystem:
    L, N = check_tf_hypotheses(g)
    n = len(g.vertices)
    K = N // 2
    singles = [(k,) for k in range(1, K + 1)]
    pairs = [(k, l) for k in range(1, K + 1) for l in range(k, K + 1)]
    system = TfSystem(n, L, N, K, [()] + singles + pairs)

    def add(terms: dict, key: Key, c: int):
        if any(i > K for i in key) or c == 0:
            return
        if len(key) == 2:
            key = tuple(sorted(key))
        terms[key] = terms.get(key, Polynomial()) + Z * c

    terms: dict = {}
    add(terms, (1,), 2)
    system.equations[()] = (terms, 1)
    for (k,) in singles:
        terms = {}
        add(terms, (k + 1,), 1)
        add(terms, (1, k), 2)
        add(terms, (1,), 2 * (n - L - 1))
        system.equations[(k,)] = (terms, n)
    for k, l in pairs:
        terms = {}
        add(terms, (k + 1, l), 1)
        add(terms, (k, l + 1), 1)
        add(terms, (1, k), 2 * (L - 1))
        add(terms, (1, l), 2 * (L - 1))
        add(terms, (1,), 2 * L * (n - 2 * L))
        system.equations[(k, l)] = (terms, n * L)
    return system


def solve_tf_all(system: TfSystem) -> dict[Key, RationalFunction]:
    rows, rhs = system.matrix()
    try:
        sol = solve_linear(rows, rhs)
    except SingularSystemError as exc:
        raise InvariantViolation(f"triangle-free system is singular: {exc}") from exc
    return dict(zip(system.unknowns, sol))


def solve_tf(system: TfSystem) -> RationalFunction:
    return solve_tf_all(system)[()]


def tf_growth(g: NumberedGraph) -> RationalFunction:
    return solve_tf(build_tf_system(g))


def grouped_counts(g: NumberedGraph, n_max: int, fsa: GeodesicFSA | None = None) -> dict[Key, list[int]]:
    """Taylor coefficients of G, G_k and G_{k,l} read off the automaton's state series."""
    fsa = fsa or build_fsa(g)
    per_state = language_counts(fsa, n_max)
    K = g.nums[0] // 2
    out: dict[Key, list[int]] = {(): per_state[fsa.start]}

    def state(items) -> list[int]:
        return per_state[fsa.index[PoweredClique(tuple(items))]]

    def acc(key, series):
        cur = out.setdefault(key, [0] * (n_max + 1))
        for i, c in enumerate(series):
            cur[i] += c

    for k in range(1, K + 1):
        out.setdefault((k,), [0] * (n_max + 1))
        for l in range(k, K + 1):
            out.setdefault((k, l), [0] * (n_max + 1))
    for v in g.vertices:
        for k in range(1, K + 1):
            acc((k,), state([(v, k)]))
    for u in g.vertices:
        for v in g.neighbors(u):
            for k in range(1, K + 1):
                for l in range(k, K + 1):
                    items = sorted([(u, k), (v, l)], key=lambda t: g.index[t[0]])
                    acc((k, l), state(items))
    return out


def tf_residuals(system: TfSystem, values: dict[Key, Sequence[int]], order: int) -> dict[Key, list[int]]:
    """Coefficients through z^(order-1) of lhs - rhs for every equation."""
    out = {}
    for key in system.unknowns:
        terms, const = system.equations[key]
        rhs = [0] * order
        rhs[0] = const
        for other, c in terms.items():
            for i, a in enumerate(c.coeffs):
                for n in range(i, order):
                    rhs[n] += a * values[other][n - i]
        out[key] = [values[key][n] - rhs[n] for n in range(order)]
    return out


def expand_solution(sol: dict[Key, RationalFunction], n_max: int) -> dict[Key, list[int]]:
    return {k: list(expand(f, n_max)) for k, f in sol.items()}
