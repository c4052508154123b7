"""Regular grammar of the geodesic automaton and its growth series.

Each accept state q becomes a variable A_q with rules A_q -> a A_{δ(q,a)}
and A_q -> ε.  Since the grammar is unambiguous, the series satisfy

    A_q = 1 + z * sum_a A_{δ(q,a)},

that is (I - zT) A = e.  The system is solved exactly over Q(z).

Systems coming from real automata reach a few hundred unknowns, which is
too many for dense polynomial elimination.  Two facts keep it cheap:

* States with the same multiset of successor classes have equal series, so
  the system is first collapsed onto the coarsest such partition.
* Every principal minor of I - zT equals 1 at z = 0, so diagonal pivots
  never vanish and a sparse elimination in any order is valid.  Unknowns
  are eliminated cheapest first (fewest predecessors times successors).
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import CountTable, Polynomial, RationalFunction, Z, expand, solve_linear
from .automaton import REJECT, GeodesicFSA, PoweredClique
from .errors import InvariantViolation, SingularSystemError, ZeroDenominatorError


@dataclass
class RegularGrammar:
    """Right-linear grammar; variables are indexed 0..len(variables)-1."""

    variables: list[PoweredClique]
    # (variable, terminal, target variable)
    rules: list[tuple[int, str, int]]
    epsilon: frozenset[int]
    start: int = 0
    index: dict[PoweredClique, int] = field(default_factory=dict)

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.variables]
        for q, _, t in self.rules:
            out[q].append(t)
        return out

    def reachable(self) -> set[int]:
        succ = self.successors()
        seen = {self.start}
        todo = deque([self.start])
        while todo:
            q = todo.popleft()
            for t in succ[q]:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return seen


def grammar_from_fsa(fsa: GeodesicFSA) -> RegularGrammar:
    """One variable per accept state, pruned to those reachable from the start."""
    rules = []
    for q, row in enumerate(fsa.transitions):
        for s, t in zip(fsa.generators, row):
            if t != REJECT:
                rules.append((q, str(s), t))
    full = RegularGrammar(list(fsa.states), rules, frozenset(range(fsa.num_states)), fsa.start)
    keep = sorted(full.reachable())
    if len(keep) == fsa.num_states:
        full.index = {s: i for i, s in enumerate(full.variables)}
        return full
    renum = {q: i for i, q in enumerate(keep)}
    variables = [fsa.states[q] for q in keep]
    return RegularGrammar(
        variables,
        [(renum[q], a, renum[t]) for q, a, t in rules if q in renum],
        frozenset(renum[q] for q in keep),
        renum[fsa.start],
        {s: i for i, s in enumerate(variables)},
    )


def lump(successors: Sequence[Sequence[int]], epsilon: Sequence[bool]) -> list[int]:
    """Coarsest partition in which blocks agree on ε-rules and successor-block counts.

    Returns block ids, numbered by first occurrence.
    """
    n = len(successors)
    block = [1 if e else 0 for e in epsilon]
    count = len(set(block))
    while True:
        sig: dict = {}
        new = []
        for q in range(n):
            key = (block[q], tuple(sorted(Counter(block[t] for t in successors[q]).items())))
            new.append(sig.setdefault(key, len(sig)))
        if len(sig) == count:
            return new
        block, count = new, len(sig)


def _sparse_solve(
    rows: dict[int, dict[int, RationalFunction]],
    const: dict[int, RationalFunction],
    target: int,
    want_all: bool,
) -> dict[int, RationalFunction]:
    """Solve x_i = const_i + sum_j rows[i][j] x_j by diagonal-pivot elimination.

    rows and const are consumed.  Returns x_target, plus every other unknown
    when want_all is set.
    """
    preds: dict[int, set[int]] = {i: set() for i in rows}
    for i, r in rows.items():
        for j in r:
            preds[j].add(i)
    alive = set(rows) - {target}
    done: list[tuple[int, dict[int, RationalFunction], RationalFunction]] = []

    def fold_self(k, r, c):
        s = r.pop(k, None)
        if s is None:
            return r, c
        piv = 1 - s
        if piv.is_zero():
            raise SingularSystemError(f"vanishing pivot at unknown {k}")
        f = 1 / piv
        return {j: a * f for j, a in r.items()}, c * f

    while alive:
        k = min(alive, key=lambda u: (len(preds[u]) * len(rows[u]), u))
        alive.remove(k)
        r, ck = fold_self(k, rows.pop(k), const.pop(k))
        preds[k].discard(k)
        for i in preds[k]:
            ri = rows[i]
            a = ri.pop(k)
            const[i] = const[i] + a * ck
            for j, ajk in r.items():
                if j in ri:
                    ri[j] = ri[j] + a * ajk
                    if ri[j].is_zero():
                        del ri[j]
                        preds[j].discard(i)
                else:
                    ri[j] = a * ajk
                    preds[j].add(i)
        for j in r:
            preds[j].discard(k)
        if want_all:
            done.append((k, r, ck))
    r, c = fold_self(target, rows.pop(target), const.pop(target))
    if r:
        raise InvariantViolation("elimination left free unknowns")
    x = {target: c}
    for k, r, ck in reversed(done):
        acc = ck
        for j, a in r.items():
            acc = acc + a * x[j]
        x[k] = acc
    return x


@dataclass
class GrowthSeries:
    """Series of the start variable plus, when requested, of every variable."""

    series: RationalFunction
    variables: list[RationalFunction] | None = None
    blocks: int = 0

    def coefficients(self, n_max: int) -> CountTable:
        return expand(self.series, n_max)

    def to_json(self, n_max: int) -> dict:
        out = self.series.to_json()
        out["coefficients"] = list(self.coefficients(n_max))
        return out


def growth_series(grammar: RegularGrammar, per_variable: bool = False) -> GrowthSeries:
    """Exact growth series of the start variable of an unambiguous grammar."""
    succ = grammar.successors()
    eps = [q in grammar.epsilon for q in range(grammar.num_variables)]
    block = lump(succ, eps)
    rows: dict[int, dict[int, RationalFunction]] = {}
    const: dict[int, RationalFunction] = {}
    for q, b in enumerate(block):
        if b in rows:
            continue
        c = Counter(block[t] for t in succ[q])
        rows[b] = {t: RationalFunction(Z * k) for t, k in c.items()}
        const[b] = RationalFunction(1 if eps[q] else 0)
    try:
        x = _sparse_solve(rows, const, block[grammar.start], per_variable)
    except (SingularSystemError, ZeroDenominatorError) as exc:
        raise InvariantViolation(f"automaton system is singular: {exc}") from exc
    start = x[block[grammar.start]]
    variables = [x[b] for b in block] if per_variable else None
    return GrowthSeries(start, variables, len(set(block)))


def growth_system(grammar: RegularGrammar) -> tuple[list[list[Polynomial]], list[Polynomial]]:
    """The unlumped system (I - zT) A = e as dense polynomial matrices."""
    n = grammar.num_variables
    m = [[Polynomial.constant(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for q, _, t in grammar.rules:
        m[q][t] = m[q][t] - Z
    rhs = [Polynomial.constant(1 if q in grammar.epsilon else 0) for q in range(n)]
    return m, rhs


def growth_series_dense(grammar: RegularGrammar) -> list[RationalFunction]:
    """Per-variable series by dense Bareiss elimination; for small grammars only."""
    m, rhs = growth_system(grammar)
    try:
        return solve_linear(m, rhs)
    except SingularSystemError as exc:
        raise InvariantViolation(f"automaton system is singular: {exc}") from exc
