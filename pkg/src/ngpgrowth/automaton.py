"""Geodesic automaton of a numbered graph product.

States are powered cliques: a clique together with a bounded nonzero
power at each of its vertices.  Reading v from a state keeps the part of
the support that commutes with v, then raises the power at v by one; the
move is legal only while the power stays within floor(N(v)/2) and does not
cancel an existing negative power.  Everything else falls into the
absorbing reject state.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, NamedTuple, Sequence

from .algebra import CountTable
from .graphs import Multiset, NumberedGraph, bits

REJECT = -1


class Generator(NamedTuple):
    vertex: str
    sign: int = 1

    def __str__(self):
        return self.vertex if self.sign > 0 else f"{self.vertex}^-1"

    def inverse(self) -> "Generator":
        return Generator(self.vertex, -self.sign)


def generators(g: NumberedGraph) -> list[Generator]:
    """Standard symmetric generating set: document order, + before -, no v^-1 when N(v) = 2."""
    out = []
    for v, n in zip(g.vertices, g.nums):
        out.append(Generator(v, 1))
        if n != 2:
            out.append(Generator(v, -1))
    return out


def check_generator(g: NumberedGraph, s: Generator) -> None:
    if s.vertex not in g.index:
        raise ValueError(f"unknown generator vertex {s.vertex!r}")
    if s.sign not in (1, -1):
        raise ValueError(f"generator sign must be +1 or -1, got {s.sign}")
    if s.sign == -1 and g.number(s.vertex) == 2:
        raise ValueError(f"{s.vertex} has order 2, so {s.vertex}^-1 is not a separate generator")


def parse_word(g: NumberedGraph, text: str | Iterable[str]) -> list[Generator]:
    """Parse whitespace-separated letters ``v`` or ``v^-1``."""
    tokens = text.split() if isinstance(text, str) else list(text)
    word = []
    for tok in tokens:
        if tok.endswith("^-1"):
            s = Generator(tok[:-3], -1)
        elif tok.endswith("^1"):
            s = Generator(tok[:-2], 1)
        else:
            s = Generator(tok, 1)
        check_generator(g, s)
        word.append(s)
    return word


def format_word(word: Sequence[Generator]) -> str:
    return " ".join(map(str, word)) if word else "ε"


def max_power(n: int) -> int:
    return n // 2


def allowed_powers(n: int) -> list[int]:
    """Nonzero powers a powered clique may carry at a vertex of order n."""
    k = max_power(n)
    if n == 2:
        return [1]
    return [p for p in range(-k, k + 1) if p]


@dataclass(frozen=True)
class PoweredClique:
    """Sparse map vertex -> nonzero power, ordered by vertex index."""

    items: tuple[tuple[str, int], ...] = ()

    @property
    def support(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.items)

    def power(self, v: str) -> int:
        for u, p in self.items:
            if u == v:
                return p
        return 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.items)

    def __len__(self):
        return len(self.items)

    def __str__(self):
        parts = [v if p == 1 else f"{v}^{p}" for v, p in self.items]
        return "{" + ",".join(parts) + "}"


def powered_clique(g: NumberedGraph, powers: dict[str, int]) -> PoweredClique:
    """Validated constructor; zero powers are dropped."""
    items = sorted(((v, p) for v, p in powers.items() if p), key=lambda vp: g.index[vp[0]])
    if not g.is_clique_mask(g.mask(v for v, _ in items)):
        raise ValueError(f"support {[v for v, _ in items]} is not a clique")
    for v, p in items:
        if p not in allowed_powers(g.number(v)):
            raise ValueError(f"power {p} out of bounds at {v} (N={g.number(v)})")
    return PoweredClique(tuple(items))


def enumerate_powered_cliques(g: NumberedGraph) -> list[PoweredClique]:
    """All powered cliques, by clique size, then clique order, then powers."""
    out = []
    for group in g.clique_masks():
        for mask in group:
            idx = list(bits(mask))
            choices = [allowed_powers(g.nums[i]) for i in idx]
            for pw in product(*choices):
                out.append(PoweredClique(tuple((g.vertices[i], p) for i, p in zip(idx, pw))))
    return out


def power_profile(sigma: PoweredClique, g: NumberedGraph) -> Multiset:
    """Multiset of (power, vertex number) over the support."""
    return Multiset((p, g.number(v)) for v, p in sigma.items)


@dataclass
class GeodesicFSA:
    graph: NumberedGraph
    states: list[PoweredClique]
    generators: list[Generator]
    # transitions[state][generator index] -> state index or REJECT
    transitions: list[list[int]]
    start: int = 0
    index: dict[PoweredClique, int] = field(default_factory=dict)

    @property
    def num_states(self) -> int:
        return len(self.states)

    def step(self, state: int, s: Generator) -> int:
        if state == REJECT:
            return REJECT
        return self.transitions[state][self.generators.index(s)]

    def to_dot(self, include_reject: bool = False) -> str:
        return fsa_to_dot(self, include_reject=include_reject)


def _delta(g: NumberedGraph, sigma: PoweredClique, vi: int, sign: int):
    """Target powered clique of reading vertex index vi with the given sign, or None."""
    v = g.vertices[vi]
    k = max_power(g.nums[vi])
    cur = sigma.power(v)
    if sign > 0:
        if not 0 <= cur < k:
            return None
    else:
        if g.nums[vi] == 2 or not -k < cur <= 0:
            return None
    nb = g.nbr[vi]
    items = [(u, p) for u, p in sigma.items if nb >> g.index[u] & 1]
    items.append((v, cur + sign))
    items.sort(key=lambda up: g.index[up[0]])
    return PoweredClique(tuple(items))


def build_fsa(g: NumberedGraph) -> GeodesicFSA:
    states = enumerate_powered_cliques(g)
    index = {s: i for i, s in enumerate(states)}
    gens = generators(g)
    transitions = []
    for sigma in states:
        row = []
        for s in gens:
            target = _delta(g, sigma, g.index[s.vertex], s.sign)
            row.append(REJECT if target is None else index[target])
        transitions.append(row)
    return GeodesicFSA(g, states, gens, transitions, start=index[PoweredClique()], index=index)


class RunResult(NamedTuple):
    accepted: bool
    state: PoweredClique | None


def run(fsa: GeodesicFSA, word: Sequence[Generator]) -> RunResult:
    gen_index = {s: i for i, s in enumerate(fsa.generators)}
    q = fsa.start
    for s in word:
        if s not in gen_index:
            check_generator(fsa.graph, s)
        q = fsa.transitions[q][gen_index[s]]
        if q == REJECT:
            return RunResult(False, None)
    return RunResult(True, fsa.states[q])


def forward_counts(fsa: GeodesicFSA, n_max: int) -> list[list[int]]:
    """counts[n][q] = number of length-n words ending at state q."""
    cur = [0] * fsa.num_states
    cur[fsa.start] = 1
    out = [cur]
    for _ in range(n_max):
        nxt = [0] * fsa.num_states
        for q, c in enumerate(cur):
            if c:
                for t in fsa.transitions[q]:
                    if t != REJECT:
                        nxt[t] += c
        cur = nxt
        out.append(cur)
    return out


def count_geodesics(fsa: GeodesicFSA, n_max: int) -> CountTable:
    return CountTable(sum(row) for row in forward_counts(fsa, n_max))


def language_counts(fsa: GeodesicFSA, n_max: int) -> list[list[int]]:
    """counts[q][n] = number of accepted length-n words read from state q.

    These are the Taylor coefficients of the per-state growth series.
    """
    m = fsa.num_states
    prev = [1] * m
    cols = [prev]
    for _ in range(n_max):
        nxt = [sum(prev[t] for t in fsa.transitions[q] if t != REJECT) for q in range(m)]
        cols.append(nxt)
        prev = nxt
    return [[cols[n][q] for n in range(n_max + 1)] for q in range(m)]


@dataclass
class BetaTable:
    """Transition counts between power profiles, with a constancy check."""

    table: dict[tuple[Multiset, Multiset], int]
    violations: list[Multiset]
    per_state: dict[int, Counter]

    @property
    def constant(self) -> bool:
        return not self.violations

    def profiles(self) -> set[Multiset]:
        return {p for p, _ in self.table} | {q for _, q in self.table}

    def get(self, p: Multiset, q: Multiset) -> int:
        return self.table.get((p, q), 0)


def beta_table(fsa: GeodesicFSA, g: NumberedGraph | None = None) -> BetaTable:
    g = g or fsa.graph
    profiles = [power_profile(s, g) for s in fsa.states]
    per_state: dict[int, Counter] = {}
    first: dict[Multiset, Counter] = {}
    violations: list[Multiset] = []
    for q, row in enumerate(fsa.transitions):
        c = Counter(profiles[t] for t in row if t != REJECT)
        per_state[q] = c
        p = profiles[q]
        if p not in first:
            first[p] = c
        elif first[p] != c and p not in violations:
            violations.append(p)
    table = {}
    for p, c in first.items():
        for qprof, n in c.items():
            table[(p, qprof)] = n
    return BetaTable(table, violations, per_state)


def _dot_quote(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', r"\""))


def fsa_to_dot(fsa: GeodesicFSA, include_reject: bool = False) -> str:
    lines = ["digraph geodesic_fsa {", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for i, s in enumerate(fsa.states):
        lines.append(f"  q{i} [shape=doublecircle, label={_dot_quote(str(s))}];")
    if include_reject:
        lines.append('  reject [shape=circle, label="reject"];')
    lines.append(f"  __start -> q{fsa.start};")
    for i, row in enumerate(fsa.transitions):
        for s, t in zip(fsa.generators, row):
            if t == REJECT:
                if include_reject:
                    lines.append(f"  q{i} -> reject [label={_dot_quote(str(s))}];")
            else:
                lines.append(f"  q{i} -> q{t} [label={_dot_quote(str(s))}];")
    if include_reject:
        for s in fsa.generators:
            lines.append(f"  reject -> reject [label={_dot_quote(str(s))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
