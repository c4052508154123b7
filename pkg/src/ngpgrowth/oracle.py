"""Brute-force geodesic test from the shuffle characterization.

A word is geodesic iff no word obtained from it by repeatedly swapping
adjacent letters on adjacent (commuting) vertices contains a single-vertex
block that is not geodesic in its cyclic group.  A block of letters of v is
geodesic iff all its signs agree and it has at most floor(N(v)/2) letters.

This module deliberately uses nothing from the automaton: letters are plain
(vertex, sign) pairs and every verdict comes from explicit closures.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .algebra import CountTable
from .errors import ResourceBudgetError
from .graphs import NumberedGraph

Letter = tuple[str, int]
Word = tuple[Letter, ...]

DEFAULT_MAX_LENGTH = 8
DEFAULT_CLOSURE_CAP = 10**6
DEFAULT_N_MAX = 7
DEFAULT_WORD_BUDGET = 5 * 10**7


def letters(g: NumberedGraph) -> list[Letter]:
    """Symmetric generating set: v and v^-1, the latter dropped when N(v) = 2."""
    out = []
    for v in g.vertices:
        out.append((v, 1))
        if g.number(v) != 2:
            out.append((v, -1))
    return out


def _check_word(g: NumberedGraph, w: Iterable) -> Word:
    word = tuple((str(v), int(s)) for v, s in w)
    for v, s in word:
        if v not in g.index:
            raise ValueError(f"unknown vertex {v!r}")
        if s not in (1, -1) or (s == -1 and g.number(v) == 2):
            raise ValueError(f"letter {v}^{s} is not in the generating set")
    return word


def shuffle_closure(
    g: NumberedGraph,
    w: Iterable,
    cap: int = DEFAULT_CLOSURE_CAP,
    max_length: int = DEFAULT_MAX_LENGTH,
) -> set[Word]:
    """All words reachable from w by swapping adjacent letters on adjacent vertices."""
    w = _check_word(g, w)
    if len(w) > max_length:
        raise ResourceBudgetError(f"word length {len(w)} exceeds the limit {max_length}")
    seen = {w}
    todo = deque([w])
    while todo:
        x = todo.popleft()
        for i in range(len(x) - 1):
            if g.adjacent(x[i][0], x[i + 1][0]):
                y = x[:i] + (x[i + 1], x[i]) + x[i + 2 :]
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise ResourceBudgetError(f"shuffle closure exceeds {cap} words")
                    todo.append(y)
    return seen


def block_is_geodesic(g: NumberedGraph, block: Sequence[Letter]) -> bool:
    """A run of letters on one vertex: same signs and length at most floor(N/2)."""
    if not block:
        return True
    v = block[0][0]
    return len({s for _, s in block}) == 1 and len(block) <= g.number(v) // 2


def has_bad_block(g: NumberedGraph, w: Sequence[Letter]) -> bool:
    i = 0
    while i < len(w):
        j = i
        while j + 1 < len(w) and w[j + 1][0] == w[i][0]:
            j += 1
        if not block_is_geodesic(g, w[i : j + 1]):
            return True
        i = j + 1
    return False


def is_geodesic(
    g: NumberedGraph,
    w: Iterable,
    cap: int = DEFAULT_CLOSURE_CAP,
    max_length: int = DEFAULT_MAX_LENGTH,
) -> bool:
    return not any(has_bad_block(g, x) for x in shuffle_closure(g, w, cap, max_length))


# -- enumeration ---------------------------------------------------------
#
# Enumeration works on integer letters and grows closures one letter at a
# time.  Two facts about commutation classes make this exact:
#
# * the closure of p.s is obtained from the closure of p by inserting s at
#   any position followed only by letters that commute with s;
# * if p is geodesic, a bad block in some word of closure(p.s) must contain
#   the new letter (deleting it would leave a bad block in closure(p)).
#
# Letters of s's own vertex never commute with s, so the only block that can
# go bad is the run of s's vertex immediately before the leftmost insertion
# point, extended by s.


@dataclass
class _Alphabet:
    vertex: list[int]
    sign: list[int]
    half: list[int]
    commutes: list[int]  # bitmask over letters
    letters: list[Letter]


def _alphabet(g: NumberedGraph) -> _Alphabet:
    ls = letters(g)
    vtx = [g.index[v] for v, _ in ls]
    comm = []
    for a in range(len(ls)):
        mask = 0
        for b in range(len(ls)):
            if g.adjacent(ls[a][0], ls[b][0]):
                mask |= 1 << b
        comm.append(mask)
    return _Alphabet(vtx, [s for _, s in ls], [g.nums[i] // 2 for i in vtx], comm, ls)


def _extension_ok(al: _Alphabet, closure: Iterable[tuple[int, ...]], s: int) -> bool:
    v, sign, half, comm = al.vertex[s], al.sign[s], al.half[s], al.commutes[s]
    for w in closure:
        j = len(w)
        while j and comm >> w[j - 1] & 1:
            j -= 1
        run = 1
        k = j - 1
        while k >= 0 and al.vertex[w[k]] == v:
            if al.sign[w[k]] != sign:
                return False
            run += 1
            k -= 1
        if run > half:
            return False
    return True


def _extend_closure(al: _Alphabet, closure: Iterable[tuple[int, ...]], s: int, cap: int) -> set:
    comm = al.commutes[s]
    out = set()
    for w in closure:
        j = len(w)
        out.add(w + (s,))
        while j and comm >> w[j - 1] & 1:
            j -= 1
            out.add(w[:j] + (s,) + w[j:])
        if len(out) > cap:
            raise ResourceBudgetError(f"shuffle closure exceeds {cap} words")
    return out


def incremental_closure(g: NumberedGraph, w: Iterable, cap: int = DEFAULT_CLOSURE_CAP) -> set[Word]:
    """Closure of w built letter by letter; agrees with shuffle_closure."""
    al = _alphabet(g)
    pos = {x: i for i, x in enumerate(al.letters)}
    closure = {()}
    for x in _check_word(g, w):
        closure = _extend_closure(al, closure, pos[x], cap)
    return {tuple(al.letters[i] for i in x) for x in closure}


def walk_verdicts(
    g: NumberedGraph,
    n_max: int,
    cap: int = DEFAULT_CLOSURE_CAP,
    budget: int = DEFAULT_WORD_BUDGET,
    first_letters: Sequence[int] | None = None,
) -> Iterator[tuple[Word, bool]]:
    """Yield (word, verdict) for the empty word and every one-letter extension of a geodesic.

    Extensions of a non-geodesic word are never geodesic, so this covers all
    words up to length n_max.
    """
    al = _alphabet(g)
    n_letters = len(al.letters)
    examined = 0
    yield (), True
    roots = range(n_letters) if first_letters is None else first_letters
    stack: list[tuple[tuple[int, ...], set, Iterator[int]]] = [((), {()}, iter(roots))]
    while stack:
        word, closure, it = stack[-1]
        s = next(it, None)
        if s is None:
            stack.pop()
            continue
        examined += 1
        if examined > budget:
            raise ResourceBudgetError(f"enumeration budget of {budget} words exhausted")
        ok = _extension_ok(al, closure, s)
        new = word + (s,)
        yield tuple(al.letters[i] for i in new), ok
        if ok and len(new) < n_max:
            stack.append((new, _extend_closure(al, closure, s, cap), iter(range(n_letters))))


def oracle_counts(
    g: NumberedGraph,
    n_max: int = DEFAULT_N_MAX,
    cap: int = DEFAULT_CLOSURE_CAP,
    budget: int = DEFAULT_WORD_BUDGET,
    max_n: int = DEFAULT_N_MAX,
) -> CountTable:
    """Number of geodesic words of each length 0..n_max, by exhaustive enumeration."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if n_max > max_n:
        raise ResourceBudgetError(f"n_max = {n_max} exceeds the oracle limit {max_n}")
    counts = [0] * (n_max + 1)
    for word, ok in walk_verdicts(g, n_max, cap, budget):
        if ok:
            counts[len(word)] += 1
    return CountTable(counts)


def all_words(g: NumberedGraph, n: int) -> Iterator[Word]:
    """Every word of length exactly n, in generator order."""
    ls = letters(g)
    if n == 0:
        yield ()
        return
    for w in all_words(g, n - 1):
        for x in ls:
            yield w + (x,)


def flip_vertex(w: Sequence[Letter], v: str) -> Word:
    """Invert every letter on vertex v."""
    return tuple((u, -s) if u == v else (u, s) for u, s in w)
