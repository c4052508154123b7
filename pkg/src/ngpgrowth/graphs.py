"""Numbered graphs: parsing, cliques, links and link-regularity.

Vertices are strings.  Internally each vertex gets an index in document
order and neighbourhoods are stored as int bitmasks; cliques are returned
as frozensets of vertex names.
"""

from __future__ import annotations

import json
from importlib import resources
from collections import Counter
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import GraphParseError, NotLinkRegularError


class DuplicateVertexError(GraphParseError):
    pass


class UnknownVertexError(GraphParseError):
    pass


class BadNumberError(GraphParseError):
    pass


class SelfLoopError(GraphParseError):
    pass


class DuplicateEdgeError(GraphParseError):
    pass


class Multiset:
    """Finite multiset stored as a sorted tuple of (element, multiplicity)."""

    __slots__ = ("items",)

    def __init__(self, elements: Iterable[Hashable] = ()):
        counts = Counter(elements)
        self.items = tuple(sorted((e, m) for e, m in counts.items() if m > 0))

    @classmethod
    def from_counts(cls, counts: Mapping[Hashable, int]) -> "Multiset":
        ms = cls()
        ms.items = tuple(sorted((e, m) for e, m in counts.items() if m > 0))
        return ms

    def counts(self) -> Counter:
        return Counter(dict(self.items))

    def __add__(self, other: "Multiset") -> "Multiset":
        c = self.counts()
        c.update(other.counts())
        return Multiset.from_counts(c)

    def __sub__(self, other: "Multiset") -> "Multiset":
        # elements whose multiplicity would drop to <= 0 disappear
        return Multiset.from_counts(self.counts() - other.counts())

    def __le__(self, other: "Multiset") -> bool:
        oc = other.counts()
        return all(m <= oc[e] for e, m in self.items)

    def __len__(self):
        return sum(m for _, m in self.items)

    def __iter__(self) -> Iterator:
        for e, m in self.items:
            for _ in range(m):
                yield e

    def __eq__(self, other):
        if not isinstance(other, Multiset):
            return NotImplemented
        return self.items == other.items

    def __hash__(self):
        return hash(self.items)

    def __repr__(self):
        return "{" + ", ".join(map(repr, self)) + "}"


class NumberedGraph:
    """Simplicial graph with a vertex numbering N(v) >= 2."""

    def __init__(
        self,
        vertices: Sequence[str],
        edges: Iterable[tuple[str, str]] = (),
        numbers: Mapping[str, int] | None = None,
        name: str | None = None,
    ):
        vertices = tuple(vertices)
        index: dict[str, int] = {}
        for v in vertices:
            if v in index:
                raise DuplicateVertexError(f"duplicate vertex {v!r}")
            index[v] = len(index)
        numbers = dict(numbers or {})
        for v in numbers:
            if v not in index:
                raise UnknownVertexError(f"number given for undeclared vertex {v!r}")
        nums = []
        for v in vertices:
            n = numbers.get(v, 2)
            if isinstance(n, bool) or not isinstance(n, int):
                raise BadNumberError(f"vertex number of {v!r} must be an integer, got {n!r}")
            if n < 2:
                raise BadNumberError(f"vertex number of {v!r} must be >= 2, got {n}")
            nums.append(n)
        nbr = [0] * len(vertices)
        edge_set = set()
        for e in edges:
            if len(e) != 2:
                raise GraphParseError(f"edge {e!r} must have exactly two endpoints")
            a, b = e
            for x in (a, b):
                if x not in index:
                    raise UnknownVertexError(f"edge {[a, b]} uses undeclared vertex {x!r}")
            if a == b:
                raise SelfLoopError(f"self-loop at vertex {a!r}")
            key = frozenset((a, b))
            if key in edge_set:
                raise DuplicateEdgeError(f"duplicate edge {[a, b]}")
            edge_set.add(key)
            i, j = index[a], index[b]
            nbr[i] |= 1 << j
            nbr[j] |= 1 << i
        self.vertices = vertices
        self.index = index
        self.nums = tuple(nums)
        self.nbr = tuple(nbr)
        self.name = name
        self._cliques: list[list[int]] | None = None

    # -- basic accessors --------------------------------------------------
    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<NumberedGraph{label} |V|={len(self.vertices)} |E|={len(self.edges())}>"

    def number(self, v: str) -> int:
        return self.nums[self.index[v]]

    @property
    def numbers(self) -> dict[str, int]:
        return dict(zip(self.vertices, self.nums))

    def adjacent(self, u: str, v: str) -> bool:
        return bool(self.nbr[self.index[u]] >> self.index[v] & 1)

    def neighbors(self, v: str) -> frozenset[str]:
        return self.names(self.nbr[self.index[v]])

    def edges(self) -> list[tuple[str, str]]:
        out = []
        for i, j in combinations(range(len(self.vertices)), 2):
            if self.nbr[i] >> j & 1:
                out.append((self.vertices[i], self.vertices[j]))
        return out

    def mask(self, vs: Iterable[str]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.index[v]
        return m

    def names(self, mask: int) -> frozenset[str]:
        return frozenset(self.vertices[i] for i in bits(mask))

    def all_numbers_equal(self, value: int | None = None) -> bool:
        vals = set(self.nums)
        if value is None:
            return len(vals) <= 1
        return vals <= {value}

    def n_multiset(self, vs: Iterable[str]) -> Multiset:
        return Multiset(self.number(v) for v in vs)

    def _n_multiset_mask(self, mask: int) -> Multiset:
        return Multiset(self.nums[i] for i in bits(mask))

    def to_json(self) -> dict:
        doc = {
            "vertices": list(self.vertices),
            "numbers": self.numbers,
            "edges": [list(e) for e in self.edges()],
        }
        if self.name:
            doc["name"] = self.name
        return doc

    # -- cliques ----------------------------------------------------------
    def clique_masks(self) -> list[list[int]]:
        """Clique bitmasks grouped by size 0..d (cached)."""
        if self._cliques is None:
            n = len(self.vertices)
            by_size: list[list[int]] = [[0]]

            def extend(mask: int, size: int, candidates: int) -> None:
                # candidates: common neighbours of the clique with index above its max
                c = candidates
                while c:
                    low = c & -c
                    i = low.bit_length() - 1
                    c ^= low
                    new = mask | low
                    if len(by_size) <= size + 1:
                        by_size.append([])
                    by_size[size + 1].append(new)
                    higher = self.nbr[i] & ~((1 << (i + 1)) - 1)
                    extend(new, size + 1, candidates & higher)

            extend(0, 0, (1 << n) - 1)
            self._cliques = by_size
        return self._cliques

    def is_clique_mask(self, mask: int) -> bool:
        for i in bits(mask):
            if (mask & ~(1 << i)) & ~self.nbr[i]:
                return False
        return True

    def link_mask(self, mask: int) -> int:
        common = (1 << len(self.vertices)) - 1
        for i in bits(mask):
            common &= self.nbr[i]
        return common & ~mask

    @property
    def clique_number(self) -> int:
        return len(self.clique_masks()) - 1


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- parsing ----------------------------------------------------------------

def graph_from_dict(doc: Mapping, name: str | None = None) -> NumberedGraph:
    if not isinstance(doc, Mapping):
        raise GraphParseError("graph document must be a JSON object")
    vertices = doc.get("vertices", [])
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphParseError('"vertices" must be a list of strings')
    edges = doc.get("edges", [])
    if not isinstance(edges, list) or not all(isinstance(e, list) for e in edges):
        raise GraphParseError('"edges" must be a list of [u, v] pairs')
    numbers = doc.get("numbers", {})
    if not isinstance(numbers, Mapping):
        raise GraphParseError('"numbers" must be an object mapping vertex to integer')
    return NumberedGraph(vertices, [tuple(e) for e in edges], numbers, name=doc.get("name", name))


def parse_graph(document: str, name: str | None = None) -> NumberedGraph:
    """Parse the JSON graph format.

    ``{"vertices": [...], "numbers": {v: N(v)}, "edges": [[u, v], ...]}``;
    vertices absent from ``numbers`` get N(v) = 2.
    """
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(doc, name=name)


def load_graph(path) -> NumberedGraph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_graph(text, name=str(path))


# -- clique and link queries -------------------------------------------------

def clique(g: NumberedGraph, members: Iterable[str]) -> frozenset[str]:
    members = frozenset(members)
    for v in members:
        if v not in g.index:
            raise UnknownVertexError(f"unknown vertex {v!r}")
    if not g.is_clique_mask(g.mask(members)):
        raise ValueError(f"{sorted(members)} is not a clique")
    return members


def cliques(g: NumberedGraph) -> list[list[frozenset[str]]]:
    """All cliques grouped by size, the empty clique included."""
    return [[g.names(m) for m in group] for group in g.clique_masks()]


def link(g: NumberedGraph, sigma: Iterable[str]) -> frozenset[str]:
    return g.names(g.link_mask(g.mask(sigma)))


def link_relative(g: NumberedGraph, sigma: Iterable[str], tau: Iterable[str]) -> frozenset[str]:
    """Vertices v outside sigma whose neighbourhood meets sigma exactly in tau."""
    s, t = g.mask(sigma), g.mask(tau)
    if t & ~s:
        raise ValueError("tau must be a subset of sigma")
    return g.names(link_relative_mask(g, s, t))


def link_relative_mask(g: NumberedGraph, s: int, t: int) -> int:
    out = 0
    for v in range(len(g.vertices)):
        if not s >> v & 1 and g.nbr[v] & s == t:
            out |= 1 << v
    return out


class RegularityReport(NamedTuple):
    regular: bool
    witness: tuple[frozenset[str], frozenset[str]] | None = None

    def __bool__(self):
        return self.regular


def _regularity(g: NumberedGraph, key) -> RegularityReport:
    seen: dict = {}
    for group in g.clique_masks():
        for m in group:
            k = key(m)
            lk = key(g.link_mask(m))
            if k not in seen:
                seen[k] = (m, lk)
            elif seen[k][1] != lk:
                return RegularityReport(False, (g.names(seen[k][0]), g.names(m)))
    return RegularityReport(True, None)


def is_link_regular(g: NumberedGraph) -> RegularityReport:
    """Cliques with equal N-multisets must have links with equal N-multisets."""
    return _regularity(g, g._n_multiset_mask)


def is_simplicially_link_regular(g: NumberedGraph) -> RegularityReport:
    """Link-regularity of the underlying graph: equal clique sizes force equal link sizes."""
    return _regularity(g, int.bit_count)


def disjoint_union(g: NumberedGraph, h: NumberedGraph) -> NumberedGraph:
    verts = [f"0:{v}" for v in g.vertices] + [f"1:{v}" for v in h.vertices]
    edges = [(f"0:{a}", f"0:{b}") for a, b in g.edges()] + [(f"1:{a}", f"1:{b}") for a, b in h.edges()]
    numbers = {f"0:{v}": n for v, n in g.numbers.items()}
    numbers.update({f"1:{v}": n for v, n in h.numbers.items()})
    return NumberedGraph(verts, edges, numbers)


def are_equivalent(g: NumberedGraph, h: NumberedGraph) -> bool:
    """Equivalence of link-regular numbered graphs.

    Both must be link-regular (NotLinkRegularError otherwise).  Equivalent iff
    the vertex-number multisets agree and the disjoint union is link-regular.
    """
    for label, x in (("first", g), ("second", h)):
        rep = is_link_regular(x)
        if not rep:
            name = x.name or label
            raise NotLinkRegularError(
                f"{label} graph ({name}) is not link-regular", witness=rep.witness, graph_name=name
            )
    if Multiset(g.nums) != Multiset(h.nums):
        return False
    return is_link_regular(disjoint_union(g, h)).regular


class LinkProfile(NamedTuple):
    d: int
    ell: tuple[int, ...]


def link_profile(g: NumberedGraph) -> LinkProfile:
    """Link sizes l_0 = |V|, l_k = |Lk(any k-clique)| of a link-regular graph.

    Only the underlying simplicial graph matters; vertex numbers are ignored.
    """
    rep = is_simplicially_link_regular(g)
    if not rep:
        a, b = rep.witness
        raise NotLinkRegularError(
            f"graph is not link-regular: cliques {sorted(a)} and {sorted(b)} have equal size "
            "but links of different size",
            witness=rep.witness,
            graph_name=g.name,
        )
    groups = g.clique_masks()
    ell = tuple(g.link_mask(group[0]).bit_count() for group in groups)
    return LinkProfile(len(groups) - 1, ell)


# -- bundled example graphs --------------------------------------------------

def fixture_names() -> list[str]:
    root = resources.files("ngpgrowth") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> NumberedGraph:
    path = resources.files("ngpgrowth") / "fixtures" / f"{name}.json"
    if not path.is_file():
        raise GraphParseError(f"no bundled graph named {name!r}; known: {', '.join(fixture_names())}")
    return parse_graph(path.read_text(encoding="utf-8"), name=name)
