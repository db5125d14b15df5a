"""Triplet covers of binary X-trees: support sets, support graphs,
multiplicities, and the cover predicates.

A pair set covers a tree when every interior vertex is *supported*: some
triple of leaves, one from each component hanging off the vertex, has
all three of its pairs in the set.  Supporting triples are exactly the
triangles of the cover graph that are transversal to the vertex's
3-partition, so enumeration walks the triangle list rather than all
leaf triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .tree import PhyloTree, TreeError, _norm_pair
from .twotree import SimpleGraph


class CoverError(ValueError):
    """Invalid pair-set input."""


class UniverseMismatchError(CoverError):
    """The cover's universe differs from the tree's leaf set."""


class NotACoverError(CoverError):
    """An operation requiring a triplet cover received a non-cover."""


class TripletCover:
    """An unordered set of leaf pairs over a fixed label universe."""

    __slots__ = ("_pairs", "_universe")

    def __init__(self, pairs: Iterable[tuple[str, str]], universe: Iterable[str]):
        self._universe = frozenset(universe)
        if not self._universe:
            raise CoverError("empty universe")
        norm = set()
        for a, b in pairs:
            pair = _norm_pair(a, b)
            if pair[0] not in self._universe or pair[1] not in self._universe:
                raise CoverError(f"pair {pair} uses labels outside the universe")
            norm.add(pair)
        self._pairs = frozenset(norm)

    @property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple(sorted(self._pairs))

    @property
    def universe(self) -> frozenset[str]:
        return self._universe

    def multiplicity(self, x: str) -> int:
        """Number of pairs containing ``x`` (its cover-graph degree)."""
        if x not in self._universe:
            raise CoverError(f"unknown label {x!r}")
        return sum(1 for pair in self._pairs if x in pair)

    def min_multiplicity(self) -> int:
        """Smallest multiplicity over the whole universe."""
        return min(self.multiplicity(x) for x in self._universe)

    def multiplicities(self) -> dict[str, int]:
        return {x: self.multiplicity(x) for x in sorted(self._universe)}

    def remove_incident(self, x: str) -> "TripletCover":
        """Drop every pair containing ``x``; the universe shrinks by ``x``."""
        if x not in self._universe:
            raise CoverError(f"unknown label {x!r}")
        return TripletCover(
            (p for p in self._pairs if x not in p), self._universe - {x}
        )

    def with_pairs(self, extra: Iterable[tuple[str, str]]) -> "TripletCover":
        return TripletCover(list(self._pairs) + list(extra), self._universe)

    def without_pair(self, pair: tuple[str, str]) -> "TripletCover":
        pair = _norm_pair(*pair)
        return TripletCover(self._pairs - {pair}, self._universe)

    def cover_graph(self) -> SimpleGraph:
        """The graph on the universe whose edges are the pairs."""
        return SimpleGraph(self._universe, self._pairs)

    def to_text(self) -> str:
        return "\n".join(f"{a} {b}" for a, b in self.pairs) + "\n"

    @classmethod
    def from_text(cls, text: str, universe: Iterable[str]) -> "TripletCover":
        return cls(parse_pairs(text), universe)

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return _norm_pair(*pair) in self._pairs

    def __len__(self) -> int:
        return len(self._pairs)

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(self.pairs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TripletCover):
            return NotImplemented
        return self._pairs == other._pairs and self._universe == other._universe

    def __hash__(self) -> int:
        return hash((self._pairs, self._universe))

    def __repr__(self) -> str:
        return f"TripletCover({len(self)} pairs on {len(self._universe)} labels)"


def parse_pairs(text: str) -> tuple[tuple[str, str], ...]:
    """Read the pair-set text format: one 'a b' per line, '#' comments."""
    pairs: list[tuple[str, str]] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise CoverError(
                f"line {lineno}: expected two whitespace-separated labels, got {raw!r}"
            )
        pair = _norm_pair(*tokens)
        if pair in seen:
            raise CoverError(f"line {lineno}: duplicate pair {pair}")
        seen.add(pair)
        pairs.append(pair)
    return tuple(pairs)


@dataclass(frozen=True)
class SupportSet:
    """All triples supporting one interior vertex."""

    vertex: int
    triples: frozenset[tuple[str, str, str]]

    def sorted_triples(self) -> tuple[tuple[str, str, str], ...]:
        return tuple(sorted(self.triples))

    def __len__(self) -> int:
        return len(self.triples)


class SupportGraph:
    """Bipartite graph joining leaf x to interior vertex v whenever x lies
    in every triple that supports v."""

    __slots__ = ("_leaves", "_vertices", "_edges", "_leaf_deg", "_vertex_deg")

    def __init__(
        self,
        leaves: Iterable[str],
        vertices: Iterable[int],
        edges: Iterable[tuple[str, int]],
    ):
        self._leaves = frozenset(leaves)
        self._vertices = frozenset(vertices)
        eset = set()
        for x, v in edges:
            if x not in self._leaves or v not in self._vertices:
                raise CoverError(f"support edge {x, v} outside the vertex sets")
            eset.add((x, v))
        self._edges = frozenset(eset)
        self._leaf_deg = {x: 0 for x in self._leaves}
        self._vertex_deg = {v: 0 for v in self._vertices}
        for x, v in eset:
            self._leaf_deg[x] += 1
            self._vertex_deg[v] += 1

    @property
    def edges(self) -> tuple[tuple[str, int], ...]:
        return tuple(sorted(self._edges))

    def has_edge(self, x: str, v: int) -> bool:
        return (x, v) in self._edges

    def leaf_degree(self, x: str) -> int:
        return self._leaf_deg[x]

    def vertex_degree(self, v: int) -> int:
        return self._vertex_deg[v]

    def forced_leaves(self, v: int) -> tuple[str, ...]:
        """Leaves joined to ``v``, i.e. present in all its support triples."""
        return tuple(sorted(x for x, w in self._edges if w == v))

    def __repr__(self) -> str:
        return f"SupportGraph({len(self._edges)} edges)"


def _check_universe(tree: PhyloTree, cover: TripletCover) -> None:
    if cover.universe != set(tree.labels):
        raise UniverseMismatchError(
            "cover universe does not equal the tree's leaf set"
        )


def triangles(cover: TripletCover) -> tuple[tuple[str, str, str], ...]:
    """All triangles of the cover graph, via adjacency bitsets."""
    labels = sorted(cover.universe)
    index = {x: i for i, x in enumerate(labels)}
    adj = [0] * len(labels)
    for a, b in cover.pairs:
        ia, ib = index[a], index[b]
        adj[ia] |= 1 << ib
        adj[ib] |= 1 << ia
    found = []
    for i in range(len(labels)):
        higher = adj[i] >> (i + 1)
        j = i + 1
        while higher:
            if higher & 1:
                common = (adj[i] & adj[j]) >> (j + 1)
                k = j + 1
                while common:
                    if common & 1:
                        found.append((labels[i], labels[j], labels[k]))
                    common >>= 1
                    k += 1
            higher >>= 1
            j += 1
    return tuple(found)


def _transversal_triples(
    tree: PhyloTree,
    cover: TripletCover,
    v: int,
    tris: tuple[tuple[str, str, str], ...] | None = None,
) -> list[tuple[str, str, str]]:
    if tris is None:
        tris = triangles(cover)
    blocks = tree.components_at(v)
    block_of = {x: i for i, block in enumerate(blocks) for x in block}
    return [
        t for t in tris if len({block_of[t[0]], block_of[t[1]], block_of[t[2]]}) == 3
    ]


def support_set(tree: PhyloTree, cover: TripletCover, v: int) -> SupportSet:
    """The exact set of triples supporting interior vertex ``v``."""
    _check_universe(tree, cover)
    if not tree.is_interior(v):
        raise TreeError(f"vertex {v} is not interior")
    return SupportSet(v, frozenset(_transversal_triples(tree, cover, v)))


def unsupported_vertices(tree: PhyloTree, cover: TripletCover) -> tuple[int, ...]:
    """Interior vertices with empty support, sorted by id."""
    _check_universe(tree, cover)
    tris = triangles(cover)
    bad = []
    for v in tree.interior_ids:
        blocks = tree.components_at(v)
        block_of = {x: i for i, block in enumerate(blocks) for x in block}
        for a, b, c in tris:
            if len({block_of[a], block_of[b], block_of[c]}) == 3:
                break
        else:
            bad.append(v)
    return tuple(sorted(bad))


def is_triplet_cover(tree: PhyloTree, cover: TripletCover) -> bool:
    """True iff every interior vertex of the tree has nonempty support."""
    return not unsupported_vertices(tree, cover)


def support_graph(tree: PhyloTree, cover: TripletCover) -> SupportGraph:
    """The bipartite support graph of the cover on leaves and interiors.

    Vertices with empty support contribute no edges.
    """
    _check_universe(tree, cover)
    tris = triangles(cover)
    edges = []
    for v in tree.interior_ids:
        triples = _transversal_triples(tree, cover, v, tris)
        if not triples:
            continue
        forced = set(triples[0])
        for t in triples[1:]:
            forced &= set(t)
            if not forced:
                break
        edges.extend((x, v) for x in forced)
    return SupportGraph(tree.labels, tree.interior_ids, edges)


def _require_cover(tree: PhyloTree, cover: TripletCover) -> None:
    bad = unsupported_vertices(tree, cover)
    if bad:
        raise NotACoverError(
            f"not a triplet cover: unsupported interior vertices {list(bad)}"
        )


def is_minimal(tree: PhyloTree, cover: TripletCover) -> bool:
    """True iff no single pair can be deleted while preserving coverage.

    Raises NotACoverError when the input is not a triplet cover.
    """
    _require_cover(tree, cover)
    for pair in cover.pairs:
        if is_triplet_cover(tree, cover.without_pair(pair)):
            return False
    return True


def is_minimum(tree: PhyloTree, cover: TripletCover) -> bool:
    """True iff the cover has the smallest possible size, ``2|X| - 3``.

    Cardinality is a valid criterion because no triplet cover is smaller;
    the 2-tree route stays available as an independent cross-check.
    Raises NotACoverError when the input is not a triplet cover.
    """
    _require_cover(tree, cover)
    return len(cover) == 2 * tree.n_leaves - 3


def cover_report(tree: PhyloTree, cover: TripletCover) -> dict:
    """The predicate report: cover size, cover/minimal/minimum status,
    minimum multiplicity, and any unsupported vertices."""
    _check_universe(tree, cover)
    bad = unsupported_vertices(tree, cover)
    covered = not bad
    return {
        "cover_size": len(cover),
        "is_cover": covered,
        "is_minimal": is_minimal(tree, cover) if covered else None,
        "is_minimum": is_minimum(tree, cover) if covered else None,
        "min_multiplicity": cover.min_multiplicity(),
        "unsupported_vertices": list(bad),
    }
