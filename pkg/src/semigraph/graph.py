"""Directed multigraphs, their incidence arrays, and adjacency via array multiplication."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .algebra import ValueAlgebra
from .array import AssociativeArray, KeySet, multiply, transpose
from .errors import (HyperedgeError, InvalidWeightError, SemigraphError,
                     ShapeError)

SPURIOUS = "spurious-nonzero"
MISSING = "missing-nonzero"


@dataclass(frozen=True)
class Edge:
    key: str
    source: str
    target: str


@dataclass(frozen=True)
class Graph:
    """Edge-keyed directed multigraph with separate source and target vertex sets.

    Parallel edges and self-loops are allowed; edge keys must be unique.
    ``out_vertices``/``in_vertices`` default to the sources/targets seen in
    ``edges`` and may contain isolated vertices.
    """

    edges: tuple[Edge, ...]
    out_vertices: KeySet
    in_vertices: KeySet

    def __init__(self, edges: Iterable, out_vertices=None, in_vertices=None):
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)
        edges = tuple(sorted(edges, key=lambda e: e.key))
        keys = [e.key for e in edges]
        if len(set(keys)) != len(keys):
            dup = next(k for k, n in Counter(keys).items() if n > 1)
            raise SemigraphError(f"duplicate edge key {dup!r}")
        outs = KeySet(e.source for e in edges) if out_vertices is None else KeySet(out_vertices)
        ins = KeySet(e.target for e in edges) if in_vertices is None else KeySet(in_vertices)
        for e in edges:
            if e.source not in outs:
                raise SemigraphError(f"edge {e.key!r}: source {e.source!r} not an out-vertex")
            if e.target not in ins:
                raise SemigraphError(f"edge {e.key!r}: target {e.target!r} not an in-vertex")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "out_vertices", outs)
        object.__setattr__(self, "in_vertices", ins)

    @property
    def edge_keys(self) -> KeySet:
        return KeySet(e.key for e in self.edges)

    def multiplicity(self) -> Counter:
        """Number of parallel edges per (source, target)."""
        return Counter((e.source, e.target) for e in self.edges)

    def reversed(self) -> "Graph":
        return Graph((Edge(e.key, e.target, e.source) for e in self.edges),
                     self.in_vertices, self.out_vertices)


@dataclass(frozen=True)
class IncidencePair:
    """Source (edges × K_out) and target (edges × K_in) incidence arrays.

    Every edge row holds exactly one nonzero in each array.
    """

    e_out: AssociativeArray
    e_in: AssociativeArray
    skipped_rows: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.e_out.algebra is not self.e_in.algebra:
            raise ShapeError("incidence arrays use different algebras")
        if self.e_out.rows != self.e_in.rows:
            raise ShapeError("incidence arrays must share the edge key set")
        for name, arr in (("source", self.e_out), ("target", self.e_in)):
            for k in arr.rows:
                n = len(arr.row(k))
                if n > 1:
                    raise HyperedgeError(f"edge {k!r} has {n} {name} vertices")
                if n == 0:
                    raise ShapeError(f"edge {k!r} has no {name} vertex")

    @property
    def algebra(self) -> ValueAlgebra:
        return self.e_out.algebra

    def graph(self) -> Graph:
        edges = [Edge(k, next(iter(self.e_out.row(k))), next(iter(self.e_in.row(k))))
                 for k in self.e_out.rows]
        return Graph(edges, self.e_out.cols, self.e_in.cols)

    def to_json(self) -> dict:
        return {"e_out": self.e_out.to_json(), "e_in": self.e_in.to_json()}

    @classmethod
    def from_json(cls, doc, algebra=None) -> "IncidencePair":
        return cls(AssociativeArray.from_json(doc["e_out"], algebra),
                   AssociativeArray.from_json(doc["e_in"], algebra))


Weighting = Mapping[str, tuple] | Callable[[Edge], tuple] | None


def incidence_from_graph(g: Graph, alg: ValueAlgebra, weighting: Weighting = None) -> IncidencePair:
    """Incidence arrays of ``g``; ``weighting`` gives (w_out, w_in) per edge, default (1, 1)."""
    out_entries, in_entries = [], []
    for e in g.edges:
        if weighting is None:
            w_out, w_in = alg.one, alg.one
        elif callable(weighting):
            w_out, w_in = weighting(e)
        else:
            w_out, w_in = weighting[e.key]
        for w in (w_out, w_in):
            if alg.is_zero(w):
                raise InvalidWeightError(f"edge {e.key!r} weighted with the zero element {w!r}")
        out_entries.append((e.key, e.source, w_out))
        in_entries.append((e.key, e.target, w_in))
    keys = g.edge_keys
    return IncidencePair(AssociativeArray(keys, g.out_vertices, alg, out_entries),
                         AssociativeArray(keys, g.in_vertices, alg, in_entries))


def adjacency(pair: IncidencePair, mode: str = "dense") -> AssociativeArray:
    """E_outᵀ ⊕.⊗ E_in, typed K_out × K_in."""
    return multiply(transpose(pair.e_out), pair.e_in, mode)


def reverse_adjacency(pair: IncidencePair, mode: str = "dense") -> AssociativeArray:
    """E_inᵀ ⊕.⊗ E_out, the adjacency array of the reversed graph (K_in × K_out)."""
    return multiply(transpose(pair.e_in), pair.e_out, mode)


@dataclass(frozen=True)
class Violation:
    kind: str
    source: str
    target: str


@dataclass(frozen=True)
class AdjacencyVerdict:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_json(self) -> dict:
        return {"valid": self.valid,
                "violations": [[v.kind, v.source, v.target] for v in self.violations]}


def validate_adjacency(a: AssociativeArray, g: Graph) -> AdjacencyVerdict:
    """Check that a(x, y) is nonzero exactly where ``g`` has an edge x -> y."""
    if a.rows != g.out_vertices or a.cols != g.in_vertices:
        raise ShapeError("array key sets do not match the graph's out/in vertex sets")
    edges = g.multiplicity()
    stored = a.pattern()
    bad = []
    for x in a.rows:
        for y in a.cols:
            has_edge, nonzero = (x, y) in edges, (x, y) in stored
            if nonzero and not has_edge:
                bad.append(Violation(SPURIOUS, x, y))
            elif has_edge and not nonzero:
                bad.append(Violation(MISSING, x, y))
    return AdjacencyVerdict(tuple(bad))


# -- random instances -------------------------------------------------------

def random_graph(rng: random.Random, max_vertices: int = 8, max_edges: int = 16) -> Graph:
    """Random multigraph on 1..max_vertices vertices with 0..max_edges edges.

    Both vertex sets are the full vertex list, so isolated vertices occur.
    """
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_edges)
    vw, ew = len(str(max_vertices - 1)), len(str(max(max_edges - 1, 0)))
    verts = [f"v{i:0{vw}d}" for i in range(n)]
    edges = [Edge(f"e{j:0{ew}d}", rng.choice(verts), rng.choice(verts)) for j in range(m)]
    return Graph(edges, verts, verts)


def random_weighting(rng: random.Random, g: Graph, alg: ValueAlgebra) -> dict[str, tuple]:
    return {e.key: (alg.draw_nonzero(rng), alg.draw_nonzero(rng)) for e in g.edges}


# -- TSV edge lists ---------------------------------------------------------

def read_edge_tsv(source, alg: ValueAlgebra) -> tuple[Graph, dict[str, tuple]]:
    """Parse ``key<TAB>source<TAB>target[<TAB>w_out<TAB>w_in]`` lines.

    ``source`` is a path or the text itself. Missing weights become the
    algebra's one. Blank lines and ``#`` comments are ignored.
    """
    text = Path(source).read_text(encoding="utf-8") if isinstance(source, Path) else source
    edges, weights = [], {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (3, 5):
            raise SemigraphError(f"line {lineno}: expected 3 or 5 tab-separated fields, got {len(parts)}")
        key, src, tgt = parts[:3]
        if len(parts) == 5:
            try:
                w = (alg.parse(parts[3]), alg.parse(parts[4]))
            except ValueError as exc:
                raise SemigraphError(f"line {lineno}: bad weight ({exc})") from None
        else:
            w = (alg.one, alg.one)
        edges.append(Edge(key, src, tgt))
        weights[key] = w
    return Graph(edges), weights


def write_edge_tsv(g: Graph, weights: Mapping[str, tuple] | None, alg: ValueAlgebra) -> str:
    lines = []
    for e in g.edges:
        fields = [e.key, e.source, e.target]
        if weights is not None:
            fields += [alg.format(w) for w in weights[e.key]]
        lines.append("\t".join(fields))
    return "\n".join(lines) + ("\n" if lines else "")
