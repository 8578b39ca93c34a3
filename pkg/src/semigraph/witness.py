"""Counterexample graphs for failing algebras, and a two-sided theorem harness.

If ⊕ is not zero-sum-free, ⊗ has zero divisors, or 0 fails to annihilate,
one of the small graphs built here has E_outᵀE_in that is *not* an
adjacency array. If all three conditions hold, random graphs never break it.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .algebra import (DEFAULT_BUDGET, ConditionReport, ValueAlgebra,
                      check_conditions, table_algebra)
from .array import AssociativeArray
from .errors import InvalidWitnessError
from .graph import (AdjacencyVerdict, Edge, Graph, IncidencePair, Violation,
                    adjacency, incidence_from_graph, random_graph,
                    random_weighting, validate_adjacency)

# lemma number 0 marks a violation found by the random forward search
SEARCH = 0


def lemma1_instance(v, w, alg: ValueAlgebra) -> tuple[Graph, IncidencePair]:
    """Two parallel edges a -> b weighted v and w; their sum v ⊕ w cancels to 0."""
    if alg.is_zero(v) or alg.is_zero(w) or not alg.is_zero(alg.plus(v, w)):
        raise InvalidWitnessError(f"({v!r}, {w!r}) is not a pair of nonzeros summing to 0")
    g = Graph([Edge("k1", "a", "b"), Edge("k2", "a", "b")])
    return g, incidence_from_graph(g, alg, {"k1": (v, alg.one), "k2": (w, alg.one)})


def lemma2_instance(v, w, alg: ValueAlgebra) -> tuple[Graph, IncidencePair]:
    """One self-loop at a with source weight v and target weight w, where v ⊗ w = 0."""
    if alg.is_zero(v) or alg.is_zero(w) or not alg.is_zero(alg.times(v, w)):
        raise InvalidWitnessError(f"({v!r}, {w!r}) is not a pair of zero divisors")
    g = Graph([Edge("k", "a", "a")])
    return g, incidence_from_graph(g, alg, {"k": (v, w)})


def lemma3_instance(v, alg: ValueAlgebra) -> tuple[Graph, IncidencePair]:
    """Self-loops at a and b weighted v, so cell (a, b) evaluates (v ⊗ 0) ⊕ (0 ⊗ v).

    When the only failure is ``0 ⊗ 0 != 0`` the witness is 0 itself, which
    cannot weight an edge. A third self-loop (at c, weight 1) then puts a
    ``0 ⊗ 0`` term into cell (a, b).
    """
    zero = alg.zero
    if alg.is_zero(v):
        if alg.is_zero(alg.times(zero, zero)):
            raise InvalidWitnessError("0 ⊗ 0 = 0, so 0 is not an annihilation witness")
        g = Graph([Edge("k1", "a", "a"), Edge("k2", "b", "b"), Edge("k3", "c", "c")])
        return g, incidence_from_graph(g, alg)
    if alg.is_zero(alg.times(v, zero)) and alg.is_zero(alg.times(zero, v)):
        raise InvalidWitnessError(f"0 annihilates {v!r} on both sides")
    g = Graph([Edge("k1", "a", "a"), Edge("k2", "b", "b")])
    return g, incidence_from_graph(g, alg, {"k1": (v, v), "k2": (v, v)})


@dataclass(frozen=True)
class Counterexample:
    lemma: int
    graph: Graph
    pair: IncidencePair
    product: AssociativeArray
    violation: AdjacencyVerdict

    def replay(self) -> AdjacencyVerdict:
        return validate_adjacency(adjacency(self.pair, "dense"), self.graph)

    def to_json(self) -> dict:
        g = self.graph
        return {
            "lemma": self.lemma,
            "graph": {"edges": [[e.key, e.source, e.target] for e in g.edges],
                      "out_vertices": list(g.out_vertices),
                      "in_vertices": list(g.in_vertices)},
            "pair": self.pair.to_json(),
            "product": self.product.to_json(),
            "violation": self.violation.to_json(),
        }

    @classmethod
    def from_json(cls, doc, algebra: ValueAlgebra | None = None) -> "Counterexample":
        gd = doc["graph"]
        g = Graph([Edge(*e) for e in gd["edges"]], gd["out_vertices"], gd["in_vertices"])
        violation = AdjacencyVerdict(tuple(Violation(*v) for v in doc["violation"]["violations"]))
        return cls(doc["lemma"], g, IncidencePair.from_json(doc["pair"], algebra),
                   AssociativeArray.from_json(doc["product"], algebra), violation)


def _counterexample(lemma: int, g: Graph, pair: IncidencePair) -> Counterexample:
    product = adjacency(pair, "dense")
    return Counterexample(lemma, g, pair, product, validate_adjacency(product, g))


def counterexample_for(report: ConditionReport, alg: ValueAlgebra) -> Counterexample | None:
    """Lemma instance for the first failing condition, or None if all hold."""
    failure = report.first_failure()
    if failure is None:
        return None
    name, witness = failure
    if name == "zero_sum_free":
        return _counterexample(1, *lemma1_instance(*witness, alg))
    if name == "no_zero_divisors":
        return _counterexample(2, *lemma2_instance(*witness, alg))
    return _counterexample(3, *lemma3_instance(*witness, alg))


@dataclass(frozen=True)
class TheoremVerdict:
    algebra: str
    conditions: ConditionReport
    trials: int
    seed: int
    forward_trials: int
    counterexample: Counterexample | None

    @property
    def equivalent(self) -> bool:
        """Counterexample found exactly when some condition fails."""
        return (self.counterexample is not None) == (not self.conditions.all_hold())

    def to_json(self, alg: ValueAlgebra) -> dict:
        return {
            "algebra": self.algebra,
            "conditions": self.conditions.to_json(alg),
            "trials": self.trials,
            "seed": self.seed,
            "forward_trials": self.forward_trials,
            "counterexample": None if self.counterexample is None else self.counterexample.to_json(),
        }


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{trial}")


def test_theorem(alg: ValueAlgebra, trials: int = 1000, seed: int = 0,
                 budget: int = DEFAULT_BUDGET, max_vertices: int = 8,
                 max_edges: int = 16) -> TheoremVerdict:
    """Run both directions of the equivalence for ``alg``.

    Failing conditions are turned into a lemma counterexample. Otherwise
    ``trials`` random weighted multigraphs are built and each dense product
    E_outᵀE_in is validated; a violation there is recorded with lemma 0.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    report = check_conditions(alg, budget, seed)
    cex = counterexample_for(report, alg)
    if cex is not None:
        if cex.violation.valid:
            raise AssertionError(f"lemma {cex.lemma} instance for {alg.name} shows no violation")
        return TheoremVerdict(alg.name, report, trials, seed, 0, cex)

    done = 0
    for i in range(trials):
        rng = trial_rng(seed, i)
        g = random_graph(rng, max_vertices, max_edges)
        pair = incidence_from_graph(g, alg, random_weighting(rng, g, alg))
        product = adjacency(pair, "dense")
        verdict = validate_adjacency(product, g)
        if not verdict.valid:
            cex = Counterexample(SEARCH, g, pair, product, verdict)
            break
        done += 1
    return TheoremVerdict(alg.name, report, trials, seed, done, cex)


test_theorem.__test__ = False  # keep pytest from collecting it


# -- exhaustive 3-element search --------------------------------------------

CARRIER = (0, 1, 2)  # 0 and 1 are the identities, 2 is the free element
_PLUS_FREE = ((1, 1), (1, 2), (2, 1), (2, 2))
_TIMES_FREE = ((0, 0), (0, 2), (2, 0), (2, 2))


def _table(free_cells, values, fixed):
    t = [[None] * 3 for _ in range(3)]
    for i, j in itertools.product(CARRIER, repeat=2):
        t[i][j] = fixed(i, j)
    for (i, j), v in zip(free_cells, values):
        t[i][j] = v
    return t


def enumerate_table_algebras() -> Iterator[ValueAlgebra]:
    """Every (⊕, ⊗) on {0, 1, 2} with 0 the ⊕-identity and 1 the ⊗-identity (3⁸ algebras)."""
    plus_fixed = lambda i, j: j if i == 0 else (i if j == 0 else None)  # noqa: E731
    times_fixed = lambda i, j: j if i == 1 else (i if j == 1 else None)  # noqa: E731
    for pv in itertools.product(CARRIER, repeat=4):
        pt = _table(_PLUS_FREE, pv, plus_fixed)
        for tv in itertools.product(CARRIER, repeat=4):
            tt = _table(_TIMES_FREE, tv, times_fixed)
            name = "table:" + "".join(map(str, pv)) + "/" + "".join(map(str, tv))
            yield table_algebra(CARRIER, pt, tt, 0, 1, name=name)


def classify_tables(trials: int = 200, seed: int = 0) -> list[TheoremVerdict]:
    return [test_theorem(alg, trials, seed) for alg in enumerate_table_algebras()]
