"""Reference computations kept independent of the library's multiply path."""
import functools
import random

from semigraph.array import AssociativeArray


def naive_product(a_cells, b_cells, rows, inner, cols, alg):
    """Triple loop over plain dicts; missing cells are the algebra's zero."""
    zero = alg.zero
    out = {}
    for i in rows:
        for j in cols:
            terms = [alg.times(a_cells.get((i, k), zero), b_cells.get((k, j), zero))
                     for k in sorted(inner)]
            if not terms:
                continue
            v = functools.reduce(alg.plus, terms)
            if not alg.is_zero(v):
                out[(i, j)] = v
    return out


def random_cells(rng, rows, cols, alg, density=0.5):
    return {(r, c): alg.draw_nonzero(rng) for r in rows for c in cols if rng.random() < density}


def random_pair(seed, alg, max_dim=6):
    rng = random.Random(seed)
    dims = [rng.randint(1, max_dim) for _ in range(3)]
    rows = [f"r{i}" for i in range(dims[0])]
    inner = [f"k{i}" for i in range(dims[1])]
    cols = [f"c{i}" for i in range(dims[2])]
    a_cells = random_cells(rng, rows, inner, alg)
    b_cells = random_cells(rng, inner, cols, alg)
    a = AssociativeArray(rows, inner, alg, a_cells)
    b = AssociativeArray(inner, cols, alg, b_cells)
    return a, b, a_cells, b_cells, rows, inner, cols


def assert_sparse(arr):
    """No stored zero and every key inside the declared key sets."""
    for r, c, v in arr.items():
        assert r in arr.rows and c in arr.cols
        assert not arr.algebra.is_zero(v), (r, c, v)


def cells_equal(x, y, alg):
    return x.keys() == y.keys() and all(alg.equals(x[k], y[k]) for k in x)
