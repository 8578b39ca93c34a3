"""Sparse associative arrays over ordered string key sets.

Arrays are immutable: every operation returns a new array. Entries are held
row-major (row key -> {col key -> value}, both in ascending key order); the
column-major view is built on first use.
"""
from __future__ import annotations

import bisect
import functools
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping

from .algebra import ValueAlgebra, annihilates, builtin_algebra
from .errors import (AlgebraMismatchError, KeyDomainError, SelectorError,
                     ShapeError, SparseModeError)

MODES = ("dense", "sparse")


class KeySet:
    """Finite, duplicate-free, strictly ascending sequence of string keys."""

    __slots__ = ("_keys", "_rank")

    def __init__(self, keys: Iterable[str] = ()):
        keys = sorted(set(keys))
        for k in keys:
            if not isinstance(k, str):
                raise TypeError(f"keys must be strings, got {k!r}")
        self._keys = tuple(keys)
        self._rank = {k: i for i, k in enumerate(self._keys)}

    def __iter__(self) -> Iterator[str]:
        return iter(self._keys)

    def __len__(self):
        return len(self._keys)

    def __contains__(self, key):
        return key in self._rank

    def __getitem__(self, i):
        return self._keys[i]

    def __eq__(self, other):
        if isinstance(other, KeySet):
            return self._keys == other._keys
        return NotImplemented

    def __hash__(self):
        return hash(self._keys)

    def __repr__(self):
        return f"KeySet({list(self._keys)!r})"

    @property
    def keys(self) -> tuple[str, ...]:
        return self._keys

    def rank(self, key: str) -> int:
        try:
            return self._rank[key]
        except KeyError:
            raise KeyDomainError(f"key {key!r} not in key set") from None

    def between(self, lo: str, hi: str) -> tuple[str, ...]:
        """Keys k with lo <= k <= hi."""
        i = bisect.bisect_left(self._keys, lo)
        j = bisect.bisect_right(self._keys, hi)
        return self._keys[i:j]


@dataclass(frozen=True)
class KeyRange:
    """Inclusive key range ``[lo, hi]`` for :func:`subarray`."""

    lo: str
    hi: str


class AssociativeArray:
    """A map ``rows × cols -> V`` storing only entries different from the algebra's zero."""

    def __init__(self, rows, cols, algebra: ValueAlgebra, entries=()):
        self.rows = rows if isinstance(rows, KeySet) else KeySet(rows)
        self.cols = cols if isinstance(cols, KeySet) else KeySet(cols)
        self.algebra = algebra
        if isinstance(entries, Mapping):
            entries = ((r, c, v) for (r, c), v in entries.items())
        staged: dict[str, dict[str, Any]] = {}
        for r, c, v in entries:
            self._check_keys(r, c)
            if algebra.is_zero(v):
                staged.get(r, {}).pop(c, None)
                continue
            staged.setdefault(r, {})[c] = v
        self._data = _ordered(staged, self.rows, self.cols)

    @classmethod
    def _raw(cls, rows: KeySet, cols: KeySet, algebra, data):
        # data must already be ordered and zero-free
        arr = cls.__new__(cls)
        arr.rows, arr.cols, arr.algebra, arr._data = rows, cols, algebra, data
        return arr

    def _check_keys(self, r, c):
        if r not in self.rows:
            raise KeyDomainError(f"row key {r!r} not in row key set")
        if c not in self.cols:
            raise KeyDomainError(f"column key {c!r} not in column key set")

    def get(self, r: str, c: str):
        self._check_keys(r, c)
        return self._data.get(r, {}).get(c, self.algebra.zero)

    def __getitem__(self, rc):
        return self.get(*rc)

    def set(self, r: str, c: str, v) -> "AssociativeArray":
        self._check_keys(r, c)
        data = {k: dict(row) for k, row in self._data.items()}
        if self.algebra.is_zero(v):
            row = data.get(r)
            if row is not None:
                row.pop(c, None)
                if not row:
                    del data[r]
        else:
            data.setdefault(r, {})[c] = v
        return AssociativeArray._raw(self.rows, self.cols, self.algebra,
                                     _ordered(data, self.rows, self.cols))

    def items(self) -> Iterator[tuple[str, str, Any]]:
        """Stored entries in row-major order."""
        for r, row in self._data.items():
            for c, v in row.items():
                yield r, c, v

    def row(self, r: str) -> Mapping[str, Any]:
        return self._data.get(r, {})

    @functools.cached_property
    def _by_col(self) -> dict[str, dict[str, Any]]:
        out: dict[str, dict[str, Any]] = {}
        for r, c, v in self.items():
            out.setdefault(c, {})[r] = v
        return {c: out[c] for c in self.cols if c in out}

    def col(self, c: str) -> Mapping[str, Any]:
        return self._by_col.get(c, {})

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def pattern(self) -> frozenset[tuple[str, str]]:
        return frozenset((r, c) for r, c, _ in self.items())

    def to_dict(self) -> dict[tuple[str, str], Any]:
        return {(r, c): v for r, c, v in self.items()}

    def __eq__(self, other):
        if not isinstance(other, AssociativeArray):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and self.algebra.name == other.algebra.name
                and self.to_dict() == other.to_dict())

    __hash__ = None

    def __repr__(self):
        return (f"AssociativeArray({len(self.rows)}x{len(self.cols)}, "
                f"{self.algebra.name}, nnz={self.nnz})")

    def with_algebra(self, algebra: ValueAlgebra, convert=None) -> "AssociativeArray":
        """Same entries (optionally mapped through ``convert``) under another algebra."""
        convert = convert or (lambda v: v)
        return AssociativeArray(self.rows, self.cols, algebra,
                                ((r, c, convert(v)) for r, c, v in self.items()))

    # JSON: {rows, cols, algebra, entries: [[row, col, value], ...]} row-major
    def to_json(self) -> dict:
        alg = self.algebra
        doc = {"rows": list(self.rows), "cols": list(self.cols), "algebra": alg.name}
        if alg.name == "union.intersect":
            doc["universe"] = alg.encode(alg.one)
        doc["entries"] = [[r, c, alg.encode(v)] for r, c, v in self.items()]
        return doc

    @classmethod
    def from_json(cls, doc: Mapping, algebra: ValueAlgebra | None = None) -> "AssociativeArray":
        if algebra is None:
            algebra = builtin_algebra(doc["algebra"], doc.get("universe"))
        elif algebra.name != doc["algebra"]:
            raise AlgebraMismatchError(
                f"document algebra {doc['algebra']!r} != {algebra.name!r}")
        return cls(doc["rows"], doc["cols"], algebra,
                   ((r, c, algebra.decode(v)) for r, c, v in doc["entries"]))


def _ordered(data, rows: KeySet, cols: KeySet):
    out = {}
    for r in rows:
        row = data.get(r)
        if row:
            out[r] = {c: row[c] for c in sorted(row, key=cols.rank)}
    return out


def transpose(arr: AssociativeArray) -> AssociativeArray:
    data = {c: dict(col) for c, col in arr._by_col.items()}
    return AssociativeArray._raw(arr.cols, arr.rows, arr.algebra, data)


def _same_algebra(a: AssociativeArray, b: AssociativeArray):
    if a.algebra is not b.algebra:
        raise AlgebraMismatchError(
            f"algebra mismatch: {a.algebra.name!r} vs {b.algebra.name!r}")


def _check_mode(mode: str, alg: ValueAlgebra):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "sparse" and not annihilates(alg):
        raise SparseModeError(
            f"sparse mode needs 0 to annihilate ⊗, which fails for {alg.name!r}; use dense")


def multiply(a: AssociativeArray, b: AssociativeArray, mode: str = "dense") -> AssociativeArray:
    """⊕.⊗ product; each cell folds left over inner keys in ascending order.

    Dense mode folds over every inner key, zeros included, and is faithful
    for any algebra. Sparse mode only visits inner keys stored in both
    operands and is refused unless 0 annihilates ⊗.
    """
    if a.cols != b.rows:
        raise ShapeError(
            f"inner key sets differ: {len(a.cols)} column keys vs {len(b.rows)} row keys")
    _same_algebra(a, b)
    alg = a.algebra
    _check_mode(mode, alg)
    plus, times, is_zero = alg.plus, alg.times, alg.is_zero
    out: dict[str, dict[str, Any]] = {}

    if mode == "dense":
        zero = alg.zero
        inner = a.cols.keys
        b_cols = [(c, [b._data.get(k, {}).get(c, zero) for k in inner]) for c in b.cols]
        for r in a.rows:
            a_row = a._data.get(r, {})
            a_vals = [a_row.get(k, zero) for k in inner]
            row_out = {}
            for c, b_vals in b_cols:
                if not a_vals:
                    continue
                acc = times(a_vals[0], b_vals[0])
                for x, y in zip(a_vals[1:], b_vals[1:]):
                    acc = plus(acc, times(x, y))
                if not is_zero(acc):
                    row_out[c] = acc
            if row_out:
                out[r] = row_out
        return AssociativeArray._raw(a.rows, b.cols, alg, out)

    # row streaming: inner keys are visited in ascending order, so each
    # output cell sees its terms in the same order as the dense fold
    for r, a_row in a._data.items():
        acc: dict[str, Any] = {}
        for k, x in a_row.items():
            for c, y in b._data.get(k, {}).items():
                t = times(x, y)
                acc[c] = plus(acc[c], t) if c in acc else t
        row_out = {c: acc[c] for c in sorted(acc, key=b.cols.rank) if not is_zero(acc[c])}
        if row_out:
            out[r] = row_out
    return AssociativeArray._raw(a.rows, b.cols, alg, out)


def _select(keys: KeySet, selector) -> KeySet:
    if selector is None:
        return keys
    if isinstance(selector, KeyRange):
        if selector.hi < selector.lo:
            raise SelectorError(f"empty range: {selector.lo!r} > {selector.hi!r}")
        return KeySet(keys.between(selector.lo, selector.hi))
    if isinstance(selector, str):
        raise SelectorError("a key list or KeyRange is required, not a bare string")
    chosen = list(selector)
    for k in chosen:
        if k not in keys:
            raise KeyDomainError(f"selected key {k!r} not in key set")
    return KeySet(chosen)


def subarray(arr: AssociativeArray, rows=None, cols=None) -> AssociativeArray:
    """Restrict to selected rows and columns.

    A selector is ``None`` (all keys), an explicit key list, or a
    :class:`KeyRange`.
    """
    rs, cs = _select(arr.rows, rows), _select(arr.cols, cols)
    data = {}
    for r, row in arr._data.items():
        if r in rs:
            kept = {c: v for c, v in row.items() if c in cs}
            if kept:
                data[r] = kept
    return AssociativeArray._raw(rs, cs, arr.algebra, data)


def _same_shape(a, b):
    if a.rows != b.rows or a.cols != b.cols:
        raise ShapeError("element-wise operations need identical row and column key sets")
    _same_algebra(a, b)


def elementwise_add(a: AssociativeArray, b: AssociativeArray) -> AssociativeArray:
    _same_shape(a, b)
    alg = a.algebra
    cells = a.pattern() | b.pattern()
    return AssociativeArray(a.rows, a.cols, alg,
                            ((r, c, alg.plus(a.get(r, c), b.get(r, c))) for r, c in cells))


def elementwise_multiply(a: AssociativeArray, b: AssociativeArray,
                         mode: str = "dense") -> AssociativeArray:
    _same_shape(a, b)
    alg = a.algebra
    _check_mode(mode, alg)
    if mode == "dense":
        cells = ((r, c) for r in a.rows for c in a.cols)
    else:
        cells = a.pattern() & b.pattern()
    return AssociativeArray(a.rows, a.cols, alg,
                            ((r, c, alg.times(a.get(r, c), b.get(r, c))) for r, c in cells))


def render(arr: AssociativeArray, title: str | None = None) -> str:
    """Aligned text table; zero cells are blank, numbers right-aligned."""
    alg = arr.algebra
    header = [title or ""] + list(arr.cols)
    body = [[r] + [("" if c not in arr.row(r) else alg.format(arr.row(r)[c]))
                   for c in arr.cols] for r in arr.rows]
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = []
    for row in [header] + body:
        cells = [row[0].ljust(widths[0])] + [v.rjust(w) for v, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)
