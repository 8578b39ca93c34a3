"""D4M-style ingestion: explode a table into ``field|value`` columns and cut incidence arrays out of it."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping

from .algebra import ValueAlgebra, builtin_algebra
from .array import AssociativeArray, subarray
from .errors import (AmbiguousKeyError, HyperedgeError, InvalidWeightError,
                     KeyDomainError, SemigraphError)
from .graph import IncidencePair

SEP = "|"
MULTI_SEP = ";"


@dataclass(frozen=True)
class TabularSource:
    """Records keyed by id; each cell holds zero or more string values."""

    row_keys: tuple[str, ...]
    fields: tuple[str, ...]
    cells: Mapping[str, Mapping[str, tuple[str, ...]]]

    def __post_init__(self):
        for what, seq in (("row key", self.row_keys), ("field", self.fields)):
            seen = set()
            for k in seq:
                if k in seen:
                    raise SemigraphError(f"duplicate {what} {k!r}")
                seen.add(k)
        for r, row in self.cells.items():
            for f, values in row.items():
                if any(not v for v in values):
                    raise SemigraphError(f"empty value in record {r!r}, field {f!r}")

    def triples(self) -> set[tuple[str, str, str]]:
        return {(r, f, v) for r in self.row_keys
                for f, values in self.cells.get(r, {}).items() for v in values}

    def values(self) -> frozenset[str]:
        return frozenset(v for _, _, v in self.triples())


def read_tsv(source) -> TabularSource:
    """Read a UTF-8 TSV table: header of field names, record key in the first column.

    ``source`` is a :class:`~pathlib.Path` or the text itself. Multiple values
    in one cell are separated by ``;``.
    """
    text = Path(source).read_text(encoding="utf-8") if isinstance(source, Path) else source
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        return TabularSource((), (), {})
    header = lines[0].split("\t")
    fields = tuple(h.strip() for h in header[1:])
    rows, cells = [], {}
    for lineno, line in enumerate(lines[1:], 2):
        parts = line.split("\t")
        if len(parts) > len(header):
            raise SemigraphError(f"line {lineno}: {len(parts)} fields, header has {len(header)}")
        parts += [""] * (len(header) - len(parts))
        key = parts[0].strip()
        rows.append(key)
        cells[key] = {}
        for f, raw in zip(fields, parts[1:]):
            values = tuple(v.strip() for v in raw.split(MULTI_SEP) if v.strip())
            if values:
                cells[key][f] = values
    return TabularSource(tuple(rows), fields, cells)


def load_demo() -> TabularSource:
    """The bundled music table: 10 tracks, 3 genres, 4 writers."""
    text = resources.files("semigraph").joinpath("data/demo.tsv").read_text(encoding="utf-8")
    return read_tsv(text)


def explode(src: TabularSource, separator: str = SEP,
            alg: ValueAlgebra | None = None) -> AssociativeArray:
    """One column per distinct ``field<sep>value`` holding an existence marker.

    The marker is the literal 1 for the numeric semirings (whatever their
    ⊗-identity) and the algebra's one otherwise.

    Duplicate values collapse to a single entry.
    """
    alg = alg or builtin_algebra("plus.times")
    if len(separator) != 1:
        raise SemigraphError("separator must be a single character")
    for f in src.fields:
        if separator in f:
            raise AmbiguousKeyError(f"separator {separator!r} occurs in field name {f!r}")
    entries = [(r, f"{f}{separator}{v}", alg.existence) for r, f, v in src.triples()]
    return AssociativeArray(src.row_keys, {c for _, c, _ in entries}, alg, entries)


def collapse(arr: AssociativeArray, separator: str = SEP) -> set[tuple[str, str, str]]:
    """Inverse of :func:`explode` on the nonzero pattern: (record, field, value) triples."""
    out = set()
    for r, c, _ in arr.items():
        field, _, value = c.partition(separator)
        out.add((r, field, value))
    return out


def field_columns(arr: AssociativeArray, field: str, separator: str = SEP) -> list[str]:
    prefix = field + separator
    return [c for c in arr.cols if c.startswith(prefix)]


def incidence_pair_from_columns(exploded: AssociativeArray, out_field: str, in_field: str,
                                separator: str = SEP,
                                alg: ValueAlgebra | None = None) -> IncidencePair:
    """Cut E_out (``out_field|*`` columns) and E_in (``in_field|*`` columns) from an exploded table.

    Records with two or more values in either field are hyperedges and raise.
    Records missing either field are dropped and listed in ``skipped_rows``.
    """
    groups = {}
    for field in (out_field, in_field):
        cols = field_columns(exploded, field, separator)
        if not cols:
            raise KeyDomainError(f"no columns for field {field!r}")
        groups[field] = subarray(exploded, None, cols)
    e_out, e_in = groups[out_field], groups[in_field]
    kept, skipped = [], []
    for r in exploded.rows:
        n_out, n_in = len(e_out.row(r)), len(e_in.row(r))
        for field, n in ((out_field, n_out), (in_field, n_in)):
            if n > 1:
                raise HyperedgeError(f"row {r!r} has {n} values in field {field!r}")
        (kept if n_out and n_in else skipped).append(r)
    e_out, e_in = subarray(e_out, kept, None), subarray(e_in, kept, None)
    if alg is not None and alg is not exploded.algebra:
        e_out, e_in = e_out.with_algebra(alg), e_in.with_algebra(alg)
    return IncidencePair(e_out, e_in, tuple(skipped))


def reweight(arr: AssociativeArray, weights: Mapping[str, object]) -> AssociativeArray:
    """Replace every nonzero in each mapped column by the mapped value."""
    alg = arr.algebra
    for c, w in weights.items():
        if c not in arr.cols:
            raise KeyDomainError(f"column key {c!r} not in array")
        if alg.is_zero(w):
            raise InvalidWeightError(f"weight for {c!r} is the zero element")
    return AssociativeArray(arr.rows, arr.cols, alg,
                            ((r, c, weights.get(c, v)) for r, c, v in arr.items()))
