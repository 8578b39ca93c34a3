"""Value algebras (V, ⊕, ⊗, 0, 1) and the three graph-construction conditions.

An algebra is just a bundle of two binary operations with identities. Nothing
beyond the identity laws is assumed: ⊕ and ⊗ may be non-associative,
non-commutative and non-distributive, and 0 need not annihilate.
"""
from __future__ import annotations

import functools
import itertools
import json
import math
import operator
import random
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .errors import MalformedAlgebraError, UnknownAlgebraError

REAL_TOL = 1e-12
DEFAULT_BUDGET = 4096
DEFAULT_UNIVERSE = frozenset({1, 2})

HOLDS = "holds-on-sample"
FAILS = "fails"


class Bound:
    """Extreme element sitting below (sign -1) or above (sign +1) every ordinary value.

    Instances are singletons compared by identity, so arithmetic on them is
    decided by explicit case analysis rather than IEEE overflow.
    """

    __slots__ = ("label", "sign")

    def __init__(self, label: str, sign: int):
        self.label = label
        self.sign = sign

    def __repr__(self):
        return self.label

    def __lt__(self, other):
        if other is self:
            return False
        if isinstance(other, Bound):
            return self.sign < other.sign
        return self.sign < 0

    def __gt__(self, other):
        if other is self:
            return False
        if isinstance(other, Bound):
            return self.sign > other.sign
        return self.sign > 0

    def __le__(self, other):
        return other is self or self < other

    def __ge__(self, other):
        return other is self or self > other


NEG_INF = Bound("-inf", -1)
POS_INF = Bound("+inf", +1)
BOTTOM = Bound("⊥", -1)
TOP = Bound("⊤", +1)


def _identity(v):
    return v


def _parse_json_or_raw(text: str):
    try:
        return json.loads(text)
    except ValueError:
        return text


@dataclass(frozen=True, eq=False)
class ValueAlgebra:
    """A value set with ⊕ (identity ``zero``) and ⊗ (identity ``one``).

    The domain is either an explicit finite ``elements`` tuple or a
    ``sampler(rng)`` drawing representative values. ``encode``/``decode``
    map values to and from JSON, ``parse`` reads a value from plain text.
    ``marker`` is the value a table explosion stores for "present"; it
    defaults to ``one``.
    """

    name: str
    plus: Callable[[Any, Any], Any]
    times: Callable[[Any, Any], Any]
    zero: Any
    one: Any
    elements: tuple | None = None
    sampler: Callable[[random.Random], Any] | None = None
    equals: Callable[[Any, Any], bool] = operator.eq
    encode: Callable[[Any], Any] = _identity
    decode: Callable[[Any], Any] = _identity
    parse: Callable[[str], Any] = _parse_json_or_raw
    marker: Any = None

    def __post_init__(self):
        if (self.elements is None) == (self.sampler is None):
            raise MalformedAlgebraError(
                f"{self.name}: exactly one of elements/sampler must be given")

    def __repr__(self):
        return f"ValueAlgebra({self.name!r})"

    @property
    def existence(self):
        return self.one if self.marker is None else self.marker

    @property
    def finite(self) -> bool:
        return self.elements is not None

    def is_zero(self, v) -> bool:
        return self.equals(v, self.zero)

    def sample(self, n: int, seed: int = 0) -> list:
        """Up to ``n`` distinct domain elements, always starting with 0 then 1."""
        if self.finite:
            if len(self.elements) <= n:
                return list(self.elements)
            rest = [e for e in self.elements
                    if not self.equals(e, self.zero) and not self.equals(e, self.one)]
            head = [self.zero, self.one][:n]
            return head + random.Random(seed).sample(rest, max(0, n - len(head)))
        rng = random.Random(seed)
        out = [self.zero, self.one][:n]
        attempts = 0
        while len(out) < n and attempts < 50 * n:
            attempts += 1
            v = self.sampler(rng)
            if not any(self.equals(v, u) for u in out):
                out.append(v)
        return out

    def draw_nonzero(self, rng: random.Random):
        if self.finite:
            pool = [e for e in self.elements if not self.is_zero(e)]
            return rng.choice(pool)
        while True:
            v = self.sampler(rng)
            if not self.is_zero(v):
                return v

    def format(self, v) -> str:
        enc = self.encode(v)
        if isinstance(enc, str):
            return enc
        if isinstance(enc, float) and enc.is_integer():
            return str(int(enc))
        return json.dumps(enc, ensure_ascii=False)


# -- condition checking -----------------------------------------------------

@dataclass(frozen=True)
class ConditionResult:
    verdict: str
    witness: tuple | None = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS


@dataclass(frozen=True)
class ConditionReport:
    """Verdicts for zero-sum-freeness, absence of zero divisors and annihilation by 0.

    ``holds-on-sample`` is exhaustive proof only when ``exhaustive`` is true.
    """

    algebra: str
    zero_sum_free: ConditionResult
    no_zero_divisors: ConditionResult
    annihilator: ConditionResult
    sample_size: int
    elements: int
    exhaustive: bool
    seed: int

    CONDITIONS = ("zero_sum_free", "no_zero_divisors", "annihilator")

    def all_hold(self) -> bool:
        return all(getattr(self, c).holds for c in self.CONDITIONS)

    def first_failure(self) -> tuple[str, tuple] | None:
        for c in self.CONDITIONS:
            res = getattr(self, c)
            if not res.holds:
                return c, res.witness
        return None

    def replay(self, alg: ValueAlgebra) -> bool:
        """True when every recorded witness still exhibits its violation."""
        for c in self.CONDITIONS:
            res = getattr(self, c)
            if res.holds:
                continue
            if not _VIOLATES[c](alg, *res.witness):
                return False
        return True

    def to_json(self, alg: ValueAlgebra) -> dict:
        out = {"algebra": self.algebra}
        for c in self.CONDITIONS:
            res = getattr(self, c)
            entry = {"verdict": res.verdict}
            if res.witness is not None:
                entry["witness"] = [alg.encode(v) for v in res.witness]
            out[c] = entry
        out.update(sample_size=self.sample_size, elements=self.elements,
                   exhaustive=self.exhaustive, seed=self.seed)
        return out


def _violates_zero_sum_free(alg, v, w):
    return not (alg.is_zero(v) and alg.is_zero(w)) and alg.is_zero(alg.plus(v, w))


def _violates_no_zero_divisors(alg, v, w):
    return not alg.is_zero(v) and not alg.is_zero(w) and alg.is_zero(alg.times(v, w))


def _violates_annihilator(alg, v):
    return not alg.is_zero(alg.times(v, alg.zero)) or not alg.is_zero(alg.times(alg.zero, v))


_VIOLATES = {
    "zero_sum_free": _violates_zero_sum_free,
    "no_zero_divisors": _violates_no_zero_divisors,
    "annihilator": _violates_annihilator,
}


@functools.lru_cache(maxsize=512)
def check_conditions(alg: ValueAlgebra, budget: int = DEFAULT_BUDGET,
                     seed: int = 0) -> ConditionReport:
    """Check the three conditions on all ordered pairs of a domain sample.

    ``budget`` bounds the number of ordered pairs, so at most ``isqrt(budget)``
    elements are drawn. A finite domain that fits is checked exhaustively.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    n = max(1, math.isqrt(budget))
    exhaustive = alg.finite and len(alg.elements) <= n
    elems = alg.sample(n, seed)

    zsf = nzd = None
    for v, w in itertools.product(elems, repeat=2):
        if zsf is None and _violates_zero_sum_free(alg, v, w):
            zsf = (v, w)
        if nzd is None and _violates_no_zero_divisors(alg, v, w):
            nzd = (v, w)
        if zsf is not None and nzd is not None:
            break
    # nonzero witnesses first: the self-loop construction needs v != 0
    ann = None
    ordered = [v for v in elems if not alg.is_zero(v)] + [v for v in elems if alg.is_zero(v)]
    for v in ordered:
        if _violates_annihilator(alg, v):
            ann = (v,)
            break

    def result(witness):
        return ConditionResult(HOLDS) if witness is None else ConditionResult(FAILS, witness)

    return ConditionReport(alg.name, result(zsf), result(nzd), result(ann),
                           sample_size=len(elems) ** 2, elements=len(elems),
                           exhaustive=exhaustive, seed=seed)


def annihilates(alg: ValueAlgebra) -> bool:
    return check_conditions(alg).annihilator.holds


# -- user algebras ----------------------------------------------------------

def custom_algebra(domain, plus, times, zero, one, equals=operator.eq,
                   name: str = "custom", **codec) -> ValueAlgebra:
    """Build an algebra from user operations after checking the identity laws.

    ``domain`` is a finite sequence of elements or a sampler ``rng -> value``.
    Finite domains are also checked for closure.
    """
    if callable(domain):
        alg = ValueAlgebra(name, plus, times, zero, one, sampler=domain,
                           equals=equals, **codec)
    else:
        alg = ValueAlgebra(name, plus, times, zero, one, elements=tuple(domain),
                           equals=equals, **codec)
    elems = alg.sample(64)
    for v in elems:
        if not (equals(plus(v, zero), v) and equals(plus(zero, v), v)):
            raise MalformedAlgebraError(f"{name}: {zero!r} is not a ⊕-identity at {v!r}")
        if not (equals(times(v, one), v) and equals(times(one, v), v)):
            raise MalformedAlgebraError(f"{name}: {one!r} is not a ⊗-identity at {v!r}")
    if alg.finite:
        for v, w in itertools.product(alg.elements, repeat=2):
            for op, sym in ((plus, "⊕"), (times, "⊗")):
                r = op(v, w)
                if not any(equals(r, e) for e in alg.elements):
                    raise MalformedAlgebraError(
                        f"{name}: {v!r} {sym} {w!r} = {r!r} leaves the domain")
    return alg


def table_algebra(elements: Sequence, plus_table, times_table, zero=None, one=None,
                  name: str = "table") -> ValueAlgebra:
    """Finite algebra given by Cayley tables indexed by position in ``elements``.

    ``zero`` and ``one`` default to ``elements[0]`` and ``elements[1]``.
    """
    elements = tuple(elements)
    index = {e: i for i, e in enumerate(elements)}
    zero = elements[0] if zero is None else zero
    one = elements[1] if one is None else one
    pt = tuple(tuple(row) for row in plus_table)
    tt = tuple(tuple(row) for row in times_table)
    n = len(elements)
    if any(len(t) != n or any(len(row) != n for row in t) for t in (pt, tt)):
        raise MalformedAlgebraError(f"{name}: operation tables must be {n}x{n}")

    def plus(a, b):
        return pt[index[a]][index[b]]

    def times(a, b):
        return tt[index[a]][index[b]]

    return custom_algebra(elements, plus, times, zero, one, name=name)


def integers(low: int = -9, high: int = 9) -> ValueAlgebra:
    """The ring (ℤ, +, ×), sampled from ``[low, high]``."""
    return custom_algebra(lambda rng: rng.randint(low, high), operator.add,
                          operator.mul, 0, 1, name="integers.plus.times")


def integers_mod(n: int) -> ValueAlgebra:
    return custom_algebra(range(n), lambda a, b: (a + b) % n, lambda a, b: (a * b) % n,
                          0, 1, name=f"integers.mod{n}")


# -- built-in algebras ------------------------------------------------------

BUILTIN_NAMES = (
    "plus.times", "max.times", "min.times", "max.plus", "min.plus",
    "max.min", "min.max", "union.intersect", "maxlex.minlex", "maxlen.concat",
)
NUMERIC_NAMES = BUILTIN_NAMES[:7]


def _real_equals(a, b):
    if isinstance(a, Bound) or isinstance(b, Bound):
        return a is b
    return abs(a - b) <= REAL_TOL


def _real_encode(v):
    if isinstance(v, Bound):
        return v.label
    return v


def _real_decode(v):
    if v == "+inf":
        return POS_INF
    if v == "-inf":
        return NEG_INF
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return v
    raise ValueError(f"not a real value: {v!r}")


def _real_parse(text: str):
    t = text.strip()
    if t in ("+inf", "inf", "∞"):
        return POS_INF
    if t in ("-inf", "-∞"):
        return NEG_INF
    try:
        return int(t)
    except ValueError:
        return float(t)


def _nonneg_real(rng):
    r = rng.random()
    if r < 0.45:
        return rng.randint(1, 9)
    return round(rng.uniform(0.25, 9.0), 3)


def _real(rng):
    r = rng.random()
    if r < 0.45:
        return rng.randint(-9, 9)
    return round(rng.uniform(-9.0, 9.0), 3)


def _nonneg_or_zero(rng):
    return 0 if rng.random() < 0.05 else _nonneg_real(rng)


def _max(a, b):
    return b if a < b else a


def _min(a, b):
    return b if b < a else a


def _times_absorbing(bound):
    def times(a, b):
        if a is bound or b is bound:
            return bound
        return a * b
    return times


def _plus_absorbing(bound):
    def add(a, b):
        if a is bound or b is bound:
            return bound
        return a + b
    return add


def _real_algebra(name, plus, times, zero, one, sampler):
    return ValueAlgebra(name, plus, times, zero, one, sampler=sampler,
                        equals=_real_equals, encode=_real_encode,
                        decode=_real_decode, parse=_real_parse, marker=1)


def _set_sort(s):
    try:
        return sorted(s)
    except TypeError:
        return sorted(s, key=repr)


def _union_intersect(universe: frozenset) -> ValueAlgebra:
    members = _set_sort(universe)

    def parse(text):
        t = text.strip()
        if t in ("", "{}", "∅"):
            return frozenset()
        if t.startswith("["):
            return frozenset(json.loads(t))
        return frozenset(x.strip() for x in t.split(","))

    codec = dict(encode=lambda s: _set_sort(s), decode=frozenset, parse=parse)
    if len(members) <= 6:
        subsets = [frozenset(c) for r in range(len(members) + 1)
                   for c in itertools.combinations(members, r)]
        return ValueAlgebra("union.intersect", operator.or_, operator.and_,
                            frozenset(), universe, elements=tuple(subsets), **codec)

    def sampler(rng):
        return frozenset(m for m in members if rng.random() < 0.3)

    return ValueAlgebra("union.intersect", operator.or_, operator.and_,
                        frozenset(), universe, sampler=sampler, **codec)


def _random_string(rng):
    return "".join(rng.choice("abc") for _ in range(rng.randint(0, 3)))


def _string_encode(v):
    if v is BOTTOM:
        return None
    if v is TOP:
        return "+inf"
    return v


def _string_decode(v):
    if v is None:
        return BOTTOM
    if v == "+inf":
        return TOP
    return v


def _string_parse(text):
    if text in ("⊥", "null"):
        return BOTTOM
    if text in ("⊤", "+inf"):
        return TOP
    return text


def _longer(a, b):
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return b if (len(a), a) < (len(b), b) else a


def _concat(a, b):
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return a + b


@functools.lru_cache(maxsize=None)
def _make_builtin(name: str, universe: frozenset | None) -> ValueAlgebra:
    if name == "plus.times":
        return _real_algebra(name, operator.add, operator.mul, 0, 1, _nonneg_real)
    if name == "max.times":
        return _real_algebra(name, _max, operator.mul, 0, 1, _nonneg_real)
    if name == "min.times":
        return _real_algebra(name, _min, _times_absorbing(POS_INF), POS_INF, 1, _nonneg_or_zero)
    if name == "max.plus":
        return _real_algebra(name, _max, _plus_absorbing(NEG_INF), NEG_INF, 0, _real)
    if name == "min.plus":
        return _real_algebra(name, _min, _plus_absorbing(POS_INF), POS_INF, 0, _real)
    if name == "max.min":
        return _real_algebra(name, _max, _min, NEG_INF, POS_INF, _real)
    if name == "min.max":
        return _real_algebra(name, _min, _max, POS_INF, NEG_INF, _real)
    if name == "union.intersect":
        return _union_intersect(universe)
    codec = dict(encode=_string_encode, decode=_string_decode, parse=_string_parse)
    if name == "maxlex.minlex":
        return ValueAlgebra(name, _max, _min, BOTTOM, TOP, sampler=_random_string, **codec)
    if name == "maxlen.concat":
        return ValueAlgebra(name, _longer, _concat, BOTTOM, "", sampler=_random_string, **codec)
    raise UnknownAlgebraError(name)


def builtin_algebra(name: str, universe=None) -> ValueAlgebra:
    """Look up a built-in algebra by its ``plus.times``-style name.

    ``universe`` only matters for ``union.intersect``, whose multiplicative
    identity is the whole universe; it defaults to ``{1, 2}``.
    Repeated calls return the same object.
    """
    if name not in BUILTIN_NAMES:
        raise UnknownAlgebraError(
            f"unknown algebra {name!r}; expected one of {', '.join(BUILTIN_NAMES)}")
    if name == "union.intersect":
        universe = DEFAULT_UNIVERSE if universe is None else frozenset(universe)
    else:
        universe = None
    return _make_builtin(name, universe)
