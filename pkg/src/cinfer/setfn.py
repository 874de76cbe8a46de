"""Set-function calculus: difference expressions, the Ingleton expression
and its four-term rewritings, polymatroid/matroid/tightness predicates, and
the CI structure induced by a rank function.

A set function assigns a value to every subset of a basic set.  Values are
either exact (int / Fraction, used for rank functions) or floats (used for
entropy functions); every operation is generic over both.  The central
quantity is the difference expression

    delta(h, X, Y, Z) = h(XZ) + h(YZ) - h(XYZ) - h(Z)

which for entropy functions is the conditional mutual information, and the
ten-term Ingleton expression ``ingleton(h, X, Y, Z, U)`` whose sign is the
subject of the conditional inequality checkers in :mod:`cinfer.inequalities`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Mapping

from .sets import BasicSet, bit_indices, pairwise_disjoint, popcount, submasks
from .structures import CIStructure, canonical_triplets

Value = Fraction | int | float


def _is_exact(v: Value) -> bool:
    return isinstance(v, Rational)


@dataclass(frozen=True)
class SetFunction:
    """Real-valued function on all subsets of a basic set.

    ``values[m]`` is the value at the subset with mask ``m``; the tuple has
    one entry per subset, the empty set included.
    """

    base: BasicSet
    values: tuple[Value, ...]

    def __post_init__(self):
        if len(self.values) != 1 << self.base.size:
            raise ValueError(
                f"need {1 << self.base.size} values, got {len(self.values)}"
            )

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(v) for v in self.values)

    def __call__(self, mask: int) -> Value:
        self.base.check_mask(mask)
        return self.values[mask]

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_callable(base: BasicSet, fn: Callable[[int], Value]) -> "SetFunction":
        return SetFunction(base, tuple(fn(m) for m in base.subsets()))

    @staticmethod
    def from_mapping(base: BasicSet, values: Mapping[int, Value]) -> "SetFunction":
        return SetFunction(base, tuple(values[m] for m in base.subsets()))

    @staticmethod
    def zero(base: BasicSet) -> "SetFunction":
        return SetFunction(base, (Fraction(0),) * (1 << base.size))

    # -- arithmetic (pointwise) ------------------------------------------------

    def __add__(self, other: "SetFunction") -> "SetFunction":
        if self.base != other.base:
            raise ValueError("set functions over different basic sets")
        return SetFunction(
            self.base, tuple(a + b for a, b in zip(self.values, other.values))
        )

    def __sub__(self, other: "SetFunction") -> "SetFunction":
        if self.base != other.base:
            raise ValueError("set functions over different basic sets")
        return SetFunction(
            self.base, tuple(a - b for a, b in zip(self.values, other.values))
        )

    def __mul__(self, c: Value) -> "SetFunction":
        return SetFunction(self.base, tuple(c * v for v in self.values))

    __rmul__ = __mul__

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        vals = {}
        for m in self.base.subsets():
            v = self.values[m]
            vals[self.base.label_string(m)] = (
                str(Fraction(v)) if _is_exact(v) else repr(float(v))
            )
        return {"base": list(self.base.names), "values": vals}

    @staticmethod
    def from_json_dict(data: dict) -> "SetFunction":
        base = BasicSet(data["base"])
        raw = data["values"]
        values: dict[int, Value] = {}
        for key, s in raw.items():
            m = base.parse_label_string(key)
            if m in values:
                raise ValueError(f"duplicate subset key {key!r}")
            values[m] = _parse_value(s)
        missing = [m for m in base.subsets() if m not in values]
        if missing:
            raise ValueError(f"missing value for subset mask {missing[0]:#x}")
        return SetFunction.from_mapping(base, values)

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @staticmethod
    def loads(text: str) -> "SetFunction":
        return SetFunction.from_json_dict(json.loads(text))


def _parse_value(s: str | int | float) -> Value:
    if isinstance(s, (int, float)):
        return s
    s = s.strip()
    try:
        return Fraction(s) if ("/" in s or "." not in s and "e" not in s.lower()) else float(s)
    except ValueError:
        raise ValueError(f"cannot parse set-function value {s!r}") from None


def upper_indicator(base: BasicSet, i: int) -> SetFunction:
    """Indicator of supersets of variable position i: 1 on S containing i."""
    if not 0 <= i < base.size:
        raise ValueError(f"variable position {i} out of range")
    return SetFunction.from_callable(
        base, lambda m: Fraction(1) if m >> i & 1 else Fraction(0)
    )


def cardinality_function(base: BasicSet) -> SetFunction:
    """The modular function S -> |S|."""
    return SetFunction.from_callable(base, lambda m: Fraction(popcount(m)))


# ---------------------------------------------------------------------------
# Difference and Ingleton expressions
# ---------------------------------------------------------------------------


def delta(h: SetFunction, X: int, Y: int, Z: int) -> Value:
    """Difference expression h(XZ) + h(YZ) - h(XYZ) - h(Z).

    Defined for arbitrary (not necessarily disjoint) subsets.
    """
    for m in (X, Y, Z):
        h.base.check_mask(m)
    v = h.values
    return v[X | Z] + v[Y | Z] - v[X | Y | Z] - v[Z]


def ingleton(h: SetFunction, X: int, Y: int, Z: int, U: int) -> Value:
    """Ten-term Ingleton expression for pairwise disjoint X, Y, Z, U.

    Invariant under the swaps X <-> Y and Z <-> U; entropy functions may
    take negative values here, rank functions of linearly representable
    matroids may not.
    """
    for m in (X, Y, Z, U):
        h.base.check_mask(m)
    if not pairwise_disjoint(X, Y, Z, U):
        raise ValueError("Ingleton expression requires pairwise disjoint sets")
    v = h.values
    return (
        -v[X | Y]
        + v[X | Z]
        + v[X | U]
        + v[Y | Z]
        + v[Y | U]
        + v[Z | U]
        - v[Z]
        - v[U]
        - v[X | Z | U]
        - v[Y | Z | U]
    )


# The five four-term rewritings of the Ingleton expression.  Each term is a
# (sign, (first, second, conditioning)) pattern over the placeholders
# X, Y, Z, U; a multi-letter component means the union of those sets.  In
# every form the single negative term is the one a conditional derivation
# forces to vanish.
MASK_TERMS: dict[int, tuple[tuple[int, tuple[str, str, str]], ...]] = {
    1: ((+1, ("Z", "U", "X")), (+1, ("Z", "U", "Y")), (+1, ("X", "Y", "")), (-1, ("Z", "U", ""))),
    2: ((+1, ("Z", "U", "Y")), (+1, ("X", "Z", "U")), (+1, ("X", "Y", "")), (-1, ("X", "Z", ""))),
    3: ((+1, ("X", "Y", "Z")), (+1, ("X", "Z", "U")), (+1, ("Z", "U", "Y")), (-1, ("X", "Z", "Y"))),
    4: ((+1, ("X", "Y", "Z")), (+1, ("X", "Y", "U")), (+1, ("Z", "U", "XY")), (-1, ("X", "Y", "ZU"))),
    5: ((+1, ("X", "Y", "Z")), (+1, ("X", "Z", "U")), (+1, ("Z", "U", "XY")), (-1, ("X", "Z", "YU"))),
}


def substitute_pattern(
    pattern: tuple[str, str, str], X: int, Y: int, Z: int, U: int
) -> tuple[int, int, int]:
    """Replace placeholder letters by masks, uniting multi-letter components."""
    assignment = {"X": X, "Y": Y, "Z": Z, "U": U}

    def part(letters: str) -> int:
        m = 0
        for ch in letters:
            m |= assignment[ch]
        return m

    return part(pattern[0]), part(pattern[1]), part(pattern[2])


def mask_form(h: SetFunction, k: int, X: int, Y: int, Z: int, U: int) -> Value:
    """Evaluate rewriting k (1..5) of the Ingleton expression as a signed
    sum of four difference expressions.  Agrees with :func:`ingleton` on
    every set function."""
    if k not in MASK_TERMS:
        raise ValueError(f"mask form index must be 1..5, got {k}")
    if not pairwise_disjoint(X, Y, Z, U):
        raise ValueError("mask forms require pairwise disjoint sets")
    total: Value = 0
    for sign, pattern in MASK_TERMS[k]:
        a, b, c = substitute_pattern(pattern, X, Y, Z, U)
        total = total + sign * delta(h, a, b, c)
    return total


# ---------------------------------------------------------------------------
# Polymatroid predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckWitness:
    """Outcome of a polymatroid check; on failure carries the first
    violating triplet of masks and the (negative) offending value."""

    ok: bool
    violating_triplet: tuple[int, int, int] | None = None
    value: Value = 0


def _default_tol(h: SetFunction, tol: float | None) -> Value:
    if tol is not None:
        if tol < 0:
            raise ValueError("tolerance must be non-negative")
        return tol
    return 0 if h.is_exact else 1e-9


def is_polymatroid(
    h: SetFunction, tol: float | None = None, full: bool = False
) -> CheckWitness:
    """Check h(empty) = 0 and non-negativity of all difference expressions.

    Only the elementary inequalities delta(i, j | K) >= 0 plus the n
    one-variable inequalities delta(i, i | N-i) >= 0 are evaluated; these
    imply the rest because a general difference expression decomposes into
    a sum of elementary ones.  ``full=True`` additionally cross-checks
    monotonicity and submodularity over all pairs of subsets.
    """
    eps = _default_tol(h, tol)
    base = h.base
    n = base.size
    if abs(h.values[0]) > eps:
        return CheckWitness(False, (0, 0, 0), -abs(h.values[0]))
    full_mask = base.full_mask
    for i in range(n):
        si = 1 << i
        rest = full_mask & ~si
        d = h.values[full_mask] - h.values[rest]
        if d < -eps:
            return CheckWitness(False, (si, si, rest), d)
        for j in range(i + 1, n):
            sj = 1 << j
            for K in submasks(full_mask & ~si & ~sj):
                d = delta(h, si, sj, K)
                if d < -eps:
                    return CheckWitness(False, (si, sj, K), d)
    if full:
        for I in base.subsets():
            for i in range(n):
                if not I >> i & 1:
                    if h.values[I | 1 << i] - h.values[I] < -eps:
                        return CheckWitness(
                            False, (1 << i, 1 << i, I), h.values[I | 1 << i] - h.values[I]
                        )
            for J in base.subsets():
                gap = h.values[I] + h.values[J] - h.values[I | J] - h.values[I & J]
                if gap < -eps:
                    return CheckWitness(False, (I & ~J, J & ~I, I & J), gap)
    return CheckWitness(True)


def is_matroid(h: SetFunction, tol: float | None = None) -> bool:
    """Rank function of a matroid: a polymatroid, integer-valued, with
    0 <= h(I) <= |I| on every subset."""
    if not is_polymatroid(h, tol).ok:
        return False
    eps = _default_tol(h, tol)
    for m in h.base.subsets():
        v = h.values[m]
        if _is_exact(v):
            if Fraction(v).denominator != 1:
                return False
        elif abs(v - round(v)) > eps:
            return False
        if v < -eps or v > popcount(m) + eps:
            return False
    return True


def _tight_corrections(h: SetFunction) -> list[Value]:
    full_mask = h.base.full_mask
    return [
        h.values[full_mask] - h.values[full_mask & ~(1 << i)]
        for i in range(h.base.size)
    ]


def is_tight(h: SetFunction, tol: float | None = None) -> bool:
    """A polymatroid is tight when h(N) = h(N - i) for every variable i."""
    _require_polymatroid(h, tol)
    eps = _default_tol(h, tol)
    return all(abs(c) <= eps for c in _tight_corrections(h))


def tighten(h: SetFunction, tol: float | None = None) -> SetFunction:
    """Tightened version: subtract delta(i, i | N-i) times the indicator of
    supersets of i, for every i.  Idempotent; the result is a tight
    polymatroid with the same difference expressions on pairs of distinct
    variables."""
    _require_polymatroid(h, tol)
    corrections = _tight_corrections(h)
    values = list(h.values)
    for m in h.base.subsets():
        for i in bit_indices(m):
            values[m] = values[m] - corrections[i]
    return SetFunction(h.base, tuple(values))


def _require_polymatroid(h: SetFunction, tol: float | None) -> None:
    w = is_polymatroid(h, tol)
    if not w.ok:
        raise ValueError(
            f"not a polymatroid rank function (violation {w.violating_triplet}, value {w.value})"
        )


def induced_ci_structure_of_rank(
    h: SetFunction, tol: float | None = None
) -> CIStructure:
    """Canonical elementary triplets whose difference expression vanishes.

    With ``tol=0`` (exact rank functions) the test is exact; for float
    functions a triplet counts as independent when |delta| <= tol.
    The result is always a semi-graphoid.
    """
    _require_polymatroid(h, tol)
    eps = _default_tol(h, tol)
    members = set()
    for t in canonical_triplets(h.base.size):
        if abs(delta(h, 1 << t.i, 1 << t.j, t.K)) <= eps:
            members.add(t)
    return CIStructure(h.base, frozenset(members))


def rank_functions_equal_upto_scale(
    h: SetFunction, r: SetFunction, tol: float = 1e-9
) -> tuple[bool, float]:
    """Test h = c * r for a single constant c > 0 (c from the full set), and
    return (ok, c).  Requires r(N) > 0."""
    if h.base != r.base:
        raise ValueError("set functions over different basic sets")
    full = h.base.full_mask
    if not r.values[full] > 0:
        raise ValueError("scale reference requires a positive value on the full set")
    c = float(h.values[full]) / float(r.values[full])
    if c <= 0:
        return False, c
    ok = all(
        abs(float(h.values[m]) - c * float(r.values[m])) <= tol for m in h.base.subsets()
    )
    return ok, c


def ingleton_of_singletons(h: SetFunction) -> Value:
    """Ingleton expression with the four variables of a 4-element base taken
    as singletons in base order."""
    if h.base.size != 4:
        raise ValueError("singleton shorthand needs exactly 4 variables")
    return ingleton(h, 1, 2, 4, 8)
