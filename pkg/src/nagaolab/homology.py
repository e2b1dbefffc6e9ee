"""Graded homology dimension bookkeeping at a polynomial-degree truncation.

The groups in the amalgam picture have homology described by exterior and
divided power algebras, so dimensions reduce to binomial counting once the
infinite-rank polynomial parts are truncated: a truncation degree d means
"t-powers up to t^d" (d basis vectors for the t-part t*R[t], d+1 for all of
R[t]).  Tables grow monotonically in d, and every number here is stated at
an explicit d.

For mod-p coefficients of a p-torsion abelian group A of rank n, the
homology is the exterior algebra on n degree-1 generators tensored with a
divided power algebra on n degree-2 generators.  The diagonal unit-group
action scales a basis vector by the square of the unit, so a wedge factor
carries weight 2 and a divided power of multiplicity m carries weight 2m;
coinvariants are counted by keeping the basis monomials whose total weight
vanishes mod p - 1.

Supported group identifiers:

    tzt     t*Z[t]                  free abelian, rank d
    tfpt    t*F_p[t]                p-torsion, rank d
    bz      B(Z) = Z/2 x Z
    bzt     B(Z[t]) = B(Z) x t*Z[t]
    bfp     B(F_p)                  coinvariants of rank-1 mod-p homology
    bfpt    B(F_p[t])               coinvariants of rank-(d+1) mod-p homology
    sl2z    SL2(Z), through its degree-preserving Z/12 abelianization
    e2zt    E2(Z[t])
    sl2fpt_bquot   the B-quotient summand of SL2(F_p[t]) for p in {2, 3};
                   the constant-subgroup summand is flagged, never computed
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import comb

from .ring import is_prime

__all__ = [
    "GROUP_IDS",
    "GradedDimTable",
    "LedgerReport",
    "UnsupportedGroupError",
    "WedgeClass",
    "WedgeMonomial",
    "WeightedMonomial",
    "class_order_lower_bound",
    "coinvariant_dims",
    "dim_divided_power",
    "dim_exterior",
    "dim_table",
    "h_dims",
    "mv_ledger_check",
    "phi_star_class",
    "weighted_monomials",
]

GROUP_IDS = (
    "tzt",
    "tfpt",
    "bz",
    "bzt",
    "bfp",
    "bfpt",
    "sl2z",
    "e2zt",
    "sl2fpt_bquot",
)


class UnsupportedGroupError(ValueError):
    """A (group, p) combination outside the modeled scope; never a silent 0."""


def _validate(p: int, i: int, d: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")
    if i < 0:
        raise ValueError("homological degree must be >= 0")
    if d < 0:
        raise ValueError("truncation degree must be >= 0")


def dim_exterior(n: int, i: int) -> int:
    """Dimension of the degree-i part of an exterior algebra on n generators."""
    if n < 0 or i < 0:
        raise ValueError("dimension arguments must be >= 0")
    return comb(n, i)


def dim_divided_power(n: int, i: int) -> int:
    """Dimension of the degree-i part of a divided power algebra on n
    generators sitting in degree 2: multisets of total multiplicity i/2."""
    if n < 0 or i < 0:
        raise ValueError("dimension arguments must be >= 0")
    if i % 2:
        return 0
    j = i // 2
    if n == 0:
        return 1 if j == 0 else 0
    return comb(n + j - 1, j)


def _abelian_mod_p_dim(n: int, i: int, p: int, weight_filter: bool) -> int:
    """dim H_i of a rank-n elementary abelian p-group with F_p coefficients,
    optionally keeping only monomials of weight 0 mod p - 1."""
    total = 0
    for wedge in range(min(i, n) + 1):
        rest = i - wedge
        if rest % 2:
            continue
        j = rest // 2
        if weight_filter and (2 * wedge + 2 * j) % (p - 1) != 0:
            continue
        total += dim_exterior(n, wedge) * dim_divided_power(n, 2 * j)
    return total


@dataclass(frozen=True)
class WeightedMonomial:
    """One basis monomial of the mod-p homology of a truncated coefficient
    group: a wedge subset of generator exponents and a divided power multiset
    of (exponent, multiplicity) pairs.  Degree and weight are derived from
    the parts, never stored."""

    wedge: tuple[int, ...]
    divided: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if any(x >= y for x, y in zip(self.wedge, self.wedge[1:])):
            raise ValueError("wedge exponents must strictly increase")
        seen = [g for g, _ in self.divided]
        if sorted(set(seen)) != seen:
            raise ValueError("divided part must list distinct generators in order")
        if any(m < 1 for _, m in self.divided):
            raise ValueError("divided multiplicities must be >= 1")

    @property
    def degree(self) -> int:
        return len(self.wedge) + 2 * sum(m for _, m in self.divided)

    @property
    def weight(self) -> int:
        """Exponent of the diagonal unit-group action: every generator
        scales by a square, divided powers raise it to the multiplicity."""
        return 2 * len(self.wedge) + 2 * sum(m for _, m in self.divided)


def weighted_monomials(exponents, i: int):
    """Yield every homology basis monomial of homological degree i built on
    the given generator exponents (wedge part degree 1, divided part degree
    2 per multiplicity).  This is the enumeration the closed-form counters
    summarize; the two are kept in agreement by tests."""
    exps = tuple(exponents)
    for wedge_size in range(min(i, len(exps)) + 1):
        rest = i - wedge_size
        if rest % 2:
            continue
        j = rest // 2
        for subset in itertools.combinations(exps, wedge_size):
            for multiset in itertools.combinations_with_replacement(exps, j):
                divided = tuple(sorted(Counter(multiset).items()))
                yield WeightedMonomial(subset, divided)


def _bz_dim(p: int, i: int) -> int:
    if p == 2:
        return 1 if i == 0 else 2
    return 1 if i <= 1 else 0


def _bzt_dim(p: int, i: int, d: int) -> int:
    # Kunneth for B(Z) x t*Z[t]; the free part contributes plain wedges.
    return sum(_bz_dim(p, l) * comb(d, i - l) for l in range(i + 1))


def _sl2z_dim(p: int, i: int) -> int:
    # Z/12 in every degree when p divides 12, else concentrated in degree 0.
    if i == 0:
        return 1
    return 1 if p in (2, 3) else 0


def _e2zt_dim(p: int, i: int, d: int) -> int:
    if p == 2:
        # No closed form at p = 2; the amalgam dimension identity is the
        # definition here (the sequence of the decomposition splits dims).
        return _bzt_dim(2, i, d) + _sl2z_dim(2, i) - _bz_dim(2, i)
    if i == 0:
        return 1
    if i == 1:
        return d + (1 if p == 3 else 0)
    return comb(d + 1, i) + _sl2z_dim(p, i)


def h_dims(group: str, p: int, i: int, d: int) -> int:
    """dim H_i(group, F_p) truncated at t-degree d."""
    _validate(p, i, d)
    if group == "tzt":
        return comb(d, i)
    if group == "tfpt":
        return _abelian_mod_p_dim(d, i, p, weight_filter=False)
    if group == "bz":
        return _bz_dim(p, i)
    if group == "bzt":
        return _bzt_dim(p, i, d)
    if group == "bfp":
        return _abelian_mod_p_dim(1, i, p, weight_filter=True)
    if group == "bfpt":
        return _abelian_mod_p_dim(d + 1, i, p, weight_filter=True)
    if group == "sl2z":
        return _sl2z_dim(p, i)
    if group == "e2zt":
        return _e2zt_dim(p, i, d)
    if group == "sl2fpt_bquot":
        if p not in (2, 3):
            raise UnsupportedGroupError(
                "the B-quotient summand of SL2(F_p[t]) is modeled only for "
                f"p in {{2, 3}} (the unit-group action is nontrivial for p={p}, "
                "and the full splitting is out of scope)"
            )
        return h_dims("bfpt", p, i, d) - h_dims("bfp", p, i, d)
    raise UnsupportedGroupError(
        f"unknown group id {group!r}; supported: {', '.join(GROUP_IDS)}"
    )


def coinvariant_dims(
    p: int, i: int, d: int, *, basis: str = "full", wedge_only: bool = False
) -> int:
    """Unit-group coinvariants of H_i of the truncated polynomial ring mod p.

    The action is diagonal on the monomial basis (each generator scales by
    a square), so coinvariants are counted by the fixed monomials: those of
    weight 0 mod p - 1.  ``basis`` selects t^0..t^d ("full") or t^1..t^d
    ("tpart"); ``wedge_only`` drops the divided power part and counts only
    exterior monomials.
    """
    _validate(p, i, d)
    if basis == "full":
        n = d + 1
    elif basis == "tpart":
        n = d
    else:
        raise ValueError(f"basis must be 'full' or 'tpart', got {basis!r}")
    if wedge_only:
        return dim_exterior(n, i) if (2 * i) % (p - 1) == 0 else 0
    return _abelian_mod_p_dim(n, i, p, weight_filter=True)


@dataclass(frozen=True)
class LedgerReport:
    """One row of the amalgam dimension ledger at (p, i, d)."""

    p: int
    i: int
    d: int
    e2zt: int
    bzt: int
    sl2z: int
    bz: int

    @property
    def ok(self) -> bool:
        return self.e2zt == self.bzt + self.sl2z - self.bz

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "i": self.i,
            "d": self.d,
            "e2zt": self.e2zt,
            "bzt": self.bzt,
            "sl2z": self.sl2z,
            "bz": self.bz,
            "ok": self.ok,
        }


def mv_ledger_check(p: int, i: int, d: int) -> LedgerReport:
    """Check dim H_i(E2(Z[t])) = dim H_i(B(Z[t])) + dim H_i(SL2(Z)) - dim H_i(B(Z)),
    the dimension identity forced by the amalgam decomposition."""
    if p not in (2, 3, 5, 7):
        raise ValueError(f"ledger is configured for p in {{2, 3, 5, 7}}, got {p!r}")
    _validate(p, i, d)
    return LedgerReport(
        p=p,
        i=i,
        d=d,
        e2zt=h_dims("e2zt", p, i, d),
        bzt=h_dims("bzt", p, i, d),
        sl2z=h_dims("sl2z", p, i, d),
        bz=h_dims("bz", p, i, d),
    )


# -- symbolic wedge classes --------------------------------------------


@dataclass(frozen=True, order=True)
class WedgeMonomial:
    """t^{l_1} ^ ... ^ t^{l_i} with strictly increasing exponents l_j >= 1."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(self.exponents)
        object.__setattr__(self, "exponents", exps)
        if any(e < 1 for e in exps):
            raise ValueError("wedge exponents must be >= 1")
        if any(x >= y for x, y in zip(exps, exps[1:])):
            raise ValueError("wedge exponents must strictly increase")

    @property
    def degree(self) -> int:
        return len(self.exponents)

    def __str__(self):
        if not self.exponents:
            return "1"
        return "^".join(f"t{e}" for e in self.exponents)


def _merge_exponents(x: tuple[int, ...], y: tuple[int, ...]):
    """Merge two increasing tuples; returns (merged, sign) or (None, 0) on a
    repeated exponent.  The sign is that of the sorting permutation."""
    out: list[int] = []
    i = j = 0
    inversions = 0
    while i < len(x) and j < len(y):
        if x[i] == y[j]:
            return None, 0
        if x[i] < y[j]:
            out.append(x[i])
            i += 1
        else:
            out.append(y[j])
            j += 1
            inversions += len(x) - i
    out.extend(x[i:])
    out.extend(y[j:])
    return tuple(out), (-1 if inversions % 2 else 1)


class WedgeClass:
    """Formal linear combination of wedge monomials over Z or F_p."""

    __slots__ = ("_items", "mod")

    def __init__(self, terms=(), mod: int | None = None):
        if mod is not None and not is_prime(mod):
            raise ValueError(f"modulus must be a prime, got {mod!r}")
        acc: dict[WedgeMonomial, int] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for mono, coeff in items:
            if not isinstance(mono, WedgeMonomial):
                mono = WedgeMonomial(tuple(mono))
            acc[mono] = acc.get(mono, 0) + int(coeff)
        cleaned = []
        for mono, coeff in acc.items():
            if mod is not None:
                coeff %= mod
            if coeff:
                cleaned.append((mono, coeff))
        cleaned.sort(key=lambda mc: mc[0])
        self._items: tuple[tuple[WedgeMonomial, int], ...] = tuple(cleaned)
        self.mod = mod

    @classmethod
    def basis(cls, exponents, mod: int | None = None) -> "WedgeClass":
        """The class of a single monomial with coefficient 1."""
        return cls([(WedgeMonomial(tuple(exponents)), 1)], mod)

    def items(self):
        return self._items

    @property
    def is_zero(self) -> bool:
        return not self._items

    def coeff(self, mono: WedgeMonomial) -> int:
        for m, c in self._items:
            if m == mono:
                return c
        return 0

    def _require_same_ring(self, other: "WedgeClass") -> None:
        if self.mod != other.mod:
            raise ValueError(f"modulus mismatch: {self.mod!r} vs {other.mod!r}")

    def __add__(self, other):
        if not isinstance(other, WedgeClass):
            return NotImplemented
        self._require_same_ring(other)
        return WedgeClass(self._items + other._items, self.mod)

    def __neg__(self):
        return WedgeClass([(m, -c) for m, c in self._items], self.mod)

    def __sub__(self, other):
        if not isinstance(other, WedgeClass):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, scalar):
        if not isinstance(scalar, int):
            return NotImplemented
        return WedgeClass([(m, scalar * c) for m, c in self._items], self.mod)

    def wedge(self, other: "WedgeClass") -> "WedgeClass":
        """Bilinear wedge; repeated exponents annihilate, order brings signs."""
        if not isinstance(other, WedgeClass):
            raise TypeError("wedge expects a WedgeClass")
        self._require_same_ring(other)
        terms = []
        for mx, cx in self._items:
            for my, cy in other._items:
                merged, sign = _merge_exponents(mx.exponents, my.exponents)
                if merged is None:
                    continue
                terms.append((WedgeMonomial(merged), sign * cx * cy))
        return WedgeClass(terms, self.mod)

    def reduce_mod_p(self, p: int) -> "WedgeClass":
        if self.mod is not None:
            raise ValueError("reduce_mod_p expects integer coefficients")
        return WedgeClass(self._items, p)

    def __eq__(self, other):
        if not isinstance(other, WedgeClass):
            return NotImplemented
        return self._items == other._items and self.mod == other.mod

    def __hash__(self):
        return hash((self._items, self.mod))

    def __str__(self):
        if not self._items:
            return "0"
        return " + ".join(f"{c}*{m}" for m, c in self._items)

    def to_json(self):
        obj = {
            "monomials": [list(m.exponents) for m, _ in self._items],
            "coeffs": [str(c) for _, c in self._items],
        }
        if self.mod is not None:
            obj["mod"] = self.mod
        return obj

    @classmethod
    def from_json(cls, obj) -> "WedgeClass":
        terms = [
            (WedgeMonomial(tuple(m)), int(c))
            for m, c in zip(obj["monomials"], obj["coeffs"])
        ]
        return cls(terms, obj.get("mod"))


def phi_star_class(x: WedgeClass, p: int) -> WedgeClass:
    """Image of an integral wedge class under coefficient reduction mod p:
    identity on monomial labels, coefficients reduced, zero terms dropped."""
    return x.reduce_mod_p(p)


def class_order_lower_bound(x, prime_bound: int = 7) -> int:
    """Divisibility lower bound on the order of a degree-i wedge class in the
    integral homology it maps into: always 2 * 3, times every prime
    5 <= q <= prime_bound with (q - 1)/2 dividing i.  This is only the bound
    the reduction argument yields, never a claim of the exact order."""
    i = x.degree if isinstance(x, WedgeMonomial) else int(x)
    if i < 1:
        raise ValueError("the bound applies to classes of degree >= 1")
    bound = 6
    for q in range(5, prime_bound + 1):
        if is_prime(q) and i % ((q - 1) // 2) == 0:
            bound *= q
    return bound


# -- tables -------------------------------------------------------------


@dataclass(frozen=True)
class GradedDimTable:
    """Dimensions by homological degree for one group at one (p, d)."""

    group: str
    p: int
    d: int
    dims: tuple[int, ...]
    flags: str = ""

    def rows(self):
        for i, dim in enumerate(self.dims):
            yield {
                "group": self.group,
                "p": self.p,
                "d": self.d,
                "i": i,
                "dim": dim,
                "flags": self.flags,
            }


def dim_table(group: str, p: int, max_i: int, d: int) -> GradedDimTable:
    dims = tuple(h_dims(group, p, i, d) for i in range(max_i + 1))
    flags = ""
    if group == "sl2fpt_bquot":
        flags = "plus an opaque H_i(SL2(F_p)) summand (not computed)"
    return GradedDimTable(group, p, d, dims, flags)
