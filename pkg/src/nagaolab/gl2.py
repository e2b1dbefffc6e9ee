"""2x2 matrices over Z[t] and F_p[t].

Covers what the group algorithms need: products, determinants, the closed
form inverse for determinant 1, upper-triangularity, entrywise reduction
mod p, and unipotence.  Standard generators (transvections, diagonal units,
the order-4 rotation W) come both as plain matrices and as ``Gen`` records
that remember how they were built, which is what factorization words and
the CLI shorthand use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ring import Poly, PolyParseError

__all__ = [
    "Mat2",
    "Gen",
    "identity",
    "e12",
    "e21",
    "diag",
    "w",
    "parse_gen",
    "parse_matrix",
    "mat_from_json",
]


@dataclass(frozen=True)
class Mat2:
    """Row-major 2x2 matrix [[a, b], [c, d]] with a shared coefficient ring."""

    a: Poly
    b: Poly
    c: Poly
    d: Poly

    def __post_init__(self):
        mods = {e.mod for e in (self.a, self.b, self.c, self.d)}
        if len(mods) != 1:
            raise ValueError("matrix entries use mismatched coefficient rings")

    @property
    def mod(self) -> int | None:
        return self.a.mod

    @classmethod
    def of_ints(cls, a: int, b: int, c: int, d: int, mod: int | None = None) -> "Mat2":
        return cls(
            Poly((a,), mod), Poly((b,), mod), Poly((c,), mod), Poly((d,), mod)
        )

    def entries(self) -> tuple[Poly, Poly, Poly, Poly]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        if other.mod != self.mod:
            raise ValueError("modulus mismatch between matrix factors")
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __sub__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def det(self) -> Poly:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Poly:
        return self.a + self.d

    def inv(self) -> "Mat2":
        """Inverse under the det == 1 contract: [[d, -b], [-c, a]].

        No general GL2 inverse is offered; that would drag in fractions."""
        if self.det() != Poly.one(self.mod):
            raise ValueError("inverse is defined only for determinant 1")
        return Mat2(self.d, -self.b, -self.c, self.a)

    @property
    def is_identity(self) -> bool:
        return self == identity(self.mod)

    @property
    def is_upper_triangular(self) -> bool:
        return self.c.is_zero

    @property
    def is_constant(self) -> bool:
        return all(e.is_constant for e in self.entries())

    def reduce_mod_p(self, p: int) -> "Mat2":
        """Entrywise reduction mod p; a group homomorphism on SL2(Z[t])."""
        if self.mod is not None:
            raise ValueError("reduce_mod_p expects integer coefficients")
        return Mat2(*(e.reduce_mod_p(p) for e in self.entries()))

    def is_unipotent(self) -> bool:
        """True iff the matrix is unipotent; requires det == 1.

        Evaluates both criteria, trace == 2 and (m - I)^2 == 0, and insists
        they agree (over a domain they must; a disagreement is a bug and
        raises rather than guessing)."""
        if self.det() != Poly.one(self.mod):
            raise ValueError("unipotence test requires determinant 1")
        by_trace = self.trace() == Poly.constant(2, self.mod)
        n = self - identity(self.mod)
        sq = n * n
        by_square = all(e.is_zero for e in sq.entries())
        if by_trace != by_square:
            raise RuntimeError("unipotence criteria disagree (arithmetic bug)")
        return by_trace

    def is_unipotent_up_to_sign(self) -> bool:
        """True iff the matrix or its negative is unipotent (trace +-2).

        The strict trace == 2 predicate is the one the library relies on;
        this variant only accounts for the central twist by -I."""
        return self.is_unipotent() or (-self).is_unipotent()

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"

    def to_json(self):
        return [
            [self.a.to_json(), self.b.to_json()],
            [self.c.to_json(), self.d.to_json()],
        ]


def identity(mod: int | None = None) -> Mat2:
    return Mat2.of_ints(1, 0, 0, 1, mod)


def _as_poly(f, mod: int | None) -> Poly:
    return f if isinstance(f, Poly) else Poly((f,), mod)


def e12(f, mod: int | None = None) -> Mat2:
    """Upper transvection [[1, f], [0, 1]]."""
    f = _as_poly(f, mod)
    one, zero = Poly.one(f.mod), Poly.zero(f.mod)
    return Mat2(one, f, zero, one)


def e21(f, mod: int | None = None) -> Mat2:
    """Lower transvection [[1, 0], [f, 1]]."""
    f = _as_poly(f, mod)
    one, zero = Poly.one(f.mod), Poly.zero(f.mod)
    return Mat2(one, zero, f, one)


def _unit_inverse(u: int, mod: int | None) -> int:
    if mod is None:
        if u not in (1, -1):
            raise ValueError(f"{u!r} is not a unit of Z")
        return u
    u %= mod
    if u == 0:
        raise ValueError(f"{u!r} is not a unit mod {mod}")
    return pow(u, -1, mod)


def diag(u: int, mod: int | None = None) -> Mat2:
    """Diagonal [[u, 0], [0, u^-1]] for a unit u of the coefficient ring."""
    return Mat2.of_ints(u, 0, 0, _unit_inverse(u, mod), mod)


def w(mod: int | None = None) -> Mat2:
    """The rotation [[0, -1], [1, 0]]; W^2 = -I."""
    return Mat2.of_ints(0, -1, 1, 0, mod)


@dataclass(frozen=True)
class Gen:
    """A generator letter: E12(f), E21(f), D(u) or W, over a fixed ring.

    All four have determinant 1 by construction."""

    kind: str
    arg: Poly | int | None
    mod: int | None

    def __post_init__(self):
        if self.kind in ("E12", "E21"):
            if not isinstance(self.arg, Poly) or self.arg.mod != self.mod:
                raise ValueError(f"{self.kind} needs a Poly over the same ring")
        elif self.kind == "D":
            _unit_inverse(self.arg, self.mod)
        elif self.kind == "W":
            if self.arg is not None:
                raise ValueError("W takes no argument")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def matrix(self) -> Mat2:
        if self.kind == "E12":
            return e12(self.arg)
        if self.kind == "E21":
            return e21(self.arg)
        if self.kind == "D":
            return diag(self.arg, self.mod)
        return w(self.mod)

    def __str__(self):
        if self.kind == "W":
            return "W"
        if self.kind == "D":
            return f"D({self.arg})"
        return f"{self.kind}({self.arg})"


_GEN_RE = re.compile(r"^\s*(E12|E21|D|W)\s*(?:\(\s*(.*?)\s*\))?\s*$")
_MAT_RE = re.compile(
    r"^\s*\[\s*\[([^][,]+),([^][,]+)\]\s*,\s*\[([^][,]+),([^][,]+)\]\s*\]\s*$"
)


def parse_gen(text: str, mod: int | None = None) -> Gen:
    """Parse generator shorthand: E12(<poly>), E21(<poly>), D(<int>), W."""
    m = _GEN_RE.match(text)
    if not m:
        raise PolyParseError(f"not a generator shorthand: {text!r}", 0)
    kind, arg = m.group(1), m.group(2)
    if kind == "W":
        if arg:
            raise PolyParseError("W takes no argument", text.index("("))
        return Gen("W", None, mod)
    if arg is None:
        raise PolyParseError(f"{kind} needs an argument", len(text))
    if kind == "D":
        return Gen("D", int(arg), mod)
    return Gen(kind, Poly.parse(arg, mod), mod)


def parse_matrix(text: str, mod: int | None = None) -> Mat2:
    """Parse ``[[p11, p12], [p21, p22]]`` or a generator shorthand."""
    if _GEN_RE.match(text):
        return parse_gen(text, mod).matrix()
    m = _MAT_RE.match(text)
    if not m:
        raise PolyParseError("not a 2x2 matrix literal", 0)
    a, b, c, d = (Poly.parse(g, mod) for g in m.groups())
    return Mat2(a, b, c, d)


def mat_from_json(obj, mod: int | None = None) -> Mat2:
    """Build a matrix from a 2x2 nested array of polynomial JSON objects."""
    if not (isinstance(obj, list) and len(obj) == 2 and all(len(r) == 2 for r in obj)):
        raise ValueError("matrix JSON must be a 2x2 nested array")
    a = Poly.from_json(obj[0][0], mod)
    b = Poly.from_json(obj[0][1], mod)
    c = Poly.from_json(obj[1][0], mod)
    d = Poly.from_json(obj[1][1], mod)
    return Mat2(a, b, c, d)
