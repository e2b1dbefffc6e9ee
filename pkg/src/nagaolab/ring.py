"""Exact arithmetic for Z[t] and F_p[t].

Coefficients are arbitrary-precision integers (``mod=None``) or residues mod
a prime (``mod=p``).  Polynomials are dense, immutable, and canonical:
coefficients ascend by exponent, trailing zeros are stripped, residues are
fully reduced.  The zero polynomial has degree ``None`` rather than -1, so
accidental arithmetic on the degree of 0 raises instead of drifting.

Division with remainder exists only over field coefficients.  Z[t] is not
Euclidean; the algorithms that need division are exactly the ones restricted
to F_p[t], and the API keeps that boundary visible.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "Poly",
    "PolyParseError",
    "SearchCapExceeded",
    "SnWitness",
    "is_prime",
    "sn_witness_search",
]


class PolyParseError(ValueError):
    """Malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SearchCapExceeded(RuntimeError):
    """A brute-force search was refused because it would exceed its cap.

    Distinct from a verified "no witness exists" answer, which is a normal
    result, not an error.
    """


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Primality by trial division; every modulus in this library is small."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_modulus(mod: int | None) -> None:
    if mod is not None and not is_prime(mod):
        raise ValueError(f"modulus must be a prime, got {mod!r}")


class Poly:
    """A dense polynomial in t over Z (``mod=None``) or F_p (``mod=p``)."""

    __slots__ = ("coeffs", "mod")

    def __init__(self, coeffs=(), mod: int | None = None):
        _check_modulus(mod)
        cs = [int(c) for c in coeffs]
        if mod is not None:
            cs = [c % mod for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)
        self.mod: int | None = mod

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, mod: int | None = None) -> "Poly":
        return cls((), mod)

    @classmethod
    def one(cls, mod: int | None = None) -> "Poly":
        return cls((1,), mod)

    @classmethod
    def constant(cls, c: int, mod: int | None = None) -> "Poly":
        return cls((c,), mod)

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, mod: int | None = None) -> "Poly":
        """coeff * t**exp."""
        if exp < 0:
            raise ValueError("negative exponent")
        return cls((0,) * exp + (coeff,), mod)

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial (a marker, not -1)."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading_coeff(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def constant_term(self) -> int:
        """The value at t = 0."""
        return self.coeffs[0] if self.coeffs else 0

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, int):
            return Poly((other,), self.mod)
        if isinstance(other, Poly):
            if other.mod != self.mod:
                raise ValueError(
                    f"modulus mismatch: {self.mod!r} vs {other.mod!r}"
                )
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        cs = [0] * n
        for i, c in enumerate(self.coeffs):
            cs[i] += c
        for i, c in enumerate(other.coeffs):
            cs[i] += c
        return Poly(cs, self.mod)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.mod)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly((), self.mod)
        cs = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci == 0:
                continue
            for j, cj in enumerate(other.coeffs):
                cs[i + j] += ci * cj
        return Poly(cs, self.mod)

    __rmul__ = __mul__

    def __divmod__(self, other):
        """Division with remainder; requires field coefficients and other != 0."""
        if not isinstance(other, (Poly, int)):
            return NotImplemented
        other = self._coerce(other)
        if self.mod is None:
            raise ValueError(
                "polynomial division requires field coefficients (mod p); "
                "Z[t] has no division algorithm"
            )
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.mod
        db = other.degree
        if self.degree is None or self.degree < db:
            return Poly((), p), self
        rem = list(self.coeffs)
        q = [0] * (self.degree - db + 1)
        inv_lead = pow(other.coeffs[-1], -1, p)
        for k in range(self.degree - db, -1, -1):
            c = rem[k + db] * inv_lead % p
            if c:
                q[k] = c
                for j, bj in enumerate(other.coeffs):
                    rem[k + j] = (rem[k + j] - c * bj) % p
        return Poly(q, p), Poly(rem[:db], p)

    def reduce_mod_p(self, p: int) -> "Poly":
        """Coefficientwise reduction Z[t] -> F_p[t]; a ring homomorphism."""
        if self.mod is not None:
            raise ValueError("reduce_mod_p expects integer coefficients")
        return Poly(self.coeffs, p)

    # -- comparison ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.mod == other.mod

    def __hash__(self):
        return hash((self.coeffs, self.mod))

    def __bool__(self):
        return bool(self.coeffs)

    # -- text and JSON ------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            neg = c < 0
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                tp = "t" if k == 1 else f"t^{k}"
                body = tp if mag == 1 else f"{mag}*{tp}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r}, mod={self.mod!r})"

    @classmethod
    def parse(cls, text: str, mod: int | None = None) -> "Poly":
        """Parse ``term (('+'|'-') term)*`` where a term is an integer, ``t``,
        ``t^k``, ``n*t`` or ``n*t^k``.  Whitespace is insignificant."""
        toks = _tokenize(text)
        pos = 0

        def peek():
            return toks[pos] if pos < len(toks) else ("end", None, len(text))

        def take(kind):
            nonlocal pos
            tk = peek()
            if tk[0] != kind:
                raise PolyParseError(f"expected {kind!r}, found {tk[0]!r}", tk[2])
            pos += 1
            return tk

        def t_power() -> int:
            # consumes optional '^' uint after a 't'
            nonlocal pos
            if peek()[0] != "^":
                return 1
            pos += 1
            tk = peek()
            if tk[0] == "-":
                raise PolyParseError("negative exponent", tk[2])
            if tk[0] != "int":
                raise PolyParseError("expected exponent", tk[2])
            pos += 1
            return tk[1]

        def term(sign: int, acc: dict):
            nonlocal pos
            tk = peek()
            if tk[0] == "int":
                pos += 1
                coeff = sign * tk[1]
                if peek()[0] == "*":
                    pos += 1
                    take("t")
                    exp = t_power()
                else:
                    exp = 0
            elif tk[0] == "t":
                pos += 1
                coeff = sign
                exp = t_power()
            else:
                raise PolyParseError("expected a term", tk[2])
            acc[exp] = acc.get(exp, 0) + coeff

        acc: dict[int, int] = {}
        sign = 1
        tk = peek()
        if tk[0] in ("+", "-"):
            sign = -1 if tk[0] == "-" else 1
            pos += 1
        if peek()[0] == "end":
            raise PolyParseError("empty polynomial", peek()[2])
        term(sign, acc)
        while peek()[0] != "end":
            tk = peek()
            if tk[0] not in ("+", "-"):
                raise PolyParseError("expected '+' or '-'", tk[2])
            pos += 1
            term(-1 if tk[0] == "-" else 1, acc)
        if not acc:
            return cls((), mod)
        cs = [0] * (max(acc) + 1)
        for exp, c in acc.items():
            cs[exp] = c
        return cls(cs, mod)

    def to_json(self):
        obj = {"coeffs": [str(c) for c in self.coeffs]}
        if self.mod is not None:
            obj["mod"] = self.mod
        return obj

    @classmethod
    def from_json(cls, obj, mod: int | None = None) -> "Poly":
        if isinstance(obj, dict):
            coeffs = obj.get("coeffs", ())
            mod = obj.get("mod", mod)
        elif isinstance(obj, (int, str)):
            coeffs = (obj,)  # bare scalar as a constant
        else:
            coeffs = obj
        return cls([int(c) for c in coeffs], mod)


_TOKEN_RE = re.compile(r"(\d+)|([+\-*^t])|(\S)")


def _tokenize(text: str):
    toks = []
    for m in _TOKEN_RE.finditer(text):
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), m.start()))
        elif m.group(2) is not None:
            toks.append((m.group(2), None, m.start()))
        else:
            raise PolyParseError(f"unexpected character {m.group(3)!r}", m.start())
    return toks


# -- unit-subset-sum witnesses ----------------------------------------


@dataclass(frozen=True)
class SnWitness:
    """Outcome of a witness search: residues is None iff none exists."""

    p: int
    n: int
    residues: tuple[int, ...] | None

    @property
    def exists(self) -> bool:
        return self.residues is not None


def sn_witness_search(p: int, n: int, *, max_prime: int = 31) -> SnWitness:
    """Search for n nonzero residues mod p with every nonempty subset sum
    nonzero mod p.

    Units of the localization of Z away from p reduce to nonzero residues,
    and a subset sum is again a unit exactly when its residue is nonzero,
    so the search runs entirely over {1..p-1}.  The property is invariant
    under permutation, so candidates are enumerated as non-decreasing
    tuples; reachable subset sums are tracked as a bitmask over Z/p and a
    branch dies the moment sum 0 becomes reachable.  The enumeration is
    exhaustive: ``residues=None`` is a verified "none exists".

    Refuses (SearchCapExceeded) when p > max_prime or n > p, rather than
    running an unbounded search.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")
    if n < 1:
        raise ValueError(f"arity must be >= 1, got {n!r}")
    if p > max_prime or n > p:
        raise SearchCapExceeded(
            f"search cap exceeded: p={p}, n={n} (caps: p <= {max_prime}, n <= p)"
        )

    full = (1 << p) - 1

    def rotate(mask: int, a: int) -> int:
        return ((mask << a) | (mask >> (p - a))) & full

    def dfs(depth: int, start: int, sums: int):
        if depth == n:
            return ()
        for a in range(start, p):
            new = sums | rotate(sums, a) | (1 << a)
            if new & 1:
                continue
            rest = dfs(depth + 1, a, new)
            if rest is not None:
                return (a,) + rest
        return None

    found = dfs(0, 1, 0)
    if found is not None and n <= 20:
        assert _all_subset_sums_nonzero(p, found)
    return SnWitness(p, n, found)


def _all_subset_sums_nonzero(p: int, residues) -> bool:
    for r in range(1, len(residues) + 1):
        for combo in itertools.combinations(residues, r):
            if sum(combo) % p == 0:
                return False
    return True
