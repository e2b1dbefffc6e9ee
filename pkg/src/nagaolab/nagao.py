"""Concrete amalgam structures and constructive decompositions.

Two instances are configured here:

* SL2(F_p[t]) = SL2(F_p) *_{B(F_p)} B(F_p[t]).  Matrices decompose into
  normal form by two independent algorithms (elementary factorization fed
  through the generic rewriter, and direct degree reduction on columns);
  ``nagao_normal_form`` runs both and insists they agree letter for letter.

* E2(Z[t]) = SL2(Z) *_{B(Z)} B(Z[t]).  Elements enter as words in the two
  factors, never as bare matrices: Z[t] is not Euclidean, so elementary
  membership of a raw integer-polynomial matrix is not decidable by the
  methods here.  That is a hard boundary of the API.

Coset conventions, fixed once: every split is g = a * s with a in the base
subgroup on the left.  For the constant SL2 factor the representative is the
completion of the unit-normalized bottom row (over F_p scaled so c = 1,
giving [[0, -1], [1, e]]; over Z sign-normalized to c > 0 with the top row
reduced mod c).  For the upper-triangular polynomial factor it is the
transvection E12(u^-1 * (f - f(0))), unipotent with zero constant term.
"""

from __future__ import annotations

from functools import lru_cache

from .amalgam import AmalgamStructure, Letter, NormalForm
from .gl2 import Gen, Mat2, e12, e21, identity, w
from .ring import Poly, is_prime

__all__ = [
    "CrossValidationError",
    "NagaoStructureFp",
    "E2ZtStructure",
    "nagao_structure",
    "e2zt_structure",
    "sl2z_factor",
    "sl2fpt_elementary_factor",
    "letters_from_gens",
    "nagao_normal_form",
    "e2zt_normal_form",
    "e2zt_word_from_gens",
    "phi_p",
]


class CrossValidationError(RuntimeError):
    """Two supposedly equivalent computations disagreed; fails loudly."""


def _require_det_one(m: Mat2) -> None:
    if m.det() != Poly.one(m.mod):
        raise ValueError(f"determinant must be 1, got {m.det()}")


class NagaoStructureFp(AmalgamStructure):
    """SL2(F_p) and B(F_p[t]) glued over B(F_p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p!r}")
        self.p = p

    def identity(self) -> Mat2:
        return identity(self.p)

    def in_base(self, m: Mat2) -> bool:
        return (
            m.mod == self.p
            and m.is_constant
            and m.is_upper_triangular
            and m.det() == Poly.one(self.p)
        )

    def in_factor(self, factor: int, m: Mat2) -> bool:
        if m.mod != self.p or m.det() != Poly.one(self.p):
            return False
        return m.is_constant if factor == 1 else m.is_upper_triangular

    def transversal(self, factor: int, m: Mat2) -> tuple[Mat2, Mat2 | None]:
        p = self.p
        if factor == 1:
            if m.c.is_zero:
                return m, None
            c0, d0 = m.c.constant_term, m.d.constant_term
            e = d0 * pow(c0, -1, p) % p
            s = Mat2.of_ints(0, -1, 1, e, p)
            return m * s.inv(), s
        u0 = m.a.constant_term
        f = m.b
        rep = pow(u0, -1, p) * (f - Poly.constant(f.constant_term, p))
        if rep.is_zero:
            return m, None
        s = e12(rep)
        return m * s.inv(), s


class E2ZtStructure(AmalgamStructure):
    """SL2(Z) and B(Z[t]) glued over B(Z)."""

    def identity(self) -> Mat2:
        return identity(None)

    def in_base(self, m: Mat2) -> bool:
        return (
            m.mod is None
            and m.is_constant
            and m.is_upper_triangular
            and m.det() == Poly.one(None)
        )

    def in_factor(self, factor: int, m: Mat2) -> bool:
        if m.mod is not None or m.det() != Poly.one(None):
            return False
        return m.is_constant if factor == 1 else m.is_upper_triangular

    def transversal(self, factor: int, m: Mat2) -> tuple[Mat2, Mat2 | None]:
        if factor == 1:
            c0, d0 = m.c.constant_term, m.d.constant_term
            if c0 == 0:
                return m, None
            # Canonical coset completion: bottom row sign-normalized to c > 0,
            # top-left entry the inverse of d mod c in [0, c).
            c1, d1 = (c0, d0) if c0 > 0 else (-c0, -d0)
            x = pow(d1, -1, c1)
            y = (x * d1 - 1) // c1
            s = Mat2.of_ints(x, y, c1, d1)
            return m * s.inv(), s
        u0 = m.a.constant_term  # +1 or -1, its own inverse
        f = m.b
        rep = u0 * (f - Poly.constant(f.constant_term, None))
        if rep.is_zero:
            return m, None
        s = e12(rep)
        return m * s.inv(), s


@lru_cache(maxsize=None)
def nagao_structure(p: int) -> NagaoStructureFp:
    return NagaoStructureFp(p)


@lru_cache(maxsize=None)
def e2zt_structure() -> E2ZtStructure:
    return E2ZtStructure()


# -- elementary factorizations ---------------------------------------


def _verify_roundtrip(gens, m: Mat2) -> None:
    # emitted words must multiply back to the input, always
    prod = identity(m.mod)
    for g in gens:
        prod = prod * g.matrix()
    if prod != m:
        raise RuntimeError("factorization failed to multiply back to its input")


def sl2z_factor(m: Mat2) -> list[Gen]:
    """Factor an SL2(Z) matrix into E12(n), E21(n), W letters.

    Euclidean algorithm on the first column: while the lower-left entry is
    nonzero, peel E12(q) with the integer quotient, then a W swap; finish
    with the upper-triangular cleanup (W W for the sign, one E12 for the
    shear).  The word multiplies back to the input exactly.
    """
    if m.mod is not None or not m.is_constant:
        raise ValueError("sl2z_factor expects a constant integer matrix")
    _require_det_one(m)
    a, b, c, d = (e.constant_term for e in m.entries())
    gens: list[Gen] = []
    while c != 0:
        if abs(a) >= abs(c):
            q, r = divmod(a, c)
            if q:
                gens.append(Gen("E12", Poly.constant(q), None))
                a, b = r, b - q * d
        gens.append(Gen("W", None, None))
        a, b, c, d = c, d, -a, -b
    if a == -1:
        gens.extend([Gen("W", None, None), Gen("W", None, None)])
        a, b, c, d = -a, -b, -c, -d
    if b:
        gens.append(Gen("E12", Poly.constant(b), None))
    _verify_roundtrip(gens, m)
    return gens


def sl2fpt_elementary_factor(m: Mat2) -> list[Gen]:
    """Factor an SL2(F_p[t]) matrix into E12(f), E21(f), D(u) letters.

    F_p[t] is Euclidean, so the Euclidean algorithm on the first column
    terminates with an upper-triangular matrix whose diagonal is a unit
    (det 1 makes gcd(a, c) a unit).  Degree comparisons pick which row
    reduces; a zero upper-left entry forces the lower-left to be a unit,
    and one shear restores a nonzero pivot.  The word multiplies back to
    the input exactly.
    """
    p = m.mod
    if p is None:
        raise ValueError("sl2fpt_elementary_factor expects coefficients mod p")
    _require_det_one(m)
    a, b, c, d = m.entries()
    gens: list[Gen] = []
    while not c.is_zero:
        if a.is_zero:
            # det = -bc = 1 here, so c is a nonzero constant
            q = Poly.constant(-pow(c.constant_term, -1, p), p)
            gens.append(Gen("E12", q, p))
            a, b = a - q * c, b - q * d
        elif c.degree < a.degree:
            q, r = divmod(a, c)
            gens.append(Gen("E12", q, p))
            a, b = r, b - q * d
        else:
            q, r = divmod(c, a)
            gens.append(Gen("E21", q, p))
            c, d = r, d - q * b
    u0 = a.constant_term
    if u0 != 1:
        gens.append(Gen("D", u0, p))
        b = pow(u0, -1, p) * b
    if not b.is_zero:
        gens.append(Gen("E12", b, p))
    _verify_roundtrip(gens, m)
    return gens


def letters_from_gens(gens, mod: int | None = None) -> list[Letter]:
    """Tag generator letters into the amalgam factors.

    E12 goes to the polynomial factor; D and W are constants in factor 1;
    E21(f) is rewritten as W^-1 E12(-f) W so that nonconstant shears stay
    expressible inside the two factors.
    """
    letters: list[Letter] = []
    w_mat = w(mod)
    for g in gens:
        if g.kind == "E12":
            letters.append(Letter(2, g.matrix()))
        elif g.kind == "E21":
            letters.extend(
                [
                    Letter(1, w_mat.inv()),
                    Letter(2, e12(-g.arg)),
                    Letter(1, w_mat),
                ]
            )
        else:
            letters.append(Letter(1, g.matrix()))
    return letters


# -- normal forms ------------------------------------------------------


def _nf_by_degree_reduction(struct: NagaoStructureFp, m: Mat2) -> NormalForm:
    """Normal form by direct degree reduction, peeling letters off the right.

    The bottom row (c, d) decides everything.  In a reduced product the
    degree of d exceeds the degree of c exactly when the last letter is a
    transvection from the polynomial factor, in which case the quotient of
    d by c, minus its constant term, is the unique canonical shear to peel.
    Otherwise the last letter is a constant [[0, -1], [1, e]], with e the
    ratio of leading coefficients when degrees tie and 0 when d is smaller.
    Peeling terminates in a factor element, which the transversal splits
    into head and at most one more letter.
    """
    p = struct.p
    rev: list[Letter] = []
    cur = m
    while True:
        if cur.c.is_zero:
            head, s = struct.decompose(2, cur)
            first = [Letter(2, s)] if s is not None else []
            break
        if cur.is_constant:
            head, s = struct.decompose(1, cur)
            first = [Letter(1, s)] if s is not None else []
            break
        c, d = cur.c, cur.d
        if not d.is_zero and d.degree > c.degree:
            q, _ = divmod(d, c)
            f = q - Poly.constant(q.constant_term, p)
            rev.append(Letter(2, e12(f)))
            cur = cur * e12(-f)
        else:
            if not d.is_zero and d.degree == c.degree:
                e = d.leading_coeff * pow(c.leading_coeff, -1, p) % p
            else:
                e = 0
            s = Mat2.of_ints(0, -1, 1, e, p)
            rev.append(Letter(1, s))
            cur = cur * s.inv()
    nf = NormalForm(head, tuple(first) + tuple(reversed(rev)))
    struct._check_normal_form(nf)
    return nf


def nagao_normal_form(p: int, m: Mat2) -> NormalForm:
    """Normal form of an SL2(F_p[t]) matrix, computed two independent ways.

    Route one factors the matrix into elementary letters and runs the
    generic rewriter; route two is the direct degree reduction.  The two
    must agree letter for letter; a mismatch means an implementation bug
    and raises CrossValidationError.
    """
    struct = nagao_structure(p)
    if m.mod != p:
        raise ValueError(f"matrix is not over coefficients mod {p}")
    _require_det_one(m)
    gens = sl2fpt_elementary_factor(m)
    by_rewriter = struct.normalize(letters_from_gens(gens, p))
    by_degrees = _nf_by_degree_reduction(struct, m)
    if by_rewriter != by_degrees:
        raise CrossValidationError(
            "normal form algorithms disagree (implementation bug): "
            f"{by_rewriter} vs {by_degrees}"
        )
    return by_rewriter


def e2zt_normal_form(word) -> NormalForm:
    """Normal form of a word in SL2(Z) and B(Z[t]) letters."""
    return e2zt_structure().normalize(word)


def e2zt_word_from_gens(gens) -> list[Letter]:
    """Tag integer generator letters into the two factors of E2(Z[t])."""
    return letters_from_gens(gens, None)


def phi_p(word, p: int):
    """Reduce a word over E2(Z[t]) mod p; returns (matrix, normal form).

    Computed two ways that must agree: letterwise reduction followed by the
    rewriter, and reduction of the evaluated matrix followed by the matrix
    decomposition.  Agreement is exactly the statement that reduction mod p
    is a homomorphism compatible with both amalgam decompositions.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")
    struct_z = e2zt_structure()
    word = list(word)
    for letter in word:
        if not struct_z.in_factor(letter.factor, letter.mat):
            raise ValueError(
                f"letter {letter.mat} fails membership in factor {letter.factor}"
            )
    mat = struct_z.identity()
    for letter in word:
        mat = mat * letter.mat
    mat_p = mat.reduce_mod_p(p)
    via_matrix = nagao_normal_form(p, mat_p)
    reduced_word = [Letter(l.factor, l.mat.reduce_mod_p(p)) for l in word]
    via_word = nagao_structure(p).normalize(reduced_word)
    if via_matrix != via_word:
        raise CrossValidationError(
            "reduction mod p along words and along matrices disagree"
        )
    return mat_p, via_matrix
