"""Words and reduced normal forms in an amalgamated free product G1 *_A G2.

The engine is generic over an ``AmalgamStructure``, which supplies membership
predicates for the base subgroup A and for the two factors, plus a canonical
right-coset transversal per factor: every factor element splits as
g = a * s with a in A and s the canonical representative of the coset A*g
(s is None exactly when g itself lies in A).  Element arithmetic is
delegated to Mat2.

A ``NormalForm`` is head * s_1 * ... * s_n with head in A, every s_j a
nontrivial canonical representative, and consecutive s_j from different
factors.  Such expressions are unique, so structural equality of normal
forms decides equality in the group; evaluation back to a matrix is kept
around as an independent oracle, never as the definition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .gl2 import Mat2

__all__ = ["Letter", "NormalForm", "AmalgamStructure"]


@dataclass(frozen=True)
class Letter:
    """A word letter: a matrix together with the factor (1 or 2) it came from."""

    factor: int
    mat: Mat2


@dataclass(frozen=True)
class NormalForm:
    head: Mat2
    tail: tuple[Letter, ...]

    @property
    def length(self) -> int:
        """Reduced word length; 0 exactly when the element lies in A."""
        return len(self.tail)

    @property
    def tags(self) -> tuple[int, ...]:
        return tuple(letter.factor for letter in self.tail)


class AmalgamStructure:
    """Configuration of one amalgam; subclasses fill in the four hooks below."""

    def identity(self) -> Mat2:
        raise NotImplementedError

    def in_base(self, m: Mat2) -> bool:
        raise NotImplementedError

    def in_factor(self, factor: int, m: Mat2) -> bool:
        raise NotImplementedError

    def transversal(self, factor: int, m: Mat2) -> tuple[Mat2, Mat2 | None]:
        """Split a factor element as (a, s) with m = a * s; s None iff m in A."""
        raise NotImplementedError

    # -- engine ---------------------------------------------------------

    def decompose(self, factor: int, m: Mat2) -> tuple[Mat2, Mat2 | None]:
        """Transversal split with the exactness re-check.

        The check a * s == m (and a in A, s not in A) is the single trust
        anchor of the rewriting engine, so it runs on every decomposition."""
        a, s = self.transversal(factor, m)
        if s is None:
            if not self.in_base(m):
                raise RuntimeError(
                    "transversal returned no representative for an element "
                    "outside the base subgroup"
                )
            return m, None
        if a * s != m or not self.in_base(a) or self.in_base(s):
            raise RuntimeError("transversal decomposition failed the exactness check")
        return a, s

    def identity_nf(self) -> NormalForm:
        return NormalForm(self.identity(), ())

    def normalize(self, word: Iterable[Letter]) -> NormalForm:
        """Rewrite an arbitrary word into its unique reduced alternating form.

        Letters are folded in from the right, so base-subgroup parts
        accumulate leftward into the head.  To prepend a letter g (factor f)
        onto an already normal suffix a * s_1 ... s_n:

          * g absorbs the head: h = g * a, still inside factor f;
          * if s_1 also lies in factor f it is absorbed as well (after which
            the next tail letter is from the other factor, by alternation);
          * h splits through the factor-f transversal as h = a' * s'; when h
            lies in A the tail is untouched and h becomes the head, otherwise
            s' becomes the new first tail letter and a' the head.

        One transversal decomposition per input letter, so the rewrite is
        linear in word length."""
        nf = self.identity_nf()
        for letter in reversed(list(word)):
            if letter.factor not in (1, 2):
                raise ValueError(f"factor tag must be 1 or 2, got {letter.factor!r}")
            if not self.in_factor(letter.factor, letter.mat):
                raise ValueError(
                    f"letter {letter.mat} fails membership in factor {letter.factor}"
                )
            nf = self._prepend(letter.factor, letter.mat, nf)
        self._check_normal_form(nf)
        return nf

    def _prepend(self, factor: int, g: Mat2, nf: NormalForm) -> NormalForm:
        h = g * nf.head
        tail = nf.tail
        if tail and tail[0].factor == factor:
            h = h * tail[0].mat
            tail = tail[1:]
        a, s = self.decompose(factor, h)
        if s is None:
            return NormalForm(a, tail)
        return NormalForm(a, (Letter(factor, s),) + tail)

    def nf_evaluate(self, nf: NormalForm) -> Mat2:
        """Multiply the normal form back out to the group element."""
        m = nf.head
        for letter in nf.tail:
            m = m * letter.mat
        return m

    def word_of(self, nf: NormalForm) -> tuple[Letter, ...]:
        """The normal form as a plain word (head tagged into factor 1)."""
        head = () if nf.head.is_identity else (Letter(1, nf.head),)
        return head + nf.tail

    def nf_multiply(self, x: NormalForm, y: NormalForm) -> NormalForm:
        if x.head.mod != y.head.mod or x.head.mod != self.identity().mod:
            raise ValueError("normal forms come from different structures")
        return self.normalize(self.word_of(x) + self.word_of(y))

    def nf_invert(self, x: NormalForm) -> NormalForm:
        inv_word = tuple(
            Letter(letter.factor, letter.mat.inv()) for letter in reversed(x.tail)
        ) + (Letter(1, x.head.inv()),)
        return self.normalize(inv_word)

    def _check_normal_form(self, nf: NormalForm) -> None:
        if not self.in_base(nf.head):
            raise RuntimeError("normal form head left the base subgroup (engine bug)")
        prev = None
        for letter in nf.tail:
            if self.in_base(letter.mat):
                raise RuntimeError("normal form tail letter lies in A (engine bug)")
            if not self.in_factor(letter.factor, letter.mat):
                raise RuntimeError("normal form tail letter fails its factor (engine bug)")
            if prev is not None and prev == letter.factor:
                raise RuntimeError("normal form tags fail to alternate (engine bug)")
            prev = letter.factor
