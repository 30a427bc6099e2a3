"""Exact integer arithmetic in the Coxeter group of a quiver.

Elements are stored as the integer matrix of their action on the root
lattice (columns are images of simple roots) together with the inverse
matrix.  Python integers never overflow, which matters for wild quivers
where root coordinates grow exponentially.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import GeneratorIndexError, ResourceError
from .quiver import Quiver

Root = tuple[int, ...]
Word = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

DEFAULT_BALL_BUDGET = 200_000


def is_positive(beta: Sequence[int]) -> bool:
    return all(x >= 0 for x in beta) and any(x > 0 for x in beta)


def is_negative(beta: Sequence[int]) -> bool:
    return all(x <= 0 for x in beta) and any(x < 0 for x in beta)


def negate(beta: Sequence[int]) -> Root:
    return tuple(-x for x in beta)


def simple_root(n: int, i: int) -> Root:
    return tuple(1 if k == i - 1 else 0 for k in range(n))


def format_root(beta: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in beta) + ")"


def parse_root(text: str) -> Root:
    body = text.strip().strip("()")
    return tuple(int(x) for x in body.replace(" ", "").split(",") if x)


def format_word(word: Iterable[int]) -> str:
    return " ".join(str(i) for i in word)


def parse_word(text: str) -> Word:
    return tuple(int(x) for x in text.replace(",", " ").split())


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


@dataclass(frozen=True)
class GroupElement:
    """Element of W as a pair of mutually inverse integer matrices.

    Equality and hashing use ``mat`` only.
    """

    mat: Matrix
    inv: Matrix = field(compare=False, repr=False)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(_matmul(self.mat, other.mat), _matmul(other.inv, self.inv))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.inv, self.mat)

    def __call__(self, beta: Sequence[int]) -> Root:
        return tuple(sum(x * y for x, y in zip(row, beta)) for row in self.mat)

    def apply_inverse(self, beta: Sequence[int]) -> Root:
        return tuple(sum(x * y for x, y in zip(row, beta)) for row in self.inv)

    def column(self, i: int) -> Root:
        """Image of the i-th simple root (1-based)."""
        return tuple(row[i - 1] for row in self.mat)

    def inverse_column(self, i: int) -> Root:
        return tuple(row[i - 1] for row in self.inv)

    @property
    def is_identity(self) -> bool:
        return self.mat == _identity(len(self.mat))


class CoxeterGroup:
    """The Coxeter group attached to a quiver, acting on its root lattice."""

    def __init__(self, quiver: Quiver, ball_budget: Optional[int] = None):
        self.quiver = quiver
        self.n = quiver.n
        self.cartan = quiver.cartan
        if ball_budget is None:
            ball_budget = int(os.environ.get("CAMBRIAN_BALL_BUDGET", DEFAULT_BALL_BUDGET))
        self.ball_budget = ball_budget
        n = self.n
        ident = _identity(n)
        self.identity = GroupElement(ident, ident)
        self._gens = {}
        for i in range(1, n + 1):
            rows = [list(r) for r in ident]
            for j in range(n):
                rows[i - 1][j] -= self.cartan[i - 1][j]
            m = tuple(tuple(r) for r in rows)
            self._gens[i] = GroupElement(m, m)
        self._reduced: dict[GroupElement, Word] = {self.identity: ()}
        self._inversions: dict[GroupElement, frozenset] = {}
        self._layers: list[list[GroupElement]] = [[self.identity]]
        self._ball_seen: set[GroupElement] = {self.identity}
        # shared memo tables for higher layers (pi_c, cone bases, ...)
        self.memo: dict = {}

    def __repr__(self) -> str:
        return f"CoxeterGroup({self.quiver})"

    def _check(self, i: int) -> None:
        if not (isinstance(i, int) and 1 <= i <= self.n):
            raise GeneratorIndexError(f"generator {i} not in 1..{self.n}")

    # -- elements ---------------------------------------------------------

    def gen(self, i: int) -> GroupElement:
        self._check(i)
        return self._gens[i]

    def from_word(self, word: Iterable[int]) -> GroupElement:
        w = self.identity
        for i in word:
            w = self.right_mul(w, i)
        return w

    def coxeter_element(self) -> GroupElement:
        return self.from_word(self.quiver.coxeter_word())

    def power(self, w: GroupElement, k: int) -> GroupElement:
        out = self.identity
        for _ in range(k):
            out = out * w
        return out

    def left_mul(self, i: int, w: GroupElement) -> GroupElement:
        """``s_i * w``; only row ``i`` of the matrix changes."""
        self._check(i)
        b = self.cartan[i - 1]
        mat = [list(r) for r in w.mat]
        rows = w.mat
        mat[i - 1] = [
            rows[i - 1][c] - sum(b[j] * rows[j][c] for j in range(self.n) if b[j])
            for c in range(self.n)
        ]
        inv = _matmul(w.inv, self._gens[i].mat)
        return GroupElement(tuple(tuple(r) for r in mat), inv)

    def right_mul(self, w: GroupElement, i: int) -> GroupElement:
        """``w * s_i``."""
        self._check(i)
        return self.left_mul(i, w.inverse()).inverse()

    def reflect(self, i: int, beta: Sequence[int]) -> Root:
        """``s_i(beta) = beta - (alpha_i, beta) alpha_i``."""
        self._check(i)
        b = self.cartan[i - 1]
        coeff = sum(b[j] * beta[j] for j in range(self.n))
        out = list(beta)
        out[i - 1] -= coeff
        return tuple(out)

    # -- descents and length -----------------------------------------------

    def left_descent(self, w: GroupElement, i: int) -> bool:
        self._check(i)
        return is_negative(w.inverse_column(i))

    def right_descent(self, w: GroupElement, i: int) -> bool:
        self._check(i)
        return is_negative(w.column(i))

    def left_descents(self, w: GroupElement) -> list[int]:
        return [i for i in range(1, self.n + 1) if self.left_descent(w, i)]

    def right_descents(self, w: GroupElement) -> list[int]:
        return [i for i in range(1, self.n + 1) if self.right_descent(w, i)]

    def reduced_word(self, w: GroupElement) -> Word:
        """Reduced word found by repeatedly removing the smallest left descent."""
        cached = self._reduced.get(w)
        if cached is not None:
            return cached
        letters = []
        rem = w
        while not rem.is_identity:
            i = next(k for k in range(1, self.n + 1) if self.left_descent(rem, k))
            letters.append(i)
            rem = self.left_mul(i, rem)
        word = tuple(letters)
        self._reduced[w] = word
        return word

    def length(self, w: GroupElement) -> int:
        return len(self.reduced_word(w))

    def is_reduced(self, word: Sequence[int]) -> bool:
        return self.length(self.from_word(word)) == len(word)

    # -- inversion sets and weak order --------------------------------------

    def prefix_roots(self, word: Sequence[int]) -> list[Root]:
        """``s_{u1}...s_{u(j-1)}(alpha_{uj})`` for each position ``j`` of ``word``."""
        out = []
        prefix = self.identity
        for i in word:
            self._check(i)
            out.append(prefix.column(i))
            prefix = self.right_mul(prefix, i)
        return out

    def inversion_set(self, w: GroupElement) -> frozenset:
        """``{beta > 0 : w^{-1}(beta) < 0}``, read off a reduced word."""
        cached = self._inversions.get(w)
        if cached is None:
            cached = frozenset(self.prefix_roots(self.reduced_word(w)))
            self._inversions[w] = cached
        return cached

    def weak_leq(self, u: GroupElement, w: GroupElement) -> bool:
        """Right weak order: ``u <= w`` iff the inversion set of u sits inside that of w."""
        return self.inversion_set(u) <= self.inversion_set(w)

    def weak_leq_by_length(self, u: GroupElement, w: GroupElement) -> bool:
        return self.length(w) == self.length(u) + self.length(u.inverse() * w)

    def weak_lt(self, u: GroupElement, w: GroupElement) -> bool:
        return u != w and self.weak_leq(u, w)

    def parabolic_factor(
        self, w: GroupElement, s: int, allowed: Optional[Iterable[int]] = None
    ) -> tuple[GroupElement, GroupElement]:
        """Split ``w = w_<s> * w^<s>`` with the left factor avoiding ``s`` and as long as possible."""
        self._check(s)
        pool = set(range(1, self.n + 1) if allowed is None else allowed) - {s}
        left = self.identity
        rem = w
        while True:
            j = next((k for k in sorted(pool) if self.left_descent(rem, k)), None)
            if j is None:
                return left, rem
            left = self.right_mul(left, j)
            rem = self.left_mul(j, rem)

    def support(self, w: GroupElement) -> frozenset:
        return frozenset(self.reduced_word(w))

    # -- enumeration ----------------------------------------------------------

    def enumerate_ball(self, max_len: int) -> list[GroupElement]:
        """All elements of length at most ``max_len``, ordered by length then discovery."""
        if max_len < 0:
            return []
        while len(self._layers) <= max_len and self._layers[-1]:
            nxt = []
            for w in self._layers[-1]:
                for i in range(1, self.n + 1):
                    if self.right_descent(w, i):
                        continue
                    v = self.right_mul(w, i)
                    if v in self._ball_seen:
                        continue
                    self._ball_seen.add(v)
                    nxt.append(v)
                    if len(self._ball_seen) > self.ball_budget:
                        raise ResourceError(
                            f"ball of radius {max_len} exceeds budget of {self.ball_budget} elements"
                        )
            self._layers.append(nxt)
        out = []
        for layer in self._layers[: max_len + 1]:
            out.extend(layer)
        return out

    def all_elements(self, limit: int = 10_000) -> list[GroupElement]:
        """Every element of a finite group (raises ResourceError past ``limit``)."""
        k = 0
        while True:
            ball = self.enumerate_ball(k)
            if not self._layers[-1]:
                return self.enumerate_ball(len(self._layers))
            if len(ball) > limit:
                raise ResourceError(f"group has more than {limit} elements")
            k += 1
