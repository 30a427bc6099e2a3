"""Leftmost words, c-sortable elements, the projection pi^c and its fibers.

The Coxeter element is always the admissible one, ``c = s_1 ... s_n``, but
the recursive routines carry an explicit Coxeter word ``c`` (a tuple of
generator indices) because the recursion rotates it and drops letters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .coxeter import CoxeterGroup, GroupElement, Root, Word, format_root, is_positive
from .errors import (
    AmbiguityError,
    CambrianError,
    NotPositiveRootError,
    NotReducedError,
    NotSortableError,
)

PREPROJECTIVE = "Preprojective"
PREINJECTIVE = "Preinjective"
REGULAR = "Regular"
UNKNOWN = "UnknownAtHorizon"

BOUNDED = "Bounded"
UNBOUNDED = "Unbounded"

FOUND = "Found"
DOES_NOT_EXIST = "DoesNotExist"
HORIZON = "Horizon"


@dataclass(frozen=True)
class SortingWord:
    """A reduced subword of ``c^infinity``, with 1-based positions."""

    letters: Word
    positions: tuple[int, ...]
    coxeter_word: Word

    @property
    def blocks(self) -> list[Word]:
        """Letters grouped by the copy of ``c`` they come from, empty copies included."""
        if not self.positions:
            return []
        h = len(self.coxeter_word)
        out: list[list[int]] = [[] for _ in range((self.positions[-1] - 1) // h + 1)]
        for letter, pos in zip(self.letters, self.positions):
            out[(pos - 1) // h].append(letter)
        return [tuple(b) for b in out]

    @property
    def supports(self) -> list[frozenset]:
        return [frozenset(b) for b in self.blocks]

    def copy_and_letter(self) -> list[tuple[int, int]]:
        h = len(self.coxeter_word)
        return [((p - 1) // h, self.coxeter_word[(p - 1) % h]) for p in self.positions]


def _default_c(W: CoxeterGroup, c: Optional[Sequence[int]]) -> Word:
    return tuple(W.quiver.coxeter_word() if c is None else c)


def leftmost_word(W: CoxeterGroup, w: GroupElement, c: Optional[Sequence[int]] = None) -> SortingWord:
    """Lexicographically first reduced subword of ``c^infinity`` evaluating to ``w``.

    Scanning positions in order and consuming a letter whenever it is a left
    descent of what remains is forced: the earliest usable position for the
    next letter is the earliest one carrying a left descent.
    """
    c = _default_c(W, c)
    letters, positions = [], []
    rem = w
    pos = 0
    idle = 0
    while not rem.is_identity:
        t = c[pos % len(c)]
        pos += 1
        if W.left_descent(rem, t):
            letters.append(t)
            positions.append(pos)
            rem = W.left_mul(t, rem)
            idle = 0
        else:
            idle += 1
            if idle > len(c):
                raise CambrianError(f"element is not in the subgroup generated by {c}")
    return SortingWord(tuple(letters), tuple(positions), c)


def sorting_blocks(W: CoxeterGroup, w: GroupElement, c: Optional[Sequence[int]] = None) -> Optional[list[Word]]:
    """Blocks of the c-sorting word when ``w`` is c-sortable, else ``None``."""
    blocks = leftmost_word(W, w, c).blocks
    supports = [set(b) for b in blocks]
    for later, earlier in zip(supports[1:], supports):
        if not later <= earlier:
            return None
    return blocks


def is_c_sortable(W: CoxeterGroup, w: GroupElement, c: Optional[Sequence[int]] = None) -> bool:
    return sorting_blocks(W, w, c) is not None


def require_sortable(W: CoxeterGroup, x: GroupElement) -> None:
    if not is_c_sortable(W, x):
        raise NotSortableError(f"element {leftmost_word(W, x).letters} is not c-sortable")


def pi_c(W: CoxeterGroup, w: GroupElement, c: Optional[Sequence[int]] = None) -> GroupElement:
    """Reading's projection onto c-sortable elements, by the defining recursion.

    With ``s`` the first letter of the current Coxeter word: if ``s`` is a
    left descent, emit ``s`` and continue with ``s w`` and the rotated word;
    otherwise drop ``s`` and continue with the parabolic part ``w_<s>``.
    """
    c = _default_c(W, c)
    key = ("pi_c", c, w)
    hit = W.memo.get(key)
    if hit is not None:
        return hit
    prefix = W.identity
    rem = w
    word = c
    while not rem.is_identity:
        if not word:
            raise CambrianError("element escapes the parabolic subgroup of its Coxeter word")
        s = word[0]
        if W.left_descent(rem, s):
            prefix = W.right_mul(prefix, s)
            rem = W.left_mul(s, rem)
            word = word[1:] + (s,)
        else:
            rem, _ = W.parabolic_factor(rem, s, allowed=word)
            word = word[1:]
    W.memo[key] = prefix
    return prefix


def c_sortable_elements(W: CoxeterGroup, max_len: Optional[int] = None) -> list[GroupElement]:
    """Sortable elements of the ball (or of the whole group when it is finite)."""
    pool = W.all_elements() if max_len is None else W.enumerate_ball(max_len)
    return [x for x in pool if is_c_sortable(W, x)]


def pi_c_oracle(
    W: CoxeterGroup, w: GroupElement, candidates: Optional[Sequence[GroupElement]] = None
) -> GroupElement:
    """Brute force: the unique weak-order maximum among sortables below ``w``."""
    if candidates is None:
        candidates = c_sortable_elements(W, W.length(w))
    below = [x for x in candidates if W.weak_leq(x, w)]
    tops = [x for x in below if all(W.weak_leq(y, x) for y in below)]
    if len(tops) != 1:
        raise AmbiguityError(f"{len(tops)} maximal sortable elements below {W.reduced_word(w)}")
    return tops[0]


def layer_roots(W: CoxeterGroup, word: Sequence[int]) -> list[Root]:
    if not W.is_reduced(word):
        raise NotReducedError(f"word {tuple(word)} is not reduced")
    return W.prefix_roots(word)


# -- preprojective roots and boundedness ------------------------------------


@dataclass(frozen=True)
class RootVerdict:
    kind: str
    steps: Optional[int] = None

    def to_json(self):
        return {"kind": self.kind, "steps": self.steps}


def default_horizon(beta: Sequence[int]) -> int:
    return 64 + sum(beta)


def is_preprojective_root(W: CoxeterGroup, beta: Sequence[int], horizon: Optional[int] = None) -> RootVerdict:
    """Decide whether ``beta`` is the dimension vector of a preprojective module.

    Iterates the inverse Coxeter transformation; a preprojective root
    ``dim tau^{-m} P_i`` leaves the positive cone after ``m + 1`` steps.
    Outside Dynkin type the forward transformation is run alongside to catch
    preinjective roots, and a repeated iterate means a regular root.
    """
    beta = tuple(beta)
    if not is_positive(beta):
        raise NotPositiveRootError(f"{format_root(beta)} is not a positive root")
    K = default_horizon(beta) if horizon is None else horizon
    c = W.coxeter_element()
    dynkin = W.quiver.is_dynkin
    back, fwd = beta, beta
    seen_back, seen_fwd = {beta}, {beta}
    for k in range(1, K + 1):
        back = c.apply_inverse(back)
        if not is_positive(back):
            return RootVerdict(PREPROJECTIVE, k)
        if dynkin:
            continue
        if back in seen_back:
            return RootVerdict(REGULAR, k)
        seen_back.add(back)
        fwd = c(fwd)
        if not is_positive(fwd):
            return RootVerdict(PREINJECTIVE, k)
        if fwd in seen_fwd:
            return RootVerdict(REGULAR, k)
        seen_fwd.add(fwd)
    return RootVerdict(UNKNOWN, None)


@dataclass(frozen=True)
class BoundednessReport:
    verdict: str
    witnesses: tuple = ()
    horizon: Optional[int] = None

    def to_json(self) -> dict:
        if self.verdict == UNBOUNDED:
            witness = format_root(self.witnesses[0])
        else:
            witness = [{"root": format_root(b), "verdict": v.kind, "steps": v.steps} for b, v in self.witnesses]
        return {"verdict": self.verdict, "witness": witness, "horizon": self.horizon}


def is_bounded(W: CoxeterGroup, x: GroupElement, horizon: Optional[int] = None) -> BoundednessReport:
    """Boundedness via preprojectivity of every inversion (layer) root of ``x``."""
    require_sortable(W, x)
    if W.quiver.is_dynkin:
        return BoundednessReport(BOUNDED, (), horizon)
    certificates = []
    unknown = False
    for beta in layer_roots(W, leftmost_word(W, x).letters):
        verdict = is_preprojective_root(W, beta, horizon)
        if verdict.kind in (REGULAR, PREINJECTIVE):
            return BoundednessReport(UNBOUNDED, (beta,), horizon)
        if verdict.kind == UNKNOWN:
            unknown = True
        certificates.append((beta, verdict))
    if unknown:
        return BoundednessReport(UNKNOWN, tuple(certificates), horizon)
    return BoundednessReport(BOUNDED, tuple(certificates), horizon)


def bounded_by_power(W: CoxeterGroup, x: GroupElement, max_power: int) -> Optional[int]:
    """Smallest ``N <= max_power`` with ``x <= c^N``, or ``None``."""
    c = W.coxeter_element()
    cn = W.identity
    for N in range(max_power + 1):
        if W.weak_leq(x, cn):
            return N
        cn = cn * c
    return None


@dataclass(frozen=True)
class AntisortableResult:
    status: str
    element: Optional[GroupElement] = field(default=None)
    steps: int = 0


def antisortable(
    W: CoxeterGroup, x: GroupElement, max_steps: int = 10_000, horizon: Optional[int] = None
) -> AntisortableResult:
    """Maximum of the pi^c fiber over ``x``, found by climbing right ascents inside the fiber.

    The climb stops at an element all of whose ascents leave the fiber; such
    a locally maximal element is the maximum of the fiber.
    """
    require_sortable(W, x)
    report = is_bounded(W, x, horizon)
    if report.verdict == UNBOUNDED:
        return AntisortableResult(DOES_NOT_EXIST)
    w = x
    for step in range(max_steps):
        nxt = None
        for i in range(1, W.n + 1):
            if W.right_descent(w, i):
                continue
            v = W.right_mul(w, i)
            if pi_c(W, v) == x:
                nxt = v
                break
        if nxt is None:
            return AntisortableResult(FOUND, w, step)
        w = nxt
    return AntisortableResult(HORIZON, w, max_steps)


def is_fiber_maximal(W: CoxeterGroup, w: GroupElement) -> bool:
    """Every right ascent strictly raises pi^c."""
    p = pi_c(W, w)
    for i in range(1, W.n + 1):
        if W.right_descent(w, i):
            continue
        q = pi_c(W, W.right_mul(w, i))
        if not W.weak_lt(p, q):
            return False
    return True


def fiber(W: CoxeterGroup, x: GroupElement, len_bound: Optional[int] = None) -> frozenset:
    """``{w : pi^c(w) = x}`` restricted to elements of length at most ``len_bound``."""
    require_sortable(W, x)
    if len_bound is None:
        top = antisortable(W, x)
        if top.status != FOUND:
            raise CambrianError("fiber is infinite or undetermined; pass len_bound explicitly")
        len_bound = W.length(top.element)
    return frozenset(w for w in W.enumerate_ball(len_bound) if pi_c(W, w) == x)
