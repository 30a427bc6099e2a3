"""Module categories of path algebras: preprojective bookkeeping for any
acyclic quiver, and exact Hom/Ext tables for Dynkin quivers.

Modules are right modules.  Concretely an arrow ``j -> i`` of the quiver
acts by a matrix from the ``i`` component to the ``j`` component, so the
projective ``P_i`` has dimension vector ``s_1 ... s_{i-1}(alpha_i)`` and the
two-dimensional A2 indecomposable has socle ``S_1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence

import sympy

from .coxeter import CoxeterGroup, GroupElement, Root, format_root, format_word, is_positive, simple_root
from .errors import NotDynkinError, NotRootError, RangeError, ShapeError
from .quiver import Quiver
from .sortable import FOUND, antisortable, layer_roots, leftmost_word, require_sortable

# -- Coxeter transformation and the preprojective component ---------------


def coxeter_transform(W: CoxeterGroup, beta: Sequence[int], inverse: bool = False) -> Root:
    """Action of ``c = s_1 ... s_n`` (or its inverse); models tau^- (resp. tau) on dimension vectors."""
    c = W.coxeter_element()
    return c.apply_inverse(beta) if inverse else c(beta)


@dataclass(frozen=True, order=True)
class PreprojectiveIndex:
    """``tau^{-copy} P_letter``; sits at position ``copy * n + letter`` of ``c^infinity``."""

    copy: int
    letter: int

    def position(self, n: int) -> int:
        return self.copy * n + self.letter

    @classmethod
    def from_position(cls, pos: int, n: int) -> "PreprojectiveIndex":
        return cls((pos - 1) // n, (pos - 1) % n + 1)

    def label(self) -> str:
        if self.copy == 0:
            return f"P{self.letter}"
        return f"tau^-{self.copy} P{self.letter}"

    def __str__(self) -> str:
        return self.label()


def projective_root(W: CoxeterGroup, i: int) -> Root:
    return W.prefix_roots(range(1, i + 1))[-1]


def preprojective_root(W: CoxeterGroup, index: PreprojectiveIndex) -> Optional[Root]:
    """Dimension vector of ``tau^{-m} P_i``, or ``None`` when that module does not exist."""
    c = W.coxeter_element()
    beta = projective_root(W, index.letter)
    for _ in range(index.copy):
        beta = c(beta)
        if not is_positive(beta):
            return None
    return beta


def preprojective_dims(W: CoxeterGroup, count: int) -> list[tuple[PreprojectiveIndex, Root]]:
    """First ``count`` preprojective modules in ``(copy, letter)`` order, walking tau-orbits."""
    if count < 1:
        raise RangeError("count must be at least 1")
    c = W.coxeter_element()
    current = {i: projective_root(W, i) for i in range(1, W.n + 1)}
    out = []
    m = 0
    while len(out) < count:
        if not current:
            raise RangeError(f"only {len(out)} preprojective modules exist")
        for i in sorted(current):
            out.append((PreprojectiveIndex(m, i), current[i]))
            if len(out) == count:
                break
        nxt = {}
        for i, beta in current.items():
            image = c(beta)
            if is_positive(image):
                nxt[i] = image
        current = nxt
        m += 1
    return out


def removed_modules(W: CoxeterGroup, w: GroupElement) -> list[tuple[PreprojectiveIndex, Root]]:
    """Preprojectives sitting at the positions of the leftmost word of ``w``."""
    out = []
    for pos in leftmost_word(W, w).positions:
        idx = PreprojectiveIndex.from_position(pos, W.n)
        beta = preprojective_root(W, idx)
        if beta is None:
            raise RangeError(f"{idx} does not exist")
        out.append((idx, beta))
    return out


# -- representations ----------------------------------------------------------


def _canonical_arrows(Q: Quiver) -> tuple[tuple[int, int], ...]:
    # (tail, head) of the linear maps: quiver arrow j -> i acts from i to j.
    return tuple((i, j) for j, i in Q.arrows)


@dataclass(frozen=True)
class Representation:
    """Vector spaces ``K^dims[v]`` with one rational matrix per arrow.

    ``arrows[a] = (tail, head)`` and ``maps[a]`` has shape ``dims[head] x dims[tail]``.
    """

    dims: tuple[int, ...]
    arrows: tuple[tuple[int, int], ...]
    maps: tuple

    def __post_init__(self):
        if len(self.arrows) != len(self.maps):
            raise ShapeError("one matrix per arrow is required")
        for (t, h), m in zip(self.arrows, self.maps):
            if m.shape != (self.dims[h - 1], self.dims[t - 1]):
                raise ShapeError(f"map on arrow {t}->{h} has shape {m.shape}")

    @property
    def root(self) -> Root:
        return self.dims


def simple_representation(n: int, k: int, arrows) -> Representation:
    dims = simple_root(n, k)
    maps = tuple(sympy.zeros(dims[h - 1], dims[t - 1]) for t, h in arrows)
    return Representation(dims, tuple(arrows), maps)


def _reverse_at(arrows, k):
    return tuple((h, t) if k in (t, h) else (t, h) for t, h in arrows)


def reflect_at_source(rep: Representation, k: int) -> Representation:
    """Inverse reflection functor at a source ``k``: replace ``V_k`` by the cokernel of ``V_k -> (+) V_j``."""
    out_arrows = [a for a, (t, h) in enumerate(rep.arrows) if t == k]
    if any(h == k for t, h in rep.arrows):
        raise ValueError(f"vertex {k} is not a source")
    blocks = [rep.maps[a] for a in out_arrows]
    total = sum(b.rows for b in blocks)
    phi = sympy.Matrix.vstack(*blocks) if blocks else sympy.zeros(0, rep.dims[k - 1])
    left_null = phi.T.nullspace()
    pi = sympy.Matrix.hstack(*left_null).T if left_null else sympy.zeros(0, total)
    dims = list(rep.dims)
    dims[k - 1] = pi.rows
    maps = list(rep.maps)
    col = 0
    for a in out_arrows:
        width = rep.maps[a].rows
        maps[a] = pi[:, col : col + width]
        col += width
    return Representation(tuple(dims), _reverse_at(rep.arrows, k), tuple(maps))


def build_indecomposable(Q: Quiver, beta: Sequence[int]) -> Representation:
    """The indecomposable with dimension vector ``beta`` (Dynkin quivers only).

    Reflect ``beta`` at sinks 1, 2, ..., n, 1, ... until it becomes the simple
    root of the current sink, then rebuild from that simple by inverse
    reflection functors.
    """
    if not Q.is_dynkin:
        raise NotDynkinError(f"{Q} is not Dynkin")
    W = CoxeterGroup(Q)
    beta = tuple(beta)
    if len(beta) != Q.n or not is_positive(beta):
        raise NotRootError(f"{format_root(beta)} is not a positive root")
    arrows = _canonical_arrows(Q)
    seq = []
    b = beta
    limit = Q.n * (sum(beta) + 2) * 4
    k = 0
    while True:
        k = k % Q.n + 1
        if b == simple_root(Q.n, k):
            break
        b = W.reflect(k, b)
        if not is_positive(b) or len(seq) > limit:
            raise NotRootError(f"{format_root(beta)} is not a positive root")
        seq.append(k)
        arrows = _reverse_at(arrows, k)
    rep = simple_representation(Q.n, k, arrows)
    for v in reversed(seq):
        rep = reflect_at_source(rep, v)
    assert rep.dims == beta and rep.arrows == _canonical_arrows(Q)
    return rep


def hom_dim(X: Representation, Y: Representation) -> int:
    """Dimension of the space of morphisms, as the nullity of the commuting-square system."""
    if X.arrows != Y.arrows or len(X.dims) != len(Y.dims):
        raise ShapeError("representations live on different quivers")
    offsets = {}
    unknowns = 0
    for v, (dx, dy) in enumerate(zip(X.dims, Y.dims), start=1):
        offsets[v] = unknowns
        unknowns += dx * dy
    if unknowns == 0:
        return 0
    rows = []
    for (t, h), xa, ya in zip(X.arrows, X.maps, Y.maps):
        dxt, dyt = X.dims[t - 1], Y.dims[t - 1]
        dxh, dyh = X.dims[h - 1], Y.dims[h - 1]
        # Y_a f_t - f_h X_a = 0, entry (p, q) with p < dyh, q < dxt
        for p, q in product(range(dyh), range(dxt)):
            row = [0] * unknowns
            for r in range(dyt):
                row[offsets[t] + r * dxt + q] += ya[p, r]
            for r in range(dxh):
                row[offsets[h] + p * dxh + r] -= xa[r, q]
            rows.append(row)
    if not rows:
        return unknowns
    return unknowns - sympy.Matrix(rows).rank()


def euler_form(X: Representation, Y: Representation) -> int:
    value = sum(a * b for a, b in zip(X.dims, Y.dims))
    for t, h in X.arrows:
        value -= X.dims[t - 1] * Y.dims[h - 1]
    return value


def ext_dim(X: Representation, Y: Representation) -> int:
    value = hom_dim(X, Y) - euler_form(X, Y)
    assert value >= 0, "negative Ext dimension"
    return value


# -- the module category of a Dynkin quiver ------------------------------------


class ModuleCategory:
    """Indecomposables of a Dynkin path algebra with a shared Hom table.

    Subcategories are handled as sets of dimension vectors (each positive
    root is the dimension vector of exactly one indecomposable).
    """

    def __init__(self, Q: Quiver):
        if not Q.is_dynkin:
            raise NotDynkinError(f"{Q} is not Dynkin")
        self.quiver = Q
        self.group = CoxeterGroup(Q)
        entries = preprojective_dims(self.group, _positive_root_count(self.group))
        self.index = {beta: idx for idx, beta in entries}
        self.roots: tuple[Root, ...] = tuple(beta for _, beta in entries)
        self.modules = {beta: build_indecomposable(Q, beta) for beta in self.roots}
        self._hom = {
            (a, b): hom_dim(self.modules[a], self.modules[b]) for a in self.roots for b in self.roots
        }

    @property
    def all(self) -> frozenset:
        return frozenset(self.roots)

    def hom(self, a: Root, b: Root) -> int:
        return self._hom[tuple(a), tuple(b)]

    def ext(self, a: Root, b: Root) -> int:
        value = self.hom(a, b) - self.quiver.euler_form(a, b)
        assert value >= 0, "negative Ext dimension"
        return value

    def tau(self, beta: Root) -> Optional[Root]:
        image = coxeter_transform(self.group, beta, inverse=True)
        return image if is_positive(image) else None

    def perp_right(self, S: Iterable[Root]) -> frozenset:
        S = list(S)
        return frozenset(z for z in self.roots if all(self._hom[x, z] == 0 for x in S))

    def perp_left(self, S: Iterable[Root]) -> frozenset:
        S = list(S)
        return frozenset(z for z in self.roots if all(self._hom[z, y] == 0 for y in S))

    def is_torsion_class(self, S: Iterable[Root]) -> bool:
        S = frozenset(S)
        return S == self.perp_left(self.perp_right(S))

    def is_torsion_free_class(self, S: Iterable[Root]) -> bool:
        S = frozenset(S)
        return S == self.perp_right(self.perp_left(S))

    def torsion_free_classes(self) -> list[frozenset]:
        """Every subset that is stable under the double perpendicular (exhaustive)."""
        m = len(self.roots)
        # bitmask form of the Hom table: kills[i] = modules j with hom(i, j) != 0
        out_mask = [0] * m
        in_mask = [0] * m
        for i, a in enumerate(self.roots):
            for j, b in enumerate(self.roots):
                if self._hom[a, b]:
                    out_mask[i] |= 1 << j
                    in_mask[j] |= 1 << i
        full = (1 << m) - 1
        found = []
        for S in range(1 << m):
            left = full
            for j in range(m):
                if S >> j & 1:
                    left &= ~in_mask[j]
            right = full
            for i in range(m):
                if left >> i & 1:
                    right &= ~out_mask[i]
            if right == S:
                found.append(frozenset(self.roots[j] for j in range(m) if S >> j & 1))
        return found


def _positive_root_count(W: CoxeterGroup) -> int:
    # finite type: |Phi+| = length of the longest element
    return max(W.length(w) for w in W.all_elements())


@lru_cache(maxsize=None)
def module_category(Q: Quiver) -> ModuleCategory:
    return ModuleCategory(Q)


def _word(W: CoxeterGroup, w: GroupElement) -> str:
    return format_word(leftmost_word(W, w).letters)


def torsion_pair_for_sortable(W: CoxeterGroup, x: GroupElement) -> dict:
    """Check that x and its antisortable element give a torsion pair (T, F).

    F is the set of layer roots of x; T is everything except the modules
    removed by the leftmost word of the antisortable element.
    """
    if not W.quiver.is_dynkin:
        raise NotDynkinError(f"{W.quiver} is not Dynkin")
    require_sortable(W, x)
    cat = module_category(W.quiver)
    F = frozenset(layer_roots(W, leftmost_word(W, x).letters))
    top = antisortable(W, x)
    assert top.status == FOUND, "Dynkin sortables always have an antisortable"
    T = cat.all - frozenset(beta for _, beta in removed_modules(W, top.element))
    checks = {
        "torsion_is_left_perp": T == cat.perp_left(F),
        "torsion_free_is_right_perp": F == cat.perp_right(T),
        "torsion_class": cat.is_torsion_class(T),
        "torsion_free_class": cat.is_torsion_free_class(F),
        "hom_vanishing": all(cat.hom(t, f) == 0 for t in T for f in F),
    }
    order = {beta: k for k, beta in enumerate(cat.roots)}
    return {
        "sortable": _word(W, x),
        "antisortable": _word(W, top.element),
        "torsion": [format_root(b) for b in sorted(T, key=order.get)],
        "torsion_free": [format_root(b) for b in sorted(F, key=order.get)],
        "checks": checks,
        "passed": all(checks.values()),
    }


def support_tilting_check(W: CoxeterGroup, x: GroupElement) -> dict:
    """Summands ``L^{t(i)}`` of the support tilting module of a sortable element.

    ``t(i)`` is the last position of letter ``i`` in the sorting word, for
    ``i`` in the support of the first block.
    """
    require_sortable(W, x)
    sw = leftmost_word(W, x)
    letters = sw.letters
    roots = layer_roots(W, letters)
    first = set(sw.blocks[0]) if letters else set()
    last = {}
    for j, u in enumerate(letters, start=1):
        last[u] = j
    positions = sorted(last[i] for i in first)
    summands = [roots[j - 1] for j in positions]
    report = {
        "sortable": format_word(letters),
        "summands": [{"layer": j, "root": format_root(roots[j - 1])} for j in positions],
        "support": sorted(first),
    }
    if W.quiver.is_dynkin:
        cat = module_category(W.quiver)
        ext_free = all(cat.ext(a, b) == 0 for a in summands for b in summands)
        report["checks"] = {
            "ext_vanishing": ext_free,
            "summand_count": len(set(summands)) == len(first),
        }
        report["passed"] = all(report["checks"].values())
    return report


# -- Auslander-Reiten quiver --------------------------------------------------


def ar_quiver_dot(W: CoxeterGroup, copies: int = 4, highlight: Optional[GroupElement] = None) -> str:
    """DOT text for the preprojective component (all of it in Dynkin type).

    Meshes come from the arrows of the quiver: for ``j -> i`` there are
    irreducible maps ``tau^{-m} P_j -> tau^{-m} P_i -> tau^{-m-1} P_j``.
    """
    n = W.n
    if W.quiver.is_dynkin:
        entries = preprojective_dims(W, _positive_root_count(W))
    else:
        entries = preprojective_dims(W, copies * n)
    nodes = {idx: beta for idx, beta in entries}
    removed = set()
    if highlight is not None:
        removed = {idx for idx, _ in removed_modules(W, highlight)}
    name = W.quiver.name or "quiver"
    lines = [f'digraph "{name}" {{', "  rankdir=LR;", "  node [shape=box];"]
    for idx, beta in entries:
        attrs = [f'label="{format_root(beta)}"', f'tooltip="{idx.label()}"']
        if idx in removed:
            attrs.append('style=filled, fillcolor="lightgray"')
        lines.append(f'  "{idx.label()}" [{", ".join(attrs)}];')
    for m in range(max(idx.copy for idx in nodes) + 1):
        for j, i in W.quiver.arrows:
            a, b = PreprojectiveIndex(m, j), PreprojectiveIndex(m, i)
            d = PreprojectiveIndex(m + 1, j)
            if a in nodes and b in nodes:
                lines.append(f'  "{a.label()}" -> "{b.label()}";')
            if b in nodes and d in nodes:
                lines.append(f'  "{b.label()}" -> "{d.label()}";')
    for idx in sorted(nodes):
        nxt = PreprojectiveIndex(idx.copy + 1, idx.letter)
        if nxt in nodes:
            lines.append(f'  "{idx.label()}" -> "{nxt.label()}" [style=dashed, constraint=false, arrowhead=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"
