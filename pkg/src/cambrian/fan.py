"""Cambrian cones: their root bases, chamber membership, and ray generators.

Everything is exact; a chamber ``wD`` lies in the closed half-space of a
root ``beta`` exactly when ``w^{-1}(beta)`` is positive, which turns cone
membership into inversion-set bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

import sympy

from .coxeter import CoxeterGroup, GroupElement, Root, format_root, is_negative, is_positive, negate, simple_root
from .errors import NotSortableError, SingularError
from .sortable import FOUND, antisortable, require_sortable


@dataclass(frozen=True)
class CambrianBasis:
    roots: tuple[Root, ...]

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def as_set(self) -> frozenset:
        return frozenset(self.roots)


def cambrian_basis(W: CoxeterGroup, x: GroupElement, c: Optional[Sequence[int]] = None) -> CambrianBasis:
    """The n roots cutting out ``Cone_c(x)``.

    With ``s`` first in ``c``: if ``s`` is not a left descent of ``x`` the
    basis is that of ``x`` for ``c`` without ``s``, plus ``alpha_s``;
    otherwise it is ``s`` applied to the basis of ``s x`` for ``c`` rotated.
    """
    require_sortable(W, x)
    c = tuple(W.quiver.coxeter_word() if c is None else c)
    return CambrianBasis(tuple(_basis(W, c, x)))


def _basis(W: CoxeterGroup, c: tuple[int, ...], x: GroupElement) -> tuple[Root, ...]:
    key = ("cone", c, x)
    hit = W.memo.get(key)
    if hit is not None:
        return hit
    if not c:
        if not x.is_identity:
            raise NotSortableError("element leaves the parabolic subgroup during the cone recursion")
        out: tuple[Root, ...] = ()
    else:
        s = c[0]
        if W.left_descent(x, s):
            out = tuple(W.reflect(s, beta) for beta in _basis(W, c[1:] + (s,), W.left_mul(s, x)))
        else:
            if not W.support(x) <= set(c[1:]):
                raise NotSortableError("element is not sortable for the restricted Coxeter word")
            out = _basis(W, c[1:], x) + (simple_root(W.n, s),)
    W.memo[key] = out
    return out


def chamber_in_cone(W: CoxeterGroup, w: GroupElement, C: Sequence[Root]) -> bool:
    """``wD`` inside the closed cone: positive basis roots avoid N(w), negated negative ones lie in it."""
    inv = W.inversion_set(w)
    for beta in C:
        if is_positive(beta):
            if beta in inv:
                return False
        elif is_negative(beta):
            if negate(beta) not in inv:
                return False
        else:
            raise ValueError(f"{format_root(beta)} is neither positive nor negative")
    return True


def fiber_via_cone(W: CoxeterGroup, x: GroupElement, len_bound: Optional[int] = None) -> frozenset:
    """Chambers of the ball lying in ``Cone_c(x)``."""
    C = cambrian_basis(W, x)
    if len_bound is None:
        top = antisortable(W, x)
        if top.status != FOUND:
            raise ValueError("cone holds infinitely many chambers or is undetermined; pass len_bound")
        len_bound = W.length(top.element)
    return frozenset(w for w in W.enumerate_ball(len_bound) if chamber_in_cone(W, w, C))


def _primitive(row) -> tuple[int, ...]:
    denom = 1
    for x in row:
        denom = sympy.ilcm(denom, sympy.Rational(x).q)
    ints = [int(sympy.Rational(x) * denom) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return tuple(v // g for v in ints) if g else tuple(ints)


def cone_rays(C: Sequence[Root]) -> list[tuple[int, ...]]:
    """Dual basis of ``C`` (coordinates against the simple roots), each ray primitive integral.

    Ray ``k`` pairs to 1 with the k-th root and to 0 with the others, so it
    is the extreme ray of the cone opposite that facet.
    """
    roots = list(C)
    n = len(roots)
    if n == 0:
        return []
    M = sympy.Matrix([[roots[j][i] for j in range(n)] for i in range(n)])
    if M.det() == 0:
        raise SingularError("basis roots are linearly dependent")
    R = M.inv()
    return [_primitive(R.row(k)) for k in range(n)]


def cone_report(W: CoxeterGroup, x: GroupElement) -> dict:
    C = cambrian_basis(W, x)
    return {
        "basis": [format_root(b) for b in C],
        "rays": [list(r) for r in cone_rays(C)],
    }


def cone_dump(W: CoxeterGroup, x: GroupElement) -> str:
    """Plain polyhedral description: inequalities (the basis roots) then extreme rays."""
    C = cambrian_basis(W, x)
    rays = cone_rays(C)
    lines = [f"# cone of dimension {W.n}", "INEQUALITIES"]
    lines += [" ".join(str(v) for v in beta) for beta in C]
    lines.append("RAYS")
    lines += [" ".join(str(v) for v in r) for r in rays]
    return "\n".join(lines) + "\n"
