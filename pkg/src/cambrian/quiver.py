"""Acyclic quivers, their symmetric bilinear form, and type classification."""

from __future__ import annotations

import heapq
import json
import os
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from math import gcd
from typing import Optional

import sympy

from .errors import CycleError, DisconnectedError, EmptyError, QuiverError

DYNKIN = "Dynkin"
AFFINE = "Affine"
WILD = "Wild"


def load_presets() -> dict:
    """Read the preset table; ``CAMBRIAN_PRESETS`` may point at a replacement file."""
    override = os.environ.get("CAMBRIAN_PRESETS")
    if override:
        with open(override, encoding="utf-8") as fh:
            return json.load(fh)
    text = resources.files("cambrian").joinpath("data/presets.json").read_text("utf-8")
    return json.loads(text)


@dataclass(frozen=True)
class QuiverClass:
    kind: str
    null_root: Optional[tuple[int, ...]] = None

    def __str__(self) -> str:
        return self.kind


@dataclass(frozen=True)
class Quiver:
    """A connected acyclic quiver with admissible numbering (arrow ``j -> i`` means ``j < i``).

    ``relabel[k]`` is the new label of input vertex ``k + 1``; it is the
    identity unless the constructor had to renumber.
    """

    vertex_count: int
    arrows: tuple[tuple[int, int], ...]
    name: Optional[str] = None
    relabel: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def build(cls, vertex_count: int, arrows, name: Optional[str] = None) -> "Quiver":
        n = int(vertex_count)
        if n <= 0:
            raise EmptyError("quiver has no vertices")
        arrows = [(int(j), int(i)) for j, i in arrows]
        for j, i in arrows:
            if not (1 <= j <= n and 1 <= i <= n):
                raise QuiverError(f"arrow {j}->{i} out of range 1..{n}")
            if j == i:
                raise CycleError(f"loop at vertex {j}")
        _check_connected(n, arrows)
        order = _topological_order(n, arrows)
        relabel = [0] * n
        for new, old in enumerate(order, start=1):
            relabel[old - 1] = new
        renamed = sorted((relabel[j - 1], relabel[i - 1]) for j, i in arrows)
        return cls(n, tuple(renamed), name, tuple(relabel))

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def renumbered(self) -> bool:
        return any(new != old for old, new in enumerate(self.relabel, start=1))

    def edge_count(self, i: int, j: int) -> int:
        """Number of arrows between ``i`` and ``j`` in either direction."""
        return sum(1 for a, b in self.arrows if {a, b} == {i, j} and i != j)

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 2
        for j, i in self.arrows:
            rows[j - 1][i - 1] -= 1
            rows[i - 1][j - 1] -= 1
        return tuple(tuple(r) for r in rows)

    def cartan_form(self) -> tuple[tuple[int, ...], ...]:
        return self.cartan

    def form(self, a, b) -> int:
        """Symmetric bilinear form on root coordinates."""
        B = self.cartan
        n = self.n
        return sum(a[i] * B[i][j] * b[j] for i in range(n) if a[i] for j in range(n) if b[j])

    def euler_form(self, d, e) -> int:
        """Euler pairing for modules in the right-module convention used here.

        An arrow ``j -> i`` of the quiver acts as a map from the ``i``
        component to the ``j`` component, so it contributes ``-d_i e_j``.
        """
        value = sum(x * y for x, y in zip(d, e))
        for j, i in self.arrows:
            value -= d[i - 1] * e[j - 1]
        return value

    @cached_property
    def classification(self) -> QuiverClass:
        B = sympy.Matrix(self.cartan)
        if B.is_positive_definite:
            return QuiverClass(DYNKIN)
        if B.is_positive_semidefinite:
            kernel = B.nullspace()
            if len(kernel) == 1:
                return QuiverClass(AFFINE, _primitive_positive(kernel[0]))
        return QuiverClass(WILD)

    def classify(self) -> QuiverClass:
        return self.classification

    @property
    def is_dynkin(self) -> bool:
        return self.classification.kind == DYNKIN

    def coxeter_word(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def serialize(self) -> str:
        """Canonical arrow-list text; JSON when the quiver has no arrows."""
        if not self.arrows:
            return json.dumps({"vertices": self.n, "arrows": []})
        return " / ".join(f"{j} {i}" for j, i in self.arrows)

    def to_json(self) -> dict:
        return {"vertices": self.n, "arrows": [list(a) for a in self.arrows], "name": self.name}

    def __str__(self) -> str:
        return self.name or self.serialize()


def _check_connected(n: int, arrows) -> None:
    adj = {v: set() for v in range(1, n + 1)}
    for j, i in arrows:
        adj[j].add(i)
        adj[i].add(j)
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for u in adj[v] - seen:
            seen.add(u)
            stack.append(u)
    if len(seen) != n:
        raise DisconnectedError(f"underlying graph is disconnected ({len(seen)} of {n} vertices reached)")


def _topological_order(n: int, arrows) -> list[int]:
    # Kahn's algorithm, smallest label first, so admissible input stays put.
    indeg = [0] * (n + 1)
    out = {v: [] for v in range(1, n + 1)}
    for j, i in arrows:
        indeg[i] += 1
        out[j].append(i)
    heap = [v for v in range(1, n + 1) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for u in out[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                heapq.heappush(heap, u)
    if len(order) != n:
        raise CycleError("quiver has an oriented cycle")
    return order


def _primitive_positive(vec) -> tuple[int, ...]:
    denom = 1
    for x in vec:
        denom = sympy.ilcm(denom, sympy.Rational(x).q)
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    if sum(ints) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def parse_quiver(text: str) -> Quiver:
    """Parse a preset name, an arrow list ``"1 2 / 2 3"``, or JSON ``{"vertices": n, "arrows": [...]}``."""
    if text is None or not str(text).strip():
        raise EmptyError("empty quiver description")
    text = str(text).strip()
    presets = load_presets()
    key = text.lower()
    if key in presets:
        spec = presets[key]
        return Quiver.build(spec["vertices"], spec["arrows"], name=key)
    if text.startswith("{"):
        try:
            spec = json.loads(text)
            return Quiver.build(spec["vertices"], spec["arrows"], name=spec.get("name"))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise QuiverError(f"bad JSON quiver: {exc}") from exc
    arrows = []
    for chunk in text.split("/"):
        parts = chunk.split()
        if not parts:
            continue
        if len(parts) != 2:
            raise QuiverError(f"arrow {chunk.strip()!r} must be 'j i'")
        try:
            arrows.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise QuiverError(f"arrow {chunk.strip()!r} is not numeric") from exc
    if not arrows:
        raise EmptyError("no arrows given")
    n = max(max(a) for a in arrows)
    if min(min(a) for a in arrows) < 1:
        raise QuiverError("vertex indices are 1-based")
    return Quiver.build(n, arrows)


def load_quiver(source: str) -> Quiver:
    """Resolve a CLI ``-q`` value: preset, path to a file, or inline description."""
    presets = load_presets()
    if source.strip().lower() not in presets and os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return parse_quiver(fh.read())
    return parse_quiver(source)
