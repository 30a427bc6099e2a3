"""Acceptance criteria, runnable from ``cambrian selftest`` and from pytest.

Each criterion builds fresh groups (so memo tables do not hide cost),
returns ``(passed, detail)``, and never raises for an ordinary failure.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional

from .coxeter import CoxeterGroup, GroupElement, Word
from .fan import cambrian_basis, fiber_via_cone
from .modules import (
    PreprojectiveIndex,
    module_category,
    removed_modules,
    torsion_pair_for_sortable,
)
from .quiver import parse_quiver
from .sortable import (
    BOUNDED,
    DOES_NOT_EXIST,
    FOUND,
    UNBOUNDED,
    antisortable,
    c_sortable_elements,
    fiber,
    is_bounded,
    is_fiber_maximal,
    layer_roots,
    leftmost_word,
    pi_c,
    pi_c_oracle,
)


@dataclass
class Outcome:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name} ({self.seconds:.2f}s): {self.detail}"

    def to_json(self) -> dict:
        # no timings here: the JSON report must be byte-identical across runs
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def group(name: str) -> CoxeterGroup:
    return CoxeterGroup(parse_quiver(name))


def brute_force_leftmost(W: CoxeterGroup, w: GroupElement, prefix_len: int) -> Optional[tuple[int, ...]]:
    """Lexicographically smallest position tuple in the first ``prefix_len`` letters of c^inf
    spelling a reduced word for ``w``.  Depth-first search over reduced subwords only."""
    target = W.length(w)
    n = W.n

    def search(start, depth, prod, chosen):
        if depth == target:
            return tuple(chosen) if prod == w else None
        for pos in range(start, prefix_len - (target - depth) + 1):
            letter = pos % n + 1
            if W.right_descent(prod, letter):
                continue
            chosen.append(pos + 1)
            found = search(pos + 1, depth + 1, W.right_mul(prod, letter), chosen)
            chosen.pop()
            if found is not None:
                return found
        return None

    return search(0, 0, W.identity, [])


# -- criteria -------------------------------------------------------------------


def check_pi_oracle():
    start = time.perf_counter()
    counts = []
    for name in ("a2", "a3", "d4"):
        W = group(name)
        elements = W.all_elements()
        sortables = c_sortable_elements(W)
        for w in elements:
            if pi_c(W, w) != pi_c_oracle(W, w, sortables):
                return False, f"{name}: mismatch at {W.reduced_word(w)}"
        counts.append(len(elements))
    elapsed = time.perf_counter() - start
    ok = counts == [6, 24, 192] and elapsed < 5.0
    return ok, f"agree on {counts} elements" + ("" if elapsed < 5.0 else f", too slow: {elapsed:.1f}s > 5s")


def check_a2_cone_fiber():
    W = group("a2")
    s2 = W.from_word((2,))
    expected = {s2, W.from_word((2, 1))}
    basis = cambrian_basis(W, s2).as_set()
    by_pi = fiber(W, s2)
    by_pi_bounded = fiber(W, s2, 3)
    by_cone = fiber_via_cone(W, s2, 3)
    ok = basis == {(0, -1), (1, 0)} and by_pi == by_pi_bounded == by_cone == expected
    return ok, f"basis={sorted(basis)}, fiber sizes pi={len(by_pi)} cone={len(by_cone)}"


def check_triangle_leftmost():
    W = group("triangle")
    w = W.from_word((1, 3, 2, 3, 1))
    letters = leftmost_word(W, w).letters
    removed = {idx for idx, _ in removed_modules(W, w)}
    expected = {
        PreprojectiveIndex(0, 1),
        PreprojectiveIndex(0, 2),
        PreprojectiveIndex(0, 3),
        PreprojectiveIndex(1, 2),
        PreprojectiveIndex(2, 1),
    }
    ok = letters == (1, 2, 3, 2, 1) and removed == expected
    return ok, f"leftmost={letters}, removed={sorted(str(i) for i in removed)}"


def check_boundedness():
    Ww = group("w123")
    x = Ww.from_word((1, 2, 3, 2))
    c3 = Ww.power(Ww.coxeter_element(), 3)
    wild = is_bounded(Ww, x).verdict
    below = Ww.weak_leq(x, c3)
    Wt = group("triangle")
    affine = is_bounded(Wt, Wt.from_word((1, 2, 3, 2))).verdict
    ok = wild == BOUNDED and below and affine == UNBOUNDED
    return ok, f"w123: {wild}, x<=c^3: {below}; triangle: {affine}"


def check_antisortable():
    Ww = group("w123")
    found = antisortable(Ww, Ww.from_word((1, 2, 3, 2)))
    ok_wild = found.status == FOUND and found.element == Ww.from_word((1, 2, 3, 2, 1))
    Wt = group("triangle")
    x = Wt.from_word((1, 2, 3, 2))
    missing = antisortable(Wt, x)
    word = (1, 2, 3, 2, 1, 3, 2, 1, 3, 2)
    prefixes_ok = all(
        Wt.is_reduced(word[:k]) and pi_c(Wt, Wt.from_word(word[:k])) == x for k in range(5, 11)
    )
    ok = ok_wild and missing.status == DOES_NOT_EXIST and prefixes_ok
    return ok, f"w123: {found.status}; triangle: {missing.status}; prefixes 5..10 in fiber: {prefixes_ok}"


def check_a3_torsion_pair():
    W = group("a3")
    x = W.from_word((1, 3))
    report = torsion_pair_for_sortable(W, x)
    top = antisortable(W, x)
    ok = (
        set(report["torsion_free"]) == {"(1,0,0)", "(0,0,1)"}
        and set(report["torsion"]) == {"(1,1,0)", "(0,1,0)"}
        and top.element == W.from_word((1, 3, 2, 1))
        and report["passed"]
    )
    return ok, f"F={report['torsion_free']}, T={report['torsion']}, antisortable={report['antisortable']}"


def check_torsion_pairs():
    start = time.perf_counter()
    found = []
    for name, expected in (("a2", 5), ("a3", 14), ("d4", 50)):
        W = group(name)
        sortables = c_sortable_elements(W)
        for x in sortables:
            report = torsion_pair_for_sortable(W, x)
            if not report["passed"]:
                return False, f"{name}: checks failed for {report['sortable']}: {report['checks']}"
        classes = module_category(W.quiver).torsion_free_classes()
        found.append((len(sortables), len(classes)))
        if not (len(sortables) == len(classes) == expected):
            return False, f"{name}: {len(sortables)} sortables vs {len(classes)} classes (want {expected})"
    elapsed = time.perf_counter() - start
    ok = elapsed < 30.0
    return ok, f"counts {found}" + ("" if ok else f", too slow: {elapsed:.1f}s > 30s")


def check_cone_fibers():
    sizes = []
    for name in ("a3", "d4"):
        W = group(name)
        top = max(W.length(w) for w in W.all_elements())
        total = 0
        for x in c_sortable_elements(W):
            a, b = fiber(W, x, top), fiber_via_cone(W, x, top)
            if a != b:
                return False, f"{name}: fibers differ over {W.reduced_word(x)}"
            total += len(a)
        sizes.append(total)
    return sizes == [24, 192], f"fibers partition {sizes} elements"


def check_maximality():
    W = group("a3")
    agree = 0
    for w in W.all_elements():
        top = antisortable(W, pi_c(W, w))
        if is_fiber_maximal(W, w) != (top.status == FOUND and top.element == w):
            return False, f"disagree at {W.reduced_word(w)}"
        agree += 1
    return True, f"certificate matches antisortable on {agree} elements"


def check_properties():
    notes = []
    for name in ("a2", "a3", "d4"):
        W = group(name)
        for w in W.all_elements():
            inv = W.inversion_set(w)
            if W.length(w) != len(inv):
                return False, f"{name}: length != |N(w)|"
            word = W.reduced_word(w)
            if set(layer_roots(W, word)) != inv or W.from_word(word) != w:
                return False, f"{name}: layer roots differ from inversion set"
            for i in range(1, W.n + 1):
                for beta in inv:
                    if W.reflect(i, W.reflect(i, beta)) != beta:
                        return False, "reflection is not an involution"
    notes.append("length/inversions/layers/reflections ok")
    for name in ("a3", "d4"):
        cat = module_category(parse_quiver(name))
        for a in cat.roots:
            if cat.hom(a, a) != 1 or cat.ext(a, a) != 0:
                return False, f"{name}: {a} is not a rigid brick"
            ta = cat.tau(a)
            for b in cat.roots:
                euler = cat.quiver.euler_form(a, b)
                dual = cat.hom(b, ta) if ta is not None else 0
                if cat.hom(a, b) - euler != dual:
                    return False, f"{name}: Euler/AR duality fails at {a},{b}"
    notes.append("Euler form vs AR duality ok")
    for name in ("a2", "a3"):
        W = group(name)
        elements = W.all_elements()
        prefix = W.n * max(W.length(w) for w in elements)
        for w in elements:
            if leftmost_word(W, w).positions != brute_force_leftmost(W, w, prefix):
                return False, f"{name}: leftmost word not minimal at {W.reduced_word(w)}"
    notes.append("leftmost minimality ok")
    return True, "; ".join(notes)


CRITERIA: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("pi-oracle", check_pi_oracle),
    ("a2-cone-fiber", check_a2_cone_fiber),
    ("triangle-leftmost", check_triangle_leftmost),
    ("boundedness", check_boundedness),
    ("antisortable", check_antisortable),
    ("a3-torsion-pair", check_a3_torsion_pair),
    ("torsion-pairs", check_torsion_pairs),
    ("cone-fibers", check_cone_fibers),
    ("maximality", check_maximality),
    ("properties", check_properties),
]


def run_criterion(name: str) -> Outcome:
    func = dict(CRITERIA)[name]
    start = time.perf_counter()
    try:
        passed, detail = func()
    except Exception as exc:  # a crash is a failed criterion, reported by name
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return Outcome(name, bool(passed), detail, time.perf_counter() - start)


def run_all(only: Optional[list[str]] = None) -> list[Outcome]:
    names = [name for name, _ in CRITERIA]
    if only:
        unknown = set(only) - set(names)
        if unknown:
            raise KeyError(f"unknown criteria: {sorted(unknown)}")
        names = [n for n in names if n in only]
    return [run_criterion(n) for n in names]
