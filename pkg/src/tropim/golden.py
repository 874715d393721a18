"""Worked examples with checked-in expected outputs.

Each case computes a JSON-able dict; the runner diffs it against
``golden/<name>.json``.  The expected files are written by hand.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Callable

from .exterior import ExteriorVector, GroundSet, TropMatrix, dot, hodge_star, tropdet, wedge
from .extension import image_by_minors, stable_sum, tropical_image
from .matroid import brylawski_bound_check, cyclic_flats, is_transversal
from .plucker import is_subspace, underlying_matroid, validate
from .semifield import BOOLEAN, MAXPLUS

CASES: dict[str, Callable[[], dict]] = {}


def case(name: str):
    def register(fn):
        CASES[name] = fn
        return fn
    return register


def _sets(v: ExteriorVector) -> list[str]:
    return sorted(v.ground.key(m) for m in v.coords)


@case("u34-example")
def u34_example() -> dict:
    E = GroundSet.range(4)
    w = validate(ExteriorVector.from_sets(BOOLEAN, E, ["123", "124", "134", "234"]))

    def form(*labels):
        return ExteriorVector.from_sets(BOOLEAN, E, labels)

    w1 = dot(w, hodge_star(form("1", "2")))
    w2 = dot(w, hodge_star(form("3", "4")))
    w3 = dot(w, hodge_star(form("1", "2", "3", "4")))
    z = wedge(form("1", "2"), form("3", "4"))
    return {
        "w1": _sets(w1),
        "w2": _sets(w2),
        "w3": _sets(w3),
        "z": _sets(z),
        "z_in_w": is_subspace(validate(z), w),
    }


@case("no-composition")
def no_composition() -> dict:
    mid = GroundSet(["x", "y", "z"])
    A = TropMatrix(BOOLEAN, mid, GroundSet(["a", "b"]), [[1, 1]] * 3)
    B = TropMatrix(BOOLEAN, GroundSet.range(6), mid,
                   [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1], [0, 0, 1]])
    free_b3 = ExteriorVector.unit(BOOLEAN, mid, mid.full)
    free_b2 = ExteriorVector.unit(BOOLEAN, A.cols, A.cols.full)
    inner = tropical_image(free_b2, A)
    outer = tropical_image(inner, B)
    M = underlying_matroid(outer)
    doubled = underlying_matroid(tropical_image(free_b3, B))
    pres = is_transversal(doubled)
    g = M.ground
    return {
        "inner": _sets(inner),
        "rank": M.rank,
        "rank1_cyclic_flats": [list(g.subset(F)) for F, r in cyclic_flats(M) if r == 1],
        "brylawski_bound": brylawski_bound_check(M),
        "transversal": is_transversal(M) is not None,
        "doubled_rank": doubled.rank,
        "doubled_presentation": sorted(
            sorted(e for e, f in pres.edges if f == right) for right in pres.right
        ) if pres else None,
        "closed_form_agrees": image_by_minors(inner, B).projectively_equal(outer),
    }


@case("stable-sum-wedge")
def stable_sum_wedge() -> dict:
    E = GroundSet.range(4)
    w = ExteriorVector.from_sets(BOOLEAN, E, ["1", "2"])
    z = ExteriorVector.from_sets(BOOLEAN, E, ["3", "4"])
    s = stable_sum(validate(w), validate(z))
    return {"stable_sum": _sets(s), "wedge": _sets(wedge(w, z))}


@case("identity-image")
def identity_image() -> dict:
    E = GroundSet.range(3)
    w = validate(ExteriorVector.from_labels(
        MAXPLUS, E, {"12": 0, "13": 1, "23": 3}))
    F = GroundSet(["a", "b", "c"])
    im = tropical_image(w, TropMatrix.identity(MAXPLUS, F, E))
    return {"image": im.to_json(), "fixed": im.relabel(E).projectively_equal(w)}


@case("tropdet-2x2")
def tropdet_2x2() -> dict:
    A = TropMatrix(MAXPLUS, GroundSet(["r1", "r2"]), GroundSet(["c1", "c2"]),
                   [[0, 1], [1, 0]])
    return {"full_minor": MAXPLUS.format(tropdet(A, 3, 3))}


def expected(name: str) -> dict:
    path = resources.files("tropim").joinpath("golden", f"{name}.json")
    return json.loads(path.read_text())


def run_case(name: str) -> dict:
    if name not in CASES:
        raise KeyError(f"unknown golden case {name!r}; known: {sorted(CASES)}")
    got = json.loads(json.dumps(CASES[name]()))
    want = expected(name)
    diffs = [k for k in sorted(set(got) | set(want)) if got.get(k) != want.get(k)]
    return {"case": name, "passed": not diffs, "diffs": {
        k: {"expected": want.get(k), "got": got.get(k)} for k in diffs}}


def run_all() -> list[dict]:
    return [run_case(n) for n in CASES]
