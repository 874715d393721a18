"""Linear extensions, tropical graphs, tropical images and stable sums."""

from __future__ import annotations

import random
from typing import Any, Sequence

from .exterior import (
    ExteriorVector,
    GroundSet,
    TropMatrix,
    all_subsets,
    bits,
    dot,
    hodge_star,
    row_wedge,
    subsets_of_size,
    wedge,
)
from .matroid import _copies
from .plucker import (
    PluckerVector,
    cocircuits,
    contains_point,
    dual,
    minor_project,
)
from .semifield import BOOLEAN, MAXPLUS


def _form_on(phi: ExteriorVector, ground: GroundSet) -> ExteriorVector:
    if phi.grade != 1:
        raise ValueError("a linear form is a grade-1 vector on the dual basis")
    return phi.embed(ground)


def linear_extension(w: ExteriorVector, phi: ExteriorVector, p: Any = "p"
                     ) -> PluckerVector:
    """``(w ^ e_p) . star(phi + x_p)`` on ``E + p``."""
    if phi.ground != w.ground or phi.semifield is not w.semifield:
        raise ValueError("form must live on the ground set of w")
    sf = w.semifield
    ground = w.ground.disjoint_union(GroundSet([p]))
    pbit = 1 << len(w.ground)
    w_ext = wedge(w.embed(ground), ExteriorVector.unit(sf, ground, pbit))
    form = _form_on(phi, ground) + ExteriorVector.unit(sf, ground, pbit)
    return PluckerVector.trusted(dot(w_ext, hodge_star(form)))


def _check_graph_spec(w: ExteriorVector, A: TropMatrix) -> GroundSet:
    if A.cols != w.ground:
        raise ValueError("matrix columns must be the ground set of w")
    if A.semifield is not w.semifield:
        raise ValueError("matrix and vector live over different semifields")
    return w.ground.disjoint_union(A.rows)


def graph_extension(w: ExteriorVector, A: TropMatrix) -> PluckerVector:
    """Tropical graph ``g(w, A)`` on ``E + F``.

    Unfolding the iterated dot products gives
    ``star(star_E w ^ (rho_1 + y_1) ^ ... ^ (rho_m + y_m))``, which is what
    is computed.
    """
    ground = _check_graph_spec(w, A)
    sf = w.semifield
    n = len(w.ground)
    acc = hodge_star(w).embed(ground)
    for j in range(len(A.rows)):
        form = A.row_form(j, ground) + ExteriorVector.unit(sf, ground, 1 << (n + j))
        acc = wedge(acc, form)
    return PluckerVector.trusted(hodge_star(acc))


def graph_by_definition(w: ExteriorVector, A: TropMatrix) -> ExteriorVector:
    """``(w ^ f_F) . star(rho_1 + y_1) . ... . star(rho_m + y_m)`` verbatim."""
    ground = _check_graph_spec(w, A)
    sf = w.semifield
    n = len(w.ground)
    fF = ExteriorVector.unit(sf, ground, ground.full & ~w.ground.full)
    acc = wedge(w.embed(ground), fF)
    for j in range(len(A.rows)):
        form = A.row_form(j, ground) + ExteriorVector.unit(sf, ground, 1 << (n + j))
        acc = dot(acc, hodge_star(form))
    return acc


def graph_by_extensions(w: ExteriorVector, A: TropMatrix,
                        order: Sequence[int] | None = None) -> PluckerVector:
    """The tropical graph as iterated linear extensions, rows in ``order``.

    The result is read back on ``E + F`` in the standard label order.
    """
    order = list(range(len(A.rows))) if order is None else list(order)
    ground = _check_graph_spec(w, A)
    z = w
    for j in order:
        phi = A.row_form(j).embed(z.ground)
        z = linear_extension(z, phi, A.rows.labels[j])
    return PluckerVector.trusted(z.embed(ground))


def tropical_image(w: ExteriorVector, A: TropMatrix) -> PluckerVector:
    """``trop im_A(L_w)``: the projection of the tropical graph onto ``F``.

    Row labels may repeat column labels (an endomorphism of ``S^E``); the
    graph is then built on renamed rows and the result renamed back.
    """
    rows = A.rows
    if set(rows.labels) & set(w.ground.labels):
        s = "~"
        while set(rows.with_suffix(s).labels) & set(w.ground.labels):
            s += "~"
        A = TropMatrix(A.semifield, rows.with_suffix(s), A.cols, A.entries)
    g = graph_extension(w, A)
    F = g.ground.full & ~w.ground.full
    z = minor_project(g, F)
    return z if z.ground == rows else PluckerVector.trusted(z.relabel(rows))


def image_by_minors(w: ExteriorVector, A: TropMatrix) -> PluckerVector:
    """Closed form ``z_J = sum_I tropdet(A_{J,I}) w_{I u K}``.

    ``K`` runs over subsets of ``E`` by size, then mask order; the first
    ``K`` giving a nonzero vector is a basis of the contraction of the graph
    to ``E``.  The minors come from wedges of row forms.  Independent of
    :func:`graph_extension`.
    """
    if A.cols != w.ground or A.semifield is not w.semifield:
        raise ValueError("matrix columns must be the ground set of w")
    sf = w.semifield
    add, mul = sf.add_nonzero, sf.mul_nonzero
    full = w.ground.full
    d = w.grade
    m = len(A.rows)
    wc = w.coords
    rows_by_size: dict[int, list[tuple[int, dict]]] = {}
    for k in range(d + 1):
        for K in subsets_of_size(full, k):
            size = d - k
            if size > m:
                continue
            if size not in rows_by_size:
                rows_by_size[size] = [(J, row_wedge(A, J).coords)
                                      for J in subsets_of_size((1 << m) - 1, size)]
            coords = {}
            for J, minors in rows_by_size[size]:
                acc = None
                for I, det in minors.items():
                    if I & K:
                        continue
                    c = wc.get(I | K)
                    if c is None:
                        continue
                    t = mul(det, c)
                    acc = t if acc is None else add(acc, t)
                if acc is not None:
                    coords[J] = acc
            if coords:
                return PluckerVector(sf, A.rows, size, coords, check=False)
    raise AssertionError("closed form vanished for every K; w is not Pluecker")


def image_rank(w: ExteriorVector, A: TropMatrix) -> int:
    return tropical_image(w, A).rank


def stiefel(A: TropMatrix) -> PluckerVector:
    """Image of the whole space ``S^E``: the Stiefel tropical linear space."""
    top = ExteriorVector.unit(A.semifield, A.cols, A.cols.full)
    return tropical_image(top, A)


# ---------------------------------------------------------------- stable sum


def two_copies(ground: GroundSet) -> tuple[GroundSet, GroundSet]:
    return _copies(ground)


def direct_sum(w: ExteriorVector, z: ExteriorVector,
               grounds: tuple[GroundSet, GroundSet] | None = None) -> PluckerVector:
    """``w (+) z`` on two disjoint copies of the ground set(s)."""
    if w.semifield is not z.semifield:
        raise ValueError("semifield mismatch")
    g1, g2 = grounds or (w.ground, z.ground)
    both = g1.disjoint_union(g2)
    return PluckerVector.trusted(
        wedge(w.relabel(g1).embed(both), z.relabel(g2).embed(both))
    )


def addition_matrix(semifield, ground: GroundSet,
                    copies: tuple[GroundSet, GroundSet]) -> TropMatrix:
    """``A_+ = [I I]`` from ``E' + E''`` to ``E``."""
    n = len(ground)
    z, o = semifield.zero, semifield.one
    cols = copies[0].disjoint_union(copies[1])
    rows = [[o if i == j or i == j + n else z for i in range(2 * n)]
            for j in range(n)]
    return TropMatrix(semifield, ground, cols, rows)


def stable_sum(w: ExteriorVector, z: ExteriorVector) -> PluckerVector:
    """Tropical image of ``L_w (+) L_z`` under the addition map."""
    if w.ground != z.ground:
        raise ValueError("stable sum needs a common ground set")
    copies = two_copies(w.ground)
    s = direct_sum(w, z, copies)
    return tropical_image(s, addition_matrix(w.semifield, w.ground, copies))


def stable_sum_by_minors(w: ExteriorVector, z: ExteriorVector) -> PluckerVector:
    copies = two_copies(w.ground)
    s = direct_sum(w, z, copies)
    return image_by_minors(s, addition_matrix(w.semifield, w.ground, copies))


def stable_intersection(w: ExteriorVector, z: ExteriorVector) -> PluckerVector:
    """``dual(stable_sum(dual w, dual z))``."""
    return dual(stable_sum(dual(w), dual(z)))


# ---------------------------------------------------------------- point sets


def span_point(gens: Sequence[ExteriorVector], scalars: Sequence[Any]) -> ExteriorVector:
    """``sum_k c_k v_k`` for points ``v_k``."""
    acc = ExteriorVector.zero(gens[0].semifield, gens[0].ground, 1)
    for v, c in zip(gens, scalars):
        acc = acc + v.scale(c)
    return acc


def all_points(semifield, ground: GroundSet) -> list[ExteriorVector]:
    """Every point of ``B^E`` (Boolean only)."""
    if semifield is not BOOLEAN:
        raise ValueError("only the Boolean semifield has finitely many points")
    return [ExteriorVector(BOOLEAN, ground, 1, {1 << i: 1 for i in bits(m)},
                           check=False) for m in all_subsets(ground.full)]


def random_scalar(rng: random.Random, low: int = -5, high: int = 5,
                  zero_weight: float = 0.2):
    if rng.random() < zero_weight:
        return MAXPLUS.zero
    return rng.randint(low, high)


def sample_points(w: ExteriorVector, samples: int = 200,
                  rng: random.Random | None = None) -> list[ExteriorVector]:
    """Points of ``L_w``: all of them over ``B``; cocircuits plus random
    combinations of cocircuits over max-plus."""
    if w.semifield is BOOLEAN:
        return [v for v in all_points(BOOLEAN, w.ground) if contains_point(w, v)]
    rng = rng or random.Random(0)
    gens = cocircuits(w)
    pts = list(gens)
    if not gens:
        return [ExteriorVector.zero(w.semifield, w.ground, 1)]
    for _ in range(samples):
        pts.append(span_point(gens, [random_scalar(rng) for _ in gens]))
    return pts


def set_image_points(w: ExteriorVector, A: TropMatrix, samples: int = 200,
                     rng: random.Random | None = None) -> list[ExteriorVector]:
    """``A v`` for points ``v`` of ``L_w`` from :func:`sample_points`."""
    return [A.apply(v) for v in sample_points(w, samples, rng)]


def graph_point(v: ExteriorVector, A: TropMatrix) -> ExteriorVector:
    """``v + sum_j rho_j(v) f_j`` on ``E + F``."""
    ground = v.ground.disjoint_union(A.rows)
    return v.embed(ground) + A.apply(v).embed(ground)


__all__ = [
    "linear_extension", "graph_extension", "graph_by_definition",
    "graph_by_extensions", "tropical_image", "image_by_minors", "image_rank",
    "stiefel", "stable_sum", "stable_sum_by_minors", "stable_intersection",
    "addition_matrix", "direct_sum", "two_copies", "set_image_points",
    "sample_points", "graph_point", "span_point", "all_points",
]
