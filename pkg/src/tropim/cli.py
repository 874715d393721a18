"""Command-line front end: JSON documents in, JSON (or a text summary) out.

Exit status is 0 on success, 1 when the library rejects the input on
mathematical grounds, and 2 when the input cannot be parsed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import golden
from .exterior import ExteriorVector, GroundSet, TropMatrix
from .extension import (
    graph_extension,
    image_by_minors,
    linear_extension,
    set_image_points,
    stable_intersection,
    stable_sum,
    tropical_image,
)
from .lift import (
    FieldVectorSpace,
    PreconditionError,
    coefficient_pool_size,
    generic_lift,
    image_space,
    rescale_to_integers,
    tropicalize_any,
    verify_realizable,
)
from .matroid import (
    BipartiteGraph,
    Matroid,
    MatroidError,
    brylawski_bound_check,
    cyclic_flats,
    induced_matroid,
    is_transversal,
    matroid_union,
    principal_extension,
)
from .plucker import (
    PluckerViolation,
    cocircuits,
    contains_point,
    dual,
    is_subspace,
    minor_intersect,
    minor_project,
    underlying_matroid,
    validate,
)
from .semifield import BOOLEAN, MAXPLUS, DomainError, by_name

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """The request is malformed: bad JSON, missing fields, mixed semifields."""


@dataclass
class Request:
    command: str
    args: argparse.Namespace
    semifield: str | None = None
    diagnostics: list[str] = field(default_factory=list)


# ---------------------------------------------------------------- loading


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _semifield_of(req: Request, doc: Any, path: str):
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    name = doc.get("semifield")
    if name is None:
        raise InputError(f"{path}: missing \"semifield\" field")
    try:
        sf = by_name(name)
    except (KeyError, ValueError):
        raise InputError(f"{path}: unknown semifield {name!r}") from None
    if req.semifield is None:
        req.semifield = sf.name
    elif req.semifield != sf.name:
        raise InputError(
            f"{path}: semifield {sf.name!r} differs from {req.semifield!r}; "
            "use the pushforward command to convert")
    return sf


def _parsing(path: str, fn: Callable[[], Any]) -> Any:
    try:
        return fn()
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError, IndexError) as exc:
        detail = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        raise InputError(f"{path}: {detail}") from None


def load_vector(req: Request, path: str) -> ExteriorVector:
    doc = _read_json(path)
    sf = _semifield_of(req, doc, path)
    return _parsing(path, lambda: ExteriorVector.from_json(doc, sf))


def load_plucker(req: Request, path: str):
    return validate(load_vector(req, path))


def load_matrix(req: Request, path: str) -> TropMatrix:
    doc = _read_json(path)
    sf = _semifield_of(req, doc, path)
    return _parsing(path, lambda: TropMatrix.from_json(doc, sf))


def load_matroid(path: str) -> Matroid:
    doc = _read_json(path)
    if isinstance(doc, dict) and "coords" in doc:
        raise InputError(f"{path}: this is a vector; run the matroid command first")
    try:
        return Matroid.from_json(doc)
    except MatroidError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def load_graph(req: Request, path: str) -> BipartiteGraph:
    doc = _read_json(path)
    if isinstance(doc, dict) and "entries" in doc:
        A = load_matrix_doc(req, doc, path)
        return BipartiteGraph.from_matrix(A)
    return _parsing(path, lambda: BipartiteGraph.from_json(doc))


def load_matrix_doc(req: Request, doc: Any, path: str) -> TropMatrix:
    sf = _semifield_of(req, doc, path)
    return _parsing(path, lambda: TropMatrix.from_json(doc, sf))


def load_field_space(path: str) -> FieldVectorSpace:
    doc = _read_json(path)
    return _parsing(path, lambda: FieldVectorSpace.from_json(doc))


def parse_subset(ground: GroundSet, text: str) -> int:
    labels = [s.strip() for s in text.split(",") if s.strip()]
    try:
        return ground.mask(labels)
    except ValueError as exc:
        raise InputError(f"--subset: {exc}") from None


# ---------------------------------------------------------------- commands


def _vector_result(v: ExteriorVector) -> dict:
    return v.to_json()


def cmd_validate(req: Request) -> dict:
    w = load_plucker(req, req.args.space)
    return {"valid": True, "rank": w.rank, "support_size": len(w.coords),
            "normalized": w.normalize().to_json()}


def cmd_member(req: Request) -> dict:
    w = load_plucker(req, req.args.space)
    v = load_vector(req, req.args.point)
    return {"member": contains_point(w, v)}


def cmd_cocircuits(req: Request) -> dict:
    w = load_plucker(req, req.args.space)
    return {"cocircuits": [c.to_json() for c in cocircuits(w)]}


def cmd_subspace(req: Request) -> dict:
    w = load_plucker(req, req.args.space)
    z = load_plucker(req, req.args.other)
    return {"subspace": is_subspace(w, z)}


def cmd_dual(req: Request) -> dict:
    return _vector_result(dual(load_plucker(req, req.args.space)))


def cmd_project(req: Request) -> dict:
    w = load_plucker(req, req.args.space)
    return _vector_result(minor_project(w, parse_subset(w.ground, req.args.subset)))


def cmd_intersect(req: Request) -> dict:
    w = load_plucker(req, req.args.space)
    return _vector_result(minor_intersect(w, parse_subset(w.ground, req.args.subset)))


def cmd_matroid(req: Request) -> dict:
    M = underlying_matroid(load_plucker(req, req.args.space))
    g = M.ground
    return {**M.to_json(), "rank": M.rank,
            "loops": list(g.subset(M.loops())), "coloops": list(g.subset(M.coloops()))}


def cmd_pushforward(req: Request) -> dict:
    if req.args.matrix:
        A = load_matrix(req, req.args.matrix)
        return TropMatrix(BOOLEAN, A.rows, A.cols,
                          [[A.semifield.push_forward(a) for a in r]
                           for r in A.entries]).to_json()
    return load_vector(req, req.args.space).push_forward().to_json()


def cmd_induce(req: Request) -> dict:
    M = load_matroid(req.args.matroid)
    G = load_graph(req, req.args.graph)
    return induced_matroid(M, G).to_json()


def cmd_union(req: Request) -> dict:
    if len(req.args.matroid) != 2:
        raise InputError("union takes exactly two --matroid arguments")
    first, second = (load_matroid(p) for p in req.args.matroid)
    return matroid_union(first, second).to_json()


def cmd_principal_ext(req: Request) -> dict:
    M = load_matroid(req.args.matroid)
    return principal_extension(M, parse_subset(M.ground, req.args.subset),
                               req.args.label).to_json()


def _matroid_or_space(req: Request) -> Matroid:
    if req.args.matroid:
        return load_matroid(req.args.matroid)
    if req.args.space:
        return underlying_matroid(load_plucker(req, req.args.space))
    raise InputError("give --matroid or --space")


def cmd_cyclic_flats(req: Request) -> dict:
    M = _matroid_or_space(req)
    g = M.ground
    return {"cyclic_flats": [{"flat": list(g.subset(F)), "rank": r}
                             for F, r in cyclic_flats(M)],
            "brylawski_bound": brylawski_bound_check(M)}


def cmd_transversal(req: Request) -> dict:
    M = _matroid_or_space(req)
    G = is_transversal(M, max_size=req.args.max_size)
    return {"transversal": G is not None,
            "presentation": G.to_json() if G is not None else None,
            "brylawski_bound": brylawski_bound_check(M)}


def cmd_extend(req: Request) -> dict:
    w = load_plucker(req, req.args.space)
    phi = load_vector(req, req.args.form)
    return _vector_result(linear_extension(w, phi, req.args.label))


def cmd_graph(req: Request) -> dict:
    w = load_plucker(req, req.args.space)
    A = load_matrix(req, req.args.matrix)
    return _vector_result(graph_extension(w, A))


def cmd_image(req: Request) -> dict:
    w = load_plucker(req, req.args.space)
    A = load_matrix(req, req.args.matrix)
    z = image_by_minors(w, A) if req.args.method == "minors" else tropical_image(w, A)
    if not req.args.check_points:
        return _vector_result(z)
    rng = random.Random(_need_seed(req))
    pts = set_image_points(w, A, req.args.samples, rng)
    bad = [p.to_json() for p in pts if not contains_point(z, p)]
    return {"image": z.to_json(), "points_checked": len(pts), "points_outside": bad}


def cmd_stable_sum(req: Request) -> dict:
    w = load_plucker(req, req.args.space)
    z = load_plucker(req, req.args.other)
    return _vector_result(stable_sum(w, z))


def cmd_stable_intersect(req: Request) -> dict:
    w = load_plucker(req, req.args.space)
    z = load_plucker(req, req.args.other)
    return _vector_result(stable_intersection(w, z))


def _need_seed(req: Request) -> int:
    if req.args.seed is None:
        raise InputError(f"{req.command} draws random numbers and needs --seed")
    return req.args.seed


def _rescaled(req: Request, A: TropMatrix) -> tuple[TropMatrix, int]:
    A2, k = rescale_to_integers(A)
    if k != 1 and not req.args.rescale:
        raise DomainError("matrix has non-integer entries; pass --rescale to "
                          "multiply every exponent by their common denominator")
    if k != 1:
        req.diagnostics.append(f"exponents multiplied by {k}")
    return A2, k


def cmd_lift(req: Request) -> dict:
    seed = _need_seed(req)
    A, k = _rescaled(req, load_matrix(req, req.args.matrix))
    d = req.args.rank if req.args.rank is not None else min(len(A.rows), len(A.cols))
    pool = coefficient_pool_size(len(A.cols), len(A.rows), d)
    delta = generic_lift(A, random.Random(seed), pool)
    out = {"lift": delta.to_json(), "scale": k, "pool": pool}
    if req.args.field_space:
        L = load_field_space(req.args.field_space)
        if k != 1:
            L = _scale_space(L, k)
        img = image_space(L, delta)
        out["image_space"] = img.to_json()
        out["tropicalization"] = tropicalize_any(img).to_json()
    return out


def _scale_space(L: FieldVectorSpace, k: int) -> FieldVectorSpace:
    return FieldVectorSpace(L.ground, tuple(tuple(p.substitute_power(k) for p in r)
                                            for r in L.rows))


def _scale_vector(w: ExteriorVector, k) -> ExteriorVector:
    if w.semifield is BOOLEAN or k == 1:
        return w
    return ExteriorVector(MAXPLUS, w.ground, w.grade,
                          {m: MAXPLUS.coerce(Fraction(a) * k) for m, a in w.coords.items()},
                          check=False)


def cmd_realize_check(req: Request) -> dict:
    seed = _need_seed(req)
    w = load_plucker(req, req.args.space)
    A, k = _rescaled(req, load_matrix(req, req.args.matrix))
    L = load_field_space(req.args.field_space)
    if k != 1:
        w, L = _scale_vector(w, k), _scale_space(L, k)
    try:
        verdict = verify_realizable(w, A, L, attempts=req.args.attempts, seed=seed)
    except PreconditionError as exc:
        raise DomainError(str(exc)) from None
    doc = verdict.to_json()
    doc["scale"] = k
    return doc


def cmd_golden(req: Request) -> dict:
    if req.args.action == "list":
        return {"cases": sorted(golden.CASES)}
    target = req.args.name or "all"
    if target == "all":
        reports = golden.run_all()
    else:
        try:
            reports = [golden.run_case(target)]
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    if not all(r["passed"] for r in reports):
        req.diagnostics.append("golden diff failures")
    return {"passed": all(r["passed"] for r in reports), "reports": reports}


# ---------------------------------------------------------------- parser


COMMANDS: dict[str, tuple[Callable[[Request], dict], str]] = {
    "validate": (cmd_validate, "check the tropical Pluecker relations"),
    "member": (cmd_member, "is a point on the tropical linear space?"),
    "cocircuits": (cmd_cocircuits, "valuated cocircuits of a Pluecker vector"),
    "subspace": (cmd_subspace, "is L_w contained in L_z?"),
    "dual": (cmd_dual, "Pluecker vector of the orthogonal dual"),
    "project": (cmd_project, "coordinate projection onto a subset"),
    "intersect": (cmd_intersect, "intersection with a coordinate subspace"),
    "matroid": (cmd_matroid, "underlying matroid of a Pluecker vector"),
    "pushforward": (cmd_pushforward, "push a max-plus document to the Boolean semifield"),
    "induce": (cmd_induce, "matroid induced through a bipartite graph"),
    "union": (cmd_union, "union of two matroids"),
    "principal-ext": (cmd_principal_ext, "principal extension on a subset"),
    "cyclic-flats": (cmd_cyclic_flats, "cyclic flats and the Brylawski bound"),
    "transversal": (cmd_transversal, "search for a transversal presentation"),
    "extend": (cmd_extend, "linear extension by a form"),
    "graph": (cmd_graph, "tropical graph of a matrix on L_w"),
    "image": (cmd_image, "tropical image of L_w under a matrix"),
    "stable-sum": (cmd_stable_sum, "stable sum of two linear spaces"),
    "stable-intersect": (cmd_stable_intersect, "stable intersection of two linear spaces"),
    "lift": (cmd_lift, "generic lift of a tropical matrix"),
    "realize-check": (cmd_realize_check, "compare a tropical image with a lifted image"),
    "golden": (cmd_golden, "run the worked-example corpus"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _emit_error(None, "usage", message, "json")
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true",
                        help="include wall-clock timing (output is then not reproducible)")
    common.add_argument("--seed", type=int)
    common.add_argument("--attempts", type=int, default=5)
    common.add_argument("--samples", type=int, default=200)

    p = _Parser(prog="tropim", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    spec = {name: sub.add_parser(name, help=h, parents=[common])
            for name, (_, h) in COMMANDS.items()}

    for name in ("validate", "member", "cocircuits", "subspace", "dual", "project",
                 "intersect", "matroid", "extend", "graph", "image", "stable-sum",
                 "stable-intersect", "realize-check"):
        spec[name].add_argument("--space", required=True, help="Pluecker vector JSON or -")
    spec["member"].add_argument("--point", required=True)
    for name in ("subspace", "stable-sum", "stable-intersect"):
        spec[name].add_argument("--other", required=True)
    for name in ("project", "intersect"):
        spec[name].add_argument("--subset", required=True, help="comma-separated labels")
    pf = spec["pushforward"].add_mutually_exclusive_group(required=True)
    pf.add_argument("--space")
    pf.add_argument("--matrix")
    spec["induce"].add_argument("--matroid", required=True)
    spec["induce"].add_argument("--graph", required=True,
                                help="bipartite graph JSON, or a matrix (its support is used)")
    spec["union"].add_argument("--matroid", required=True, action="append")
    spec["principal-ext"].add_argument("--matroid", required=True)
    spec["principal-ext"].add_argument("--subset", required=True)
    spec["principal-ext"].add_argument("--label", default="p")
    for name in ("cyclic-flats", "transversal"):
        g = spec[name].add_mutually_exclusive_group(required=True)
        g.add_argument("--matroid")
        g.add_argument("--space")
    spec["transversal"].add_argument("--max-size", type=int, default=8)
    spec["extend"].add_argument("--form", required=True)
    spec["extend"].add_argument("--label", default="p")
    for name in ("graph", "image", "lift", "realize-check"):
        spec[name].add_argument("--matrix", required=True)
    spec["image"].add_argument("--method", choices=("graph", "minors"), default="graph")
    spec["image"].add_argument("--check-points", action="store_true",
                               help="sample points of A.L_w and test them on the image")
    for name in ("lift", "realize-check"):
        spec[name].add_argument("--rescale", action="store_true")
    spec["lift"].add_argument("--field-space")
    spec["lift"].add_argument("--rank", type=int)
    spec["realize-check"].add_argument("--field-space", required=True)
    spec["golden"].add_argument("action", choices=("list", "run"))
    spec["golden"].add_argument("name", nargs="?")
    return p


# ---------------------------------------------------------------- output


def _dump(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def _text(doc: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(doc, dict) and "coords" in doc and "ground_set" in doc:
        try:
            return [pad + repr(ExteriorVector.from_json(doc))]
        except (KeyError, ValueError):
            pass
    if isinstance(doc, dict):
        if not doc:
            return [pad + "{}"]
        out = []
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.extend(_text(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {json.dumps(v)}")
        return out
    if isinstance(doc, list):
        out = []
        for item in doc:
            lines = _text(item, indent + 1)
            out.append(pad + "- " + lines[0].lstrip() if lines else pad + "-")
            out.extend(lines[1:])
        return out
    return [pad + json.dumps(doc)]


def _emit_error(command: str | None, kind: str, message: str, fmt: str,
                extra: dict | None = None) -> None:
    err = {"type": kind, "message": message, **(extra or {})}
    if fmt == "text":
        print(f"error ({kind}): {message}")
    else:
        print(_dump({"command": command, "ok": False, "error": err}))


def _violation_details(exc: PluckerViolation) -> dict:
    if exc.triple is None:
        return {"relation": None}
    J, K, j = exc.triple
    g = exc.vector.ground
    return {"relation": {"J": list(g.subset(J)), "K": list(g.subset(K)),
                         "j": g.labels[j]}}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    req = Request(args.command, args)
    handler = COMMANDS[args.command][0]
    start = time.perf_counter()
    try:
        result = handler(req)
    except InputError as exc:
        _emit_error(req.command, "input", str(exc), args.format)
        return EXIT_INPUT
    except PluckerViolation as exc:
        _emit_error(req.command, "pluecker", str(exc), args.format,
                    _violation_details(exc))
        return EXIT_DOMAIN
    except (DomainError, MatroidError, ValueError, ArithmeticError) as exc:
        _emit_error(req.command, "domain", str(exc), args.format)
        return EXIT_DOMAIN
    envelope = {"command": req.command, "ok": True}
    if req.semifield:
        envelope["semifield"] = req.semifield
    envelope["result"] = result
    envelope["diagnostics"] = req.diagnostics
    if args.timing:
        envelope["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    if args.format == "text":
        print("\n".join(_text(result)))
        for d in req.diagnostics:
            print(f"note: {d}")
    else:
        print(_dump(envelope))
    if req.command == "golden" and not result.get("passed", True):
        return EXIT_DOMAIN
    return EXIT_OK


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
