"""Text format for tower descriptions, and the JSON form of presentations.

A tower file is line based; ``#`` starts a comment::

    ring Z                      # Z, Q or Fp:<p>; defaults to Z
    stage U:3 1 1 2             # group tag, then the cocharacter
    stage Sp:2 torus            # or "torus" for a regular cocharacter
    connect 2 1 : 1 0 0 ; 0 1 0 # matrix for (l, j), row-major, ';' between rows optional

Group tags are ``U:<n+1>``, ``SU:<n+1>``, ``Sp:<n>`` and ``G2``.  Matrices
have one row per coordinate of stage l and one column per coordinate of
stage j; omitted connections are zero.
"""

from __future__ import annotations

import json
import re

from .errors import SpecError
from .polykernel import parse_ring, parse_token, poly_from_data, poly_to_data
from .rootdata import CentralizerSpec, GroupSpec
from .tower import Presentation, Stage, TowerSpec

_TOKEN = re.compile(r"\S+")


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def _int(tok: str, lineno: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise SpecError(f"expected an integer, got {tok!r}", lineno, col) from None


def parse_tower(text: str, ring_override=None) -> TowerSpec:
    """Parse a tower file; ``ring_override`` replaces the ring line."""
    ring = None
    stages: list[Stage] = []
    raw_conns: list[tuple[int, int, list[list[int]], int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        word, col = toks[0]
        if word == "ring":
            if ring is not None:
                raise SpecError("ring given twice", lineno, col)
            if len(toks) != 2:
                raise SpecError("expected: ring Z|Q|Fp:<p>", lineno, col)
            try:
                ring = parse_ring(toks[1][0])
            except ValueError as exc:
                raise SpecError(str(exc), lineno, toks[1][1]) from None
        elif word == "stage":
            if len(toks) < 3:
                raise SpecError("expected: stage <group> torus|<cocharacter>", lineno, col)
            try:
                g = GroupSpec.parse(toks[1][0])
            except ValueError as exc:
                raise SpecError(str(exc), lineno, toks[1][1]) from None
            if toks[2][0] == "torus":
                if len(toks) != 3:
                    raise SpecError("unexpected text after 'torus'", lineno, toks[3][1])
                stages.append(Stage(g, CentralizerSpec.torus(g)))
                continue
            cochar = [_int(t, lineno, c) for t, c in toks[2:]]
            if len(cochar) != g.ncoords:
                raise SpecError(
                    f"cocharacter for {g.name} needs {g.ncoords} entries, got {len(cochar)}", lineno, toks[2][1]
                )
            stages.append(Stage(g, CentralizerSpec(g, tuple(cochar))))
        elif word == "connect":
            if len(toks) < 4 or toks[3][0] != ":":
                raise SpecError("expected: connect <l> <j> : <entries>", lineno, col)
            l = _int(toks[1][0], lineno, toks[1][1])
            j = _int(toks[2][0], lineno, toks[2][1])
            rows: list[list[int]] = [[]]
            for t, c in toks[4:]:
                for k, part in enumerate(t.split(";")):
                    if k:
                        rows.append([])
                    if part:
                        rows[-1].append(_int(part, lineno, c))
            raw_conns.append((l, j, rows, lineno))
        else:
            raise SpecError(f"unknown directive {word!r}", lineno, col)
    conns = {}
    m = len(stages)
    for l, j, rows, lineno in raw_conns:
        if not 1 <= j < l <= m:
            raise SpecError(f"connection ({l},{j}) needs 1 <= j < l <= {m}", lineno)
        if (l, j) in conns:
            raise SpecError(f"connection ({l},{j}) given twice", lineno)
        nr = stages[l - 1].group.ncoords
        nc = stages[j - 1].group.ncoords
        if len(rows) == 1:
            flat = rows[0]
            if len(flat) != nr * nc:
                raise SpecError(
                    f"connection ({l},{j}) must be {nr}x{nc} ({nr * nc} entries), got {len(flat)} entries", lineno
                )
            rows = [flat[i * nc : (i + 1) * nc] for i in range(nr)]
        elif len(rows) != nr or any(len(r) != nc for r in rows):
            shape = "/".join(str(len(r)) for r in rows)
            raise SpecError(f"connection ({l},{j}) must be {nr}x{nc}, got rows of length {shape}", lineno)
        conns[(l, j)] = rows
    if ring_override is not None:
        ring = ring_override
    return TowerSpec.build(stages, conns, ring if ring is not None else parse_ring("Z"))


def format_tower(spec: TowerSpec) -> str:
    lines = [f"ring {spec.ring.tag}"]
    for s in spec.stages:
        lines.append(f"stage {s.group.tag} {s.centralizer.text}")
    for (l, j), mat in spec.connections:
        body = " ; ".join(" ".join(str(a) for a in row) for row in mat)
        lines.append(f"connect {l} {j} : {body}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# presentations as JSON


def presentation_to_data(p: Presentation) -> dict:
    return {
        "schema": 1,
        "kind": "presentation",
        "ring": p.ring.tag,
        "label": p.label,
        "stages": p.stages,
        "generators": [{"name": v.token, "degree": v.degree} for v in p.generators],
        "definitions": [{"name": v.token, "text": d.render(), "terms": poly_to_data(d)} for v, d in p.definitions],
        "relations": [{"text": r.render(), "terms": poly_to_data(r)} for r in p.relations],
    }


def presentation_from_data(data: dict) -> Presentation:
    if data.get("schema") != 1 or data.get("kind") != "presentation":
        raise SpecError("not a schema-1 presentation document")
    ring = parse_ring(data["ring"])
    weights = {g["name"]: g["degree"] // 2 for g in data["generators"]}
    gens = tuple(parse_token(g["name"], weights) for g in data["generators"])
    defs = tuple(
        (parse_token(d["name"], weights), poly_from_data(ring, d["terms"], weights)) for d in data["definitions"]
    )
    rels = tuple(poly_from_data(ring, r["terms"], weights) for r in data["relations"])
    return Presentation(ring, gens, rels, data["label"], defs, data["stages"])


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
