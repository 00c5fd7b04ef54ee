"""JSON input formats and DOT output.

Element names map to indices in listing order. A ``"quantale"`` reference
is an inline object, a path to a JSON file, or a builtin name:
``2``, ``chain:N``, ``boolean:K``, ``capped:N``, ``extcapped:N``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

from .errors import ParseError
from .multicat import QBA, Promonoidal, validate_promonoidal, validate_qba, validate_preqba
from .quantale import (Quantale, capped_chain, chain_frame, extended_capped_chain, powerset_frame, two,
                       validate_quantale)
from .topo import FinTop, validate_space
from .vcat import MonoidalVCat, VCategory, from_order, underlying_order, validate_monoidal, validate_vcategory

KINDS = ("quantale", "rel", "vcategory", "promonoidal", "qba", "monoid", "space")


def load_json(path: str | Path) -> tuple[dict, bytes]:
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg} at line {e.lineno}") from e
    if not isinstance(doc, dict) or len(doc) != 1:
        raise ParseError("expected an object with exactly one top-level key", witness=sorted(doc)
                         if isinstance(doc, dict) else None)
    return doc, raw


def kind_of(doc: dict) -> str:
    k = next(iter(doc))
    if k not in KINDS:
        raise ParseError(f"unknown top-level key {k!r}", witness=(k,))
    return k


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing field {key!r}", witness=(where, key))
    return obj[key]


_BUILTIN = {"chain": chain_frame, "boolean": powerset_frame, "capped": capped_chain, "extcapped": extended_capped_chain}
_cache: dict = {}


def parse_quantale(ref: Any, base: Path | None = None) -> Quantale:
    if isinstance(ref, str):
        if ref in _cache:
            return _cache[ref]
        if ref == "2":
            q = two()
        elif ":" in ref and ref.split(":")[0] in _BUILTIN:
            name, arg = ref.split(":", 1)
            try:
                q = _BUILTIN[name](int(arg))
            except ValueError as e:
                raise ParseError(f"bad builtin quantale {ref!r}") from e
        else:
            path = (base / ref) if base else Path(ref)
            doc, _ = load_json(path)
            q = parse_quantale(_field(doc, "quantale", "quantale file"), path.parent)
        _cache[ref] = q
        return q
    if isinstance(ref, dict) and "quantale" in ref and len(ref) == 1:
        ref = ref["quantale"]
    names = _field(ref, "elements", "quantale")
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise ParseError("quantale.elements must be a list of strings")
    pos = {n: i for i, n in enumerate(names)}
    leq = _field(ref, "leq", "quantale")
    tensor = [[_elem(pos, v) for v in row] for row in _field(ref, "tensor", "quantale")]
    unit = _elem(pos, _field(ref, "unit", "quantale"))
    return validate_quantale([[bool(v) for v in r] for r in leq], tensor, unit, names=names)


def _elem(pos: dict, v) -> int:
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    if v not in pos:
        raise ParseError(f"unknown element {v!r}", witness=(v,))
    return pos[v]


def _qpos(q: Quantale) -> dict:
    return {n: i for i, n in enumerate(q.names)}


def parse_vcategory(obj: dict, base: Path | None = None) -> VCategory | MonoidalVCat:
    if "vcategory" in obj and len(obj) == 1:
        obj = obj["vcategory"]
    q = parse_quantale(_field(obj, "quantale", "vcategory"), base)
    pos = _qpos(q)
    hom = [[_elem(pos, v) for v in row] for row in _field(obj, "hom", "vcategory")]
    cat = validate_vcategory(q, hom, obj.get("labels"))
    if "mult" in obj:
        return validate_monoidal(cat, obj["mult"], _field(obj, "unit", "vcategory"))
    return cat


def parse_monoid(obj: dict, base: Path | None = None) -> MonoidalVCat:
    """``{"elements", "leq"?, "mult", "unit", "quantale"?}``; order defaults to discrete, V to 2."""
    names = _field(obj, "elements", "monoid")
    pos = {n: i for i, n in enumerate(names)}
    n = len(names)
    q = parse_quantale(obj.get("quantale", "2"), base)
    leq = obj.get("leq", [[a == b for b in range(n)] for a in range(n)])
    mult = [[_elem(pos, v) for v in r] for r in _field(obj, "mult", "monoid")]
    cat = from_order(q, leq, names)
    return validate_monoidal(cat, mult, _elem(pos, _field(obj, "unit", "monoid")))


def parse_promonoidal(obj: dict, base: Path | None = None) -> Promonoidal:
    if "promonoidal" in obj and len(obj) == 1:
        obj = obj["promonoidal"]
    cat = parse_vcategory(_field(obj, "vcategory", "promonoidal"), base)
    if isinstance(cat, MonoidalVCat):
        cat = cat.cat
    pos = _qpos(cat.quantale)
    P = [[[_elem(pos, v) for v in r] for r in pl] for pl in _field(obj, "P", "promonoidal")]
    J = [_elem(pos, v) for v in _field(obj, "J", "promonoidal")]
    return validate_promonoidal(cat, P, J)


def parse_qba(obj: dict, base: Path | None = None) -> QBA:
    pro = parse_promonoidal(obj["promonoidal"] if "promonoidal" in obj else obj, base)
    rhd, lhd = _field(obj, "rhd", "qba"), _field(obj, "lhd", "qba")
    if obj.get("unit") is None:
        return validate_preqba(pro, rhd, lhd)
    return validate_qba(pro, rhd, lhd, obj["unit"])


def parse_space(obj: dict) -> FinTop:
    n = _field(obj, "points", "space")
    opens = _field(obj, "opens", "space")
    if not isinstance(n, int) or not isinstance(opens, list):
        raise ParseError("space needs an integer point count and a list of opens")
    return validate_space(n, opens)


def parse(doc: dict, base: Path | None = None):
    k = kind_of(doc)
    body = doc[k]
    if k == "quantale":
        return k, parse_quantale(body, base)
    if k == "vcategory":
        return k, parse_vcategory(body, base)
    if k == "monoid":
        return k, parse_monoid(body, base)
    if k == "promonoidal":
        return k, parse_promonoidal(body, base)
    if k == "qba":
        return k, parse_qba(body, base)
    if k == "space":
        return k, parse_space(body)
    if k == "rel":
        from .vmat import VRelation

        q = parse_quantale(_field(body, "quantale", "rel"), base)
        pos = _qpos(q)
        rows = [[_elem(pos, v) for v in r] for r in _field(body, "rows", "rel")]
        return k, VRelation.of(q, rows, body.get("dst_size"))
    raise ParseError(f"unsupported kind {k}")


# ---------------------------------------------------------------- output


def quantale_to_dict(q: Quantale) -> dict:
    return {"elements": list(q.names), "leq": [list(r) for r in q.leq],
            "tensor": [[q.name(v) for v in r] for r in q.tensor], "unit": q.name(q.unit)}


def vcategory_to_dict(x: VCategory) -> dict:
    q = x.quantale
    return {"labels": [x.label(i) for i in x.points], "hom": [[q.name(v) for v in r] for r in x.hom]}


def order_dot(leq: Sequence[Sequence[bool]], labels: Sequence[str], highlight: Sequence[int] = (),
              name: str = "G") -> str:
    """Hasse diagram of a preorder; highlighted nodes are drawn filled."""
    n = len(leq)
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    hi = set(highlight)
    for p in range(n):
        style = ', style=filled, fillcolor="lightblue"' if p in hi else ""
        lines.append(f'  n{p} [label="{labels[p]}"{style}];')
    for p in range(n):
        for r in range(n):
            if p != r and leq[p][r] and not leq[r][p] and not any(
                    s not in (p, r) and leq[p][s] and leq[s][r] and not leq[s][p] and not leq[r][s]
                    for s in range(n)):
                lines.append(f"  n{p} -> n{r};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def vcategory_dot(x: VCategory, highlight: Sequence[int] = (), name: str = "G") -> str:
    return order_dot(underlying_order(x), [x.label(i) for i in x.points], highlight, name)
