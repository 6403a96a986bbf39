"""JSON definition files for algebras, actions, morphisms and extensions.

Every document is a JSON object with ``"format_version": 1`` and a
``"kind"``.  Scalars are JSON integers or fraction strings such as
``"-3/2"``; floats are rejected.  Wherever an algebra is expected, a
document may give an inline object, ``"corpus:NAME"`` or a path relative to
the referring file.  See ``docs/format.md`` for the schema.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .actions import HomAction, SplitExtension
from .exactlin import GF, QQ, format_scalar, zeros
from .homalg import HomAlgebra, HomMorphism

FORMAT_VERSION = 1

__all__ = [
    "FORMAT_VERSION",
    "FormatError",
    "load_document",
    "load_action",
    "parse_document",
    "dump_document",
    "algebra_to_doc",
    "action_to_doc",
    "morphism_to_doc",
    "split_to_doc",
    "matrix_to_doc",
]


class FormatError(ValueError):
    """Malformed definition file; ``where`` is ``line:col`` or a JSON path."""

    def __init__(self, message: str, where: str = "", source: str = ""):
        self.where = where
        self.source = source
        loc = ":".join(x for x in (source, where) if x)
        super().__init__(f"{loc}: {message}" if loc else message)


class _Ctx:
    def __init__(self, source: str, base: Path | None, resolver):
        self.source = source
        self.base = base
        self.resolver = resolver

    def fail(self, path: str, msg: str):
        raise FormatError(msg, path or "$", self.source)


# ---------------------------------------------------------------------------
# reading
# ---------------------------------------------------------------------------


def _field(ctx, path, tag):
    if tag in (None, "Q"):
        return QQ
    if isinstance(tag, str) and tag.startswith("GF(") and tag.endswith(")"):
        try:
            return GF(int(tag[3:-1]))
        except ValueError as exc:
            ctx.fail(path, str(exc))
    ctx.fail(path, f"unknown field {tag!r}")


def _scalar(ctx, path, x, field):
    if isinstance(x, bool) or isinstance(x, float):
        ctx.fail(path, f"scalars must be integers or fraction strings, got {x!r}")
    if not isinstance(x, (int, str)):
        ctx.fail(path, f"not a scalar: {x!r}")
    try:
        return field(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        ctx.fail(path, f"bad scalar {x!r}: {exc}")


def _int(ctx, path, x, lo=0, hi=None):
    if isinstance(x, bool) or not isinstance(x, int):
        ctx.fail(path, f"expected an integer, got {x!r}")
    if x < lo or (hi is not None and x >= hi):
        ctx.fail(path, f"index {x} out of range")
    return x


def _matrix(ctx, path, rows, shape, field):
    if not isinstance(rows, list) or len(rows) != shape[0]:
        ctx.fail(path, f"expected {shape[0]} rows")
    out = zeros(shape, field)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != shape[1]:
            ctx.fail(f"{path}[{r}]", f"expected {shape[1]} entries")
        for c, x in enumerate(row):
            out[r, c] = _scalar(ctx, f"{path}[{r}][{c}]", x, field)
    return out


def _triples(ctx, path, entries, shape, field):
    """``[[i, j, [coefficients]], ...]`` into a dense tensor."""
    out = zeros(shape, field)
    if not isinstance(entries, list):
        ctx.fail(path, "expected a list of [i, j, coefficients]")
    seen = set()
    for t, e in enumerate(entries):
        p = f"{path}[{t}]"
        if not isinstance(e, list) or len(e) != 3:
            ctx.fail(p, "expected [i, j, coefficients]")
        i = _int(ctx, f"{p}[0]", e[0], 0, shape[0])
        j = _int(ctx, f"{p}[1]", e[1], 0, shape[1])
        if (i, j) in seen:
            ctx.fail(p, f"pair ({i}, {j}) given twice")
        seen.add((i, j))
        if not isinstance(e[2], list) or len(e[2]) != shape[2]:
            ctx.fail(f"{p}[2]", f"expected {shape[2]} coefficients")
        for k, x in enumerate(e[2]):
            out[i, j, k] = _scalar(ctx, f"{p}[2][{k}]", x, field)
    return out


def _need(ctx, path, doc, key):
    if key not in doc:
        ctx.fail(path, f"missing key {key!r}")
    return doc[key]


def _header(ctx, path, doc, kind):
    if not isinstance(doc, dict):
        ctx.fail(path, "expected an object")
    if path == "" or "format_version" in doc:
        v = _need(ctx, path, doc, "format_version")
        if v != FORMAT_VERSION:
            ctx.fail(f"{path}.format_version", f"unsupported format_version {v!r}")
    k = _need(ctx, path, doc, "kind")
    if k != kind:
        ctx.fail(f"{path}.kind", f"expected kind {kind!r}, got {k!r}")


def _algebra(ctx, path, doc) -> HomAlgebra:
    if isinstance(doc, str):
        return ctx.resolver(ctx, path, doc, "algebra")
    _header(ctx, path, doc, "algebra")
    field = _field(ctx, f"{path}.field", doc.get("field", "Q"))
    n = _int(ctx, f"{path}.dim", _need(ctx, path, doc, "dim"))
    labels = doc.get("basis", [f"b{i}" for i in range(n)])
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
        ctx.fail(f"{path}.basis", f"expected {n} label strings")
    if len(set(labels)) != n:
        ctx.fail(f"{path}.basis", "labels must be distinct")
    c = _triples(ctx, f"{path}.brackets", doc.get("brackets", []), (n, n, n), field)
    if "alpha" in doc:
        a = _matrix(ctx, f"{path}.alpha", doc["alpha"], (n, n), field)
    else:
        ctx.fail(path, "missing key 'alpha'")
    name = doc.get("name", "")
    if not isinstance(name, str):
        ctx.fail(f"{path}.name", "name must be a string")
    return HomAlgebra(c, a, field, name, labels)


def _action(ctx, path, doc, actor=None, target=None) -> HomAction:
    if isinstance(doc, str):
        return ctx.resolver(ctx, path, doc, "action")
    _header(ctx, path, doc, "action")
    L = actor if actor is not None else _algebra(ctx, f"{path}.actor", _need(ctx, path, doc, "actor"))
    M = target if target is not None else _algebra(ctx, f"{path}.target", _need(ctx, path, doc, "target"))
    n, p = L.dim, M.dim
    lam = _triples(ctx, f"{path}.lambda", doc.get("lambda", []), (n, p, p), M.field)
    rho = _triples(ctx, f"{path}.rho", doc.get("rho", []), (p, n, p), M.field)
    return HomAction(L, M, lam, rho)


def _morphism(ctx, path, doc) -> HomMorphism:
    if isinstance(doc, str):
        return ctx.resolver(ctx, path, doc, "morphism")
    _header(ctx, path, doc, "morphism")
    src = _algebra(ctx, f"{path}.src", _need(ctx, path, doc, "src"))
    dst = _algebra(ctx, f"{path}.dst", _need(ctx, path, doc, "dst"))
    m = _matrix(ctx, f"{path}.matrix", _need(ctx, path, doc, "matrix"), (dst.dim, src.dim), src.field)
    return HomMorphism(src, dst, m)


def _split(ctx, path, doc) -> SplitExtension:
    _header(ctx, path, doc, "split_extension")
    M = _algebra(ctx, f"{path}.M", _need(ctx, path, doc, "M"))
    B = _algebra(ctx, f"{path}.B", _need(ctx, path, doc, "B"))
    C = _algebra(ctx, f"{path}.C", _need(ctx, path, doc, "C"))
    i = _matrix(ctx, f"{path}.i", _need(ctx, path, doc, "i"), (B.dim, M.dim), B.field)
    pi = _matrix(ctx, f"{path}.pi", _need(ctx, path, doc, "pi"), (C.dim, B.dim), B.field)
    s = _matrix(ctx, f"{path}.s", _need(ctx, path, doc, "s"), (B.dim, C.dim), B.field)
    return SplitExtension(M, B, C, HomMorphism(M, B, i), HomMorphism(B, C, pi), HomMorphism(C, B, s))


def _matrix_doc(ctx, path, doc):
    _header(ctx, path, doc, "matrix")
    field = _field(ctx, f"{path}.field", doc.get("field", "Q"))
    rows = _need(ctx, path, doc, "rows")
    if not isinstance(rows, list) or not rows:
        ctx.fail(f"{path}.rows", "expected a non-empty list of rows")
    width = len(rows[0]) if isinstance(rows[0], list) else -1
    return _matrix(ctx, f"{path}.rows", rows, (len(rows), width), field)


_READERS = {
    "algebra": _algebra,
    "action": _action,
    "morphism": _morphism,
    "split_extension": _split,
    "matrix": _matrix_doc,
}


_TYPES = {
    "algebra": HomAlgebra,
    "action": HomAction,
    "morphism": HomMorphism,
    "split_extension": SplitExtension,
    "matrix": np.ndarray,
}


def _default_resolver(ctx, path, ref, kind):
    if ref.startswith("corpus:"):
        from . import corpus

        try:
            obj = corpus.get(ref[len("corpus:") :])
        except KeyError:
            ctx.fail(path, f"no corpus entry {ref!r}")
    else:
        if ctx.base is None:
            ctx.fail(path, f"cannot resolve file reference {ref!r} without a base directory")
        obj = load_document((ctx.base / ref).resolve())
    if not isinstance(obj, _TYPES[kind]):
        ctx.fail(path, f"{ref!r} is not of kind {kind!r}")
    return obj


def parse_document(text: str, source: str = "", base: Path | None = None, kind: str | None = None, resolver=None) -> Any:
    """Parse a definition document; the result type depends on ``kind``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{exc.lineno}:{exc.colno}", source) from None
    ctx = _Ctx(source, base, resolver or _default_resolver)
    if not isinstance(doc, dict):
        ctx.fail("", "top level must be an object")
    k = doc.get("kind")
    if kind is not None and k != kind:
        ctx.fail(".kind", f"expected kind {kind!r}, got {k!r}")
    if k not in _READERS:
        ctx.fail(".kind", f"unknown kind {k!r}")
    return _READERS[k](ctx, "", doc)


def load_document(path, kind: str | None = None) -> Any:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", "", str(p)) from None
    return parse_document(text, str(p), p.parent, kind)


def load_action(path, actor: HomAlgebra | None = None, target: HomAlgebra | None = None) -> HomAction:
    """Load an action file, optionally supplying the actor and target algebras."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", "", str(p)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{exc.lineno}:{exc.colno}", str(p)) from None
    ctx = _Ctx(str(p), p.parent, _default_resolver)
    if not isinstance(doc, dict):
        ctx.fail("", "top level must be an object")
    return _action(ctx, "", doc, actor, target)


# ---------------------------------------------------------------------------
# writing
# ---------------------------------------------------------------------------


def _s(x) -> str | int:
    t = format_scalar(x)
    return int(t) if "/" not in t else t


def _rows(m) -> list:
    return [[_s(x) for x in row] for row in np.asarray(m, dtype=object)]


def _nonzero_triples(t) -> list:
    out = []
    for i in range(t.shape[0]):
        for j in range(t.shape[1]):
            v = t[i, j]
            if any(x != 0 for x in v):
                out.append([i, j, [_s(x) for x in v]])
    return out


def _with_header(kind: str, body: dict, top: bool) -> dict:
    head = {"format_version": FORMAT_VERSION, "kind": kind} if top else {"kind": kind}
    head.update(body)
    return head


def algebra_to_doc(L: HomAlgebra, top: bool = True) -> dict:
    return _with_header(
        "algebra",
        {
            "name": L.name,
            "field": L.field.name,
            "dim": L.dim,
            "basis": list(L.labels),
            "brackets": _nonzero_triples(L.c),
            "alpha": _rows(L.alpha),
        },
        top,
    )


def action_to_doc(a: HomAction, top: bool = True, refs: dict | None = None) -> dict:
    refs = refs or {}
    return _with_header(
        "action",
        {
            "actor": refs.get("actor") or algebra_to_doc(a.actor, False),
            "target": refs.get("target") or algebra_to_doc(a.target, False),
            "lambda": _nonzero_triples(a.lam),
            "rho": _nonzero_triples(a.rho),
        },
        top,
    )


def morphism_to_doc(f: HomMorphism, top: bool = True, refs: dict | None = None) -> dict:
    refs = refs or {}
    return _with_header(
        "morphism",
        {
            "src": refs.get("src") or algebra_to_doc(f.src, False),
            "dst": refs.get("dst") or algebra_to_doc(f.dst, False),
            "matrix": _rows(f.m),
        },
        top,
    )


def split_to_doc(se: SplitExtension, top: bool = True, refs: dict | None = None) -> dict:
    refs = refs or {}
    return _with_header(
        "split_extension",
        {
            "M": refs.get("M") or algebra_to_doc(se.M, False),
            "B": refs.get("B") or algebra_to_doc(se.B, False),
            "C": refs.get("C") or algebra_to_doc(se.C, False),
            "i": _rows(se.i.m),
            "pi": _rows(se.pi.m),
            "s": _rows(se.s.m),
        },
        top,
    )


def matrix_to_doc(m, field=QQ, top: bool = True) -> dict:
    return _with_header("matrix", {"field": field.name, "rows": _rows(m)}, top)


def dump_document(doc: dict) -> str:
    """Compact-but-readable JSON: one line per bracket entry or matrix row."""
    return _render(doc, 0) + "\n"


def _render(x, depth: int) -> str:
    pad = "  " * (depth + 1)
    end = "  " * depth
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_render(v, depth + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(x, list):
        if not x:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in x) or _flat_entry(x):
            return json.dumps(x, ensure_ascii=False, separators=(", ", ": "))
        items = [pad + _render(v, depth + 1) for v in x]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return json.dumps(x, ensure_ascii=False)


def _flat_entry(x) -> bool:
    # [i, j, [coefficients]]
    return len(x) == 3 and isinstance(x[0], int) and isinstance(x[1], int) and isinstance(x[2], list)
