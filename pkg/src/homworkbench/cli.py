"""JSON documents in, deterministic reports out.

Usage::

    homworkbench check FILE [--checks id,id] [--all-witnesses] [--format json|text]
    homworkbench construct ID FILE [FILE2] [-o OUT] [--report PATH]
    homworkbench report REPORT [--format json|text]

Exit status is 0 when every check passes, 1 on a mathematical failure
(witnesses are in the report) and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bihom_core as bh
from . import dendriform as dd
from . import frobenius_double as fb
from . import hom_core as hc
from ._report import PreconditionFailed, Report, ReportBuilder
from .exact_linear import DimensionError, identity, scalar, zeros

__all__ = [
    "DocumentError",
    "WorkbenchDocument",
    "FormData",
    "OperatorData",
    "parse_document",
    "serialize",
    "dumps",
    "applicable_checks",
    "run_check",
    "run_construct",
    "CONSTRUCTIONS",
    "main",
]

KINDS = (
    "hom_algebra",
    "bihom_algebra",
    "hom_dendriform",
    "bihom_dendriform",
    "bimodule",
    "matched_pair",
    "bialgebra_data",
    "form",
    "operator",
)
ALGEBRA_KINDS = KINDS[:4]
WITNESS_CAP = 25
DEFAULT_MAX_DIM = 16


class DocumentError(ValueError):
    """Malformed input; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True, eq=False)
class FormData(hc._Struct):
    """A bilinear form (Gram matrix) on an algebra."""

    algebra: object
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class OperatorData(hc._Struct):
    """A linear map attached to an algebra (``V = A``) or to a bimodule (``V -> A``)."""

    target: object
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class WorkbenchDocument(hc._Struct):
    kind: str
    value: object
    name: str = ""
    description: str = ""


def max_dim() -> int:
    raw = os.environ.get("WORKBENCH_MAX_DIM", str(DEFAULT_MAX_DIM))
    try:
        cap = int(raw)
    except ValueError:
        raise DocumentError("WORKBENCH_MAX_DIM", f"not an integer: {raw!r}") from None
    if cap < 1:
        raise DocumentError("WORKBENCH_MAX_DIM", f"must be positive, got {cap}")
    return cap


# -- parsing ------------------------------------------------------------------


def _fields(node, path, required, optional=()):
    if not isinstance(node, dict):
        raise DocumentError(path, f"expected an object, got {type(node).__name__}")
    unknown = sorted(set(node) - set(required) - set(optional))
    if unknown:
        raise DocumentError(path, f"unknown field(s): {', '.join(unknown)}")
    missing = [k for k in required if k not in node]
    if missing:
        raise DocumentError(path, f"missing field(s): {', '.join(missing)}")
    return node


def _scalar(node, path) -> Fraction:
    if isinstance(node, bool) or not isinstance(node, (int, str)):
        raise DocumentError(path, f"non-rational scalar {node!r}")
    try:
        return scalar(node)
    except (TypeError, ValueError):
        raise DocumentError(path, f"non-rational scalar {node!r}") from None


def _dim(node, path) -> int:
    if isinstance(node, bool) or not isinstance(node, int) or node < 1:
        raise DocumentError(path, f"dimension must be a positive integer, got {node!r}")
    cap = max_dim()
    if node > cap:
        raise DocumentError(path, f"dimension {node} exceeds WORKBENCH_MAX_DIM={cap}")
    return node


def _matrix(node, path, rows, cols) -> np.ndarray:
    if not isinstance(node, list) or len(node) != rows:
        raise DocumentError(path, f"expected {rows} rows")
    out = zeros(rows, cols)
    for i, row in enumerate(node):
        if not isinstance(row, list) or len(row) != cols:
            raise DocumentError(f"{path}[{i}]", f"expected a row of {cols} scalars")
        for j, entry in enumerate(row):
            out[i, j] = _scalar(entry, f"{path}[{i}][{j}]")
    return out


def _tensor(node, path, n) -> np.ndarray:
    """Sparse ``[i, j, k, value]`` entries with 1-based indices."""
    if not isinstance(node, list):
        raise DocumentError(path, "expected a list of [i, j, k, value] entries")
    out = zeros(n, n, n)
    seen = set()
    for e, entry in enumerate(node):
        here = f"{path}[{e}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise DocumentError(here, "expected [i, j, k, value]")
        idx = entry[:3]
        for p, i in enumerate(idx):
            if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= n:
                raise DocumentError(f"{here}[{p}]", f"index must be an integer in 1..{n}, got {i!r}")
        key = tuple(idx)
        if key in seen:
            raise DocumentError(here, f"duplicate entry for indices {list(key)}")
        seen.add(key)
        out[tuple(i - 1 for i in idx)] = _scalar(entry[3], f"{here}[3]")
    return out


def _family(node, path, n, m) -> np.ndarray:
    if not isinstance(node, list) or len(node) != n:
        raise DocumentError(path, f"expected {n} matrices of size {m} x {m}")
    return np.stack([_matrix(mat, f"{path}[{x}]", m, m) for x, mat in enumerate(node)]).astype(object)


def _parse_algebra(kind, p, path):
    if kind == "hom_algebra":
        _fields(p, path, ("dim", "mult", "alpha"))
        n = _dim(p["dim"], f"{path}.dim")
        return hc.HomAlgebra(_tensor(p["mult"], f"{path}.mult", n), _matrix(p["alpha"], f"{path}.alpha", n, n))
    if kind == "bihom_algebra":
        _fields(p, path, ("dim", "mult", "alpha1", "alpha2"))
        n = _dim(p["dim"], f"{path}.dim")
        return bh.BiHomAlgebra(
            _tensor(p["mult"], f"{path}.mult", n),
            _matrix(p["alpha1"], f"{path}.alpha1", n, n),
            _matrix(p["alpha2"], f"{path}.alpha2", n, n),
        )
    if kind == "hom_dendriform":
        _fields(p, path, ("dim", "prec", "succ", "alpha"))
        n = _dim(p["dim"], f"{path}.dim")
        return dd.HomDendriform(
            _tensor(p["prec"], f"{path}.prec", n),
            _tensor(p["succ"], f"{path}.succ", n),
            _matrix(p["alpha"], f"{path}.alpha", n, n),
        )
    _fields(p, path, ("dim", "prec", "succ", "alpha", "beta"))
    n = _dim(p["dim"], f"{path}.dim")
    return dd.BiHomDendriform(
        _tensor(p["prec"], f"{path}.prec", n),
        _tensor(p["succ"], f"{path}.succ", n),
        _matrix(p["alpha"], f"{path}.alpha", n, n),
        _matrix(p["beta"], f"{path}.beta", n, n),
    )


def _kind_of(value) -> str:
    table = {
        hc.HomAlgebra: "hom_algebra",
        bh.BiHomAlgebra: "bihom_algebra",
        dd.HomDendriform: "hom_dendriform",
        dd.BiHomDendriform: "bihom_dendriform",
    }
    for cls, kind in table.items():
        if isinstance(value, cls):
            return kind
    for cls, kind in (
        ((hc.HomBimodule, bh.BiHomBimodule, dd.DendriformBimodule), "bimodule"),
        ((hc.HomMatchedPair, bh.BiHomMatchedPair, dd.DendriformMatchedPair), "matched_pair"),
        ((fb.HomBialgebraData, bh.BiHomBialgebraData, dd.DendriformBialgebraData), "bialgebra_data"),
        ((FormData,), "form"),
        ((OperatorData,), "operator"),
    ):
        if isinstance(value, cls):
            return kind
    raise TypeError(f"no document kind for {type(value).__name__}")


def _nested(node, path, allowed):
    _fields(node, path, ("kind", "payload"))
    kind = node["kind"]
    if kind not in allowed:
        raise DocumentError(f"{path}.kind", f"expected one of {', '.join(allowed)}, got {kind!r}")
    return _parse_payload(kind, node["payload"], f"{path}.payload")


_DEND_ACTIONS = ("l_succ", "r_succ", "l_prec", "r_prec")


def _parse_bimodule(p, path):
    if not isinstance(p, dict) or "algebra" not in p:
        _fields(p, path, ("algebra",))
    alg = _nested(p["algebra"], f"{path}.algebra", ALGEBRA_KINDS)
    kind = _kind_of(alg)
    bihom = kind.startswith("bihom")
    acts = _DEND_ACTIONS if kind.endswith("dendriform") else ("l", "r")
    twists = ("beta1", "beta2") if bihom else ("beta",)
    _fields(p, path, ("algebra", "dim_v") + acts + twists)
    m = _dim(p["dim_v"], f"{path}.dim_v")
    fams = [_family(p[a], f"{path}.{a}", alg.dim, m) for a in acts]
    maps = [_matrix(p[t], f"{path}.{t}", m, m) for t in twists]
    try:
        if kind.endswith("dendriform"):
            return dd.DendriformBimodule(alg, *fams, *maps)
        return (bh.BiHomBimodule if bihom else hc.HomBimodule)(alg, *fams, *maps)
    except DimensionError as exc:
        raise DocumentError(path, str(exc)) from None


def _parse_matched_pair(p, path):
    if not isinstance(p, dict) or "A" not in p or "B" not in p:
        _fields(p, path, ("A", "B"))
    A = _nested(p["A"], f"{path}.A", ALGEBRA_KINDS)
    B = _nested(p["B"], f"{path}.B", ALGEBRA_KINDS)
    kind = _kind_of(A)
    if _kind_of(B) != kind:
        raise DocumentError(f"{path}.B.kind", f"must match A's kind {kind!r}")
    n, m = A.dim, B.dim
    if kind.endswith("dendriform"):
        _fields(p, path, ("A", "B", "actions_A", "actions_B"))
        acts = []
        for side, (k, l) in (("actions_A", (n, m)), ("actions_B", (m, n))):
            node = _fields(p[side], f"{path}.{side}", _DEND_ACTIONS)
            acts.append(tuple(_family(node[a], f"{path}.{side}.{a}", k, l) for a in _DEND_ACTIONS))
        return dd.DendriformMatchedPair(A, B, *acts)
    _fields(p, path, ("A", "B", "l_A", "r_A", "l_B", "r_B"))
    fams = {
        "lA": _family(p["l_A"], f"{path}.l_A", n, m),
        "rA": _family(p["r_A"], f"{path}.r_A", n, m),
        "lB": _family(p["l_B"], f"{path}.l_B", m, n),
        "rB": _family(p["r_B"], f"{path}.r_B", m, n),
    }
    cls = bh.BiHomMatchedPair if kind == "bihom_algebra" else hc.HomMatchedPair
    return cls(A, B, **fams)


def _parse_bialgebra(p, path):
    if not isinstance(p, dict) or "algebra" not in p:
        _fields(p, path, ("algebra",))
    alg = _nested(p["algebra"], f"{path}.algebra", ("hom_algebra", "bihom_algebra", "hom_dendriform"))
    n = alg.dim
    if isinstance(alg, dd.HomDendriform):
        _fields(p, path, ("algebra", "coprod_succ", "coprod_prec"))
        return dd.DendriformBialgebraData(
            alg,
            _tensor(p["coprod_succ"], f"{path}.coprod_succ", n),
            _tensor(p["coprod_prec"], f"{path}.coprod_prec", n),
        )
    _fields(p, path, ("algebra", "coprod"))
    cls = bh.BiHomBialgebraData if isinstance(alg, bh.BiHomAlgebra) else fb.HomBialgebraData
    return cls(alg, _tensor(p["coprod"], f"{path}.coprod", n))


def _parse_form(p, path):
    _fields(p, path, ("algebra", "matrix"))
    alg = _nested(p["algebra"], f"{path}.algebra", ("hom_algebra", "bihom_algebra"))
    return FormData(alg, _matrix(p["matrix"], f"{path}.matrix", alg.dim, alg.dim))


def _parse_operator(p, path):
    if not isinstance(p, dict):
        _fields(p, path, ())
    if ("algebra" in p) == ("bimodule" in p):
        raise DocumentError(path, "give exactly one of 'algebra' or 'bimodule'")
    if "algebra" in p:
        _fields(p, path, ("algebra", "matrix"))
        target = _nested(p["algebra"], f"{path}.algebra", ("hom_algebra", "bihom_algebra"))
        rows = cols = target.dim
    else:
        _fields(p, path, ("bimodule", "matrix"))
        target = _nested(p["bimodule"], f"{path}.bimodule", ("bimodule",))
        if isinstance(target, dd.DendriformBimodule):
            raise DocumentError(f"{path}.bimodule", "O-operators act on Hom or biHom bimodules")
        rows, cols = target.algebra.dim, target.dimV
    return OperatorData(target, _matrix(p["matrix"], f"{path}.matrix", rows, cols))


def _parse_payload(kind, payload, path):
    if kind in ALGEBRA_KINDS:
        return _parse_algebra(kind, payload, path)
    return {
        "bimodule": _parse_bimodule,
        "matched_pair": _parse_matched_pair,
        "bialgebra_data": _parse_bialgebra,
        "form": _parse_form,
        "operator": _parse_operator,
    }[kind](payload, path)


def parse_document(source) -> WorkbenchDocument:
    """Parse a document from a path, JSON text, or an already-decoded dict."""
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise DocumentError(str(source), f"cannot read: {exc.strerror}") from None
    elif isinstance(source, str):
        text = source
    else:
        text = None
    if text is not None:
        try:
            source = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"line {exc.lineno} column {exc.colno}", f"invalid JSON: {exc.msg}") from None
    _fields(source, "", ("kind", "payload"), ("metadata",))
    kind = source["kind"]
    if kind not in KINDS:
        raise DocumentError("kind", f"unknown kind {kind!r}")
    meta = _fields(source.get("metadata", {}), "metadata", (), ("name", "description"))
    for key in ("name", "description"):
        if not isinstance(meta.get(key, ""), str):
            raise DocumentError(f"metadata.{key}", "expected a string")
    try:
        value = _parse_payload(kind, source["payload"], "payload")
    except DimensionError as exc:
        raise DocumentError("payload", str(exc)) from None
    return WorkbenchDocument(kind, value, meta.get("name", ""), meta.get("description", ""))


# -- serialization ------------------------------------------------------------


def _s(x) -> str:
    return str(Fraction(x))


def _dense(m) -> list:
    return [[_s(v) for v in row] for row in m]


def _sparse(t) -> list:
    return [[int(i) + 1, int(j) + 1, int(k) + 1, _s(t[i, j, k])] for i, j, k in zip(*np.nonzero(t != 0))]


def _fam(f) -> list:
    return [_dense(m) for m in f]


def _nested_out(value) -> dict:
    return {"kind": _kind_of(value), "payload": _payload(value)}


def _payload(v) -> dict:
    if isinstance(v, hc.HomAlgebra):
        return {"dim": v.dim, "mult": _sparse(v.mult), "alpha": _dense(v.alpha)}
    if isinstance(v, bh.BiHomAlgebra):
        return {"dim": v.dim, "mult": _sparse(v.mult), "alpha1": _dense(v.alpha1), "alpha2": _dense(v.alpha2)}
    if isinstance(v, dd.HomDendriform):
        return {"dim": v.dim, "prec": _sparse(v.prec), "succ": _sparse(v.succ), "alpha": _dense(v.alpha)}
    if isinstance(v, dd.BiHomDendriform):
        return {
            "dim": v.dim, "prec": _sparse(v.prec), "succ": _sparse(v.succ),
            "alpha": _dense(v.alpha), "beta": _dense(v.beta),
        }
    if isinstance(v, hc.HomBimodule):
        return {"algebra": _nested_out(v.algebra), "dim_v": v.dimV, "l": _fam(v.l), "r": _fam(v.r), "beta": _dense(v.beta)}
    if isinstance(v, bh.BiHomBimodule):
        return {
            "algebra": _nested_out(v.algebra), "dim_v": v.dimV, "l": _fam(v.l), "r": _fam(v.r),
            "beta1": _dense(v.beta1), "beta2": _dense(v.beta2),
        }
    if isinstance(v, dd.DendriformBimodule):
        out = {"algebra": _nested_out(v.algebra), "dim_v": v.dimV}
        out.update({a: _fam(f) for a, f in zip(_DEND_ACTIONS, v.actions)})
        if v.beta2 is None:
            out["beta"] = _dense(v.beta)
        else:
            out["beta1"], out["beta2"] = _dense(v.beta), _dense(v.beta2)
        return out
    if isinstance(v, (hc.HomMatchedPair, bh.BiHomMatchedPair)):
        return {
            "A": _nested_out(v.A), "B": _nested_out(v.B),
            "l_A": _fam(v.lA), "r_A": _fam(v.rA), "l_B": _fam(v.lB), "r_B": _fam(v.rB),
        }
    if isinstance(v, dd.DendriformMatchedPair):
        return {
            "A": _nested_out(v.A), "B": _nested_out(v.B),
            "actions_A": {a: _fam(f) for a, f in zip(_DEND_ACTIONS, v.actions_A)},
            "actions_B": {a: _fam(f) for a, f in zip(_DEND_ACTIONS, v.actions_B)},
        }
    if isinstance(v, (fb.HomBialgebraData, bh.BiHomBialgebraData)):
        return {"algebra": _nested_out(v.algebra), "coprod": _sparse(v.coprod)}
    if isinstance(v, dd.DendriformBialgebraData):
        return {
            "algebra": _nested_out(v.algebra),
            "coprod_succ": _sparse(v.coprod_succ), "coprod_prec": _sparse(v.coprod_prec),
        }
    if isinstance(v, FormData):
        return {"algebra": _nested_out(v.algebra), "matrix": _dense(v.matrix)}
    if isinstance(v, OperatorData):
        key = "bimodule" if _kind_of(v.target) == "bimodule" else "algebra"
        return {key: _nested_out(v.target), "matrix": _dense(v.matrix)}
    raise TypeError(f"cannot serialize {type(v).__name__}")


def serialize(doc: WorkbenchDocument) -> dict:
    out = {"kind": doc.kind, "payload": _payload(doc.value)}
    meta = {k: getattr(doc, k) for k in ("name", "description") if getattr(doc, k)}
    if meta:
        out["metadata"] = meta
    return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- checks -------------------------------------------------------------------


def _involutive_report(alpha) -> Report:
    res = (alpha.dot(alpha) - identity(alpha.shape[0])).T
    return ReportBuilder("involutive").residual("involutive", res, 1).build()


def _o_operator(v: OperatorData):
    return dd.OOperator(v.target, v.matrix)


def applicable_checks(doc: WorkbenchDocument, mode: str = "strict") -> dict:
    """Check ids valid for ``doc`` in their fixed run order, mapped to callables."""
    v = doc.value
    if isinstance(v, hc.HomAlgebra):
        return {
            "hom_associative": lambda: hc.check_hom_associative(v),
            "multiplicative": lambda: hc.check_multiplicative(v),
            "involutive": lambda: _involutive_report(v.alpha),
        }
    if isinstance(v, bh.BiHomAlgebra):
        return {"bihom_associative": lambda: bh.check_bihom_associative(v)}
    if isinstance(v, dd.HomDendriform):
        return {"hom_dendriform": lambda: dd.check_hom_dendriform(v)}
    if isinstance(v, dd.BiHomDendriform):
        return {"bihom_dendriform": lambda: dd.check_bihom_dendriform(v)}
    if isinstance(v, hc.HomBimodule):
        return {"bimodule": lambda: hc.check_bimodule(v)}
    if isinstance(v, bh.BiHomBimodule):
        return {"bimodule": lambda: bh.check_bihom_bimodule(v)}
    if isinstance(v, dd.DendriformBimodule):
        return {"bimodule": lambda: dd.check_dendriform_bimodule(v)}
    if isinstance(v, hc.HomMatchedPair):
        return {"matched_pair": lambda: hc.check_matched_pair(v)}
    if isinstance(v, bh.BiHomMatchedPair):
        return {"matched_pair": lambda: bh.check_bihom_matched_pair(v)}
    if isinstance(v, dd.DendriformMatchedPair):
        return {"matched_pair": lambda: dd.check_dendriform_matched_pair(v)}
    if isinstance(v, fb.HomBialgebraData):
        return {
            "hom_bialgebra": lambda: fb.check_hom_bialgebra(v),
            "matched_criterion": lambda: fb.check_hom_matched_criterion(v),
        }
    if isinstance(v, bh.BiHomBialgebraData):
        return {
            "bihom_bialgebra": lambda: bh.check_bihom_bialgebra(v, mode),
            "bihom_matched_criterion": lambda: bh.check_bihom_matched_criterion(v, mode),
        }
    if isinstance(v, dd.DendriformBialgebraData):
        return {"d_bialgebra": lambda: dd.check_dendriform_D_bialgebra(v.algebra, v.coprod_succ, v.coprod_prec)}
    if isinstance(v, FormData):
        if isinstance(v.algebra, bh.BiHomAlgebra):
            return {"alphabeta_invariant": lambda: bh.check_alphabeta_invariant(v.algebra, v.matrix)}
        return {
            "frobenius_form": lambda: fb.check_form(fb.HomBilinearForm(v.algebra, v.matrix)),
            "symplectic": lambda: dd.check_symplectic(dd.SymplecticHomAlgebra(v.algebra, v.matrix)),
        }
    if isinstance(v, OperatorData):
        if _kind_of(v.target) == "bimodule":
            return {"o_operator": lambda: dd.check_o_operator(_o_operator(v))}
        return {"rota_baxter": lambda: dd.check_rota_baxter(v.target, v.matrix)}
    raise TypeError(f"no checks for {type(v).__name__}")


def _entry(check_id: str, report: Report, cap, status=None, note=None) -> dict:
    body = report.to_dict(cap)
    body["id"] = check_id
    if status is not None:
        body["status"] = status
    if note:
        body["notes"] = [note] + body["notes"]
    return body


def _run_one(check_id, fn, cap) -> dict:
    try:
        return _entry(check_id, fn(), cap)
    except PreconditionFailed as exc:
        report = exc.report if exc.report is not None else Report(check_id, ())
        return _entry(check_id, report, cap, status="skipped", note=f"precondition failed: {exc}")


def _overall(entries) -> str:
    return "ok" if all(e["status"] == "ok" for e in entries) else "fail"


def run_check(doc: WorkbenchDocument, check_ids=None, *, all_witnesses=False, mode="strict") -> dict:
    available = applicable_checks(doc, mode)
    ids = list(available) if not check_ids else list(check_ids)
    for cid in ids:
        if cid not in available:
            raise DocumentError("--checks", f"check {cid!r} does not apply to {doc.kind}; try {', '.join(available)}")
    # Fixed order regardless of how ids were listed.
    ids = [cid for cid in available if cid in ids]
    cap = None if all_witnesses else WITNESS_CAP
    entries = [_run_one(cid, available[cid], cap) for cid in ids]
    return {
        "target": doc.name or doc.kind,
        "kind": doc.kind,
        "checks": entries,
        "constructions": [],
        "status": _overall(entries),
    }


# -- constructions ------------------------------------------------------------


def _need(docs, count, kinds, cid):
    if len(docs) != count:
        raise DocumentError("", f"{cid} takes {count} input document(s), got {len(docs)}")
    for d, k in zip(docs, kinds):
        if not isinstance(d.value, k):
            names = ", ".join(c.__name__ for c in (k if isinstance(k, tuple) else (k,)))
            raise DocumentError("kind", f"{cid} expects {names}, got {d.kind}")


def _c_semidirect(docs, mode):
    _need(docs, 1, [(hc.HomBimodule, bh.BiHomBimodule)], "semidirect_sum")
    v = docs[0].value
    return hc.semidirect_sum(v) if isinstance(v, hc.HomBimodule) else bh.bihom_semidirect_sum(v), None


def _c_bicrossed(docs, mode):
    _need(docs, 1, [(hc.HomMatchedPair, bh.BiHomMatchedPair, dd.DendriformMatchedPair)], "bicrossed_sum")
    v = docs[0].value
    if isinstance(v, hc.HomMatchedPair):
        return hc.bicrossed_sum(v), None
    if isinstance(v, bh.BiHomMatchedPair):
        return bh.bihom_bicrossed_sum(v), None
    return dd.dendriform_bicrossed_sum(v), None


def _c_frobenius(docs, mode):
    _need(docs, 1, [fb.HomBialgebraData], "frobenius_double")
    d = docs[0].value
    fd = fb.double_construct_frobenius(d)
    return FormData(fd.total, fd.form.gram), fb.verify_frobenius_double(fd, d)


def _c_bihom_frobenius(docs, mode):
    _need(docs, 1, [bh.BiHomBialgebraData], "bihom_frobenius_double")
    d = docs[0].value
    fd = bh.double_construct_bihom_frobenius(d, mode)
    return FormData(fd.total, fd.gram), bh.verify_bihom_frobenius_double(fd, d)


def _c_symplectic_double(docs, mode):
    _need(docs, 1, [dd.DendriformBialgebraData], "symplectic_double")
    v = docs[0].value
    dual = v.dual()
    sd = dd.symplectic_double(v.algebra, dual)
    return FormData(sd.total, sd.omega), dd.verify_symplectic_double(sd, v.algebra, dual)


def _c_associated(docs, mode):
    _need(docs, 1, [(dd.HomDendriform, dd.BiHomDendriform)], "associated_algebra")
    return dd.associated_algebra(docs[0].value), None


def _c_from_rota_baxter(docs, mode):
    _need(docs, 1, [OperatorData], "dendriform_from_rota_baxter")
    v = docs[0].value
    a = v.target
    if isinstance(a, hc.HomAlgebra):
        b = hc.HomBimodule(a, a.L, a.R, a.alpha)
    elif isinstance(a, bh.BiHomAlgebra):
        b = bh.BiHomBimodule(a, a.L, a.R, a.alpha1, a.alpha2)
    else:
        raise DocumentError("payload", "dendriform_from_rota_baxter needs an operator on an algebra")
    rb = dd.check_rota_baxter(a, v.matrix)
    if not rb.ok:
        raise PreconditionFailed("not a Rota-Baxter operator", rb)
    return dd.dendriform_from_o_operator(dd.OOperator(b, v.matrix)), None


def _c_from_o_operator(docs, mode):
    _need(docs, 1, [OperatorData], "dendriform_from_o_operator")
    v = docs[0].value
    if _kind_of(v.target) != "bimodule":
        raise DocumentError("payload", "dendriform_from_o_operator needs an operator on a bimodule")
    return dd.dendriform_from_o_operator(_o_operator(v)), None


def _c_from_symplectic(docs, mode):
    _need(docs, 1, [FormData], "dendriform_from_symplectic")
    v = docs[0].value
    if not isinstance(v.algebra, hc.HomAlgebra):
        raise DocumentError("payload.algebra", "dendriform_from_symplectic needs a hom_algebra")
    return dd.dendriform_from_symplectic(dd.SymplecticHomAlgebra(v.algebra, v.matrix)), None


def _c_yau(docs, mode):
    if len(docs) == 2:
        _need(docs, 2, [hc.HomAlgebra, OperatorData], "yau_twist")
        a, beta = docs[0].value, docs[1].value.matrix
    else:
        _need(docs, 1, [OperatorData], "yau_twist")
        a, beta = docs[0].value.target, docs[0].value.matrix
    if not isinstance(a, hc.HomAlgebra) or beta.shape != a.alpha.shape:
        raise DocumentError("payload", "yau_twist needs a hom_algebra and a square map of the same size")
    return hc.yau_twist(a, beta), None


CONSTRUCTIONS = {
    "semidirect_sum": _c_semidirect,
    "bicrossed_sum": _c_bicrossed,
    "frobenius_double": _c_frobenius,
    "bihom_frobenius_double": _c_bihom_frobenius,
    "symplectic_double": _c_symplectic_double,
    "associated_algebra": _c_associated,
    "dendriform_from_rota_baxter": _c_from_rota_baxter,
    "dendriform_from_o_operator": _c_from_o_operator,
    "dendriform_from_symplectic": _c_from_symplectic,
    "yau_twist": _c_yau,
}


# What each construction claims about its output, re-checked after re-parsing.
_CLAIMED = {
    "frobenius_double": ("frobenius_form",),
    "bihom_frobenius_double": ("alphabeta_invariant",),
    "symplectic_double": ("symplectic",),
}
_STRUCTURE = {
    "hom_algebra": ("hom_associative",),
    "bihom_algebra": ("bihom_associative",),
    "hom_dendriform": ("hom_dendriform",),
    "bihom_dendriform": ("bihom_dendriform",),
}


def run_construct(construction: str, docs, *, all_witnesses=False, mode="strict", output=None):
    """Build, then re-check the output; returns ``(document or None, report)``."""
    if construction not in CONSTRUCTIONS:
        raise DocumentError("construction", f"unknown construction {construction!r}; try {', '.join(CONSTRUCTIONS)}")
    cap = None if all_witnesses else WITNESS_CAP
    target = "+".join(d.name or d.kind for d in docs)
    record = {"id": construction, "inputs": [d.name or d.kind for d in docs]}
    try:
        value, verification = CONSTRUCTIONS[construction](docs, mode)
    except PreconditionFailed as exc:
        report = exc.report if exc.report is not None else Report(construction, ())
        record["status"] = "refused"
        entry = _entry(f"{construction}:precondition", report, cap, status="fail", note=str(exc))
        return None, {"target": target, "kind": docs[0].kind, "checks": [entry], "constructions": [record], "status": "fail"}
    name = f"{construction}({target})"
    out = WorkbenchDocument(_kind_of(value), value, name)
    # Post-verification runs on the re-parsed serialization, so the written
    # document is exactly what was checked.
    reparsed = parse_document(serialize(out))
    entries = []
    if verification is not None:
        entries.append(_entry(f"{construction}:verification", verification, cap))
    claimed = _CLAIMED.get(construction) or _STRUCTURE[out.kind]
    entries.extend(run_check(reparsed, claimed, all_witnesses=all_witnesses, mode=mode)["checks"])
    record["status"] = _overall(entries)
    if output is not None:
        record["output"] = str(output)
    else:
        record["document"] = serialize(out)
    return out, {"target": target, "kind": docs[0].kind, "checks": entries, "constructions": [record], "status": record["status"]}


# -- rendering and entry point -----------------------------------------------


def render_text(report: dict) -> str:
    lines = [f"target: {report['target']} ({report['kind']})  status: {report['status']}"]
    for e in report["checks"]:
        lines.append(f"  {e['id']}: {e['status']}")
        if e["status"] != "ok":
            failing = [c for c, ok in e["clauses"].items() if not ok]
            if failing:
                lines.append(f"    failing clauses: {', '.join(failing)}")
            for w in e["witnesses"]:
                idx = ",".join(str(i) for i in w["indices"])
                lines.append(f"    {w['clause']} at ({idx}): residual ({', '.join(w['residual'])})")
            hidden = e["witness_count"] - len(e["witnesses"])
            if hidden > 0:
                lines.append(f"    ... {hidden} more witness(es); rerun with --all-witnesses")
        for note in e["notes"]:
            lines.append(f"    note: {note}")
    for c in report["constructions"]:
        where = c.get("output", "inline")
        lines.append(f"  construction {c['id']}: {c['status']} -> {where}")
    return "\n".join(lines) + "\n"


def _emit(report: dict, fmt: str, save=None) -> int:
    if save is not None:
        Path(save).write_text(dumps(report), encoding="utf-8")
    sys.stdout.write(dumps(report) if fmt == "json" else render_text(report))
    return 0 if report["status"] == "ok" else 1


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="homworkbench", description="Exact checks and constructions for Hom-type algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--all-witnesses", action="store_true", help="do not cap witnesses at 25 per check")
        p.add_argument("--mode", choices=bh.MODES, default="strict", help="twist hypotheses for biHom doubles")
        p.add_argument("--report", metavar="PATH", help="also save the JSON report here")

    c = sub.add_parser("check", help="run checks on a document")
    c.add_argument("file")
    c.add_argument("--checks", help="comma-separated check ids (default: all that apply)")
    common(c)

    k = sub.add_parser("construct", help="build a new structure and re-check it")
    k.add_argument("construction", help=", ".join(CONSTRUCTIONS))
    k.add_argument("file")
    k.add_argument("file2", nargs="?")
    k.add_argument("-o", "--output", help="write the constructed document here")
    common(k)

    r = sub.add_parser("report", help="render a saved JSON report")
    r.add_argument("file")
    r.add_argument("--format", choices=("json", "text"), default="text")
    return ap


def _load_report(path) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise DocumentError(str(path), f"cannot read: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", f"invalid JSON: {exc.msg}") from None
    _fields(data, "", ("target", "kind", "checks", "constructions", "status"))
    return data


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "check":
            doc = parse_document(Path(args.file))
            ids = [s.strip() for s in args.checks.split(",") if s.strip()] if args.checks else None
            report = run_check(doc, ids, all_witnesses=args.all_witnesses, mode=args.mode)
            return _emit(report, args.format, args.report)
        if args.command == "construct":
            docs = [parse_document(Path(f)) for f in (args.file, args.file2) if f]
            out, report = run_construct(
                args.construction, docs, all_witnesses=args.all_witnesses, mode=args.mode, output=args.output
            )
            if out is not None and args.output:
                Path(args.output).write_text(dumps(serialize(out)), encoding="utf-8")
            return _emit(report, args.format, args.report)
        return _emit(_load_report(args.file), args.format)
    except (DocumentError, DimensionError) as exc:
        sys.stderr.write(f"homworkbench: input error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
