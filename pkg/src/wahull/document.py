"""JSON documents for automata, CRAs, Z-sets and reports.

Every document is an object with ``kind`` and ``version`` keys.  Scalars are
written as ``"p/q"`` (or ``"p"``) strings so rationals survive exactly; the
parser also accepts JSON integers.  Unknown keys are rejected.
"""
from __future__ import annotations

import json

from .cra import Cra, Output, Update
from .errors import DimensionMismatch, ParseError
from .linalg import Matrix, format_scalar, parse_scalar, scalar, span
from .wa import WeightedAutomaton
from .zariski import AffineComponent, ZSet, canonicalize, check_mode

VERSION = 1
KINDS = ("wa", "cra", "zset", "report")


def _scalar(x, where):
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected a scalar, got a boolean")
    if isinstance(x, int):
        return scalar(x)
    if not isinstance(x, str):
        raise ParseError(f"{where}: scalars must be strings like \"3/4\", got {x!r}")
    try:
        return parse_scalar(x)
    except ParseError as e:
        raise ParseError(f"{where}: {e}") from None


def _vector(xs, n, where):
    if not isinstance(xs, list):
        raise ParseError(f"{where}: expected a list")
    if n is not None and len(xs) != n:
        raise DimensionMismatch(f"{where}: expected {n} entries, got {len(xs)}")
    return tuple(_scalar(x, f"{where}[{i}]") for i, x in enumerate(xs))


def _matrix(rows, n_rows, n_cols, where):
    if not isinstance(rows, list):
        raise ParseError(f"{where}: expected a list of rows")
    if len(rows) != n_rows:
        raise DimensionMismatch(f"{where}: expected {n_rows} rows, got {len(rows)}")
    return Matrix(n_rows, n_cols, tuple(_vector(r, n_cols, f"{where}[{i}]") for i, r in enumerate(rows)))


def _int(x, where, low=0):
    if isinstance(x, bool) or not isinstance(x, int) or x < low:
        raise ParseError(f"{where}: expected an integer >= {low}")
    return x


def _fields(obj, where, required, optional=()):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise ParseError(f"{where}: missing field(s) {missing}")
    return obj


def _alphabet(xs, where):
    if not isinstance(xs, list) or not all(isinstance(a, str) and a for a in xs):
        raise ParseError(f"{where}: expected a list of non-empty letter strings")
    if len(set(xs)) != len(xs):
        raise ParseError(f"{where}: repeated letter")
    return tuple(xs)


def _fmt_vec(xs):
    return [format_scalar(x) for x in xs]


def _fmt_mat(m: Matrix):
    return [_fmt_vec(r) for r in m.entries]


def _load(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    _fields(doc, "document", ("kind", "version"), _BODY_KEYS)
    if doc["kind"] not in KINDS:
        raise ParseError(f"unknown document kind {doc['kind']!r}")
    if doc["version"] != VERSION:
        raise ParseError(f"unsupported version {doc['version']!r}")
    return doc


_WA_KEYS = ("alphabet", "initial", "transitions", "final")
_CRA_KEYS = ("mode", "alphabet", "states", "registers", "initial_state", "initial_valuation",
             "updates", "outputs")
_ZSET_KEYS = ("mode", "ambient_dim", "components")
_REPORT_KEYS = ("mode", "length_bound", "dim", "length", "certified_strongest",
                "density_check_passed", "seconds", "stats", "result")
_BODY_KEYS = tuple(dict.fromkeys(_WA_KEYS + _CRA_KEYS + _ZSET_KEYS + _REPORT_KEYS))
_BY_KIND = {"wa": _WA_KEYS, "cra": _CRA_KEYS, "zset": _ZSET_KEYS, "report": _REPORT_KEYS}


def _expect(doc, kind):
    if doc["kind"] != kind:
        raise ParseError(f"expected a {kind!r} document, got {doc['kind']!r}")
    _fields(doc, kind, ("kind", "version") + _BY_KIND[kind])


def _emit(obj, indent):
    # lists of scalars stay on one line so matrices read row by row
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_emit(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and any(isinstance(x, (list, dict)) for x in obj):
        return "[\n" + ",\n".join(inner + _emit(x, indent + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj)


def _dump(obj) -> str:
    return _emit(obj, 0) + "\n"


# --- weighted automata ---------------------------------------------------------

def wa_to_obj(wa: WeightedAutomaton) -> dict:
    return {
        "kind": "wa", "version": VERSION,
        "alphabet": list(wa.alphabet),
        "initial": _fmt_vec(wa.initial),
        "transitions": {a: _fmt_mat(wa.transitions[a]) for a in wa.alphabet},
        "final": _fmt_vec(wa.final),
    }


def wa_from_obj(doc: dict) -> WeightedAutomaton:
    _expect(doc, "wa")
    alphabet = _alphabet(doc["alphabet"], "alphabet")
    u = _vector(doc["initial"], None, "initial")
    d = len(u)
    trans = doc["transitions"]
    _fields(trans, "transitions", alphabet)
    mus = {a: _matrix(trans[a], d, d, f"transitions.{a}") for a in alphabet}
    v = _vector(doc["final"], d, "final")
    return WeightedAutomaton(alphabet, u, mus, v)


def print_wa(wa: WeightedAutomaton) -> str:
    return _dump(wa_to_obj(wa))


def parse_wa(text: str) -> WeightedAutomaton:
    return wa_from_obj(_load(text))


# --- CRAs ----------------------------------------------------------------------

def cra_to_obj(cra: Cra) -> dict:
    updates = []
    for q in range(cra.states):
        for a in cra.alphabet:
            up = cra.updates[q, a]
            updates.append({"state": q, "letter": a, "target": up.target,
                            "matrix": _fmt_mat(up.linear), "offset": _fmt_vec(up.offset)})
    return {
        "kind": "cra", "version": VERSION, "mode": cra.mode,
        "alphabet": list(cra.alphabet), "states": cra.states, "registers": cra.registers,
        "initial_state": cra.initial_state,
        "initial_valuation": _fmt_vec(cra.initial_valuation),
        "updates": updates,
        "outputs": [{"linear": _fmt_vec(o.linear), "constant": format_scalar(o.constant)}
                    for o in cra.outputs],
    }


def cra_from_obj(doc: dict) -> Cra:
    _expect(doc, "cra")
    mode = doc["mode"]
    try:
        check_mode(mode)
    except ValueError as e:
        raise ParseError(str(e)) from None
    alphabet = _alphabet(doc["alphabet"], "alphabet")
    n = _int(doc["states"], "states", 1)
    k = _int(doc["registers"], "registers")
    v0 = _vector(doc["initial_valuation"], k, "initial_valuation")
    if not isinstance(doc["updates"], list):
        raise ParseError("updates: expected a list")
    ups = {}
    for i, u in enumerate(doc["updates"]):
        where = f"updates[{i}]"
        _fields(u, where, ("state", "letter", "target", "matrix", "offset"))
        key = (_int(u["state"], f"{where}.state"), u["letter"])
        if key in ups:
            raise ParseError(f"{where}: duplicate update for state {key[0]} letter {key[1]!r}")
        ups[key] = Update(_int(u["target"], f"{where}.target"),
                          _matrix(u["matrix"], k, k, f"{where}.matrix"),
                          _vector(u["offset"], k, f"{where}.offset"))
    if not isinstance(doc["outputs"], list):
        raise ParseError("outputs: expected a list")
    outs = []
    for i, o in enumerate(doc["outputs"]):
        _fields(o, f"outputs[{i}]", ("linear", "constant"))
        outs.append(Output(_vector(o["linear"], k, f"outputs[{i}].linear"),
                           _scalar(o["constant"], f"outputs[{i}].constant")))
    try:
        return Cra(alphabet, n, k, v0, ups, tuple(outs), mode,
                   _int(doc["initial_state"], "initial_state"))
    except DimensionMismatch:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from None


def print_cra(cra: Cra) -> str:
    return _dump(cra_to_obj(cra))


def parse_cra(text: str) -> Cra:
    return cra_from_obj(_load(text))


# --- Z-sets --------------------------------------------------------------------

def zset_to_obj(z: ZSet) -> dict:
    return {
        "kind": "zset", "version": VERSION, "mode": z.mode, "ambient_dim": z.ambient_dim,
        "components": [{"point": _fmt_vec(c.point), "basis": [_fmt_vec(b) for b in c.direction.basis]}
                       for c in z.components],
    }


def zset_from_obj(doc: dict) -> ZSet:
    _expect(doc, "zset")
    mode = doc["mode"]
    try:
        check_mode(mode)
    except ValueError as e:
        raise ParseError(str(e)) from None
    d = _int(doc["ambient_dim"], "ambient_dim")
    if not isinstance(doc["components"], list):
        raise ParseError("components: expected a list")
    comps = []
    for i, c in enumerate(doc["components"]):
        where = f"components[{i}]"
        _fields(c, where, ("point", "basis"))
        p = _vector(c["point"], d, f"{where}.point")
        if not isinstance(c["basis"], list):
            raise ParseError(f"{where}.basis: expected a list of rows")
        rows = [_vector(r, d, f"{where}.basis[{j}]") for j, r in enumerate(c["basis"])]
        comps.append(AffineComponent(p, span(rows, d)))
    return canonicalize(comps, mode, d)


def print_zset(z: ZSet) -> str:
    return _dump(zset_to_obj(z))


def parse_zset(text: str) -> ZSet:
    return zset_from_obj(_load(text))


# --- reports -------------------------------------------------------------------

def report_to_obj(report, seconds: float | None = None) -> dict:
    return {
        "kind": "report", "version": VERSION, "mode": report.mode,
        "length_bound": report.length_bound, "dim": report.dim, "length": report.length,
        "certified_strongest": report.certified_strongest,
        "density_check_passed": report.density_check_passed,
        "seconds": seconds, "stats": dict(report.stats),
        "result": zset_to_obj(report.result),
    }


def print_report(report, seconds: float | None = None) -> str:
    return _dump(report_to_obj(report, seconds))


def parse_report(text: str) -> dict:
    """Validated report as a plain dict, with ``result`` parsed to a :class:`ZSet`."""
    doc = _load(text)
    _expect(doc, "report")
    out = dict(doc)
    out["result"] = zset_from_obj(doc["result"])
    if out["result"].dim != doc["dim"] or out["result"].length != doc["length"]:
        raise ParseError("report dim/length disagree with its result")
    return out


def parse_document(text: str):
    """Parse any document, dispatching on ``kind``."""
    doc = _load(text)
    kind = doc["kind"]
    if kind == "wa":
        return wa_from_obj(doc)
    if kind == "cra":
        return cra_from_obj(doc)
    if kind == "zset":
        return zset_from_obj(doc)
    return parse_report(text)


def parse_word(text: str) -> tuple:
    """``"aab"`` splits into single letters; ``'["ab", "c"]'`` gives multi-character letters."""
    s = text.strip()
    if s.startswith("["):
        try:
            word = json.loads(s)
        except json.JSONDecodeError as e:
            raise ParseError(f"word: {e.msg}", e.lineno, e.colno) from None
        if not isinstance(word, list) or not all(isinstance(a, str) for a in word):
            raise ParseError("word: expected a list of letter strings")
        return tuple(word)
    return tuple(s)


__all__ = [
    "print_wa", "parse_wa", "print_cra", "parse_cra", "print_zset", "parse_zset", "print_report",
    "parse_report", "parse_document", "parse_word", "wa_to_obj", "cra_to_obj", "zset_to_obj",
]
