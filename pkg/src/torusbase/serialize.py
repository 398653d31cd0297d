"""The document format: one JSON schema for every object the CLI handles.

All integers are written as decimal strings and rationals as "p/q" strings,
so numbers of any size round-trip exactly.  Sections: complex, sheaf, affine,
polytope, classes, gluing; a document carries any subset.
"""

import json
from fractions import Fraction

import numpy as np

from .affine import AffineSurface, EdgeTransition, SingularityMark
from .complexes import CellComplex
from .exact import zeros
from .polytopes import LatticePolytope
from .sheaves import CellularSheaf, Stalk


class DocumentError(ValueError):
    pass


def _enc_int(x):
    return str(int(x))


def _enc_frac(x):
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


def _dec_int(s):
    s = str(s).strip()
    if not (s.lstrip("+-").isdigit()):
        raise DocumentError("not an integer: %r" % (s,))
    return int(s)


def _dec_frac(s):
    s = str(s).strip()
    num, slash, den = s.partition("/")
    try:
        if slash:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise DocumentError("not a rational number: %r" % (s,))


def _enc_cell(c):
    if isinstance(c, tuple):
        return ["t"] + [_enc_cell(x) for x in c]
    if isinstance(c, str):
        return c
    if isinstance(c, int):
        return ["i", str(c)]
    raise DocumentError("cell id %r cannot be serialized" % (c,))


def _dec_cell(c):
    if isinstance(c, str):
        return c
    if isinstance(c, list) and c and c[0] == "t":
        return tuple(_dec_cell(x) for x in c[1:])
    if isinstance(c, list) and c and c[0] == "i":
        return int(c[1])
    raise DocumentError("malformed cell id %r" % (c,))


def _enc_matrix(M, frac=False):
    enc = _enc_frac if frac else _enc_int
    return [[enc(M[i, j]) for j in range(M.shape[1])] for i in range(M.shape[0])]


def _dec_matrix(rows, ring="Z"):
    dec = _dec_frac if ring == "Q" else _dec_int
    vals = [[dec(x) for x in r] for r in rows]
    m = len(vals)
    n = len(vals[0]) if vals else 0
    out = zeros(m, n, ring)
    for i, r in enumerate(vals):
        for j, x in enumerate(r):
            out[i, j] = x
    return out


def encode_complex(X):
    return {
        "cells": [[_enc_cell(c), d] for c, d in sorted(X.cells.items(), key=lambda p: str(p[0]))],
        "incidence": [
            [_enc_cell(a), _enc_cell(b), _enc_int(v)]
            for (a, b), v in sorted(X.incidence.items(), key=lambda p: str(p[0]))
        ],
        "boundary_words": [
            [_enc_cell(f), [[_enc_cell(e), _enc_int(s)] for e, s in w]]
            for f, w in sorted(X.boundary_words.items(), key=lambda p: str(p[0]))
        ],
    }


def decode_complex(doc):
    cells = {_dec_cell(c): int(d) for c, d in doc["cells"]}
    incidence = {(_dec_cell(a), _dec_cell(b)): _dec_int(v) for a, b, v in doc["incidence"]}
    words = {}
    for f, w in doc.get("boundary_words", []):
        words[_dec_cell(f)] = tuple((_dec_cell(e), _dec_int(s)) for e, s in w)
    return CellComplex(cells=cells, incidence=incidence, boundary_words=words)


def encode_sheaf(F):
    return {
        "ring": F.ring,
        "stalks": [
            [_enc_cell(c), s.rank, [_enc_int(m) for m in s.moduli]]
            for c, s in sorted(F.stalks.items(), key=lambda p: str(p[0]))
        ],
        "restrictions": [
            [_enc_cell(a), _enc_cell(b), _enc_matrix(M, F.ring == "Q")]
            for (a, b), M in sorted(F.restrictions.items(), key=lambda p: str(p[0]))
        ],
    }


def decode_sheaf(doc, base):
    ring = doc["ring"]
    if ring not in ("Z", "Q"):
        raise DocumentError("unknown ring %r" % (ring,))
    stalks = {}
    for item in doc["stalks"]:
        c, rank = _dec_cell(item[0]), int(item[1])
        moduli = tuple(_dec_int(m) for m in item[2]) if len(item) > 2 else ()
        stalks[c] = Stalk(rank, moduli)
    restrictions = {}
    for a, b, M in doc["restrictions"]:
        restrictions[(_dec_cell(a), _dec_cell(b))] = _dec_matrix(M, ring)
    return CellularSheaf(base, ring, stalks, restrictions)


def encode_affine(S):
    charts = []
    for f, ch in sorted(S.charts.items(), key=lambda p: str(p[0])):
        charts.append(
            [
                _enc_cell(f),
                [[_enc_cell(v), [_enc_frac(p[0]), _enc_frac(p[1])]] for v, p in
                 sorted(ch.items(), key=lambda q: str(q[0]))],
            ]
        )
    transitions = []
    for e, tr in sorted(S.transitions.items(), key=lambda p: str(p[0])):
        transitions.append(
            [
                _enc_cell(e),
                _enc_cell(tr.from_face),
                _enc_cell(tr.to_face),
                _enc_matrix(tr.A),
                [_enc_frac(tr.t[0]), _enc_frac(tr.t[1])],
            ]
        )
    markings = []
    for c, m in sorted(S.markings.items(), key=lambda p: str(p[0])):
        markings.append([_enc_cell(c), m.kind, m.k])
    chern = [
        [_enc_cell(f), [_enc_int(v[0]), _enc_int(v[1])]]
        for f, v in sorted(S.chern_cocycle.items(), key=lambda p: str(p[0]))
    ]
    return {"charts": charts, "transitions": transitions, "markings": markings, "chern": chern}


def decode_affine(doc, base):
    charts = {}
    for f, ch in doc["charts"]:
        charts[_dec_cell(f)] = {
            _dec_cell(v): (_dec_frac(p[0]), _dec_frac(p[1])) for v, p in ch
        }
    transitions = {}
    for item in doc["transitions"]:
        e, fa, fb, A, t = item
        transitions[_dec_cell(e)] = EdgeTransition(
            _dec_cell(fa),
            _dec_cell(fb),
            _dec_matrix(A, "Z"),
            np.array([_dec_frac(t[0]), _dec_frac(t[1])], dtype=object),
        )
    markings = {}
    for c, kind, k in doc.get("markings", []):
        markings[_dec_cell(c)] = SingularityMark(kind, int(k))
    chern = {}
    for f, v in doc.get("chern", []):
        chern[_dec_cell(f)] = (_dec_int(v[0]), _dec_int(v[1]))
    return AffineSurface(
        base=base, charts=charts, transitions=transitions, markings=markings,
        chern_cocycle=chern,
    )


def encode_polytope(P):
    return {
        "dimension": P.dimension,
        "halfspaces": [
            [[_enc_int(x) for x in a], _enc_frac(b)] for a, b in P.halfspaces
        ],
    }


def decode_polytope(doc):
    hs = [
        (tuple(_dec_int(x) for x in a), _dec_frac(b)) for a, b in doc["halfspaces"]
    ]
    return LatticePolytope(int(doc["dimension"]), hs)


def encode_classes(classes):
    out = []
    for name, cls in sorted(classes.items()):
        comps = []
        off, _ = cls.sheaf.offsets(cls.degree)
        for c in cls.sheaf.cochain_cells(cls.degree):
            vals = cls.component(c)
            if any(v != 0 for v in vals):
                enc = _enc_frac if cls.sheaf.ring == "Q" else _enc_int
                comps.append([_enc_cell(c), [enc(v) for v in vals]])
        out.append([name, cls.degree, comps])
    return out


def decode_classes(doc, sheaf):
    from .sheaves import class_from_components

    out = {}
    for name, degree, comps in doc:
        dec = _dec_frac if sheaf.ring == "Q" else _dec_int
        components = {_dec_cell(c): [dec(v) for v in vals] for c, vals in comps}
        out[name] = class_from_components(sheaf, int(degree), components)
    return out


def encode_document(complex=None, sheaf=None, affine=None, polytope=None, classes=None):
    doc = {"format": "torusbase/1"}
    if complex is not None:
        doc["complex"] = encode_complex(complex)
    if sheaf is not None:
        doc["sheaf"] = encode_sheaf(sheaf)
    if affine is not None:
        doc["affine"] = encode_affine(affine)
    if polytope is not None:
        doc["polytope"] = encode_polytope(polytope)
    if classes is not None:
        doc["classes"] = encode_classes(classes)
    return doc


class Document:
    def __init__(self, raw):
        self.raw = raw
        self.complex = None
        self.affine = None
        self.sheaf = None
        self.polytope = None
        if "complex" in raw:
            self.complex = decode_complex(raw["complex"])
        if "affine" in raw:
            if self.complex is None:
                raise DocumentError("affine section requires a complex section")
            self.affine = decode_affine(raw["affine"], self.complex)
        if "sheaf" in raw:
            if self.complex is None:
                raise DocumentError("sheaf section requires a complex section")
            self.sheaf = decode_sheaf(raw["sheaf"], self.complex)
        if "polytope" in raw:
            self.polytope = decode_polytope(raw["polytope"])

    def classes(self, sheaf):
        return decode_classes(self.raw.get("classes", []), sheaf)


def loads(text):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(
            "parse error at line %d column %d: %s" % (err.lineno, err.colno, err.msg)
        )
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    return Document(raw)


def dumps(doc_dict):
    return json.dumps(doc_dict, indent=1, sort_keys=True)


def load_path(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
