"""Canonical on-disk documents for algebra elements.

The format is line-stable JSON: terms are sorted in the canonical
monomial order, coefficients are 'p' or 'p/q' strings, and a chain is the
alternating list  [jets, (d1,x,y), jets, ..., (d1,x,y), jets]  of alpha
slots, core monomials and the final beta slot (plain Hs data drops the
jets slots).  Printing is deterministic, parsing then printing is
byte-identical, and the content hash covers everything except metadata.
"""

import hashlib
import json

from .extended import HtsElement, HtsMonomial, TensorElement
from .hopf_core import HsElement, HsMonomial, HsTensor2
from .rational import format_rational, parse_rational

SCHEMA_VERSION = "1"

KINDS = ("hs_element", "hts_element", "tensor2", "tensor3", "rc_set")


def _jets_out(mono):
    return [[j, e] for j, e in mono]


def _jets_in(data):
    return tuple((int(j), int(e)) for j, e in data)


def _core_out(d1, x, y):
    return [d1, x, y]


def _hts_chain(monos):
    """Chain encoding of a tuple of HtsMonomials."""
    out = []
    for m in monos:
        out.append(_jets_out(m.alpha))
        out.append(_core_out(m.d1, m.x, m.y))
    out.append(_jets_out(monos[-1].beta))
    return out


def _hts_unchain(chain):
    if len(chain) % 2 != 1 or len(chain) < 3:
        raise ValueError("malformed chain of length %d" % len(chain))
    rank = (len(chain) - 1) // 2
    monos = []
    for i in range(rank):
        alpha = _jets_in(chain[2 * i])
        d1, x, y = (int(v) for v in chain[2 * i + 1])
        beta = _jets_in(chain[-1]) if i == rank - 1 else ()
        monos.append(HtsMonomial(alpha, beta, d1, x, y))
    return tuple(monos)


def element_to_doc(obj, metadata=None):
    """Build a document dict for a supported element type."""
    terms = []
    if isinstance(obj, HsElement):
        kind = "hs_element"
        for m, c in obj.sorted_terms():
            terms.append({"coef": format_rational(c), "chain": [_core_out(*m)]})
    elif isinstance(obj, HtsElement):
        kind = "hts_element"
        for m, c in obj.sorted_terms():
            terms.append({"coef": format_rational(c), "chain": _hts_chain((m,))})
    elif isinstance(obj, TensorElement):
        if obj.rank == 2:
            kind = "tensor2"
        elif obj.rank == 3:
            kind = "tensor3"
        else:
            raise ValueError("no document kind for rank %d" % obj.rank)
        for chain, c in obj.sorted_terms():
            terms.append({"coef": format_rational(c), "chain": _hts_chain(chain)})
    elif isinstance(obj, HsTensor2):
        kind = "tensor2"
        for (m1, m2), c in obj.sorted_terms():
            chain = [[], _core_out(*m1), [], _core_out(*m2), []]
            terms.append({"coef": format_rational(c), "chain": chain})
    else:
        raise TypeError("cannot serialize %r" % type(obj).__name__)
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, "terms": terms}
    doc["metadata"] = dict(metadata) if metadata else {}
    return doc


def rc_set_to_doc(bracket_set, metadata=None):
    elements = []
    for n, el in enumerate(bracket_set.elements):
        elements.append(
            {"order": n, "terms": element_to_doc(el)["terms"]}
        )
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "rc_set",
        "max_order": bracket_set.max_order,
        "elements": elements,
    }
    doc["metadata"] = dict(metadata) if metadata else {}
    return doc


def _terms_to_element(kind, terms):
    if kind == "hs_element":
        out = {}
        for t in terms:
            chain = t["chain"]
            mono = HsMonomial(*(int(v) for v in chain[0]))
            out[mono] = out.get(mono, 0) + parse_rational(t["coef"])
        return HsElement(out)
    if kind == "hts_element":
        out = {}
        for t in terms:
            (mono,) = _hts_unchain(t["chain"])
            out[mono] = out.get(mono, 0) + parse_rational(t["coef"])
        return HtsElement(out)
    if kind in ("tensor2", "tensor3"):
        rank = 2 if kind == "tensor2" else 3
        out = {}
        for t in terms:
            monos = _hts_unchain(t["chain"])
            if len(monos) != rank:
                raise ValueError("chain rank mismatch")
            out[monos] = out.get(monos, 0) + parse_rational(t["coef"])
        return TensorElement(rank, out)
    raise ValueError("unknown kind %r" % (kind,))


def doc_to_element(doc):
    kind = doc["kind"]
    if kind == "rc_set":
        from .rc_engine import RCBracketSet

        elements = [
            _terms_to_element("tensor2", entry["terms"]).with_t_order(entry["order"])
            for entry in sorted(doc["elements"], key=lambda e: e["order"])
        ]
        return RCBracketSet(doc["max_order"], elements)
    return _terms_to_element(kind, doc["terms"])


def _hash_payload(doc):
    payload = {k: v for k, v in doc.items() if k != "metadata"}
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def content_hash(doc) -> str:
    return hashlib.sha256(_hash_payload(doc).encode()).hexdigest()


def dumps(doc) -> str:
    """Canonical text form; stable byte-for-byte across runs and platforms."""
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def loads(text):
    doc = json.loads(text)
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValueError("not an expression document")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError("unsupported schema version %r" % doc.get("schema_version"))
    if doc["kind"] not in KINDS:
        raise ValueError("unknown kind %r" % doc["kind"])
    return doc


def save(path, obj, metadata=None):
    if hasattr(obj, "elements") and hasattr(obj, "max_order"):
        doc = rc_set_to_doc(obj, metadata)
    else:
        doc = element_to_doc(obj, metadata)
    text = dumps(doc)
    with open(path, "w") as fh:
        fh.write(text)
    return doc


def load(path):
    with open(path) as fh:
        return doc_to_element(loads(fh.read()))
