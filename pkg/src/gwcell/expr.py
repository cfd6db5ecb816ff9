"""Formal direct sums of K- and GW-summands, and their evaluation.

A decomposition result is a multiset of building blocks: anonymous copies
of the base K-theory (stored as a single count, since all of them are
isomorphic) and shifted, twisted GW-summands of the base, each optionally
labelled by the Young diagram that produced it.  Formal sums can be
specialized to Witt groups or evaluated against a user-supplied table of
base groups.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .twist import PicClass
from .young import Frame, YoungDiagram

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None


class MissingKeyError(KeyError):
    """Raised when a base-theory table lacks entries needed for evaluation."""

    def __init__(self, keys):
        self.keys = list(keys)
        super().__init__(f"base table is missing {len(self.keys)} keys: {self.keys}")


class ContextMismatchError(ValueError):
    """Raised when combining formal sums from different query contexts."""


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group as a multiset of cyclic orders.

    Order 0 denotes an infinite cyclic factor; order-1 factors are dropped.
    """

    orders: tuple[int, ...] = ()

    def __post_init__(self):
        cleaned = tuple(sorted(o for o in self.orders if o != 1))
        if any(o < 0 for o in cleaned):
            raise ValueError(f"cyclic orders must be nonnegative, got {self.orders}")
        object.__setattr__(self, "orders", cleaned)

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup(self.orders + other.orders)

    def free_rank(self) -> int:
        return sum(1 for o in self.orders if o == 0)

    def __str__(self):
        if not self.orders:
            return "0"
        return " x ".join("Z" if o == 0 else f"Z/{o}" for o in self.orders)


@dataclass(frozen=True)
class GWSummand:
    """One shifted, twisted GW-summand of the base.

    ``sort_index`` makes the canonical order explicit: (shift, twist key,
    diagram rows).  ``t_index`` is the twist class the summand lives in and
    ``rho`` the determinant exponent accumulated by the recursion; both are
    optional provenance.
    """

    sort_index: tuple = field(init=False, repr=False)
    shift: int
    twist: PicClass
    diagram: YoungDiagram | None = None
    t_index: int | None = None
    rho: int | None = None

    def __post_init__(self):
        rows = self.diagram.rows if self.diagram is not None else ()
        object.__setattr__(self, "sort_index", (self.shift, tuple(self.twist.serialize()), rows))

    def __lt__(self, other: "GWSummand"):
        key = (self.sort_index, self.t_index or 0, self.rho or 0)
        return key < (other.sort_index, other.t_index or 0, other.rho or 0)


@dataclass(frozen=True)
class FormalSum:
    """Canonical multiset of summands: a K count plus sorted GW-summands."""

    k: int = 0
    gw: tuple[GWSummand, ...] = ()
    meta: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gw", tuple(sorted(self.gw)))
        object.__setattr__(self, "meta", tuple(self.meta))

    @classmethod
    def with_meta(cls, k=0, gw=(), **meta) -> "FormalSum":
        return cls(k, tuple(gw), tuple(sorted(meta.items())))

    def meta_dict(self) -> dict:
        return dict(self.meta)

    def is_empty(self) -> bool:
        return self.k == 0 and not self.gw


def direct_sum(a: FormalSum, b: FormalSum, merge: bool = False) -> FormalSum:
    """Multiset union of two formal sums.

    The two sums must echo the same query context unless ``merge`` is set,
    in which case the contexts are recorded side by side.
    """
    if a.meta == b.meta:
        meta = a.meta
    elif merge:
        meta = (("merged", (a.meta, b.meta)),)
    else:
        raise ContextMismatchError(f"context mismatch: {a.meta} vs {b.meta}")
    return FormalSum(a.k + b.k, a.gw + b.gw, meta)


def _profile(s: FormalSum, with_diagrams: bool):
    if with_diagrams:
        return sorted(g.sort_index for g in s.gw)
    return sorted((g.shift, tuple(g.twist.serialize())) for g in s.gw)


def equals(a: FormalSum, b: FormalSum) -> bool:
    """Equality of canonical forms, ignoring diagram labels when absent.

    If either side carries a GW-summand without a diagram, comparison falls
    back to the (shift, twist) profile.
    """
    if a.k != b.k:
        return False
    labelled = all(g.diagram is not None for g in a.gw + b.gw)
    return _profile(a, labelled) == _profile(b, labelled)


def witt_specialize(a: FormalSum) -> FormalSum:
    """Pass to Witt groups: K-summands vanish, shifts reduce mod 4."""
    gw = tuple(replace(g, shift=g.shift % 4) for g in a.gw)
    meta = dict(a.meta)
    meta["mode"] = "witt"
    return FormalSum(0, gw, tuple(sorted(meta.items())))


def counts(a: FormalSum):
    """Project a sum to its K count and GW profile (shift, twist key, t)."""
    profile = sorted((g.shift, "+".join(g.twist.serialize()), g.t_index) for g in a.gw)
    return a.k, profile


@dataclass(frozen=True)
class BaseTheoryTable:
    """User-supplied evaluation data: (theory, shift, twist, degree) -> group."""

    name: str
    entries: tuple = ()

    def _index(self) -> dict:
        return {key: grp for key, grp in self.entries}

    @classmethod
    def from_json(cls, doc: dict) -> "BaseTheoryTable":
        validate_json(doc, BASE_TABLE_SCHEMA)
        entries = []
        for e in doc["entries"]:
            key = (e["theory"], e["shift"], tuple(sorted(e["twist"])), e["degree"])
            entries.append((key, AbelianGroup(tuple(e["group"]))))
        return cls(doc["name"], tuple(entries))

    @classmethod
    def load(cls, path) -> "BaseTheoryTable":
        with open(path) as f:
            return cls.from_json(json.load(f))


def evaluate(a: FormalSum, table: BaseTheoryTable, degree: int) -> AbelianGroup:
    """Direct sum of looked-up base groups; all-or-nothing on missing keys."""
    mode = a.meta_dict().get("mode")
    gw_theory = "W" if mode == "witt" else "GW"
    index = table._index()
    keys = []
    if a.k:
        keys.extend([("K", 0, (), degree)] * a.k)
    for g in a.gw:
        keys.append((gw_theory, g.shift, tuple(g.twist.serialize()), degree))
    missing = sorted({k for k in keys if k not in index})
    if missing:
        raise MissingKeyError(missing)
    total = AbelianGroup()
    for k in keys:
        total = total + index[k]
    return total


@dataclass(frozen=True)
class LongExactSequence:
    """A cyclic list of labeled terms with the connecting maps between them.

    Terms are formal sums or named group symbols; maps are the names of the
    morphisms between consecutive terms, never evaluated.
    """

    terms: tuple
    maps: tuple[str, ...]

    def __post_init__(self):
        if len(self.terms) != len(self.maps):
            raise ValueError("a cyclic sequence needs one map per consecutive term pair")


# --- JSON serialization -------------------------------------------------

FORMAL_SUM_SCHEMA = {
    "type": "object",
    "properties": {
        "k": {"type": "integer", "minimum": 0},
        "gw": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "shift": {"type": "integer"},
                    "twist": {"type": "array", "items": {"type": "string"}},
                    "diagram": {"type": ["array", "null"], "items": {"type": "integer"}},
                    "t": {"type": ["integer", "null"], "enum": [0, 1, None]},
                    "rho": {"type": ["integer", "null"], "enum": [0, 1, None]},
                },
                "required": ["shift", "twist", "diagram", "t"],
                "additionalProperties": False,
            },
        },
        "meta": {"type": "object"},
    },
    "required": ["k", "gw", "meta"],
    "additionalProperties": False,
}

BASE_TABLE_SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "theory": {"enum": ["GW", "K", "W"]},
                    "shift": {"type": "integer"},
                    "twist": {"type": "array", "items": {"type": "string"}},
                    "degree": {"type": "integer"},
                    "group": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                },
                "required": ["theory", "shift", "twist", "degree", "group"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["name", "entries"],
    "additionalProperties": False,
}


def validate_json(doc: dict, schema: dict):
    if jsonschema is not None:
        jsonschema.validate(doc, schema)


def _meta_value(v):
    if isinstance(v, tuple):
        return [_meta_value(x) for x in v]
    return v


def formal_sum_to_json(a: FormalSum) -> dict:
    doc = {
        "k": a.k,
        "gw": [
            {
                "shift": g.shift,
                "twist": g.twist.serialize(),
                "diagram": list(g.diagram.rows) if g.diagram is not None else None,
                "t": g.t_index,
                "rho": g.rho,
            }
            for g in a.gw
        ],
        "meta": {k: _meta_value(v) for k, v in a.meta},
    }
    validate_json(doc, FORMAL_SUM_SCHEMA)
    return doc


def formal_sum_from_json(doc: dict, frame: Frame | None = None) -> FormalSum:
    validate_json(doc, FORMAL_SUM_SCHEMA)
    gw = []
    for g in doc["gw"]:
        diagram = None
        if g["diagram"] is not None and frame is not None:
            diagram = YoungDiagram(frame, tuple(g["diagram"]))
        gw.append(
            GWSummand(
                shift=g["shift"],
                twist=PicClass.parse(g["twist"]),
                diagram=diagram,
                t_index=g.get("t"),
                rho=g.get("rho"),
            )
        )
    meta = tuple(sorted((k, v) for k, v in doc["meta"].items() if not isinstance(v, list)))
    return FormalSum(doc["k"], tuple(gw), meta)


def les_to_json(seq: LongExactSequence) -> dict:
    terms = []
    for t in seq.terms:
        if isinstance(t, FormalSum):
            terms.append(formal_sum_to_json(t))
        else:
            terms.append(t)
    return {"terms": terms, "maps": list(seq.maps)}
