import json

import pytest
from hypothesis import given, strategies as st

from gwcell.expr import (
    AbelianGroup,
    BaseTheoryTable,
    ContextMismatchError,
    FormalSum,
    GWSummand,
    LongExactSequence,
    MissingKeyError,
    counts,
    direct_sum,
    equals,
    evaluate,
    formal_sum_from_json,
    formal_sum_to_json,
    witt_specialize,
)
from gwcell.twist import BaseSymbol, PicClass
from gwcell.young import Frame, YoungDiagram

L = PicClass.of(BaseSymbol("L"))


def gw(shift, twist=L, rows=None, d=2, m=2, t=None, rho=None):
    diagram = None
    if rows is not None:
        diagram = YoungDiagram(Frame(d, m), tuple(rows) + (0,) * (d - len(rows)))
    return GWSummand(shift=shift, twist=twist, diagram=diagram, t_index=t, rho=rho)


def fsum(k=0, *summands, **meta):
    return FormalSum.with_meta(k, summands, **meta)


def formal_sums():
    summand = st.builds(
        gw,
        st.integers(-6, 2),
        st.sampled_from([L, PicClass()]),
    )
    return st.builds(lambda k, s: fsum(k, *s), st.integers(0, 4), st.lists(summand, max_size=4))


class TestDirectSum:
    def test_multiset_union(self):
        a = fsum(2)
        b = fsum(1, gw(0))
        c = direct_sum(a, b)
        assert c.k == 3 and len(c.gw) == 1

    def test_identity(self):
        a = fsum(1, gw(-2))
        assert equals(direct_sum(a, fsum(0)), a)

    def test_multiplicity(self):
        a = fsum(0, gw(-2))
        c = direct_sum(a, a)
        assert len(c.gw) == 2 and c.gw[0] == c.gw[1]

    def test_context_mismatch(self):
        a = fsum(1, d=2)
        b = fsum(1, d=3)
        with pytest.raises(ContextMismatchError):
            direct_sum(a, b)
        merged = direct_sum(a, b, merge=True)
        assert merged.k == 2

    @given(formal_sums(), formal_sums())
    def test_commutative(self, a, b):
        assert equals(direct_sum(a, b), direct_sum(b, a))

    @given(formal_sums(), formal_sums(), formal_sums())
    def test_associative(self, a, b, c):
        assert equals(direct_sum(direct_sum(a, b), c), direct_sum(a, direct_sum(b, c)))


class TestEquals:
    def test_reflexive_and_canonical(self):
        a = fsum(1, gw(-2), gw(0))
        b = fsum(1, gw(0), gw(-2))
        assert equals(a, b)

    def test_ignores_diagrams_when_absent(self):
        with_diagram = fsum(0, gw(-2, rows=(1, 1)))
        without = fsum(0, gw(-2))
        assert equals(with_diagram, without)

    def test_distinguishes_shifts(self):
        assert not equals(fsum(0, gw(-2)), fsum(0, gw(-1)))

    def test_distinguishes_diagrams_when_both_labelled(self):
        a = fsum(0, gw(-2, rows=(1, 1)))
        b = fsum(0, gw(-2, rows=(2,)))
        assert not equals(a, b)


class TestWittSpecialize:
    def test_kills_k_and_reduces_shifts(self):
        a = fsum(4, gw(0), gw(-2), gw(-2), gw(-4))
        w = witt_specialize(a)
        assert w.k == 0
        assert sorted(g.shift for g in w.gw) == [0, 0, 2, 2]

    def test_pure_k_becomes_empty(self):
        assert witt_specialize(fsum(5)).is_empty()

    def test_empty(self):
        assert witt_specialize(fsum(0)).is_empty()

    @given(formal_sums(), formal_sums())
    def test_commutes_with_direct_sum(self, a, b):
        lhs = witt_specialize(direct_sum(a, b, merge=True))
        rhs = direct_sum(witt_specialize(a), witt_specialize(b), merge=True)
        assert equals(lhs, rhs)


def simple_table():
    doc = {
        "name": "synthetic",
        "entries": [
            {"theory": "K", "shift": 0, "twist": [], "degree": 0, "group": [0]},
            {"theory": "GW", "shift": 0, "twist": ["L"], "degree": 0, "group": [0, 2]},
            {"theory": "GW", "shift": -2, "twist": ["L"], "degree": 0, "group": [2]},
        ],
    }
    return BaseTheoryTable.from_json(doc)


class TestEvaluate:
    def test_k_additivity(self):
        assert evaluate(fsum(3), simple_table(), 0) == AbelianGroup((0, 0, 0))

    def test_gw_lookup(self):
        got = evaluate(fsum(1, gw(0), gw(-2)), simple_table(), 0)
        assert got == AbelianGroup((0, 0, 2, 2))

    def test_empty_sum(self):
        assert evaluate(fsum(0), simple_table(), 0) == AbelianGroup()

    def test_missing_keys_all_reported(self):
        with pytest.raises(MissingKeyError) as err:
            evaluate(fsum(0, gw(-1), gw(-3)), simple_table(), 0)
        assert len(err.value.keys) == 2

    @given(formal_sums(), formal_sums())
    def test_distributes_over_direct_sum(self, a, b):
        entries = [{"theory": "K", "shift": 0, "twist": [], "degree": 0, "group": [0]}]
        for shift in range(-6, 3):
            for tw in (["L"], []):
                entries.append({"theory": "GW", "shift": shift, "twist": tw, "degree": 0, "group": [0, 3]})
        table = BaseTheoryTable.from_json({"name": "t", "entries": entries})
        lhs = evaluate(direct_sum(a, b, merge=True), table, 0)
        rhs = evaluate(a, table, 0) + evaluate(b, table, 0)
        assert lhs == rhs


class TestCounts:
    def test_projection(self):
        k, profile = counts(fsum(4, gw(0, t=0), gw(-2, t=1), gw(-2, t=1), gw(-4, t=0)))
        assert k == 4
        assert profile == [(-4, "L", 0), (-2, "L", 1), (-2, "L", 1), (0, "L", 0)]

    def test_point(self):
        assert counts(fsum(0, gw(0, t=0))) == (0, [(0, "L", 0)])


class TestAbelianGroup:
    def test_canonical_form(self):
        assert AbelianGroup((4, 0, 1, 2)).orders == (0, 2, 4)

    def test_direct_sum_concatenates(self):
        assert (AbelianGroup((0,)) + AbelianGroup((2,))).orders == (0, 2)

    def test_str(self):
        assert str(AbelianGroup((0, 2))) == "Z x Z/2"
        assert str(AbelianGroup()) == "0"

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            AbelianGroup((-1,))


class TestJson:
    def test_roundtrip(self):
        a = fsum(2, gw(-2, rows=(1, 1), t=1, rho=0), d=2, m=2)
        doc = formal_sum_to_json(a)
        back = formal_sum_from_json(doc, Frame(2, 2))
        assert equals(a, back)
        assert back.gw[0].diagram.rows == (1, 1)

    def test_json_is_deterministic(self):
        a = fsum(1, gw(0), gw(-2))
        assert json.dumps(formal_sum_to_json(a), sort_keys=True) == json.dumps(
            formal_sum_to_json(a), sort_keys=True
        )

    def test_base_table_rejects_malformed(self):
        with pytest.raises(Exception):
            BaseTheoryTable.from_json({"name": "x", "entries": [{"theory": "bogus"}]})


class TestLongExactSequence:
    def test_requires_matching_map_count(self):
        with pytest.raises(ValueError):
            LongExactSequence(terms=("A", "B"), maps=("f",))
