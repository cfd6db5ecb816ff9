"""The decomposition engine.

Executes the splitting recursions for Grassmannians over a base with a
complete flag, with the projective-bundle decomposition as base case.
Every GW leaf is threaded with the even Young diagram recording which
cells produced it; K-theory copies are only counted.

The recursion on Gr_d of an ambient rank d+m bundle dispatches on the
parity of the twist relative to the tautological determinant:

* parity d-1 ("first family"): split into Gr_d of the corank-1 subbundle,
  shifted by d, and Gr_{d-1} of it, unshifted; the shifted branch prepends
  a full column to every leaf diagram.
* parity d ("second family"): a K-theory block of rank C(d+m-2, d-1) plus
  Gr_d of the corank-2 subbundle shifted by 2d (two prepended columns) and
  Gr_{d-2} of it unshifted (two appended empty rows).

Queries with d > m are transposed through the dual Grassmannian first.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import twist as tw
from . import young
from .expr import FormalSum, GWSummand, LongExactSequence
from .twist import BaseSymbol, Delta, FlagQuotient, PicClass, lambda_parity, quotient_range
from .young import Frame, YoungDiagram

TRIVIAL = "trivial"
FLAGGED = "flagged"

DET_E = BaseSymbol("detE")
DET_V = BaseSymbol("detV")


@dataclass(frozen=True)
class GrassmannQuery:
    d: int
    m: int
    shift: int
    twist: PicClass
    bundle: str = TRIVIAL

    def __post_init__(self):
        if self.d < 0 or self.m < 0:
            raise ValueError(f"need d, m >= 0, got d={self.d}, m={self.m}")
        if self.bundle not in (TRIVIAL, FLAGGED):
            raise ValueError(f"unknown bundle kind {self.bundle!r}")


@dataclass(frozen=True)
class ProjBundleQuery:
    """P(E) for a rank r+1 bundle E; the twist enters only through its parity."""

    r: int
    parity: int
    shift: int
    split: bool = True

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"need bundle rank >= 2, got r+1 = {self.r + 1}")
        if self.parity not in (0, 1):
            raise ValueError("twist parity must be 0 or 1")


@dataclass(frozen=True)
class _Leaf:
    """A GW leaf relative to its query: diagram, shift offset, extra twist."""

    rows: tuple[int, ...]
    offset: int  # always equals -sum(rows)
    extra: PicClass  # accumulated quotient classes, relative to the query's base twist


_CACHE: dict[tuple[int, int, int], tuple[int, tuple[_Leaf, ...]]] = {}


def _reverse_quotients(cls: PicClass, r0: int) -> PicClass:
    """Flip q_i to q_{r0+1-i}: effect of passing to the dual flag."""
    gens = []
    for g in cls.generators:
        if isinstance(g, FlagQuotient) and g.index <= r0:
            gens.append(FlagQuotient(r0 + 1 - g.index))
        else:
            gens.append(g)
    return PicClass(frozenset(gens))


def _solve(d: int, m: int, eps: int) -> tuple[int, tuple[_Leaf, ...]]:
    """K count and GW leaves of Gr_d (ambient rank d+m) at twist eps * Delta_d.

    Leaf data is relative: shifts are offsets from the query shift, twists
    are the flag quotient classes accumulated on top of the query's base
    twist.  An arbitrary base twist rides along additively, so this is the
    only shape that needs memoizing.
    """
    key = (d, m, eps)
    if key in _CACHE:
        return _CACHE[key]

    r0 = d + m
    if d == 0:
        assert eps == 0, "rank-0 tautological determinant carries no twist"
        result = (0, (_Leaf((), 0, PicClass()),))
    elif m == 0:
        # Gr_d of a rank-d bundle is the base; Delta_d telescopes to det V.
        extra = quotient_range(1, d) if eps else PicClass()
        result = (0, (_Leaf((0,) * d, 0, extra),))
    elif d > m:
        # dual Grassmannian: Delta_d corresponds to Delta_m + det V there
        k, leaves = _solve(m, d, eps)
        det_v = quotient_range(1, r0)
        out = []
        for leaf in leaves:
            diagram = YoungDiagram(Frame(m, d), leaf.rows).transpose()
            extra = _reverse_quotients(leaf.extra, r0)
            if eps:
                extra = extra + det_v
            out.append(_Leaf(diagram.rows, leaf.offset, extra))
        result = (k, tuple(out))
    elif d == 1:
        result = _solve_projective_line_case(m, eps)
    else:
        family = tw.H_TILDE if eps == (d - 1) % 2 else tw.H
        t = PicClass.of(Delta(d)) if eps else PicClass()
        children = tw.child_twists(family, d, t, 0, r0)
        if family == tw.H_TILDE:
            k_extra = 0
            spec = [((d, m - 1), -d, _prepend_columns(1)), ((d - 1, m), 0, _append_rows(1))]
        else:
            k_extra = comb(d + m - 2, d - 1)
            spec = [((d, m - 2), -2 * d, _prepend_columns(2)), ((d - 2, m), 0, _append_rows(2))]
        k_total = k_extra
        out = []
        for ((cd, cm), offset, thread), (site, ct) in zip(spec, sorted(children.items(), reverse=True)):
            assert site[0] == cd
            c_eps = lambda_parity(ct, Delta(cd))
            c_base = ct.base_part()
            ck, cleaves = _solve(cd, cm, c_eps)
            k_total += ck
            for leaf in cleaves:
                rows = thread(leaf.rows, d, m)
                out.append(_Leaf(rows, offset + leaf.offset, c_base + leaf.extra))
        result = (k_total, tuple(out))

    for leaf in result[1]:
        diagram = YoungDiagram(Frame(d, m), leaf.rows)
        assert young.is_even(diagram), f"engine produced uneven leaf {diagram} for {key}"
        assert leaf.offset == -diagram.boxes()
    _CACHE[key] = result
    return result


def _solve_projective_line_case(m: int, eps: int) -> tuple[int, tuple[_Leaf, ...]]:
    """Gr_1 of a rank m+1 bundle: the projective bundle decomposition."""
    det_e = quotient_range(1, m + 1)
    empty = _Leaf((0,), 0, PicClass())
    full = _Leaf((m,), -m, det_e)
    if m % 2 == 0:
        if eps == 0:
            return m // 2, (empty,)
        return m // 2, (full,)
    if eps == 1:
        return (m + 1) // 2, ()
    return (m - 1) // 2, (empty, full)


def _prepend_columns(count):
    def thread(rows, d, m):
        assert len(rows) == d
        return tuple(r + count for r in rows)

    return thread


def _append_rows(count):
    def thread(rows, d, m):
        assert len(rows) == d - count
        return rows + (0,) * count

    return thread


def decompose_point(shift: int, t: PicClass) -> FormalSum:
    """A degenerate Grassmannian: the base itself, one GW summand."""
    leaf = GWSummand(
        shift=shift,
        twist=t,
        diagram=YoungDiagram(Frame(0, 0), ()),
        t_index=lambda_parity(t, Delta(0)),
        rho=0,
    )
    return FormalSum.with_meta(0, (leaf,), kind="point", shift=shift)


def decompose_grassmannian(q: GrassmannQuery) -> FormalSum:
    """Decompose one Grassmannian at one twist into base K and GW summands."""
    r0 = q.d + q.m
    eps = lambda_parity(q.twist, Delta(q.d))
    base0 = q.twist.base_part()
    for g in base0.generators:
        if isinstance(g, FlagQuotient) and not 1 <= g.index <= r0:
            raise ValueError(f"twist generator {g.key()} outside the rank-{r0} flag")
    if q.twist.delta_part() not in (PicClass(), PicClass.of(Delta(q.d))):
        raise ValueError(f"twist {q.twist} is not expressed over the query's Delta_{q.d}")

    k, leaves = _solve(q.d, q.m, eps)
    det_v = quotient_range(1, r0)
    gw = []
    for leaf in leaves:
        if leaf.extra == PicClass():
            rho = 0
        elif leaf.extra == det_v:
            rho = 1
        else:
            raise AssertionError(f"leaf twist {leaf.extra} did not telescope to 0 or detV")
        if q.bundle == TRIVIAL:
            out_twist = base0
        else:
            out_twist = base0 + (PicClass.of(DET_V) if rho else PicClass())
        gw.append(
            GWSummand(
                shift=q.shift + leaf.offset,
                twist=out_twist,
                diagram=YoungDiagram(Frame(q.d, q.m), leaf.rows),
                t_index=eps,
                rho=rho,
            )
        )
    return FormalSum.with_meta(
        k,
        tuple(gw),
        kind="grassmannian",
        d=q.d,
        m=q.m,
        shift=q.shift,
        twist="+".join(q.twist.serialize()),
        bundle=q.bundle,
    )


def decompose_total(d: int, m: int, shift: int, base: PicClass, bundle: str = TRIVIAL) -> FormalSum:
    """Both twist classes of one Grassmannian, summed."""
    if d < 1 or m < 1:
        raise ValueError(f"total decomposition needs d, m >= 1, got {d}, {m}")
    even = decompose_grassmannian(GrassmannQuery(d, m, shift, base, bundle))
    odd = decompose_grassmannian(GrassmannQuery(d, m, shift, base + PicClass.of(Delta(d)), bundle))
    total = FormalSum.with_meta(
        even.k + odd.k,
        even.gw + odd.gw,
        kind="grassmannian-total",
        d=d,
        m=m,
        shift=shift,
        twist="+".join(base.serialize()),
        bundle=bundle,
    )
    return total


def flag_closed_form(d: int, m: int, l: int, shift: int, base: PicClass = PicClass()) -> FormalSum:
    """One twist class of the flagged Grassmannian, with determinant exponents."""
    t = base + (PicClass.of(Delta(d)) if l % 2 else PicClass())
    return decompose_grassmannian(GrassmannQuery(d, m, shift, t, FLAGGED))


def decompose_projective_bundle(q: ProjBundleQuery) -> FormalSum | LongExactSequence:
    """Decompose P(E) for a rank r+1 bundle E over the base.

    The four parity cases split into three direct-sum shapes plus one long
    exact sequence; the latter is returned only when ``split`` is off.
    """
    frame = Frame(1, q.r)
    meta = dict(kind="projective-bundle", r=q.r, parity=q.parity, shift=q.shift)
    untwisted = GWSummand(
        shift=q.shift, twist=PicClass(), diagram=YoungDiagram(frame, (0,)), t_index=q.parity, rho=0
    )
    det_leaf = GWSummand(
        shift=q.shift - q.r,
        twist=PicClass.of(DET_E),
        diagram=YoungDiagram(frame, (q.r,)),
        t_index=q.parity,
        rho=1,
    )
    if q.r % 2 == 0:
        if q.parity == 0:
            return FormalSum.with_meta(q.r // 2, (untwisted,), **meta)
        return FormalSum.with_meta(q.r // 2, (det_leaf,), **meta)
    if q.parity == 1:
        return FormalSum.with_meta((q.r + 1) // 2, (), **meta)
    if q.split:
        return FormalSum.with_meta((q.r - 1) // 2, (untwisted, det_leaf), **meta)
    return les_theorem_d(q.r, q.shift)


def les_theorem_d(r: int, shift: int) -> LongExactSequence:
    """The non-split localization sequence for P(E) with r odd, even twist.

    Purely structural: three terms cycling with degree, with the paper's
    map labels attached and no map ever evaluated.
    """
    if r % 2 == 0:
        raise ValueError(f"the sequence exists for odd r only, got r={r}")
    first = FormalSum.with_meta(
        (r - 1) // 2,
        (GWSummand(shift=shift, twist=PicClass(), t_index=0),),
        kind="les-term",
        site="S",
        r=r,
        shift=shift,
    )
    middle = f"GW^[{shift}](P(E))"
    last = FormalSum.with_meta(
        0,
        (GWSummand(shift=shift - r, twist=PicClass.of(DET_E), t_index=0),),
        kind="les-term",
        site="S",
        r=r,
        shift=shift,
    )
    return LongExactSequence(
        terms=(first, middle, last),
        maps=("(Theta_even, q^*)", "q_*", "(0, eta cup c(E))"),
    )


def clear_cache():
    _CACHE.clear()
