"""Young diagrams in a rectangular frame and their evenness combinatorics.

A diagram lives inside a d x m frame (d rows, m columns).  The diagrams
whose filled/unfilled interface consists only of even-length straight
segments index the rank-one summands of the decompositions computed by
the engine; the beta numbers below count the remaining K-theory summands.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


@dataclass(frozen=True)
class Frame:
    """A d x m rectangle: d rows, m columns."""

    d: int
    m: int

    def __post_init__(self):
        if self.d < 0 or self.m < 0:
            raise ValueError(f"frame dimensions must be nonnegative, got {self.d}x{self.m}")


@dataclass(frozen=True)
class YoungDiagram:
    """A partition fitting inside a frame, stored as all d row lengths.

    Rows are weakly decreasing and bounded by the frame width; trailing
    zero rows are kept so that two diagrams in the same frame always have
    row vectors of equal length.
    """

    frame: Frame
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.frame.d:
            raise ValueError(f"expected {self.frame.d} rows, got {len(rows)}")
        prev = self.frame.m
        for r in rows:
            if not 0 <= r <= prev:
                raise ValueError(f"rows {rows} are not weakly decreasing within width {self.frame.m}")
            prev = r

    def boxes(self) -> int:
        return sum(self.rows)

    def transpose(self) -> "YoungDiagram":
        """Conjugate partition in the transposed frame."""
        new_rows = tuple(sum(1 for r in self.rows if r > j) for j in range(self.frame.m))
        return YoungDiagram(Frame(self.frame.m, self.frame.d), new_rows)

    def contains_box(self, i: int, j: int) -> bool:
        """Whether box in row i, column j (both 1-based) is filled."""
        return 1 <= i <= self.frame.d and 1 <= j <= self.rows[i - 1]

    def __str__(self):
        inner = ",".join(str(r) for r in self.rows if r > 0)
        return f"({inner})" if inner else "()"


@dataclass(frozen=True)
class Segment:
    orientation: str
    length: int


@dataclass(frozen=True)
class SegmentDecomposition:
    """Maximal straight segments of the filled/unfilled interface.

    Segments are ordered from the top-right of the frame to the
    bottom-left; consecutive segments alternate orientation.  Edges lying
    on the frame border never appear.
    """

    segments: tuple[Segment, ...]

    def total_edges(self) -> int:
        return sum(s.length for s in self.segments)


def _group_edges(edges):
    """Merge an ordered run of unit edges into maximal straight segments.

    Each edge is (orientation, x, y): a vertical edge at column x from
    height y-1 to y, or a horizontal edge at height y from column x to x-1
    (the path moves downward and leftward).
    """
    segments = []
    current = None  # (orientation, length, x, y) of the growing run
    for orientation, x, y in edges:
        if current is not None and current[0] == orientation:
            corient, clen, cx, cy = current
            if orientation == VERTICAL and x == cx and y == cy + 1:
                current = (corient, clen + 1, cx, y)
                continue
            if orientation == HORIZONTAL and y == cy and x == cx - 1:
                current = (corient, clen + 1, x, cy)
                continue
        if current is not None:
            segments.append(Segment(current[0], current[1]))
        current = (orientation, 1, x, y)
    if current is not None:
        segments.append(Segment(current[0], current[1]))
    return SegmentDecomposition(tuple(segments))


def interface_segments(diagram: YoungDiagram) -> SegmentDecomposition:
    """Walk the staircase profile of the diagram, keeping interface edges.

    The profile runs from the top-right corner of the diagram to the
    bottom-left corner of the frame.  A vertical edge at column x only
    separates two in-frame boxes when 0 < x < m; a horizontal edge at
    height y only when 0 < y < d.
    """
    d, m = diagram.frame.d, diagram.frame.m
    rows = diagram.rows
    edges = []
    for i in range(1, d + 1):
        x = rows[i - 1]
        if 0 < x < m:
            edges.append((VERTICAL, x, i))
        nxt = rows[i] if i < d else 0
        if i < d:
            for x2 in range(x, nxt, -1):
                edges.append((HORIZONTAL, x2, i))
    return _group_edges(edges)


def is_even(diagram: YoungDiagram) -> bool:
    """True iff every interface segment has even length (vacuously for none)."""
    return all(s.length % 2 == 0 for s in interface_segments(diagram).segments)


def enumerate_diagrams(frame: Frame) -> list[YoungDiagram]:
    """All partitions fitting the frame, lexicographically descending on rows."""
    results = []

    def build(prefix, bound):
        if len(prefix) == frame.d:
            results.append(YoungDiagram(frame, tuple(prefix)))
            return
        for r in range(bound, -1, -1):
            prefix.append(r)
            build(prefix, r)
            prefix.pop()

    build([], frame.m)
    return results


def enumerate_even(frame: Frame) -> list[YoungDiagram]:
    """The even diagrams of the frame, in canonical enumeration order."""
    return [lam for lam in enumerate_diagrams(frame) if is_even(lam)]


def even_cardinality(d: int, m: int) -> int:
    """Closed form for the number of even diagrams in a d x m frame, d,m >= 1."""
    _require_positive(d, m)
    return 2 * comb(d // 2 + m // 2, d // 2)


def beta(d: int, m: int) -> int:
    """Number of K-theory summands contributed by the d x m frame, both twists."""
    _require_positive(d, m)
    return comb(d + m, d) - comb(d // 2 + m // 2, d // 2)


def beta_parity(l: int, d: int, m: int) -> int:
    """The per-twist-class count whose two values sum to beta(d, m)."""
    _require_positive(d, m)
    l = l % 2
    full = comb(d + m, d)
    half = comb(d // 2 + m // 2, d // 2)
    if d % 2 == 0 or m % 2 == 0:
        value = full - half
        assert value % 2 == 0
        return value // 2
    assert full % 2 == 0
    if l == 1:
        return full // 2
    return full // 2 - half


def _require_positive(d: int, m: int):
    if d < 1 or m < 1:
        raise ValueError(f"formula requires d, m >= 1, got d={d}, m={m}")


def _beta_parity_or_zero(l: int, d: int, m: int) -> int:
    # degenerate convention: an empty frame direction contributes no K summand
    if d == 0 or m == 0:
        return 0
    return beta_parity(l, d, m)


PASCAL_IDENTITY_IDS = (1, 2)


def verify_pascal(d_max: int, m_max: int) -> list[dict]:
    """Check both beta recursion identities over 1 <= d <= d_max, 1 <= m <= m_max.

    Identity 1: beta^[d+1](d, m) = beta^[d](d, m-1) + beta^[d-1](d-1, m).
    Identity 2: beta^[d](d, m)   = beta^[d](d, m-2) + C(d+m-2, m-1)
                                   + beta^[d-2](d-2, m).
    Sub-terms with a zero index use the degenerate value 0; negative indices
    make the identity inapplicable and are reported as skipped.
    """
    report = []
    for d in range(1, d_max + 1):
        for m in range(1, m_max + 1):
            lhs1 = beta_parity(d + 1, d, m)
            rhs1 = _beta_parity_or_zero(d, d, m - 1) + _beta_parity_or_zero(d - 1, d - 1, m)
            report.append({"d": d, "m": m, "identity": 1, "status": "holds" if lhs1 == rhs1 else "fails"})
            if d - 2 < 0 or m - 2 < 0:
                report.append({"d": d, "m": m, "identity": 2, "status": "skipped"})
                continue
            lhs2 = beta_parity(d, d, m)
            rhs2 = (
                _beta_parity_or_zero(d, d, m - 2)
                + comb(d + m - 2, m - 1)
                + _beta_parity_or_zero(d - 2, d - 2, m)
            )
            report.append({"d": d, "m": m, "identity": 2, "status": "holds" if lhs2 == rhs2 else "fails"})
    return report


def render_ascii(diagram: YoungDiagram) -> str:
    """Draw the diagram in its frame: '#' filled boxes, '.' empty ones."""
    d, m = diagram.frame.d, diagram.frame.m
    border = "+" + "-" * m + "+"
    lines = [border]
    for i in range(1, d + 1):
        cells = "".join("#" if diagram.contains_box(i, j) else "." for j in range(1, m + 1))
        lines.append("|" + cells + "|")
    lines.append(border)
    return "\n".join(lines)
