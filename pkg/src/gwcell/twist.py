"""Picard classes modulo squares on flag bundles, and the recursion's twist table.

A twist is a sparse Z/2 vector over named line-bundle generators: symbols
pulled back from the base (e.g. ``L`` or ``detE``), the rank-one quotients
``q_j`` of a fixed complete flag, and the determinant ``Delta_e`` of the
tautological rank-e subbundle.  Only the class modulo squares matters for
the duality, so addition is symmetric difference of generator sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable


@dataclass(frozen=True, order=True)
class BaseSymbol:
    """A line bundle class pulled back from the base scheme."""

    name: str

    def key(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class FlagQuotient:
    """The class of V_j / V_{j-1} for the fixed complete flag of V."""

    index: int

    def key(self) -> str:
        return f"q{self.index}"


@dataclass(frozen=True, order=True)
class Delta:
    """det of the tautological rank-e subbundle of the current Grassmannian."""

    rank: int

    def key(self) -> str:
        return f"Delta:{self.rank}"


Generator = BaseSymbol | FlagQuotient | Delta


def _parse_generator(token: str) -> Generator:
    if token.startswith("Delta:"):
        return Delta(int(token.split(":", 1)[1]))
    if token.startswith("q") and token[1:].isdigit():
        return FlagQuotient(int(token[1:]))
    return BaseSymbol(token)


@dataclass(frozen=True)
class PicClass:
    """An element of Pic modulo squares: a finite set of generators, mod 2."""

    generators: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "generators", frozenset(self.generators))

    @classmethod
    def of(cls, *gens: Generator) -> "PicClass":
        out = cls()
        for g in gens:
            out = out + cls(frozenset([g]))
        return out

    @classmethod
    def parse(cls, tokens: Iterable[str]) -> "PicClass":
        return cls.of(*[_parse_generator(t) for t in tokens])

    def __add__(self, other: "PicClass") -> "PicClass":
        return PicClass(self.generators ^ other.generators)

    def __bool__(self) -> bool:
        return bool(self.generators)

    def coefficient(self, gen: Generator) -> int:
        return 1 if gen in self.generators else 0

    def delta_part(self) -> "PicClass":
        return PicClass(frozenset(g for g in self.generators if isinstance(g, Delta)))

    def base_part(self) -> "PicClass":
        """The twist with all Delta generators removed."""
        return PicClass(frozenset(g for g in self.generators if not isinstance(g, Delta)))

    def without_quotients(self) -> "PicClass":
        return PicClass(frozenset(g for g in self.generators if not isinstance(g, FlagQuotient)))

    def serialize(self) -> list[str]:
        return sorted(g.key() for g in self.generators)

    def __str__(self):
        return "+".join(self.serialize()) if self.generators else "0"


def quotient_range(lo: int, hi: int) -> PicClass:
    """Sum of the flag quotient classes q_lo, ..., q_hi."""
    return PicClass(frozenset(FlagQuotient(i) for i in range(lo, hi + 1)))


@dataclass(frozen=True)
class FlagDescriptor:
    """A strict partition of subbundle ranks inside an ambient rank-r bundle."""

    ranks: tuple[int, ...]
    ambient_rank: int

    def __post_init__(self):
        ranks = tuple(self.ranks)
        object.__setattr__(self, "ranks", ranks)
        prev = 0
        for r in ranks:
            if not prev < r <= self.ambient_rank:
                raise ValueError(f"ranks {ranks} are not a strict partition within {self.ambient_rank}")
            prev = r


def pic_rank(flag: FlagDescriptor, base_pic_rank: int) -> int:
    """Rank of Pic of the flag bundle: one new Z factor per tautological step."""
    return base_pic_rank + len(flag.ranks)


def lambda_parity(t: PicClass, current_delta: Delta) -> int:
    """Coefficient of the current tautological determinant in the twist.

    Base symbols and flag quotient classes are pulled back from the base
    direction and contribute 0.
    """
    return t.coefficient(current_delta)


def det_of_range(flag: FlagDescriptor, j: int, k: int) -> PicClass:
    """det(V^k / V^j) as a sum of flag quotient classes, upper-index convention.

    With V^i = V_{r-i} the quotient V^k / V^j telescopes to the rank-one
    quotients q_{r-j+1}, ..., q_{r-k}.
    """
    r = flag.ambient_rank
    if not 0 <= k < j <= r:
        raise ValueError(f"need 0 <= k < j <= {r}, got j={j}, k={k}")
    return quotient_range(r - j + 1, r - k)


H_TILDE = "H-tilde"
H = "H"


@dataclass(frozen=True)
class LineBundleTableEntry:
    """One row of the fixed twist table, instantiated at flag level j = 0.

    ``site`` is (subbundle rank e, upper flag index i) for the Grassmannian
    Gr_e(V^i) carrying the twist; ``value`` is given per parity of d as a
    function of the ambient rank r.
    """

    family: str
    name: str
    site: tuple[int, int]
    value_d_odd: str
    value_d_even: str


# The defining table of the two twist families and their child twists.
# Token meanings: "L" stands for the base part of the incoming twist,
# "detV/V1" and "detV/V2" for the top one or two flag quotients, "V1/V2"
# for the second-from-top quotient, "Delta" for the child site's Delta.
LINE_BUNDLE_TABLE = (
    LineBundleTableEntry(H_TILDE, "Htilde", (0, 0), "L", "L,Delta"),
    LineBundleTableEntry(H_TILDE, "Htilde^(1)_d", (0, 1), "L,detV/V1,Delta", "L"),
    LineBundleTableEntry(H_TILDE, "Htilde^(1)_d-1", (-1, 1), "L", "L,detV/V1,Delta"),
    LineBundleTableEntry(H, "H", (0, 0), "L,Delta", "L"),
    LineBundleTableEntry(H, "H^(2)_d", (0, 2), "L,detV/V2,Delta", "L"),
    LineBundleTableEntry(H, "H^(2)_d-2", (-2, 2), "L,detV/V2,Delta", "L"),
    LineBundleTableEntry(H, "H^(1)_d", (0, 1), "L,detV/V1", "L,Delta"),
    LineBundleTableEntry(H, "H^(1)_d-1", (-1, 1), "L,detV/V1,Delta", "L"),
    LineBundleTableEntry(H, "H^(2)_d-1", (-1, 2), "L,detV/V1", "L,V1/V2,Delta"),
)


def instantiate_row(entry: LineBundleTableEntry, d: int, r: int, j: int, base: PicClass) -> PicClass:
    """Evaluate a table row at flag level j: V becomes V^j, V^1 becomes V^{j+1}."""
    tokens = (entry.value_d_odd if d % 2 == 1 else entry.value_d_even).split(",")
    top = r - j  # rank of V^j; its top quotient class is q_top
    out = PicClass()
    for tok in tokens:
        if tok == "L":
            out = out + base
        elif tok == "detV/V1":
            out = out + PicClass.of(FlagQuotient(top))
        elif tok == "detV/V2":
            out = out + PicClass.of(FlagQuotient(top), FlagQuotient(top - 1))
        elif tok == "V1/V2":
            out = out + PicClass.of(FlagQuotient(top - 1))
        elif tok == "Delta":
            out = out + PicClass.of(Delta(d + entry.site[0]))
        else:
            raise ValueError(f"unknown table token {tok!r}")
    return out


def child_twists(family: str, d: int, t: PicClass, j: int, ambient_rank: int) -> dict:
    """Twists carried by the child Grassmannians one recursion step down.

    The incoming twist t lives on Gr_d(V^j).  Returns a map from child site
    (child subbundle rank, child upper flag index) to the child twist; the
    K-theory site of the second family carries no twist and is omitted.
    """
    eps = lambda_parity(t, Delta(d))
    if family == H_TILDE:
        if eps != (d - 1) % 2:
            raise ValueError(f"twist {t} is not in the {family} family for d={d}")
        wanted = ("Htilde^(1)_d", "Htilde^(1)_d-1")
    elif family == H:
        if eps != d % 2:
            raise ValueError(f"twist {t} is not in the {family} family for d={d}")
        wanted = ("H^(2)_d", "H^(2)_d-2")
    else:
        raise ValueError(f"unknown family {family!r}")
    base = t.base_part()
    out = {}
    for entry in LINE_BUNDLE_TABLE:
        if entry.family == family and entry.name in wanted:
            site = (d + entry.site[0], j + entry.site[1])
            out[site] = instantiate_row(entry, d, ambient_rank, j, base)
    return out
