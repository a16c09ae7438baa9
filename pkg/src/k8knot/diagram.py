"""Signed Gauss codes for embedded cycles, zeta' and linking numbers.

Text format, one token per crossing pass: ``O`` or ``U``, the crossing id,
then the sign, e.g. ``O1+U2+O3+U1+O2+U3+`` for a trefoil. Components are
separated by ``|``; an empty component is an unknotted circle with no
crossings.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .embedding import Embedding
from .geometry import crossing_between
from .graph import Cycle, EdgeArg

_TOKEN = re.compile(r"([OU])(\d+)([+-])")


class Pass(NamedTuple):
    cid: int
    over: bool
    sign: int

    def __str__(self):
        return f"{'O' if self.over else 'U'}{self.cid}{'+' if self.sign > 0 else '-'}"


class InvalidGaussCode(ValueError):
    pass


@dataclass(frozen=True)
class GaussCode:
    components: tuple[tuple[Pass, ...], ...]

    @classmethod
    def of(cls, components: Sequence[Sequence]) -> "GaussCode":
        return cls(tuple(tuple(Pass(int(c), bool(o), int(s)) for c, o, s in comp) for comp in components))

    @classmethod
    def parse(cls, text: str) -> "GaussCode":
        comps = []
        for part in text.replace("−", "-").replace(" ", "").split("|"):
            pos = 0
            passes = []
            for m in _TOKEN.finditer(part):
                if m.start() != pos:
                    raise InvalidGaussCode(f"unexpected text {part[pos:m.start()]!r}")
                passes.append(Pass(int(m.group(2)), m.group(1) == "O", 1 if m.group(3) == "+" else -1))
                pos = m.end()
            if pos != len(part):
                raise InvalidGaussCode(f"unexpected text {part[pos:]!r}")
            comps.append(tuple(passes))
        return cls(tuple(comps)).validate()

    def __str__(self):
        return "|".join("".join(str(p) for p in comp) for comp in self.components)

    def validate(self) -> "GaussCode":
        if not self.components:
            raise InvalidGaussCode("a code needs at least one component")
        seen: dict[int, list[Pass]] = {}
        for comp in self.components:
            for p in comp:
                if p.sign not in (1, -1):
                    raise InvalidGaussCode(f"bad sign at crossing {p.cid}")
                seen.setdefault(p.cid, []).append(p)
        for cid, ps in seen.items():
            if len(ps) != 2:
                raise InvalidGaussCode(f"crossing {cid} occurs {len(ps)} times")
            if ps[0].over == ps[1].over:
                raise InvalidGaussCode(f"crossing {cid} needs one over and one under pass")
            if ps[0].sign != ps[1].sign:
                raise InvalidGaussCode(f"crossing {cid} has inconsistent signs")
        return self

    @property
    def n_components(self) -> int:
        return len(self.components)

    def crossing_ids(self) -> list[int]:
        return sorted({p.cid for comp in self.components for p in comp})

    @property
    def n_crossings(self) -> int:
        return sum(len(c) for c in self.components) // 2

    def sign_of(self, cid: int) -> int:
        for comp in self.components:
            for p in comp:
                if p.cid == cid:
                    return p.sign
        raise KeyError(cid)

    def locate(self, cid: int) -> list[tuple[int, int]]:
        """(component, position) of both passes of a crossing."""
        return [(i, j) for i, comp in enumerate(self.components) for j, p in enumerate(comp) if p.cid == cid]

    def reversed_component(self, index: int) -> "GaussCode":
        """Reverse the orientation of one component.

        Every crossing that involves the component exactly once changes sign;
        self-crossings of the component keep theirs.
        """
        comps = list(self.components)
        own = Counter(p.cid for p in comps[index])
        flip = {cid for cid, k in own.items() if k == 1}
        new = []
        for i, comp in enumerate(comps):
            seq = comp[::-1] if i == index else comp
            new.append(tuple(Pass(p.cid, p.over, -p.sign if p.cid in flip else p.sign) for p in seq))
        return GaussCode(tuple(new))


# -- diagrams of embedded cycles -------------------------------------------------

def cycles_diagram(embedding: Embedding, cycles: Sequence[Cycle]) -> GaussCode:
    """Gauss code of the union of vertex-disjoint cycles, one component each.

    Only crossings between two edges of the union appear; crossing ids are the
    embedding's global crossing ids, so the same crossing keeps its id across
    the diagrams of different cycles.
    """
    sigma: dict[int, int] = {}
    for cyc in cycles:
        for eid, s in zip(cyc.edges, cyc.directions()):
            sigma[eid] = s
    comps = []
    for cyc in cycles:
        passes = []
        for eid in cyc.edges:
            s = sigma[eid]
            seq = embedding.edge_crossings[eid]
            if s < 0:
                seq = seq[::-1]
            for cid, other in seq:
                if other not in sigma:
                    continue
                c = embedding.crossing(cid)
                passes.append(Pass(cid, c.over_edge == eid, c.sign * s * sigma[other]))
        comps.append(tuple(passes))
    return GaussCode(tuple(comps))


def knot_diagram(embedding: Embedding, cycle: Cycle) -> GaussCode:
    return cycles_diagram(embedding, [cycle])


def link_diagram(embedding: Embedding, c1: Cycle, c2: Cycle) -> GaussCode:
    if set(c1.vertices) & set(c2.vertices):
        raise ValueError("link components must be vertex-disjoint cycles")
    return cycles_diagram(embedding, [c1, c2])


def zeta_prime(embedding: Embedding, E: EdgeArg, F: EdgeArg) -> Fraction:
    """Half the signed count of crossings between two oriented edges.

    Computed directly from the geometry in argument order, so the symmetry
    ``zeta_prime(E, F) == zeta_prime(F, E)`` is a checkable property rather
    than a table lookup.
    """
    g = embedding.graph
    e, et, eh = g.oriented(E)
    f, ft, fh = g.oriented(F)
    if g.adjacent(e, f) or e == f:
        raise ValueError("zeta' is only defined for non-adjacent edges")
    hit = crossing_between(embedding.points, (et, eh), (ft, fh), embedding.projection)
    if hit is None:
        return Fraction(0)
    return Fraction(hit[0], 2)


def linking_number(code: GaussCode) -> int:
    """Half the signed count of crossings between the two components."""
    if code.n_components != 2:
        raise ValueError("linking number needs exactly two components")
    first = Counter(p.cid for p in code.components[0])
    total = sum(p.sign for p in code.components[0] if first[p.cid] == 1)
    if total % 2:
        raise InvalidGaussCode("odd inter-component sign sum")
    return total // 2

