"""Straight-line spatial embeddings of graphs and their JSON form."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .geometry import (
    PlanarCrossing,
    Point3,
    ProjectionDirection,
    choose_generic_projection,
    project_crossings,
    validate_general_position,
)
from .graph import Graph, complete_graph


@dataclass(frozen=True)
class Embedding:
    """Vertex ``i`` of ``graph`` sits at ``points[i]``; edges are straight.

    The projection direction and crossing table are computed lazily and
    cached on the instance.
    """

    graph: Graph
    points: tuple[Point3, ...]

    def __post_init__(self):
        if len(self.points) != self.graph.n:
            raise ValueError("one point per vertex required")

    @classmethod
    def from_coords(cls, coords: Sequence[Sequence], graph: Optional[Graph] = None) -> "Embedding":
        pts = tuple(Point3.of(*c) for c in coords)
        return cls(graph or complete_graph(len(pts)), pts)

    def validate(self) -> "Embedding":
        validate_general_position(self.points, self.graph.edges)
        return self

    @cached_property
    def projection(self) -> ProjectionDirection:
        return choose_generic_projection(self.points, self.graph.edges)

    @cached_property
    def crossings(self) -> tuple[PlanarCrossing, ...]:
        return tuple(project_crossings(self.points, self.graph.edges, self.projection))

    @cached_property
    def crossing_ids(self) -> dict[tuple[int, int], int]:
        """Edge pair (lo, hi) -> 1-based crossing id."""
        return {(c.edge_lo, c.edge_hi): i + 1 for i, c in enumerate(self.crossings)}

    @cached_property
    def edge_crossings(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per edge: ``(crossing_id, other_edge)`` sorted by position along it."""
        per_edge = [[] for _ in self.graph.edges]
        for cid, c in enumerate(self.crossings, start=1):
            per_edge[c.edge_lo].append((c.t_lo, cid, c.edge_hi))
            per_edge[c.edge_hi].append((c.t_hi, cid, c.edge_lo))
        return tuple(tuple((cid, other) for _, cid, other in sorted(lst)) for lst in per_edge)

    def crossing(self, cid: int) -> PlanarCrossing:
        return self.crossings[cid - 1]

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        d = {"n": self.graph.n, "coords": [[_num_out(c) for c in p] for p in self.points]}
        if not self.graph.is_complete:
            d["edges"] = [list(e) for e in self.graph.edges]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Embedding":
        n = int(data["n"])
        coords = data["coords"]
        if len(coords) != n:
            raise ValueError(f"expected {n} coordinate triples, got {len(coords)}")
        pts = tuple(Point3(*(_num_in(c) for c in p)) for p in coords)
        if "edges" in data and data["edges"] is not None:
            graph = Graph.from_edges(n, data["edges"])
        else:
            graph = complete_graph(n)
        return cls(graph, pts)

    @classmethod
    def from_json(cls, text: str) -> "Embedding":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "Embedding":
        with open(path) as fh:
            return cls.from_json(fh.read())

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json() + "\n")

    @property
    def hash(self) -> str:
        canon = json.dumps(
            {"coords": [[str(c) for c in p] for p in self.points], "edges": [list(e) for e in self.graph.edges]},
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(canon.encode()).hexdigest()


def _num_out(c: Fraction):
    return c.numerator if c.denominator == 1 else str(c)


def _num_in(c) -> Fraction:
    if isinstance(c, bool):
        raise ValueError("boolean coordinate")
    if isinstance(c, (list, tuple)):
        num, den = c
        return Fraction(int(num), int(den))
    if isinstance(c, float):
        raise ValueError("floating-point coordinates are not accepted; use integers or 'p/q' strings")
    return Fraction(c)
