"""Exact rational geometry for straight-line spatial graphs.

Everything here is exact: coordinates are :class:`fractions.Fraction` and
all predicates are sign tests on integer or rational expressions. Before any
predicate runs, the points are scaled by the lcm of their denominators, which
is a positive similarity and leaves every combinatorial answer unchanged.

Projection convention: for a direction ``d`` the viewer sits at ``+inf * d``
looking back along ``-d``. The strand with the larger value of ``p . d`` at a
crossing is the over strand, and the crossing sign of two oriented strands is
``sign(det(over_dir, under_dir, d))`` (right-handed crossings are +1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import NamedTuple, Optional, Sequence

Edge = tuple[int, int]

DEFAULT_MAX_LADDER = 10**6


class Point3(NamedTuple):
    x: Fraction
    y: Fraction
    z: Fraction

    @classmethod
    def of(cls, x, y, z) -> "Point3":
        return cls(Fraction(x), Fraction(y), Fraction(z))


class Segment(NamedTuple):
    a: Point3
    b: Point3
    edge_id: int


@dataclass(frozen=True)
class ProjectionDirection:
    d: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        if not any(self.d):
            raise ValueError("projection direction must be non-zero")

    @classmethod
    def ladder(cls, k: int) -> "ProjectionDirection":
        return cls((Fraction(1), Fraction(k), Fraction(k * k)))


@dataclass(frozen=True)
class PlanarCrossing:
    """Transversal crossing between the images of two non-adjacent edges.

    ``t_lo`` and ``t_hi`` are the exact parameters of the crossing along
    each edge in its reference orientation (lower vertex id to higher).
    ``sign`` is the crossing sign with both edges in reference orientation.
    """

    edge_lo: int
    edge_hi: int
    point: tuple[Fraction, Fraction]
    over_edge: int
    sign: int
    t_lo: Fraction
    t_hi: Fraction

    @property
    def under_edge(self) -> int:
        return self.edge_hi if self.over_edge == self.edge_lo else self.edge_lo

    def param(self, edge_id: int) -> Fraction:
        if edge_id == self.edge_lo:
            return self.t_lo
        if edge_id == self.edge_hi:
            return self.t_hi
        raise KeyError(edge_id)


class GeneralPositionError(ValueError):
    """Raised when an embedding is not in general position."""

    def __init__(self, kind: str, detail: tuple):
        self.kind = kind
        self.detail = detail
        super().__init__(f"{kind}: {detail}")


class DegenerateProjectionError(ValueError):
    pass


# -- integer vector helpers -------------------------------------------------

def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def _dot(p, q):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def _cross(p, q):
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def _is_zero(v) -> bool:
    return v[0] == 0 and v[1] == 0 and v[2] == 0


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def to_integer_points(points: Sequence[Sequence]) -> list[tuple[int, int, int]]:
    """Scale rational points by the lcm of all denominators."""
    fr = [tuple(Fraction(c) for c in p) for p in points]
    m = 1
    for p in fr:
        for c in p:
            m = lcm(m, c.denominator)
    return [tuple(int(c * m) for c in p) for p in fr]


def _as_int_direction(d) -> tuple[int, int, int]:
    fr = [Fraction(c) for c in d]
    m = lcm(*(c.denominator for c in fr))
    return tuple(int(c * m) for c in fr)


def _normalize_edges(edges: Sequence[Edge]) -> list[Edge]:
    return [(min(u, v), max(u, v)) for u, v in edges]


# -- general position ---------------------------------------------------------

def _point_in_open_segment(p, a, b) -> bool:
    ab = _sub(b, a)
    ap = _sub(p, a)
    if not _is_zero(_cross(ab, ap)):
        return False
    t_num = _dot(ap, ab)
    return 0 < t_num < _dot(ab, ab)


def _segments_meet_3d(p, q, r, s) -> bool:
    """Closed segments pq and rs share a point (exact)."""
    u = _sub(q, p)
    v = _sub(s, r)
    w = _sub(r, p)
    n = _cross(u, v)
    if _is_zero(n):
        if not _is_zero(_cross(u, w)):
            return False
        # collinear: overlap of parameter intervals along u
        uu = _dot(u, u)
        t0 = _dot(w, u)
        t1 = _dot(_sub(s, p), u)
        lo, hi = min(t0, t1), max(t0, t1)
        return hi >= 0 and lo <= uu
    if _dot(w, n) != 0:
        return False  # skew lines
    nn = _dot(n, n)
    t = _dot(_cross(w, v), n)
    s_ = _dot(_cross(w, u), n)
    return 0 <= t <= nn and 0 <= s_ <= nn


def general_position_violation(points, edges) -> Optional[tuple[str, tuple]]:
    """Return ``(kind, tuple)`` for the first violation, or None."""
    pts = to_integer_points(points)
    if len(set(pts)) != len(pts):
        seen = {}
        for i, p in enumerate(pts):
            if p in seen:
                return ("coincident vertices", (seen[p], i))
            seen[p] = i
    edges = _normalize_edges(edges)
    for eid, (u, v) in enumerate(edges):
        for w in range(len(pts)):
            if w != u and w != v and _point_in_open_segment(pts[w], pts[u], pts[v]):
                return ("vertex on segment", (w, eid))
    for i in range(len(edges)):
        a, b = edges[i]
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            shared = {a, b} & {c, d}
            if shared:
                (s,) = shared
                x = b if a == s else a
                y = d if c == s else c
                if _is_zero(_cross(_sub(pts[x], pts[s]), _sub(pts[y], pts[s]))):
                    return ("collinear adjacent segments", (i, j))
            elif _segments_meet_3d(pts[a], pts[b], pts[c], pts[d]):
                return ("segments intersect", (i, j))
    return None


def validate_general_position(points, edges) -> None:
    """Raise :class:`GeneralPositionError` unless the embedding is generic."""
    bad = general_position_violation(points, edges)
    if bad is not None:
        raise GeneralPositionError(*bad)


# -- projection ---------------------------------------------------------------

def _plane_basis(d):
    # u = d x e for an axis e not parallel to d; v = d x u, so u x v = |u|^2 d
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        u = _cross(d, e)
        if not _is_zero(u):
            return u, _cross(d, u)
    raise DegenerateProjectionError("zero direction")


def _cross2(p, q):
    return p[0] * q[1] - p[1] * q[0]


def _sub2(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _in_open_segment_2d(p, a, b) -> bool:
    ab = _sub2(b, a)
    ap = _sub2(p, a)
    if _cross2(ab, ap) != 0:
        return False
    t = ap[0] * ab[0] + ap[1] * ab[1]
    return 0 < t < ab[0] * ab[0] + ab[1] * ab[1]


class _Projected:
    def __init__(self, points, edges, d):
        self.pts3 = to_integer_points(points)
        self.d = _as_int_direction(d)
        u, v = _plane_basis(self.d)
        self.pts2 = [(_dot(p, u), _dot(p, v)) for p in self.pts3]
        self.depth = [_dot(p, self.d) for p in self.pts3]
        self.edges = _normalize_edges(edges)

    def scan(self) -> tuple[Optional[str], list[PlanarCrossing]]:
        """Return (reason the direction is non-generic or None, crossings)."""
        p2, edges = self.pts2, self.edges
        if len(set(p2)) != len(p2):
            return "projected vertices coincide", []
        for eid, (a, b) in enumerate(edges):
            if p2[a] == p2[b]:
                return f"edge {eid} projects to a point", []
            for w in range(len(p2)):
                if w != a and w != b and _in_open_segment_2d(p2[w], p2[a], p2[b]):
                    return f"vertex {w} projects onto edge {eid}", []
        crossings = []
        seen_points = set()
        for i in range(len(edges)):
            a, b = edges[i]
            r = _sub2(p2[b], p2[a])
            for j in range(i + 1, len(edges)):
                c, dd = edges[j]
                s = _sub2(p2[dd], p2[c])
                denom = _cross2(r, s)
                adjacent = bool({a, b} & {c, dd})
                if denom == 0:
                    if _cross2(r, _sub2(p2[c], p2[a])) == 0:
                        if adjacent:
                            return f"adjacent edges {i},{j} project collinear", []
                        rr = r[0] * r[0] + r[1] * r[1]
                        t0 = r[0] * (p2[c][0] - p2[a][0]) + r[1] * (p2[c][1] - p2[a][1])
                        t1 = r[0] * (p2[dd][0] - p2[a][0]) + r[1] * (p2[dd][1] - p2[a][1])
                        if max(t0, t1) >= 0 and min(t0, t1) <= rr:
                            return f"edges {i},{j} overlap in projection", []
                    continue
                if adjacent:
                    continue
                ca = _sub2(p2[c], p2[a])
                t_num = _cross2(ca, s)
                s_num = _cross2(ca, r)
                if denom < 0:
                    denom, t_num, s_num = -denom, -t_num, -s_num
                if not (0 <= t_num <= denom and 0 <= s_num <= denom):
                    continue
                if t_num in (0, denom) or s_num in (0, denom):
                    return f"edges {i},{j} meet at an endpoint in projection", []
                t = Fraction(t_num, denom)
                sp = Fraction(s_num, denom)
                point = (p2[a][0] + t * r[0], p2[a][1] + t * r[1])
                if point in seen_points:
                    return "triple point", []
                seen_points.add(point)
                pa, pb, pc, pd = (self.pts3[k] for k in (a, b, c, dd))
                dir_i = _sub(pb, pa)
                dir_j = _sub(pd, pc)
                depth_i = self.depth[a] + t * _dot(dir_i, self.d)
                depth_j = self.depth[c] + sp * _dot(dir_j, self.d)
                if depth_i == depth_j:
                    # only possible if the 3D segments meet
                    return f"edges {i},{j} intersect in space", []
                if depth_i > depth_j:
                    over, det = i, _dot(_cross(dir_i, dir_j), self.d)
                else:
                    over, det = j, _dot(_cross(dir_j, dir_i), self.d)
                crossings.append(PlanarCrossing(i, j, point, over, _sgn(det), t, sp))
        return None, crossings


def projection_defect(points, edges, direction: ProjectionDirection) -> Optional[str]:
    """Why ``direction`` is not generic for the embedding, or None."""
    reason, _ = _Projected(points, edges, direction.d).scan()
    return reason


def choose_generic_projection(points, edges, max_k: int = DEFAULT_MAX_LADDER) -> ProjectionDirection:
    """First generic direction in the ladder ``(1, k, k^2)``, k = 0, 1, ..."""
    for k in range(max_k + 1):
        direction = ProjectionDirection.ladder(k)
        if projection_defect(points, edges, direction) is None:
            return direction
    raise DegenerateProjectionError(f"no generic direction with k <= {max_k}")


def project_crossings(points, edges, direction: ProjectionDirection) -> list[PlanarCrossing]:
    """All crossings between images of non-adjacent edges, ordered by edge pair.

    Edge ids are positions in ``edges``; each edge is oriented from its lower
    vertex id to its higher one.
    """
    reason, crossings = _Projected(points, edges, direction.d).scan()
    if reason is not None:
        raise DegenerateProjectionError(reason)
    return crossings


def crossing_between(points, edge_e: Edge, edge_f: Edge, direction: ProjectionDirection):
    """Crossing data for two oriented segments ``u->v`` in the given order.

    Returns ``(sign, e_is_over)`` or None when the images do not cross.
    The sign uses the orientations exactly as passed.
    """
    pts = to_integer_points(points)
    d = _as_int_direction(direction.d)
    u, v = _plane_basis(d)
    a, b = edge_e
    c, dd = edge_f
    if {a, b} & {c, dd}:
        raise ValueError("edges share a vertex")

    def p2(k):
        return (_dot(pts[k], u), _dot(pts[k], v))

    r = _sub2(p2(b), p2(a))
    s = _sub2(p2(dd), p2(c))
    denom = _cross2(r, s)
    if denom == 0:
        return None
    ca = _sub2(p2(c), p2(a))
    t = Fraction(_cross2(ca, s), denom)
    sp = Fraction(_cross2(ca, r), denom)
    if not (0 < t < 1 and 0 < sp < 1):
        return None
    dir_e = _sub(pts[b], pts[a])
    dir_f = _sub(pts[dd], pts[c])
    depth_e = _dot(pts[a], d) + t * _dot(dir_e, d)
    depth_f = _dot(pts[c], d) + sp * _dot(dir_f, d)
    e_over = depth_e > depth_f
    over_dir, under_dir = (dir_e, dir_f) if e_over else (dir_f, dir_e)
    return _sgn(_dot(_cross(over_dir, under_dir), d)), e_over
