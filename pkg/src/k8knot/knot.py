"""Conway polynomial and derived invariants of Gauss-coded diagrams.

The Conway polynomial is computed by skein resolution toward a descending
diagram: walk the components in order from their base points; the first
crossing reached on its under pass is switched and smoothed,

    nabla(D) = nabla(D with c switched) + sign(c) * z * nabla(D smoothed at c),

and a diagram with no such crossing is a stack of unknots (nabla = 1 for one
component, 0 otherwise). Results are memoized on a relabeled copy of the
code.

``a2_fast`` evaluates the second coefficient directly from the Gauss diagram:
the signed count of chord pairs met, from the base point, in the order
under(c1), over(c2), over(c1), under(c2). It is checked against the skein
engine in the test suite, not trusted on its own.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .diagram import GaussCode, InvalidGaussCode, Pass

MAX_CROSSINGS = 64

Poly = tuple[int, ...]


def _trim(p: list[int]) -> Poly:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p) if p else (0,)


def _add(p: Poly, q: Poly, shift: int = 0, scale: int = 1) -> Poly:
    out = list(p) + [0] * max(0, len(q) + shift - len(p))
    for i, c in enumerate(q):
        out[i + shift] += scale * c
    return _trim(out)


@dataclass(frozen=True)
class ConwayResult:
    coefficients: tuple[int, ...]

    def coeff(self, k: int) -> int:
        return self.coefficients[k] if k < len(self.coefficients) else 0

    @property
    def a2(self) -> int:
        return self.coeff(2)

    @property
    def is_trivial(self) -> bool:
        return self.coefficients == (1,)

    def __sub__(self, other: "ConwayResult") -> "ConwayResult":
        return ConwayResult(_add(self.coefficients, other.coefficients, scale=-1))

    def times_z(self) -> "ConwayResult":
        if self.coefficients == (0,):
            return self
        return ConwayResult((0,) + self.coefficients)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return " + ".join(terms) or "0"


# -- crossing operators -----------------------------------------------------

def _require(code: GaussCode, cid: int):
    where = code.locate(cid)
    if len(where) != 2:
        raise KeyError(f"no crossing {cid} in code")
    return where


def flip_crossing(code: GaussCode, cid: int) -> GaussCode:
    """Swap over and under at one crossing; its sign changes."""
    _require(code, cid)
    return GaussCode(
        tuple(
            tuple(Pass(p.cid, not p.over, -p.sign) if p.cid == cid else p for p in comp)
            for comp in code.components
        )
    )


def smooth_crossing(code: GaussCode, cid: int) -> GaussCode:
    """Oriented smoothing at one crossing.

    A self-crossing splits its component in two; a crossing between two
    components merges them.
    """
    (i, p), (j, q) = _require(code, cid)
    comps = list(code.components)
    if i == j:
        s = comps[i]
        inner = s[p + 1:q]
        outer = s[q + 1:] + s[:p]
        new = comps[:i] + [outer, inner] + comps[i + 1:]
    else:
        si, sj = comps[i], comps[j]
        merged = sj[q + 1:] + sj[:q] + si[p + 1:] + si[:p]
        new = [c for k, c in enumerate(comps) if k not in (i, j)]
        new.insert(i, merged)
    return GaussCode(tuple(new))


# -- Conway polynomial ---------------------------------------------------------
#
# Internally a pass is one int: (crossing id << 2) | (over << 1) | (sign > 0).

def _encode(components) -> tuple:
    return tuple(
        tuple((p.cid << 2) | (2 if p.over else 0) | (1 if p.sign > 0 else 0) for p in comp)
        for comp in components
    )


def _r1(comps: list) -> bool:
    """Remove one kink (both passes of a crossing adjacent on a component)."""
    for k, s in enumerate(comps):
        L = len(s)
        for i in range(L):
            j = (i + 1) % L
            if i != j and s[i] >> 2 == s[j] >> 2:
                cid = s[i] >> 2
                comps[k] = tuple(x for x in s if x >> 2 != cid)
                return True
    return False


def _r2(comps: list) -> bool:
    """Remove one bigon: two crossings adjacent on both strands, one strand over both."""
    adjacent_pairs = {}
    for k, s in enumerate(comps):
        L = len(s)
        if L < 2:
            continue
        for i in range(L if L > 2 else 1):
            x, y = s[i], s[(i + 1) % L]
            cx, cy = x >> 2, y >> 2
            if cx == cy or (x & 2) != (y & 2):
                continue
            key = (min(cx, cy), max(cx, cy))
            kind = x & 2
            other = adjacent_pairs.get(key)
            if other is not None and other != kind and (x & 1) != (y & 1):
                comps[:] = [tuple(z for z in c if (z >> 2) not in key) for c in comps]
                return True
            adjacent_pairs[key] = kind
    return False


def _split(comps) -> bool:
    """True if the crossings do not connect all components."""
    n = len(comps)
    if n == 1:
        return False
    owner: dict[int, int] = {}
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k, s in enumerate(comps):
        for x in s:
            c = x >> 2
            if c in owner:
                parent[find(owner[c])] = find(k)
            else:
                owner[c] = k
    return len({find(k) for k in range(n)}) > 1


def _bad_count(seq) -> int:
    seen = set()
    bad = 0
    for x in seq:
        c = x >> 2
        if c not in seen:
            seen.add(c)
            if not x & 2:
                bad += 1
    return bad


def _normalize(comps) -> tuple:
    """Choose base points and component order, then renumber crossings.

    Each component starts where the fewest self-crossings are first met from
    below; components that are over at more inter-component crossings go
    first. Any choice gives a correct result; this one keeps the resolution
    tree small and the memo keys stable.
    """
    rotated = []
    for s in comps:
        if len(s) > 2:
            s = min((s[i:] + s[:i] for i in range(len(s))), key=lambda r: (_bad_count(r), r))
        rotated.append(s)
    counts = [{} for _ in rotated]
    for k, s in enumerate(rotated):
        for x in s:
            counts[k][x >> 2] = counts[k].get(x >> 2, 0) + 1
    def rank(k):
        s = rotated[k]
        over_inter = sum(1 for x in s if counts[k][x >> 2] == 1 and x & 2)
        under_inter = sum(1 for x in s if counts[k][x >> 2] == 1 and not x & 2)
        return (under_inter - over_inter, len(s), s)
    order = sorted(range(len(rotated)), key=rank)
    ids: dict[int, int] = {}
    out = []
    for k in order:
        row = []
        for x in rotated[k]:
            c = x >> 2
            if c not in ids:
                ids[c] = len(ids) + 1
            row.append((ids[c] << 2) | (x & 3))
        out.append(tuple(row))
    return tuple(out)


def _nabla(comps) -> Poly:
    work = list(comps)
    while _r1(work) or _r2(work):
        pass
    if len(work) > 1 and (any(not s for s in work) or _split(work)):
        return (0,)
    if len(work) == 1 and not work[0]:
        return (1,)
    return _nabla_key(_normalize(work))


@lru_cache(maxsize=1 << 18)
def _nabla_key(key) -> Poly:
    seen = set()
    bad = None
    for comp in key:
        for x in comp:
            c = x >> 2
            if c not in seen:
                if not x & 2:
                    bad = x
                    break
                seen.add(c)
        if bad is not None:
            break
    if bad is None:
        return (1,) if len(key) == 1 else (0,)
    c = bad >> 2
    sign = 1 if bad & 1 else -1
    switched = tuple(tuple((x ^ 3) if x >> 2 == c else x for x in comp) for comp in key)
    smoothed = _smooth_encoded(key, c)
    rest = _nabla(switched)
    zpart = _nabla(smoothed)
    if zpart == (0,):
        return rest
    return _add(rest, zpart, shift=1, scale=sign)


def _smooth_encoded(comps, c: int) -> tuple:
    where = [(k, i) for k, s in enumerate(comps) for i, x in enumerate(s) if x >> 2 == c]
    (i, p), (j, q) = where
    comps = list(comps)
    if i == j:
        s = comps[i]
        return tuple(comps[:i] + [s[q + 1:] + s[:p], s[p + 1:q]] + comps[i + 1:])
    si, sj = comps[i], comps[j]
    merged = sj[q + 1:] + sj[:q] + si[p + 1:] + si[:p]
    rest = [s for k, s in enumerate(comps) if k not in (i, j)]
    rest.insert(i, merged)
    return tuple(rest)


def _checked(code: GaussCode) -> GaussCode:
    code.validate()
    if code.n_crossings > MAX_CROSSINGS:
        raise InvalidGaussCode(f"more than {MAX_CROSSINGS} crossings")
    return code


def conway(code: GaussCode) -> ConwayResult:
    _checked(code)
    return ConwayResult(_nabla(_encode(code.components)))


def _single(code: GaussCode) -> GaussCode:
    _checked(code)
    if code.n_components != 1:
        raise ValueError("expected a one-component (knot) code")
    return code


def a2(code: GaussCode) -> int:
    return conway(_single(code)).a2


def arf(code: GaussCode) -> int:
    return a2(code) % 2


def a2_fast(code: GaussCode) -> int:
    (seq,) = _single(code).components
    chords: dict[int, list] = {}
    for pos, p in enumerate(seq):
        if p.cid in chords:
            chords[p.cid][1] = pos
        else:
            chords[p.cid] = [pos, None, p.over, p.sign]
    # c1 is first met as an under pass, c2 as an over pass, interleaved as c1 c2 c1 c2
    opens_under = [c for c in chords.values() if not c[2]]
    opens_over = [c for c in chords.values() if c[2]]
    total = 0
    for a0, a1, _, s1 in opens_under:
        for b0, b1, _, s2 in opens_over:
            if a0 < b0 < a1 < b1:
                total += s1 * s2
    return total


def connected_sum(k1: GaussCode, k2: GaussCode) -> GaussCode:
    """Concatenate two knot codes at their base points (ids of k2 shifted)."""
    (s1,) = _single(k1).components
    (s2,) = _single(k2).components
    off = max((p.cid for p in s1), default=0)
    return GaussCode((s1 + tuple(Pass(p.cid + off, p.over, p.sign) for p in s2),))


# -- fingerprints ----------------------------------------------------------------

LABELS = {(1,): "unknot-like", (1, 0, 1): "trefoil-like", (1, 0, -1): "figure8-like"}


@dataclass(frozen=True)
class KnotFingerprint:
    a2: int
    arf: int
    conway: ConwayResult
    label: str

    def to_dict(self) -> dict:
        return {"a2": self.a2, "arf": self.arf, "conway": list(self.conway.coefficients), "label": self.label}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def fingerprint_from_conway(c: ConwayResult) -> KnotFingerprint:
    return KnotFingerprint(c.a2, c.a2 % 2, c, LABELS.get(c.coefficients, "other"))


def fingerprint(code: GaussCode) -> KnotFingerprint:
    return fingerprint_from_conway(conway(_single(code)))
