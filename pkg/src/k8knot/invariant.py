"""Sum-of-a2 invariant, knotted-cycle census and the K8 trichotomy.

A cycle is counted as knotted when its Conway polynomial is not 1
("nabla-knotted"). This can miss knots with trivial Conway polynomial but
never counts an unknot.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .diagram import knot_diagram
from .embedding import Embedding
from .graph import CycleFamily
from .knot import a2_fast, conway, fingerprint_from_conway, KnotFingerprint, ConwayResult

DEFAULT_MODULI = (2, 3, 6)

_UNKNOT = fingerprint_from_conway(ConwayResult((1,)))


@dataclass(frozen=True)
class CycleRecord:
    index: int
    vertices: tuple[int, ...]
    crossings: int
    fingerprint: KnotFingerprint

    @property
    def a2(self) -> int:
        return self.fingerprint.a2

    @property
    def arf(self) -> int:
        return self.fingerprint.arf

    @property
    def knotted(self) -> bool:
        return not self.fingerprint.conway.is_trivial

    def to_dict(self) -> dict:
        d = {"cycle": self.index, "vertices": list(self.vertices), "crossings": self.crossings}
        d.update(self.fingerprint.to_dict())
        return d


@dataclass
class EmbeddingAnalysis:
    embedding_hash: str
    n_vertices: int
    family_tag: str
    records: list[CycleRecord]
    mu: dict[int, int]
    knotted: list[CycleRecord]
    case: Optional[int]
    violations: list[str] = field(default_factory=list)

    @property
    def knotted_count(self) -> int:
        return len(self.knotted)

    @property
    def theorem_applies(self) -> bool:
        return self.n_vertices == 8 and self.family_tag == "hamiltonian"

    def census(self) -> list[dict]:
        return [
            {"cycle": r.index, "vertices": list(r.vertices), "a2": r.a2, "arf": r.arf,
             "mod2": r.a2 % 2, "mod3": r.a2 % 3, "mod6": r.a2 % 6, "label": r.fingerprint.label}
            for r in self.knotted
        ]

    def to_dict(self, include_unknotted: bool = False) -> dict:
        per_cycle = self.records if include_unknotted else self.knotted
        return {
            "embedding_hash": self.embedding_hash,
            "knottedness": "nabla-knotted (Conway polynomial != 1)",
            "cycles": len(self.records),
            "per_cycle": [r.to_dict() for r in per_cycle],
            "mu": {str(k): v for k, v in sorted(self.mu.items())},
            "sum_a2": sum(r.a2 for r in self.records),
            "knotted_count": self.knotted_count,
            "case": self.case,
            "arf_witness": arf_witness(self),
            "violations": list(self.violations),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(**kw), indent=1)

    def write_census_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["cycle", "vertices", "a2", "arf", "mod2", "mod3", "mod6", "label"])
            for row in self.census():
                w.writerow([row["cycle"], "-".join(map(str, row["vertices"])), row["a2"], row["arf"],
                            row["mod2"], row["mod3"], row["mod6"], row["label"]])


def cycle_fingerprint(embedding: Embedding, cycle) -> tuple[int, KnotFingerprint]:
    code = knot_diagram(embedding, cycle)
    if code.n_crossings < 3:
        return code.n_crossings, _UNKNOT  # every diagram with < 3 crossings is trivial
    return code.n_crossings, fingerprint_from_conway(conway(code))


def mu(embedding: Embedding, family: CycleFamily, n: int) -> int:
    """Sum of a2 over the cycle family, reduced into ``0..n-1``."""
    if n < 2:
        raise ValueError("modulus must be >= 2")
    return sum(a2_fast(knot_diagram(embedding, c)) for c in family) % n


def knotted_count(embedding: Embedding, family: CycleFamily) -> int:
    """Number of nabla-knotted cycles, skipping the Conway polynomial when a2 decides."""
    count = 0
    for cyc in family:
        code = knot_diagram(embedding, cyc)
        if code.n_crossings < 3:
            continue
        if a2_fast(code) != 0 or not conway(code).is_trivial:
            count += 1
    return count


def classify(knotted: list[CycleRecord]) -> tuple[Optional[int], list[str]]:
    """Trichotomy case for a K8 census, or a violation message."""
    k = len(knotted)
    if k >= 3:
        return 1, []
    if k == 2:
        r = sorted(c.a2 % 3 for c in knotted)
        residues_ok = r == [1, 2] or r == [0, 0]
        arf_ok = any(c.arf == 1 for c in knotted)
        if residues_ok and arf_ok:
            return 2, []
        why = []
        if not residues_ok:
            why.append(f"a2 residues mod 3 are {r}")
        if not arf_ok:
            why.append("neither cycle has Arf invariant 1")
        return None, ["THEOREM-VIOLATION: exactly 2 knotted cycles but " + " and ".join(why)]
    if k == 1:
        a = knotted[0].a2
        if a % 6 == 3:
            return 3, []
        return None, [f"THEOREM-VIOLATION: exactly 1 knotted cycle with a2 = {a} (not 3 mod 6)"]
    return None, ["THEOREM-VIOLATION: no nabla-knotted Hamiltonian cycle"]


def analyze(embedding: Embedding, family: CycleFamily, moduli: Iterable[int] = DEFAULT_MODULI) -> EmbeddingAnalysis:
    records = []
    for i, cyc in enumerate(family):
        ncross, fp = cycle_fingerprint(embedding, cyc)
        records.append(CycleRecord(i, cyc.vertices, ncross, fp))
    total = sum(r.a2 for r in records)
    mus = {m: total % m for m in moduli}
    knotted = [r for r in records if r.knotted]
    result = EmbeddingAnalysis(embedding.hash, embedding.graph.n, family.tag, records, mus, knotted, None)
    if result.theorem_applies and embedding.graph.is_complete:
        result.case, result.violations = classify(knotted)
        if arf_witness(result) is None:
            result.violations.append("ARF-VIOLATION: no Hamiltonian cycle with Arf invariant 1")
    return result


def arf_witness(analysis: EmbeddingAnalysis) -> Optional[int]:
    """Index of the first knotted cycle with Arf invariant 1, if any."""
    for r in analysis.knotted:
        if r.arf == 1:
            return r.index
    return None
