"""Seeded experiments: invariance sweeps, crossing-flip checks, annealing.

Every run is a deterministic function of its :class:`ExperimentConfig`.
Per-embedding seeds are drawn from one master :class:`XorShift64Star`
stream, so results do not depend on worker count or scheduling.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .diagram import knot_diagram, linking_number
from .embedding import Embedding
from .geometry import Point3, general_position_violation
from .graph import CycleFamily, complete_graph, hamiltonian_cycles
from .invariant import analyze, arf_witness, knotted_count
from .knot import a2_fast, flip_crossing, smooth_crossing
from .prng import ALGORITHM_ID, XorShift64Star

log = logging.getLogger(__name__)

MAX_REJECTIONS = 1000


class TooManyRejections(RuntimeError):
    pass


@dataclass
class ExperimentConfig:
    seed: int = 0
    n_embeddings: int = 100
    coord_range: int = 10_000
    moduli: Sequence[int] = (2, 3, 6)
    n: int = 8
    out_json: Optional[str] = None
    out_csv: Optional[str] = None
    workers: int = 1

    def embedding_seeds(self) -> list[int]:
        rng = XorShift64Star(self.seed)
        return [rng.next_u64() for _ in range(self.n_embeddings)]


@lru_cache(maxsize=8)
def hamiltonian_family(n: int) -> CycleFamily:
    return hamiltonian_cycles(complete_graph(n))


def _random_points(rng: XorShift64Star, n: int, m: int) -> list[tuple[int, int, int]]:
    return [tuple(rng.randint(-m, m) for _ in range(3)) for _ in range(n)]


def random_embedding(n: int, seed: int, coord_range: int) -> tuple[Embedding, int]:
    """Random straight-line K_n with integer coordinates in ``[-M, M]^3``.

    Returns the embedding and the number of attempts it took. A sample is
    rejected when it is not in general position or has no generic projection.
    """
    if coord_range < 1:
        raise ValueError("coord_range must be positive")
    if coord_range < n * n:
        log.warning("coord_range %d below the n^2 = %d floor; expect rejections", coord_range, n * n)
    graph = complete_graph(n)
    rng = XorShift64Star(seed)
    for attempt in range(1, MAX_REJECTIONS + 1):
        pts = _random_points(rng, n, coord_range)
        if general_position_violation(pts, graph.edges) is not None:
            continue
        emb = Embedding(graph, tuple(Point3.of(*p) for p in pts))
        try:
            emb.crossings
        except ValueError:
            continue
        return emb, attempt
    raise TooManyRejections(f"{MAX_REJECTIONS} consecutive rejections (n={n}, M={coord_range})")


# -- invariance run -------------------------------------------------------------

def _analyze_one(args) -> dict:
    index, seed, n, coord_range, moduli = args
    emb, attempts = random_embedding(n, seed, coord_range)
    fam = hamiltonian_family(n)
    res = analyze(emb, fam, moduli=tuple(sorted(set(moduli) | {3})))
    violations = list(res.violations)
    if res.theorem_applies and res.mu[3] != 0:
        violations.append(f"MU-VIOLATION: sum of a2 = {sum(r.a2 for r in res.records)} is not 0 mod 3")
    return {
        "index": index,
        "seed": seed,
        "attempts": attempts,
        "embedding_hash": res.embedding_hash,
        "sum_a2": sum(r.a2 for r in res.records),
        "mu": {str(m): res.mu[m] for m in moduli},
        "knotted_count": res.knotted_count,
        "case": res.case,
        "arf_witness": arf_witness(res),
        "labels": _label_counts(res),
        "violations": violations,
    }


def _label_counts(res) -> dict:
    out: dict[str, int] = {}
    for r in res.knotted:
        out[r.fingerprint.label] = out.get(r.fingerprint.label, 0) + 1
    return out


def _map(fn, jobs, workers: int):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, jobs))
    return [fn(j) for j in jobs]


@dataclass
class RunReport:
    kind: str
    config: dict
    rows: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def violations(self) -> list:
        return [v for r in self.rows for v in r.get("violations", [])]

    @property
    def exit_code(self) -> int:
        return 1 if self.violations else 0

    def to_dict(self) -> dict:
        return {"kind": self.kind, "config": self.config, "summary": self.summary, "rows": self.rows}

    def write(self, out_json: Optional[str] = None, out_csv: Optional[str] = None) -> None:
        if out_json:
            with open(out_json, "w") as fh:
                json.dump(self.to_dict(), fh, indent=1)
        if out_csv and self.rows:
            flat = [{k: (json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in r.items()} for r in self.rows]
            with open(out_csv, "w", newline="") as fh:
                w = csv.DictWriter(fh, fieldnames=list(flat[0]))
                w.writeheader()
                w.writerows(flat)


def _config_dict(config: ExperimentConfig, **extra) -> dict:
    d = {"seed": config.seed, "n_embeddings": config.n_embeddings, "coord_range": config.coord_range,
         "moduli": list(config.moduli), "n": config.n, "prng": ALGORITHM_ID}
    d.update(extra)
    return d


def invariance_run(config: ExperimentConfig) -> RunReport:
    """Analyze ``n_embeddings`` random embeddings of K_n over Hamiltonian cycles."""
    jobs = [(i, s, config.n, config.coord_range, tuple(config.moduli)) for i, s in enumerate(config.embedding_seeds())]
    rows = _map(_analyze_one, jobs, config.workers)
    rows.sort(key=lambda r: r["index"])
    report = RunReport("invariance", _config_dict(config), rows)
    if rows:
        kc = [r["knotted_count"] for r in rows]
        cases: dict[str, int] = {}
        for r in rows:
            cases[str(r["case"])] = cases.get(str(r["case"]), 0) + 1
        report.summary = {
            "embeddings": len(rows),
            "mu3_values": sorted({r["mu"].get("3", r["sum_a2"] % 3) for r in rows}),
            "min_knotted": min(kc),
            "max_knotted": max(kc),
            "mean_knotted": sum(kc) / len(kc),
            "cases": cases,
            "arf_witness_missing": sum(r["arf_witness"] is None for r in rows),
            "violations": len(report.violations),
        }
    else:
        report.summary = {"embeddings": 0, "violations": 0}
    report.write(config.out_json, config.out_csv)
    return report


# -- crossing-flip consistency ----------------------------------------------------

def _flip_batch(args) -> list[dict]:
    index, seed, n, coord_range, n_flips = args
    emb, _ = random_embedding(n, seed, coord_range)
    fam = hamiltonian_family(n)
    rng = XorShift64Star(seed ^ 0x5F5F5F5F5F5F5F5F)
    codes = [knot_diagram(emb, c) for c in fam]
    base = [a2_fast(code) for code in codes]
    total_before = sum(base)
    rows = []
    for f in range(n_flips):
        cid = rng.randbelow(len(emb.crossings)) + 1
        cr = emb.crossing(cid)
        delta_total = 0
        touched = skein_failures = 0
        involution_ok = True
        for k, cyc in enumerate(fam):
            if not cyc.contains(cr.edge_lo, cr.edge_hi):
                continue
            touched += 1
            code = codes[k]
            eps = code.sign_of(cid)
            flipped = flip_crossing(code, cid)
            after = a2_fast(flipped)
            lk = linking_number(smooth_crossing(code, cid))
            delta = after - base[k]
            # a2(L+) - a2(L-) = lk(L0)
            if delta != -eps * lk:
                skein_failures += 1
            if flip_crossing(flipped, cid) != code:
                involution_ok = False
            delta_total += delta
        violations = []
        if skein_failures:
            violations.append(f"SKEIN-VIOLATION: {skein_failures} cycles")
        if n == 8 and delta_total % 3:
            violations.append(f"FLIP-VIOLATION: total a2 change {delta_total} is not 0 mod 3")
        if not involution_ok:
            violations.append("INVOLUTION-VIOLATION")
        rows.append({
            "index": index, "flip": f, "seed": seed, "crossing": cid,
            "edges": [emb.graph.edge_label(cr.edge_lo), emb.graph.edge_label(cr.edge_hi)],
            "cycles_touched": touched, "sum_a2_before": total_before,
            "sum_a2_after": total_before + delta_total, "delta": delta_total,
            "violations": violations,
        })
    return rows


def flip_consistency_run(config: ExperimentConfig, flips_per_embedding: int = 10) -> RunReport:
    """``config.n_embeddings`` is the total number of crossing flips."""
    total = config.n_embeddings
    per = max(1, flips_per_embedding)
    n_emb = math.ceil(total / per) if total else 0
    rng = XorShift64Star(config.seed)
    seeds = [rng.next_u64() for _ in range(n_emb)]
    jobs = [(i, s, config.n, config.coord_range, min(per, total - i * per)) for i, s in enumerate(seeds)]
    rows = [r for batch in _map(_flip_batch, jobs, config.workers) for r in batch]
    report = RunReport("flipcheck", _config_dict(config, flips_per_embedding=per), rows)
    report.summary = {
        "flips": len(rows),
        "embeddings": n_emb,
        "delta_mod3_values": sorted({r["delta"] % 3 for r in rows}),
        "violations": len(report.violations),
    }
    report.write(config.out_json, config.out_csv)
    return report


# -- annealing ---------------------------------------------------------------------

@dataclass
class SearchState:
    embedding: Embedding
    objective: int
    temperature: float
    iteration: int
    best_embedding: Embedding
    best_objective: int
    accepted: int = 0
    rejected_invalid: int = 0
    best_history: list[int] = field(default_factory=list)
    best_analysis: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "objective": self.objective,
            "temperature": self.temperature,
            "best_objective": self.best_objective,
            "accepted": self.accepted,
            "rejected_invalid": self.rejected_invalid,
            "best_history": self.best_history,
            "best_embedding": self.best_embedding.to_dict(),
            "best_analysis": self.best_analysis,
        }


def anneal_min_knotted(
    config: ExperimentConfig,
    iters: int,
    t_start: float = 2.0,
    t_end: float = 0.05,
    analyze_best: bool = True,
) -> SearchState:
    """Simulated annealing on vertex positions, minimizing nabla-knotted cycles.

    Geometric cooling from ``t_start`` to ``t_end``. A move displaces one
    vertex by a uniform integer offset in ``[-M/100, M/100]^3``; moves that
    break general position are rejected. The result is the best embedding
    seen, with no claim that it is optimal.
    """
    if config.n != 8:
        raise ValueError("annealing targets K8")
    fam = hamiltonian_family(config.n)
    emb, _ = random_embedding(config.n, config.seed, config.coord_range)
    rng = XorShift64Star(config.seed ^ 0xA5A5A5A5A5A5A5A5)
    step = max(1, config.coord_range // 100)
    obj = knotted_count(emb, fam)
    state = SearchState(emb, obj, t_start, 0, emb, obj, best_history=[obj])
    ratio = (t_end / t_start) ** (1.0 / max(1, iters - 1)) if iters > 1 else 1.0
    for it in range(iters):
        temp = t_start * ratio**it
        state.temperature = temp
        state.iteration = it + 1
        v = rng.randbelow(config.n)
        off = tuple(rng.randint(-step, step) for _ in range(3))
        u = rng.random()
        pts = list(state.embedding.points)
        p = pts[v]
        pts[v] = Point3(p.x + off[0], p.y + off[1], p.z + off[2])
        cand = Embedding(state.embedding.graph, tuple(pts))
        if general_position_violation(cand.points, cand.graph.edges) is not None:
            state.rejected_invalid += 1
            state.best_history.append(state.best_objective)
            continue
        try:
            cand.crossings
        except ValueError:
            state.rejected_invalid += 1
            state.best_history.append(state.best_objective)
            continue
        new_obj = knotted_count(cand, fam)
        diff = new_obj - state.objective
        if diff <= 0 or u < math.exp(-diff / temp):
            state.embedding, state.objective = cand, new_obj
            state.accepted += 1
            if new_obj < state.best_objective:
                state.best_embedding, state.best_objective = cand, new_obj
        state.best_history.append(state.best_objective)
    if analyze_best:
        state.best_analysis = analyze(state.best_embedding, fam).to_dict()
    return state
