"""Seeded multi-objective search (NSGA-II) over permutation-parameter genomes.

Genomes are fixed-length integer vectors (half-steps stored doubled, plus
optional binary rotation genes).  Every random draw derives from
(seed, role, generation, index), so results are reproducible and do not
depend on evaluation order or worker count.
"""

from __future__ import annotations

import csv
import hashlib
import io
import random
from dataclasses import dataclass

from .evaluate import (
    adjacency_check,
    bounding_area,
    resulted_adjacency,
    total_closest_distance,
    within_boundary,
)
from .extend import extend_layout
from .model import (
    BSTAR_ASCEND_DESCEND,
    OTREE_PROCEEDING,
    Problem,
    Rect,
    ValidationError,
)
from .perturb import PermutationParams
from .pipeline import generate_floorplan
from .placement import Floorplan
from .units import MU

OBJECTIVES = ("adjacency", "bounding_area", "total_distance")
CONSTRAINTS = ("fit_boundary", "no_penalty")


@dataclass(frozen=True)
class GAConfig:
    population: int = 100
    generations: int = 15
    crossover_rate: float = 0.2
    mutation_rate: float = 0.1
    seed: int = 0
    objectives: tuple = ("adjacency", "bounding_area")
    constraints: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "objectives", tuple(self.objectives))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.population < 4 or self.population % 2:
            raise ValidationError("population must be an even number >= 4")
        if self.generations < 1:
            raise ValidationError("generations must be >= 1")
        for rate in (self.crossover_rate, self.mutation_rate):
            if not 0.0 <= rate <= 1.0:
                raise ValidationError("rates live in [0, 1]")
        if not self.objectives:
            raise ValidationError("at least one objective")
        for name in self.objectives:
            if name not in OBJECTIVES:
                raise ValidationError(f"unknown objective {name!r}")
        for name in self.constraints:
            if name not in CONSTRAINTS:
                raise ValidationError(f"unknown constraint {name!r}")


@dataclass(frozen=True)
class GenomeSpec:
    """Per-gene inclusive integer ranges plus the decoding recipe."""

    method: str
    n: int
    rotation_genes: bool
    ranges: tuple  # ((lo, hi), ...)

    @classmethod
    def for_problem(cls, problem: Problem) -> "GenomeSpec":
        n = problem.n
        method = problem.representation
        if method == OTREE_PROCEEDING:
            ranges = [(0, n)] * n
        elif method == BSTAR_ASCEND_DESCEND:
            ranges = [(0, 4 * n)] * (2 * n)  # doubled half-steps, pairs flattened
        else:
            ranges = [(0, 4 * n)] * n
        if problem.use_rotation_genes:
            ranges += [(0, 1)] * n
        return cls(method, n, problem.use_rotation_genes, tuple(ranges))

    def __len__(self) -> int:
        return len(self.ranges)

    def decode(self, genome):
        """Genome -> (PermutationParams, rotations or None)."""
        genome = tuple(genome)
        if len(genome) != len(self.ranges):
            raise ValidationError(f"genome length {len(genome)} != {len(self.ranges)}")
        n = self.n
        rotations = None
        body = genome
        if self.rotation_genes:
            body, tail = genome[: -n], genome[-n:]
            rotations = tuple(bool(g) for g in tail)
        if self.method == OTREE_PROCEEDING:
            params = PermutationParams(self.method, tuple(body))
        elif self.method == BSTAR_ASCEND_DESCEND:
            pairs = tuple((body[2 * i], body[2 * i + 1]) for i in range(n))
            params = PermutationParams(self.method, pairs)
        else:
            params = PermutationParams(self.method, tuple(body))
        return params, rotations

    def random_genome(self, rng: random.Random) -> tuple:
        return tuple(rng.randint(lo, hi) for lo, hi in self.ranges)


@dataclass
class Solution:
    genome: tuple
    floorplan: Floorplan
    objectives: tuple  # minimization convention: maximized metrics negated
    violation: int
    metrics: dict
    rank: int | None = None
    crowding: float | None = None


def decode_and_evaluate(genome, problem: Problem, config: GAConfig, spec: GenomeSpec | None = None) -> Solution:
    """Genome -> params -> tree -> floorplan -> objective vector."""
    spec = spec or GenomeSpec.for_problem(problem)
    params, rotations = spec.decode(genome)
    fp = generate_floorplan(problem, params, rotations)

    resulted = resulted_adjacency(fp)
    report = adjacency_check(resulted, problem.goals, problem)
    rect, area_mu2 = bounding_area(fp)
    metrics = {
        "adjacency": report.achieved_endpoints,
        "adjacency_pairs": report.achieved_count,
        "bounding_area": (rect.w / MU) * (rect.h / MU),
        "total_distance": total_closest_distance(fp),
    }
    values = []
    for name in config.objectives:
        if name == "adjacency":
            values.append(-float(metrics["adjacency"]))
        elif name == "bounding_area":
            values.append(metrics["bounding_area"])
        else:
            values.append(metrics["total_distance"])
    violation = 0
    if "fit_boundary" in config.constraints and problem.boundary is not None:
        inside, _ = within_boundary(fp, problem.boundary)
        violation += 0 if inside else 1
    if "no_penalty" in config.constraints and isinstance(problem.boundary, Rect):
        ext = extend_layout(fp, problem.boundary, problem.requirements)
        violation += 1 if ext.penalty else 0
    return Solution(tuple(genome), fp, tuple(values), violation, metrics)


# ----------------------------------------------------------------- NSGA-II

def _dominates(a: Solution, b: Solution) -> bool:
    """Constraint dominance: feasibility first, then Pareto on objectives."""
    if a.violation != b.violation:
        return a.violation < b.violation
    le = all(x <= y for x, y in zip(a.objectives, b.objectives))
    lt = any(x < y for x, y in zip(a.objectives, b.objectives))
    return le and lt


def nondominated_sort(population) -> list:
    """Pareto fronts (lists of Solutions), best first; ranks are set in place."""
    pop = list(population)
    dominated_by = [[] for _ in pop]
    counts = [0] * len(pop)
    for i, a in enumerate(pop):
        for j in range(i + 1, len(pop)):
            b = pop[j]
            if _dominates(a, b):
                dominated_by[i].append(j)
                counts[j] += 1
            elif _dominates(b, a):
                dominated_by[j].append(i)
                counts[i] += 1
    fronts = []
    current = [i for i, c in enumerate(counts) if c == 0]
    rank = 0
    while current:
        for i in current:
            pop[i].rank = rank
        fronts.append([pop[i] for i in current])
        nxt = []
        for i in current:
            for j in dominated_by[i]:
                counts[j] -= 1
                if counts[j] == 0:
                    nxt.append(j)
        current = sorted(nxt)
        rank += 1
    return fronts


def crowding_distance(front) -> list:
    """Per-solution diversity value; boundary points per objective get +inf."""
    front = list(front)
    if not front:
        raise ValueError("empty front")
    m = len(front[0].objectives)
    values = [0.0] * len(front)
    for k in range(m):
        order = sorted(range(len(front)), key=lambda i: front[i].objectives[k])
        lo = front[order[0]].objectives[k]
        hi = front[order[-1]].objectives[k]
        values[order[0]] = values[order[-1]] = float("inf")
        if hi == lo:
            continue
        for pos in range(1, len(order) - 1):
            prev_v = front[order[pos - 1]].objectives[k]
            next_v = front[order[pos + 1]].objectives[k]
            values[order[pos]] += (next_v - prev_v) / (hi - lo)
    for sol, value in zip(front, values):
        sol.crowding = value
    return values


def _stream(seed: int, *key) -> random.Random:
    digest = hashlib.sha256(repr((seed,) + key).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass
class RunResult:
    pareto: list
    history: list  # rows: {"generation", "best_adjacency", "min_area"}
    evaluations: int = 0
    status: str = "done"


def _tournament(pop, rng: random.Random) -> Solution:
    a, b = rng.randrange(len(pop)), rng.randrange(len(pop))
    sa, sb = pop[a], pop[b]
    ka = (sa.rank, -sa.crowding if sa.crowding is not None else 0.0)
    kb = (sb.rank, -sb.crowding if sb.crowding is not None else 0.0)
    if ka == kb:
        return sa if a <= b else sb
    return sa if ka < kb else sb


def nsga2_run(problem: Problem, config: GAConfig, on_generation=None) -> RunResult:
    """Elitist (mu + lambda) NSGA-II with per-gene uniform crossover and
    per-gene uniform reset mutation.

    `on_generation(generation, history_row)` runs after every environmental
    selection; returning False cancels the run (partial results returned).
    """
    spec = GenomeSpec.for_problem(problem)
    cache: dict = {}
    archive: dict = {}  # every distinct feasible genome ever evaluated
    evaluations = 0

    def evaluate(genome) -> Solution:
        nonlocal evaluations
        sol = cache.get(genome)
        if sol is None:
            sol = decode_and_evaluate(genome, problem, config, spec)
            cache[genome] = sol
            evaluations += 1
            if sol.violation == 0:
                archive[genome] = sol
        return Solution(
            sol.genome, sol.floorplan, sol.objectives, sol.violation, sol.metrics
        )

    population = [
        evaluate(spec.random_genome(_stream(config.seed, "init", i)))
        for i in range(config.population)
    ]
    history = []

    def select(pool, size):
        # one copy per genome: duplicate survivors add nothing and starve
        # exploration once the population converges
        unique = {s.genome: s for s in pool}
        pool = list(unique.values())
        fronts = nondominated_sort(pool)
        chosen = []
        for front in fronts:
            crowding_distance(front)
            if len(chosen) + len(front) <= size:
                chosen.extend(front)
            else:
                rest = sorted(front, key=lambda s: (-s.crowding, s.genome))
                chosen.extend(rest[: size - len(chosen)])
                break
        return chosen

    def note_generation(gen, pool):
        best_adj = max(s.metrics["adjacency"] for s in pool)
        feasible = [s for s in pool if s.violation == 0]
        min_area = min((s.metrics["bounding_area"] for s in feasible), default=None)
        row = {"generation": gen, "best_adjacency": best_adj, "min_area": min_area}
        history.append(row)
        return row

    population = select(population, config.population)
    row = note_generation(0, population)
    if on_generation is not None and on_generation(0, row) is False:
        return RunResult(_pareto_of(archive), history, evaluations, "cancelled")

    for gen in range(1, config.generations + 1):
        offspring = []
        for j in range(config.population // 2):
            rng = _stream(config.seed, "var", gen, j)
            pa, pb = _tournament(population, rng), _tournament(population, rng)
            child1, child2 = list(pa.genome), list(pb.genome)
            for g in range(len(spec)):
                if rng.random() < config.crossover_rate:
                    child1[g], child2[g] = child2[g], child1[g]
            for child in (child1, child2):
                for g, (lo, hi) in enumerate(spec.ranges):
                    if rng.random() < config.mutation_rate:
                        child[g] = rng.randint(lo, hi)
            offspring.append(evaluate(tuple(child1)))
            offspring.append(evaluate(tuple(child2)))
        population = select(population + offspring, config.population)
        row = note_generation(gen, population)
        if on_generation is not None and on_generation(gen, row) is False:
            return RunResult(_pareto_of(archive), history, evaluations, "cancelled")

    return RunResult(_pareto_of(archive), history, evaluations, "done")


def _pareto_of(archive: dict) -> list:
    """Nondominated subset of every feasible solution seen, deterministic order."""
    pool = [
        Solution(s.genome, s.floorplan, s.objectives, s.violation, s.metrics)
        for s in archive.values()
    ]
    if not pool:
        return []
    fronts = nondominated_sort(pool)
    best = fronts[0]
    best.sort(key=lambda s: (s.objectives, s.genome))
    return best


# ------------------------------------------------------------- run artifacts

def history_csv(history) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["generation", "best_adjacency", "min_area"])
    for row in history:
        area = row["min_area"]
        writer.writerow(
            [row["generation"], row["best_adjacency"], "" if area is None else repr(area)]
        )
    return out.getvalue()
