"""Command-line interface.

Exit codes: 0 on success, 2 on validation errors (bad input data, malformed
parameters, unknown ids).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .evaluate import evaluation_report
from .extend import allocate_fixed_blocks, extend_layout
from .model import METHODS, Problem, Rect, ValidationError, load_requirements_csv
from .perturb import PermutationParams
from .pipeline import generate_floorplan
from .render import RenderSpec, render_bubble_svg, render_floorplan_svg, render_tree_svg
from .search import GAConfig, nsga2_run
from .serialize import (
    extended_to_dict,
    floorplan_from_dict,
    floorplan_to_json_bytes,
    problem_from_dict,
    problem_to_dict,
    to_json,
    to_json_bytes,
)
from .units import to_mu


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_problem(args) -> Problem:
    if getattr(args, "problem", None):
        return problem_from_dict(json.loads(_read(args.problem)))
    reqs, goals = load_requirements_csv(_read(args.reqs))
    method = getattr(args, "method", None) or "bstar_available_nodes"
    return Problem(requirements=tuple(reqs), goals=tuple(goals), representation=method)


def _write_out(args, data: bytes) -> None:
    if args.output and args.output != "-":
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.write(data.decode())


def cmd_problem(args) -> int:
    reqs, goals = load_requirements_csv(_read(args.reqs))
    problem = Problem(
        requirements=tuple(reqs),
        goals=tuple(goals),
        representation=args.method,
        use_rotation_genes=args.rotation_genes,
        boundary=_parse_boundary(args.boundary) if args.boundary else None,
    )
    _write_out(args, to_json(problem_to_dict(problem)).encode())
    return 0


def _parse_rotations(text: str, n: int):
    flags = [p.strip() for p in text.split(",")]
    if len(flags) != n:
        raise ValidationError(f"expected {n} rotation flags")
    return [f in ("1", "true", "t", "yes") for f in flags]


def cmd_generate(args) -> int:
    problem = _load_problem(args)
    if args.method and args.method != problem.representation:
        problem = Problem(
            requirements=problem.requirements,
            goals=problem.goals,
            boundary=problem.boundary,
            representation=args.method,
            use_rotation_genes=problem.use_rotation_genes,
        )
    params = PermutationParams.from_string(problem.representation, args.params, problem.n)
    rotations = _parse_rotations(args.rotations, problem.n) if args.rotations else None
    fp = generate_floorplan(problem, params, rotations)
    _write_out(args, floorplan_to_json_bytes(fp, problem) + b"\n")
    return 0


def cmd_evaluate(args) -> int:
    problem = problem_from_dict(json.loads(_read(args.problem)))
    fp = floorplan_from_dict(json.loads(_read(args.layout)))
    report = evaluation_report(fp, problem, to_mu(args.min_shared))
    _write_out(args, to_json(report).encode())
    return 0


def cmd_optimize(args) -> int:
    problem = problem_from_dict(json.loads(_read(args.problem)))
    config = GAConfig(
        population=args.pop,
        generations=args.gens,
        crossover_rate=args.crossover,
        mutation_rate=args.mutation,
        seed=args.seed,
        objectives=tuple(args.objectives.split(",")),
        constraints=tuple(c for c in args.constraints.split(",") if c),
    )
    result = nsga2_run(problem, config)
    write_run_dir(Path(args.output), problem, config, result)
    best = max((row["best_adjacency"] for row in result.history), default=0)
    sys.stderr.write(
        f"done: {len(result.pareto)} pareto solutions, best adjacency {best}\n"
    )
    return 0


def write_run_dir(rundir: Path, problem: Problem, config: GAConfig, result) -> None:
    """CLI/HTTP-shared run artifact layout: config.json, history.csv, pareto/NNN.json."""
    from .search import history_csv

    rundir.mkdir(parents=True, exist_ok=True)
    (rundir / "config.json").write_bytes(
        to_json_bytes(
            {
                "config": {
                    "population": config.population,
                    "generations": config.generations,
                    "crossover_rate": config.crossover_rate,
                    "mutation_rate": config.mutation_rate,
                    "seed": config.seed,
                    "objectives": list(config.objectives),
                    "constraints": list(config.constraints),
                },
                "problem": problem_to_dict(problem),
                "status": result.status,
                "evaluations": result.evaluations,
            }
        )
    )
    (rundir / "history.csv").write_text(history_csv(result.history))
    pareto = rundir / "pareto"
    pareto.mkdir(exist_ok=True)
    for old in pareto.glob("*.json"):
        old.unlink()
    for i, sol in enumerate(result.pareto):
        (pareto / f"{i:03d}.json").write_bytes(
            floorplan_to_json_bytes(sol.floorplan, problem)
        )
    (rundir / "pareto.json").write_bytes(
        to_json_bytes(
            [
                {
                    "index": i,
                    "genome": list(sol.genome),
                    "objectives": list(sol.objectives),
                    "metrics": sol.metrics,
                    "violation": sol.violation,
                }
                for i, sol in enumerate(result.pareto)
            ]
        )
    )


def _parse_boundary(text: str) -> Rect:
    try:
        w, h = text.lower().split("x")
        return Rect(0, 0, to_mu(w), to_mu(h))
    except (ValueError, TypeError):
        raise ValidationError(f"boundary must look like 12x8, got {text!r}") from None


def cmd_extend(args) -> int:
    problem = None
    if args.problem:
        problem = problem_from_dict(json.loads(_read(args.problem)))
    fp = floorplan_from_dict(json.loads(_read(args.layout)))
    boundary = _parse_boundary(args.boundary)
    requirements = problem.requirements if problem else None
    ex = extend_layout(fp, boundary, requirements)
    allocated = None
    if problem is not None and not ex.penalty:
        allocated = allocate_fixed_blocks(ex, problem.requirements)
    _write_out(args, to_json(extended_to_dict(ex, problem, allocated)).encode())
    return 0


def cmd_render(args) -> int:
    fp = floorplan_from_dict(json.loads(_read(args.layout)))
    problem = None
    if args.problem:
        problem = problem_from_dict(json.loads(_read(args.problem)))
    spec = RenderSpec(size=args.size)
    if args.kind == "floorplan":
        names = None
        if problem:
            names = {i + 1: r.id for i, r in enumerate(problem.requirements)}
        svg = render_floorplan_svg(fp, spec, names)
    elif args.kind == "bubble":
        if problem is None:
            raise ValidationError("--problem is required for bubble rendering")
        svg = render_bubble_svg(fp, problem.goals, problem, spec)
    elif args.kind == "tree":
        if fp.tree is None:
            raise ValidationError("layout carries no tree")
        svg = render_tree_svg(fp.tree, spec)
    else:
        raise ValidationError(f"unknown render kind {args.kind!r}")
    _write_out(args, svg.encode())
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(Path(args.state), ui_dir=Path(args.ui) if args.ui else None)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genfloor",
        description="Tree-encoded rectangular space layout generation, evaluation and search",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("problem", help="convert a requirement CSV into problem JSON")
    p.add_argument("--reqs", required=True, help="requirement CSV path")
    p.add_argument("--method", default="bstar_available_nodes", choices=METHODS)
    p.add_argument("--rotation-genes", action="store_true")
    p.add_argument("--boundary", help="WxH rectangle, e.g. 12x8")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(fn=cmd_problem)

    p = sub.add_parser("generate", help="decode permutation parameters into a floorplan")
    p.add_argument("--reqs", help="requirement CSV path")
    p.add_argument("--problem", help="problem JSON path (alternative to --reqs)")
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--params", required=True, help="e.g. 0,1,2 or 0.5:0.5,1:0,0.5:0.5")
    p.add_argument("--rotations", help="comma-separated 0/1 flags per requirement")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("evaluate", help="score a layout against a problem")
    p.add_argument("--layout", required=True)
    p.add_argument("--problem", required=True)
    p.add_argument("--min-shared", default="0", help="minimum shared edge length")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(fn=cmd_evaluate)

    p = sub.add_parser("optimize", help="run the multi-objective search")
    p.add_argument("--problem", required=True)
    p.add_argument("--pop", type=int, default=100)
    p.add_argument("--gens", type=int, default=15)
    p.add_argument("--crossover", type=float, default=0.2)
    p.add_argument("--mutation", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--objectives", default="adjacency,bounding_area")
    p.add_argument("--constraints", default="")
    p.add_argument("-o", "--output", required=True, help="run artifact directory")
    p.set_defaults(fn=cmd_optimize)

    p = sub.add_parser("extend", help="scale and grow a layout to fill a boundary")
    p.add_argument("--layout", required=True)
    p.add_argument("--boundary", required=True, help="WxH, e.g. 12x8")
    p.add_argument("--problem", help="problem JSON enabling fixed-block allocation")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(fn=cmd_extend)

    p = sub.add_parser("render", help="render a layout to SVG")
    p.add_argument("--layout", required=True)
    p.add_argument("--kind", default="floorplan", choices=("floorplan", "bubble", "tree"))
    p.add_argument("--problem")
    p.add_argument("--size", type=int, default=480)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("serve", help="serve the HTTP API and the studio")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--state", required=True, help="state directory")
    p.add_argument("--ui", help="static studio directory to serve at /")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except json.JSONDecodeError as exc:
        sys.stderr.write(f"error: invalid JSON input: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
