"""HTTP API for the studio: problems, one-off generation, optimization runs.

Runs execute on background threads, one mutator per run; clients poll
`GET /api/runs/{id}`.  Everything the API serves for a solution is the same
bytes the CLI writes for the same inputs.
"""

from __future__ import annotations

import hashlib
import json
import threading
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException, Response
from fastapi.staticfiles import StaticFiles

from .evaluate import evaluation_report
from .model import Problem, ValidationError
from .perturb import PermutationParams
from .pipeline import generate_floorplan
from .render import RenderSpec, render_bubble_svg, render_floorplan_svg, render_tree_svg
from .search import GAConfig, RunResult, nsga2_run
from .serialize import (
    floorplan_from_dict,
    floorplan_to_json_bytes,
    problem_from_dict,
    problem_to_dict,
    to_json_bytes,
)


class RunState:
    def __init__(self, run_id: str, problem_id: str, config: GAConfig):
        self.id = run_id
        self.problem_id = problem_id
        self.config = config
        self.status = "queued"
        self.history = []
        self.error = None
        self.cancel = threading.Event()
        self.lock = threading.Lock()
        self.thread = None

    def snapshot(self) -> dict:
        with self.lock:
            return {
                "run_id": self.id,
                "problem_id": self.problem_id,
                "status": self.status,
                "history": list(self.history),
                "config": {
                    "population": self.config.population,
                    "generations": self.config.generations,
                    "crossover_rate": self.config.crossover_rate,
                    "mutation_rate": self.config.mutation_rate,
                    "seed": self.config.seed,
                    "objectives": list(self.config.objectives),
                    "constraints": list(self.config.constraints),
                },
                "error": self.error,
            }


def create_app(state_dir: Path, ui_dir: Path | None = None) -> FastAPI:
    state_dir = Path(state_dir)
    (state_dir / "problems").mkdir(parents=True, exist_ok=True)
    (state_dir / "solutions").mkdir(parents=True, exist_ok=True)
    (state_dir / "runs").mkdir(parents=True, exist_ok=True)

    app = FastAPI(title="genfloor", docs_url=None, redoc_url=None)
    runs: dict[str, RunState] = {}
    runs_lock = threading.Lock()

    # ------------------------------------------------------------- storage

    def problem_path(pid: str) -> Path:
        return state_dir / "problems" / f"{pid}.json"

    def load_problem(pid: str) -> Problem:
        path = problem_path(pid)
        if not path.exists():
            raise HTTPException(404, f"unknown problem {pid}")
        return problem_from_dict(json.loads(path.read_text()))

    def store_solution(sid: str, problem: Problem, fp_bytes: bytes) -> None:
        (state_dir / "solutions" / f"{sid}.json").write_bytes(fp_bytes)
        (state_dir / "solutions" / f"{sid}.problem.json").write_bytes(
            to_json_bytes(problem_to_dict(problem))
        )

    def load_solution(sid: str):
        path = state_dir / "solutions" / f"{sid}.json"
        if not path.exists():
            raise HTTPException(404, f"unknown solution {sid}")
        fp = floorplan_from_dict(json.loads(path.read_text()))
        problem = problem_from_dict(
            json.loads((state_dir / "solutions" / f"{sid}.problem.json").read_text())
        )
        return fp, problem, path.read_bytes()

    # ------------------------------------------------------------ problems

    @app.post("/api/problems")
    def post_problem(payload: dict):
        try:
            problem = problem_from_dict(payload)
        except ValidationError as exc:
            raise HTTPException(422, str(exc)) from None
        data = to_json_bytes(problem_to_dict(problem))
        pid = hashlib.sha256(data).hexdigest()[:12]
        problem_path(pid).write_bytes(data)
        return {"id": pid}

    @app.get("/api/problems/{pid}")
    def get_problem(pid: str):
        load_problem(pid)  # 404 check
        return json.loads(problem_path(pid).read_text())

    @app.post("/api/problems/{pid}/generate")
    def generate(pid: str, payload: dict):
        problem = load_problem(pid)
        try:
            method = payload.get("method") or problem.representation
            if method != problem.representation:
                problem = problem_from_dict(
                    {**problem_to_dict(problem), "representation": method}
                )
            params = PermutationParams.from_string(
                method, str(payload["params"]), problem.n
            )
            rotations = payload.get("rotations")
            if isinstance(rotations, str):
                rotations = [p.strip() in ("1", "true") for p in rotations.split(",")]
            fp = generate_floorplan(problem, params, rotations)
        except (ValidationError, KeyError) as exc:
            raise HTTPException(422, str(exc)) from None
        data = floorplan_to_json_bytes(fp, problem)
        sid = "gen-" + hashlib.sha256(data).hexdigest()[:12]
        store_solution(sid, problem, data)
        return {
            "solution_id": sid,
            "floorplan": json.loads(data),
            "report": evaluation_report(fp, problem),
        }

    # ---------------------------------------------------------------- runs

    def run_worker(state: RunState, problem: Problem):
        def on_generation(gen, row):
            with state.lock:
                state.history.append(row)
            return not state.cancel.is_set()

        try:
            with state.lock:
                state.status = "running"
            result = nsga2_run(problem, state.config, on_generation)
            rundir = state_dir / "runs" / state.id
            from .cli import write_run_dir

            write_run_dir(rundir, problem, state.config, result)
            for i, sol in enumerate(result.pareto):
                sid = f"{state.id}-{i:03d}"
                store_solution(sid, problem, floorplan_to_json_bytes(sol.floorplan, problem))
            (rundir / "pareto_index.json").write_bytes(
                to_json_bytes(
                    [
                        {
                            "solution_id": f"{state.id}-{i:03d}",
                            "objectives": list(sol.objectives),
                            "metrics": sol.metrics,
                            "genome": list(sol.genome),
                        }
                        for i, sol in enumerate(result.pareto)
                    ]
                )
            )
            with state.lock:
                state.status = result.status
        except Exception as exc:  # pragma: no cover - defensive
            with state.lock:
                state.status = "failed"
                state.error = str(exc)

    @app.post("/api/problems/{pid}/optimize")
    def optimize(pid: str, payload: dict):
        problem = load_problem(pid)
        try:
            config = GAConfig(
                population=int(payload.get("population", 100)),
                generations=int(payload.get("generations", 15)),
                crossover_rate=float(payload.get("crossover_rate", 0.2)),
                mutation_rate=float(payload.get("mutation_rate", 0.1)),
                seed=int(payload.get("seed", 0)),
                objectives=tuple(payload.get("objectives", ("adjacency", "bounding_area"))),
                constraints=tuple(payload.get("constraints", ())),
            )
        except (ValidationError, TypeError, ValueError) as exc:
            raise HTTPException(422, str(exc)) from None
        run_id = uuid.uuid4().hex[:12]
        state = RunState(run_id, pid, config)
        with runs_lock:
            runs[run_id] = state
        state.thread = threading.Thread(target=run_worker, args=(state, problem), daemon=True)
        state.thread.start()
        return {"run_id": run_id}

    def get_run_state(run_id: str) -> RunState:
        with runs_lock:
            state = runs.get(run_id)
        if state is None:
            raise HTTPException(404, f"unknown run {run_id}")
        return state

    @app.get("/api/runs/{run_id}")
    def get_run(run_id: str):
        return get_run_state(run_id).snapshot()

    @app.post("/api/runs/{run_id}/cancel")
    def cancel_run(run_id: str):
        state = get_run_state(run_id)
        state.cancel.set()
        if state.thread is not None:
            state.thread.join(timeout=30)
        with state.lock:
            if state.status in ("queued", "running"):
                state.status = "cancelled"
        return {"run_id": run_id, "status": state.status}

    @app.get("/api/runs/{run_id}/pareto")
    def get_pareto(run_id: str):
        state = get_run_state(run_id)
        index = state_dir / "runs" / run_id / "pareto_index.json"
        if state.snapshot()["status"] not in ("done", "cancelled") or not index.exists():
            return []
        return json.loads(index.read_text())

    # ------------------------------------------------------------ solutions

    @app.get("/api/solutions/{sid}.svg")
    def solution_svg(sid: str, kind: str = "floorplan", size: int = 480):
        fp, problem, _ = load_solution(sid)
        spec = RenderSpec(size=size)
        if kind == "floorplan":
            names = {i + 1: r.id for i, r in enumerate(problem.requirements)}
            svg = render_floorplan_svg(fp, spec, names)
        elif kind == "bubble":
            svg = render_bubble_svg(fp, problem.goals, problem, spec)
        elif kind == "tree":
            if fp.tree is None:
                raise HTTPException(422, "solution carries no tree")
            svg = render_tree_svg(fp.tree, spec)
        else:
            raise HTTPException(422, f"unknown svg kind {kind!r}")
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/api/solutions/{sid}")
    def solution_json(sid: str):
        _, _, raw = load_solution(sid)
        return Response(content=raw, media_type="application/json")

    @app.get("/api/solutions/{sid}/report")
    def solution_report(sid: str):
        fp, problem, _ = load_solution(sid)
        return evaluation_report(fp, problem)

    if ui_dir is not None and Path(ui_dir).exists():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="studio")

    return app
