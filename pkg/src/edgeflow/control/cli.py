"""Headless command-line interface.

Subcommands: plan, simulate, run, report, compare, serve. Results print as
JSON documents on stdout (or to --out); failures print an error document with
a machine-readable code on stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from edgeflow.control.docio import canonical_json_str
from edgeflow.control.service import EngineService
from edgeflow.control.store import RunStore
from edgeflow.errors import EdgeflowError

STORE_ENV_VAR = "EDGEFLOW_STORE"
DEFAULT_STORE = "./edgeflow-store"


def _store_dir(args) -> str:
    return args.store or os.environ.get(STORE_ENV_VAR) or DEFAULT_STORE


def _service(args) -> EngineService:
    return EngineService(RunStore(_store_dir(args)))


def _emit(doc, args) -> None:
    text = canonical_json_str(doc)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _weights(args) -> dict:
    doc = {
        "w_time": args.w_time,
        "w_energy": args.w_energy,
        "w_cost": args.w_cost,
    }
    if args.deadline is not None:
        doc["deadline"] = args.deadline
    return doc


def _workflow_request(args) -> dict:
    sources = [
        args.montage_width is not None,
        args.pattern is not None,
        args.dax is not None,
        args.workflow_file is not None,
    ]
    if sum(sources) != 1:
        raise EdgeflowError("exactly one workflow source is required "
                            "(--montage-width | --pattern | --dax | --workflow-file)")
    if args.montage_width is not None:
        return {
            "kind": "montage",
            "width": args.montage_width,
            "length_profile": args.length_profile,
            "data_profile": args.data_profile,
        }
    if args.pattern is not None:
        return {
            "kind": "pattern",
            "pattern": args.pattern,
            "tasks": args.tasks,
            "seed": args.pattern_seed,
        }
    if args.dax is not None:
        with open(args.dax, encoding="utf-8") as fh:
            return {"kind": "dax", "xml": fh.read()}
    with open(args.workflow_file, encoding="utf-8") as fh:
        return {"kind": "inline", "dag": json.load(fh)}


def _environment_request(args) -> dict | None:
    if args.env_file:
        with open(args.env_file, encoding="utf-8") as fh:
            return json.load(fh)
    doc: dict = {}
    sizes = {}
    for tier in ("device", "edge", "cloud"):
        value = getattr(args, f"{tier}_size")
        if value:
            sizes[tier] = value
    counts = {}
    for tier in ("device", "edge", "cloud"):
        value = getattr(args, f"{tier}_count")
        if value is not None:
            counts[tier] = value
    if sizes:
        doc["sizes"] = sizes
    if counts:
        doc["counts"] = counts
    return doc or None


def _add_workflow_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--montage-width", type=int, default=None,
                        help="generate a Montage-family workflow of this width")
    parser.add_argument("--length-profile", type=float, default=1.0)
    parser.add_argument("--data-profile", type=float, default=1.0)
    parser.add_argument("--pattern", choices=("sequential", "parallel", "hybrid"),
                        default=None, help="generate a template pattern workflow")
    parser.add_argument("--tasks", type=int, default=10, help="pattern task count")
    parser.add_argument("--pattern-seed", type=int, default=0)
    parser.add_argument("--dax", default=None, help="path to a DAX XML file")
    parser.add_argument("--workflow-file", default=None,
                        help="path to a native workflow JSON document")


def _add_environment_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--env-file", default=None,
                        help="path to an environment JSON document")
    for tier in ("device", "edge", "cloud"):
        parser.add_argument(f"--{tier}-size", choices=("small", "medium", "large"),
                            default=None)
        parser.add_argument(f"--{tier}-count", type=int, default=None)


def _add_objective_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--w-time", type=float, default=1.0)
    parser.add_argument("--w-energy", type=float, default=0.0)
    parser.add_argument("--w-cost", type=float, default=0.0)
    parser.add_argument("--deadline", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgeflow",
        description="Edge workflow engine: build, simulate, execute and report plans.",
    )
    parser.add_argument("--store", default=None,
                        help=f"run-store directory (default ${STORE_ENV_VAR} or {DEFAULT_STORE})")
    sub = parser.add_subparsers(dest="command", required=True)

    p_plan = sub.add_parser("plan", help="build an execution plan")
    _add_workflow_args(p_plan)
    _add_environment_args(p_plan)
    _add_objective_args(p_plan)
    p_plan.add_argument("--strategy", default="energy-optimal",
                        choices=("energy-optimal", "all-in-edge", "all-in-cloud"))
    p_plan.add_argument("--scheduler", default="ga",
                        choices=("fcfs", "round-robin", "min-min", "max-min", "pso", "ga"))
    p_plan.add_argument("--scheduler-params", default=None,
                        help="JSON object with scheduler hyperparameters")
    p_plan.add_argument("--bind", default=None,
                        choices=("pi-calculation", "kmp-match", "levenshtein-distance",
                                 "selection-sort", "simulated-only"),
                        help="bind every unbound task to this computing task")
    p_plan.add_argument("--seed", type=int, default=42)
    p_plan.add_argument("--out", default=None)

    p_sim = sub.add_parser("simulate", help="simulate a plan and report metrics")
    p_sim.add_argument("plan_id")
    p_sim.add_argument("--out", default=None)

    p_run = sub.add_parser("run", help="execute a simulated plan for real")
    p_run.add_argument("plan_id")
    p_run.add_argument("--events", action="store_true",
                       help="print each run event as a JSON line")
    p_run.add_argument("--out", default=None)

    p_rep = sub.add_parser("report", help="assemble the chart report for a plan")
    p_rep.add_argument("plan_id")
    p_rep.add_argument("--run", default=None)
    p_rep.add_argument("--out", default=None)

    p_cmp = sub.add_parser("compare", help="compare scheduling algorithms")
    p_cmp.add_argument("--plan", default=None,
                       help="compare against this plan's workflow and attach the result")
    _add_workflow_args(p_cmp)
    _add_environment_args(p_cmp)
    _add_objective_args(p_cmp)
    p_cmp.add_argument("--strategy", default="energy-optimal",
                       choices=("energy-optimal", "all-in-edge", "all-in-cloud"))
    p_cmp.add_argument("--algorithms", default="fcfs,round-robin,min-min,max-min,pso,ga",
                       help="comma-separated scheduler list")
    p_cmp.add_argument("--seeds", default=None,
                       help="comma-separated seeds for pso/ga medians")
    p_cmp.add_argument("--out", default=None)

    p_srv = sub.add_parser("serve", help="serve the HTTP API")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=None)

    return parser


def _cmd_plan(service: EngineService, args) -> dict:
    request = {
        "workflow": _workflow_request(args),
        "strategy": args.strategy,
        "scheduler": {
            "kind": args.scheduler,
            "seed": args.seed,
            "params": json.loads(args.scheduler_params) if args.scheduler_params else None,
        },
        "objectives": _weights(args),
    }
    env = _environment_request(args)
    if env is not None:
        request["environment"] = env
    if args.bind:
        request["bindings"] = {"default": args.bind}
    plan = service.build_plan(request)
    return {
        "plan_id": plan.id,
        "tasks": len(plan.workflow.tasks),
        "workflow": plan.workflow.name,
        "scheduler": plan.scheduler,
        "strategy": plan.strategy,
    }


def _cmd_run(service: EngineService, args) -> dict:
    run_id = service.execute_plan_real(args.plan_id)
    for event in service.stream_events(run_id):
        if args.events:  # live monitoring goes to stderr; stdout keeps the summary
            sys.stderr.write(json.dumps(event.to_doc(), sort_keys=True) + "\n")
    outcome = service.wait_run(run_id)
    return {"run_id": run_id, "outcome": outcome}


def _cmd_compare(service: EngineService, args) -> dict:
    request: dict = {
        "algorithms": [a.strip() for a in args.algorithms.split(",") if a.strip()],
    }
    if args.seeds:
        request["seeds"] = [int(s) for s in args.seeds.split(",")]
    if args.plan:
        request["plan"] = args.plan
    else:
        request["workflow"] = _workflow_request(args)
        env = _environment_request(args)
        if env is not None:
            request["environment"] = env
        request["strategy"] = args.strategy
        request["objectives"] = _weights(args)
    return service.compare_algorithms(request)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "serve":
            import uvicorn

            from edgeflow.control.api import DEFAULT_PORT, PORT_ENV_VAR, create_app

            service = _service(args)
            port = args.port or int(os.environ.get(PORT_ENV_VAR, DEFAULT_PORT))
            uvicorn.run(create_app(service), host=args.host, port=port, log_level="warning")
            return 0
        service = _service(args)
        if args.command == "plan":
            _emit(_cmd_plan(service, args), args)
        elif args.command == "simulate":
            _emit(service.simulate_plan(args.plan_id), args)
        elif args.command == "run":
            _emit(_cmd_run(service, args), args)
        elif args.command == "report":
            _emit(service.build_report(args.plan_id, args.run), args)
        elif args.command == "compare":
            _emit(_cmd_compare(service, args), args)
        else:  # pragma: no cover - argparse enforces the choices
            parser.error(f"unknown command {args.command!r}")
        return 0
    except EdgeflowError as exc:
        sys.stderr.write(
            json.dumps({"error": {"code": exc.code, "message": exc.message}}, sort_keys=True)
            + "\n"
        )
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
