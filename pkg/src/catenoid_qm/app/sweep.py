"""Deterministic parameter sweeps.

A sweep evaluates independent work items, possibly across worker processes,
with a contract the tests pin down: output rows follow the input enumeration
order and the emitted CSV bytes are identical for any worker count.  All
formatting happens in the parent process after an ordered gather; item
failures are recorded in-row (error column) and surface as a nonzero failure
count rather than aborting the batch.

The worker count comes from the spec but the CATENOID_WORKERS environment
variable overrides it.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

from .. import solver
from ..geometry import CatenoidShape, curvature
from .tabular import fmt, rows_to_csv_bytes


@dataclass(frozen=True)
class SweepSpec:
    quantity: str
    items: tuple
    params: dict
    workers: int = 1


@dataclass
class SweepResult:
    quantity: str
    header: list[str]
    rows: list[list[str]]
    failures: int


def resolve_workers(requested: int) -> int:
    env = os.environ.get("CATENOID_WORKERS")
    if env is not None:
        return max(1, int(env))
    return max(1, int(requested))


# ---------------------------------------------------------------------------
# Quantity evaluators (top-level, picklable)
# ---------------------------------------------------------------------------

def _eval_transmission(params: dict, item: dict) -> dict:
    res = solver.transmission(
        m=int(item["m"]),
        eps=float(item["eps"]),
        u_max=params.get("u_max"),
        samples=params.get("samples"),
        phase_correction=bool(params.get("phase_correction", False)),
    )
    return {
        "m": res.channel.m,
        "eps": res.channel.eps,
        "k": res.k,
        "re_r": res.r_amp.real,
        "im_r": res.r_amp.imag,
        "re_t": res.t_amp.real,
        "im_t": res.t_amp.imag,
        "R2": res.reflection_probability,
        "T2": res.transmission_probability,
        "unitarity_defect": res.unitarity_defect,
    }


def _eval_curvature(params: dict, item: dict) -> dict:
    shape = CatenoidShape(R=float(params.get("R", 1.0)), a=float(params.get("a", 1.0)))
    cs = curvature(shape, float(item["zeta"]))
    return {
        "zeta": float(item["zeta"]),
        "kappa1": float(cs.kappa1),
        "kappa2": float(cs.kappa2),
        "H": float(cs.H),
        "K": float(cs.K),
    }


def _eval_bound_count(params: dict, item: dict) -> dict:
    grid = solver.Grid1D(
        -float(params.get("zeta_max", solver.DEFAULT_ZETA_MAX)),
        float(params.get("zeta_max", solver.DEFAULT_ZETA_MAX)),
        int(params.get("samples", solver.DEFAULT_SAMPLES)),
    )
    states = solver.bound_states(
        m=int(item["m"]),
        eps_window=(float(params.get("eps_min", -0.9)), float(params.get("eps_max", -1e-4))),
        grid=grid,
        method=solver.Method(params.get("method", "shooting")),
    )
    return {
        "m": int(item["m"]),
        "count": len(states),
        "eps_list": "|".join(fmt(s.channel.eps) for s in states),
    }


_QUANTITIES = {
    "transmission": (
        _eval_transmission,
        ["m", "eps", "k", "re_r", "im_r", "re_t", "im_t", "R2", "T2", "unitarity_defect"],
    ),
    "curvature": (_eval_curvature, ["zeta", "kappa1", "kappa2", "H", "K"]),
    "bound_count": (_eval_bound_count, ["m", "count", "eps_list"]),
}


def _run_item(quantity: str, params: dict, item: dict) -> tuple[dict | None, str]:
    evaluator = _QUANTITIES[quantity][0]
    try:
        return evaluator(params, item), ""
    except Exception as exc:  # recorded in-row, batch continues
        return None, f"{type(exc).__name__}: {exc}"


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate every item of the spec, serially or across processes.

    Results are gathered in input order and formatted in the parent process,
    so the output is byte-for-byte independent of the worker count.
    """
    if spec.quantity not in _QUANTITIES:
        raise ValueError(f"unknown sweep quantity {spec.quantity!r}")
    header = list(_QUANTITIES[spec.quantity][1]) + ["error"]
    workers = resolve_workers(spec.workers)
    job = partial(_run_item, spec.quantity, spec.params)

    if workers <= 1 or len(spec.items) <= 1:
        outcomes = [job(item) for item in spec.items]
    else:
        try:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(job, spec.items))
        except (OSError, PermissionError):
            outcomes = [job(item) for item in spec.items]

    rows: list[list[str]] = []
    failures = 0
    for payload, error in outcomes:
        if payload is None:
            failures += 1
            rows.append([""] * (len(header) - 1) + [error])
        else:
            rows.append([fmt(payload[col]) for col in header[:-1]] + [error])
    return SweepResult(quantity=spec.quantity, header=header, rows=rows, failures=failures)


def sweep_csv_bytes(result: SweepResult) -> bytes:
    """RFC-4180 CSV rendering (CRLF, '.' decimal, 17-significant-digit floats)."""
    return rows_to_csv_bytes(result.header, result.rows)
