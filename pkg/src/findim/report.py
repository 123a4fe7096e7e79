"""Analysis reports: JSON-serializable summaries with re-validatable witnesses.

Reports are plain dicts built in a fixed order from deterministic inputs, so
two runs on the same input and flags serialize byte-identically once timing
is excluded (stable=True). Witness covers serialize as point-index lists plus
diameters and re-validate against the input space on reload.
"""

from __future__ import annotations

import hashlib
import time
from typing import Optional

from . import _kernel
from .cover import CoverClass, CoverSet, TwoCover, brute_force_oracle, min_cover_count
from .dimension import (
    DimensionKind,
    DimensionResult,
    hausdorff_dimension,
    box_dimension,
    oracle_hausdorff_dimension,
)
from .errors import OracleMismatch, OracleTooLarge
from .metric import FiniteMetric, cached_summary
from .nn import audit

ORACLE_EXPONENTS = (0.0, 0.5, 1.0, 2.0)


def witness_to_json(cover: Optional[TwoCover]) -> Optional[dict]:
    if cover is None:
        return None
    return {
        "cover_class": cover.cover_class.value,
        "sets": [{"points": list(cs.indices()), "diameter": cs.diameter}
                 for cs in cover.sets],
    }


def cover_from_json(obj: dict) -> TwoCover:
    sets = []
    for entry in obj["sets"]:
        mask = 0
        for i in entry["points"]:
            mask |= 1 << int(i)
        sets.append(CoverSet(mask=mask, diameter=float(entry["diameter"])))
    return TwoCover(sets=tuple(sets),
                    cover_class=CoverClass(obj["cover_class"]))


def dimension_to_json(result: DimensionResult) -> dict:
    return {
        "kind": result.kind.value,
        "value": result.value,
        "bounds": list(result.bounds),
        "iterations": result.iterations,
        "residual": result.residual,
        "witness": witness_to_json(result.witness),
    }


def _oracle_check(m: FiniteMetric, dim_h: DimensionResult) -> dict:
    """Cross-check the optimized solvers against the brute-force oracle."""
    from .cover import min_weighted_cover  # local: avoids import noise above

    summary = cached_summary(m)
    detail: dict = {"exponents": list(ORACLE_EXPONENTS)}
    if summary.has_focal:
        detail["note"] = "focal space: dimensions infinite on both routes"
        return detail
    level = summary.covering_diameter
    t_count, _ = min_cover_count(m, level)
    for s in ORACLE_EXPONENTS:
        fast, _ = min_weighted_cover(m, level, s)
        slow = brute_force_oracle(m, level, s)
        if s == 0.0 and (t_count != slow.count or round(fast) != slow.count):
            raise OracleMismatch(
                f"cover counts differ: optimized {t_count}, oracle {slow.count}"
            )
        if abs(fast - slow.weighted) > 1e-9 * max(1.0, abs(slow.weighted)):
            raise OracleMismatch(
                f"weighted minima differ at s={s}: {fast} vs {slow.weighted}"
            )
    slow_dim = oracle_hausdorff_dimension(m)
    if abs(slow_dim.value - dim_h.value) > 1e-9:
        raise OracleMismatch(
            f"dimensions differ: optimized {dim_h.value}, oracle {slow_dim.value}"
        )
    detail["t_count"] = t_count
    detail["oracle_dimension"] = slow_dim.value
    detail["status"] = "ok"
    return detail


def build_report(m: FiniteMetric, *, source: Optional[str] = None,
                 raw_bytes: Optional[bytes] = None, metric_tag: Optional[str] = None,
                 oracle: bool = False, stable: bool = False,
                 max_exact: Optional[int] = None) -> dict:
    t0 = time.perf_counter()
    report: dict = {
        "input": {
            "source": source,
            "sha256": hashlib.sha256(raw_bytes).hexdigest() if raw_bytes else None,
            "points": m.size,
            "metric": metric_tag,
            "tolerance": m.tolerance,
        }
    }
    if m.size >= 2:
        s = cached_summary(m)
        report["summary"] = {
            "separation": s.separation,
            "covering_diameter": s.covering_diameter,
            "diameter": s.diameter,
            "nu": [float(v) for v in s.nu],
            "focal": list(s.focal),
            "locally_uniform": s.locally_uniform,
        }
    else:
        report["summary"] = None

    dim_h = hausdorff_dimension(m, max_exact=max_exact)
    dim_b = box_dimension(m, max_exact=max_exact)
    report["hausdorff_dimension"] = dimension_to_json(dim_h)
    report["box_dimension"] = dimension_to_json(dim_b)

    if m.size >= 2:
        nn = audit(m, dim_h=dim_h, dim_b=dim_b)
        report["nn_audit"] = {
            "nearest": list(nn.nearest),
            "lambda": nn.lambda_ratio,
            "delta_ratio": nn.delta_ratio,
            "focal": list(nn.focal),
            "verdict": nn.verdict,
            "omnibus": nn.omnibus,
        }
    else:
        report["nn_audit"] = None

    if oracle:
        if m.size > 10:
            raise OracleTooLarge(
                f"oracle cross-check capped at 10 points, space has {m.size}"
            )
        report["oracle_check"] = _oracle_check(m, dim_h)

    solver = {
        "backend": _kernel.backend_name(m.size),
        "nodes": dim_h.nodes,
        "bisection_iterations": dim_h.iterations,
    }
    if not stable:
        solver["wall_time_s"] = time.perf_counter() - t0
    report["solver"] = solver
    return report


def validate_witness(report_witness: dict, m: FiniteMetric) -> bool:
    """Re-validate a serialized witness cover against its space."""
    from .cover import classify

    cover = cover_from_json(report_witness)
    return classify(cover, m) is CoverClass(report_witness["cover_class"])
