"""One function per CLI command; each returns a :class:`RunReport`."""

from __future__ import annotations

import logging
import time
from typing import Any, Callable

import numpy as np

from . import __version__
from .config import DEFAULT_CONFIG, ToleranceConfig
from .cost import ec_lower_bound, estimate_alpha1, induction_inequality_check, run_theorem1_pipeline
from .errors import BoundentError, SizeLimitError
from .linalg import hermitian_eig, solver_settings
from .negativity import additivity_check, log_negativity, theorem2_ceiling
from .report import RunReport
from .tensor import partial_transpose
from .tiles import (
    complement_certificate,
    gram_matrix,
    p1_projector,
    p2_projector,
    p2_vectors,
    rho_b,
    singlet,
    tiles_projector,
    tiles_upb,
)

log = logging.getLogger(__name__)

CEILING_GRID = ((1, 0), (1, 1), (2, 1), (1, 2))
ALPHA1_MARGIN = 1e-3


class _Checks:
    def __init__(self) -> None:
        self.items: list[dict[str, str]] = []

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        entry = {"name": name, "status": "pass" if ok else "fail"}
        if detail:
            entry["detail"] = detail
        self.items.append(entry)
        return ok

    def skip(self, name: str, reason: str) -> None:
        self.items.append({"name": name, "status": f"skipped: {reason}"})


def _upb_verify(config: ToleranceConfig, checks: _Checks) -> dict[str, Any]:
    upb = tiles_upb()
    gram_err = float(np.abs(gram_matrix(upb) - np.eye(5)).max())
    p = tiles_projector().matrix
    trace = float(np.trace(p).real)
    idem = float(np.linalg.norm(p @ p - p))
    annihil = max(float(np.linalg.norm(p @ v.vector)) for v in upb)
    rho = rho_b()
    pt_min = float(hermitian_eig(partial_transpose(rho).matrix, method=config.eig_method).values[-1])
    checks.add("upb_gram", gram_err <= 1e-12, f"max |G - I| = {gram_err:.3e}")
    checks.add("projector_trace", abs(trace - 4.0) <= config.cert_tol)
    checks.add("projector_idempotent", idem <= config.cert_tol)
    checks.add("projector_annihilates_upb", annihil <= config.cert_tol)
    checks.add("rho_b_trace", abs(rho.trace() - 1.0) <= 1e-12)
    checks.add("rho_b_ppt", pt_min >= -config.psd_tol, f"min eig = {pt_min:.3e}")
    return {
        "gram_max_error": gram_err,
        "projector_trace": trace,
        "projector_idempotence_error": idem,
        "projector_upb_annihilation": annihil,
        "rho_b_trace": rho.trace(),
        "rho_b_pt_min_eigenvalue": pt_min,
        "upb": upb,
    }


def _certificate(config: ToleranceConfig, checks: _Checks) -> dict[str, Any]:
    try:
        cert = complement_certificate(config.cert_tol)
    except BoundentError as exc:
        checks.add("certificate_residual", False, str(exc))
        return {"error": str(exc)}
    residual = cert.residual()
    p1 = p1_projector().matrix
    p2 = p2_projector().matrix
    split_err = float(np.linalg.norm(p1 + p2 - cert.target.matrix))
    p2_idem = float(np.linalg.norm(p2 @ p2 - p2))
    p2_trace = float(np.trace(p2).real)
    p2_gram = float(np.abs(gram_matrix(p2_vectors()) - np.eye(5)).max())
    parent_err = max(
        abs(s.overlap(parent) - 1.0)
        for (_, s), parent in zip(cert.terms, [p1_projector()] * 8 + [p2_projector()] * 5)
    )
    checks.add("certificate_residual", residual <= config.cert_tol, f"{residual:.3e}")
    checks.add("certificate_terms", len(cert.terms) == 13)
    checks.add("p1_plus_p2", split_err <= config.cert_tol)
    checks.add("p2_rank5_projector", p2_idem <= config.cert_tol and abs(p2_trace - 5) <= config.cert_tol)
    checks.add("p2_vectors_orthonormal", p2_gram <= 1e-12)
    checks.add("terms_in_parent_range", parent_err <= 1e-12)
    return {
        "residual": residual,
        "p1_plus_p2_error": split_err,
        "p2_trace": p2_trace,
        "p2_idempotence_error": p2_idem,
        "p2_gram_max_error": p2_gram,
        "term_parent_overlap_error": parent_err,
        "certificate": cert,
    }


def _alpha1(config: ToleranceConfig, checks: _Checks) -> dict[str, Any]:
    out = estimate_alpha1(config)
    top = out.top_fraction(0.1)
    spread = float(top[0] - top[-1])
    checks.add("alpha1_converged", all(out.converged))
    checks.add("alpha1_stable", spread <= 1e-7, f"top-decile spread {spread:.3e}")
    checks.add("alpha1_below_one", out.best_value <= 1.0 - ALPHA1_MARGIN, f"{out.best_value!r}")
    return {"alpha1_hat": out.best_value, "seesaw": out}


def _cost_bound(config: ToleranceConfig, checks: _Checks) -> dict[str, Any]:
    try:
        rep = run_theorem1_pipeline(config)
    except BoundentError as exc:
        checks.add("cost_bound", False, str(exc))
        return {"error": str(exc)}
    checks.add("certificate_ok", rep.certificate_ok)
    checks.add("alpha1_stable", rep.alpha1_stable)
    checks.add("alpha1_below_one", rep.alpha1_hat <= 1.0 - ALPHA1_MARGIN)
    checks.add("grid_oracle_agrees", rep.oracle_ok, f"grid {rep.grid_oracle_value!r}")
    checks.add("ec_lower_bound_positive", rep.ec_lower_bound_bits > 0)
    for c in rep.induction_checks:
        name = f"induction_n{c['n'] if isinstance(c, dict) else c.copies}"
        if isinstance(c, dict):
            checks.skip(name, c["status"].removeprefix("skipped: "))
        else:
            checks.add(name, c.passed, f"min eig {c.min_eig:.3e}")
    for m in rep.multicopy_checks:
        name = f"multicopy_n{m.copies}"
        if m.status.startswith("skipped"):
            checks.skip(name, m.status.removeprefix("skipped: "))
        else:
            checks.add(name, m.passed)
    return {"cost_bound": rep}


def _induction(config: ToleranceConfig, checks: _Checks, n: int, beta: float | None) -> dict[str, Any]:
    results: dict[str, Any] = {}
    if beta is None:
        alpha1 = estimate_alpha1(config).best_value
        beta = ec_lower_bound(alpha1).beta
        results["alpha1_hat"] = alpha1
    try:
        chk = induction_inequality_check(
            n, beta, psd_tol=config.psd_tol, dim_limit=config.dim_limit, eig_method=config.eig_method
        )
    except SizeLimitError as exc:
        checks.skip(f"induction_n{n}", "size limit")
        results["skipped"] = str(exc)
        return results
    checks.add(f"induction_n{n}", chk.passed, f"min eig {chk.min_eig:.3e}")
    results["induction"] = chk
    return results


def _negativity(config: ToleranceConfig, checks: _Checks, copies: int, singlets: int) -> dict[str, Any]:
    try:
        res = theorem2_ceiling(copies, singlets, config.dim_limit, config.eig_method)
    except SizeLimitError as exc:
        checks.skip(f"ceiling_N{copies}_L{singlets}", "size limit")
        return {"copies": copies, "singlets": singlets, "skipped": str(exc)}
    checks.add(f"ceiling_N{copies}_L{singlets}", res.passed, f"E_N = {res.e_neg!r}")
    return res.to_dict()


def _theorem2(config: ToleranceConfig, checks: _Checks) -> dict[str, Any]:
    rb = log_negativity(rho_b(), config.psd_tol, config.eig_method)
    sg = log_negativity(singlet(), config.psd_tol, config.eig_method)
    checks.add("negativity_rho_b_zero", abs(rb.value_bits) <= 1e-9 and rb.is_ppt)
    checks.add("negativity_singlet_one", abs(sg.value_bits - 1.0) <= 1e-9)
    grid = [_negativity(config, checks, n, l) for n, l in CEILING_GRID]
    add = additivity_check(rho_b(), singlet(), config.dim_limit, config.eig_method)
    checks.add("additivity_rho_b_singlet", add.passed)
    return {"rho_b": rb, "singlet": sg, "ceiling_grid": grid, "additivity_rho_b_singlet": add}


def _timed(
    command: str, config: ToleranceConfig, args: dict, body: Callable[[_Checks], dict]
) -> RunReport:
    start = time.perf_counter()
    checks = _Checks()
    with solver_settings(
        tol=config.eig_tol, max_sweeps=config.max_sweeps, herm_tol=config.herm_tol, method=config.eig_method
    ):
        results = body(checks)
    elapsed = (time.perf_counter() - start) * 1e3
    report = RunReport(command, config, args, results, checks.items, elapsed, __version__)
    log.info("%s finished in %.0f ms, status %s", command, elapsed, "fail" if report.failed else "pass")
    return report


def cmd_upb_verify(config: ToleranceConfig = DEFAULT_CONFIG) -> RunReport:
    return _timed("upb-verify", config, {}, lambda c: _upb_verify(config, c))


def cmd_certificate(config: ToleranceConfig = DEFAULT_CONFIG) -> RunReport:
    return _timed("certificate", config, {}, lambda c: _certificate(config, c))


def cmd_alpha1(config: ToleranceConfig = DEFAULT_CONFIG) -> RunReport:
    return _timed("alpha1", config, {}, lambda c: _alpha1(config, c))


def cmd_cost_bound(config: ToleranceConfig = DEFAULT_CONFIG) -> RunReport:
    return _timed("cost-bound", config, {}, lambda c: _cost_bound(config, c))


def cmd_induction(n: int = 1, beta: float | None = None, config: ToleranceConfig = DEFAULT_CONFIG) -> RunReport:
    return _timed("induction", config, {"n": n, "beta": beta}, lambda c: _induction(config, c, n, beta))


def cmd_negativity(copies: int = 1, singlets: int = 1, config: ToleranceConfig = DEFAULT_CONFIG) -> RunReport:
    args = {"copies": copies, "singlets": singlets}
    return _timed("negativity", config, args, lambda c: _negativity(config, c, copies, singlets))


def cmd_reproduce(config: ToleranceConfig = DEFAULT_CONFIG) -> RunReport:
    """Every check in order: Tiles construction, certificate, cost bound, negativity ceilings."""

    def body(checks: _Checks) -> dict[str, Any]:
        return {
            "upb_verify": _upb_verify(config, checks),
            "certificate": _certificate(config, checks),
            "theorem1": _cost_bound(config, checks),
            "theorem2": _theorem2(config, checks),
        }

    return _timed("reproduce", config, {}, body)
