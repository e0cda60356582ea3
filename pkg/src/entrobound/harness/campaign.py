"""
Seeded Monte-Carlo campaigns over random measurements and states.

Trial ``t`` of check ``c`` draws from its own Philox stream keyed by
``(seed, c, t)``, so a trial can be replayed alone and adding a check
does not perturb the others. Rows are ordered by trial, then by check.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

from .. import bounds, naimark
from ..entropy import OrderError, conjugate_order, format_order, order_label, parse_order
from ..interpolation import riesz_check, squared_riesz_check
from ..linalg import ValidationError
from ..measurement import Measurement, PureState
from . import ensembles
from .report import ReportRow, RunReport
from .serialize import ScenarioFormatError, encode_matrix, encode_vector

CHECKS = ("thm5", "thm6", "cor8", "saturation", "riesz", "riesz-pvm", "naimark")
PAIR_ORDERS = (0.6, 0.75, 1.0, 1.5, 2.0, 5.0)
SINGLE_ORDERS = (0.5, 1.0, 2.0, 10.0, math.inf)
FREE_ORDER_MAX = 10.0


@dataclass(frozen=True)
class CampaignConfig:
    """Everything that determines a campaign's sampled instances.

    ``dims`` and ``outcomes`` are inclusive ranges. ``orders`` overrides
    the default order sets of ``thm5`` and ``thm6`` when given.
    """

    seed: int = 0
    trials: int = 100
    dims: tuple[int, int] = (2, 4)
    outcomes: tuple[int, int] = (2, 4)
    orders: tuple[float, ...] | None = None
    ensemble: str = "general-POVM"
    state_ensemble: str = "mixed"
    checks: tuple[str, ...] = ("thm5", "thm6", "cor8")
    rng: str = ensembles.RNG_ALGORITHM
    tolerance: float = bounds.SLACK_TOL

    def __post_init__(self):
        if self.rng != ensembles.RNG_ALGORITHM:
            raise ScenarioFormatError(f"rng: only {ensembles.RNG_ALGORITHM!r} is supported, got {self.rng!r}")
        for name in ("seed", "trials"):
            val = getattr(self, name)
            if not isinstance(val, int) or isinstance(val, bool):
                raise ScenarioFormatError(f"{name}: expected an integer, got {val!r}")
        if not isinstance(self.tolerance, (int, float)) or self.tolerance < 0:
            raise ScenarioFormatError(f"tolerance: expected a non-negative number, got {self.tolerance!r}")
        if self.trials < 0:
            raise ScenarioFormatError("trials: must be non-negative")
        for name in ("dims", "outcomes"):
            lo, hi = getattr(self, name)
            if not 1 <= lo <= hi:
                raise ScenarioFormatError(f"{name}: invalid range [{lo}, {hi}]")
        if self.ensemble not in ensembles.MEASUREMENT_ENSEMBLES:
            raise ScenarioFormatError(f"ensemble: unknown measurement ensemble {self.ensemble!r}")
        if self.state_ensemble not in ensembles.STATE_ENSEMBLES:
            raise ScenarioFormatError(f"state_ensemble: unknown state ensemble {self.state_ensemble!r}")
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise ScenarioFormatError(f"checks: unknown check(s) {unknown}; choose from {list(CHECKS)}")
        if self.orders is not None:
            try:
                orders = tuple(parse_order(o) for o in self.orders)
                if "thm5" in self.checks:
                    for a in orders:
                        conjugate_order(a)
            except OrderError as exc:
                raise ScenarioFormatError(f"orders: {exc}") from None
            object.__setattr__(self, "orders", orders)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["dims"], out["outcomes"] = list(self.dims), list(self.outcomes)
        out["checks"] = list(self.checks)
        if self.orders is not None:
            out["orders"] = [format_order(o) for o in self.orders]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> CampaignConfig:
        if not isinstance(data, dict):
            raise ScenarioFormatError("campaign config: expected a JSON object")
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ScenarioFormatError(f"campaign config: unknown field(s) {sorted(extra)}")
        kw = dict(data)
        for key in ("dims", "outcomes", "checks", "orders"):
            if kw.get(key) is not None:
                kw[key] = tuple(kw[key])
        return cls(**kw)


def load_config(path) -> CampaignConfig:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return CampaignConfig.from_dict(data)


def _state_dict(st) -> dict:
    if isinstance(st, PureState):
        return {"kind": "pure", "amplitudes": encode_vector(st.amplitudes)}
    return {"kind": "mixed", "matrix": encode_matrix(st.matrix)}


def _meas_dict(m: Measurement) -> dict:
    return {"kind": m.kind.value, "elements": [encode_matrix(e) for e in m.elements]}


class _Trial:
    """Sampling context for one (check, trial) stream."""

    def __init__(self, cfg: CampaignConfig, check: str, trial: int):
        self.cfg = cfg
        self.rng = ensembles.make_rng(cfg.seed, CHECKS.index(check), trial)
        self.d = int(self.rng.integers(cfg.dims[0], cfg.dims[1] + 1))
        self.n = int(self.rng.integers(cfg.outcomes[0], cfg.outcomes[1] + 1))
        self.repro = {"check": check, "seed": cfg.seed, "trial": trial, "dimension": self.d,
                      "rng": cfg.rng, "measurements": {}}

    def measurement(self, name: str, kind: str | None = None) -> Measurement:
        kind = kind or self.cfg.ensemble
        n = self.n
        if kind == "rank-one-POVM":
            n = max(n, self.d)
        elif kind == "PVM":
            n = min(n, self.d)
        m = ensembles.MEASUREMENT_ENSEMBLES[kind](self.rng, self.d, n)
        self.repro["measurements"][name] = _meas_dict(m)
        return m

    def state(self, kind: str | None = None):
        st = ensembles.STATE_ENSEMBLES[kind or self.cfg.state_ensemble](self.rng, self.d)
        self.repro["state"] = _state_dict(st)
        return st

    @property
    def label(self) -> str:
        return f"t{self.repro['trial']} d={self.d}"


def _bound_rows(rep: bounds.BoundReport, tr: _Trial, tol: float) -> list[ReportRow]:
    orders = "/".join(order_label(o) for o in rep.orders)
    return [ReportRow(q.name, f"{tr.label} @ {orders}", q.lhs, q.rhs, tol, reproducer=tr.repro)
            for q in rep.inequalities]


def _run_thm5(tr: _Trial, tol: float) -> list[ReportRow]:
    m, n, rho = tr.measurement("M"), tr.measurement("N"), tr.state()
    rows = []
    for a in tr.cfg.orders or PAIR_ORDERS:
        rows += _bound_rows(bounds.check_pair_bound(m, n, rho, a), tr, tol)
    return rows


def _run_thm6(tr: _Trial, tol: float) -> list[ReportRow]:
    m, rho = tr.measurement("M"), tr.state()
    rows = []
    for a in tr.cfg.orders or SINGLE_ORDERS:
        rows += _bound_rows(bounds.check_single_bound(m, rho, a), tr, tol)
    return rows


def _run_cor8(tr: _Trial, tol: float) -> list[ReportRow]:
    m, n, rho = tr.measurement("M"), tr.measurement("N"), tr.state()
    # orders uniform on (0, 10]
    a, b = FREE_ORDER_MAX * (1.0 - tr.rng.random(2))
    tr.repro["orders"] = [float(a), float(b)]
    return _bound_rows(bounds.check_free_order_bound(m, n, rho, a, b), tr, tol)


def _run_saturation(tr: _Trial, tol: float) -> list[ReportRow]:
    m, n, rho = tr.measurement("M"), tr.measurement("N"), tr.state()
    v = bounds.check_rank_one_saturation(m, n, rho)
    if not v.applicable:
        return [ReportRow(f"saturation (inapplicable: {v.reason})", tr.label, 0.0, 0.0, 0.0,
                          kind="value", reproducer=tr.repro)]
    return [ReportRow("f = f_bar", tr.label, v.f, v.f_bar, tol, kind="value", reproducer=tr.repro)]


def _run_riesz(tr: _Trial, tol: float) -> list[ReportRow]:
    rows_, cols = tr.d, int(tr.rng.integers(tr.cfg.dims[0], tr.cfg.dims[1] + 1))
    t = ensembles.random_contraction(tr.rng, rows_, cols)
    x = ensembles.complex_gaussian(tr.rng, cols)
    b = 1.0 + (1.0 - tr.rng.random())  # in (1, 2]
    b = min(b, 2.0 - 1e-6)
    tr.repro.update(transform=encode_matrix(t), vector=encode_vector(x), b=float(b))
    res = riesz_check(t, x, b)
    return [ReportRow("Riesz", f"{tr.label} b={b:.4f}", res.rhs, res.lhs, tol, reproducer=tr.repro)]


def _run_riesz_pvm(tr: _Trial, tol: float) -> list[ReportRow]:
    p, q = tr.measurement("P", "PVM"), tr.measurement("Q", "PVM")
    psi = tr.state("pure-Haar")
    beta = 0.5 + 0.5 * (1.0 - tr.rng.random())
    beta = min(beta, 1.0 - 1e-6)
    tr.repro["beta"] = float(beta)
    res = squared_riesz_check(p, q, psi, beta)
    return [ReportRow("Riesz (PVM pair)", f"{tr.label} beta={beta:.4f}", res.rhs, res.lhs, tol,
                      reproducer=tr.repro)]


def _run_naimark(tr: _Trial, tol: float) -> list[ReportRow]:
    e, g = tr.measurement("E"), tr.measurement("G")
    psi = tr.state("pure-Haar")
    rep = naimark.verify_dilation(naimark.dilate(e), g, [psi])
    inst = f"{tr.label} n={e.n_outcomes}"
    return [ReportRow(f"dilation {k}", inst, v, 0.0, naimark.IDENTITY_TOL, kind="value",
                      reproducer=tr.repro) for k, v in rep.residuals().items()]


_RUNNERS = {
    "thm5": _run_thm5,
    "thm6": _run_thm6,
    "cor8": _run_cor8,
    "saturation": _run_saturation,
    "riesz": _run_riesz,
    "riesz-pvm": _run_riesz_pvm,
    "naimark": _run_naimark,
}


def run_trial(cfg: CampaignConfig, check: str, trial: int) -> list[ReportRow]:
    """Evaluate one trial; sampling or validation failures become failing rows."""
    tr = _Trial(cfg, check, trial)
    try:
        return _RUNNERS[check](tr, cfg.tolerance)
    except (ValidationError, OrderError, ValueError) as exc:
        tr.repro["error"] = f"{type(exc).__name__}: {exc}"
        return [ReportRow(f"{check} error", tr.label, math.nan, 0.0, 0.0, kind="value",
                          reproducer=tr.repro)]


def run_campaign(cfg: CampaignConfig) -> RunReport:
    report = RunReport(f"campaign seed={cfg.seed}", meta={"config": cfg.to_dict()})
    for trial in range(cfg.trials):
        for check in cfg.checks:
            report.rows.extend(run_trial(cfg, check, trial))
    return report
