"""
Scenario files: named states, named measurements and a list of checks.

Schema ``entrobound-scenario/1``::

    {
      "format": "entrobound-scenario/1",
      "dimension": 2,
      "states": {"psi": {"kind": "pure", "amplitudes": [[1, 0], [0, 0]]},
                 "rho": {"kind": "mixed", "matrix": [[[0.5, 0], [0, 0]], ...]}},
      "measurements": {"M": {"kind": "POVM", "elements": [<matrix>, ...],
                             "labels": ["1", "2", "3"]}},
      "checks": [{"type": "pair", "measurements": ["M", "N"],
                  "state": "psi", "orders": [2, "shannon"]}, ...],
      "tolerances": {"slack": 1e-9, "value": 1e-10}
    }

Complex numbers are ``[re, im]`` pairs (plain numbers are accepted as
real), matrices are row-major nested lists, and entropy orders are
numbers or the markers ``"shannon"`` / ``"min"``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .. import bounds, naimark
from ..entropy import OrderError, order_label, parse_order, renyi_entropy
from ..linalg import ValidationError
from ..measurement import (
    DensityMatrix,
    Measurement,
    MeasurementKind,
    PureState,
    density_matrix,
    is_projective,
    outcome_distribution,
    pure_state,
    validate_measurement,
)
from .report import ReportRow, RunReport
from .serialize import (
    ScenarioFormatError,
    decode_matrix,
    decode_vector,
    encode_matrix,
    encode_vector,
)

SCENARIO_FORMAT = "entrobound-scenario/1"
DEFAULT_TOLERANCES = {"slack": 1e-9, "value": 1e-10, "identity": 1e-9}

PAIR_ORDERS = [0.6, 0.75, "shannon", 1.5, 2, 5]
SINGLE_ORDERS = [0.5, "shannon", 2, 10, "min"]

CHECK_FIELDS = {
    "pair": ("measurements", "state"),
    "single": ("measurement", "state"),
    "free": ("measurements", "state"),
    "saturation": ("measurements", "state"),
    "dilation": ("measurement", "companion", "states"),
    "projective": ("measurement", "expected"),
    "value": ("quantity",),
}

# quantity -> (needs measurement pair?, needs state?)
QUANTITIES = {
    "f_bar_squared": ("measurements", False),
    "cor7_rhs": ("measurements", False),
    "f": ("measurements", True),
    "thm5_rhs": ("measurements", True),
    "cor8_rhs": ("measurements", True),
    "compare": ("measurements", True),
    "phi": ("measurement", True),
    "phi_bar": ("measurement", False),
    "thm6_rhs": ("measurement", True),
    "renyi_minus_cor9": ("measurement", True),
}


@dataclass
class Scenario:
    dimension: int
    states: dict[str, PureState | DensityMatrix]
    measurements: dict[str, Measurement]
    checks: list[dict] = field(default_factory=list)
    tolerances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    name: str = "scenario"


def _disc_states():
    r2 = math.sqrt(2.0)
    e0 = np.array([1.0, 0.0], dtype=complex)
    e1 = np.array([0.0, 1.0], dtype=complex)
    phi3 = 2 ** -0.75 * (math.sqrt(r2 + 1.0) * e0 + math.sqrt(r2 - 1.0) * e1)
    return e0, e1, phi3


def builtin_discrimination_scenario() -> Scenario:
    """Unambiguous vs minimum-error discrimination of ``e0`` and ``(e0 + e1)/sqrt 2``.

    ``N`` is the two-outcome Helstrom PVM built from vectors at angle pi/8,
    ``M`` the three-outcome error-free POVM whose third element is the
    inconclusive outcome, and ``phi3`` the top eigenvector of ``M_3``.
    """
    r2 = math.sqrt(2.0)
    e0, e1, phi3 = _disc_states()
    c, s = math.cos(math.pi / 8), math.sin(math.pi / 8)
    u = c * e0 - s * e1
    v = s * e0 + c * e1
    n_pvm = validate_measurement([np.outer(u, u.conj()), np.outer(v, v.conj())], "PVM")
    diff = e0 - e1
    m1 = 2 ** -0.5 / (r2 + 1.0) * np.outer(diff, diff.conj())
    m2 = r2 / (r2 + 1.0) * np.outer(e1, e1.conj())
    m3 = np.eye(2) - m1 - m2
    m_povm = validate_measurement([m1, m2, m3], "POVM")

    states = {
        "psi1": pure_state(e0),
        "psi2": pure_state((e0 + e1) / r2),
        "phi3": pure_state(phi3),
        "maximally_mixed": density_matrix(np.eye(2) / 2),
    }
    gap = math.log(r2 + 1.0) - math.log(2.0)

    def value(label, quantity, expected, **kw):
        return {"type": "value", "label": label, "quantity": quantity, "expected": expected, **kw}

    pair = ["M", "N"]
    checks = [
        {"type": "projective", "measurement": "N", "expected": True},
        {"type": "projective", "measurement": "M", "expected": False},
        value("f_bar^2", "f_bar_squared", 0.5, measurements=pair),
        value("Cor7 RHS", "cor7_rhs", math.log(2.0), measurements=pair),
        value("phi(M|psi1)", "phi", 2 ** -0.5, measurement="M", state="psi1"),
        value("phi(N|psi1)", "phi", 2 ** -1.5 * (r2 + 1.0), measurement="N", state="psi1"),
        value("Cor8 RHS psi1", "cor8_rhs", math.log(4.0) - math.log(r2 + 1.0),
              measurements=pair, state="psi1"),
        value("phi(M|phi3)", "phi", 2.0 / (r2 + 1.0), measurement="M", state="phi3"),
        value("phi(N|phi3)", "phi", 0.5, measurement="N", state="phi3"),
        value("Cor8 RHS phi3", "cor8_rhs", math.log(r2 + 1.0), measurements=pair, state="phi3"),
        value("compare psi1", "compare", gap, measurements=pair, state="psi1"),
        value("compare phi3", "compare", -gap, measurements=pair, state="phi3"),
        value("phi_bar(M)", "phi_bar", 2.0 / (r2 + 1.0), measurement="M"),
        {"type": "value", "label": "H_64(M|phi3) + ln phi_bar(M)", "quantity": "renyi_minus_cor9",
         "measurement": "M", "state": "phi3", "order": 64, "range": [0.0, 0.01]},
    ]
    for st in states:
        checks.append({"type": "pair", "measurements": pair, "state": st, "orders": list(PAIR_ORDERS)})
        for meas in pair:
            checks.append({"type": "single", "measurement": meas, "state": st,
                           "orders": list(SINGLE_ORDERS)})
        checks.append({"type": "free", "measurements": pair, "state": st,
                       "orders": [[2, "min"], ["shannon", "shannon"], [0.5, 10]]})
        checks.append({"type": "saturation", "measurements": pair, "state": st})
    checks.append({"type": "dilation", "measurement": "M", "companion": "N",
                   "states": ["psi1", "psi2", "phi3"], "min_norm_gap": 1e-3})
    return Scenario(2, states, {"M": m_povm, "N": n_pvm}, checks,
                    dict(DEFAULT_TOLERANCES), name="builtin:discrimination")


# ---------------------------------------------------------------- (de)serialisation


def scenario_to_dict(sc: Scenario) -> dict:
    states = {}
    for name, st in sc.states.items():
        if isinstance(st, PureState):
            states[name] = {"kind": "pure", "amplitudes": encode_vector(st.amplitudes)}
        else:
            states[name] = {"kind": "mixed", "matrix": encode_matrix(st.matrix)}
    meas = {
        name: {"kind": m.kind.value, "labels": list(m.labels),
               "elements": [encode_matrix(e) for e in m.elements]}
        for name, m in sc.measurements.items()
    }
    return {
        "format": SCENARIO_FORMAT,
        "name": sc.name,
        "dimension": sc.dimension,
        "states": states,
        "measurements": meas,
        "checks": sc.checks,
        "tolerances": sc.tolerances,
    }


def save_scenario(sc: Scenario, path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(sc), indent=2) + "\n", encoding="utf-8")


def _require(obj, key, where, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ScenarioFormatError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise ScenarioFormatError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return val


def _with_where(where, fn, *args):
    try:
        return fn(*args)
    except ValidationError as exc:
        raise exc.with_context(where) from None


def scenario_from_dict(data: dict, name: str = "scenario") -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioFormatError("top level: expected a JSON object")
    fmt = data.get("format", SCENARIO_FORMAT)
    if fmt != SCENARIO_FORMAT:
        raise ScenarioFormatError(f"format: unsupported scenario format {fmt!r}")
    dim = _require(data, "dimension", "top level", int)
    states = {}
    for sname, sd in _require(data, "states", "top level", dict).items():
        where = f"states.{sname}"
        kind = _require(sd, "kind", where, str)
        if kind == "pure":
            vec = decode_vector(_require(sd, "amplitudes", where), f"{where}.amplitudes")
            st = _with_where(where, pure_state, vec)
        elif kind == "mixed":
            mat = decode_matrix(_require(sd, "matrix", where), f"{where}.matrix")
            st = _with_where(where, density_matrix, mat)
        else:
            raise ScenarioFormatError(f"{where}.kind: expected 'pure' or 'mixed', got {kind!r}")
        if st.dim != dim:
            raise ScenarioFormatError(f"{where}: dimension {st.dim} differs from {dim}")
        states[sname] = st
    measurements = {}
    for mname, md in _require(data, "measurements", "top level", dict).items():
        where = f"measurements.{mname}"
        kind = md.get("kind", "POVM") if isinstance(md, dict) else None
        if kind not in ("POVM", "PVM"):
            raise ScenarioFormatError(f"{where}.kind: expected 'POVM' or 'PVM', got {kind!r}")
        raw = _require(md, "elements", where, list)
        elements = [decode_matrix(e, f"{where}.elements[{i}]") for i, e in enumerate(raw)]
        for i, e in enumerate(elements):
            if e.shape != (dim, dim):
                raise ScenarioFormatError(f"{where}.elements[{i}]: shape {e.shape}, expected {(dim, dim)}")
        measurements[mname] = _with_where(
            where, validate_measurement, elements, MeasurementKind(kind), md.get("labels")
        )
    checks = data.get("checks", [])
    if not isinstance(checks, list):
        raise ScenarioFormatError("checks: expected a list")
    for k, chk in enumerate(checks):
        _check_refs(chk, f"checks[{k}]", states, measurements)
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(data.get("tolerances", {}))
    return Scenario(dim, states, measurements, checks, tol, name=data.get("name", name))


def _check_refs(chk, where, states, measurements):
    ctype = _require(chk, "type", where, str)
    if ctype not in CHECK_FIELDS:
        raise ScenarioFormatError(f"{where}.type: unknown check type {ctype!r}")
    fields = list(CHECK_FIELDS[ctype])
    if ctype == "value":
        q = _require(chk, "quantity", where, str)
        if q not in QUANTITIES:
            raise ScenarioFormatError(f"{where}.quantity: unknown quantity {q!r}")
        needs, with_state = QUANTITIES[q]
        fields.append(needs)
        if with_state:
            fields.append("state")
        if "expected" not in chk and "range" not in chk:
            raise ScenarioFormatError(f"{where}: value checks need 'expected' or 'range'")
    for key in fields:
        val = _require(chk, key, where)
        if key in ("measurement", "companion"):
            names = [val]
        elif key == "measurements":
            if not (isinstance(val, list) and len(val) == 2):
                raise ScenarioFormatError(f"{where}.measurements: expected two names")
            names = val
        else:
            names = []
        for nm in names:
            if nm not in measurements:
                raise ScenarioFormatError(f"{where}.{key}: unknown measurement {nm!r}")
        if key in ("state", "states"):
            for nm in val if isinstance(val, list) else [val]:
                if nm not in states:
                    raise ScenarioFormatError(f"{where}.{key}: unknown state {nm!r}")
    try:
        for o in chk.get("orders", []):
            for x in o if isinstance(o, list) else [o]:
                parse_order(x)
        if "order" in chk:
            parse_order(chk["order"])
    except OrderError as exc:
        raise ScenarioFormatError(f"{where}.orders: {exc}") from None


def load_scenario(path) -> Scenario:
    """Read and fully validate a scenario file.

    Raises
    ------
    ScenarioFormatError
        Malformed JSON (message cites line and column) or a missing or
        mistyped field (message cites the field path).
    ValidationError
        A subclass naming the failed invariant (hermiticity, positivity,
        completeness, normalisation, ...), prefixed with the field path.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return scenario_from_dict(data, name=path.name)


# ---------------------------------------------------------------- evaluation


def _state_dict(st) -> dict:
    if isinstance(st, PureState):
        return {"kind": "pure", "amplitudes": encode_vector(st.amplitudes)}
    return {"kind": "mixed", "matrix": encode_matrix(st.matrix)}


def _meas_dict(m: Measurement) -> dict:
    return {"kind": m.kind.value, "elements": [encode_matrix(e) for e in m.elements]}


def _quantity(sc: Scenario, chk: dict) -> float:
    q = chk["quantity"]
    st = sc.states.get(chk.get("state"))
    if "measurements" in chk:
        m, n = (sc.measurements[x] for x in chk["measurements"])
    else:
        m = sc.measurements[chk["measurement"]]
    if q == "f_bar_squared":
        return bounds.f_bar(m, n) ** 2
    if q == "cor7_rhs":
        return -2.0 * math.log(bounds.f_bar(m, n))
    if q == "f":
        return bounds.f_mixed(m, n, st)
    if q == "thm5_rhs":
        return -2.0 * math.log(bounds.f_mixed(m, n, st))
    if q == "cor8_rhs":
        return -math.log(bounds.phi(m, st) * bounds.phi(n, st))
    if q == "compare":
        return bounds.compare_bounds(m, n, st)
    if q == "phi":
        return bounds.phi(m, st)
    if q == "phi_bar":
        return bounds.phi_bar(m)
    if q == "thm6_rhs":
        return -math.log(bounds.phi(m, st))
    if q == "renyi_minus_cor9":
        h = renyi_entropy(outcome_distribution(m, st), chk.get("order", "min"))
        return h + math.log(bounds.phi_bar(m))
    raise ScenarioFormatError(f"unknown quantity {q!r}")


def _bound_rows(rep: bounds.BoundReport, instance: str, tol: float, repro: dict) -> list[ReportRow]:
    orders = "/".join(order_label(o) for o in rep.orders)
    return [
        ReportRow(q.name, f"{instance} @ {orders}", q.lhs, q.rhs, tol, reproducer=repro)
        for q in rep.inequalities
    ]


def evaluate_check(sc: Scenario, chk: dict, tol: dict) -> list[ReportRow]:
    ctype = chk["type"]
    slack, vtol = tol["slack"], tol["value"]
    st_name = chk.get("state")
    st = sc.states.get(st_name)
    names = chk.get("measurements") or [chk.get("measurement")]
    repro = {
        "check": chk,
        "state": _state_dict(st) if st is not None else None,
        "measurements": {nm: _meas_dict(sc.measurements[nm]) for nm in names if nm},
    }
    if ctype == "value":
        val = _quantity(sc, chk)
        label = chk.get("label", chk["quantity"])
        inst = st_name or "-"
        if "range" in chk:
            lo, hi = chk["range"]
            return [ReportRow(label, inst, val, float(lo), float(hi), kind="range", reproducer=repro)]
        return [ReportRow(label, inst, val, float(chk["expected"]), float(chk.get("tolerance", vtol)),
                          kind="value", reproducer=repro)]
    if ctype == "projective":
        m = sc.measurements[chk["measurement"]]
        got = 1.0 if is_projective(m) else 0.0
        want = 1.0 if chk["expected"] else 0.0
        return [ReportRow(f"{chk['measurement']} projective", "-", got, want, 0.0,
                          kind="value", reproducer=repro)]
    if ctype == "pair":
        m, n = (sc.measurements[x] for x in chk["measurements"])
        rows = []
        for a in chk.get("orders", PAIR_ORDERS):
            rows += _bound_rows(bounds.check_pair_bound(m, n, st, a), st_name, slack, repro)
        return rows
    if ctype == "single":
        m = sc.measurements[chk["measurement"]]
        rows = []
        for a in chk.get("orders", SINGLE_ORDERS):
            rep = bounds.check_single_bound(m, st, a)
            rows += _bound_rows(rep, f"{chk['measurement']}|{st_name}", slack, repro)
        return rows
    if ctype == "free":
        m, n = (sc.measurements[x] for x in chk["measurements"])
        rows = []
        for a, b in chk.get("orders", [[2, 2]]):
            rows += _bound_rows(bounds.check_free_order_bound(m, n, st, a, b), st_name, slack, repro)
        return rows
    if ctype == "saturation":
        m, n = (sc.measurements[x] for x in chk["measurements"])
        v = bounds.check_rank_one_saturation(m, n, st)
        if not v.applicable:
            return [ReportRow(f"saturation (inapplicable: {v.reason})", st_name, 0.0, 0.0, 0.0,
                              kind="value", reproducer=repro)]
        return [ReportRow("f = f_bar", st_name, v.f, v.f_bar, slack, kind="value", reproducer=repro)]
    if ctype == "dilation":
        e = sc.measurements[chk["measurement"]]
        g = sc.measurements[chk["companion"]]
        states = [sc.states[x] for x in chk["states"]]
        report = naimark.verify_dilation(naimark.dilate(e), g, states)
        inst = chk["measurement"]
        rows = [
            ReportRow(f"dilation {k}", inst, v, 0.0, tol["identity"], kind="value", reproducer=repro)
            for k, v in report.residuals().items()
        ]
        if "min_norm_gap" in chk:
            rows.append(ReportRow("B18 norm gap", inst, report.max_norm_gap,
                                  float(chk["min_norm_gap"]), 0.0, reproducer=repro))
        return rows
    raise ScenarioFormatError(f"unknown check type {ctype!r}")


def run_scenario(sc: Scenario, slack_tolerance: float | None = None) -> RunReport:
    tol = dict(sc.tolerances)
    if slack_tolerance is not None:
        tol["slack"] = slack_tolerance
    report = RunReport(sc.name, meta={"scenario_format": SCENARIO_FORMAT, "tolerances": tol})
    for chk in sc.checks:
        report.rows.extend(evaluate_check(sc, chk, tol))
    return report
