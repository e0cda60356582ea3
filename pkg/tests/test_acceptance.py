"""Acceptance criteria, one test each; every test prints a single verdict line."""

import math

import numpy as np
import pytest

import oracles
from entrobound import (
    check_free_order_bound,
    check_pair_bound,
    check_single_bound,
    compare_bounds,
    f_bar,
    min_entropy,
    phi,
    phi_bar,
    power_sum,
    quasi_norm,
    renyi_entropy,
    riesz_check,
    shannon_entropy,
)
from entrobound.harness import CampaignConfig, builtin_discrimination_scenario, emit_report, run_campaign
from entrobound.harness.scenario import run_scenario
from entrobound.naimark import dilate, verify_dilation

R2 = math.sqrt(2)
SEED = 20240611


@pytest.fixture
def verdict(capsys, request):
    def say(ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {request.node.name}: {detail}")
        assert ok, detail

    return say


def _worst(rows):
    return min((r.slack for r in rows if r.kind == "inequality"), default=math.inf)


def test_criterion_1_exact_constants(verdict, disc_m, disc_n, psi1, phi3):
    checks = {
        "f_bar^2": (f_bar(disc_m, disc_n) ** 2, 0.5),
        "phi(M|psi1)": (phi(disc_m, psi1), 2 ** -0.5),
        "phi(N|psi1)": (phi(disc_n, psi1), 2 ** -1.5 * (R2 + 1)),
        "Cor8 RHS psi1": (check_free_order_bound(disc_m, disc_n, psi1, 3, 0.2)["Cor8"].rhs,
                          math.log(4) - math.log(R2 + 1)),
        "phi(M|phi3)": (phi(disc_m, phi3), 2 / (R2 + 1)),
        "phi(N|phi3)": (phi(disc_n, phi3), 0.5),
        "Cor8 RHS phi3": (check_free_order_bound(disc_m, disc_n, phi3, "min", 1)["Cor8"].rhs,
                          math.log(R2 + 1)),
        "gap psi1": (compare_bounds(disc_m, disc_n, psi1), math.log(R2 + 1) - math.log(2)),
        "gap phi3": (compare_bounds(disc_m, disc_n, phi3), math.log(2) - math.log(R2 + 1)),
        "Cor7 RHS": (check_pair_bound(disc_m, disc_n, psi1, 2)["Cor7"].rhs, 0.6931471805599453),
    }
    errs = {k: abs(a - b) for k, (a, b) in checks.items()}
    worst = max(errs, key=errs.get)
    report = run_scenario(builtin_discrimination_scenario())
    ok = errs[worst] <= 1e-10 and report.passed and round(abs(checks["gap psi1"][0]), 3) == 0.188
    verdict(ok, f"{len(checks)} constants, worst {worst} err {errs[worst]:.1e}; "
                f"builtin suite {len(report.rows) - len(report.failures)}/{len(report.rows)}")


def test_criterion_2_inequality_certificates(verdict):
    common = dict(seed=SEED, trials=1000, dims=(2, 4), outcomes=(2, 4))
    pair = run_campaign(CampaignConfig(checks=("thm5",), **common)).rows
    single = run_campaign(CampaignConfig(checks=("thm6",), **common)).rows
    free = run_campaign(CampaignConfig(checks=("cor8",), **common)).rows
    names = {r.check for r in pair + single + free}
    chains = [r for r in pair + single + free if r.check in ("f<=f_bar", "phi<=phi_bar")]
    fails = sum(not r.passed for r in pair + single + free)
    ok = fails == 0 and {"Thm5", "Cor7", "Thm6", "Cor9", "Cor8", "f<=f_bar", "phi<=phi_bar"} <= names
    verdict(ok, f"{len(pair)} pair, {len(single)} single, {len(free)} free-order rows "
                f"({len(chains)} chain rows); violations {fails}; "
                f"min slack {_worst(pair + single + free):+.2e}")


def test_criterion_3_rank_one_saturation(verdict):
    rows = run_campaign(CampaignConfig(seed=SEED, trials=200, ensemble="rank-one-POVM",
                                       checks=("saturation",))).rows
    gaps = [abs(r.lhs - r.rhs) for r in rows if r.check == "f = f_bar"]
    ok = len(gaps) == 200 and max(gaps) <= 1e-9
    verdict(ok, f"{len(gaps)} saturated trials, max |f - f_bar| {max(gaps):.1e}")


def test_criterion_4_riesz(verdict):
    rows = run_campaign(CampaignConfig(seed=SEED, trials=500, checks=("riesz",))).rows
    eq = riesz_check([[1 / R2, 1 / R2]], [1, 1], 4 / 3)
    gap = abs(eq.lhs - eq.rhs)
    ok = len(rows) == 500 and all(r.passed for r in rows) and gap <= 1e-12
    verdict(ok, f"{sum(r.passed for r in rows)}/500 contractions, min slack {_worst(rows):+.2e}; "
                f"equality instance gap {gap:.1e}")


def test_criterion_5_naimark(verdict, disc_m, disc_n, psi1, psi2, phi3):
    rows = run_campaign(CampaignConfig(seed=SEED, trials=100, dims=(2, 4), outcomes=(2, 6),
                                       checks=("naimark",))).rows
    worst = max(rows, key=lambda r: r.lhs)
    rep = verify_dilation(dilate(disc_m), disc_n, [psi1, psi2, phi3])
    gap = rep.max_norm_gap
    ok = all(r.passed for r in rows) and worst.lhs <= 1e-9 and rep.passed and gap > 1e-3
    verdict(ok, f"{len({r.instance for r in rows})} dilations, worst residual {worst.lhs:.1e} "
                f"({worst.check}); discrimination POVM norm gap {gap:.4f}")


def test_criterion_6_min_entropy_approach(verdict, disc_m, phi3):
    rep = check_single_bound(disc_m, phi3, 64)
    diff = rep["Cor9"].lhs - rep["Cor9"].rhs
    assert rep["Cor9"].rhs == pytest.approx(-math.log(phi_bar(disc_m)), abs=1e-12)
    verdict(0 <= diff <= 0.01, f"H_64(M|phi3) + ln phi_bar(M) = {diff:.6f}")


def test_criterion_7_entropy_properties(verdict):
    rng = np.random.default_rng(SEED)
    failures = {"monotone": 0, "limits": 0, "identity": 0}
    for _ in range(200):
        n = int(rng.integers(1, 9))
        w = rng.random(n) * (rng.random(n) > 0.2)
        w[rng.integers(n)] += 1e-3
        p = w / w.sum()
        a, b = np.sort(np.where(rng.random(2) < 0.5, rng.uniform(0.05, 0.999, 2), rng.uniform(1.001, 50, 2)))
        failures["monotone"] += bool(renyi_entropy(p, a) < renyi_entropy(p, b) - 1e-10)
        h1 = shannon_entropy(p)
        failures["limits"] += not (abs(renyi_entropy(p, 1 + 1e-6) - h1) <= 1e-4
                                   and abs(renyi_entropy(p, 1 - 1e-6) - h1) <= 1e-4
                                   and abs(renyi_entropy(p, 1e6) - min_entropy(p)) <= 1e-4)
        norm = power_sum(p, a) if a >= 1 else quasi_norm(p, a)
        failures["identity"] += bool(abs(math.log(norm) - (1 - a) / a * renyi_entropy(p, a)) > 1e-10)
        failures["identity"] += bool(abs(renyi_entropy(p, a) - max(oracles.renyi(p, a), 0.0)) > 1e-10)
    verdict(not any(failures.values()), f"200 cases per property, failures {failures}")


def test_criterion_8_determinism(verdict):
    cfg = CampaignConfig(seed=42, trials=20, checks=("thm5", "thm6", "cor8", "riesz", "naimark"))
    first, second = (emit_report(run_campaign(cfg), "json") for _ in range(2))
    builtin = [emit_report(run_scenario(builtin_discrimination_scenario()), "json") for _ in range(2)]
    ok = first == second and builtin[0] == builtin[1]
    verdict(ok, f"campaign report {len(first)} bytes identical, builtin report identical: {builtin[0] == builtin[1]}")
