"""Scenario files, seeded campaigns, reports and the command-line interface."""

from .campaign import CampaignConfig, run_campaign
from .report import REPORT_FORMAT, ReportRow, RunReport, emit_report
from .scenario import (
    SCENARIO_FORMAT,
    Scenario,
    builtin_discrimination_scenario,
    load_scenario,
    run_scenario,
    save_scenario,
)
from .serialize import ScenarioFormatError

__all__ = [
    "CampaignConfig",
    "REPORT_FORMAT",
    "ReportRow",
    "RunReport",
    "SCENARIO_FORMAT",
    "Scenario",
    "ScenarioFormatError",
    "builtin_discrimination_scenario",
    "emit_report",
    "load_scenario",
    "run_campaign",
    "run_scenario",
    "save_scenario",
]
