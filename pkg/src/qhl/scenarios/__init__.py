"""Executable scenarios: the spin-boxes and GHZ demos, and the JSON scenario runner."""

from .demos import demo_ghz, demo_spin_boxes, n_copy_overlap
from .report import ItemResult, Report, render
from .runner import Scenario, ScenarioError, fixture_path, load_scenario, run_scenario

__all__ = [
    "ItemResult",
    "Report",
    "Scenario",
    "ScenarioError",
    "demo_ghz",
    "demo_spin_boxes",
    "fixture_path",
    "load_scenario",
    "n_copy_overlap",
    "render",
    "run_scenario",
]
