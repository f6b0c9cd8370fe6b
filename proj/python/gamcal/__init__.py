"""Geometric algebra, geometric calculus, and constraint dynamics."""

import json as _json

from ._gamcal import *  # noqa: F401,F403
from ._gamcal import __version__, run_scenario, verify_data  # noqa: F401


def run_scenario_summary(config_path, out_dir):
    """Run a scenario from a config file; returns the summary as a dict."""
    return _json.loads(run_scenario(str(config_path), str(out_dir)))


def verify_report(config_path, data_path):
    """Re-check a stored artifact against its config; returns the report dict."""
    return _json.loads(verify_data(str(config_path), str(data_path)))
