"""
Command line and oracle suite
=============================

Drive the package through its command-line entry point and run the
self-checks.
"""

import json
import tempfile
from pathlib import Path

from optosqueeze.cli import run_command
from optosqueeze.oracle import run_all

for rep in run_all(seed=7):
    print(rep.summary())

####################################################################
# A config is a flat JSON document; every rate is in units of omega_m.

config = {
    "kappa1_per_wm": 0.6, "kappa2_per_wm": 0.6, "gamma_m_per_wm": 1e-5, "J_per_wm": 1.0,
    "g_per_wm": 8.5e-5, "E_per_wm": 3.7e5, "delta2_per_wm": 0.52, "delta_per_wm": 0.2975,
    "r": 1.0, "omega_m_hz": 23.4e6,
}
work = Path(tempfile.mkdtemp())
(work / "point.json").write_text(json.dumps(config))
status = run_command(["steady", "--config", str(work / "point.json"), "--out", str(work / "report.json")])
print("exit status", status)

####################################################################
# A one-dimensional sweep written as CSV.

run_command(["sweep", "--config", str(work / "point.json"), "--axis", "J=0.2:2.5:6",
             "--out", str(work / "grid.csv")])
print((work / "grid.csv").read_text())
