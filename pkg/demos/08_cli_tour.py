"""
Driving everything from the command line
========================================

Every sweep in the library is exposed as a CLI subcommand that writes
deterministic CSV (or JSON) with the resolved configuration echoed in
the header. This script shells out to the CLI the same way a batch job
would.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

def cli(*args: str) -> str:
    proc = subprocess.run(
        [sys.executable, "-m", "spinbattery.cli", *args],
        capture_output=True, text=True, check=True,
    )
    return proc.stdout

# A small power sweep straight to stdout.
out = cli("power-sweep", "--n-sites", "3", "--sweep-parameter", "j",
          "--sweep-start", "-1", "--sweep-stop", "1", "--sweep-step", "0.5",
          "--grid-points", "200")
print(out)

# The same run from a config file; flags override file values.
with tempfile.TemporaryDirectory() as tmp:
    config = Path(tmp) / "sweep.cfg"
    config.write_text(
        "model.n_sites = 3\n"
        "sweep.parameter = j\n"
        "sweep.start = -1\n"
        "sweep.stop = 1\n"
        "sweep.step = 0.5\n"
        "optimizer.grid_points = 200\n"
    )
    from_file = cli("power-sweep", "--config", str(config))
    print("config file reproduces the flag run:", from_file == out)

    # JSON output for downstream tooling.
    json_out = cli("order-params", "--n-sites", "4", "--bias", "uniform",
                   "--sweep-parameter", "j", "--sweep-start", "0",
                   "--sweep-stop", "2", "--sweep-step", "1",
                   "--format", "json")
    print("\norder-params as JSON:")
    print(json_out)
