"""
Command line
============

The same experiments through ``summlab``; output goes to CSV or JSON.
"""

import tempfile
from pathlib import Path

from summlab.cli_io import main, read_report

out = Path(tempfile.mkdtemp())

############################################################
# A theorem run written as CSV

main(["theorem", "--id", "T10", "--matrix", "cesaro", "--alpha", "0.5",
      "--n", "16..256x2", "--format", "csv", "--output", str(out / "t10.csv")])
print((out / "t10.csv").read_text())

############################################################
# Condition reports as JSON, read back into objects

main(["check-matrix", "--matrix", "riesz:geometric:1.5", "--beta", "1", "--n", "512",
      "--output", str(out / "check.json")])
for rep in read_report(out / "check.json"):
    print(rep.condition_id.value, rep.overall_constant, rep.holds_uniformly)

############################################################
# A bad option is a one-line diagnostic and exit code 2

print("exit code", main(["check-matrix", "--beta", "-1"]))
