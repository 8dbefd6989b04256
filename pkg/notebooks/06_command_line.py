"""
The ``osl`` command line
========================

The same entry points are available from a shell as ``osl generate``,
``osl cluster``, ``osl risk``, ``osl bench`` and ``osl bound``. Here they
are driven through ``osl.cli.main`` inside a scratch directory.
"""
import json
import tempfile
from pathlib import Path

from osl.cli import main

work = Path(tempfile.mkdtemp())
data = work / "squares.csv"
main(["generate", "--model", "squares", "--n", "300", "--eps", "0.2", "--seed", "1",
      "--out", str(data)])
print(data.read_text().splitlines()[:3])

###############################################################################
# Cluster the generated file, ignoring its label column.

out = work / "labels.csv"
main(["cluster", str(data), "--m", "3", "--labeled", "--out", str(out)])
print(out.read_text().splitlines()[:4])

###############################################################################
# A small risk campaign from a JSON config. Timings go to ``risk.csv.log``.

cfg = work / "cfg.json"
cfg.write_text(json.dumps({"scenario": "squares", "algorithms": ["osl", "sl"], "n": [200],
                           "epsilon": [0.0, 0.2], "delta_case": "easy", "B": 50, "seed": 0}))
main(["risk", "--config", str(cfg), "--out", str(work / "risk.csv")])
print((work / "risk.csv").read_text())

###############################################################################
# ARI bench on the labeled file.

main(["bench", str(data), "--m", "3", "--B", "20", "--algo", "osl", "sl",
      "--out", str(work / "bench.csv")])
print((work / "bench.csv").read_text())
