"""Instance files, result documents and replay through the command line."""

import os
import subprocess
import sys
import tempfile
from pathlib import Path

from oscopt import io as fio
from oscopt.graph import petersen_graph

work = Path(tempfile.mkdtemp())
inst = work / "petersen.txt"
inst.write_text(fio.format_edge_list(petersen_graph()))
print(inst.read_text().splitlines()[:3], "...")

env = dict(os.environ, SOURCE_DATE_EPOCH="0")


def cli(*args):
    res = subprocess.run([sys.executable, "-m", "oscopt", *map(str, args)], capture_output=True, text=True, env=env)
    print(f"$ oscopt {' '.join(map(str, args))}\n{res.stdout}{res.stderr}(exit {res.returncode})")
    return res


cli("solve", "maxkcut", inst, "--k", "3", "--restarts", "5", "--out", work / "r.json", "--trace", work / "t.csv")
rec = fio.read_result(work / "r.json")
print(f"result: cut {rec.best_score:g}, seeds {rec.params['seeds']}, {len(rec.trials)} trials recorded")
print(f"trace header: {(work / 't.csv').read_text().splitlines()[0][:60]}...")

cli("solve", "maxkcut", inst, "--k", "3", "--restarts", "5", "--out", work / "again.json")
same = (work / "r.json").read_bytes() == (work / "again.json").read_bytes()
print(f"rerun byte-identical: {same}")

cli("compare", "coloring", inst, "--restarts", "5")
cli("solve", "maxkcut", inst, "--k", "1")
