"""
How bin size and viewing window move the scores
===============================================

Neither constant has a canonical value, so it is worth seeing how much the
binned and tolerance MAP depend on them for a fixed run.
"""

import numpy as np

from segeval import BinConfig, ToleranceConfig, align, evaluate
from segeval.metrics import Settings
from segeval.testkit import SyntheticSpec, generate

pool, runs = generate(SyntheticSpec(seed=1, queries=30, results_per_query=(10, 30),
                                    judgments_per_query=(5, 15)))
es = align(pool, runs)

bin_sizes = np.array([10, 30, 60, 120, 300])
windows = np.array([2, 5, 10, 30, 60])
table = np.zeros((len(bin_sizes), 3))
for i, (bs, w) in enumerate(zip(bin_sizes, windows)):
    s = evaluate(es, Settings(BinConfig(float(bs)), ToleranceConfig(float(w)))).summary.values
    table[i] = s["map"], s["map_bin"], s["map_tol"]

print(" bin  win     map  map_bin  map_tol")
for (bs, w), row in zip(zip(bin_sizes, windows), table):
    print(f"{bs:4d} {w:4d}  " + "  ".join(f"{v:.4f}" for v in row))

###############################################################################
# Plain overlap does not depend on either constant.
assert np.allclose(table[:, 0], table[0, 0])
