"""
Evaluating a run file
=====================

Write a synthetic qrel/run pair to disk, evaluate it in-process, and print
the same report the ``seg-eval`` command produces.
"""

import tempfile

from segeval import align, build_rows, evaluate, read_qrel, read_run, render
from segeval.metrics import Settings
from segeval.testkit import SyntheticSpec, generate, write_instance

workdir = tempfile.mkdtemp()
qrel_path, run_path = write_instance(*generate(SyntheticSpec(seed=7, queries=5)), workdir)
print(open(run_path).read().splitlines()[0])

es = align(read_qrel(qrel_path), read_run(run_path))
evaluation = evaluate(es, Settings())
print(render(build_rows(evaluation)), end="")

###############################################################################
# Per-query values are kept on the evaluation object as well.
for qs in evaluation.per_query:
    print(qs.query, f"map={qs.values['map']:.4f}", f"map_tol={qs.values['map_tol']:.4f}")

###############################################################################
# The same thing from a shell:
#
#   seg-eval qrel.txt run.txt --bin-size 300 --tolerance 30 -q
print(f"\nseg-eval {qrel_path} {run_path}")
