"""
Learning binary addition from half the examples
===============================================

Train on a random half of the 2-bit adder's input/output pairs, then ask
each agent to answer the inputs it never saw.  The mimic has no response
for them; the intentional agent sometimes does.
"""

import statistics
import sys

from intensional import eval_generalisation, gen_addition_task, sample_efficiency_curve, write_csv
from intensional.harness import summarize

t = gen_addition_task(2)
records = eval_generalisation(t, 0.5, range(20), agents=("intentional", "mimic"), name="add:2")

for agent in ("intentional", "mimic"):
    scores = [r.acc_heldout for r in records if r.agent == agent]
    print(f"{agent:12s} held-out mean {statistics.fmean(scores):.4f}, nonzero on {sum(s > 0 for s in scores)}/20 seeds")

# How the held-out accuracy moves with the size of the training set.
curve = sample_efficiency_curve(t, [0.25, 0.5, 0.75], range(20), agents=("intentional",), name="add:2")
for (fraction, agent), (mean, se) in summarize(curve).items():
    print(f"fraction {fraction:.2f}: {mean:.4f} +/- {se:.4f}")

# The same records as CSV, byte-stable across runs.
write_csv(records[:6], sys.stdout)
