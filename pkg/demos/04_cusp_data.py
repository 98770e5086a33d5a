# %% [markdown]
# # Generating and certifying cusp data
#
# Breadth-first search over upward-closed sets M0, deduplicated on M0.
# In paper mode a branch is cut when condition 2 holds, and every survivor
# gets an f-function or a condition 1/3 certificate.

# %%
import json
import logging
import time

from vinbergcusp.cuspgen import generate_cusp_data, report_from_json, report_to_json, verify_report
from vinbergcusp.grading import compute_grading

logging.basicConfig(level=logging.WARNING)

g = compute_grading("E7")
t = time.monotonic()
report = generate_cusp_data(g, mode="paper")
print(f"E7: {report.count} survivors, {report.pruned_count} pruned, {time.monotonic() - t:.1f}s")

kinds = {}
for _, cert in report.data:
    kinds[cert.kind.value] = kinds.get(cert.kind.value, 0) + 1
print(kinds)

# %% [markdown]
# Reports round-trip through JSON and replay from scratch.

# %%
doc = json.loads(json.dumps(report_to_json(g, report)))
back = report_from_json(g, doc)
print("replay:", verify_report(g, back))

# %% [markdown]
# E8 works the same way; it takes about a minute single-threaded.
# Uncomment to run.

# %%
# g8 = compute_grading("E8")
# r8 = generate_cusp_data(g8)
# print(r8.count, verify_report(g8, r8))
