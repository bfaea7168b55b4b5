"""
Checking majoritarity and monotonicity across settings
======================================================

Each cell either shows a concrete counterexample or reports how many
random trials found none.
"""

from metricvote import run_table1_suite

report = run_table1_suite(seed=0, trials=50)
print(report.format())
print("all reproduced:", report.all_reproduced)
