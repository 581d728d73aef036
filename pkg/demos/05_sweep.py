"""The full corpus sweep as a markdown table (a subset of columns).

Run:  python3 demos/05_sweep.py
"""

from surfcodes.experiment import ExperimentConfig, run_experiment, sound

recs = run_experiment(ExperimentConfig(random_surfaces=1))
print("| surface | r | n | k | d | P3Basic | DimensionLB | method |")
print("|---|---|---|---|---|---|---|---|")
for r in recs:
    print(f"| {r.surface_id} | {r.r} | {r.n} | {r.k} | {r.distance} | {r.bound_value('P3Basic')} "
          f"| {r.bound_value('DimensionLB')} | {r.distance_method or r.status} |")
print("\nall machine-checked bounds sound:", sound(recs))
