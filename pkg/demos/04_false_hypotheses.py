"""What happens when a hypothesis is asserted but false.

The Fermat cubic over F_4 contains rational lines, so its Neron-Severi group is
not generated by the hyperplane class.  Asserting Picard number one anyway makes
the Picard-one bound exceed the true minimum distance.  The sweep reports this
as a warning, since the flag is an assertion rather than something checked.

Run:  python3 demos/04_false_hypotheses.py
"""

from surfcodes.experiment import ExperimentConfig, run_experiment

cfg = ExperimentConfig(fields=[4], degrees=[3], r_values=[1, 2], picard_one={"fermat-d3-q4": "asserted"})
for rec in run_experiment(cfg):
    print(f"{rec.surface_id} r={rec.r}: d = {rec.distance}")
    for key in ("P3Basic", "PicardOne"):
        print(f"   {key:10s} {rec.bound_value(key)}")
    print("   warnings:  ", rec.warnings or "none")
    print("   violations:", rec.violations or "none")

# a line on the surface: x0 + x1 = 0, x2 + x3 = 0 (each cube cancels in characteristic 2)
print("\nline x0=x1, x2=x3 lies on the surface, so Picard number one is false here")
