"""
Sample L2 error of the adaptive search for lambda in {1, 4, 8}.

A reduced-size rerun of the error-curve experiment: R = 200 replications
per lambda, errors recorded on a doubling n grid.  Two things to observe
in the table: the lambda = 1 decay keeps steepening with n, far below the
n^(-1/2) of any nonadaptive rule, and at a fixed n the error grows with
lambda (a larger offset makes the search more global, spending
evaluations away from the running minimum).
"""
from brownmin import ExperimentPlan, fit_rate, run_experiment

N_GRID = (16, 32, 64, 128, 256)
plan = ExperimentPlan(lambdas=(1.0, 4.0, 8.0), n_grid=N_GRID, p=2.0,
                      replications=200, master_seed=314)
rows = run_experiment(plan)

print("=== Sample L2 error, 200 replications ===")
print("lambda " + "".join(f"  n={n:<10d}" for n in N_GRID) + "  fitted slope")
by_lam = {}
for row in rows:
    by_lam.setdefault(row.lam, []).append(row)
for lam, cells in by_lam.items():
    slope = fit_rate([(c.n, c.lp_error) for c in cells])
    line = f"  {lam:4.0f} " + "".join(f"  {c.lp_error:11.4e}" for c in cells)
    print(line + f"  {slope:7.2f}")

print()
print("The suggested offset parameter for a target L_p rate is much larger")
print("than the values that already work well numerically:")
from brownmin import lambda_suggestion

for r, p in [(1.0, 1.0), (1.0, 2.0), (2.0, 2.0)]:
    print(f"  rate r={r:.0f} in L_{p:.0f}: lambda >= {lambda_suggestion(r, p):.0f}")
