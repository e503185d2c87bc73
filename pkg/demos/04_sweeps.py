"""
Parameter planes and line cuts
==============================

Run a coarse version of the delta2 x E plane, refine its maxima and follow
the region labels along a delta2 cut.
"""

from optosqueeze import figure_recipe, find_extremum, run_sweep

recipe = figure_recipe("fig4a", grid=41)
spec = recipe.panels["fig4a"]
coarse = run_sweep(spec)
print(f"{len(coarse)} points, unstable={coarse.metadata['unstable']}")

####################################################################
# Refinement shrinks the local grid fourfold per round and never loses the
# incumbent.

for key, target in recipe.targets.items():
    ext = find_extremum(spec, key, coarse=coarse)
    print(f"{key}: {ext.value:.4f} at {ext.point} (reference {target}); history {[round(h, 4) for h in ext.history]}")

####################################################################
# Along delta2 the labels pass from no entanglement through one-way to
# two-way steering and back.

cut = run_sweep(figure_recipe("fig5b", grid=50).panels["fig5b"])
previous = None
for rec in cut.records:
    label = str(rec.region) + (f"({rec.report.direction_label})" if rec.report.direction_label else "")
    if label != previous:
        print(f"delta2={rec.coords[0]:.3f}: {label}")
        previous = label

####################################################################
# Between the two optical modes only one-way steering shows up.

optical = run_sweep(figure_recipe("fig6a", grid=31).panels["fig6a"])
counts = {}
for rec in optical.records:
    key = rec.region + (f"({rec.report.direction_label})" if rec.report.direction_label else "")
    counts[key] = counts.get(key, 0) + 1
print(dict(sorted(counts.items())))
