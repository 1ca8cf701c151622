"""Run the genus-2 identity suite on three real curves and print a summary."""

from kptau.curve import HyperellipticCurve
from kptau.identities import genus2_suite
from kptau.periods import hyperelliptic_periods

CURVES = {
    "symmetric": [-2, -1, 0, 1, 2],
    "skewed": [-3, -1, 0.5, 2, 3.5],
    "spread": [-1, 0, 0.3, 2, 5],
}

for name, bp in CURVES.items():
    curve = HyperellipticCurve.from_branch_points(bp)
    pd = hyperelliptic_periods(curve)
    print(f"== {name}: alpha = {[round(float(a), 4) for a in curve.alpha]}")
    for r in genus2_suite(curve, pd, samples=10, seed=0):
        extra = ""
        if "fit" in r.details:
            fit = {k: round(complex(*c).real, 6) for k, c in r.details["fit"].items()}
            extra = f"  residual fit {fit}"
        if r.details.get("failing_entries"):
            extra = f"  failing {r.details['failing_entries']}"
        print(f"  {r.name:26s} {r.status:5s} {r.residual:.2e}{extra}")
