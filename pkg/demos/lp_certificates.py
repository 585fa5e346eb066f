"""
Ratio certificates for cocliques of J(n, k, {1})
================================================

The LP searches the scheme algebra for a matrix with entries >= 1 on
non-edge classes; its largest eigenvalue bounds alpha.  All arithmetic is
exact.
"""

from math import comb

from jlab.graph import JohnsonSpec
from jlab.lp import ratio_lp_bound, strictness_refinement, verify_ratio_certificate
from jlab.search import SearchOptions, max_coclique

for n, k in [(6, 3), (7, 3), (9, 4), (11, 4), (13, 4), (15, 4)]:
    cert = ratio_lp_bound(JohnsonSpec(n, k, (1,)))
    print(f"n={n} k={k}: bound {cert.bound}  C(n-2,k-2)={comb(n - 2, k - 2)}  "
          f"coeffs={[str(x) for x in cert.coeffs.coeffs]}  verified={verify_ratio_certificate(cert)}")

# at n = 3k - 3 the bound is attained; pushing x_0 above 1 keeps the same
# bound, so no maximum coclique holds a disjoint pair
spec = JohnsonSpec(6, 3, (1,))
cert = ratio_lp_bound(spec)
res = max_coclique(spec, SearchOptions(all_witnesses=True))
v = strictness_refinement(cert, res.witnesses)
print(v.status, "over", len(res.witnesses), "maximum cocliques")
