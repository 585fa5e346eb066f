"""
Edges forced inside large vertex sets of J(n, 3, {1})
=====================================================

The spectral bound 2 e(U) >= lambda_0 u^2/N + lambda_2 (u - u^2/N) against
random and greedy subsets, then the n^3 growth rate for |U| = c n^2.
"""

from fractions import Fraction

from jlab.supersat import asymptotic_coefficient, sample_experiment, size_for, spectral_edge_lower_bound

for sampler in ("uniform", "greedy-dense"):
    res = sample_experiment(16, Fraction(1, 2), trials=20, seed=7, sampler=sampler)
    s = res.summary()
    print(sampler, s["size"], "all hold:", s["all_hold"], "min e/bound:", float(s["min_ratio"]))

c = Fraction(1, 2)
print("coefficient", asymptotic_coefficient(c).value)
for n in (50, 100, 200, 400):
    b = spectral_edge_lower_bound(n, size_for(n, c))
    print(n, float(b / n**3))
