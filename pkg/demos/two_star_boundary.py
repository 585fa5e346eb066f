"""
Maximum cocliques of J(n, k, {1}) at the lower end
==================================================

Every maximum coclique is found and labelled: a 2-star, the sets meeting a
fixed 4-set in at least 3 points, or neither.
"""

from jlab.search import classify_max_cocliques

for n, k in [(6, 3), (7, 3), (9, 4), (10, 4)]:
    cls = classify_max_cocliques(n, k)
    print(f"J({n},{k},{{1}}): alpha={cls.alpha} {cls.counts()}")

# n = 7 sits outside the range and has other shapes too
cls = classify_max_cocliques(7, 3)
for v, w in zip(cls.verdicts, cls.witnesses):
    if v.kind == "Other":
        print("other:", w.sets)
        break
