"""
Clique times coclique in J(n, k, L)
===================================

J(n, k, L) is vertex-transitive, so alpha * omega <= C(n, k).  Two small
graphs where the product is exactly C(n, k).
"""

from math import comb

from jlab.families import affine_plane_3, projective_plane, steiner_verify
from jlab.graph import JohnsonSpec, is_clique
from jlab.search import max_clique, max_coclique

# lines of the Fano plane pairwise meet in one point: a clique of J(7,3,{1})
spec = JohnsonSpec(7, 3, (1,))
fano = projective_plane(2)
print(fano.to_text())
print("Fano plane is a clique:", is_clique(fano, spec))

om, al = max_clique(spec), max_coclique(spec)
print(f"omega={om.optimum} alpha={al.optimum} product={om.optimum * al.optimum} C(7,3)={comb(7, 3)}")
print("a maximum coclique:", al.witnesses[0].sets)

# the affine plane of order 3 is a Steiner triple system on 9 points;
# its blocks meet in 0 or 1 points, so it is a clique of J(9,3,{0,1})
spec = JohnsonSpec(9, 3, (0, 1))
sts = affine_plane_3()
print("S(2,3,9):", steiner_verify(sts, 2), "clique:", is_clique(sts, spec))
om, al = max_clique(spec), max_coclique(spec)
print(f"omega={om.optimum} alpha={al.optimum} product={om.optimum * al.optimum} C(9,3)={comb(9, 3)}")
