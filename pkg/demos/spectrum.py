"""
The four eigenvalues of J(n, 3, {1})
====================================

Exact eigenvalues from the Johnson scheme against a dense floating point
eigendecomposition of the adjacency matrix.
"""

import numpy as np

from jlab.graph import JohnsonSpec, adjacency_matrix
from jlab.spectra import SchemeMatrix, dense_spectrum, eigen_table, scheme_eigenvalues, spectrum_j_n3_1

for n in (7, 9, 12):
    exact = spectrum_j_n3_1(n)
    dense = dense_spectrum(adjacency_matrix(JohnsonSpec(n, 3, (1,))))
    print(n, [(str(v), m) for v, m in exact])
    print("  dense:", [(round(v, 6), m) for v, m in dense])

# the whole eigen table of J(8,3): row j holds the eigenvalues of A_0..A_3
tab = eigen_table(8, 3)
print(np.array([[str(x) for x in row] for row in tab.P]), tab.m)

# any combination of class matrices is diagonal in the same basis
M = SchemeMatrix(8, 3, (2, -1, 0, 1))
print([(str(v), m) for v, m in scheme_eigenvalues(M)])
