"""
Scanning alpha * omega = C(n, 3)
================================

For each L the product is compared with C(n, 3).  Equality with L neither
{0..t-1} nor its complement is flagged as a small-n exception.
"""

from jlab.cli import csv_bytes
from jlab.search import SCAN_COLUMNS, scan_equality

rep = scan_equality(3, range(6, 11))
print(csv_bytes(SCAN_COLUMNS, rep.table()).decode())
