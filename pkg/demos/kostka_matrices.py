"""
The matrices A_n
================

A_n has monomial entries in two sequences q and t.  It satisfies a
block recursion and its determinant factors completely.
"""
from ncsf import kostka

A3 = kostka.matrix_A(3)
print(A3.to_text())

# blocks: B_{n-1}, A_{n-1} T_{n-1}, q_1 B_{n-1}, A_{n-1}
for n in range(2, 6):
    print(n, kostka.recursion_holds(n))

# %%
# Division-free determinant against the product formula.
print(kostka.det_A(3))
for f, e in kostka.det_A_factors(4):
    print(f"({f})^{e}")
print(kostka.det_A(4) == kostka.det_A_closed(4))
