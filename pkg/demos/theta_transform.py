"""
The multiparameter (1 - t)-transform
====================================

Ribbons R_I and complete functions S^I span the degree-n part of the
algebra.  The transform theta sends each S_n to a deformed element, and
the images of ribbons form a new basis Rcal_I(t).
"""
from ncsf import NcsfElement, compositions_ordered
from ncsf import theta as th
from ncsf.matrices import invert

# ribbons multiply with exactly two terms: concatenation and join
R = NcsfElement.ribbon
print(R("21") * R("1"))

# %%
# The image of a ribbon, written over the complete basis.
print(th.rcal("21").format("S"))

# %%
# Column J of this matrix expands Rcal_J over S.  Its inverse has
# products of (1 - t_i) in the denominators.
M = th.rcal_matrix(3)
print(M.to_text())
print(invert(M).to_text())

# %%
# Sums of Rcal over coarser compositions give a multiplicative basis.
lhs = th.scal("2") * th.scal("11")
print("Scal^2 Scal^11 == Scal^211:", lhs == th.scal("211"))

# %%
# theta^-1 of S_n is the Klyachko element.
print(th.klyachko(3).format())

# %%
# At t_i = tau^i everything collapses to the classical transform.
for I in compositions_ordered(3):
    assert th.classical_transform_check(I) == th.classical_rcal(I)
print(th.classical_rcal("3").format("S"))
