"""
Multiparameter Hall-Littlewood functions
========================================

Setting q = 0 in the J basis gives Q_I; dividing by a product of
(1 - t_i) gives P_I.  Products of Q functions have a closed formula.
"""
from ncsf import macdonald as mac
from ncsf.bases import expand_in
from ncsf.compositions import order_index

# J_31 over the Rcal basis
for I, c in sorted(expand_in(mac.j_basis("31"), "Rcal").items(), key=lambda kv: order_index(kv[0])):
    print(I, c)

# %%
# Grassmann factor lists: Q'_I is a product of linear factors.
print(mac.qprime("4121"))
print(mac.dual_g("3122"))

# %%
# Products, closed form against brute force.
closed = mac.product_q_closed("211", "21")
print(mac.format_q_expansion(closed))
print(closed == mac.product_q_brute("211", "21"))

# %%
# S -> Q transition from the pairing with the dual functionals.
print(mac.s_to_q_matrix(3).to_text())

# %%
# Limits along t_i = tau^(b_i): tau -> 0 gives ribbons back when b = (1, 2, 3, ...).
b = (1, 2, 3, 4)
print(mac.ribbon_b("211", b).format())
print(mac.psi_b("4", b).format())
