"""
Packed words and the D matrices
===============================

A packed word over 1..m uses every letter.  Two descent-type sets and
one inversion statistic give the D matrices, which can also be read off
flagged ribbon fillings.
"""
from ncsf import words

ws = words.packed_words(3)
print(len(ws), [str(w) for w in ws])
for w in ws[:5]:
    print(w, words.wc_dc(w), words.sinv(w))

# %%
C, D = words.c_d_matrices(3)
print(D.to_text())

# %%
# Alphabet flags; "." marks a flagged ribbon that vanishes.
for row in words.flag_table(3):
    print(" ".join(c or "." for c in row))

# %%
# The R-to-P matrix at t_i = tau^i equals tau^maj(I) D(1/tau).
report = words.kostka_bridge(4)
print(report["variant"], report["agrees"])
