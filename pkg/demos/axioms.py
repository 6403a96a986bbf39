"""Check the Hom-Leibniz axioms, then break one structure constant and watch it fail."""

from _show import show
from homleib import QQ, HomAlgebra, check_hom_leibniz, check_multiplicative, corpus, yau_twist

sl2 = corpus.get("SL2")
print("sl2 with alpha = id:", bool(check_hom_leibniz(sl2)), bool(check_multiplicative(sl2)))

c = sl2.c.copy()
c[0, 1, 1] += QQ(1)
broken = HomAlgebra(c, sl2.alpha)
v = check_hom_leibniz(broken)
print("after bumping c[0,1,1]:", bool(v), "witness basis triple", v.witness)

# twisting by an automorphism keeps everything valid
phi = corpus.get("PHI_SL2")
tw = yau_twist(sl2, phi.m)
print("twisted alpha:")
show(tw.alpha)
print("twist is valid:", bool(check_hom_leibniz(tw)) and bool(check_multiplicative(tw)))
