"""Lift automorphisms and derivations through a cover, including one that cannot lift."""

from _show import show
from homleib import corpus, lift_automorphism, lift_derivation, make_alpha_cover

cov = make_alpha_cover(corpus.get("COVER_OBS"))
print("dimension of the obstruction space C:", cov.C.dim)

for name in ("SCALE_SL2V4", "SHEAR_SL2V4"):
    res = lift_automorphism(cov, corpus.get(name))
    if res:
        print(name, "lifts to")
        show(res.map)
    else:
        print(name, "does not lift; this vector of C is moved outside C:")
        show(res.obstruction)

sl2 = corpus.get("SL2")
u = make_alpha_cover(corpus.get("U_SL2"))
d = sl2.left(sl2.basis_vector(0))
print("inner derivation ad(e) lifts over sl2:", bool(lift_derivation(u, d)))
