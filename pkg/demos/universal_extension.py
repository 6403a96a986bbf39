"""Universal central extension of sl2 and of an algebra that admits a nontrivial one."""

from _show import show
from homleib import corpus, cover_report, induced_to_central, uce, uce_alpha
from homleib.centext import extension_of

for name in ("SL2", "TAKIFF", "SL2V4", "TW2"):
    L = corpus.get(name)
    r = uce(L)
    print(f"{name}: dim {L.dim}, uce dim {r.dim}, kernel dim {r.hl2.dim}")

tw = corpus.get("TW2")
print("alpha version on TW2 matches:", uce_alpha(tw).dim == uce(tw).dim)

# the unique map from the universal one to another central extension
e = extension_of(corpus.get("U_TAKIFF"))
r = uce(e.L)
h = induced_to_central(r, e)
print("induced map:")
show(h.m)
print("U_SL2 is a cover:", cover_report(corpus.get("U_SL2")).ok)
