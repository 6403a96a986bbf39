"""Build a semidirect product from an action and recover the action from the split sequence."""

from _show import show
from homleib import check_split_equivalence, corpus, semidirect
from homleib.actions import induced_action_from_split, semidirect_extension

act = corpus.get("SELF_SL2")
G, i, pi, s = semidirect(act)
print("semidirect product of sl2 on itself has dimension", G.dim)

se = semidirect_extension(act)
back = induced_action_from_split(se)
print("action recovered from the split sequence:", back.same_tensors(act))

v, phi = check_split_equivalence(corpus.get("SPLIT_DP"))
print("direct product split extension is equivalent to a semidirect one:", bool(v))
show(phi.m)
