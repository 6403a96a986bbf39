"""Compare the universal extension of a split extension with those of its pieces."""

from homleib import check_split_uce, corpus, make_setup

for name in ("SPLIT_SD1", "SPLIT_DP", "SPLIT_RS"):
    s = make_setup(corpus.get(name))
    rep = check_split_uce(s)
    passed = sum(1 for _, v in rep.checks if v)
    print(f"{name}: {passed}/{len(rep.checks)} checks pass")
    for check, v in rep.failures():
        print("   FAIL", check, v.witness)
    if "a_central" in rep.data:
        print("   the four equivalent conditions hold:", rep.data["a_central"])

try:
    make_setup(corpus.get("SPLIT_ADJ"))
except Exception as exc:
    print("SPLIT_ADJ refused:", exc)
