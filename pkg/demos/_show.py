"""Print exact matrices and vectors as plain rationals."""

from homleib.exactlin import format_scalar


def show(m, indent="  "):
    rows = [m] if getattr(m, "ndim", 2) == 1 else m
    cells = [[format_scalar(x) for x in row] for row in rows]
    w = max((len(c) for row in cells for c in row), default=1)
    for row in cells:
        print(indent + " ".join(c.rjust(w) for c in row))
