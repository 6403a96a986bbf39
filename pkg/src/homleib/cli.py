"""Command-line entry point: ``homleib COMMAND ...``.

Exit status is 0 when every check in the report passed, 1 when some check
failed and 2 when the input could not be read or a precondition was not met.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import suite
from .actions import (
    SplitExtension,
    check_action_axioms,
    check_split_equivalence,
    failing_axioms,
    semidirect,
    semidirect_report,
    sign_convention_suspect,
)
from .centext import hl1, uce, uce_alpha
from .errors import PreconditionError, Report, TheoremViolation, Verdict
from .exactlin import format_scalar
from .fileformat import FormatError, algebra_to_doc, dump_document, load_action, load_document
from .homalg import HomMorphism, report as algebra_report
from .lifting import lift_automorphism, lift_derivation, make_alpha_cover
from .sdpuce import check_all, make_setup

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _plain(x):
    """Witness and data values as JSON-ready objects; scalars become strings."""
    if isinstance(x, Verdict):
        return {"ok": x.ok, "witness": _plain(x.witness), "tag": x.tag}
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, np.integer):
        return int(x)
    return format_scalar(x)


def _load(path: str, kind: str):
    try:
        return load_document(path, kind)
    except FormatError as exc:
        raise InputError(str(exc)) from None


class Outcome:
    """What a command produced: reports, optional output document, or a refusal."""

    def __init__(self, reports: list[Report], error: str | None = None, out_doc: dict | None = None):
        self.reports = reports
        self.error = error
        self.out_doc = out_doc

    @property
    def status(self) -> int:
        if self.error is not None:
            return EXIT_INPUT
        return EXIT_PASS if all(r.ok for r in self.reports) else EXIT_FAIL


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> Outcome:
    L = _load(args.file, "algebra")
    ar = algebra_report(L)
    rep = Report("validate")
    rep.add("hom_leibniz", ar.is_hom_leibniz)
    rep.add("multiplicative", ar.is_multiplicative)
    rep.data.update(
        {
            "name": L.name,
            "field": L.field.name,
            "dim": L.dim,
            "perfect": bool(ar.is_perfect),
            "alpha_perfect": bool(ar.is_alpha_perfect),
            "center_dim": ar.center.dim,
            "derived_dim": ar.derived.dim,
            "alpha_image_dim": ar.alpha_image.dim,
            "ann_dim": ar.ann_ideal.dim,
        }
    )
    if ar.is_hom_leibniz:
        rep.data["hl1_dim"] = hl1(L)
    return Outcome([rep])


def cmd_uce(args) -> Outcome:
    L = _load(args.file, "algebra")
    build = uce_alpha if args.alpha else uce
    try:
        r = build(L)
    except PreconditionError as exc:
        return Outcome([], f"refused: {exc}")
    rep = Report("uce_alpha" if args.alpha else "uce")
    rep.extend(r.checks)
    rep.data.update({"base_dim": L.dim, "carrier_dim": r.carrier.dim, "hl2_basis": r.hl2.basis})
    out = algebra_to_doc(r.alg.renamed(f"uce({L.name})" if L.name else "uce")) if args.out else None
    return Outcome([rep], out_doc=out)


def cmd_semidirect(args) -> Outcome:
    M = _load(args.m_file, "algebra")
    Q = _load(args.q_file, "algebra")
    try:
        act = load_action(args.action, actor=Q, target=M)
    except FormatError as exc:
        raise InputError(str(exc)) from None
    rep = Report("semidirect")
    ax = check_action_axioms(act)
    rep.add("action axioms", ax)
    if not ax:
        rep.data["failing axioms"] = failing_axioms(act)
        if sign_convention_suspect(act):
            rep.data["note"] = "only one of the mirrored axioms b, c fails; check the sign convention of the input"
        return Outcome([rep])
    for k, v in semidirect_report(act).items():
        rep.add(k, v)
    name = f"{M.name}x|{Q.name}" if M.name and Q.name else ""
    G, _, _, _ = semidirect(act, name)
    rep.data.update({"dim": G.dim, "M_dim": M.dim, "Q_dim": Q.dim, "symmetric": act.is_symmetric()})
    return Outcome([rep], out_doc=algebra_to_doc(G))


def cmd_check_split(args) -> Outcome:
    se: SplitExtension = _load(args.ext, "split_extension")
    rep = Report("check-split")
    try:
        v, phi = check_split_equivalence(se)
    except PreconditionError as exc:
        return Outcome([], f"refused: {exc}")
    rep.add("equivalent to semidirect", v)
    if phi is not None:
        rep.data["phi"] = phi.m
    return Outcome([rep])


def _cover(args):
    f: HomMorphism = _load(args.cover, "morphism")
    try:
        m = load_document(args.matrix)
    except FormatError as exc:
        raise InputError(str(exc)) from None
    if isinstance(m, HomMorphism):
        m = m.m
    elif not isinstance(m, np.ndarray):
        raise InputError(f"{args.matrix}: expected a matrix or morphism document")
    L = f.dst
    if m.shape != (L.dim, L.dim):
        raise InputError(f"{args.matrix}: expected a {L.dim}x{L.dim} matrix, got {m.shape[0]}x{m.shape[1]}")
    return make_alpha_cover(f), m


def cmd_lift_aut(args) -> Outcome:
    try:
        cov, m = _cover(args)
        lf = lift_automorphism(cov, HomMorphism(cov.base, cov.base, m), args.seed)
    except PreconditionError as exc:
        return Outcome([], f"refused: {exc}")
    return Outcome([_lift_report("lift-aut", cov, lf)])


def cmd_lift_der(args) -> Outcome:
    try:
        cov, m = _cover(args)
        lf = lift_derivation(cov, m, args.seed)
    except PreconditionError as exc:
        return Outcome([], f"refused: {exc}")
    return Outcome([_lift_report("lift-der", cov, lf)])


def _lift_report(title, cov, lf) -> Report:
    rep = Report(title)
    rep.add("lifts", lf.verdict)
    rep.data.update({"cover_dim": cov.cover.dim, "base_dim": cov.base.dim, "C_dim": cov.C.dim})
    if lf.map is not None:
        rep.data["lift"] = lf.map
    return rep


def cmd_check_s5(args) -> Outcome:
    se = _load(args.split, "split_extension")
    try:
        s = make_setup(se)
    except PreconditionError as exc:
        return Outcome([], f"refused: {exc}")
    return Outcome([check_all(s)])


def cmd_corpus(args) -> Outcome:
    return Outcome(suite.run_all(args.seed))


COMMANDS = {
    "validate": cmd_validate,
    "uce": cmd_uce,
    "semidirect": cmd_semidirect,
    "check-split": cmd_check_split,
    "lift-aut": cmd_lift_aut,
    "lift-der": cmd_lift_der,
    "check-s5": cmd_check_s5,
    "corpus": cmd_corpus,
}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def to_machine(echo: str, out: Outcome) -> dict:
    return {
        "command": echo,
        "status": out.status,
        "error": out.error,
        "reports": [
            {
                "title": r.title,
                "checks": [{"name": n, "pass": v.ok, "witness": _plain(v.witness), "tag": v.tag} for n, v in r.checks],
                "data": _plain(r.data),
            }
            for r in out.reports
        ],
    }


def render_machine(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def render_human(doc: dict) -> str:
    """Text rendering built from the machine document, so the two always agree."""
    lines = [f"$ {doc['command']}"]
    for r in doc["reports"]:
        lines.append(f"== {r['title']}")
        for c in r["checks"]:
            mark = "PASS" if c["pass"] else "FAIL"
            extra = ""
            if not c["pass"]:
                tag = f" [{c['tag']}]" if c["tag"] else ""
                extra = f"{tag} witness {json.dumps(c['witness'])}"
            lines.append(f"  {mark} {c['name']}{extra}")
        for k, v in r["data"].items():
            lines.append(f"  {k}: {json.dumps(v)}")
    if doc["error"]:
        lines.append(f"error: {doc['error']}")
    word = {EXIT_PASS: "pass", EXIT_FAIL: "check failure", EXIT_INPUT: "input error"}[doc["status"]]
    lines.append(f"exit {doc['status']} ({word})")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="homleib", description="Exact checks for multiplicative Hom-Leibniz algebras.")
    ap.add_argument("--format", choices=("human", "machine"), default="human")
    ap.add_argument("--seed", type=int, default=0, help="seed for sampled sections and probes (default 0)")
    ap.add_argument("--out", help="write the constructed algebra here")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("validate", help="axioms and structure of an algebra file")
    p.add_argument("file")
    p = sub.add_parser("uce", help="universal central extension of a perfect algebra")
    p.add_argument("file")
    p.add_argument("--alpha", action="store_true", help="build the alpha-central version")
    p = sub.add_parser("semidirect", help="semidirect product M x| Q from an action file")
    p.add_argument("m_file")
    p.add_argument("q_file")
    p.add_argument("action")
    p = sub.add_parser("check-split", help="compare a split extension with its semidirect product")
    p.add_argument("ext")
    for name, what in (("lift-aut", "an automorphism"), ("lift-der", "a derivation")):
        p = sub.add_parser(name, help=f"lift {what} of the base along an alpha-cover")
        p.add_argument("cover")
        p.add_argument("matrix")
    p = sub.add_parser("check-s5", help="uce of a split extension with a perfect quotient")
    p.add_argument("split")
    sub.add_parser("corpus", help="run every check over the shipped corpus")
    # allow global flags after the subcommand too
    for sp in sub.choices.values():
        sp.add_argument("--format", choices=("human", "machine"), default=argparse.SUPPRESS)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--out", default=argparse.SUPPRESS)
    return ap


def run(argv: list[str]) -> tuple[int, str, str]:
    """Run a command; returns ``(status, stdout text, stderr text)``."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_INPUT if exc.code else EXIT_PASS), "", ""
    echo = " ".join(["homleib", *argv])
    try:
        out = COMMANDS[args.command](args)
    except InputError as exc:
        out = Outcome([], str(exc))
    except TheoremViolation as exc:
        rep = Report(args.command)
        rep.add("internal consistency", Verdict(False, str(exc)))
        out = Outcome([rep])
    err = ""
    if args.out and out.out_doc is not None and out.status != EXIT_INPUT:
        try:
            Path(args.out).write_text(dump_document(out.out_doc), encoding="utf-8")
        except OSError as exc:
            out = Outcome(out.reports, f"cannot write {args.out}: {exc.strerror}")
    elif args.out and out.out_doc is None and out.status != EXIT_INPUT:
        err = f"note: {args.command} produces no algebra; --out ignored\n"
    doc = to_machine(echo, out)
    text = render_machine(doc) if args.format == "machine" else render_human(doc)
    return out.status, text, err


def main(argv: list[str] | None = None) -> int:
    status, text, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    if err:
        sys.stderr.write(err)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
