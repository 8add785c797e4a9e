"""Command-line front end: ``hopfreg list | generate | check``.

Exit codes: 0 success, 1 theorem-agreement failure, 2 validation error,
3 resource error, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from importlib import resources

import numpy as np

from . import library
from .algebra import DEFAULT_ENUMERATION_CAP
from .document import Document, DocumentError, document_for_action, document_for_hopf, dumps, load
from .errors import HopfRegError, ResourceError, TheoremViolation, UsageError, ValidationError
from .exactla import Field
from .hopf import (
    HopfAlgebra,
    augmentation_ideal,
    check_hopf_axioms,
    counit_kernel,
    counit_kernel_decomposition,
    dual_hopf,
    find_integrals,
    generating_set,
)
from .regularity import (
    RegularityReport,
    check_biregularity_theorem,
    check_fixring_proposition,
    check_regularity_proposition,
    fmt_subspace,
    is_H_biregular,
    is_H_regular,
    is_H_simple,
    is_invariants_large,
    semi_projectivity_counterexample,
    stable_ideal_properties,
)
from .separability import (
    certify_casimir,
    check_relative_semisimple,
    check_trace_one_regularity,
    duality_check,
    is_casimir,
    separability_transfer,
    trace_one_pair,
    casimir_from_integral,
)

EXIT_OK, EXIT_THEOREM, EXIT_VALIDATION, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 3, 4
REPORT_FORMAT = "hopfreg-report/1"


# check runners; each returns a RegularityReport


def _hopf_axioms(H, cap):
    rep = RegularityReport(H.name or "?", "hopf-axioms")
    failures = check_hopf_axioms(H).failures
    rep.record("Hopf axioms", not failures, "; ".join(f"{a} at {i}" for a, i in failures) or "all identities hold")
    return rep


def _integrals(H, cap):
    rep = RegularityReport(H.name or "?", "integrals")
    for side in ("right", "left"):
        T = find_integrals(H, side)
        rep.record(f"{side} integrals one-dimensional", T.dim == 1, fmt_subspace(H.algebra, T))
    rep.agree.append(list(rep.verdicts))
    return rep


def _counit_kernel(H, cap):
    rep = RegularityReport(H.name or "?", "counit-kernel")
    F = H.field
    gens = generating_set(H)
    K = counit_kernel(H)
    rep.record("Ker ε = Σ H(b - ε(b))", augmentation_ideal(H, gens) == K, f"generators: {len(gens)}, dim Ker ε = {K.dim}")
    # every basis vector of Ker ε plus a few fixed combinations
    samples = list(K.basis)
    rng = np.random.default_rng(0)
    bound = F.p or 7
    for _ in range(8):
        if K.dim:
            samples.append(F.matmul(F.array(rng.integers(0, bound, size=(1, K.dim))), K.basis).reshape(-1))
    for h in samples:
        counit_kernel_decomposition(H, gens, h)  # asserts exact reconstruction
    rep.record("decomposition reconstructs", True, f"{len(samples)} elements of Ker ε")
    rep.agree.append(list(rep.verdicts))
    return rep


def _duality(H, cap):
    rep = RegularityReport(H.name or "?", "duality")
    d = duality_check(H)
    rep.record("dim H#H* = (dim H)^2", d["dim"] == d["expected_dim"], f"dim {d['dim']}")
    rep.record("radical zero", d["radical_dim"] == 0, f"radical dim {d['radical_dim']}")
    rep.record("center one-dimensional", d["center_dim"] == 1, f"center dim {d['center_dim']}")
    rep.record("Ψ bijective", d["psi_rank"] == d["expected_dim"], f"rank {d['psi_rank']}")
    rep.agree.append(list(rep.verdicts))
    return rep


def _single(act, check, label, report):
    rep = RegularityReport(act.name or "?", check)
    rep.record(label, report.verdicts[label], report.witnesses[label])
    return rep


def _simple(act, cap):
    rep = RegularityReport(act.name or "?", "simple")
    for kind, label in (("algebroid", "no proper two-sided stable ideals"), ("smash", "no proper left stable ideals")):
        ext = act.algebroid() if kind == "algebroid" else act.smash()
        rep.record(label, is_H_simple(act, kind=kind, cap=cap), ext.kind or kind)
    return rep


def _semi_projective(act, cap):
    rep = RegularityReport(act.name or "?", "semi-projective")
    for prefix, ext in (("A#H", act.smash()), ("A^e⋈H", act.algebroid())):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            x, heuristic = semi_projectivity_counterexample(ext, cap)
        wit = "holds" if x is None else f"fails at x = {act.algebra.format(x)}"
        if heuristic:
            rep.notes.append(f"{prefix}: tested on a basis of A^B only")
        rep.record(f"{prefix}: semi-projective", x is None, wit)
    return rep


def _large(act, cap):
    rep = RegularityReport(act.name or "?", "large")
    for prefix, ext in (("A#H", act.smash()), ("A^e⋈H", act.algebroid())):
        rep.record(f"{prefix}: invariants large", is_invariants_large(ext, cap), ext.kind or prefix)
    return rep


def _separable(act, cap):
    rep = RegularityReport(act.name or "?", "separable-extension")
    c, rad_a, rad_b = separability_transfer(act)
    rep.record("separable", c is not None, "no Casimir element with μ(c) = 1" if c is None else c.format())
    rep.record("radical(A) = 0", rad_a, "")
    rep.record("radical(A#H) = 0", rad_b, "")
    if c is not None and rad_a and not rad_b:
        raise TheoremViolation(f"separable extension of a semisimple algebra is not semisimple on {rep.example_id}", rep)
    return rep


def _relative_semisimple(act, cap):
    rep = RegularityReport(act.name or "?", "relative-semisimple")
    ext = act.smash()
    pair = trace_one_pair(act)
    c = None
    if pair is not None:
        c = casimir_from_integral(act, *pair, ext)
        assert is_casimir(c)
    verdict = check_relative_semisimple(ext, c, cap)
    rep.record("(A#H, A)-semisimple on stable ideals", verdict,
               "averaged projections split" if c is not None else "decided by invariant idempotents")
    if c is not None and not verdict:
        raise TheoremViolation(f"unitary Casimir element exists but a summand does not split on {rep.example_id}", rep)
    return rep


HOPF_CHECKS = {
    "hopf-axioms": _hopf_axioms,
    "integrals": _integrals,
    "counit-kernel": _counit_kernel,
    "duality": _duality,
}
ACTION_CHECKS = {
    "regular": lambda act, cap: _single(act, "regular", "H-regular", is_H_regular(act, cap)),
    "biregular": lambda act, cap: _single(act, "biregular", "H-biregular", is_H_biregular(act, cap)),
    "simple": _simple,
    "biregularity-theorem": check_biregularity_theorem,
    "regularity-proposition": check_regularity_proposition,
    "fixring-proposition": check_fixring_proposition,
    "semi-projective": _semi_projective,
    "large": _large,
    "stable-ideal-properties": stable_ideal_properties,
    "casimir": certify_casimir,
    "separable-extension": _separable,
    "relative-semisimple": _relative_semisimple,
    "trace-one-regularity": check_trace_one_regularity,
}
ALL_CHECKS = {**HOPF_CHECKS, **ACTION_CHECKS}
# checks that quantify over all elements and so need a finite field
ENUMERATIVE = {
    "regular", "biregular", "simple", "biregularity-theorem", "regularity-proposition", "fixring-proposition",
    "large", "stable-ideal-properties", "casimir", "relative-semisimple", "trace-one-regularity",
}


def run_check(check, target, cap=DEFAULT_ENUMERATION_CAP):
    """Run one check on a Hopf algebra or action; returns ``(result dict, exit status)``."""
    if check not in ALL_CHECKS:
        raise UsageError(f"unknown check {check!r}")
    is_hopf = isinstance(target, HopfAlgebra)
    if (check in HOPF_CHECKS) != is_hopf:
        raise UsageError(f"check {check!r} does not apply to {'a Hopf algebra' if is_hopf else 'an action'}")
    out = {"check": check, "target": target.name or "?"}
    if check in ENUMERATIVE and target.field.p is None:
        out.update(status="skipped", notes=["requires enumeration over a finite field"])
        return out, EXIT_OK
    try:
        rep = ALL_CHECKS[check](target, cap)
    except TheoremViolation as exc:
        out.update(status="violation", notes=[str(exc)])
        if exc.report is not None:
            out.update(verdicts=exc.report.to_dict()["verdicts"], witnesses=exc.report.to_dict()["witnesses"])
        return out, EXIT_THEOREM
    except ResourceError as exc:
        out.update(status="resource", notes=[str(exc)], required=exc.required, cap=exc.cap)
        return out, EXIT_RESOURCE
    d = rep.to_dict()
    status = "ok" if d["consistent"] else "violation"
    out.update(status=status if d["applicable"] else "inapplicable", verdicts=d["verdicts"],
               witnesses=d["witnesses"], notes=d["notes"])
    return out, EXIT_OK if status == "ok" else EXIT_THEOREM


def _combine(codes):
    codes = set(codes) - {EXIT_OK}
    if not codes:
        return EXIT_OK
    return EXIT_THEOREM if EXIT_THEOREM in codes else max(codes)


def run_checks(doc: Document, selection=None, cap=DEFAULT_ENUMERATION_CAP, label="document", timings=True):
    """Run ``selection`` (check ids) on every target, or the document's own requests.

    Returns ``(report dict, exit status)``.
    """
    if selection:
        unknown = [c for c in selection if c not in ALL_CHECKS]
        if unknown:
            raise UsageError(f"unknown checks: {', '.join(unknown)}")
        requests = [(c, n) for n in sorted(doc.hopf) for c in selection if c in HOPF_CHECKS]
        requests += [(c, n) for n in sorted(doc.actions) for c in selection if c in ACTION_CHECKS]
    elif doc.checks:
        requests = [(c["check"], c["target"]) for c in doc.checks]
    else:
        requests = [(c, n) for n in sorted(doc.hopf) for c in HOPF_CHECKS]
        requests += [(c, n) for n in sorted(doc.actions) for c in ACTION_CHECKS]
    results, codes = [], []
    for check, name in requests:
        target = doc.actions.get(name) or doc.hopf.get(name)
        if target is None:
            raise UsageError(f"unknown target {name!r}")
        start = time.perf_counter()
        res, code = run_check(check, target, cap)
        res["target"] = name
        if timings:
            res["seconds"] = round(time.perf_counter() - start, 4)
        results.append(res)
        codes.append(code)
    status = _combine(codes)
    return {"document": label, "field": repr(doc.field), "results": results, "exit": status}, status


# report rendering


def render(reports, fmt="text", exit_status=0):
    if fmt == "structured":
        return json.dumps({"format": REPORT_FORMAT, "documents": reports, "exit": exit_status},
                          sort_keys=True, indent=1, ensure_ascii=False) + "\n"
    lines = []
    for rep in reports:
        lines.append(f"== {rep['document']} over {rep['field']}")
        for res in rep["results"]:
            head = f"{res['target']:<24} {res['check']:<24} {res['status']}"
            if "seconds" in res:
                head += f"  ({res['seconds']:.3f}s)"
            lines.append(head)
            for label, verdict in res.get("verdicts", {}).items():
                wit = res["witnesses"].get(label, "")
                lines.append(f"    {'yes' if verdict else 'no ':<4}{label}" + (f"  [{wit}]" if wit else ""))
            for note in res.get("notes", []):
                lines.append(f"    note: {note}")
    lines.append(f"exit status {exit_status}")
    return "\n".join(lines) + "\n"


# bundled documents and builders


def default_examples_dir():
    return str(resources.files("hopfreg") / "data")


def bundled_documents(examples_dir=None):
    d = examples_dir or default_examples_dir()
    if not os.path.isdir(d):
        raise UsageError(f"examples directory {d!r} does not exist")
    return sorted(f[:-5] for f in os.listdir(d) if f.endswith(".json"))


def resolve(name, examples_dir=None):
    """A document from a path, a bundled document name, or a library example name."""
    if os.path.exists(name):
        return load(name), os.path.splitext(os.path.basename(name))[0]
    path = os.path.join(examples_dir or default_examples_dir(), name + ".json")
    if os.path.exists(path):
        return load(path), name
    if name in library.ACTION_EXAMPLES:
        return document_for_action(library.get_action(name)), name
    if name in library.HOPF_EXAMPLES:
        H = library.get_hopf(name)
        H.name = name
        return document_for_hopf(H, name), name
    raise UsageError(f"no document, bundled example or library example named {name!r}")


BUILDERS = ("group_algebra", "sweedler_h4", "duality")


def _hopf_from_spec(spec, field):
    if spec == "sweedler_h4":
        return library.sweedler_h4(field)
    group = spec[6:] if spec.startswith("group:") else spec
    if group in library.GROUPS:
        return library.group_algebra(group, field)
    raise UsageError(f"unknown Hopf algebra {spec!r}; use sweedler_h4 or one of {', '.join(library.GROUPS)}")


def generate_example(name, field="GF(3)", group="C2", hopf="sweedler_h4", checks=None) -> Document:
    """A validated document from a builder or a library example name."""
    if name == "group_algebra":
        H = library.group_algebra(group, field)
        H.name = f"{group}"
        return document_for_hopf(H, "H", checks)
    if name == "sweedler_h4":
        return document_for_hopf(library.sweedler_h4(field), "H", checks)
    if name == "duality":
        H = _hopf_from_spec(hopf, field)
        Hd = dual_hopf(H)
        act = library.hit(H)
        doc = Document(H.field)
        doc.algebras["H"] = H.algebra
        doc.algebras["Hdual"] = Hd.algebra
        doc.hopf["H"] = H
        doc.hopf["Hdual"] = act.hopf
        doc.actions["hit"] = act
        doc.checks = [{"check": c, "target": "hit"} for c in (checks or [])]
        return doc
    if name in library.ACTION_EXAMPLES:
        return document_for_action(library.get_action(name), name, checks)
    raise UsageError(f"unknown example {name!r}")


# argument parsing


def _parser():
    p = argparse.ArgumentParser(prog="hopfreg", description="Regularity of Hopf module algebras over finite fields.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--examples-dir", help="directory of bundled documents (default: packaged data)")
        sp.add_argument("--field", help="field, e.g. GF(3) or QQ")

    ls = sub.add_parser("list", help="list bundled documents, builders, library examples and checks")
    common(ls)

    gen = sub.add_parser("generate", help="write a document for a builder or library example")
    common(gen)
    gen.add_argument("name", help=f"one of {', '.join(BUILDERS)} or a library action name")
    gen.add_argument("--group", default="C2", choices=sorted(library.GROUPS))
    gen.add_argument("--hopf", default="sweedler_h4", help="Hopf algebra for the duality builder")
    gen.add_argument("--checks", help="comma-separated check ids to embed as requests")
    gen.add_argument("-o", "--output", help="output path (default: stdout)")

    chk = sub.add_parser("check", help="run checks on documents (default: every bundled document)")
    common(chk)
    chk.add_argument("targets", nargs="*", help="document paths, bundled names or library example names")
    chk.add_argument("--checks", help="comma-separated check ids (default: the document's requests or all)")
    chk.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP, help="enumeration cap (default 2^16)")
    chk.add_argument("--report", choices=("text", "structured"), default="text")
    chk.add_argument("--no-timings", action="store_true", help="omit timings so reports are reproducible")
    chk.add_argument("-o", "--output", help="write the report here instead of stdout")
    return p


def _split(s):
    return [c.strip() for c in s.split(",") if c.strip()] if s else None


def _cmd_list(args, out):
    out.write("bundled documents:\n")
    for n in bundled_documents(args.examples_dir):
        out.write(f"  {n}\n")
    out.write("builders:\n")
    for n in BUILDERS:
        out.write(f"  {n}\n")
    field = Field.parse(args.field) if args.field else None
    out.write("library actions:\n")
    for n in sorted(library.ACTION_EXAMPLES):
        act = library.get_action(n)
        if field is None or act.field == field:
            out.write(f"  {n:<28} {act.field}  dim H = {act.hopf.dim}, dim A = {act.algebra.dim}\n")
    out.write("checks:\n")
    for c in ALL_CHECKS:
        out.write(f"  {c}{'  (Hopf algebra)' if c in HOPF_CHECKS else ''}\n")
    return EXIT_OK


def _cmd_generate(args, out):
    doc = generate_example(args.name, field=args.field or "GF(3)", group=args.group, hopf=args.hopf,
                           checks=_split(args.checks))
    unknown = [c["check"] for c in doc.checks if c["check"] not in ALL_CHECKS]
    if unknown:
        raise UsageError(f"unknown checks: {', '.join(unknown)}")
    text = dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _cmd_check(args, out):
    if args.cap < 1:
        raise UsageError("--cap must be positive")
    names = args.targets or bundled_documents(args.examples_dir)
    field = Field.parse(args.field) if args.field else None
    reports, codes = [], []
    for name in names:
        doc, label = resolve(name, args.examples_dir)
        if field is not None and doc.field != field:
            continue
        rep, code = run_checks(doc, _split(args.checks), args.cap, label, timings=not args.no_timings)
        reports.append(rep)
        codes.append(code)
    status = _combine(codes)
    text = render(reports, args.report, status)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return status


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return {"list": _cmd_list, "generate": _cmd_generate, "check": _cmd_check}[args.command](args, out)
    except (DocumentError, ValidationError) as exc:
        print(f"hopfreg: invalid document: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceError as exc:
        print(f"hopfreg: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except TheoremViolation as exc:
        print(f"hopfreg: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except UsageError as exc:
        print(f"hopfreg: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HopfRegError as exc:
        print(f"hopfreg: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
