"""Command-line front end.

Exit codes: 0 when the checked property holds (or requested objects were
produced), 1 when a check is refuted (axiom violation, phi counterexample,
invalid verification condition, failing premise, empty search), 2 on
usage, parse or model errors.  Reports are deterministic for identical
inputs; ``--format structured`` switches to JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import evsets
from .algebra import (FiniteAlgebra, Profile, bool2_model, check_axioms,
                      check_phi, evaluate, lemma4_model, near_as_model,
                      trivial_model)
from .errors import KadlabError, ModelError
from .files import dump_model, load_model, load_program_file
from .hoare import (PremiseError, parse_program, parse_test_expr,
                    eval_test, holds, synth_mid, vcgen, HoareTriple,
                    SYNTH_METHODS)
from .relations import format_rel, rel_algebra_model
from .search import CONSTRAINTS, find_models
from .terms import Env, parse_term, print_term, sort_of, variables

BUILTIN_MODELS = {
    "lemma4": lemma4_model,
    "bool2": bool2_model,
    "trivial": trivial_model,
    "nearas": near_as_model,
    "rel1": lambda: rel_algebra_model(1),
    "rel2": lambda: rel_algebra_model(2),
}


def _load_algebra(args) -> FiniteAlgebra:
    if args.builtin is not None:
        try:
            return BUILTIN_MODELS[args.builtin]()
        except KeyError:
            raise ModelError(
                f"unknown builtin {args.builtin!r} "
                f"(one of {', '.join(sorted(BUILTIN_MODELS))})") from None
    path = Path(args.model)
    try:
        text = path.read_text()
    except OSError as e:
        raise ModelError(f"cannot read {path}: {e}") from None
    return load_model(text, name=path.name)


def _load_program_file(path_str):
    path = Path(path_str)
    try:
        text = path.read_text()
    except OSError as e:
        raise ModelError(f"cannot read {path}: {e}") from None
    return load_program_file(text, name=path.name)


# ---------------------------------------------------------------------------
# handlers

def _cmd_check_axioms(args):
    algebra = _load_algebra(args)
    profile = Profile.parse(args.profile)
    report = check_axioms(algebra, profile)
    lines = [f"model: {algebra.name} ({algebra.size} elements)",
             f"profile: {profile.value}",
             f"axioms: {report.axiom_count}",
             f"instances: {report.instance_count}"]
    for v in report.violations:
        lines.append(f"violation: {v}")
    lines.append(f"result: {'PASS' if report.passed else 'FAIL'}")
    payload = {
        "command": "check-axioms",
        "model": algebra.name,
        "profile": profile.value,
        "axioms": report.axiom_count,
        "instances": report.instance_count,
        "passed": report.passed,
        "violations": [
            {"axiom": v.axiom, "assignment": dict(v.assignment),
             "lhs": v.lhs, "rhs": v.rhs}
            for v in report.violations],
    }
    return (0 if report.passed else 1), lines, payload


def _cmd_eval(args):
    algebra = _load_algebra(args)
    raw = parse_term(args.term, tests=frozenset())
    names = sorted(variables(raw)[0])
    env_pairs = {}
    for item in (args.env.split(",") if args.env else []):
        item = item.strip()
        if not item:
            continue
        key, eq, value = item.partition("=")
        if not eq:
            raise ModelError(f"bad env binding {item!r} (expected name=element)")
        env_pairs[key.strip()] = value.strip()
    carrier = set(algebra.carrier)
    elements, tests = {}, {}
    test_names = set()
    for name in names:
        if name in env_pairs:
            value = env_pairs[name]
        elif name in carrier:
            value = name
        else:
            raise ModelError(f"unbound identifier {name!r}")
        if algebra.tests is not None and value in algebra.tests:
            tests[name] = value
            test_names.add(name)
        else:
            elements[name] = value
    for key, value in env_pairs.items():
        elements.setdefault(key, value)
    term = parse_term(args.term, tests=test_names)
    sort_of(term, declared_tests=test_names)
    result = evaluate(algebra, term, Env(elements=elements, tests=tests))
    lines = [f"{print_term(term)} = {result}"]
    payload = {"command": "eval", "model": algebra.name,
               "term": print_term(term), "result": result}
    return 0, lines, payload


def _cmd_check_phi(args):
    algebra = _load_algebra(args)
    result = check_phi(algebra)
    lines = [f"model: {algebra.name} ({algebra.size} elements)"]
    if result.holds:
        lines.append("phi: holds")
    else:
        x, y, p, q = result.witness
        lines.append(f"phi: FAILS at x={x} y={y} p={p} q={q}")
    payload = {"command": "check-phi", "model": algebra.name,
               "holds": result.holds,
               "witness": None if result.holds else list(result.witness)}
    return (0 if result.holds else 1), lines, payload


def _cmd_find_models(args):
    profile = Profile.parse(args.profile)
    lines = []
    dumps = []
    count = 0
    for model in find_models(args.size, profile, args.constraint,
                             limit=args.limit):
        count += 1
        text = dump_model(model)
        dumps.append(text)
        lines.append(f"# model {count} ({model.name})")
        lines.extend(text.rstrip("\n").splitlines())
        lines.append("")
    lines.append(f"found: {count}")
    payload = {"command": "find-models", "size": args.size,
               "profile": profile.value, "constraint": args.constraint,
               "count": count, "models": dumps}
    return (0 if count else 1), lines, payload


def _cmd_vcgen(args):
    pf = _load_program_file(args.program)
    if pf.program is None:
        raise ModelError("program file declares no program")
    pre = pf.pre
    post = pf.post
    if args.pre is not None:
        pre = eval_test(parse_test_expr(args.pre, pf.bindings.tests), pf.bindings)
    if args.post is not None:
        post = eval_test(parse_test_expr(args.post, pf.bindings.tests), pf.bindings)
    if pre is None or post is None:
        raise ModelError("both a precondition and a postcondition are needed "
                         "(pre:/post: lines or --pre/--post)")
    report = vcgen(pre, pf.program, post, pf.bindings)
    lines = [f"program file: {args.program}",
             f"precondition computed: {format_rel(report.precondition)}"]
    for c in report.conditions:
        status = "ok" if c.holds else "VIOLATED"
        lines.append(f"vc {c.name}: {format_rel(c.lhs)} <= {format_rel(c.rhs)} : {status}")
    lines.append(f"result: {'VALID' if report.valid else 'INVALID'}")
    payload = {"command": "vcgen", "program": args.program,
               "precondition": format_rel(report.precondition),
               "valid": report.valid,
               "conditions": [
                   {"name": c.name, "lhs": format_rel(c.lhs),
                    "rhs": format_rel(c.rhs), "holds": c.holds}
                   for c in report.conditions]}
    return (0 if report.valid else 1), lines, payload


def _cmd_synth_mid(args):
    pf = _load_program_file(args.program)
    b = pf.bindings
    x = parse_program(args.x, b.atoms, b.tests)
    y = parse_program(args.y, b.atoms, b.tests)
    p = eval_test(parse_test_expr(args.pre, b.tests), b)
    q = eval_test(parse_test_expr(args.post, b.tests), b)
    r = synth_mid(x, y, p, q, args.method, b)
    first = holds(HoareTriple(p, x, r), b)
    second = holds(HoareTriple(r, y, q), b)
    lines = [f"method: {args.method}",
             f"r = {format_rel(r)}",
             f"{{p}} x {{r}}: {'ok' if first else 'VIOLATED'}",
             f"{{r}} y {{q}}: {'ok' if second else 'VIOLATED'}"]
    payload = {"command": "synth-mid", "method": args.method,
               "r": format_rel(r), "first_triple": first,
               "second_triple": second}
    return (0 if first and second else 1), lines, payload


def _cmd_demo(args):
    if args.what == "separation":
        return _demo_separation()
    return _demo_nonexpressivity(args)


def _demo_separation():
    lemma4 = lemma4_model()
    kat_report = check_axioms(lemma4, Profile.KAT)
    phi_kat = check_phi(lemma4)
    rel2 = rel_algebra_model(2)
    kad_report = check_axioms(rel2, Profile.KAD)
    phi_kad = check_phi(rel2)
    lines = [
        f"[1] {lemma4.name}: KAT axioms "
        f"{'PASS' if kat_report.passed else 'FAIL'} "
        f"({kat_report.axiom_count} axioms, {kat_report.instance_count} instances)",
    ]
    if phi_kat.holds:
        lines.append(f"[2] {lemma4.name}: phi holds (unexpected)")
    else:
        x, y, p, q = phi_kat.witness
        lines.append(f"[2] {lemma4.name}: phi FAILS at x={x} y={y} p={p} q={q}")
    lines.append(
        f"[3] {rel2.name}: KAD axioms {'PASS' if kad_report.passed else 'FAIL'} "
        f"({kad_report.axiom_count} axioms, {kad_report.instance_count} instances)")
    lines.append(f"[4] {rel2.name}: phi "
                 f"{'holds (16*16*4*4 instantiations)' if phi_kad.holds else 'FAILS'}")
    separated = (kat_report.passed and not phi_kat.holds
                 and kad_report.passed and phi_kad.holds)
    lines.append("summary: KAT ⊬ φ, AS ⊢ φ" if separated
                 else "summary: separation NOT reproduced")
    payload = {"command": "demo-separation",
               "kat_axioms_pass": kat_report.passed,
               "phi_fails_on_lemma4": not phi_kat.holds,
               "phi_witness": None if phi_kat.holds else list(phi_kat.witness),
               "kad_axioms_pass": kad_report.passed,
               "phi_holds_on_rel2": phi_kad.holds,
               "separated": separated}
    return (0 if separated else 1), lines, payload


def _demo_nonexpressivity(args):
    target = evsets.parse_evset(args.set)
    count = args.candidates
    lines = [f"target set: {evsets.format_evset(target)} "
             "(neither finite nor cofinite)",
             f"candidates: {count}"]
    refuted = 0
    entries = []
    for i, cand in enumerate(evsets.enumerate_candidates(target, count), start=1):
        verdict = evsets.refute_wlp_candidate(target, cand)
        if isinstance(verdict, evsets.NotAPrecondition):
            ok = False
            desc = f"intersects target at {verdict.witness}"
        else:
            ext = verdict.extension
            ok = (evsets.in_test_algebra(ext)
                  and cand.leq(ext) and not ext.leq(cand)
                  and target.intersect(ext).is_empty)
            desc = (f"not maximal, add {verdict.missing} -> "
                    f"{evsets.format_evset(ext)}")
        refuted += ok
        entries.append({"candidate": evsets.format_evset(cand),
                        "verdict": desc, "verified": ok})
        lines.append(f"  {i}. {evsets.format_evset(cand)} : {desc}"
                     + ("" if ok else " [verification FAILED]"))
    all_ok = refuted == count
    lines.append(f"refuted and verified: {refuted}/{count}")
    payload = {"command": "demo-nonexpressivity",
               "target": evsets.format_evset(target),
               "candidates": count, "refuted": refuted,
               "all_refuted": all_ok, "entries": entries}
    return (0 if all_ok else 1), lines, payload


# ---------------------------------------------------------------------------
# parser

def _add_model_source(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--model", help="model file to load")
    group.add_argument("--builtin",
                       help=f"builtin model ({', '.join(sorted(BUILTIN_MODELS))})")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="kadlab",
        description="Finite-model toolkit for Kleene algebras with tests "
                    "and with domain")
    parser.add_argument("--format", choices=("text", "structured"),
                        default="text", help="report format")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("check-axioms", help="check an axiom profile")
    _add_model_source(sub)
    sub.add_argument("--profile", required=True,
                     help="|".join(p.value for p in Profile))
    sub.set_defaults(handler=_cmd_check_axioms)

    sub = subs.add_parser("eval", help="evaluate a term in a model")
    _add_model_source(sub)
    sub.add_argument("--term", required=True)
    sub.add_argument("--env", default="",
                     help="comma separated name=element bindings")
    sub.set_defaults(handler=_cmd_eval)

    sub = subs.add_parser("check-phi",
                          help="check the mid-assertion sentence")
    _add_model_source(sub)
    sub.set_defaults(handler=_cmd_check_phi)

    sub = subs.add_parser("find-models", help="search small models")
    sub.add_argument("--size", type=int, required=True)
    sub.add_argument("--profile", required=True)
    sub.add_argument("--constraint", choices=CONSTRAINTS, default=None)
    sub.add_argument("--limit", type=int, default=None)
    sub.set_defaults(handler=_cmd_find_models)

    sub = subs.add_parser("vcgen", help="generate verification conditions")
    sub.add_argument("--program", required=True, help="program file")
    sub.add_argument("--pre", help="precondition test expression")
    sub.add_argument("--post", help="postcondition test expression")
    sub.set_defaults(handler=_cmd_vcgen)

    sub = subs.add_parser("synth-mid",
                          help="synthesize an intermediate assertion")
    sub.add_argument("--program", required=True,
                     help="program file with the bindings")
    sub.add_argument("--x", required=True, help="first program")
    sub.add_argument("--y", required=True, help="second program")
    sub.add_argument("--pre", required=True)
    sub.add_argument("--post", required=True)
    sub.add_argument("--method", choices=SYNTH_METHODS, required=True)
    sub.set_defaults(handler=_cmd_synth_mid)

    sub = subs.add_parser("demo", help="scripted demonstrations")
    sub.add_argument("what", choices=("separation", "nonexpressivity"))
    sub.add_argument("--set", default="evens",
                     help="target set literal (nonexpressivity)")
    sub.add_argument("--candidates", type=int, default=100)
    sub.set_defaults(handler=_cmd_demo)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, lines, payload = args.handler(args)
    except PremiseError as e:
        print(f"refused: {e}", file=sys.stderr)
        return 1
    except KadlabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.format == "structured":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
