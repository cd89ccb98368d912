"""Command line front end.

One subcommand per task: classical models, answer sets, SE models,
expansion, revision, postulate checking, assignment extraction,
synthesis from an SE set and program comparison.  Programs come from
.lp files or inline -e text; the models command also takes .fml files
or inline -f formulas.  Exit codes: 0 on success, 1 when a semantic
check fails (postulate violation, programs not equivalent), 2 on usage
or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .propositional import dalal_operator, drastic_operator
from .revision import (
    OPERATOR_SPECS,
    AssignmentError,
    assignment_to_json,
    dominant_class,
    expand,
    operator_from_spec,
)
from .semantics import (
    answer_sets,
    answer_sets_via_se,
    classical_models,
    modelset_to_json,
    se_models,
    se_set_properties,
    seset_from_json,
    seset_to_json,
    strong_equiv,
    synthesize,
)
from .syntax import (
    DLP,
    GLP,
    NLP,
    Alphabet,
    AlphabetError,
    ParseError,
    classify,
    parse_formula,
    parse_program,
    render_program,
)
from .verify import ExtractionError, check_km, check_ra, extract_assignment

PROP_SPECS = ("drastic", "dalal")


def _split_atoms(text):
    return tuple(a.strip() for a in text.split(",") if a.strip())


def _gather_programs(args, need):
    texts = []
    for path in getattr(args, "files", []):
        with open(path) as fh:
            texts.append(fh.read())
    texts.extend(getattr(args, "rules", []) or [])
    if len(texts) != need:
        raise ParseError("expected %d program(s), got %d" % (need, len(texts)))
    if args.atoms:
        alphabet = Alphabet(_split_atoms(args.atoms))
        return [parse_program(t, alphabet) for t in texts]
    first = [parse_program(t) for t in texts]
    if len(first) == 1:
        return first
    names = sorted({a for p in first for a in p.alphabet.atoms})
    alphabet = Alphabet(tuple(names))
    return [parse_program(t, alphabet) for t in texts]


def _print_models(models, alphabet, as_json):
    if as_json:
        from .semantics import ModelSet

        ms = models if hasattr(models, "models") else ModelSet(alphabet.n, models)
        print(json.dumps(modelset_to_json(ms, alphabet), indent=2))
    else:
        items = sorted(models.models if hasattr(models, "models") else models)
        for y in items:
            print(alphabet.fmt(y))


def _print_program(program, as_json):
    if as_json:
        print(json.dumps({
            "atoms": list(program.alphabet.atoms),
            "class": classify(program),
            "program": render_program(program),
        }, indent=2))
    else:
        sys.stdout.write(render_program(program))


def _show_result(seset, alphabet, args):
    if args.show == "se-models":
        print(json.dumps(seset_to_json(seset, alphabet), indent=2))
        return 0
    if args.show == "answer-sets":
        _print_models(answer_sets_via_se(seset), alphabet, args.json)
        return 0
    prog = synthesize(seset, args.cls, alphabet)
    _print_program(prog, args.json)
    return 0


def _cmd_models(args):
    sources = []
    for path in args.files:
        with open(path) as fh:
            kind = "formula" if path.endswith(".fml") else "program"
            sources.append((kind, fh.read()))
    sources.extend(("program", t) for t in args.rules or [])
    sources.extend(("formula", t) for t in args.formulas or [])
    if len(sources) != 1:
        raise ParseError("expected exactly one input, got %d" % len(sources))
    kind, text = sources[0]
    alphabet = Alphabet(_split_atoms(args.atoms)) if args.atoms else None
    if kind == "formula":
        ms, alphabet = parse_formula(text, alphabet)
    else:
        program = parse_program(text, alphabet)
        alphabet = program.alphabet
        ms = classical_models(program)
    _print_models(ms, alphabet, args.json)
    return 0


def _cmd_answer_sets(args):
    (program,) = _gather_programs(args, 1)
    _print_models(answer_sets(program), program.alphabet, args.json)
    return 0


def _cmd_se_models(args):
    (program,) = _gather_programs(args, 1)
    print(json.dumps(seset_to_json(se_models(program), program.alphabet),
                     indent=2))
    return 0


def _cmd_expand(args):
    p, q = _gather_programs(args, 2)
    out = se_models(p) & se_models(q)
    if args.cls is None:
        args.cls = dominant_class(classify(p), classify(q))
    return _show_result(out, p.alphabet, args)


def _cmd_revise(args):
    p, q = _gather_programs(args, 2)
    op = operator_from_spec(args.op)
    out = op.revise_sets(se_models(p), se_models(q))
    if args.cls is None:
        args.cls = GLP
    return _show_result(out, p.alphabet, args)


def _cmd_check(args):
    if args.op in PROP_SPECS:
        op = drastic_operator() if args.op == "drastic" else dalal_operator()
        if args.exhaustive:
            reports = check_km(op, n=2, mode="exhaustive")
        else:
            reports = check_km(op, n=args.n, mode="seeded", seed=args.seed,
                               samples=args.count or 2000)
    else:
        op = operator_from_spec(args.op)
        if args.exhaustive:
            reports = check_ra(op, n=2, mode="exhaustive")
        else:
            reports = check_ra(op, n=args.n, mode="seeded", seed=args.seed,
                               samples=args.count or 10000)
    if args.json:
        print(json.dumps([{
            "postulate": r.postulate,
            "passed": r.passed,
            "cases": r.cases,
            "witness": r.witness,
        } for r in reports], indent=2))
    else:
        for r in reports:
            print(r.row())
    return 0 if all(r.passed for r in reports) else 1


def _cmd_extract(args):
    (program,) = _gather_programs(args, 1)
    op = operator_from_spec(args.op)
    try:
        assignment = extract_assignment(op, program)
    except ExtractionError as exc:
        print("extraction failed: %s" % exc, file=sys.stderr)
        return 1
    print(json.dumps(assignment_to_json(assignment, program), indent=2))
    return 0


def _cmd_synthesize(args):
    with open(args.file) as fh:
        seset, alphabet = seset_from_json(json.load(fh))
    prog = synthesize(seset, args.cls, alphabet)
    _print_program(prog, args.json)
    return 0


def _cmd_compare(args):
    p, q = _gather_programs(args, 2)
    sp, sq = se_models(p), se_models(q)
    equivalent = sp.pairs == sq.pairs
    info = {
        "atoms": list(p.alphabet.atoms),
        "classes": [classify(p), classify(q)],
        "flags": [se_set_properties(sp), se_set_properties(sq)],
        "strongly_equivalent": equivalent,
        "se_subset_left_right": sp.pairs <= sq.pairs,
        "se_subset_right_left": sq.pairs <= sp.pairs,
        "same_classical_models": sp.mod() == sq.mod(),
        "same_answer_sets": answer_sets_via_se(sp) == answer_sets_via_se(sq),
    }
    if args.json:
        print(json.dumps(info, indent=2))
    else:
        print("classes: %s / %s" % tuple(info["classes"]))
        print("strongly equivalent: %s" % ("yes" if equivalent else "no"))
        print("SE(P) <= SE(Q): %s" % ("yes" if info["se_subset_left_right"] else "no"))
        print("SE(Q) <= SE(P): %s" % ("yes" if info["se_subset_right_left"] else "no"))
        print("same classical models: %s"
              % ("yes" if info["same_classical_models"] else "no"))
        print("same answer sets: %s"
              % ("yes" if info["same_answer_sets"] else "no"))
    return 0 if equivalent else 1


def _add_inputs(sub, with_formula=False):
    sub.add_argument("files", nargs="*", metavar="FILE",
                     help="program file (.lp)"
                          + (" or formula file (.fml)" if with_formula else ""))
    sub.add_argument("-e", "--rules", action="append", metavar="RULES",
                     help="inline program text (repeatable)")
    if with_formula:
        sub.add_argument("-f", "--formula", dest="formulas", action="append",
                         metavar="FORMULA", help="inline formula text")
    sub.add_argument("--atoms", metavar="A,B,...",
                     help="fix the alphabet instead of inferring it")


def _add_show(sub):
    sub.add_argument("--show", choices=("program", "se-models", "answer-sets"),
                     default="program", help="what to print (default program)")
    sub.add_argument("--class", dest="cls", choices=(GLP, DLP, NLP),
                     default=None,
                     help="program class for synthesized output")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="se-revise",
        description="Belief revision of logic programs on their SE models.")
    parser.add_argument("--json", action="store_true",
                        help="JSON output where text is the default")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("models", help="classical models of a program or formula")
    _add_inputs(sub, with_formula=True)
    sub.set_defaults(func=_cmd_models)

    sub = subs.add_parser("answer-sets", help="answer sets of a program")
    _add_inputs(sub)
    sub.set_defaults(func=_cmd_answer_sets)

    sub = subs.add_parser("se-models", help="SE models of a program (JSON)")
    _add_inputs(sub)
    sub.set_defaults(func=_cmd_se_models)

    sub = subs.add_parser("expand", help="expansion of two programs")
    _add_inputs(sub)
    _add_show(sub)
    sub.set_defaults(func=_cmd_expand)

    sub = subs.add_parser("revise", help="revise the first program by the second")
    _add_inputs(sub)
    _add_show(sub)
    sub.add_argument("--op", required=True,
                     help="operator: %s or parted:PATH" % ", ".join(OPERATOR_SPECS))
    sub.set_defaults(func=_cmd_revise)

    sub = subs.add_parser("check", help="run the rationality postulates")
    sub.add_argument("--op", required=True,
                     help="LP operator (%s, parted:PATH) or propositional "
                          "operator (%s)" % (", ".join(OPERATOR_SPECS),
                                             ", ".join(PROP_SPECS)))
    sub.add_argument("--exhaustive", action="store_true",
                     help="every case over two atoms instead of sampling")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--count", type=int, default=None,
                     help="number of sampled cases")
    sub.add_argument("--n", type=int, default=3,
                     help="alphabet size for sampling (default 3)")
    sub.set_defaults(func=_cmd_check)

    sub = subs.add_parser("extract",
                          help="probe an operator for its assignment at a program")
    _add_inputs(sub)
    sub.add_argument("--op", required=True)
    sub.set_defaults(func=_cmd_extract)

    sub = subs.add_parser("synthesize",
                          help="build a program from an SE set (JSON file)")
    sub.add_argument("file", metavar="FILE.json")
    sub.add_argument("--class", dest="cls", choices=(GLP, DLP, NLP),
                     default=GLP)
    sub.set_defaults(func=_cmd_synthesize)

    sub = subs.add_parser("compare", help="compare two programs semantically")
    _add_inputs(sub)
    sub.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, AlphabetError, AssignmentError, ValueError,
            OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
