"""HTTP service exposing the core operations.

FastAPI app with pydantic request and response models; the CLI covers
the same ground in-process, this wrapper is for callers that want the
package behind a port (run with: uvicorn se_revise.service:app).
Domain errors (parse failures, alphabet mismatches, unknown operators)
come back as 400 with the message in detail; malformed request bodies
are FastAPI's usual 422.
"""

from __future__ import annotations

import functools
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .propositional import dalal_operator, drastic_operator
from .revision import AssignmentError, dominant_class, operator_from_spec
from .semantics import (
    answer_sets,
    answer_sets_via_se,
    classical_models,
    modelset_to_json,
    se_models,
    se_set_properties,
    seset_from_json,
    seset_to_json,
    synthesize,
)
from .syntax import (
    GLP,
    Alphabet,
    AlphabetError,
    ParseError,
    classify,
    parse_formula,
    parse_program,
    render_program,
)
from .verify import check_km, check_ra

app = FastAPI(
    title="se-revise",
    description="Belief revision of logic programs on their SE models.")

_DOMAIN_ERRORS = (ParseError, AlphabetError, AssignmentError, ValueError,
                  KeyError)


def _api(fn):
    @functools.wraps(fn)
    def wrapper(*a, **k):
        try:
            return fn(*a, **k)
        except _DOMAIN_ERRORS as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
    return wrapper


class ProgramIn(BaseModel):
    rules: str
    atoms: Optional[list[str]] = None


class ModelsIn(BaseModel):
    rules: Optional[str] = None
    formula: Optional[str] = None
    atoms: Optional[list[str]] = None


class PairIn(BaseModel):
    p: str
    q: str
    atoms: Optional[list[str]] = None


class ReviseIn(PairIn):
    op: str
    cls: str = GLP


class ExpandIn(PairIn):
    cls: Optional[str] = None


class CheckIn(BaseModel):
    op: str
    exhaustive: bool = False
    seed: int = 0
    count: Optional[int] = None
    n: int = 3


class SynthesizeIn(BaseModel):
    se: dict
    cls: str = GLP


class ParseOut(BaseModel):
    atoms: list[str]
    cls: str
    rule_count: int
    program: str


class ModelsOut(BaseModel):
    atoms: list[str]
    models: list[list[str]]


class SEOut(BaseModel):
    atoms: list[str]
    pairs: list[dict]
    flags: dict


class ProgramOut(BaseModel):
    atoms: list[str]
    cls: str
    program: str


class ResultOut(ProgramOut):
    se: dict
    answer_sets: list[list[str]]


class ReportOut(BaseModel):
    postulate: str
    passed: bool
    cases: int
    witness: str


class CheckOut(BaseModel):
    all_passed: bool
    reports: list[ReportOut]


class CompareOut(BaseModel):
    atoms: list[str]
    classes: list[str]
    flags: list[dict]
    strongly_equivalent: bool
    se_subset_left_right: bool
    se_subset_right_left: bool
    same_classical_models: bool
    same_answer_sets: bool


def _parse_one(rules, atoms):
    alphabet = Alphabet(tuple(atoms)) if atoms else None
    return parse_program(rules, alphabet)


def _parse_pair(body):
    if body.atoms:
        alphabet = Alphabet(tuple(body.atoms))
        return parse_program(body.p, alphabet), parse_program(body.q, alphabet)
    first = [parse_program(body.p), parse_program(body.q)]
    names = sorted({a for prog in first for a in prog.alphabet.atoms})
    alphabet = Alphabet(tuple(names))
    return parse_program(body.p, alphabet), parse_program(body.q, alphabet)


def _result(seset, alphabet, cls):
    prog = synthesize(seset, cls, alphabet)
    return ResultOut(
        atoms=list(alphabet.atoms),
        cls=classify(prog),
        program=render_program(prog),
        se=seset_to_json(seset, alphabet),
        answer_sets=[list(alphabet.names(y))
                     for y in sorted(answer_sets_via_se(seset))],
    )


@app.post("/parse", response_model=ParseOut)
@_api
def parse(body: ProgramIn):
    prog = _parse_one(body.rules, body.atoms)
    return ParseOut(atoms=list(prog.alphabet.atoms), cls=classify(prog),
                    rule_count=len(prog.rules), program=render_program(prog))


@app.post("/models", response_model=ModelsOut)
@_api
def models(body: ModelsIn):
    if (body.rules is None) == (body.formula is None):
        raise ValueError("provide exactly one of rules or formula")
    alphabet = Alphabet(tuple(body.atoms)) if body.atoms else None
    if body.formula is not None:
        ms, alphabet = parse_formula(body.formula, alphabet)
    else:
        prog = parse_program(body.rules, alphabet)
        alphabet = prog.alphabet
        ms = classical_models(prog)
    return ModelsOut(**modelset_to_json(ms, alphabet))


@app.post("/answer-sets", response_model=ModelsOut)
@_api
def answer_sets_route(body: ProgramIn):
    prog = _parse_one(body.rules, body.atoms)
    return ModelsOut(
        atoms=list(prog.alphabet.atoms),
        models=[list(prog.alphabet.names(y)) for y in sorted(answer_sets(prog))])


@app.post("/se-models", response_model=SEOut)
@_api
def se_models_route(body: ProgramIn):
    prog = _parse_one(body.rules, body.atoms)
    return SEOut(**seset_to_json(se_models(prog), prog.alphabet))


@app.post("/expand", response_model=ResultOut)
@_api
def expand_route(body: ExpandIn):
    p, q = _parse_pair(body)
    cls = body.cls or dominant_class(classify(p), classify(q))
    return _result(se_models(p) & se_models(q), p.alphabet, cls)


@app.post("/revise", response_model=ResultOut)
@_api
def revise_route(body: ReviseIn):
    p, q = _parse_pair(body)
    op = operator_from_spec(body.op)
    out = op.revise_sets(se_models(p), se_models(q))
    return _result(out, p.alphabet, body.cls)


@app.post("/check", response_model=CheckOut)
@_api
def check_route(body: CheckIn):
    if body.op in ("drastic", "dalal"):
        op = drastic_operator() if body.op == "drastic" else dalal_operator()
        if body.exhaustive:
            reports = check_km(op, n=2, mode="exhaustive")
        else:
            reports = check_km(op, n=body.n, mode="seeded", seed=body.seed,
                               samples=body.count or 2000)
    else:
        op = operator_from_spec(body.op)
        if body.exhaustive:
            reports = check_ra(op, n=2, mode="exhaustive")
        else:
            reports = check_ra(op, n=body.n, mode="seeded", seed=body.seed,
                               samples=body.count or 10000)
    return CheckOut(
        all_passed=all(r.passed for r in reports),
        reports=[ReportOut(postulate=r.postulate, passed=r.passed,
                           cases=r.cases, witness=r.witness)
                 for r in reports])


@app.post("/synthesize", response_model=ProgramOut)
@_api
def synthesize_route(body: SynthesizeIn):
    seset, alphabet = seset_from_json(body.se)
    prog = synthesize(seset, body.cls, alphabet)
    return ProgramOut(atoms=list(alphabet.atoms), cls=classify(prog),
                      program=render_program(prog))


@app.post("/compare", response_model=CompareOut)
@_api
def compare_route(body: PairIn):
    p, q = _parse_pair(body)
    sp, sq = se_models(p), se_models(q)
    return CompareOut(
        atoms=list(p.alphabet.atoms),
        classes=[classify(p), classify(q)],
        flags=[se_set_properties(sp), se_set_properties(sq)],
        strongly_equivalent=sp.pairs == sq.pairs,
        se_subset_left_right=sp.pairs <= sq.pairs,
        se_subset_right_left=sq.pairs <= sp.pairs,
        same_classical_models=sp.mod() == sq.mod(),
        same_answer_sets=answer_sets_via_se(sp) == answer_sets_via_se(sq),
    )
