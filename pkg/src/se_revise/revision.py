"""Revision of logic programs on their SE models.

All operators act on explicit SE model sets and only get wrapped into
programs at the edges (via synthesize).  The module provides:

* expansion and the drastic operator,
* the cardinality operator (nested Hamming minimization),
* operators assembled from a propositional operator and a selection
  function, including the skeptical and brave families,
* operators assembled from a parted assignment (a faithful preorder
  keyed on classical models plus a here-selection keyed on SE models),
* validation of both assignment shapes against their defining
  conditions, with labelled error messages.
"""

from __future__ import annotations

import json

from .propositional import (
    TotalPreorder,
    dalal_operator,
    drastic_operator,
)
from .semantics import (
    ModelSet,
    SESet,
    _same_alphabet,
    classical_models,
    se_models,
    submasks,
    synthesize,
)
from .syntax import (
    CLASS_RANK,
    DLP,
    GLP,
    NLP,
    Alphabet,
    AlphabetError,
    classify,
    parse_program,
)


class AssignmentError(Exception):
    """An assignment or selection function violating its conditions."""


def dominant_class(c1, c2):
    """The smallest program class containing both arguments."""
    return c1 if CLASS_RANK[c1] >= CLASS_RANK[c2] else c2


# ---------------------------------------------------------------------------
# expansion


def expand_sets(s1, s2):
    """SE models of the expansion: plain intersection."""
    return s1 & s2


def expand(p, q):
    """The expansion P + Q as a program of the joined class.

    Intersection preserves all three structural SE set properties, so
    the result is always expressible in the dominant input class.
    """
    _same_alphabet(p, q)
    cls = dominant_class(classify(p), classify(q))
    return synthesize(se_models(p) & se_models(q), cls, p.alphabet)


# ---------------------------------------------------------------------------
# selection functions


class SelectionFunction:
    """Maps each interpretation Y to a set of candidate here-parts.

    Required shape: Y is in f(Y) and every member of f(Y) is a subset
    of Y.  Violations surface on first use of the offending Y.
    """

    __slots__ = ("name", "_fn", "_cache")

    def __init__(self, name, fn):
        self.name = name
        self._fn = fn
        self._cache = {}

    def sets(self, y):
        got = self._cache.get(y)
        if got is None:
            got = frozenset(self._fn(y))
            if y not in got:
                raise AssignmentError(
                    "selection %r does not keep %d in f(%d)" % (self.name, y, y))
            for x in got:
                if x & ~y:
                    raise AssignmentError(
                        "selection %r puts the non-subset %d into f(%d)"
                        % (self.name, x, y))
            self._cache[y] = got
        return got

    def __repr__(self):
        return "SelectionFunction(%r)" % self.name


def skeptical_selection():
    """All subsets of Y; the lattice infimum."""
    return SelectionFunction("skeptical", submasks)


def brave_selection():
    """Only Y itself; the lattice supremum."""
    return SelectionFunction("brave", lambda y: (y,))


def lattice_leq(f1, f2, n):
    """Order on selection functions over n atoms: pointwise containment
    the other way around, so skeptical is bottom and brave is top.  The
    induced operators then satisfy answer-set inclusion left to right."""
    return all(f2.sets(y) <= f1.sets(y) for y in range(1 << n))


# ---------------------------------------------------------------------------
# parted assignments


class PartedAssignment:
    """A preorder part keyed on classical models plus a here part keyed
    on SE models.  Keying on semantics rather than syntax makes the two
    independence conditions (same models give the same preorder, same
    SE models give the same here-sets) structural."""

    def preorder(self, mod):
        raise NotImplementedError

    def heres(self, se, y):
        raise NotImplementedError


class FunctionAssignment(PartedAssignment):
    __slots__ = ("name", "_preorder_fn", "_heres_fn")

    def __init__(self, preorder_fn, heres_fn, name="assignment"):
        self.name = name
        self._preorder_fn = preorder_fn
        self._heres_fn = heres_fn

    def preorder(self, mod):
        return self._preorder_fn(mod)

    def heres(self, se, y):
        return frozenset(self._heres_fn(se, y))


class TableAssignment(PartedAssignment):
    """An assignment pinned to one program's semantics, read from a table.

    Using it with a program whose models or SE models differ from the
    pinned ones is an error: the table does not define the assignment
    there.
    """

    __slots__ = ("mod", "se", "_preorder", "_heres")

    def __init__(self, mod, se, preorder, heres):
        if mod != se.mod():
            raise AssignmentError(
                "pinned models do not match the diagonal of the pinned SE set")
        self.mod = mod
        self.se = se
        self._preorder = preorder
        self._heres = {y: frozenset(hs) for y, hs in heres.items()}
        for y in range(1 << se.n):
            if y not in self._heres:
                raise AssignmentError("here table misses interpretation %d" % y)

    def preorder(self, mod):
        if mod != self.mod:
            raise AssignmentError(
                "table assignment is pinned to a different set of models")
        return self._preorder

    def heres(self, se, y):
        if se != self.se:
            raise AssignmentError(
                "table assignment is pinned to a different SE set")
        return self._heres[y]


def _interp_key(alphabet, y):
    return ",".join(alphabet.names(y))


def _interp_from_key(alphabet, key):
    return alphabet.mask([s for s in key.split(",") if s])


def assignment_from_json(obj):
    """Load a table assignment together with the program it is pinned to.

    Expected shape::

        {"atoms": ["p", "q"],
         "program": "p :- not q. false :- p, q.",
         "preorder": {"p": 0, "q": 0, "p,q": 1, "": 2},
         "heres": {"": [""], "p": ["p"], "q": ["", "q"], "p,q": ["p", "p,q"]}}

    Interpretation keys are comma-joined atom names, "" for the empty
    interpretation.
    """
    alphabet = Alphabet(tuple(obj["atoms"]))
    program = parse_program(obj["program"], alphabet)
    rank = {_interp_from_key(alphabet, k): int(v)
            for k, v in obj["preorder"].items()}
    preorder = TotalPreorder(alphabet.n, rank)
    heres = {_interp_from_key(alphabet, k): frozenset(
                 _interp_from_key(alphabet, s) for s in hs)
             for k, hs in obj["heres"].items()}
    assignment = TableAssignment(
        classical_models(program), se_models(program), preorder, heres)
    return assignment, program


def assignment_to_json(assignment, program):
    """Tabulate an assignment at one program, in assignment_from_json shape."""
    from .syntax import render_program

    alphabet = program.alphabet
    mod = classical_models(program)
    se = se_models(program)
    pre = assignment.preorder(mod)
    return {
        "atoms": list(alphabet.atoms),
        "program": render_program(program),
        "preorder": {_interp_key(alphabet, y): pre.level(y)
                     for y in range(1 << alphabet.n)},
        "heres": {_interp_key(alphabet, y):
                  [_interp_key(alphabet, x)
                   for x in sorted(assignment.heres(se, y))]
                  for y in range(1 << alphabet.n)},
    }


def validate_assignment(assignment, program):
    """Check the defining conditions of a parted assignment at one program.

    Preorder part: (1) models of the program share one level, (2) they
    sit strictly below every non-model.  Here part: (a) Y is in P(Y),
    (b) P(Y) holds subsets of Y only, (c) every SE here-part of Y is in
    P(Y), (d) for classical models Y nothing else is.  The two keying
    conditions, (3) on classical models and (e) on SE models, hold
    structurally for assignments keyed on semantics and are not checked
    here.
    """
    alphabet = program.alphabet
    n = alphabet.n
    mod = classical_models(program)
    se = se_models(program)
    pre = assignment.preorder(mod)
    if pre.n != n:
        raise AssignmentError("preorder width does not match the program")
    models = sorted(mod.models)
    if models:
        base = pre.level(models[0])
        for y in models[1:]:
            if pre.level(y) != base:
                raise AssignmentError(
                    "condition (1) fails: models %s and %s are on different "
                    "levels" % (alphabet.fmt(models[0]), alphabet.fmt(y)))
        for y in range(1 << n):
            if y not in mod.models and pre.level(y) <= base:
                raise AssignmentError(
                    "condition (2) fails: non-model %s is not strictly above "
                    "the models" % alphabet.fmt(y))
    for y in range(1 << n):
        hs = assignment.heres(se, y)
        if y not in hs:
            raise AssignmentError(
                "condition (a) fails: %s missing from its own here-set"
                % alphabet.fmt(y))
        for x in hs:
            if x & ~y:
                raise AssignmentError(
                    "condition (b) fails: %s in the here-set of %s is not a "
                    "subset" % (alphabet.fmt(x), alphabet.fmt(y)))
        missing = se.heres(y) - hs
        if missing:
            raise AssignmentError(
                "condition (c) fails: SE here-part %s of %s is not selected"
                % (alphabet.fmt(min(missing)), alphabet.fmt(y)))
        if y in mod.models:
            extra = hs - se.heres(y)
            if extra:
                raise AssignmentError(
                    "condition (d) fails: %s selected at model %s without "
                    "being an SE here-part"
                    % (alphabet.fmt(min(extra)), alphabet.fmt(y)))


def validate_class_assignment(assignment, program, cls):
    """The extra conditions tying the two parts together inside a class:
    (f) here-sets grow along equal-level subset chains, and for single
    headed programs (g) here-sets are closed under intersection."""
    validate_assignment(assignment, program)
    if cls == GLP:
        return
    alphabet = program.alphabet
    size = 1 << alphabet.n
    pre = assignment.preorder(classical_models(program))
    se = se_models(program)
    hs = {y: assignment.heres(se, y) for y in range(size)}
    for y in range(size):
        for z in range(size):
            if y & ~z == 0 and pre.level(y) == pre.level(z) and not hs[y] <= hs[z]:
                raise AssignmentError(
                    "condition (f) fails: %s is selected at %s but not at the "
                    "equally ranked superset %s"
                    % (alphabet.fmt(min(hs[y] - hs[z])), alphabet.fmt(y),
                       alphabet.fmt(z)))
    if cls == NLP:
        for z in range(size):
            for x in hs[z]:
                for y in hs[z]:
                    if x & y not in hs[z]:
                        raise AssignmentError(
                            "condition (g) fails: here-set of %s holds %s and "
                            "%s but not their intersection"
                            % (alphabet.fmt(z), alphabet.fmt(x),
                               alphabet.fmt(y)))


# ---------------------------------------------------------------------------
# operators


class LPOperator:
    """A named LP revision operator given by its action on SE sets."""

    __slots__ = ("name", "_fn")

    def __init__(self, name, fn):
        self.name = name
        self._fn = fn

    def revise_sets(self, se_p, se_q):
        if se_p.n != se_q.n:
            raise AlphabetError("SE sets over different widths")
        return self._fn(se_p, se_q)

    def revise(self, p, q, cls=GLP):
        """Revise two programs; the result is synthesized in cls."""
        _same_alphabet(p, q)
        out = self.revise_sets(se_models(p), se_models(q))
        return synthesize(out, cls, p.alphabet)

    def __repr__(self):
        return "LPOperator(%r)" % self.name


def class_revise(op, p, q, cls=None):
    """Revise inside a program class: defaults to the joined input class
    and fails when the revised SE set is not expressible there."""
    _same_alphabet(p, q)
    if cls is None:
        cls = dominant_class(classify(p), classify(q))
    out = op.revise_sets(se_models(p), se_models(q))
    return synthesize(out, cls, p.alphabet)


def mc_se(op, p, q, here, there):
    """Model checking: is (here, there) an SE model of the revised program?"""
    _same_alphabet(p, q)
    return (here, there) in op.revise_sets(se_models(p), se_models(q)).pairs


def drastic_lp_sets(sp, sq):
    """Expansion when consistent, otherwise surrender to the new program."""
    both = sp & sq
    return both if both else sq


def drastic_lp_operator():
    return LPOperator("drastic-lp", drastic_lp_sets)


def prop_based_sets(prop_op, selection, sp, sq):
    """Expansion when consistent; otherwise there-parts are filtered by
    the propositional revision of the classical models and here-parts by
    the selection function."""
    both = sp & sq
    if both:
        return both
    keep = prop_op.revise(sp.mod(), sq.mod()).models
    return SESet(sq.n, ((x, y) for x, y in sq.pairs
                        if y in keep and x in selection.sets(y)))


def prop_based_operator(prop_op, selection, name=None):
    if name is None:
        name = "%s:%s" % (selection.name, prop_op.name)
    return LPOperator(
        name, lambda sp, sq: prop_based_sets(prop_op, selection, sp, sq))


def cardinality_sets(sp, sq):
    """The cardinality operator, as nested Hamming minimization.

    There-parts must be models of the new program at minimal distance
    from the old models.  A proper here-part X of such a Y must be a
    subset of Y at minimal distance from the here-parts that the old
    program offers at its models nearest to Y.
    """
    n = sp.n
    dal = dalal_operator()
    keep = dal.revise(sp.mod(), sq.mod()).models
    allowed = {}
    out = []
    for x, y in sq.pairs:
        if y not in keep:
            continue
        if x == y:
            out.append((x, y))
            continue
        got = allowed.get(y)
        if got is None:
            near = dal.revise(ModelSet(n, (y,)), sp.mod()).models
            alpha = ModelSet(n, (h for h, t in sp.pairs if t in near))
            got = dal.revise(alpha, ModelSet(n, submasks(y))).models
            allowed[y] = got
        if x in got:
            out.append((x, y))
    return SESet(n, out)


def cardinality_operator():
    return LPOperator("cardinality", cardinality_sets)


def parted_sets(assignment, sp, sq):
    """The characterization shape: keep SE pairs of the new program whose
    there-part is minimal in the preorder and whose here-part is selected."""
    pre = assignment.preorder(sp.mod())
    mins = pre.min_of(sq.mod().models)
    return SESet(sq.n, ((x, y) for x, y in sq.pairs
                        if y in mins and x in assignment.heres(sp, y)))


def parted_operator(assignment, name="parted"):
    return LPOperator(name, lambda sp, sq: parted_sets(assignment, sp, sq))


OPERATOR_SPECS = (
    "drastic-lp",
    "cardinality",
    "skeptical:drastic",
    "skeptical:dalal",
    "brave:drastic",
    "brave:dalal",
)


def operator_from_spec(spec):
    """Operator lookup for the CLI and the checker.

    Fixed names: drastic-lp, cardinality, skeptical:{drastic,dalal},
    brave:{drastic,dalal}.  parted:PATH loads a table assignment from a
    JSON file; the resulting operator only accepts the pinned program
    on the left.
    """
    if spec == "drastic-lp":
        return drastic_lp_operator()
    if spec == "cardinality":
        return cardinality_operator()
    head, _, tail = spec.partition(":")
    if head in ("skeptical", "brave") and tail in ("drastic", "dalal"):
        selection = skeptical_selection() if head == "skeptical" else brave_selection()
        prop_op = drastic_operator() if tail == "drastic" else dalal_operator()
        return prop_based_operator(prop_op, selection)
    if head == "parted" and tail:
        with open(tail) as fh:
            assignment, _pinned = assignment_from_json(json.load(fh))
        return parted_operator(assignment)
    raise ValueError("unknown operator %r" % (spec,))
