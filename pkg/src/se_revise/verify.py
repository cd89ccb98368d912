"""Postulate checking, assignment extraction and witness search.

check_km and check_ra run the six rationality postulates against a
propositional or LP revision operator, either exhaustively over two
atoms or on seeded random samples over wider alphabets.  The syntax
independence postulates are exercised for real: formulas are round
tripped through their rendered text, programs through a rule-level
mutation that recomputes SE models from scratch.

extract_assignment recovers the parted assignment behind a rational
operator by probing it with one and two point programs, and the
compliant_* functions rebuild the equivalent single-preorder form over
SE pairs in three inequivalent ways.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .propositional import TotalPreorder, to_dnf
from .semantics import (
    COMPLETE,
    HI_CLOSED,
    ModelSet,
    SESet,
    answer_sets_via_se,
    closure,
    proper_submasks,
    se_models,
    classical_models,
    submasks,
    synthesize,
)
from .revision import TableAssignment
from .syntax import DLP, GLP, Alphabet, Program, Rule, parse_formula


class ExtractionError(Exception):
    """Probing found an order that is not a total preorder."""


@dataclass
class PostulateReport:
    postulate: str
    passed: bool
    cases: int
    witness: str = ""

    def row(self):
        verdict = "pass" if self.passed else "FAIL"
        out = "%-4s %s  cases=%d" % (self.postulate, verdict, self.cases)
        if self.witness:
            out += "  " + self.witness
        return out


def _fmt_models(alphabet, models):
    return "{%s}" % ", ".join(alphabet.fmt(m) for m in sorted(models))


def _fmt_pairs(alphabet, pairs):
    return "{%s}" % ", ".join(
        "(%s,%s)" % (alphabet.fmt(h), alphabet.fmt(t))
        for h, t in sorted(pairs, key=lambda p: (p[1], p[0])))


# ---------------------------------------------------------------------------
# propositional postulates


def check_km(op, n=2, mode="exhaustive", seed=0, samples=2000):
    """The six rationality postulates for a propositional operator.

    Exhaustive mode walks every model set over n atoms (all pairs, and
    all triples for the two conjunction postulates); it is sized for
    n <= 2.  Seeded mode draws random triples.  The syntax independence
    postulate re-presents both operands through rendered DNF text.
    """
    alphabet = Alphabet.default(n)
    size = 1 << n

    def ms(bits):
        return ModelSet(n, (m for m in range(size) if bits >> m & 1))

    if mode == "exhaustive":
        if n > 2:
            raise ValueError("exhaustive propositional checking is sized "
                             "for at most 2 atoms")
        universe = [ms(bits) for bits in range(1 << size)]
        triples = None
    elif mode == "seeded":
        rng = random.Random(seed)
        top = 1 << size
        triples = [(ms(rng.randrange(top)), ms(rng.randrange(top)),
                    ms(rng.randrange(top))) for _ in range(samples)]
        universe = None
    else:
        raise ValueError("unknown mode %r" % (mode,))

    reports = {name: PostulateReport(name, True, 0)
               for name in ("R1", "R2", "R3", "R4", "R5", "R6")}

    def fail(name, text):
        rep = reports[name]
        if rep.passed:
            rep.passed = False
            rep.witness = text

    def wit(phi, psi):
        return "phi=%s psi=%s" % (_fmt_models(alphabet, phi.models),
                                  _fmt_models(alphabet, psi.models))

    def check_pair(phi, psi):
        out = op.revise(phi, psi)
        reports["R1"].cases += 1
        if not out.models <= psi.models:
            fail("R1", wit(phi, psi))
        both = phi & psi
        reports["R2"].cases += 1
        if both.models and out.models != both.models:
            fail("R2", wit(phi, psi))
        reports["R3"].cases += 1
        if psi.models and not out.models:
            fail("R3", wit(phi, psi))
        reports["R4"].cases += 1
        phi2, _ = parse_formula(to_dnf(phi, alphabet), alphabet)
        psi2, _ = parse_formula(to_dnf(psi, alphabet), alphabet)
        if op.revise(phi2, psi2).models != out.models:
            fail("R4", wit(phi, psi))
        return out

    def check_triple(phi, psi1, psi2, out1):
        lhs = out1 & psi2
        rhs = op.revise(phi, psi1 & psi2)
        reports["R5"].cases += 1
        reports["R6"].cases += 1
        text = "phi=%s psi1=%s psi2=%s" % (
            _fmt_models(alphabet, phi.models),
            _fmt_models(alphabet, psi1.models),
            _fmt_models(alphabet, psi2.models))
        if not lhs.models <= rhs.models:
            fail("R5", text)
        if lhs.models and not rhs.models <= lhs.models:
            fail("R6", text)

    if mode == "exhaustive":
        results = {}
        for phi in universe:
            for psi in universe:
                results[phi.models, psi.models] = check_pair(phi, psi)
        for phi in universe:
            for psi1 in universe:
                out1 = results[phi.models, psi1.models]
                for psi2 in universe:
                    check_triple(phi, psi1, psi2, out1)
    else:
        for phi, psi1, psi2 in triples:
            out1 = check_pair(phi, psi1)
            check_triple(phi, psi1, psi2, out1)

    return [reports[name] for name in ("R1", "R2", "R3", "R4", "R5", "R6")]


# ---------------------------------------------------------------------------
# well-defined SE set enumeration and sampling


def enumerate_well_defined(n):
    """Every well-defined SE set over n atoms; 162 of them for n = 2.
    Sized for n <= 2, the count explodes beyond that."""
    if n > 2:
        raise ValueError("enumeration is sized for at most 2 atoms")
    accs = [[]]
    for y in range(1 << n):
        subs = list(proper_submasks(y))
        options = [[]]
        for hbits in range(1 << len(subs)):
            options.append([(y, y)] + [(subs[i], y)
                                       for i in range(len(subs))
                                       if hbits >> i & 1])
        accs = [acc + opt for acc in accs for opt in options]
    return [SESet(n, pairs) for pairs in accs]


def sample_well_defined(rng, n):
    """One random well-defined SE set: each world joins the diagonal with
    probability one half, then offers each proper subset as a here-part
    with probability one half."""
    pairs = []
    for y in range(1 << n):
        if rng.random() < 0.5:
            pairs.append((y, y))
            pairs.extend((x, y) for x in proper_submasks(y)
                         if rng.random() < 0.5)
    return SESet(n, pairs)


def sample_programs(alphabet, cls=GLP, seed=0, count=10):
    """Deterministic random programs of a class: sampled well-defined SE
    sets, closed as needed for the class, then synthesized."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        s = sample_well_defined(rng, alphabet.n)
        if cls != GLP:
            s = closure(s, COMPLETE if cls == DLP else HI_CLOSED)
        out.append(synthesize(s, cls, alphabet))
    return out


# ---------------------------------------------------------------------------
# LP postulates


def _se_taut_rule(alphabet):
    # first atom heads a rule whose body is the whole alphabet: true in
    # every SE interpretation, so adding it must not change anything
    return Rule(1, 0, alphabet.full, 0)


def _mutate(seset, alphabet, taut):
    """An independently recomputed copy of the SE set: synthesize, append
    the tautological rule, rederive SE models from the rules."""
    prog = synthesize(seset, GLP, alphabet)
    return se_models(Program(alphabet, prog.rules + (taut,)))


def check_ra(op, n=2, mode="exhaustive", seed=0, samples=10000):
    """The six rationality postulates for an LP operator on SE sets.

    Exhaustive mode enumerates all well-defined SE sets over two atoms
    and checks every pair (RA1 - RA4) and every triple (RA5, RA6),
    encoding SE sets as bitmasks so the triple loop stays cheap; a triple
    is skipped as trivially fine when the left hand side of RA5 is empty,
    which is also the guard of RA6.  Seeded mode draws random triples of
    well-defined sets over n atoms.  RA4 rebuilds both operands from
    rendered rules plus a tautological rule and rederives their SE models
    from scratch, so semantic keying is tested against real syntax.
    """
    alphabet = Alphabet.default(n)
    taut = _se_taut_rule(alphabet)
    reports = {name: PostulateReport(name, True, 0)
               for name in ("RA1", "RA2", "RA3", "RA4", "RA5", "RA6")}

    def fail(name, text):
        rep = reports[name]
        if rep.passed:
            rep.passed = False
            rep.witness = text

    if mode == "exhaustive":
        if n != 2:
            raise ValueError("exhaustive LP checking is sized for 2 atoms")
        sets = enumerate_well_defined(n)
        count = len(sets)
        slots = [(x, y) for y in range(1 << n) for x in submasks(y)]
        slot_idx = {p: i for i, p in enumerate(slots)}

        def mask_of(s):
            m = 0
            for p in s.pairs:
                m |= 1 << slot_idx[p]
            return m

        masks = [mask_of(s) for s in sets]
        by_mask = {m: i for i, m in enumerate(masks)}

        def wit(i, j, k=None):
            text = "P=%s Q=%s" % (_fmt_pairs(alphabet, sets[i].pairs),
                                  _fmt_pairs(alphabet, sets[j].pairs))
            if k is not None:
                text += " R=%s" % _fmt_pairs(alphabet, sets[k].pairs)
            return text

        # operator results for every pair, plus RA1 - RA3 on the way
        res_mask = [[0] * count for _ in range(count)]
        for i, sp in enumerate(sets):
            row = res_mask[i]
            for j, sq in enumerate(sets):
                out = op.revise_sets(sp, sq)
                if not out.well_defined:
                    fail("RA1", wit(i, j) + " (result is not the SE set "
                         "of any program)")
                m = mask_of(out)
                row[j] = m
                reports["RA1"].cases += 1
                if m & ~masks[j]:
                    fail("RA1", wit(i, j))
                reports["RA2"].cases += 1
                both = masks[i] & masks[j]
                if both and m != both:
                    fail("RA2", wit(i, j))
                reports["RA3"].cases += 1
                if masks[j] and not m:
                    fail("RA3", wit(i, j))

        # RA4: operands rebuilt from mutated rules, SE models recomputed
        mutants = [_mutate(s, alphabet, taut) for s in sets]
        for i, sp in enumerate(mutants):
            row = res_mask[i]
            for j, sq in enumerate(mutants):
                reports["RA4"].cases += 1
                if mask_of(op.revise_sets(sp, sq)) != row[j]:
                    fail("RA4", wit(i, j))

        # intersection index table for the triple loop
        inter = [[by_mask[mj & mk] for mk in masks] for mj in masks]

        ra5, ra6 = reports["RA5"], reports["RA6"]
        for i in range(count):
            row = res_mask[i]
            for j in range(count):
                rm = row[j]
                ra5.cases += count
                ra6.cases += count
                if not rm:
                    continue
                inter_j = inter[j]
                for k in range(count):
                    lhs = rm & masks[k]
                    if not lhs:
                        continue
                    rhs = row[inter_j[k]]
                    if lhs & ~rhs and ra5.passed:
                        fail("RA5", wit(i, j, k))
                    if rhs & ~lhs and ra6.passed:
                        fail("RA6", wit(i, j, k))
    elif mode == "seeded":
        rng = random.Random(seed)

        def wit(*ses):
            names = ("P", "Q", "R")
            return " ".join("%s=%s" % (nm, _fmt_pairs(alphabet, s.pairs))
                            for nm, s in zip(names, ses))

        for _ in range(samples):
            sp = sample_well_defined(rng, n)
            sq = sample_well_defined(rng, n)
            sr = sample_well_defined(rng, n)
            out = op.revise_sets(sp, sq)
            reports["RA1"].cases += 1
            if not out.well_defined:
                fail("RA1", wit(sp, sq) + " (result is not the SE set of "
                     "any program)")
            if not out.pairs <= sq.pairs:
                fail("RA1", wit(sp, sq))
            reports["RA2"].cases += 1
            both = sp & sq
            if both and out != both:
                fail("RA2", wit(sp, sq))
            reports["RA3"].cases += 1
            if sq and not out:
                fail("RA3", wit(sp, sq))
            reports["RA4"].cases += 1
            if op.revise_sets(_mutate(sp, alphabet, taut),
                              _mutate(sq, alphabet, taut)) != out:
                fail("RA4", wit(sp, sq))
            reports["RA5"].cases += 1
            reports["RA6"].cases += 1
            lhs = out & sr
            if lhs:
                rhs = op.revise_sets(sp, sq & sr)
                if not lhs.pairs <= rhs.pairs:
                    fail("RA5", wit(sp, sq, sr))
                if not rhs.pairs <= lhs.pairs:
                    fail("RA6", wit(sp, sq, sr))
    else:
        raise ValueError("unknown mode %r" % (mode,))

    return [reports[name]
            for name in ("RA1", "RA2", "RA3", "RA4", "RA5", "RA6")]


# ---------------------------------------------------------------------------
# assignment extraction


def extract_assignment(op, program):
    """Recover the parted assignment of a rational operator at one program.

    The preorder comes from two-point probes on the diagonal: Y is below
    Y' exactly when Y survives revision by a program whose worlds are Y
    and Y'.  The here-sets come from probes with a single off-diagonal
    pair.  Raises ExtractionError when the probed order is not a total
    preorder, which happens for operators outside the rational class.
    """
    alphabet = program.alphabet
    n = alphabet.n
    size = 1 << n
    sp = se_models(program)
    leq = [[False] * size for _ in range(size)]
    for y in range(size):
        for z in range(size):
            probe = SESet(n, ((y, y), (z, z)))
            leq[y][z] = y in op.revise_sets(sp, probe).mod().models
    for y in range(size):
        for z in range(size):
            if not (leq[y][z] or leq[z][y]):
                raise ExtractionError(
                    "probed order is not total: %s vs %s"
                    % (alphabet.fmt(y), alphabet.fmt(z)))
    for a in range(size):
        for b in range(size):
            if not leq[a][b]:
                continue
            for c in range(size):
                if leq[b][c] and not leq[a][c]:
                    raise ExtractionError(
                        "probed order is not transitive on %s, %s, %s"
                        % (alphabet.fmt(a), alphabet.fmt(b), alphabet.fmt(c)))
    rank = {}
    remaining = set(range(size))
    level = 0
    while remaining:
        layer = {y for y in remaining
                 if all(leq[y][z] for z in remaining)}
        if not layer:
            raise ExtractionError("probed order has no minimal layer")
        for y in layer:
            rank[y] = level
        remaining -= layer
        level += 1
    heres = {}
    for y in range(size):
        got = set()
        for x in submasks(y):
            probe = SESet(n, ((x, y), (y, y)))
            if (x, y) in op.revise_sets(sp, probe).pairs:
                got.add(x)
        heres[y] = frozenset(got)
    return TableAssignment(classical_models(program), sp,
                           TotalPreorder(n, rank), heres)


# ---------------------------------------------------------------------------
# the single-preorder form over SE pairs


class CompliantPreorder:
    """A total preorder over all SE pairs over n atoms, with normalized
    levels."""

    __slots__ = ("n", "name", "rank")

    def __init__(self, n, rank, name="compliant"):
        slots = [(x, y) for y in range(1 << n) for x in submasks(y)]
        if set(rank) != set(slots):
            raise ValueError("rank table must cover all %d SE pairs"
                             % len(slots))
        levels = {lv: i for i, lv in enumerate(sorted(set(rank.values())))}
        self.n = n
        self.name = name
        self.rank = {p: levels[lv] for p, lv in rank.items()}

    def level(self, pair):
        return self.rank[pair]

    def leq(self, a, b):
        return self.rank[a] <= self.rank[b]

    def min_of(self, pairs):
        best = None
        out = []
        for p in pairs:
            r = self.rank[p]
            if best is None or r < best:
                best = r
                out = [p]
            elif r == best:
                out.append(p)
        return frozenset(out)


def compliant_revise_sets(pre, sq):
    """Revision in the single-preorder form: the minimal SE pairs of the
    new program."""
    return SESet(sq.n, pre.min_of(sq.pairs))


def validate_compliant(pre, program):
    """The conditions of the single-preorder form at one program:
    (1) SE pairs of the program share a level, (2) they sit strictly
    below every other pair, (4) within a world the diagonal pair is
    lowest.  The keying condition (3) is structural for preorders built
    from semantics and is not checked here."""
    alphabet = program.alphabet
    sp = se_models(program)
    if pre.n != alphabet.n:
        raise ValueError("preorder width does not match the program")
    ordered = sorted(sp.pairs, key=lambda p: (p[1], p[0]))
    if ordered:
        base = pre.level(ordered[0])
        for p in ordered[1:]:
            if pre.level(p) != base:
                raise ExtractionError(
                    "condition (1) fails: SE pairs on different levels")
        for p in pre.rank:
            if p not in sp.pairs and pre.level(p) <= base:
                raise ExtractionError(
                    "condition (2) fails: (%s,%s) is not strictly above the "
                    "SE pairs" % (alphabet.fmt(p[0]), alphabet.fmt(p[1])))
    for x, y in pre.rank:
        if not pre.leq((y, y), (x, y)):
            raise ExtractionError(
                "condition (4) fails: (%s,%s) sits below its diagonal"
                % (alphabet.fmt(x), alphabet.fmt(y)))


COMPLIANT_VARIANTS = ("baseline", "spread", "interleaved")


def compliant_from_parted(assignment, program, variant="baseline"):
    """Fold a parted assignment at one program into one preorder over SE
    pairs.  Selected pairs track the level of their world; unselected
    pairs go to a single top level (baseline), to a top band ordered
    like their world (spread), or right above their world's level
    (interleaved).  All three induce the same revision results, which
    shows the single-preorder form is not unique.
    """
    alphabet = program.alphabet
    n = alphabet.n
    pre = assignment.preorder(classical_models(program))
    se = se_models(program)
    top = max(pre.level(y) for y in range(1 << n))
    rank = {}
    for y in range(1 << n):
        r = pre.level(y)
        hs = assignment.heres(se, y)
        for x in submasks(y):
            if variant == "baseline":
                rank[x, y] = r if x in hs else top + 1
            elif variant == "spread":
                rank[x, y] = r if x in hs else top + 1 + r
            elif variant == "interleaved":
                rank[x, y] = 2 * r if x in hs else 2 * r + 1
            else:
                raise ValueError("unknown variant %r" % (variant,))
    return CompliantPreorder(n, rank, variant)


def compliant_variants(assignment, program):
    return [compliant_from_parted(assignment, program, v)
            for v in COMPLIANT_VARIANTS]


def distinguishing_pair(pre1, pre2):
    """Two SE pairs the preorders order differently, or None."""
    for a in pre1.rank:
        for b in pre1.rank:
            if pre1.leq(a, b) != pre2.leq(a, b):
                return a, b
    return None


# ---------------------------------------------------------------------------
# behavioral witnesses


def _inconsistent_pairs(sets):
    for sp in sets:
        for sq in sets:
            if not sp & sq:
                yield sp, sq


def skeptical_violation_witness(op, sets=None, n=2):
    """A pair of mutually inconsistent programs where revision admits an
    answer set the new program does not have; None for operators of the
    skeptical family."""
    if sets is None:
        sets = enumerate_well_defined(n)
    for sp, sq in _inconsistent_pairs(sets):
        out = op.revise_sets(sp, sq)
        extra = answer_sets_via_se(out) - answer_sets_via_se(sq)
        if extra:
            return sp, sq, min(extra)
    return None


def brave_violation_witness(op, prop_op, sets=None, n=2):
    """A pair of mutually inconsistent programs where the revised answer
    sets differ from the propositional revision of the classical models;
    None for operators of the brave family."""
    if sets is None:
        sets = enumerate_well_defined(n)
    for sp, sq in _inconsistent_pairs(sets):
        out = op.revise_sets(sp, sq)
        expected = prop_op.revise(sp.mod(), sq.mod()).models
        if answer_sets_via_se(out) != expected:
            return sp, sq
    return None


def lattice_violation_witness(op1, op2, sets=None, n=2):
    """A pair of programs where the first operator's answer sets are not
    contained in the second's; None when op1 sits below op2."""
    if sets is None:
        sets = enumerate_well_defined(n)
    for sp in sets:
        for sq in sets:
            out1 = answer_sets_via_se(op1.revise_sets(sp, sq))
            out2 = answer_sets_via_se(op2.revise_sets(sp, sq))
            extra = out1 - out2
            if extra:
                return sp, sq, min(extra)
    return None


def operator_difference_witness(op1, op2, sets=None, n=2):
    """A pair of programs the two operators revise differently, or None."""
    if sets is None:
        sets = enumerate_well_defined(n)
    for sp in sets:
        for sq in sets:
            if op1.revise_sets(sp, sq) != op2.revise_sets(sp, sq):
                return sp, sq
    return None
