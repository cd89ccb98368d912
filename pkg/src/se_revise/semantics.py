"""Model-theoretic core: classical models, reducts, answer sets and SE
models of logic programs, plus explicit model-set types.

An SE interpretation is a pair (here, there) of interpretations with
here a subset of there.  A pair (X, Y) is an SE model of a program P when
Y satisfies P classically and X satisfies the reduct of P by Y.  Sets of
interpretations and of SE interpretations are small explicit objects, so
everything downstream (revision, checking) works extensionally.
"""

from __future__ import annotations

from .syntax import (Alphabet, AlphabetError, Program, Rule,
                     GLP, DLP, NLP)

COMPLETE = "complete"
HI_CLOSED = "hi_closed"

_SYNTH_REQUIRES = {GLP: "well_defined", DLP: COMPLETE, NLP: HI_CLOSED}


def submasks(y):
    """All subsets of the mask y, from y itself down to 0."""
    x = y
    while True:
        yield x
        if x == 0:
            return
        x = (x - 1) & y


def proper_submasks(y):
    """All strict subsets of the mask y."""
    x = y
    while x:
        x = (x - 1) & y
        yield x
        if x == 0:
            return


class ModelSet:
    """An explicit set of interpretations over n atoms.

    The extensional stand-in for a propositional formula: the empty set
    plays the inconsistent formula, the full set a tautology.
    """

    __slots__ = ("n", "models")

    def __init__(self, n, models=()):
        self.n = n
        ms = frozenset(models)
        full = (1 << n) - 1
        for m in ms:
            if m & ~full:
                raise AlphabetError("interpretation out of range for %d atoms" % n)
        self.models = ms

    @classmethod
    def full_set(cls, n):
        return cls(n, range(1 << n))

    def complement(self):
        return ModelSet(self.n, (y for y in range(1 << self.n) if y not in self.models))

    def __and__(self, other):
        self._check(other)
        return ModelSet(self.n, self.models & other.models)

    def __or__(self, other):
        self._check(other)
        return ModelSet(self.n, self.models | other.models)

    def _check(self, other):
        if self.n != other.n:
            raise AlphabetError("model sets over different widths")

    def __contains__(self, y):
        return y in self.models

    def __iter__(self):
        return iter(sorted(self.models))

    def __len__(self):
        return len(self.models)

    def __bool__(self):
        return bool(self.models)

    def __eq__(self, other):
        return (isinstance(other, ModelSet)
                and self.n == other.n and self.models == other.models)

    def __hash__(self):
        return hash((self.n, self.models))

    def __repr__(self):
        return "ModelSet(%d, %r)" % (self.n, sorted(self.models))


class SESet:
    """An explicit set of SE interpretations over n atoms.

    Structural properties are computed lazily and cached:

    * well_defined: every (X, Y) is accompanied by (Y, Y); exactly the
      sets arising as SE(P) for some program.
    * complete: well defined, and (X, Y) spreads to (X, Z) for every
      larger diagonal world Z; exactly the SE sets of programs without
      head negation.
    * hi_closed: complete and, per there-world, closed under
      intersection of here-parts; exactly the SE sets of programs with
      at most one head atom and no head negation.
    """

    __slots__ = ("n", "pairs", "_props")

    def __init__(self, n, pairs=()):
        self.n = n
        ps = frozenset(pairs)
        full = (1 << n) - 1
        for h, t in ps:
            if t & ~full or h & ~t:
                raise AlphabetError("bad SE pair (%d, %d) over %d atoms" % (h, t, n))
        self.pairs = ps
        self._props = {}

    def sorted_pairs(self):
        """Pairs in the canonical order: by there, then here, as ints."""
        return sorted(self.pairs, key=lambda p: (p[1], p[0]))

    def mod(self):
        """The diagonal: classical models of any program with this SE set."""
        m = self._props.get("mod")
        if m is None:
            m = ModelSet(self.n, (t for h, t in self.pairs if h == t))
            self._props["mod"] = m
        return m

    def heres(self, y):
        return frozenset(h for h, t in self.pairs if t == y)

    @property
    def well_defined(self):
        v = self._props.get("well_defined")
        if v is None:
            v = all((t, t) in self.pairs for _h, t in self.pairs)
            self._props["well_defined"] = v
        return v

    @property
    def complete(self):
        v = self._props.get(COMPLETE)
        if v is None:
            v = self.well_defined
            if v:
                diag = [t for h, t in self.pairs if h == t]
                for h, t in self.pairs:
                    for z in diag:
                        if t & ~z == 0 and (h, z) not in self.pairs:
                            v = False
                            break
                    if not v:
                        break
            self._props[COMPLETE] = v
        return v

    @property
    def hi_closed(self):
        v = self._props.get(HI_CLOSED)
        if v is None:
            v = self.complete
            if v:
                by_there = {}
                for h, t in self.pairs:
                    by_there.setdefault(t, []).append(h)
                for t, hs in by_there.items():
                    for a in hs:
                        for b in hs:
                            if (a & b, t) not in self.pairs:
                                v = False
                                break
                        if not v:
                            break
                    if not v:
                        break
            self._props[HI_CLOSED] = v
        return v

    def __and__(self, other):
        if self.n != other.n:
            raise AlphabetError("SE sets over different widths")
        return SESet(self.n, self.pairs & other.pairs)

    def __contains__(self, pair):
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)

    def __bool__(self):
        return bool(self.pairs)

    def __eq__(self, other):
        return (isinstance(other, SESet)
                and self.n == other.n and self.pairs == other.pairs)

    def __hash__(self):
        return hash((self.n, self.pairs))

    def __repr__(self):
        return "SESet(%d, %r)" % (self.n, self.sorted_pairs())


def se_set_properties(seset):
    """The three structural flags of an SE set, as a dict."""
    return {
        "well_defined": seset.well_defined,
        COMPLETE: seset.complete,
        HI_CLOSED: seset.hi_closed,
    }


# ---------------------------------------------------------------------------
# satisfaction, reducts, answer sets


def rule_satisfied(rule, y):
    """Classical satisfaction of one rule by the interpretation y."""
    if rule.body_pos & ~y or rule.body_neg & y:
        return True  # body does not fire
    if rule.head_pos & y:
        return True
    return rule.head_neg & ~y != 0  # some negated head disjunct holds


def satisfies(program, y):
    return all(rule_satisfied(r, y) for r in program.rules)


def classical_models(program):
    """All classical models of a program."""
    if program._mod is None:
        n = program.alphabet.n
        program._mod = ModelSet(
            n, (y for y in range(1 << n) if satisfies(program, y)))
    return program._mod


def reduct(program, x):
    """The reduct of a program by the interpretation x.

    Keeps the positive part of every rule whose negated head atoms all lie
    inside x and whose negated body atoms all lie outside x.
    """
    rules = [Rule(r.head_pos, 0, r.body_pos, 0)
             for r in program.rules
             if r.head_neg & ~x == 0 and r.body_neg & x == 0]
    return Program(program.alphabet, rules)


def answer_sets(program):
    """Interpretations that are minimal classical models of their own reduct."""
    n = program.alphabet.n
    out = []
    for y in range(1 << n):
        red = reduct(program, y)
        if not satisfies(red, y):
            continue
        if any(satisfies(red, x) for x in proper_submasks(y)):
            continue
        out.append(y)
    return frozenset(out)


def se_models(program):
    """All SE models of a program, cached on the program."""
    if program._se is None:
        n = program.alphabet.n
        pairs = []
        for y in range(1 << n):
            if not satisfies(program, y):
                continue
            red = reduct(program, y)
            pairs.extend((x, y) for x in submasks(y) if satisfies(red, x))
        s = SESet(n, pairs)
        s._props["well_defined"] = True
        program._se = s
    return program._se


def answer_sets_via_se(seset):
    """Answer sets read off an SE set: diagonal pairs with no proper here."""
    heres = {}
    for h, t in seset.pairs:
        heres.setdefault(t, set()).add(h)
    return frozenset(t for t, hs in heres.items() if hs == {t})


def here_projection(program):
    """Interpretations occurring as the here part of some SE model."""
    s = se_models(program)
    return ModelSet(s.n, {h for h, _t in s.pairs})


def _same_alphabet(p, q):
    if p.alphabet != q.alphabet:
        raise AlphabetError("programs use different alphabets")


def strong_equiv(p, q):
    """Same SE models, hence interchangeable inside any larger program."""
    _same_alphabet(p, q)
    return se_models(p).pairs == se_models(q).pairs


def se_subset(p, q):
    """SE models of p all belong to q."""
    _same_alphabet(p, q)
    return se_models(p).pairs <= se_models(q).pairs


# ---------------------------------------------------------------------------
# closures and synthesis


def closure(seset, prop):
    """Smallest superset of a well-defined SE set that is complete
    (prop = "complete") or also closed under here-intersection
    (prop = "hi_closed")."""
    if prop not in (COMPLETE, HI_CLOSED):
        raise ValueError("unknown closure property %r" % (prop,))
    if not seset.well_defined:
        raise ValueError("closure needs a well-defined SE set")
    pairs = set(seset.pairs)
    changed = True
    while changed:
        changed = False
        diag = [t for h, t in pairs if h == t]
        for h, t in list(pairs):
            for z in diag:
                if t & ~z == 0 and (h, z) not in pairs:
                    pairs.add((h, z))
                    changed = True
        if prop == HI_CLOSED:
            by_there = {}
            for h, t in pairs:
                by_there.setdefault(t, []).append(h)
            for t, hs in by_there.items():
                for a in hs:
                    for b in hs:
                        if (a & b, t) not in pairs:
                            pairs.add((a & b, t))
                            changed = True
    return SESet(seset.n, pairs)


def _nlp_head_atom(seset, x, y):
    # Smallest member of the here family at y containing x, minus x.
    # Nonempty because x itself is missing from a family that is closed
    # under intersection and contains y.
    cap = y
    for h in seset.heres(y):
        if x & ~h == 0:
            cap &= h
    gap = cap & ~x
    return gap & -gap


def synthesize(seset, cls=GLP, alphabet=None):
    """Build a canonical program of the given class whose SE models are
    exactly the given set.

    The set must be well defined for glp output, complete for dlp output
    and closed under here-intersection for nlp output.  Two rule families
    are emitted: one kills each interpretation that must not be a
    classical model, one kills each missing (here, there) pair with a
    surviving there-world.
    """
    n = seset.n
    if alphabet is None:
        alphabet = Alphabet.default(n)
    elif alphabet.n != n:
        raise AlphabetError("alphabet width %d does not match the SE set" % alphabet.n)
    need = _SYNTH_REQUIRES[cls]
    if not getattr(seset, need):
        raise ValueError("cannot synthesize a %s program: the SE set is not %s"
                         % (cls, need.replace("_", " ")))
    full = alphabet.full
    diag = seset.mod().models
    rules = []
    for y in range(1 << n):
        comp = full & ~y
        if y not in diag:
            if y == 0 and comp == 0:
                raise AlphabetError("cannot synthesize an inconsistent program "
                                    "over an empty alphabet")
            if cls == GLP:
                rules.append(Rule(comp, y, y, comp))
            else:
                rules.append(Rule(0, 0, y, comp))
            continue
        for x in proper_submasks(y):
            if (x, y) in seset.pairs:
                continue
            gap = y & ~x
            if cls == GLP:
                rules.append(Rule(gap, gap, x, comp))
            elif cls == DLP:
                rules.append(Rule(gap, 0, x, comp))
            else:
                rules.append(Rule(_nlp_head_atom(seset, x, y), 0, x, comp))
    program = Program(alphabet, rules)
    # The construction is exact (the round-trip suite re-derives it from
    # rendered text), so both caches can be seeded.
    program._se = seset
    program._mod = ModelSet(n, diag)
    return program


# ---------------------------------------------------------------------------
# JSON forms


def modelset_to_json(ms, alphabet):
    if alphabet.n != ms.n:
        raise AlphabetError("alphabet width does not match the model set")
    return {
        "atoms": list(alphabet.atoms),
        "models": [list(alphabet.names(y)) for y in sorted(ms.models)],
    }


def modelset_from_json(obj):
    alphabet = Alphabet(tuple(obj["atoms"]))
    ms = ModelSet(alphabet.n, (alphabet.mask(names) for names in obj["models"]))
    return ms, alphabet


def seset_to_json(seset, alphabet):
    if alphabet.n != seset.n:
        raise AlphabetError("alphabet width does not match the SE set")
    return {
        "atoms": list(alphabet.atoms),
        "pairs": [{"here": list(alphabet.names(h)), "there": list(alphabet.names(t))}
                  for h, t in seset.sorted_pairs()],
        "flags": se_set_properties(seset),
    }


def seset_from_json(obj):
    alphabet = Alphabet(tuple(obj["atoms"]))
    pairs = [(alphabet.mask(e["here"]), alphabet.mask(e["there"]))
             for e in obj["pairs"]]
    return SESet(alphabet.n, pairs), alphabet
