"""Model-based revision of propositional belief sets.

Operators work on explicit ModelSets: they take the models of the current
belief phi and of the new information psi and return the models of the
revised belief.  Next to the two classic operators (drastic, Dalal) there
are generic constructors from a distance function and from a faithful
preorder provider, which the program-revision layer reuses.
"""

from __future__ import annotations

from .semantics import ModelSet
from .syntax import AlphabetError


def hamming(i, j):
    """Number of atoms on which two interpretations differ."""
    return (i ^ j).bit_count()


class FaithfulnessError(Exception):
    """A preorder that does not treat the models of phi correctly."""


class TotalPreorder:
    """A total preorder over all interpretations of a fixed width.

    Stored as a rank per interpretation; levels are normalized to
    0..k, so two preorders ordering interpretations the same way
    compare equal.
    """

    __slots__ = ("n", "rank")

    def __init__(self, n, rank):
        size = 1 << n
        if set(rank) != set(range(size)):
            raise ValueError("rank table must cover all %d interpretations" % size)
        levels = {lv: i for i, lv in enumerate(sorted(set(rank.values())))}
        self.n = n
        self.rank = {y: levels[lv] for y, lv in rank.items()}

    def level(self, y):
        return self.rank[y]

    def leq(self, a, b):
        return self.rank[a] <= self.rank[b]

    def min_of(self, models):
        """The minimal layer of a collection of interpretations."""
        best = None
        out = []
        for y in models:
            r = self.rank[y]
            if best is None or r < best:
                best = r
                out = [y]
            elif r == best:
                out.append(y)
        return frozenset(out)

    def __eq__(self, other):
        return (isinstance(other, TotalPreorder)
                and self.n == other.n and self.rank == other.rank)

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.rank.items()))))

    def __repr__(self):
        by_level = {}
        for y, r in self.rank.items():
            by_level.setdefault(r, []).append(y)
        parts = [" ~ ".join(str(y) for y in sorted(by_level[r]))
                 for r in sorted(by_level)]
        return "TotalPreorder(%s)" % " < ".join(parts)


def validate_faithful(preorder, phi):
    """Check the two pointwise faithfulness conditions of a preorder for phi:
    (a) models of phi share one rank, (b) strictly below every non-model.
    Vacuous when phi is inconsistent."""
    if preorder.n != phi.n:
        raise AlphabetError("preorder and model set have different widths")
    if not phi.models:
        return
    it = iter(phi.models)
    base = preorder.level(next(it))
    for y in it:
        if preorder.level(y) != base:
            raise FaithfulnessError(
                "condition (a) fails: models %d and %d of phi sit on "
                "different levels" % (y, min(phi.models)))
    for y in range(1 << phi.n):
        if y not in phi.models and preorder.level(y) <= base:
            raise FaithfulnessError(
                "condition (b) fails: non-model %d is not strictly above "
                "the models of phi" % y)


def two_level_preorder(phi):
    """Models of phi first, everything else on one level above."""
    return TotalPreorder(
        phi.n, {y: (0 if y in phi.models else 1) for y in range(1 << phi.n)})


def hamming_preorder(phi):
    """Rank by minimal Hamming distance from the models of phi."""
    if not phi.models:
        return TotalPreorder(phi.n, {y: 0 for y in range(1 << phi.n)})
    return TotalPreorder(
        phi.n,
        {y: min(hamming(y, m) for m in phi.models) for y in range(1 << phi.n)})


class PropOperator:
    """A named revision operator on ModelSets."""

    __slots__ = ("name", "_fn")

    def __init__(self, name, fn):
        self.name = name
        self._fn = fn

    def revise(self, phi, psi):
        if phi.n != psi.n:
            raise AlphabetError("phi and psi are over different widths")
        return self._fn(phi, psi)

    def __repr__(self):
        return "PropOperator(%r)" % self.name


def revise(op, phi, psi):
    """Models of phi revised by psi under the given operator."""
    return op.revise(phi, psi)


def mc_prop(op, phi, psi, interpretation):
    """Model checking: does the interpretation satisfy phi revised by psi?"""
    return interpretation in op.revise(phi, psi).models


def drastic_operator():
    """Keep the conjunction when consistent, otherwise surrender to psi."""
    def fn(phi, psi):
        both = phi & psi
        return both if both else psi
    return PropOperator("drastic", fn)


def dalal_operator():
    """Models of psi at minimal Hamming distance from the models of phi."""
    def fn(phi, psi):
        if not phi.models or not psi.models:
            return psi
        best = None
        out = []
        for j in sorted(psi.models):
            d = min(hamming(i, j) for i in phi.models)
            if best is None or d < best:
                best = d
                out = [j]
            elif d == best:
                out.append(j)
        return ModelSet(psi.n, out)
    return PropOperator("dalal", fn)


def distance_operator(dist, name="distance"):
    """Generic distance-based revision; an inconsistent phi puts every
    interpretation at distance zero."""
    def fn(phi, psi):
        if not phi.models or not psi.models:
            return psi
        best = None
        out = []
        for j in sorted(psi.models):
            d = min(dist(i, j) for i in phi.models)
            if best is None or d < best:
                best = d
                out = [j]
            elif d == best:
                out.append(j)
        return ModelSet(psi.n, out)
    return PropOperator(name, fn)


def faithful_operator(provider, name="faithful"):
    """Revision by a faithful preorder provider.

    The provider is keyed on the models of phi, never its syntax, which
    makes irrelevance of syntax structural.  Its output is validated on
    every use.
    """
    def fn(phi, psi):
        pre = provider(phi)
        validate_faithful(pre, phi)
        if not psi.models:
            return psi
        return ModelSet(psi.n, pre.min_of(psi.models))
    return PropOperator(name, fn)


def rank_table_operator(obj):
    """Faithful operator from a JSON rank table pinned to one phi.

    Expected shape::

        {"atoms": ["p", "q"],
         "phi_models": [["p"], ["q"]],
         "ranks": {"": 2, "p": 0, "q": 0, "p,q": 1}}

    Interpretation keys are comma-joined atom names, "" for the empty
    interpretation.  Returns the operator and the alphabet of the table.
    """
    from .syntax import Alphabet

    alphabet = Alphabet(tuple(obj["atoms"]))
    n = alphabet.n
    phi_models = frozenset(alphabet.mask(names) for names in obj["phi_models"])
    rank = {}
    for key, level in obj["ranks"].items():
        names = [s for s in key.split(",") if s]
        rank[alphabet.mask(names)] = int(level)
    preorder = TotalPreorder(n, rank)

    def provider(phi):
        if phi.models != phi_models:
            raise FaithfulnessError(
                "rank table is keyed to a different phi than the one revised")
        return preorder

    return faithful_operator(provider, "table"), alphabet


def to_dnf(ms, alphabet):
    """Canonical DNF text for a model set: one full conjunction per model,
    'false' for the empty set, 'true' for the full set."""
    if alphabet.n != ms.n:
        raise AlphabetError("alphabet width does not match the model set")
    if not ms.models:
        return "false"
    if len(ms.models) == 1 << ms.n:
        return "true"
    if ms.n == 0:
        return "true"
    parts = []
    for y in sorted(ms.models):
        lits = [(a if y >> i & 1 else "~" + a)
                for i, a in enumerate(alphabet.atoms)]
        parts.append(" & ".join(lits))
    return " | ".join(parts)
