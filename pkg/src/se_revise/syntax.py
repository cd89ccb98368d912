"""Reading, writing and classifying logic programs.

A program is a finite set of rules over a fixed atom alphabet.  Rules may
use default negation in both body and head and disjunction in the head:

    a1 ; ... ; ak ; not b1 ; ... ; not bl :- c1, ..., cm, not d1, ..., not dn.

Interpretations are int bitmasks over the alphabet, so each rule stores
four masks: positive and negated head disjuncts, positive and negated body
literals.  The constants true/false are eliminated during parsing and the
renderer never emits them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

MAX_ATOMS = 16

# Program classes, most restrictive first.  A program classified nlp is
# also dlp and glp; the tag reported is always the tightest that fits.
NLP = "nlp"
DLP = "dlp"
GLP = "glp"
CLASS_RANK = {NLP: 0, DLP: 1, GLP: 2}

RESERVED = ("not", "true", "false")
_NAME_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


class ParseError(Exception):
    """Malformed program or formula text."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = "line %d, column %d: %s" % (line, col, message)
        super().__init__(message)
        self.line = line
        self.col = col


class AlphabetError(Exception):
    """Atoms or alphabets that do not line up."""


class Alphabet:
    """An ordered tuple of distinct atom names, at most MAX_ATOMS of them."""

    __slots__ = ("atoms", "_index")

    def __init__(self, atoms):
        atoms = tuple(atoms)
        if len(atoms) > MAX_ATOMS:
            raise AlphabetError(
                "alphabet has %d atoms, the limit is %d" % (len(atoms), MAX_ATOMS))
        index = {}
        for name in atoms:
            if not isinstance(name, str) or not _NAME_RE.match(name) or name in RESERVED:
                raise AlphabetError("bad atom name %r" % (name,))
            if name in index:
                raise AlphabetError("duplicate atom name %r" % (name,))
            index[name] = len(index)
        self.atoms = atoms
        self._index = index

    @classmethod
    def default(cls, n):
        """Generated names for synthesized output with no caller alphabet."""
        letters = "pqrstuvw"
        if n <= len(letters):
            return cls(tuple(letters[:n]))
        return cls(tuple("x%d" % i for i in range(n)))

    @property
    def n(self):
        return len(self.atoms)

    @property
    def full(self):
        return (1 << len(self.atoms)) - 1

    def bit(self, name):
        try:
            return 1 << self._index[name]
        except KeyError:
            raise AlphabetError("atom %r is not in the alphabet" % (name,)) from None

    def mask(self, names):
        m = 0
        for name in names:
            m |= self.bit(name)
        return m

    def names(self, bits):
        return tuple(a for i, a in enumerate(self.atoms) if bits >> i & 1)

    def fmt(self, bits):
        """Set notation for an interpretation, '{}' when empty."""
        return "{%s}" % ",".join(self.names(bits))

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def __repr__(self):
        return "Alphabet(%r)" % (self.atoms,)


@dataclass(frozen=True, order=True)
class Rule:
    """One rule, as four atom bitmasks."""

    head_pos: int
    head_neg: int
    body_pos: int
    body_neg: int


def _rule_class(rule):
    if rule.head_neg:
        return GLP
    if rule.head_pos & (rule.head_pos - 1):  # more than one head atom
        return DLP
    return NLP


class Program:
    """An immutable set of rules over one alphabet.

    Rules are stored sorted and deduplicated, so two programs with the same
    rules compare equal regardless of source order.  SE models and classical
    models are cached on the instance once computed.
    """

    __slots__ = ("alphabet", "rules", "_se", "_mod")

    def __init__(self, alphabet, rules=()):
        self.alphabet = alphabet
        self.rules = tuple(sorted(set(rules)))
        full = alphabet.full
        for r in self.rules:
            if (r.head_pos | r.head_neg | r.body_pos | r.body_neg) & ~full:
                raise AlphabetError("rule uses atoms outside the alphabet")
        self._se = None
        self._mod = None

    def __eq__(self, other):
        return (isinstance(other, Program)
                and self.alphabet == other.alphabet
                and self.rules == other.rules)

    def __hash__(self):
        return hash((self.alphabet.atoms, self.rules))

    def __repr__(self):
        return "Program(<%d rules over {%s}>)" % (
            len(self.rules), ",".join(self.alphabet.atoms))


def classify(program):
    """Tightest class tag a program fits: nlp, dlp or glp."""
    tag = NLP
    for rule in program.rules:
        c = _rule_class(rule)
        if CLASS_RANK[c] > CLASS_RANK[tag]:
            tag = c
    return tag


# ---------------------------------------------------------------------------
# program text


_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+|%[^\n]*)
      | (?P<name>[a-z][A-Za-z0-9_]*)
      | (?P<arrow>:-)
      | (?P<punct>[.;,])
      | (?P<directive>\#[a-zA-Z]+)
    """,
    re.VERBOSE,
)


def _loc(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - text.rfind("\n", 0, pos)
    return line, col


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            line, col = _loc(text, pos)
            raise ParseError("unexpected character %r" % text[pos], line, col)
        pos = m.end()
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), m.start()))
    return out


class _Cursor:
    def __init__(self, text, tokens):
        self.text = text
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message, pos=None):
        if pos is None:
            pos = self.peek()[2]
        line, col = _loc(self.text, pos)
        raise ParseError(message, line, col)

    def expect(self, kind, value=None, what=None):
        k, v, pos = self.peek()
        if k != kind or (value is not None and v != value):
            self.error("expected %s" % (what or value or kind), pos)
        return self.next()


def _parse_literal(cur, where):
    """One head or body literal: [not] (name | true | false)."""
    negated = False
    k, v, pos = cur.peek()
    if k == "name" and v == "not":
        cur.next()
        negated = True
        k, v, pos = cur.peek()
    if k != "name":
        cur.error("expected an atom in the %s" % where, pos)
    cur.next()
    if v == "not":
        cur.error("'not' cannot be negated", pos)
    if v in ("true", "false"):
        return negated, v, None, pos
    return negated, "atom", v, pos


def _raw_rules(text):
    """First pass: directives and rules with literals still symbolic."""
    cur = _Cursor(text, _tokenize(text))
    directive_atoms = []
    rules = []
    while cur.peek()[0] is not None:
        k, v, pos = cur.peek()
        if k == "directive":
            if v != "#atoms":
                cur.error("unknown directive %r" % v, pos)
            cur.next()
            while True:
                nk, nv, npos = cur.expect("name", what="an atom name")
                if nv in RESERVED:
                    cur.error("%r is reserved" % nv, npos)
                directive_atoms.append(nv)
                pk, pv, _ = cur.peek()
                if pk == "punct" and pv == ",":
                    cur.next()
                    continue
                break
            cur.expect("punct", ".", "'.'")
            continue
        if k == "punct" and v == ".":
            cur.error("a rule needs a head or a body", pos)
        head = []
        body = []
        if not (k == "arrow"):
            while True:
                head.append(_parse_literal(cur, "head"))
                pk, pv, _ = cur.peek()
                if pk == "punct" and pv == ";":
                    cur.next()
                    continue
                break
        if cur.peek()[0] == "arrow":
            cur.next()
            while True:
                body.append(_parse_literal(cur, "body"))
                pk, pv, _ = cur.peek()
                if pk == "punct" and pv == ",":
                    cur.next()
                    continue
                break
        cur.expect("punct", ".", "'.' at the end of the rule")
        rules.append((head, body, pos))
    return directive_atoms, rules


def _normalize_rule(head, body, alphabet):
    """Constant elimination.  Returns a Rule, or None when the rule is a
    tautology and can be dropped."""
    hp = hn = bp = bn = 0
    for negated, kind, name, _pos in head:
        if kind == "true":
            if not negated:
                return None  # 'true' head disjunct: tautology
            # 'not true' head disjunct never fires; drop it
        elif kind == "false":
            if negated:
                return None  # 'not false' head disjunct: tautology
            # plain 'false' disjunct contributes nothing
        elif negated:
            hn |= alphabet.bit(name)
        else:
            hp |= alphabet.bit(name)
    for negated, kind, name, _pos in body:
        if kind == "true":
            if negated:
                return None  # body 'not true' can never hold
        elif kind == "false":
            if not negated:
                return None  # body 'false' can never hold
        elif negated:
            bn |= alphabet.bit(name)
        else:
            bp |= alphabet.bit(name)
    return Rule(hp, hn, bp, bn)


def parse_program(text, alphabet=None):
    """Parse program text into a Program.

    Without an explicit alphabet, the atoms are the sorted names occurring
    in the text plus any named in #atoms directives.  With one, every atom
    in the text must belong to it.
    """
    directive_atoms, raw = _raw_rules(text)
    seen = set(directive_atoms)
    for head, body, _pos in raw:
        for _neg, kind, name, _lpos in head + body:
            if kind == "atom":
                seen.add(name)
    if alphabet is None:
        alphabet = Alphabet(tuple(sorted(seen)))
    else:
        for name in sorted(seen):
            alphabet.bit(name)  # raises AlphabetError on unknown atoms
    rules = []
    for head, body, pos in raw:
        rule = _normalize_rule(head, body, alphabet)
        if rule is None:
            continue
        if rule == Rule(0, 0, 0, 0):
            line, col = _loc(text, pos)
            raise ParseError(
                "rule reduces to 'false :- true.'; "
                "write a constraint with a real body instead", line, col)
        rules.append(rule)
    return Program(alphabet, rules)


def render_rule(rule, alphabet):
    head = (["%s" % a for a in alphabet.names(rule.head_pos)]
            + ["not %s" % a for a in alphabet.names(rule.head_neg)])
    body = (["%s" % a for a in alphabet.names(rule.body_pos)]
            + ["not %s" % a for a in alphabet.names(rule.body_neg)])
    head_txt = " ; ".join(head) if head else "false"
    if body:
        return "%s :- %s." % (head_txt, ", ".join(body))
    return "%s." % head_txt


def render_program(program):
    """Canonical text: the #atoms directive, then one rule per line."""
    alphabet = program.alphabet
    lines = []
    if alphabet.n:
        lines.append("#atoms %s." % ", ".join(alphabet.atoms))
    for rule in program.rules:
        lines.append(render_rule(rule, alphabet))
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# propositional formulas (for the revision side)


_FORMULA_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<name>[a-z][A-Za-z0-9_]*)
      | (?P<op><->|->|[~&|()])
    """,
    re.VERBOSE,
)


def _formula_tokens(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _FORMULA_TOKEN_RE.match(text, pos)
        if m is None:
            line, col = _loc(text, pos)
            raise ParseError("unexpected character %r" % text[pos], line, col)
        pos = m.end()
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), m.start()))
    return out


def parse_formula(text, alphabet=None):
    """Parse a propositional formula into its ModelSet.

    Connectives, loosest binding first: <->, ->, |, &, ~.  Implication is
    right associative.  The constants true and false are allowed.
    """
    from .semantics import ModelSet  # deferred: semantics imports this module

    cur = _Cursor(text, _formula_tokens(text))
    names = set()

    def atom_node(name):
        names.add(name)
        return ("atom", name)

    def primary():
        k, v, pos = cur.peek()
        if k == "op" and v == "(":
            cur.next()
            node = iff()
            cur.expect("op", ")", "')'")
            return node
        if k == "op" and v == "~":
            cur.next()
            return ("not", primary())
        if k == "name":
            cur.next()
            if v == "true":
                return ("const", True)
            if v == "false":
                return ("const", False)
            if v == "not":
                cur.error("use '~' for negation in formulas", pos)
            return atom_node(v)
        cur.error("expected an atom, '~' or '('", pos)

    def conj():
        node = primary()
        while cur.peek()[:2] == ("op", "&"):
            cur.next()
            node = ("and", node, primary())
        return node

    def disj():
        node = conj()
        while cur.peek()[:2] == ("op", "|"):
            cur.next()
            node = ("or", node, conj())
        return node

    def imp():
        node = disj()
        if cur.peek()[:2] == ("op", "->"):
            cur.next()
            return ("imp", node, imp())
        return node

    def iff():
        node = imp()
        while cur.peek()[:2] == ("op", "<->"):
            cur.next()
            node = ("iff", node, imp())
        return node

    ast = iff()
    if cur.peek()[0] is not None:
        cur.error("trailing input after the formula")

    if alphabet is None:
        alphabet = Alphabet(tuple(sorted(names)))
    else:
        for name in sorted(names):
            alphabet.bit(name)

    def ev(node, y):
        op = node[0]
        if op == "atom":
            return bool(alphabet.bit(node[1]) & y)
        if op == "const":
            return node[1]
        if op == "not":
            return not ev(node[1], y)
        if op == "and":
            return ev(node[1], y) and ev(node[2], y)
        if op == "or":
            return ev(node[1], y) or ev(node[2], y)
        if op == "imp":
            return (not ev(node[1], y)) or ev(node[2], y)
        return ev(node[1], y) == ev(node[2], y)

    n = alphabet.n
    return ModelSet(n, (y for y in range(1 << n) if ev(ast, y))), alphabet
