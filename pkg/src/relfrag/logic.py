"""Function-free first-order logic over finite relational structures.

A relational example is a pair (ground-atom set, constant set) read under the
closed-world assumption: any ground atom over the declared constants that is
not listed is false.  Fragments restrict an example to a constant subset.
Closed formulas are evaluated with quantifiers ranging over the example's own
domain, never over the wider vocabulary.  The universe of all examples with a
fixed domain size over a vocabulary can be enumerated exactly.

Concrete formula syntax (EBNF, lowest precedence first)::

    formula    := quantified | implication
    quantified := ('forall' | 'exists') VAR (','? VAR)* ':' formula
    implication:= disjunction ('->' implication)?          (right-assoc)
    disjunction:= conjunction ('|' conjunction)*
    conjunction:= unary ('&' unary)*
    unary      := '~' unary | '(' formula ')' | quantified | ATOM
    ATOM       := PRED '(' (TERM (',' TERM)*)? ')'

Variables start with an uppercase letter, constants and predicates with a
lowercase letter.  A quantifier body extends as far right as possible;
multi-variable blocks are sugar for nested single quantifiers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import CapExceededError

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class FormulaError(ValueError):
    """Base class for formula construction and parsing failures."""


class FormulaSyntaxError(FormulaError):
    """Malformed formula text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownPredicateError(FormulaError):
    """Predicate missing from the vocabulary, or used at the wrong arity."""


class UnboundVariableError(FormulaError):
    """A variable occurs outside the scope of any quantifier binding it."""


class ShadowedVariableError(FormulaError):
    """A quantifier rebinds a variable that is already in scope."""


def is_variable(term: str) -> bool:
    return bool(term) and term[0].isupper()


# ---------------------------------------------------------------------------
# Vocabulary and relational examples


@dataclass(frozen=True)
class Vocabulary:
    """A finite relational language: predicate symbols with arities, constants."""

    predicates: frozenset[tuple[str, int]]
    constants: tuple[str, ...]

    def __post_init__(self):
        preds = frozenset(self.predicates)
        consts = tuple(self.constants)
        for name, arity in preds:
            if not _NAME_RE.match(name) or is_variable(name):
                raise ValueError(f"bad predicate name: {name!r}")
            if not isinstance(arity, int) or arity < 0:
                raise ValueError(f"bad arity for {name}: {arity!r}")
        if len(set(consts)) != len(consts):
            raise ValueError("duplicate constants in vocabulary")
        for c in consts:
            if not _NAME_RE.match(c) or is_variable(c):
                raise ValueError(f"bad constant name: {c!r}")
        object.__setattr__(self, "predicates", preds)
        object.__setattr__(self, "constants", consts)

    @classmethod
    def make(cls, predicates, constants=()) -> "Vocabulary":
        """Build from a ``{name: arity}`` mapping or ``(name, arity)`` pairs."""
        if hasattr(predicates, "items"):
            preds = frozenset((n, a) for n, a in predicates.items())
        else:
            preds = frozenset((n, a) for n, a in predicates)
        return cls(preds, tuple(constants))

    @cached_property
    def constant_set(self) -> frozenset[str]:
        return frozenset(self.constants)

    @cached_property
    def arities(self) -> dict[str, frozenset[int]]:
        out: dict[str, set[int]] = {}
        for name, arity in self.predicates:
            out.setdefault(name, set()).add(arity)
        return {n: frozenset(a) for n, a in out.items()}

    def has_predicate(self, name: str, arity: int) -> bool:
        return (name, arity) in self.predicates

    def validates(self, example: "RelationalExample") -> bool:
        """True iff every atom of the example conforms to this vocabulary."""
        return all(
            self.has_predicate(a.predicate, len(a.arguments)) for a in example.atoms
        )


@dataclass(frozen=True, order=True)
class GroundAtom:
    predicate: str
    arguments: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.predicate}({','.join(self.arguments)})"

    @cached_property
    def constant_set(self) -> frozenset[str]:
        return frozenset(self.arguments)


def atom(predicate: str, *arguments: str) -> GroundAtom:
    """Convenience constructor: ``atom('fr', 'alice', 'bob')``."""
    return GroundAtom(predicate, tuple(arguments))


_ATOM_RE = re.compile(r"\s*([a-z_][A-Za-z0-9_]*)\s*\(\s*([^()]*?)\s*\)\s*\Z")


def parse_ground_atom(text: str) -> GroundAtom:
    m = _ATOM_RE.match(text)
    if not m:
        raise ValueError(f"malformed ground atom: {text!r}")
    name, body = m.group(1), m.group(2)
    if body.strip():
        args = tuple(part.strip() for part in body.split(","))
        for a in args:
            if not _NAME_RE.match(a) or is_variable(a):
                raise ValueError(f"bad constant {a!r} in ground atom {text!r}")
    else:
        args = ()
    return GroundAtom(name, args)


@dataclass(frozen=True)
class RelationalExample:
    """A possible world: ground atoms over an explicit constant domain.

    Atoms and domain are stored canonically sorted, so equality and hashing
    are structural and iteration order is deterministic.
    """

    atoms: tuple[GroundAtom, ...]
    domain: tuple[str, ...]

    def __post_init__(self):
        atoms = tuple(sorted(set(self.atoms)))
        domain = tuple(sorted(set(self.domain)))
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "domain", domain)
        dom = frozenset(domain)
        for a in atoms:
            if not a.constant_set <= dom:
                stray = sorted(a.constant_set - dom)
                raise ValueError(f"atom {a} uses constants outside the domain: {stray}")

    @cached_property
    def domain_set(self) -> frozenset[str]:
        return frozenset(self.domain)

    @cached_property
    def atom_set(self) -> frozenset[GroundAtom]:
        return frozenset(self.atoms)

    @cached_property
    def atoms_by_constants(self) -> dict[frozenset[str], tuple[GroundAtom, ...]]:
        groups: dict[frozenset[str], list[GroundAtom]] = {}
        for a in self.atoms:
            groups.setdefault(a.constant_set, []).append(a)
        return {key: tuple(group) for key, group in groups.items()}

    def __str__(self) -> str:
        atoms = ", ".join(str(a) for a in self.atoms)
        return f"({{{atoms}}}, {{{', '.join(self.domain)}}})"


def fragment(example: RelationalExample, constants: Iterable[str]) -> RelationalExample:
    """Restrict ``example`` to ``constants``: keep atoms using only those.

    ``constants`` must be a subset of the example's domain.
    """
    s = frozenset(constants)
    if not s <= example.domain_set:
        stray = sorted(s - example.domain_set)
        raise ValueError(f"constants not in the example's domain: {stray}")
    index = example.atoms_by_constants
    kept: list[GroundAtom] = []
    if 2 ** len(s) <= len(index) + 1:
        # few constants: walk the subsets of s that could index atoms
        members = sorted(s)
        for r in range(len(members) + 1):
            for key in combinations(members, r):
                group = index.get(frozenset(key))
                if group:
                    kept.extend(group)
    else:
        for key, group in index.items():
            if key <= s:
                kept.extend(group)
    return RelationalExample(tuple(kept), tuple(s))


def iter_size_k_subsets(items: Iterable, k: int) -> Iterator[tuple]:
    """Size-k subsets as sorted tuples, in colexicographic order.

    Colex over the sorted item list is the canonical enumeration order used
    for exact statistics and signatures throughout the package.
    """
    pool = sorted(items)
    for idxs in _colex_index_tuples(len(pool), k):
        yield tuple(pool[i] for i in idxs)


def _colex_index_tuples(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    if k > n:
        return
    for m in range(k - 1, n):
        for rest in _colex_index_tuples(m, k - 1):
            yield rest + (m,)


def iter_fragments(
    example: RelationalExample, k: int
) -> Iterator[tuple[tuple[str, ...], RelationalExample]]:
    """Yield (constant subset, induced fragment) for every size-k subset."""
    for subset in iter_size_k_subsets(example.domain, k):
        yield subset, fragment(example, subset)


# ---------------------------------------------------------------------------
# Formula AST


class Formula:
    """Base class of formula AST nodes.  Instances are immutable."""

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    predicate: str
    terms: tuple[str, ...] = ()


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]

    def __post_init__(self):
        if len(self.parts) < 2:
            raise ValueError("conjunction needs at least two parts")


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]

    def __post_init__(self):
        if len(self.parts) < 2:
            raise ValueError("disjunction needs at least two parts")


@dataclass(frozen=True)
class Implies(Formula):
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True)
class ForAll(Formula):
    variable: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    variable: str
    body: Formula


def check_closed(formula: Formula, _scope: frozenset[str] = frozenset()) -> None:
    """Raise unless every variable is bound by exactly one enclosing quantifier."""
    match formula:
        case Atom(_, terms):
            for t in terms:
                if is_variable(t) and t not in _scope:
                    raise UnboundVariableError(f"unbound variable {t}")
        case Not(body):
            check_closed(body, _scope)
        case And(parts) | Or(parts):
            for p in parts:
                check_closed(p, _scope)
        case Implies(a, c):
            check_closed(a, _scope)
            check_closed(c, _scope)
        case ForAll(v, body) | Exists(v, body):
            if v in _scope:
                raise ShadowedVariableError(f"variable {v} is rebound by a nested quantifier")
            check_closed(body, _scope | {v})
        case _:
            raise TypeError(f"not a formula node: {formula!r}")


def formula_constants(formula: Formula) -> frozenset[str]:
    """All constant symbols occurring in the formula."""
    match formula:
        case Atom(_, terms):
            return frozenset(t for t in terms if not is_variable(t))
        case Not(body):
            return formula_constants(body)
        case And(parts) | Or(parts):
            out: frozenset[str] = frozenset()
            for p in parts:
                out |= formula_constants(p)
            return out
        case Implies(a, c):
            return formula_constants(a) | formula_constants(c)
        case ForAll(_, body) | Exists(_, body):
            return formula_constants(body)
    raise TypeError(f"not a formula node: {formula!r}")


# ---------------------------------------------------------------------------
# Parsing


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<arrow>->)|(?P<sym>[()~&|:,])|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
)

_QUANTIFIERS = {"forall": ForAll, "exists": Exists}


class _Parser:
    def __init__(self, text: str, vocab: Vocabulary):
        self.text = text
        self.vocab = vocab
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
            pos = m.end()
            if m.lastgroup != "ws":
                self.tokens.append((m.lastgroup, m.group(), m.start()))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.next()
        if text != value:
            raise FormulaSyntaxError(f"expected {value!r}, found {text or 'end of input'!r}", pos)

    def parse(self) -> Formula:
        f = self.formula(frozenset())
        kind, text, pos = self.peek()
        if kind != "eof":
            raise FormulaSyntaxError(f"unexpected trailing input {text!r}", pos)
        return f

    def formula(self, scope: frozenset[str]) -> Formula:
        kind, text, _ = self.peek()
        if kind == "name" and text in _QUANTIFIERS:
            return self.quantified(scope)
        return self.implication(scope)

    def quantified(self, scope: frozenset[str]) -> Formula:
        kind, text, pos = self.next()
        node = _QUANTIFIERS[text]
        variables: list[str] = []
        while True:
            kind, text, pos = self.peek()
            if kind == "name" and is_variable(text):
                if text in scope or text in variables:
                    raise ShadowedVariableError(
                        f"variable {text} is rebound by a nested quantifier"
                    )
                variables.append(text)
                self.next()
                if self.peek()[1] == ",":
                    self.next()
            elif text == ":":
                break
            else:
                raise FormulaSyntaxError(
                    f"expected a variable or ':', found {text or 'end of input'!r}", pos
                )
        if not variables:
            raise FormulaSyntaxError("quantifier binds no variables", pos)
        self.expect(":")
        body = self.formula(scope | set(variables))
        for v in reversed(variables):
            body = node(v, body)
        return body

    def implication(self, scope: frozenset[str]) -> Formula:
        left = self.disjunction(scope)
        if self.peek()[1] == "->":
            self.next()
            right = self.implication(scope)  # right-associative
            return Implies(left, right)
        return left

    def disjunction(self, scope: frozenset[str]) -> Formula:
        parts = [self.conjunction(scope)]
        while self.peek()[1] == "|":
            self.next()
            parts.append(self.conjunction(scope))
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self, scope: frozenset[str]) -> Formula:
        parts = [self.unary(scope)]
        while self.peek()[1] == "&":
            self.next()
            parts.append(self.unary(scope))
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self, scope: frozenset[str]) -> Formula:
        kind, text, pos = self.peek()
        if text == "~":
            self.next()
            return Not(self.unary(scope))
        if text == "(":
            self.next()
            inner = self.formula(scope)
            self.expect(")")
            return inner
        if kind == "name" and text in _QUANTIFIERS:
            return self.quantified(scope)
        if kind == "name":
            return self.atom(scope)
        raise FormulaSyntaxError(f"expected a formula, found {text or 'end of input'!r}", pos)

    def atom(self, scope: frozenset[str]) -> Formula:
        kind, name, pos = self.next()
        if is_variable(name):
            raise FormulaSyntaxError(f"predicate expected, found variable {name!r}", pos)
        self.expect("(")
        terms: list[str] = []
        if self.peek()[1] != ")":
            while True:
                kind, term, tpos = self.next()
                if kind != "name":
                    raise FormulaSyntaxError(f"expected a term, found {term!r}", tpos)
                if is_variable(term):
                    if term not in scope:
                        raise UnboundVariableError(f"unbound variable {term}")
                elif term not in self.vocab.constant_set:
                    raise UnknownPredicateError(
                        f"constant {term!r} is not in the vocabulary"
                    )
                terms.append(term)
                if self.peek()[1] == ",":
                    self.next()
                else:
                    break
        self.expect(")")
        if not self.vocab.has_predicate(name, len(terms)):
            known = self.vocab.arities.get(name)
            if known:
                raise UnknownPredicateError(
                    f"predicate {name} used with arity {len(terms)}, "
                    f"vocabulary has arity {sorted(known)}"
                )
            raise UnknownPredicateError(f"unknown predicate {name!r}")
        return Atom(name, tuple(terms))


def parse_formula(text: str, vocab: Vocabulary) -> Formula:
    """Parse a closed formula; see the module docstring for the grammar.

    Raises FormulaSyntaxError (with position), UnknownPredicateError,
    UnboundVariableError or ShadowedVariableError.
    """
    f = _Parser(text, vocab).parse()
    check_closed(f)
    return f


# ---------------------------------------------------------------------------
# Printing

_LEVEL_QUANT = 1
_LEVEL_IMPL = 1
_LEVEL_OR = 2
_LEVEL_AND = 3
_LEVEL_UNARY = 4


def format_formula(formula: Formula) -> str:
    """Render a formula so that ``parse_formula`` reproduces it structurally."""
    return _fmt(formula, 0)


def _fmt(f: Formula, min_level: int) -> str:
    match f:
        case Atom(name, terms):
            return f"{name}({','.join(terms)})"
        case Not(body):
            return "~" + _fmt(body, _LEVEL_UNARY)
        case And(parts):
            s = " & ".join(_fmt(p, _LEVEL_AND + 1) for p in parts)
            return f"({s})" if _LEVEL_AND < min_level else s
        case Or(parts):
            s = " | ".join(_fmt(p, _LEVEL_OR + 1) for p in parts)
            return f"({s})" if _LEVEL_OR < min_level else s
        case Implies(a, c):
            s = f"{_fmt(a, _LEVEL_IMPL + 1)} -> {_fmt(c, _LEVEL_IMPL)}"
            return f"({s})" if _LEVEL_IMPL < min_level else s
        case ForAll(v, body):
            s = f"forall {v} : {_fmt(body, 0)}"
            return f"({s})" if _LEVEL_QUANT < min_level else s
        case Exists(v, body):
            s = f"exists {v} : {_fmt(body, 0)}"
            return f"({s})" if _LEVEL_QUANT < min_level else s
    raise TypeError(f"not a formula node: {f!r}")


# ---------------------------------------------------------------------------
# Model checking (closed-world)


def evaluate(formula: Formula, example: RelationalExample) -> bool:
    """True iff the example satisfies the closed formula.

    Quantifiers range over the example's domain.  An atom mentioning a
    constant absent from the domain is false (closed-world extension).
    Evaluating an open formula raises UnboundVariableError when the free
    variable is reached.
    """
    return _eval(formula, example, {})


def _eval(f: Formula, ex: RelationalExample, env: dict[str, str]) -> bool:
    match f:
        case Atom(name, terms):
            args = []
            for t in terms:
                if is_variable(t):
                    try:
                        args.append(env[t])
                    except KeyError:
                        raise UnboundVariableError(f"unbound variable {t}") from None
                else:
                    if t not in ex.domain_set:
                        return False
                    args.append(t)
            return GroundAtom(name, tuple(args)) in ex.atom_set
        case Not(body):
            return not _eval(body, ex, env)
        case And(parts):
            return all(_eval(p, ex, env) for p in parts)
        case Or(parts):
            return any(_eval(p, ex, env) for p in parts)
        case Implies(a, c):
            return (not _eval(a, ex, env)) or _eval(c, ex, env)
        case ForAll(v, body):
            for c in ex.domain:
                env[v] = c
                if not _eval(body, ex, env):
                    del env[v]
                    return False
            env.pop(v, None)
            return True
        case Exists(v, body):
            for c in ex.domain:
                env[v] = c
                if _eval(body, ex, env):
                    del env[v]
                    return True
            env.pop(v, None)
            return False
    raise TypeError(f"not a formula node: {f!r}")


def evaluate_theory(formulas: Sequence[Formula], example: RelationalExample) -> bool:
    """A theory is satisfied iff the conjunction of its members is."""
    return all(evaluate(f, example) for f in formulas)


# ---------------------------------------------------------------------------
# The universe of size-k examples


@dataclass(frozen=True)
class OmegaUniverse:
    """All relational examples with a size-k domain over a vocabulary's constants."""

    vocabulary: Vocabulary
    k: int
    size: int

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[RelationalExample]:
        preds = sorted(self.vocabulary.predicates)
        for subset in iter_size_k_subsets(self.vocabulary.constants, self.k):
            ground: list[GroundAtom] = []
            for name, arity in preds:
                for args in product(subset, repeat=arity):
                    ground.append(GroundAtom(name, args))
            for mask in range(1 << len(ground)):
                atoms = tuple(a for i, a in enumerate(ground) if mask >> i & 1)
                yield RelationalExample(atoms, subset)


def omega_size(vocab: Vocabulary, k: int) -> int:
    atoms_per_domain = sum(k**arity for _, arity in vocab.predicates)
    return comb(len(vocab.constants), k) * (1 << atoms_per_domain)


def enumerate_omega(vocab: Vocabulary, k: int, max_elements: int = 10**6) -> OmegaUniverse:
    """The universe of all examples with |domain| = k, refusing above the cap."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    size = omega_size(vocab, k)
    if size > max_elements:
        raise CapExceededError(
            f"universe has {size} elements, above the cap of {max_elements}", size
        )
    return OmegaUniverse(vocab, k, size)


# ---------------------------------------------------------------------------
# Text format for relational examples


def parse_example_text(text: str) -> RelationalExample:
    """Parse the line-oriented example format.

    First non-comment line: ``domain: c1 c2 ...``; every following line one
    ground atom ``pred(c1,...,cn)``.  ``#`` starts a comment.  Duplicate
    atoms are rejected.
    """
    domain: tuple[str, ...] | None = None
    atoms: list[GroundAtom] = []
    seen: set[GroundAtom] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if domain is None:
            if not line.startswith("domain:"):
                raise ValueError(f"line {lineno}: expected 'domain: ...' first, got {raw!r}")
            names = line[len("domain:"):].split()
            if len(set(names)) != len(names):
                raise ValueError(f"line {lineno}: duplicate constants in domain")
            domain = tuple(names)
            continue
        try:
            a = parse_ground_atom(line)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if a in seen:
            raise ValueError(f"line {lineno}: duplicate atom {a}")
        seen.add(a)
        atoms.append(a)
    if domain is None:
        raise ValueError("no 'domain:' line found")
    return RelationalExample(tuple(atoms), domain)


def format_example(example: RelationalExample) -> str:
    lines = ["domain: " + " ".join(example.domain)]
    lines.extend(str(a) for a in example.atoms)
    return "\n".join(lines) + "\n"


def load_example(path) -> RelationalExample:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_example_text(fh.read())


def save_example(example: RelationalExample, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_example(example))


def infer_vocabulary(
    example: RelationalExample,
    extra_predicates: Iterable[tuple[str, int]] = (),
    extra_constants: Iterable[str] = (),
) -> Vocabulary:
    """Vocabulary induced by an example's atoms and domain, plus extras."""
    preds = {(a.predicate, len(a.arguments)) for a in example.atoms}
    preds.update(extra_predicates)
    consts = sorted(set(example.domain) | set(extra_constants))
    return Vocabulary(frozenset(preds), tuple(consts))
