"""Oriented presentations of the sphere algebras and SU_q(2).

Every built-in uses the same normal form: plain letters ascending by
index, then starred letters descending, with the adjacency
``z_m z_m^*`` removed by the sphere rule.  Defining relations are kept
alongside the rules because the coaction code checks Ψ against them.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Sequence, Tuple

from . import dsl
from .ncpoly import (
    DEFAULT_FUEL,
    EMPTY,
    Element,
    Letter,
    RewriteRule,
    RuleIndex,
    TermOrder,
    Word,
    adjoint,
    critical_pairs,
    format_element,
    format_word,
    nonzero_pairs,
    normalize,
    word_star,
)
from .scalars import ONE, Scalar

__all__ = [
    "Relation",
    "Presentation",
    "OrientationError",
    "CompletionError",
    "preset_suq2",
    "preset_vs",
    "preset_bl",
    "preset",
    "misoriented_vs",
    "star_closure",
    "complete_once",
    "parse_presentation",
    "print_presentation",
    "load_fixture",
    "FIXTURES",
]


class OrientationError(ValueError):
    pass


class CompletionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Relation:
    """A displayed identity ``lhs = rhs`` with a stable id."""

    id: str
    lhs: Element
    rhs: Element


class Presentation:
    """Rewrite system for a finitely presented *-algebra.

    ``relations`` are the defining relations before star closure; the
    rules include the closure.  ``identities`` holds further displayed
    forms that are consequences of the rules (checked, never used to
    rewrite).  With ``checked=False`` rules are not required to be
    orientable and normalization skips the per-step order assertion.
    """

    def __init__(self, name: str, generators: Sequence[str], params: Sequence[str],
                 rules: Sequence[RewriteRule], order: TermOrder | None = None,
                 relations: Sequence[Relation] = (), identities: Sequence[Relation] = (),
                 star_closed: bool = False, checked: bool = True, base_rules: Sequence[RewriteRule] | None = None):
        self.name = name
        self.generators = tuple(generators)
        self.ngens = len(self.generators)
        self.params = tuple(sorted(params))
        self.order = order or TermOrder.standard(self.ngens)
        self.rules = list(rules)
        self.base_rules = list(base_rules) if base_rules is not None else list(rules)
        self.relations = list(relations)
        self.identities = list(identities)
        self.star_closed = star_closed
        self.checked = checked
        if checked:
            for r in self.rules:
                if not r.orientable(self.order):
                    raise OrientationError(f"rule {r!r} is not decreasing under the term order")
        self.index = RuleIndex(self.rules)
        self._nf_cache: Dict[Word, Dict[Word, Scalar]] = {}
        self._audit = None
        self._oracle = None

    # element helpers -----------------------------------------------------
    def gen(self, i: int, starred: bool = False) -> Element:
        return Element.gen(self.ngens, i, starred)

    def one(self) -> Element:
        return Element.one(self.ngens)

    def element(self, text: str) -> Element:
        """Parse an element written in the presentation's term syntax."""
        return dsl.parse_element(text, self.generators, ("q", "p", "w"))

    def format(self, e: Element) -> str:
        return format_element(e, self.generators, self.order)

    def normalize(self, e: Element, fuel: int = DEFAULT_FUEL) -> Element:
        return normalize(e, self, fuel)

    def equal(self, e1: Element, e2: Element, fuel: int = DEFAULT_FUEL) -> bool:
        return normalize(e1 - e2, self, fuel).is_zero()

    def word_nf(self, word: Word) -> Dict[Word, Scalar]:
        """Cached normal form of a single word (shared by tensor code)."""
        nf = self._nf_cache.get(word)
        if nf is None:
            nf = normalize(Element._raw(self.ngens, {word: ONE}), self).terms
            self._nf_cache[word] = nf
        return nf

    def normal_terms(self, terms: Dict[Word, Scalar]) -> Dict[Word, Scalar]:
        out: Dict[Word, Scalar] = {}
        for w, c in terms.items():
            for nw, nc in self.word_nf(w).items():
                v = nc * c
                cur = out.get(nw)
                out[nw] = v if cur is None else cur + v
        return {w: c for w, c in out.items() if c}

    def all_relations(self) -> List[Relation]:
        return self.relations + self.identities

    # confluence and the membership fallback ------------------------------
    def confluence_audit(self, degree_cap: int = 5):
        """Nonzero critical pairs up to ``degree_cap`` (cached for the default cap)."""
        if degree_cap != 5:
            return nonzero_pairs(critical_pairs(self, degree_cap))
        if self._audit is None:
            self._audit = nonzero_pairs(critical_pairs(self, 5))
        return self._audit

    def is_confluent(self) -> bool:
        return not self.confluence_audit()

    def oracle(self):
        """Ideal-membership oracle: the non-sphere rules as base, the sphere as extra generator.

        Returns ``None`` when no such split is available.
        """
        if self._oracle is None:
            from .ideal import IdealOracle
            sphere = [r for r in self.rules if r.label == "sphere"]
            if len(sphere) != 1:
                return None
            r = sphere[0]
            base = Presentation(self.name + "-base", self.generators, self.params,
                                [x for x in self.rules if x is not r], self.order, checked=self.checked)
            extra = Element.word(self.ngens, r.lhs) - r.rhs
            try:
                self._oracle = IdealOracle(base, [extra])
            except ValueError:
                return None
        return self._oracle

    def decide(self, e1: Element, e2: Element | None = None) -> Tuple[bool, str, Element]:
        """Decide ``e1 = e2`` (or ``e1 = 0``) in the presented algebra.

        Returns ``(holds, method, residual)``.  ``method`` is ``"rewrite"``
        when the normal form settles it and ``"ideal"`` when the
        presentation is not confluent and a membership certificate was
        found.  A ``False`` answer from a non-confluent system means
        neither method found a proof.
        """
        diff = e1 if e2 is None else e1 - e2
        residual = normalize(diff, self)
        if residual.is_zero():
            return True, "rewrite", residual
        if self.is_confluent():
            return False, "rewrite", residual
        oracle = self.oracle()
        if oracle is not None and oracle.member(diff) is not None:
            return True, "ideal", residual
        return False, "ideal", residual

    # comparison ----------------------------------------------------------
    def _key(self):
        return (self.name, self.generators, self.params, self.order,
                frozenset((r.lhs, r.rhs) for r in self.rules), self.star_closed)

    def __eq__(self, other):
        return isinstance(other, Presentation) and self._key() == other._key()

    def __hash__(self):
        return hash((self.name, self.generators))

    def __repr__(self):
        return f"Presentation({self.name!r}, {self.ngens} generators, {len(self.rules)} rules)"

    def describe_rules(self) -> List[str]:
        return [f"{format_word(r.lhs, self.generators)} -> {format_element(r.rhs, self.generators, self.order)}"
                for r in self.rules]


# ---------------------------------------------------------------------------
# orientation and closure
# ---------------------------------------------------------------------------

def orient(lhs: Element, rhs: Element, order: TermOrder, label: str = "") -> RewriteRule:
    """Turn ``lhs = rhs`` into a rule headed by its greatest word."""
    diff = lhs - rhs
    if diff.is_zero():
        raise OrientationError(f"relation {label or ''} is trivial")
    lead = order.leading(diff)
    c = diff.terms[lead]
    if not c.is_monomial():
        raise OrientationError(f"leading coefficient {c} of {format_word(lead)} is not invertible")
    inv = c.inverse()
    rest = {w: -v * inv for w, v in diff.terms.items() if w != lead}
    return RewriteRule(lead, Element(diff.ngens, rest), label)


def oriented_as_written(lhs: Element, rhs: Element, order: TermOrder, label: str = "",
                        names: Sequence[str] | None = None) -> RewriteRule:
    """Rule ``lhs -> rhs`` where ``lhs`` must be a single word exceeding ``rhs``."""
    if len(lhs.terms) != 1:
        raise OrientationError("left-hand side must be a single word")
    (word, c), = lhs.terms.items()
    if not word:
        raise OrientationError("left-hand side must be a nonempty word")
    if not c.is_monomial():
        raise OrientationError(f"coefficient {c} of the left-hand side is not invertible")
    inv = c.inverse()
    rule = RewriteRule(word, rhs.scale(inv), label)
    if word in rule.rhs.terms or not rule.orientable(order):
        raise OrientationError(
            f"relation not orientable: {format_word(word, names)} does not exceed every word of the right-hand side")
    return rule


def _closure_rules(rules: Sequence[RewriteRule], order: TermOrder) -> List[RewriteRule]:
    out = list(rules)
    by_lhs = {r.lhs: r for r in out}
    for r in list(out):
        star_lhs = Element.word(r.rhs.ngens, word_star(r.lhs))
        star_rhs = adjoint(r.rhs)
        new = orient(star_lhs, star_rhs, order, r.label + "*" if r.label else "")
        old = by_lhs.get(new.lhs)
        if old is not None:
            if old.rhs != new.rhs:
                raise OrientationError(
                    f"adjoint of {format_word(r.lhs)} conflicts with the existing rule for {format_word(new.lhs)}")
            continue
        out.append(new)
        by_lhs[new.lhs] = new
    return out


def star_closure(pres: Presentation) -> Presentation:
    """Add the oriented adjoint of every rule; idempotent."""
    rules = _closure_rules(pres.rules, pres.order)
    return Presentation(pres.name, pres.generators, pres.params, rules, pres.order,
                        pres.relations, pres.identities, star_closed=True, checked=pres.checked,
                        base_rules=pres.base_rules)


def _build(name, generators, params, base: Sequence[RewriteRule], relations=None, identities=(),
           order=None, checked=True) -> Presentation:
    order = order or TermOrder.standard(len(generators))
    if relations is None:
        relations = [Relation(r.label or format_word(r.lhs, generators),
                              Element.word(len(generators), r.lhs), r.rhs) for r in base]
    rules = _closure_rules(base, order) if checked else _closure_unchecked(base)
    return Presentation(name, generators, params, rules, order, relations, identities,
                        star_closed=True, checked=checked, base_rules=base)


def _closure_unchecked(base):
    # adjoints kept exactly as written; used only for the misoriented fixture
    out = list(base)
    seen = {r.lhs for r in out}
    for r in base:
        w = word_star(r.lhs)
        if w in seen:
            continue
        out.append(RewriteRule(w, adjoint(r.rhs), r.label + "*"))
        seen.add(w)
    return out


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

def _z(n, i, s=False):
    return Element.gen(n, i, s)


def _vs_base(m: int, coeff_p: Scalar, names: Sequence[str], misoriented: bool = False) -> List[RewriteRule]:
    n = m + 1
    p = coeff_p
    rules = []
    w = lambda *ls: tuple(ls)
    P = lambda i: Letter(i, False)
    S = lambda i: Letter(i, True)
    one_m_p2 = ONE - p * p
    for i in range(n):
        for j in range(i + 1, n):
            rules.append(RewriteRule(w(P(j), P(i)), Element(n, {w(P(i), P(j)): p}),
                                     f"{names[j]} {names[i]}"))
    for i in range(n):
        for j in range(n):
            if i != j:
                rules.append(RewriteRule(w(S(i), P(j)), Element(n, {w(P(j), S(i)): p}),
                                         f"{names[i]}* {names[j]}"))
    for i in range(n):
        rhs = {w(P(i), S(i)): ONE}
        for j in range(i + 1, n):
            rhs[w(P(j), S(j))] = one_m_p2
        rules.append(RewriteRule(w(S(i), P(i)), Element(n, rhs), f"{names[i]}* {names[i]}"))
    if misoriented:
        rhs = {EMPTY: ONE}
        for j in range(1, n):
            rhs[w(P(j), S(j))] = -ONE
        rules.append(RewriteRule(w(P(0), S(0)), Element(n, rhs), "sphere"))
    else:
        rhs = {EMPTY: ONE}
        for j in range(m):
            rhs[w(P(j), S(j))] = -ONE
        rules.append(RewriteRule(w(P(m), S(m)), Element(n, rhs), "sphere"))
    return rules


def _sphere_relation(n: int, name="sphere") -> Relation:
    lhs = Element.zero(n)
    for j in range(n):
        lhs = lhs + _z(n, j) * _z(n, j, True)
    return Relation(name, lhs, Element.one(n))


def _vs_relations(m: int, base: List[RewriteRule]) -> List[Relation]:
    n = m + 1
    rels = []
    for r in base:
        if r.label == "sphere":
            rels.append(_sphere_relation(n))
        else:
            rels.append(Relation(r.label, Element.word(n, r.lhs), r.rhs))
    return rels


def preset_vs(m: int, p_is_q: bool = False) -> Presentation:
    """Odd quantum sphere on generators z0..zm.

    With ``p_is_q`` the deformation parameter is q rather than p, which
    is the form used when comparing with SU_q(2) and its coactions.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    names = tuple(f"z{i}" for i in range(m + 1))
    p = Scalar.q() if p_is_q else Scalar.p()
    base = _vs_base(m, p, names)
    name = f"vs{2 * m + 1}" + ("q" if p_is_q else "")
    return _build(name, names, ("q",) if p_is_q else ("p",), base, _vs_relations(m, base))


def preset_suq2() -> Presentation:
    """A(SU_q(2)) with a = index 0, b = index 1."""
    names = ("a", "b")
    base = _vs_base(1, Scalar.q(), names)
    a, b = _z(2, 0), _z(2, 1)
    as_, bs = _z(2, 0, True), _z(2, 1, True)
    q = Scalar.q()
    relations = [
        Relation("b a", b * a, q * (a * b)),
        Relation("b* a", bs * a, q * (a * bs)),
        Relation("b b*", b * bs, bs * b),
        Relation("sphere-right", as_ * a + (q * q) * (bs * b), Element.one(2)),
        Relation("sphere-left", a * as_ + b * bs, Element.one(2)),
    ]
    return _build("suq2", names, ("q",), base, relations)


def _bl_base() -> List[RewriteRule]:
    n = 4
    P = lambda i: Letter(i, False)
    S = lambda i: Letter(i, True)
    q = Scalar.q()
    t = Scalar.t()
    ti = t.inverse()
    qi = q.inverse()
    omq2 = ONE - q * q

    def rule(lhs, rhs, label):
        return RewriteRule(lhs, Element(n, rhs), label)

    rules = [
        # relations inside the pairs (x0, x1) and (x2, x3)
        rule((P(1), P(0)), {(P(0), P(1)): qi}, "x1 x0"),
        rule((S(1), P(0)), {(P(0), S(1)): q}, "x1* x0"),
        rule((S(0), P(0)), {(P(0), S(0)): ONE}, "x0* x0"),
        rule((S(1), P(1)), {(P(1), S(1)): ONE, (P(0), S(0)): omq2}, "x1* x1"),
        rule((P(3), P(2)), {(P(2), P(3)): qi}, "x3 x2"),
        rule((S(3), P(2)), {(P(2), S(3)): q}, "x3* x2"),
        rule((S(2), P(2)), {(P(2), S(2)): ONE}, "x2* x2"),
        rule((S(3), P(3)), {(P(3), S(3)): ONE, (P(2), S(2)): omq2}, "x3* x3"),
        # braided relations between the pairs
        rule((P(2), P(0)), {(P(0), P(2)): t}, "x2 x0"),
        rule((P(3), P(0)), {(P(0), P(3)): ti}, "x3 x0"),
        rule((P(2), P(1)), {(P(1), P(2)): t}, "x2 x1"),
        rule((P(3), P(1)), {(P(1), P(3)): ti}, "x3 x1"),
        rule((S(2), P(0)), {(P(0), S(2)): t}, "x2* x0"),
        rule((S(3), P(0)), {(P(0), S(3)): ti, (P(2), S(1)): -qi * omq2}, "x3* x0"),
        rule((S(2), P(1)), {(P(1), S(2)): t}, "x2* x1"),
        rule((S(3), P(1)), {(P(1), S(3)): ti, (P(2), S(0)): omq2}, "x3* x1"),
        rule((P(3), S(3)), {EMPTY: ONE, (P(0), S(0)): -ONE, (P(1), S(1)): -ONE, (P(2), S(2)): -ONE}, "sphere"),
    ]
    return rules


def preset_bl() -> Presentation:
    """Quaternionic 7-sphere O(S^7_q) on generators x0..x3."""
    names = ("x0", "x1", "x2", "x3")
    base = _bl_base()
    relations = []
    for r in base:
        if r.label == "sphere":
            relations.append(_sphere_relation(4))
        else:
            relations.append(Relation(r.label, Element.word(4, r.lhs), r.rhs))
    x = lambda i, s=False: _z(4, i, s)
    q2 = Scalar.q(2)
    alt = Relation("sphere-alt",
                   (x(0, True) * x(0)).scale(q2) + x(1, True) * x(1) + (x(2, True) * x(2)).scale(q2) + x(3, True) * x(3),
                   Element.one(4))
    return _build("bl7", names, ("q",), base, relations, identities=[alt])


def misoriented_vs(m: int = 3) -> Presentation:
    """VS(m) with the sphere rule solved for z0 z0^* instead of zm zm^*.

    No degree-lex order makes this decreasing, so it is built unchecked;
    the confluence audit is expected to find nonzero residuals.
    """
    names = tuple(f"z{i}" for i in range(m + 1))
    base = _vs_base(m, Scalar.p(), names, misoriented=True)
    return _build(f"vs{2 * m + 1}-misoriented", names, ("p",), base, _vs_relations(m, base), checked=False)


def preset(name: str, m: int = 3) -> Presentation:
    if name in ("suq2", "su2"):
        return preset_suq2()
    if name == "vs":
        return preset_vs(m)
    if name == "vsq":
        return preset_vs(m, p_is_q=True)
    if name in ("bl", "bl7"):
        return preset_bl()
    raise ValueError(f"unknown preset {name!r}")


# ---------------------------------------------------------------------------
# completion
# ---------------------------------------------------------------------------

def complete_once(pres: Presentation, degree_cap: int = 5, fuel: int = DEFAULT_FUEL) -> Presentation:
    """One round of completion: orient each nonzero critical residual as a rule.

    Raises :class:`CompletionError` if a residual cannot be oriented or if
    the completed system still has nonzero residuals.
    """
    bad = nonzero_pairs(critical_pairs(pres, degree_cap, fuel))
    if not bad:
        return pres
    rules = list(pres.rules)
    known = {r.lhs for r in rules}
    for word, residual in bad:
        try:
            rule = orient(residual, Element.zero(pres.ngens), pres.order, f"completion {format_word(word)}")
        except OrientationError as exc:
            raise CompletionError(str(exc)) from exc
        if rule.lhs in known:
            continue
        rules.append(rule)
        known.add(rule.lhs)
    try:
        rules = _closure_rules(rules, pres.order)
        out = Presentation(pres.name, pres.generators, pres.params, rules, pres.order,
                           pres.relations, pres.identities, star_closed=True, checked=True,
                           base_rules=pres.base_rules)
    except OrientationError as exc:
        raise CompletionError(str(exc)) from exc
    if nonzero_pairs(critical_pairs(out, degree_cap, fuel)):
        raise CompletionError("one round of completion did not reach local confluence")
    return out


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def print_presentation(pres: Presentation) -> str:
    order = None if pres.order == TermOrder.standard(pres.ngens) else pres.order.precedence
    rels = [(Element.word(pres.ngens, r.lhs), r.rhs) for r in pres.base_rules]
    return dsl.format_text(pres.name, pres.params, pres.generators, order, rels)


def parse_presentation(text: str) -> Presentation:
    """Build a validated, star-closed presentation from ``.qalg`` text.

    Raises :class:`~qcoact.dsl.DSLError` (a ``ValueError`` carrying line
    and column) on any syntax, parameter, name or orientation problem.
    """
    raw = dsl.parse_text(text)
    n = len(raw.generators)
    order = TermOrder(raw.order) if raw.order is not None else TermOrder.standard(n)
    base = []
    for lhs, rhs, lineno in raw.relations:
        try:
            rule = oriented_as_written(lhs, rhs, order, names=raw.generators)
        except OrientationError as exc:
            raise dsl.DSLError(str(exc), lineno, 1) from exc
        rule.label = format_word(rule.lhs, raw.generators)
        if len(rule.lhs) == 2 and rule.lhs[0].starred is False and rule.lhs[1].starred \
                and rule.lhs[0].index == n - 1 and rule.lhs[1].index == n - 1:
            rule.label = "sphere"
        base.append(rule)
    try:
        return _build(raw.name, raw.generators, raw.params, base, order=order)
    except OrientationError as exc:
        raise dsl.DSLError(str(exc), 1, 1) from exc


FIXTURES = ("suq2.qalg", "vs3.qalg", "vs5.qalg", "vs7.qalg", "bl7.qalg")


def load_fixture(name: str) -> Presentation:
    text = resources.files("qcoact").joinpath("data", name).read_text(encoding="utf-8")
    return parse_presentation(text)
