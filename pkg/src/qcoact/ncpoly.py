"""Free *-algebra elements and rewriting modulo an oriented presentation.

Words are tuples of :class:`Letter`.  An :class:`Element` maps words to
nonzero :class:`~qcoact.scalars.Scalar` coefficients.  Normalization
repeatedly rewrites the greatest reducible word at its leftmost redex;
every step is checked to decrease the word under the presentation's
degree-lexicographic order, so a bug in a rule set shows up as an
exception rather than a hang.
"""

from __future__ import annotations

import heapq
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .scalars import ONE, Scalar

__all__ = [
    "Letter",
    "Word",
    "Element",
    "TermOrder",
    "RewriteRule",
    "RuleIndex",
    "FuelExhausted",
    "OrderViolation",
    "DEFAULT_FUEL",
    "multiply",
    "adjoint",
    "normalize",
    "equal",
    "critical_pairs",
    "nonzero_pairs",
]

DEFAULT_FUEL = 10**6


class Letter(NamedTuple):
    index: int
    starred: bool = False

    def star(self) -> "Letter":
        return Letter(self.index, not self.starred)

    def __repr__(self):
        return f"z{self.index}{'*' if self.starred else ''}"


Word = Tuple[Letter, ...]
EMPTY: Word = ()


def word_star(word: Word) -> Word:
    return tuple(Letter(l.index, not l.starred) for l in reversed(word))


class FuelExhausted(RuntimeError):
    """Normalization hit its step cap before reaching a normal form."""

    def __init__(self, fuel: int, word=None):
        self.fuel = fuel
        self.word = word
        super().__init__(f"rewriting did not terminate within {fuel} steps")


class OrderViolation(AssertionError):
    """A rewrite step failed to decrease the term order."""


class Element:
    """Finite linear combination of words over ``ngens`` generators."""

    __slots__ = ("ngens", "terms")

    def __init__(self, ngens: int, terms: Dict[Word, Scalar] | None = None):
        self.ngens = ngens
        clean = {}
        if terms:
            for w, c in terms.items():
                c = Scalar.coerce(c)
                if c:
                    clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ngens: int, terms: Dict[Word, Scalar]) -> "Element":
        e = object.__new__(cls)
        e.ngens = ngens
        e.terms = terms
        return e

    @classmethod
    def zero(cls, ngens: int) -> "Element":
        return cls._raw(ngens, {})

    @classmethod
    def one(cls, ngens: int, c=ONE) -> "Element":
        return cls(ngens, {EMPTY: c})

    @classmethod
    def word(cls, ngens: int, word: Iterable[Letter], c=ONE) -> "Element":
        word = tuple(word)
        for l in word:
            if not 0 <= l.index < ngens:
                raise ValueError(f"letter {l!r} outside {ngens} generators")
        return cls(ngens, {word: c})

    @classmethod
    def gen(cls, ngens: int, index: int, starred: bool = False) -> "Element":
        return cls.word(ngens, (Letter(index, starred),))

    def _check(self, other: "Element"):
        if self.ngens != other.ngens:
            raise ValueError(f"generator-set mismatch: {self.ngens} vs {other.ngens}")

    def _lift(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        return Element.one(self.ngens, Scalar.coerce(other))

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return Element._raw(self.ngens, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.ngens, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = Scalar.coerce(c)
        if not c:
            return Element.zero(self.ngens)
        return Element._raw(self.ngens, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        out = Element.one(self.ngens)
        for _ in range(n):
            out = out * self
        return out

    def adjoint(self) -> "Element":
        return adjoint(self)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ngens == other.ngens and self.terms == other.terms
        try:
            return self == self._lift(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.ngens, frozenset(self.terms.items())))

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def map_coeffs(self, f: Callable[[Scalar], Scalar]) -> "Element":
        return Element(self.ngens, {w: f(c) for w, c in self.terms.items()})

    def format(self, names: Sequence[str] | None = None) -> str:
        return format_element(self, names)

    def __repr__(self):
        return f"Element({format_element(self)!r})"


def _accumulate(out: Dict, terms: Dict, factor: Scalar | None = None):
    for w, c in terms.items():
        if factor is not None:
            c = c * factor
        cur = out.get(w)
        if cur is None:
            if c:
                out[w] = c
        else:
            s = cur + c
            if s:
                out[w] = s
            else:
                del out[w]


def multiply(e1: Element, e2: Element) -> Element:
    e1._check(e2)
    out: Dict[Word, Scalar] = {}
    for w1, c1 in e1.terms.items():
        for w2, c2 in e2.terms.items():
            w = w1 + w2
            c = c1 * c2
            cur = out.get(w)
            out[w] = c if cur is None else cur + c
    return Element._raw(e1.ngens, {w: c for w, c in out.items() if c})


def adjoint(e: Element) -> Element:
    out: Dict[Word, Scalar] = {}
    for w, c in e.terms.items():
        out[word_star(w)] = c.conj()
    return Element._raw(e.ngens, out)


def _letter_name(l: Letter, names: Sequence[str] | None) -> str:
    base = names[l.index] if names else f"z{l.index}"
    return base + ("*" if l.starred else "")


def format_word(word: Word, names: Sequence[str] | None = None) -> str:
    return " ".join(_letter_name(l, names) for l in word) if word else "1"


def format_element(e: Element, names: Sequence[str] | None = None, order: "TermOrder | None" = None) -> str:
    if not e.terms:
        return "0"
    if order is None:
        words = sorted(e.terms, key=lambda w: (len(w), [(l.starred, l.index) for l in w]), reverse=True)
    else:
        words = sorted(e.terms, key=order.key, reverse=True)
    pieces = []
    for w in words:
        c = e.terms[w]
        body = format_word(w, names)
        if not w:
            pieces.append(_wrap(str(c)))
        elif c == 1:
            pieces.append(body)
        elif c == -1:
            pieces.append("-" + body)
        else:
            pieces.append(_wrap(str(c)) + " " + body)
    out = pieces[0]
    for piece in pieces[1:]:
        out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
    return out


def _wrap(s: str) -> str:
    # a coefficient with an inner sum needs parentheses to survive a round trip
    inner = s[1:] if s.startswith("-") else s
    if " + " in inner or " - " in inner:
        return f"({s})"
    return s


class TermOrder:
    """Degree-lexicographic order from a total precedence on letters.

    ``precedence`` lists letters from lowest to highest.
    """

    def __init__(self, precedence: Sequence[Letter]):
        self.precedence = tuple(precedence)
        self.rank = {l: i for i, l in enumerate(self.precedence)}
        if len(self.rank) != len(self.precedence):
            raise ValueError("duplicate letter in precedence")

    @classmethod
    def standard(cls, ngens: int) -> "TermOrder":
        """Plain letters ascending by index, then starred letters descending."""
        plain = [Letter(i, False) for i in range(ngens)]
        starred = [Letter(i, True) for i in reversed(range(ngens))]
        return cls(plain + starred)

    def key(self, word: Word):
        rank = self.rank
        return (len(word), tuple(rank[l] for l in word))

    def less(self, w1: Word, w2: Word) -> bool:
        return self.key(w1) < self.key(w2)

    def leading(self, e: Element) -> Word:
        return max(e.terms, key=self.key)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and self.precedence == other.precedence

    def __hash__(self):
        return hash(self.precedence)

    def __repr__(self):
        return f"TermOrder({list(self.precedence)!r})"


class RewriteRule:
    __slots__ = ("lhs", "rhs", "label")

    def __init__(self, lhs: Word, rhs: Element, label: str = ""):
        self.lhs = tuple(lhs)
        self.rhs = rhs
        self.label = label

    def orientable(self, order: TermOrder) -> bool:
        k = order.key(self.lhs)
        return all(order.key(w) < k for w in self.rhs.terms)

    def __eq__(self, other):
        return isinstance(other, RewriteRule) and self.lhs == other.lhs and self.rhs == other.rhs

    def __hash__(self):
        return hash(self.lhs)

    def __repr__(self):
        return f"RewriteRule({format_word(self.lhs)} -> {format_element(self.rhs)})"


class RuleIndex:
    """Lookup of rules by the first letter of their left-hand side."""

    def __init__(self, rules: Sequence[RewriteRule]):
        self.rules = list(rules)
        self.by_first: Dict[Letter, List[RewriteRule]] = {}
        self.pairs: Dict[Tuple[Letter, Letter], RewriteRule] = {}
        for r in self.rules:
            if not r.lhs:
                raise ValueError("rule with empty left-hand side")
            self.by_first.setdefault(r.lhs[0], []).append(r)
            if len(r.lhs) == 2:
                self.pairs.setdefault((r.lhs[0], r.lhs[1]), r)
        self.only_quadratic = all(len(r.lhs) == 2 for r in self.rules)

    def find(self, word: Word):
        """Leftmost redex as ``(position, rule)`` or ``None``."""
        if self.only_quadratic:
            pairs = self.pairs
            for i in range(len(word) - 1):
                r = pairs.get((word[i], word[i + 1]))
                if r is not None:
                    return i, r
            return None
        by_first = self.by_first
        n = len(word)
        for i in range(n):
            for r in by_first.get(word[i], ()):
                k = len(r.lhs)
                if i + k <= n and word[i:i + k] == r.lhs:
                    return i, r
        return None

    def is_normal(self, word: Word) -> bool:
        return self.find(word) is None


def _neg_key(order: TermOrder, word: Word):
    n, ranks = order.key(word)
    return (-n, tuple(-r for r in ranks))


def normalize(e: Element, pres, fuel: int = DEFAULT_FUEL,
              trace: Optional[Callable[[Word, int, RewriteRule], None]] = None) -> Element:
    """Normal form of ``e`` modulo the rules of ``pres``.

    ``pres`` is a :class:`~qcoact.presentations.Presentation`.  ``trace``
    is called as ``trace(word, position, rule)`` before each rewrite.
    Raises :class:`FuelExhausted` after ``fuel`` steps.
    """
    if e.ngens != pres.ngens:
        raise ValueError(f"element has {e.ngens} generators, presentation {pres.ngens}")
    order = pres.order
    index = pres.index
    check = pres.checked
    pending: Dict[Word, Scalar] = dict(e.terms)
    heap = [(_neg_key(order, w), w) for w in pending]
    heapq.heapify(heap)
    result: Dict[Word, Scalar] = {}
    steps = 0
    while heap:
        _, w = heapq.heappop(heap)
        c = pending.pop(w, None)
        if c is None or not c:
            continue
        hit = index.find(w)
        if hit is None:
            result[w] = c
            continue
        steps += 1
        if steps > fuel:
            raise FuelExhausted(fuel, w)
        pos, rule = hit
        if trace is not None:
            trace(w, pos, rule)
        prefix, suffix = w[:pos], w[pos + len(rule.lhs):]
        wkey = order.key(w) if check else None
        for rw, rc in rule.rhs.terms.items():
            nw = prefix + rw + suffix
            if check and not order.key(nw) < wkey:
                raise OrderViolation(f"rewrite of {format_word(w)} produced non-smaller {format_word(nw)}")
            nc = rc * c
            cur = pending.get(nw)
            if cur is None:
                pending[nw] = nc
                heapq.heappush(heap, (_neg_key(order, nw), nw))
            else:
                pending[nw] = cur + nc
    return Element._raw(e.ngens, result)


def equal(e1: Element, e2: Element, pres, fuel: int = DEFAULT_FUEL) -> bool:
    return normalize(e1 - e2, pres, fuel).is_zero()


def _rewrite_at(word: Word, pos: int, rule: RewriteRule, ngens: int) -> Element:
    prefix, suffix = word[:pos], word[pos + len(rule.lhs):]
    return Element(ngens, {prefix + w + suffix: c for w, c in rule.rhs.terms.items()})


def critical_pairs(pres, degree_cap: int = 5, fuel: int = DEFAULT_FUEL) -> List[Tuple[Word, Element]]:
    """All overlap and inclusion ambiguities up to ``degree_cap``.

    Returns ``(word, residual)`` for each ambiguity, where the residual is
    the normalized difference of the two one-step rewrites.  Zero
    residuals are included, so callers can count what was checked.
    """
    if degree_cap < 3:
        raise ValueError("degree_cap must be at least 3")
    rules = pres.rules
    n = pres.ngens
    out = []
    seen = set()
    for i, r1 in enumerate(rules):
        l1 = r1.lhs
        for j, r2 in enumerate(rules):
            l2 = r2.lhs
            # overlap: proper suffix of l1 equals proper prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    w = l1 + l2[k:]
                    if len(w) > degree_cap:
                        continue
                    key = (w, i, 0, j, len(l1) - k)
                    if key in seen:
                        continue
                    seen.add(key)
                    a = _rewrite_at(w, 0, r1, n)
                    b = _rewrite_at(w, len(l1) - k, r2, n)
                    out.append((w, normalize(a - b, pres, fuel)))
            # inclusion: l2 inside l1
            if i != j and len(l2) <= len(l1) and len(l1) <= degree_cap:
                for pos in range(len(l1) - len(l2) + 1):
                    if l1[pos:pos + len(l2)] == l2:
                        a = _rewrite_at(l1, 0, r1, n)
                        b = _rewrite_at(l1, pos, r2, n)
                        out.append((l1, normalize(a - b, pres, fuel)))
    return out


def nonzero_pairs(pairs: List[Tuple[Word, Element]]) -> List[Tuple[Word, Element]]:
    return [(w, r) for w, r in pairs if not r.is_zero()]
