"""Hopf structure of A(SU_q(2)) and tensor products of presented algebras."""

from __future__ import annotations

import random
from typing import Dict, List, Sequence, Tuple

from .ncpoly import EMPTY, Element, Letter, Word, adjoint, word_star
from .presentations import Presentation, preset_suq2
from .report import Report
from .scalars import ONE, ZERO, Scalar

__all__ = [
    "TensorElement",
    "tensor",
    "H",
    "coproduct",
    "counit",
    "antipode",
    "check_hopf_axioms",
    "check_fundamental_unitary",
    "random_element",
]

A_, B_ = Letter(0, False), Letter(1, False)
AS, BS = Letter(0, True), Letter(1, True)


class TensorElement:
    """Element of ``P_1 ⊗ ... ⊗ P_k`` with slotwise normal forms.

    Constructors and arithmetic keep every slot word normal, so equality
    is map identity.  There is no braiding: ``(x⊗y)(x'⊗y') = xx'⊗yy'``.
    """

    __slots__ = ("slots", "terms")

    def __init__(self, slots: Sequence[Presentation], terms: Dict[Tuple[Word, ...], Scalar] | None = None,
                 normalized: bool = False):
        self.slots = tuple(slots)
        terms = terms or {}
        self.terms = dict(terms) if normalized else _normalize_terms(self.slots, terms)

    @property
    def arity(self) -> int:
        return len(self.slots)

    @classmethod
    def zero(cls, slots) -> "TensorElement":
        return cls(slots, {}, normalized=True)

    @classmethod
    def one(cls, slots) -> "TensorElement":
        return cls(slots, {tuple(EMPTY for _ in slots): ONE}, normalized=True)

    def _check(self, other: "TensorElement"):
        if self.slots != other.slots and [s.name for s in self.slots] != [s.name for s in other.slots]:
            raise ValueError("tensor slot mismatch")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        out = dict(self.terms)
        _acc(out, other.terms)
        return TensorElement(self.slots, out, normalized=True)

    def __neg__(self):
        return TensorElement(self.slots, {k: -c for k, c in self.terms.items()}, normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = Scalar.coerce(c)
        if not c:
            return TensorElement.zero(self.slots)
        return TensorElement(self.slots, {k: v * c for k, v in self.terms.items()}, normalized=True)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        self._check(other)
        raw: Dict[Tuple[Word, ...], Scalar] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                c = c1 * c2
                cur = raw.get(k)
                raw[k] = c if cur is None else cur + c
        return TensorElement(self.slots, raw)

    def __rmul__(self, other):
        return self.scale(other)

    def adjoint(self) -> "TensorElement":
        raw = {tuple(word_star(w) for w in k): c.conj() for k, c in self.terms.items()}
        return TensorElement(self.slots, raw)

    def map_coeffs(self, f) -> "TensorElement":
        return TensorElement(self.slots, {k: f(c) for k, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms and \
            [s.name for s in self.slots] == [s.name for s in other.slots]

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, *words: Word) -> Scalar:
        return self.terms.get(tuple(words), ZERO)

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda k: [s.order.key(w) for s, w in zip(self.slots, k)], reverse=True):
            c = self.terms[k]
            body = " ⊗ ".join(s.format(Element.word(s.ngens, w)) for s, w in zip(self.slots, k))
            parts.append(f"({c}) {body}" if c != 1 else body)
        return " + ".join(parts)

    def __repr__(self):
        return f"TensorElement({self.format()})"


def _acc(out, terms):
    for k, c in terms.items():
        cur = out.get(k)
        if cur is None:
            out[k] = c
        else:
            s = cur + c
            if s:
                out[k] = s
            else:
                del out[k]


def _normalize_terms(slots, terms):
    out: Dict[Tuple[Word, ...], Scalar] = {}
    for key, c in terms.items():
        if not c:
            continue
        partial = {(): c}
        for pres, w in zip(slots, key):
            nf = pres.word_nf(w)
            nxt = {}
            for pk, pc in partial.items():
                for nw, nc in nf.items():
                    nxt[pk + (nw,)] = pc * nc
            partial = nxt
        for k, v in partial.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
    return {k: v for k, v in out.items() if v}


def tensor(*elements: Element, slots: Sequence[Presentation]) -> TensorElement:
    """Pure tensor ``e_1 ⊗ ... ⊗ e_k``."""
    raw = {(): ONE}
    for e in elements:
        nxt = {}
        for k, c in raw.items():
            for w, v in e.terms.items():
                nxt[k + (w,)] = c * v
        raw = nxt
    return TensorElement(slots, raw)


# ---------------------------------------------------------------------------
# Hopf structure of H = A(SU_q(2))
# ---------------------------------------------------------------------------

_H = None


def H() -> Presentation:
    global _H
    if _H is None:
        _H = preset_suq2()
    return _H


def _letter_coproduct(l: Letter) -> Dict[Tuple[Word, Word], Scalar]:
    q = Scalar.q()
    if l == A_:
        return {((A_,), (A_,)): ONE, ((B_,), (BS,)): -q}
    if l == AS:
        return {((AS,), (AS,)): ONE, ((BS,), (B_,)): -q}
    if l == B_:
        return {((B_,), (AS,)): ONE, ((A_,), (B_,)): ONE}
    if l == BS:
        return {((BS,), (A_,)): ONE, ((AS,), (BS,)): ONE}
    raise ValueError(f"not a generator of H: {l!r}")


_DELTA_CACHE: Dict[Word, TensorElement] = {}


def _word_coproduct(w: Word) -> TensorElement:
    hit = _DELTA_CACHE.get(w)
    if hit is not None:
        return hit
    h = H()
    if not w:
        out = TensorElement.one((h, h))
    else:
        out = _word_coproduct(w[:-1]) * TensorElement((h, h), _letter_coproduct(w[-1]))
    _DELTA_CACHE[w] = out
    return out


def coproduct(e: Element) -> TensorElement:
    """Δ on H, extended multiplicatively; result normalized slotwise."""
    h = H()
    out: Dict[Tuple[Word, ...], Scalar] = {}
    for w, c in e.terms.items():
        for k, v in _word_coproduct(w).terms.items():
            x = out.get(k, ZERO) + v * c
            if x:
                out[k] = x
            else:
                out.pop(k, None)
    return TensorElement((h, h), out, normalized=True)


def letter_counit(l: Letter) -> Scalar:
    return ONE if l.index == 0 else ZERO


def word_counit(w: Word) -> Scalar:
    for l in w:
        if l.index != 0:
            return ZERO
    return ONE


def counit(e: Element) -> Scalar:
    out = ZERO
    for w, c in e.terms.items():
        out = out + c * word_counit(w)
    return out


def _letter_antipode(l: Letter) -> Element:
    q = Scalar.q()
    if l == A_:
        return Element.gen(2, 0, True)
    if l == AS:
        return Element.gen(2, 0)
    if l == B_:
        return Element.gen(2, 1).scale(-q)
    if l == BS:
        return Element.gen(2, 1, True).scale(-q.inverse())
    raise ValueError(f"not a generator of H: {l!r}")


def antipode(e: Element) -> Element:
    """S on H, extended anti-multiplicatively; normalized."""
    h = H()
    out = Element.zero(2)
    for w, c in e.terms.items():
        img = Element.one(2, c)
        for l in reversed(w):
            img = img * _letter_antipode(l)
        out = out + img
    return h.normalize(out)


def _slot_map(t: TensorElement, slot: int, f, new_slots) -> TensorElement:
    """Apply a linear map ``f: Word -> TensorElement-like dict`` in one slot."""
    raw: Dict[Tuple[Word, ...], Scalar] = {}
    for k, c in t.terms.items():
        for sub, v in f(k[slot]).items():
            nk = k[:slot] + sub + k[slot + 1:]
            x = raw.get(nk)
            raw[nk] = c * v if x is None else x + c * v
    return TensorElement(new_slots, raw)


def delta_in_slot(t: TensorElement, slot: int) -> TensorElement:
    """Apply Δ to one H-slot, raising the arity by one."""
    new_slots = t.slots[:slot] + (H(), H()) + t.slots[slot + 1:]
    return _slot_map(t, slot, lambda w: _word_coproduct(w).terms, new_slots)


def counit_in_slot(t: TensorElement, slot: int) -> TensorElement:
    new_slots = t.slots[:slot] + t.slots[slot + 1:]
    return _slot_map(t, slot, lambda w: {(): word_counit(w)}, new_slots)


def random_element(rng: random.Random, ngens: int, max_degree: int = 3, max_terms: int = 3,
                   coeffs: Sequence[Scalar] | None = None) -> Element:
    coeffs = coeffs or [ONE, -ONE, Scalar.q(), Scalar.const(2), Scalar.t() * Scalar.const(3), Scalar.q(-1)]
    out = Element.zero(ngens)
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_degree)
        w = tuple(Letter(rng.randrange(ngens), rng.random() < 0.5) for _ in range(d))
        out = out + Element.word(ngens, w, rng.choice(coeffs))
    return out


def check_hopf_axioms(samples: int = 20, seed: int = 2024) -> Report:
    """All Hopf-axiom families on the generators and on random elements."""
    h = H()
    rep = Report("hopf")
    rng = random.Random(seed)
    gens = [("a", h.gen(0)), ("b", h.gen(1)), ("a*", h.gen(0, True)), ("b*", h.gen(1, True))]
    cases = gens + [(f"random{i:02d}", random_element(rng, 2)) for i in range(samples)]
    for name, e in cases:
        d = coproduct(e)
        e_n = h.normalize(e)
        lhs = delta_in_slot(d, 0)
        rhs = delta_in_slot(d, 1)
        diff = lhs - rhs
        rep.add(f"coassociativity/{name}", diff.is_zero(), len(diff.terms))
        left = counit_in_slot(d, 0)
        right = counit_in_slot(d, 1)
        r1 = Element(2, {k[0]: c for k, c in left.terms.items()}) - e_n
        r2 = Element(2, {k[0]: c for k, c in right.terms.items()}) - e_n
        rep.add(f"counit/{name}", r1.is_zero() and r2.is_zero(), len(r1.terms) + len(r2.terms))
        eps = Element.one(2, counit(e))
        mS1 = Element.zero(2)
        mS2 = Element.zero(2)
        for (w1, w2), c in d.terms.items():
            mS1 = mS1 + antipode(Element.word(2, w1)) * Element.word(2, w2, c)
            mS2 = mS2 + Element.word(2, w1, c) * antipode(Element.word(2, w2))
        r1 = h.normalize(mS1 - eps)
        r2 = h.normalize(mS2 - eps)
        rep.add(f"antipode/{name}", r1.is_zero() and r2.is_zero(), len(r1.terms) + len(r2.terms))
        star_diff = coproduct(adjoint(e)) - d.adjoint()
        rep.add(f"coproduct-star/{name}", star_diff.is_zero(), len(star_diff.terms))
        eps_diff = counit(adjoint(e)) - counit(e).conj()
        rep.add(f"counit-star/{name}", eps_diff.is_zero(), len(eps_diff.terms))
    # well-definedness: every map sends each defining relation to a valid identity
    for rel in h.relations:
        d = coproduct(rel.lhs) - coproduct(rel.rhs)
        rep.add(f"respects/coproduct/{rel.id}", d.is_zero(), len(d.terms))
        s = antipode(rel.lhs) - antipode(rel.rhs)
        rep.add(f"respects/antipode/{rel.id}", s.is_zero(), len(s.terms))
        c = counit(rel.lhs) - counit(rel.rhs)
        rep.add(f"respects/counit/{rel.id}", c.is_zero(), len(c.terms))
    return rep.finish()


def unitary() -> List[List[Element]]:
    h = H()
    q = Scalar.q()
    return [[h.gen(0), h.gen(1)], [h.gen(1, True).scale(-q), h.gen(0, True)]]


def check_fundamental_unitary() -> Report:
    """u u^* = u^* u = 1 and Δ(u) = u ⊗̇ u for the fundamental unitary."""
    h = H()
    rep = Report("fundamental-unitary")
    u = unitary()
    ustar = [[adjoint(u[j][i]) for j in range(2)] for i in range(2)]
    for name, (X, Y) in (("u u*", (u, ustar)), ("u* u", (ustar, u))):
        for i in range(2):
            for j in range(2):
                entry = X[i][0] * Y[0][j] + X[i][1] * Y[1][j]
                target = Element.one(2) if i == j else Element.zero(2)
                r = h.normalize(entry - target)
                rep.add(f"{name}/{i}{j}", r.is_zero(), len(r.terms))
    for i in range(2):
        for j in range(2):
            dot = TensorElement.zero((h, h))
            for k in range(2):
                dot = dot + tensor(u[i][k], u[k][j], slots=(h, h))
            r = coproduct(u[i][j]) - dot
            rep.add(f"delta-u/{i}{j}", r.is_zero(), len(r.terms))
    return rep.finish()
