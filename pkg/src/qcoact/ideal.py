"""Bounded two-sided ideal membership with an exact certificate.

Used when a presentation's rewrite system is not confluent, so that a
nonzero normal form does not prove an identity false.  The rules are
split into a confluent *base* (rewriting) and *extra* relations whose
two-sided ideal is searched explicitly:

    den * f  =  sum_k  num_k * u_k * g_k * v_k        (modulo the base)

with ``u_k, v_k`` base-normal words.  The search runs in exact
arithmetic at a rational sample point, then the coefficients are
recomputed symbolically by fraction-free elimination and the identity
above is re-checked symbolically.  Only that final check decides, so a
returned certificate is a proof for every parameter value where ``den``
does not vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .ncpoly import Element, Letter, Word, critical_pairs, nonzero_pairs, normalize
from .scalars import GaussRational, ONE, ZERO, Scalar, scalar_divexact

__all__ = ["Certificate", "IdealOracle", "bareiss_solve"]

SAMPLE = (Fraction(3, 4), Fraction(2, 3), GaussRational(Fraction(3, 5), Fraction(4, 5)))


@dataclass
class Certificate:
    den: Scalar
    terms: List[Tuple[Word, int, Word, Scalar]]  # (u, generator index, v, numerator)

    def __len__(self):
        return len(self.terms)


def bareiss_solve(M: List[List[Scalar]], rhs: List[Scalar]):
    """Solve the square system ``M x = rhs`` over the Laurent ring's fraction field.

    Returns ``(det, nums)`` with ``x_i = nums[i] / det``, or ``None`` when
    ``M`` is singular.
    """
    k = len(M)
    A = [list(row) + [rhs[i]] for i, row in enumerate(M)]
    prev = ONE
    for col in range(k):
        piv = next((r for r in range(col, k) if A[r][col]), None)
        if piv is None:
            return None
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        for r in range(col + 1, k):
            a_rc = A[r][col]
            for c in range(col + 1, k + 1):
                val = p * A[r][c] - a_rc * A[col][c]
                q = scalar_divexact(val, prev)
                if q is None:
                    raise ArithmeticError("inexact division in fraction-free elimination")
                A[r][c] = q
            A[r][col] = ZERO
        prev = p
    det = A[k - 1][k - 1]
    # back substitution keeping the common denominator det
    nums = [ZERO] * k
    for i in reversed(range(k)):
        acc = A[i][k] * det
        for j in range(i + 1, k):
            acc = acc - A[i][j] * nums[j]
        q = scalar_divexact(acc, A[i][i])
        if q is None:
            raise ArithmeticError("inexact division in back substitution")
        nums[i] = q
    return det, nums


class IdealOracle:
    """Membership in ``base + (extra)`` for a presentation.

    ``base`` must be confluent (checked on construction up to degree 4);
    ``extra`` are the generators of the remaining ideal, e.g. ``S - 1``
    for a sphere relation.
    """

    def __init__(self, base, extra: Sequence[Element], point=SAMPLE):
        bad = nonzero_pairs(critical_pairs(base, 4))
        if bad:
            raise ValueError(f"base system {base.name} is not confluent")
        self.base = base
        self.extra = list(extra)
        self.point = point
        self.n = base.ngens
        letters = [Letter(i, s) for i in range(self.n) for s in (False, True)]
        self._normal_words: Dict[int, List[Word]] = {0: [()]}
        self._letters = letters
        self._col_cache: Dict[Tuple[Word, int, Word], Dict[Word, Scalar]] = {}

    def normal_words(self, d: int) -> List[Word]:
        if d not in self._normal_words:
            prev = self.normal_words(d - 1)
            out = []
            for w in prev:
                for l in self._letters:
                    nw = w + (l,)
                    if self.base.index.find(nw) is None:
                        out.append(nw)
            self._normal_words[d] = out
        return self._normal_words[d]

    def column(self, u: Word, g: int, v: Word) -> Dict[Word, Scalar]:
        key = (u, g, v)
        col = self._col_cache.get(key)
        if col is None:
            e = Element.word(self.n, u) * self.extra[g] * Element.word(self.n, v)
            col = self.base.normal_terms(e.terms)
            self._col_cache[key] = col
        return col

    def _eval(self, s: Scalar):
        t, u, w = self.point
        return s.eval(t, u, w)

    def certificate(self, f: Element, slack: int = 0) -> Optional[Certificate]:
        target = self.base.normal_terms(f.terms)
        if not target:
            return Certificate(ONE, [])
        deg = max(len(w) for w in target)
        columns = []
        for g, gen in enumerate(self.extra):
            budget = max(0, deg - gen.degree()) + slack
            for total in range(budget + 1):
                for a in range(total + 1):
                    for u in self.normal_words(a):
                        for v in self.normal_words(total - a):
                            columns.append((u, g, v))
        # numeric elimination: echelon basis keyed by pivot word
        basis: Dict[Word, Tuple[Dict[Word, GaussRational], Dict[int, GaussRational]]] = {}
        order = self.base.order

        def reduce(vec, combo):
            while vec:
                lead = max(vec, key=order.key)
                if lead not in basis:
                    return lead, vec, combo
                bvec, bcombo = basis[lead]
                f_ = vec[lead] / bvec[lead]
                for w, c in bvec.items():
                    x = vec.get(w, GaussRational(0)) - f_ * c
                    if x:
                        vec[w] = x
                    else:
                        vec.pop(w, None)
                for j, c in bcombo.items():
                    x = combo.get(j, GaussRational(0)) - f_ * c
                    if x:
                        combo[j] = x
                    else:
                        combo.pop(j, None)
            return None, vec, combo

        for j, key in enumerate(columns):
            col = self.column(*key)
            vec = {w: self._eval(c) for w, c in col.items()}
            vec = {w: c for w, c in vec.items() if c}
            lead, vec, combo = reduce(vec, {j: GaussRational(1)})
            if lead is not None:
                basis[lead] = (vec, combo)
        tvec = {w: self._eval(c) for w, c in target.items()}
        tvec = {w: c for w, c in tvec.items() if c}
        lead, rest, combo = reduce(tvec, {})
        if lead is not None:
            return None
        used = sorted(combo)  # target = -sum combo_j * column_j at the sample point
        if not used:
            return None
        # choose rows making the used columns nonsingular at the sample point
        rows = self._pivot_rows([self.column(*columns[j]) for j in used])
        if rows is None:
            return None
        M = [[self.column(*columns[j]).get(r, ZERO) for j in used] for r in rows]
        rhs = [target.get(r, ZERO) for r in rows]
        sol = bareiss_solve(M, rhs)
        if sol is None:
            return None
        det, nums = sol
        # symbolic check over every word
        acc: Dict[Word, Scalar] = {w: c * det for w, c in target.items()}
        for j, num in zip(used, nums):
            for w, c in self.column(*columns[j]).items():
                x = acc.get(w, ZERO) - c * num
                if x:
                    acc[w] = x
                else:
                    acc.pop(w, None)
        if acc:
            return None
        terms = [(columns[j][0], columns[j][1], columns[j][2], num) for j, num in zip(used, nums) if num]
        return Certificate(det, terms)

    def _pivot_rows(self, cols: List[Dict[Word, Scalar]]) -> Optional[List[Word]]:
        k = len(cols)
        words = sorted({w for c in cols for w in c}, key=self.base.order.key, reverse=True)
        chosen: List[Word] = []
        # greedy: add a row if it raises the rank of the row-restricted matrix
        basis: Dict[int, List[GaussRational]] = {}
        for w in words:
            vec = [self._eval(c.get(w, ZERO)) for c in cols]
            for p, bvec in basis.items():
                if vec[p]:
                    f_ = vec[p] / bvec[p]
                    vec = [x - f_ * y for x, y in zip(vec, bvec)]
            piv = next((i for i, x in enumerate(vec) if x), None)
            if piv is not None:
                basis[piv] = vec
                chosen.append(w)
                if len(chosen) == k:
                    return chosen
        return None

    def member(self, f: Element, max_slack: int = 1) -> Optional[Certificate]:
        for slack in range(max_slack + 1):
            cert = self.certificate(f, slack)
            if cert is not None:
                return cert
        return None

    def check(self, f: Element, cert: Certificate) -> bool:
        """Independent re-check of a certificate."""
        lhs = Element(self.n, {w: c * cert.den for w, c in f.terms.items()})
        for u, g, v, num in cert.terms:
            lhs = lhs - (Element.word(self.n, u) * self.extra[g] * Element.word(self.n, v)).scale(num)
        return normalize(lhs, self.base).is_zero()
