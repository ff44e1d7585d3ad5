"""Exhaustive classification of first-degree coactions at a parameter point.

The unknowns are the entries of A, A', B, B', D, D' (C = I - A and
C' = -A' are eliminated).  Each unknown ``x_i`` has two polynomial
variables, ``2i`` for x and ``2i+1`` for its conjugate; a polynomial is
a dict from sorted variable tuples to coefficients.

Constraints are generated symbolically (coefficients in q, p only),
evaluated at the sample point, and searched by support enumeration:

* stage 1: diagonal of A in {0,1} (A off the diagonal is zero);
* stage 2: for B, B', D, D' column by column, the row holding the
  (at most one) nonzero entry, or none;
* stage 3: zero / nonzero for anything still undecided;

with propagation after every choice and a substitution solver at the
leaves.  ``lemmas=False`` skips stages 1-2 and branches zero / nonzero on
every unknown, A included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .coaction import CoactionSpec, CoeffMatrix, MATRIX_KEYS, verify
from .hopf import H, _letter_coproduct
from .ncpoly import Letter, Word
from .presentations import Presentation, preset_bl, preset_suq2, preset_vs
from .report import Report
from .scalars import ONE, ZERO, GaussRational, Scalar

__all__ = [
    "Unknown",
    "ConstraintSystem",
    "SolutionFamily",
    "ClassificationResult",
    "generate_constraints",
    "solve",
    "classify",
    "known_families",
    "compare",
    "FAMILY_IDS",
    "DEFAULT_POINTS",
]

TAGS = ("A", "Ap", "B", "Bp", "D", "Dp")
COLUMN_TAGS = ("B", "Bp", "D", "Dp")
DEFAULT_POINTS = {"p=q": (Fraction(3, 4), Fraction(3, 4)), "p!=q": (Fraction(3, 4), Fraction(1, 2))}
SECOND_POINT = (Fraction(1, 2), Fraction(1, 2))

UNDECIDED, ZERO_S, NONZERO_S = 0, 1, 2


@dataclass(frozen=True)
class Unknown:
    tag: str
    row: int
    col: int

    def label(self) -> str:
        return f"{self.tag}{self.row}{self.col}"


# ---------------------------------------------------------------------------
# small polynomial kit: dict mono -> coeff, mono a sorted tuple of var ids
# ---------------------------------------------------------------------------

def _padd(out: Dict, p: Dict, factor=None):
    for m, c in p.items():
        if factor is not None:
            c = c * factor
        x = out.get(m)
        x = c if x is None else x + c
        if x:
            out[m] = x
        else:
            out.pop(m, None)
    return out


def _pmul(p1: Dict, p2: Dict) -> Dict:
    out: Dict = {}
    for m1, c1 in p1.items():
        for m2, c2 in p2.items():
            m = tuple(sorted(m1 + m2))
            x = out.get(m)
            x = c1 * c2 if x is None else x + c1 * c2
            if x:
                out[m] = x
            else:
                out.pop(m, None)
    return out


def _pconj(p: Dict) -> Dict:
    return {tuple(sorted(v ^ 1 for v in m)): c.conj() for m, c in p.items()}


# ---------------------------------------------------------------------------
# constraint generation
# ---------------------------------------------------------------------------

@dataclass
class ConstraintSystem:
    pres: Presentation
    unknowns: List[Unknown]
    index: Dict[Tuple[str, int, int], int]  # every (tag, row, col) -> unknown id
    equations: List[Tuple[str, Dict]]
    ansatz: bool = False

    @property
    def n(self) -> int:
        return self.pres.ngens

    def var(self, tag: str, row: int, col: int, conj: bool = False) -> int:
        return 2 * self.index[(tag, row, col)] + (1 if conj else 0)

    def __repr__(self):
        return (f"ConstraintSystem({self.pres.name}, unknowns={len(self.unknowns)}, "
                f"equations={len(self.equations)}, ansatz={self.ansatz})")


def _unknowns(n: int, ansatz: bool):
    if ansatz and n != 4:
        raise ValueError("the symmetric ansatz needs four generators")
    unknowns: List[Unknown] = []
    index: Dict[Tuple[str, int, int], int] = {}
    for tag in TAGS:
        for j in range(n):
            for k in range(n):
                key = (tag, j, k)
                rep = min(key, (tag, (j + 2) % 4, (k + 2) % 4)) if ansatz else key
                if rep not in index:
                    index[rep] = len(unknowns)
                    unknowns.append(Unknown(*rep))
                index[key] = index[rep]
    return unknowns, index


def _psi_forms(n: int, index) -> List[Dict[Tuple[Letter, Letter], Dict]]:
    """Ψ(z_j) as {(source letter, H letter): linear form}."""
    ha, hb, has, hbs = Letter(0, False), Letter(1, False), Letter(0, True), Letter(1, True)
    forms = []
    for j in range(n):
        f: Dict[Tuple[Letter, Letter], Dict] = {}
        for k in range(n):
            z, zs = Letter(k, False), Letter(k, True)

            def var(tag):
                return {(2 * index[(tag, j, k)],): ONE}
            f[(z, ha)] = var("A")
            f[(zs, ha)] = var("Ap")
            f[(z, hb)] = var("B")
            f[(zs, hb)] = var("Bp")
            c = {(2 * index[("A", j, k)],): -ONE}
            if j == k:
                c[()] = ONE
            f[(z, has)] = c
            f[(zs, has)] = {(2 * index[("Ap", j, k)],): -ONE}
            f[(z, hbs)] = var("D")
            f[(zs, hbs)] = var("Dp")
        forms.append(f)
    return forms


def _psi_of(forms, l: Letter):
    f = forms[l.index]
    if not l.starred:
        return f
    return {(s.star(), h.star()): _pconj(p) for (s, h), p in f.items()}


def generate_constraints(pres: Presentation, ansatz: bool = False) -> ConstraintSystem:
    """Counit (eliminated), coassociativity and homomorphism constraints."""
    n = pres.ngens
    unknowns, index = _unknowns(n, ansatz)
    forms = _psi_forms(n, index)
    letters = [Letter(k, s) for k in range(n) for s in (False, True)]
    psi = {l: _psi_of(forms, l) for l in letters}
    eqs: List[Tuple[str, Dict]] = []
    names = list(pres.generators)

    def lname(l: Letter) -> str:
        return names[l.index] + ("*" if l.starred else "")

    hnames = ["a", "b"]

    def hname(l: Letter) -> str:
        return hnames[l.index] + ("*" if l.starred else "")

    # coassociativity, coefficient of z_k^(*) ⊗ h1 ⊗ h2 in Ψ(z_j)
    hl = [Letter(0, False), Letter(1, False), Letter(0, True), Letter(1, True)]
    delta = {h: _letter_coproduct(h) for h in hl}
    for j in range(n):
        pj = psi[Letter(j, False)]
        for src in letters:
            for h1 in hl:
                for h2 in hl:
                    acc: Dict = {}
                    for mid in letters:
                        outer = pj.get((mid, h2))
                        inner = psi[mid].get((src, h1))
                        if outer and inner:
                            _padd(acc, _pmul(outer, inner))
                    for h in hl:
                        c = delta[h].get(((h1,), (h2,)))
                        p = pj.get((src, h))
                        if c and p:
                            _padd(acc, p, -c)
                    if acc:
                        eqs.append((f"coassoc/{names[j]}/{lname(src)}|{hname(h1)} {hname(h2)}", acc))
    # homomorphism, one equation per basis monomial of A ⊗ H
    h = H()
    for rel in pres.relations:
        e = rel.lhs - rel.rhs
        if e.degree() > 2:
            raise ValueError(f"unsupported relation degree {e.degree()} in {rel.id}")
        acc: Dict[Tuple[Word, Word], Dict] = {}
        for w, c in e.terms.items():
            if len(w) == 0:
                _padd(acc.setdefault(((), ()), {}), {(): c})
            elif len(w) == 1:
                for (s, hh), p in psi[w[0]].items():
                    _padd(acc.setdefault(((s,), (hh,)), {}), p, c)
            else:
                for (s1, h1), p1 in psi[w[0]].items():
                    for (s2, h2), p2 in psi[w[1]].items():
                        prod = _pmul(p1, p2)
                        nfa = pres.word_nf((s1, s2))
                        nfh = h.word_nf((h1, h2))
                        for wa, ca in nfa.items():
                            for wh, ch in nfh.items():
                                _padd(acc.setdefault((wa, wh), {}), prod, c * ca * ch)
        for (wa, wh), p in sorted(acc.items(), key=lambda kv: (len(kv[0][0]), kv[0])):
            if p:
                label = " ".join(lname(l) for l in wa) or "1"
                label += " (x) " + (" ".join(hname(l) for l in wh) or "1")
                eqs.append((f"rel/{rel.id}/{label}", p))
    # conjugate copies
    out = []
    for label, p in eqs:
        out.append((label, p))
        out.append((label + "~", _pconj(p)))
    for _, p in out:
        for c in p.values():
            assert c.is_w_free(), "generated constraint depends on w"
    return ConstraintSystem(pres, unknowns, index, out, ansatz)


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------

@dataclass
class SolutionFamily:
    id: str
    assignment: Dict[Unknown, Scalar]  # nonzero unknowns only; w is the free unit parameter
    description: str
    spec: CoactionSpec

    def key(self):
        return tuple(sorted((u.label(), str(v)) for u, v in self.assignment.items()))

    def to_json(self) -> Dict:
        return {"id": self.id, "assignment": {u.label(): str(v) for u, v in
                                             sorted(self.assignment.items(), key=lambda kv: kv[0].label())}}


@dataclass
class ClassificationResult:
    preset: str
    m: Optional[int]
    t: Fraction
    u: Fraction
    ansatz: bool
    lemmas: bool
    families: List[SolutionFamily] = field(default_factory=list)
    unsat_branches: int = 0
    nodes: int = 0
    unresolved: List[Dict] = field(default_factory=list)
    limit_hit: bool = False
    audit_covered: int = 0
    audit_total: int = 0
    by_diagonal: Dict[str, Dict[str, int]] = field(default_factory=dict)

    @property
    def audit_complete(self) -> bool:
        return not self.limit_hit and self.audit_covered == self.audit_total

    def to_json(self) -> Dict:
        return {
            "preset": self.preset,
            "m": self.m,
            "t": str(self.t),
            "u": str(self.u),
            "ansatz": self.ansatz,
            "families": [f.to_json() for f in self.families],
            "unsat_branches": self.unsat_branches,
            "nodes": self.nodes,
            "unresolved": self.unresolved,
        }

    def signature(self):
        return ([f.key() for f in self.families], self.unsat_branches, self.nodes,
                len(self.unresolved), self.audit_covered)


class _NodeLimit(Exception):
    pass


# ---------------------------------------------------------------------------
# numeric equations and propagation
# ---------------------------------------------------------------------------

def _numeric(system: ConstraintSystem, t_val, u_val):
    seen = set()
    out = []
    for label, p in system.equations:
        num = {}
        for m, c in p.items():
            v = c.eval(t_val, u_val, GaussRational(1))
            if v:
                num[m] = v
        if not num:
            continue
        lead = num[min(num)]
        key = tuple(sorted((m, c / lead) for m, c in num.items()))
        if key in seen:
            continue
        seen.add(key)
        out.append((label, num))
    return out


def _substitute_const(eqs, values: Dict[int, GaussRational]):
    """Replace unknowns by constants (conjugate variables by the conjugate)."""
    out = []
    for label, p in eqs:
        q: Dict = {}
        for m, c in p.items():
            rest = []
            for v in m:
                val = values.get(v >> 1)
                if val is None:
                    rest.append(v)
                else:
                    c = c * (val.conj() if v & 1 else val)
            if c:
                key = tuple(rest)
                x = q.get(key)
                x = c if x is None else x + c
                if x:
                    q[key] = x
                else:
                    q.pop(key, None)
        if q:
            out.append((label, q))
    return out


class _Unsat(Exception):
    pass


class _Search:
    def __init__(self, system: ConstraintSystem, t_val, u_val, node_cap: int, lemmas: bool):
        self.system = system
        self.t, self.u = t_val, u_val
        self.node_cap = node_cap
        self.lemmas = lemmas
        self.n = system.n
        self.N = len(system.unknowns)
        self.base_eqs = _numeric(system, t_val, u_val)
        self.nodes = 0
        self.unsat = 0
        self.unresolved: List[Dict] = []
        self.families: List[Tuple[Dict[int, Scalar], str]] = []
        self.covered = 0
        self.frontier: List[str] = []

    # propagation --------------------------------------------------------
    def _set(self, status, u, s, queue):
        cur = status[u]
        if cur == s:
            return
        if cur != UNDECIDED:
            raise _Unsat
        status[u] = s
        queue.append(u)

    def propagate(self, eqs, occ, status, queue):
        while queue:
            u = queue.pop()
            for ei in occ.get(u, ()):
                self._analyze(eqs[ei][1], status, queue)

    def _analyze(self, p, status, queue):
        live = []
        const = None
        for m, c in p.items():
            if not m:
                const = c
                continue
            if any(status[v >> 1] == ZERO_S for v in m):
                continue
            live.append((m, c))
        if not live:
            if const:
                raise _Unsat
            return
        if const is None:
            if len(live) == 1:
                m = live[0][0]
                if len(m) == 1:
                    self._set(status, m[0] >> 1, ZERO_S, queue)
                    return
                ua, ub = m[0] >> 1, m[1] >> 1
                if ua == ub:
                    self._set(status, ua, ZERO_S, queue)
                elif status[ua] == NONZERO_S and status[ub] == NONZERO_S:
                    raise _Unsat
                elif status[ua] == NONZERO_S:
                    self._set(status, ub, ZERO_S, queue)
                elif status[ub] == NONZERO_S:
                    self._set(status, ua, ZERO_S, queue)
                return
            norms = _norm_terms(live)
            if norms is not None and (all(c > 0 for _, c in norms) or all(c < 0 for _, c in norms)):
                for u, _ in norms:
                    self._set(status, u, ZERO_S, queue)
            return
        if len(live) == 1:
            for v in live[0][0]:
                self._set(status, v >> 1, NONZERO_S, queue)
            return
        if const.is_real():
            norms = _norm_terms(live)
            if norms is not None and all(c * const.re > 0 for _, c in norms):
                raise _Unsat

    # search -------------------------------------------------------------
    def run(self) -> None:
        n = self.n
        if self.lemmas:
            half = n // 2 if self.system.ansatz else n
            ncols = (n // 2 if self.system.ansatz else n)
            decisions = [("col", tag, k) for tag in COLUMN_TAGS for k in range(ncols)]
            sizes = [n + 1] * len(decisions)
            self.total = (2 ** half) * math.prod(sizes)
            for bits in range(2 ** half):
                diag = [(bits >> (half - 1 - i)) & 1 for i in range(half)]
                if self.system.ansatz:
                    diag = diag + diag
                self._run_diag(diag, decisions, sizes)
        else:
            decisions = [("unk", i) for i in range(self.N)]
            sizes = [2] * self.N
            self.total = 2 ** self.N
            self._run_tree(self.base_eqs, {}, [UNDECIDED] * self.N, decisions, sizes, "free")

    def _run_diag(self, diag, decisions, sizes):
        values: Dict[int, GaussRational] = {}
        status = [UNDECIDED] * self.N
        for j in range(self.n):
            for k in range(self.n):
                u = self.system.index[("A", j, k)]
                d = diag[j] if j == k else 0
                values[u] = GaussRational(d)
                status[u] = NONZERO_S if d else ZERO_S
        eqs = _substitute_const(self.base_eqs, values)
        tag = "".join(map(str, diag))
        before = (len(self.families), self.unsat)
        self._run_tree(eqs, values, status, decisions, sizes, tag)
        self.diag_stats[tag] = {"families": len(self.families) - before[0], "unsat": self.unsat - before[1]}

    diag_stats: Dict[str, Dict[str, int]]

    def _run_tree(self, eqs, fixed, status, decisions, sizes, tag):
        occ: Dict[int, List[int]] = {}
        for ei, (_, p) in enumerate(eqs):
            for u in {v >> 1 for m in p for v in m}:
                occ.setdefault(u, []).append(ei)
        weight = math.prod(sizes)
        status = list(status)
        try:
            self._initial(eqs, occ, status)
        except _Unsat:
            self.nodes += 1
            self.unsat += 1
            self.covered += weight
            return
        self._dfs(eqs, occ, fixed, status, decisions, sizes, 0, tag)

    def _initial(self, eqs, occ, status):
        changed = True
        while changed:
            snapshot = list(status)
            queue: List[int] = []
            for _, p in eqs:
                self._analyze(p, status, queue)
            self.propagate(eqs, occ, status, queue)
            changed = status != snapshot

    def _tick(self, where):
        self.nodes += 1
        if self.nodes > self.node_cap:
            self.frontier.append(where)
            raise _NodeLimit

    def _dfs(self, eqs, occ, fixed, status, decisions, sizes, depth, tag):
        self._tick(f"{tag}/depth{depth}")
        if depth == len(decisions):
            self.covered += 1
            self._finish(eqs, occ, fixed, status, tag)
            return
        rest = math.prod(sizes[depth + 1:])
        for opt in self._options(decisions[depth], status):
            if opt is None:
                self.covered += rest
                continue
            st = list(status)
            try:
                queue: List[int] = []
                for u, s in opt:
                    self._set(st, u, s, queue)
                self.propagate(eqs, occ, st, queue)
            except _Unsat:
                self.unsat += 1
                self.covered += rest
                continue
            self._dfs(eqs, occ, fixed, st, decisions, sizes, depth + 1, tag)

    def _options(self, decision, status):
        """Assignments for a decision; ``None`` marks an option excluded by propagation."""
        if decision[0] == "unk":
            u = decision[1]
            out = []
            for s in (ZERO_S, NONZERO_S):
                out.append(None if status[u] not in (UNDECIDED, s) else [(u, s)])
            return out
        _, tagm, k = decision
        col = [self.system.index[(tagm, j, k)] for j in range(self.n)]
        out = []
        # none, then rows top to bottom
        for r in [None] + list(range(self.n)):
            ok = True
            assign = []
            for j, u in enumerate(col):
                want = NONZERO_S if j == r else ZERO_S
                if status[u] not in (UNDECIDED, want):
                    ok = False
                    break
                assign.append((u, want))
            out.append(assign if ok else None)
        return out

    def _finish(self, eqs, occ, fixed, status, tag):
        """Stage 3 on leftover unknowns, then the leaf solver."""
        left = [u for u in range(self.N) if status[u] == UNDECIDED]
        if left:
            u = left[0]
            for s in (ZERO_S, NONZERO_S):
                st = list(status)
                try:
                    queue: List[int] = []
                    self._set(st, u, s, queue)
                    self.propagate(eqs, occ, st, queue)
                except _Unsat:
                    self.unsat += 1
                    continue
                self._tick(f"{tag}/stage3")
                self._finish(eqs, occ, fixed, st, tag)
            return
        outcome = _leaf_solve(eqs, status, fixed)
        if outcome[0] == "unsat":
            self.unsat += 1
        elif outcome[0] == "family":
            values = outcome[1]
            self.families.append((values, tag))
        else:
            support = [self.system.unknowns[u].label() for u in range(self.N) if status[u] == NONZERO_S]
            self.unresolved.append({"diag": tag, "support": support, "reason": outcome[1]})


def _norm_terms(live):
    """``[(unknown, real coeff)]`` if every monomial is x x̄ with a real coefficient."""
    out = []
    for m, c in live:
        if len(m) != 2 or m[0] ^ 1 != m[1] or not c.is_real():
            return None
        out.append((m[0] >> 1, c.re))
    return out


# ---------------------------------------------------------------------------
# leaf solver
# ---------------------------------------------------------------------------

def _exact_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _subst(p: Dict, values: Dict[int, Dict]) -> Dict:
    out: Dict = {}
    for m, c in p.items():
        term = {(): c}
        for v in m:
            val = values.get(v >> 1)
            if val is None:
                f = {(v,): ONE}
            else:
                f = _pconj(val) if v & 1 else val
            term = _pmul(term, f)
        _padd(out, term)
    return out


def _leaf_solve(eqs, status, fixed: Dict[int, GaussRational]):
    """Solve the system on a fixed support.

    Returns ``("family", values)``, ``("unsat", reason)`` or
    ``("unresolved", reason)``.
    """
    live_eqs = []
    for _, p in eqs:
        q = {}
        for m, c in p.items():
            if any(status[v >> 1] == ZERO_S for v in m):
                continue
            q[m] = Scalar.const(c)
        if q:
            live_eqs.append(q)
    values: Dict[int, Dict] = {}
    phase = False
    work = live_eqs
    for _ in range(10_000):
        nxt = []
        for p in work:
            p = _subst(p, values) if values else p
            if not p:
                continue
            if all(not m for m in p):
                c = p[()]
                if c.is_constant():
                    return ("unsat", "inconsistent constant")
                return ("unresolved", f"condition on the free phase: {c} = 0")
            nxt.append(p)
        work = nxt
        if not work:
            break
        step = _linear_step(work) or _factor_step(work) or _norm_step(work, phase)
        if step is None:
            return ("unresolved", f"{len(work)} equations of unsupported shape")
        kind, payload = step
        if kind == "assign":
            u, val = payload
            values = {k: _subst(v, {u: val}) for k, v in values.items()}
            values[u] = val
        elif kind == "replace":
            i, p = payload
            work[i] = p
        elif kind == "phase":
            u, val = payload
            values = {k: _subst(v, {u: val}) for k, v in values.items()}
            values[u] = val
            phase = True
        elif kind == "unsat":
            return ("unsat", payload)
        else:
            return ("unresolved", payload)
    out: Dict[int, Scalar] = {}
    for u, s in enumerate(status):
        if s == NONZERO_S and u not in fixed:
            val = values.get(u)
            if val is None:
                return ("unresolved", "free unknown left unconstrained")
            if any(m for m in val):
                return ("unresolved", "value depends on a free unknown")
            c = val.get((), ZERO)
            if not c:
                return ("unsat", "nonzero unknown forced to zero")
            out[u] = c
    for u, c in fixed.items():
        if c:
            out[u] = Scalar.const(c)
    return ("family", out)


def _linear_step(work):
    best = None
    for p in work:
        if any(len(m) > 1 for m in p):
            continue
        vars_ = [m[0] for m in p if m]
        if best is None or len(vars_) < best[0]:
            for v in sorted(vars_):
                if v ^ 1 in vars_ or not p[(v,)].is_monomial():
                    continue
                best = (len(vars_), p, v)
                break
    if best is None:
        return None
    _, p, v = best
    alpha = p[(v,)]
    inv = alpha.inverse()
    rest = {m: -c * inv for m, c in p.items() if m != (v,)}
    if v & 1:
        rest = _pconj(rest)
    return ("assign", (v >> 1, rest))


def _factor_step(work):
    for i, p in enumerate(work):
        if () in p:
            continue
        common = None
        for m in p:
            s = set(m)
            common = s if common is None else common & s
        if common:
            v = min(common)
            q = {}
            for m, c in p.items():
                lst = list(m)
                lst.remove(v)
                q[tuple(lst)] = c
            return ("replace", (i, q))
    return None


def _norm_step(work, phase):
    for p in work:
        vm = [m for m in p if m]
        if len(vm) != 1:
            continue
        m = vm[0]
        if len(m) != 2 or m[0] ^ 1 != m[1]:
            continue
        alpha, beta = p[m], p.get((), ZERO)
        if not (alpha.is_constant() and beta.is_constant()):
            continue
        a, b = alpha.constant_value(), beta.constant_value() if beta else GaussRational(0)
        if not (a.is_real() and b.is_real()):
            continue
        c = -b.re / a.re
        if c <= 0:
            return ("unsat", "squared modulus forced nonpositive")
        if phase:
            return ("unresolved", "second free phase")
        r = _exact_sqrt(c)
        if r is None:
            return ("unresolved", f"modulus sqrt({c}) not exact")
        return ("phase", (m[0] >> 1, {(): Scalar.monomial(0, 0, 1, r)}))
    return None


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def _family_spec(system: ConstraintSystem, values: Dict[int, Scalar]) -> CoactionSpec:
    n = system.n
    mats = {}
    for tag in TAGS:
        rows = [[values.get(system.index[(tag, j, k)], ZERO) for k in range(n)] for j in range(n)]
        mats[tag] = CoeffMatrix(rows)
    mats["C"] = CoeffMatrix.identity(n) - mats["A"]
    mats["Cp"] = -mats["Ap"]
    return CoactionSpec(system.pres, mats)


def solve(system: ConstraintSystem, t_val, u_val, nodes: int = 10**6, lemmas: bool = True) -> ClassificationResult:
    t_val, u_val = Fraction(t_val), Fraction(u_val)
    if not (0 < t_val < 1 and 0 < u_val < 1):
        raise ValueError("sample point must satisfy 0 < t, u < 1")
    pres = system.pres
    m = pres.ngens - 1 if pres.name.startswith("vs") else None
    search = _Search(system, t_val, u_val, nodes, lemmas)
    search.diag_stats = {}
    res = ClassificationResult(pres.name, m, t_val, u_val, system.ansatz, lemmas)
    try:
        search.run()
    except _NodeLimit:
        res.limit_hit = True
        res.unresolved.append({"reason": "node cap reached", "frontier": search.frontier[-1:]})
    seen = set()
    for values, tag in search.families:
        spec = _family_spec(system, values)
        assignment = {system.unknowns[u]: v for u, v in values.items()}
        fam = SolutionFamily(f"F{len(res.families) + 1}", assignment, f"diag(A)={tag}", spec)
        if fam.key() in seen:
            continue
        seen.add(fam.key())
        spec.name = fam.id
        res.families.append(fam)
    res.unsat_branches = search.unsat
    res.nodes = search.nodes
    res.unresolved.extend(search.unresolved)
    res.audit_covered = search.covered
    res.audit_total = search.total
    res.by_diagonal = search.diag_stats
    return res


def classify(preset: str, m: int | None = None, t=None, u=None, ansatz: bool = False,
             nodes: int = 10**6, lemmas: bool = True) -> ClassificationResult:
    """Build the preset, generate constraints and solve at ``(t, u)``."""
    if preset == "vs":
        if m is None:
            raise ValueError("preset vs needs m")
        if t is None or u is None:
            raise ValueError("classification needs concrete t and u")
        pres = preset_vs(m, p_is_q=(Fraction(t) == Fraction(u)))
    elif preset in ("bl", "bl7"):
        if t is None:
            raise ValueError("classification needs a concrete t")
        pres = preset_bl()
        u = t if u is None else u
    else:
        raise ValueError(f"unknown preset {preset!r}")
    system = generate_constraints(pres, ansatz=ansatz)
    return solve(system, t, u, nodes=nodes, lemmas=lemmas)


# ---------------------------------------------------------------------------
# known families and comparison
# ---------------------------------------------------------------------------

FAMILY_IDS = ("coproduct", "vs3-one", "vs3-two", "vs3-three", "bl-a", "bl-b")


def known_families(name: str, omega=None) -> CoactionSpec:
    """The literal families, with ``omega`` a unit value or ``None`` for symbolic w.

    The vs3 families live on the three-sphere with p = q, the coproduct
    on the quantum group itself.
    """
    q = Scalar.q()
    w = Scalar.w()
    wb = w.conj()
    if name == "coproduct":
        pres = preset_suq2()
        spec = CoactionSpec(pres, {
            "A": CoeffMatrix.diag([1, 0]), "C": CoeffMatrix.diag([0, 1]),
            "B": CoeffMatrix.sparse(2, {(1, 0): 1}), "D": CoeffMatrix.sparse(2, {(0, 1): -q}),
        }, name)
        return spec
    if name in ("vs3-one", "vs3-two", "vs3-three"):
        pres = preset_vs(1, p_is_q=True)
        swap = CoeffMatrix.sparse(2, {(0, 1): -w * q, (1, 0): w})
        if name == "vs3-one":
            spec = CoactionSpec.counit_consistent(pres, A=CoeffMatrix.identity(2), Dp=swap, name=name)
        elif name == "vs3-two":
            spec = CoactionSpec.counit_consistent(pres, Bp=swap, name=name)
        else:
            spec = CoactionSpec.counit_consistent(
                pres, A=CoeffMatrix.diag([1, 0]),
                B=CoeffMatrix.sparse(2, {(1, 0): wb}), D=CoeffMatrix.sparse(2, {(0, 1): -w * q}), name=name)
    elif name in ("bl-a", "bl-b"):
        pres = preset_bl()
        T = CoeffMatrix.sparse(4, {(0, 1): w, (1, 0): -w * q, (2, 3): w, (3, 2): -w * q})
        if name == "bl-a":
            spec = CoactionSpec.counit_consistent(pres, A=CoeffMatrix.identity(4), Dp=T, name=name)
        else:
            spec = CoactionSpec.counit_consistent(pres, Bp=T, name=name)
    else:
        raise ValueError(f"unknown family {name!r}")
    if omega is not None:
        om = GaussRational.coerce(omega) if not isinstance(omega, Scalar) else None
        if om is not None:
            spec = spec.map_entries(lambda s: s.subs_w(om))
        else:
            spec = spec.map_entries(lambda s: _subst_w_scalar(s, omega))
    return spec


def _subst_w_scalar(s: Scalar, omega: Scalar) -> Scalar:
    out = ZERO
    for (et, eu, ew), c in s.terms.items():
        out = out + Scalar.monomial(et, eu, 0, c) * (omega ** ew)
    return out


def _spec_at(spec: CoactionSpec, t_val, u_val, omega) -> Dict[str, List[List[GaussRational]]]:
    return {k: [[x.eval(t_val, u_val, omega) for x in row] for row in spec[k].rows] for k in MATRIX_KEYS}


def _match_phase(found: Dict, expected: CoactionSpec, t_val, u_val):
    """The unit ω' with expected(ω') equal to ``found`` entrywise, if any."""
    for k in MATRIX_KEYS:
        for j, row in enumerate(expected[k].rows):
            for i, e in enumerate(row):
                if e.is_w_free() or not e:
                    continue
                if len(e.terms) != 1:
                    continue
                (et, eu, ew), c = next(iter(e.terms.items()))
                if abs(ew) != 1:
                    continue
                beta = Scalar.monomial(et, eu, 0, c).eval(t_val, u_val)
                ratio = found[k][j][i] / beta
                if ratio.abs2() != 1:
                    return None
                om = ratio if ew == 1 else ratio.conj()
                got = _spec_at(expected, t_val, u_val, om)
                return om if got == found else None
    got = _spec_at(expected, t_val, u_val, GaussRational(1))
    return GaussRational(1) if got == found else None


OMEGA_SAMPLES = (GaussRational(1), GaussRational(0, 1), GaussRational(Fraction(3, 5), Fraction(4, 5)))


def compare(result: ClassificationResult, expected: Sequence[str], omega_samples=OMEGA_SAMPLES) -> Report:
    """Set-level match of found and expected families.

    Each found family specialised at each ω sample must pass verify()
    at the result's parameter point and coincide with some expected
    family at some unit ω'; conversely each expected family at each
    sample must be hit by some found family.  Families are compared as
    sets over the circle, so their ω parametrisations may differ.
    """
    rep = Report("compare")
    rep.params = {"t": str(result.t), "u": str(result.u), "omega": None}
    t_val, u_val = result.t, result.u
    exp_specs = {name: known_families(name) for name in expected}
    point = (t_val, u_val)
    for fam in result.families:
        for s_i, om in enumerate(omega_samples):
            spec = fam.spec.map_entries(lambda s: s.subs_w(om))
            ok = verify(spec, point=point, samples=4).ok
            rep.add(f"found/{fam.id}/omega{s_i}/verify", ok)
            found = _spec_at(spec, t_val, u_val, GaussRational(1))
            hits = [name for name, e in exp_specs.items() if _match_phase(found, e, t_val, u_val) is not None]
            rep.add(f"found/{fam.id}/omega{s_i}/matches", len(hits) == 1, detail=",".join(hits))
    for name, e in exp_specs.items():
        for s_i, om in enumerate(omega_samples):
            target = _spec_at(e, t_val, u_val, om)
            hits = []
            for fam in result.families:
                if _match_phase(target, fam.spec, t_val, u_val) is not None:
                    hits.append(fam.id)
            rep.add(f"expected/{name}/omega{s_i}", len(hits) == 1, detail=",".join(hits))
    rep.add("count", len(result.families) == len(expected), detail=f"{len(result.families)} vs {len(expected)}")
    return rep.finish()
