"""First-degree coaction candidates Ψ : A → A ⊗ H and their verification.

Ψ is fixed by eight square matrices::

    Ψ(z)  = (A z + A' z*) ⊗ a  + (B z + B' z*) ⊗ b
          + (C z + C' z*) ⊗ a* + (D z + D' z*) ⊗ b*

and Ψ(z*) = Ψ(z)*.  Checks are done by full expansion in the normal
bases of A ⊗ H and A ⊗ H ⊗ H; the closed-form matrix equations of
:func:`table1_residuals` are kept only as a cross-check.
"""

from __future__ import annotations

import json
import random
from typing import Dict, List, Sequence, Tuple

from .hopf import H, TensorElement, delta_in_slot, random_element, word_counit
from .ncpoly import Element, Letter, Word, adjoint
from .presentations import Presentation
from .report import Report
from .scalars import ONE, ZERO, Scalar, parse_scalar

__all__ = [
    "CoeffMatrix",
    "CoactionSpec",
    "MATRIX_KEYS",
    "TABLE_ROWS",
    "psi_apply",
    "check_counit",
    "coassociativity_residuals",
    "table1_residuals",
    "homomorphism_residuals",
    "verify",
    "spec_from_json",
    "spec_to_json",
]

MATRIX_KEYS = ("A", "Ap", "B", "Bp", "C", "Cp", "D", "Dp")

HA, HB = Letter(0, False), Letter(1, False)
HAS, HBS = Letter(0, True), Letter(1, True)
H_LETTERS = {"a": HA, "b": HB, "a*": HAS, "b*": HBS}

# (tag, H letter, starred source letter) for the eight terms of Ψ(z_j)
_PSI_TERMS = (
    ("A", HA, False), ("Ap", HA, True),
    ("B", HB, False), ("Bp", HB, True),
    ("C", HAS, False), ("Cp", HAS, True),
    ("D", HBS, False), ("Dp", HBS, True),
)

# rows of the closed-form table: (first H letter, second H letter)
TABLE_ROWS = (("a", "a"), ("b", "a"), ("b*", "a"),
              ("a", "b"), ("b", "b"), ("b*", "b"),
              ("a", "b*"), ("b", "b*"), ("b*", "b*"))


class CoeffMatrix:
    """Square matrix of Scalars."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(Scalar.coerce(x) for x in r) for r in rows)
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("coefficient matrix must be square")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def zero(cls, n: int) -> "CoeffMatrix":
        return cls([[ZERO] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "CoeffMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values) -> "CoeffMatrix":
        n = len(values)
        return cls([[values[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def sparse(cls, n: int, entries: Dict[Tuple[int, int], object]) -> "CoeffMatrix":
        rows = [[ZERO] * n for _ in range(n)]
        for (i, j), v in entries.items():
            rows[i][j] = Scalar.coerce(v)
        return cls(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        return CoeffMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return CoeffMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return CoeffMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "CoeffMatrix":
        c = Scalar.coerce(c)
        return CoeffMatrix([[a * c for a in r] for r in self.rows])

    def __matmul__(self, other):
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                s = ZERO
                for k in range(n):
                    a = self.rows[i][k]
                    if a:
                        b = other.rows[k][j]
                        if b:
                            s = s + a * b
                row.append(s)
            out.append(row)
        return CoeffMatrix(out)

    def conj(self) -> "CoeffMatrix":
        return CoeffMatrix([[a.conj() for a in r] for r in self.rows])

    def map(self, f) -> "CoeffMatrix":
        return CoeffMatrix([[f(a) for a in r] for r in self.rows])

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def nonzero_count(self) -> int:
        return sum(1 for r in self.rows for a in r if a)

    def __eq__(self, other):
        return isinstance(other, CoeffMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def to_strings(self) -> List[List[str]]:
        return [[str(a) for a in r] for r in self.rows]

    def __repr__(self):
        return "CoeffMatrix(" + repr(self.to_strings()) + ")"


class CoactionSpec:
    """The eight coefficient matrices plus the target presentation."""

    def __init__(self, pres: Presentation, matrices: Dict[str, CoeffMatrix], name: str = ""):
        self.pres = pres
        n = pres.ngens
        self.m = {}
        for key in MATRIX_KEYS:
            mat = matrices.get(key)
            if mat is None:
                mat = CoeffMatrix.zero(n)
            if not isinstance(mat, CoeffMatrix):
                mat = CoeffMatrix(mat)
            if mat.n != n:
                raise ValueError(f"matrix {key} is {mat.n}x{mat.n}, presentation has {n} generators")
            self.m[key] = mat
        self.name = name
        self._slots = (pres, H())
        self._gen_cache: Dict[Letter, TensorElement] = {}
        self._word_cache: Dict[Word, TensorElement] = {}

    @classmethod
    def counit_consistent(cls, pres: Presentation, A=None, Ap=None, B=None, Bp=None, D=None, Dp=None,
                          name: str = "") -> "CoactionSpec":
        """Spec with C = I - A and C' = -A'."""
        n = pres.ngens
        A = A if A is not None else CoeffMatrix.zero(n)
        Ap = Ap if Ap is not None else CoeffMatrix.zero(n)
        mats = {"A": A, "Ap": Ap, "B": B, "Bp": Bp, "D": D, "Dp": Dp,
                "C": CoeffMatrix.identity(n) - A, "Cp": -Ap}
        return cls(pres, {k: v for k, v in mats.items() if v is not None}, name)

    def __getitem__(self, key) -> CoeffMatrix:
        return self.m[key]

    @property
    def n(self) -> int:
        return self.pres.ngens

    @property
    def slots(self):
        return self._slots

    def map_entries(self, f, pres: Presentation | None = None, name: str | None = None) -> "CoactionSpec":
        return CoactionSpec(pres or self.pres, {k: v.map(f) for k, v in self.m.items()},
                            self.name if name is None else name)

    def with_presentation(self, pres: Presentation) -> "CoactionSpec":
        return CoactionSpec(pres, self.m, self.name)

    def __eq__(self, other):
        return isinstance(other, CoactionSpec) and self.m == other.m

    def __repr__(self):
        nz = {k: v.nonzero_count() for k, v in self.m.items() if v.nonzero_count()}
        return f"CoactionSpec({self.name or '?'} on {self.pres.name}, nonzero={nz})"

    # Ψ on generators ------------------------------------------------------
    def psi_letter(self, l: Letter) -> TensorElement:
        hit = self._gen_cache.get(l)
        if hit is not None:
            return hit
        j = l.index
        raw: Dict[Tuple[Word, Word], Scalar] = {}
        for tag, h, star in _PSI_TERMS:
            row = self.m[tag].rows[j]
            for k, c in enumerate(row):
                if c:
                    src = Letter(k, star)
                    if l.starred:
                        key = ((src.star(),), (h.star(),))
                        c = c.conj()
                    else:
                        key = ((src,), (h,))
                    raw[key] = raw.get(key, ZERO) + c
        out = TensorElement(self._slots, {k: v for k, v in raw.items() if v})
        self._gen_cache[l] = out
        return out

    def psi_word(self, w: Word) -> TensorElement:
        hit = self._word_cache.get(w)
        if hit is not None:
            return hit
        if not w:
            out = TensorElement.one(self._slots)
        elif len(w) == 1:
            out = self.psi_letter(w[0])
        else:
            out = self.psi_word(w[:-1]) * self.psi_letter(w[-1])
        self._word_cache[w] = out
        return out


def psi_apply(spec: CoactionSpec, e: Element) -> TensorElement:
    """Ψ(e) in A ⊗ H, extended multiplicatively and normalized slotwise."""
    if e.ngens != spec.n:
        raise ValueError(f"element has {e.ngens} generators, spec has {spec.n}")
    out: Dict[Tuple[Word, ...], Scalar] = {}
    for w, c in e.terms.items():
        for k, v in spec.psi_word(w).terms.items():
            x = out.get(k, ZERO) + v * c
            if x:
                out[k] = x
            else:
                out.pop(k, None)
    return TensorElement(spec.slots, out, normalized=True)


def _zero_test(point):
    if point is None:
        return lambda s: not s
    t, u = point
    return lambda s: not s.eval_tu(t, u)


def check_counit(spec: CoactionSpec, point=None) -> Report:
    rep = Report("counit")
    is_zero = _zero_test(point)
    n = spec.n
    r1 = spec["A"] + spec["C"] - CoeffMatrix.identity(n)
    r2 = spec["Ap"] + spec["Cp"]
    bad1 = sum(1 for r in r1.rows for a in r if not is_zero(a))
    bad2 = sum(1 for r in r2.rows for a in r if not is_zero(a))
    rep.add("counit/A+C-I", bad1 == 0, bad1)
    rep.add("counit/A'+C'", bad2 == 0, bad2)
    return rep.finish()


def counit_residuals(spec: CoactionSpec) -> Tuple[CoeffMatrix, CoeffMatrix]:
    n = spec.n
    return spec["A"] + spec["C"] - CoeffMatrix.identity(n), spec["Ap"] + spec["Cp"]


def coassociativity_tensor(spec: CoactionSpec, j: int, starred: bool = False) -> TensorElement:
    """(Ψ⊗id)Ψ(z_j) - (id⊗Δ)Ψ(z_j) in A ⊗ H ⊗ H."""
    h = H()
    slots3 = (spec.pres, h, h)
    psi = spec.psi_letter(Letter(j, starred))
    lhs: Dict[Tuple[Word, ...], Scalar] = {}
    for (wa, wh), c in psi.terms.items():
        inner = psi_apply(spec, Element.word(spec.n, wa))
        for (xa, xh), d in inner.terms.items():
            key = (xa, xh, wh)
            lhs[key] = lhs.get(key, ZERO) + c * d
    left = TensorElement(slots3, lhs)
    right = delta_in_slot(psi, 1)
    return left - right


def coassociativity_residuals(spec: CoactionSpec, rows: Sequence[Tuple[str, str]] = TABLE_ROWS
                              ) -> List[Tuple[str, CoeffMatrix]]:
    """Residual matrices extracted from the full A ⊗ H ⊗ H expansion.

    Entry ``(j, k)`` of the residual labelled ``"h1 h2 | z"`` is the
    coefficient of ``z_k ⊗ h1 ⊗ h2`` in Ψ-coassociativity for ``z_j``;
    the ``"| z*"`` residual uses ``z_k^*``.  The default rows give the
    18 closed-form residuals.
    """
    n = spec.n
    diffs = [coassociativity_tensor(spec, j) for j in range(n)]
    out = []
    for h1, h2 in rows:
        l1, l2 = H_LETTERS[h1], H_LETTERS[h2]
        for star in (False, True):
            mat = [[diffs[j].coefficient((Letter(k, star),), (l1,), (l2,)) for k in range(n)] for j in range(n)]
            out.append((f"{h1} {h2} | {'z*' if star else 'z'}", CoeffMatrix(mat)))
    return out


def table1_residuals(spec: CoactionSpec) -> List[Tuple[str, CoeffMatrix]]:
    """The closed-form matrix equations, each written as LHS - RHS.

    C and C' do not appear: the closed forms already use C = I - A and
    C' = -A', so they agree with :func:`coassociativity_residuals` only
    on specs satisfying the counit law.
    """
    A, Ap, B, Bp = spec["A"], spec["Ap"], spec["B"], spec["Bp"]
    C, D, Dp = spec["C"], spec["D"], spec["Dp"]
    q = Scalar.q()
    Apb, Bpb, Dpb = Ap.conj(), Bp.conj(), Dp.conj()
    Bb, Cb, Db = B.conj(), C.conj(), D.conj()
    rows = [
        (A @ A - Ap @ Apb - A, A @ Ap + Ap @ Cb - Ap),
        (A @ B + Ap @ Dpb, A @ Bp + Ap @ Db),
        (A @ D + Ap @ Bpb - D, A @ Dp + Ap @ Bb - Dp),
        (B @ A - Bp @ Apb - B, B @ Ap + Bp @ Cb - Bp),
        (B @ B + Bp @ Dpb, B @ Bp + Bp @ Db),
        (B @ D + Bp @ Bpb + C.scale(q), B @ Dp + Bp @ Bb - Ap.scale(q)),
        (D @ A - Dp @ Apb, D @ Ap + Dp @ Cb),
        (D @ B + Dp @ Dpb + A.scale(q), D @ Bp + Dp @ Db + Ap.scale(q)),
        (D @ D + Dp @ Bpb, D @ Dp + Dp @ Bb),
    ]
    out = []
    for (h1, h2), (left, right) in zip(TABLE_ROWS, rows):
        out.append((f"{h1} {h2} | z", left))
        out.append((f"{h1} {h2} | z*", right))
    return out


def homomorphism_residuals(spec: CoactionSpec, pres: Presentation | None = None
                           ) -> List[Tuple[str, TensorElement]]:
    """Ψ(lhs) - Ψ(rhs) for each defining relation and displayed identity."""
    pres = pres or spec.pres
    if pres is not spec.pres:
        spec = spec.with_presentation(pres)
    out = []
    for rel in sorted(pres.all_relations(), key=lambda r: r.id):
        out.append((rel.id, psi_apply(spec, rel.lhs) - psi_apply(spec, rel.rhs)))
    return out


def _tensor_zero(t: TensorElement, point) -> Tuple[bool, int]:
    is_zero = _zero_test(point)
    bad = sum(1 for c in t.terms.values() if not is_zero(c))
    return bad == 0, bad


def verify(spec: CoactionSpec, pres: Presentation | None = None, point=None,
           samples: int = 10, seed: int = 7) -> Report:
    """Counit, full coassociativity, homomorphism and *-map checks.

    With ``point = (t, u)`` every residual coefficient is evaluated at
    that parameter point (keeping ω symbolic); otherwise residuals must
    vanish identically.
    """
    pres = pres or spec.pres
    if pres is not spec.pres:
        spec = spec.with_presentation(pres)
    rep = Report("coaction")
    rep.extend(check_counit(spec, point))
    is_zero = _zero_test(point)
    # (id ⊗ ε) Ψ = id, recomputed from Ψ itself
    for j in range(spec.n):
        for star in (False, True):
            psi = spec.psi_letter(Letter(j, star))
            got: Dict[Word, Scalar] = {}
            for (wa, wh), c in psi.terms.items():
                e = word_counit(wh)
                if e:
                    got[wa] = got.get(wa, ZERO) + c * e
            got[(Letter(j, star),)] = got.get((Letter(j, star),), ZERO) - ONE
            bad = sum(1 for c in got.values() if not is_zero(c))
            rep.add(f"counit-law/{pres.generators[j]}{'*' if star else ''}", bad == 0, bad)
    for j in range(spec.n):
        ok, bad = _tensor_zero(coassociativity_tensor(spec, j), point)
        rep.add(f"coassociativity/{pres.generators[j]}", ok, bad)
    for rid, res in homomorphism_residuals(spec, pres):
        ok, bad = _tensor_zero(res, point)
        rep.add(f"homomorphism/{rid}", ok, bad)
    # *-map consistency on random degree <= 2 elements
    rng = random.Random(seed)
    for i in range(samples):
        e = random_element(rng, spec.n, max_degree=2)
        d = psi_apply(spec, adjoint(e)) - psi_apply(spec, e).adjoint()
        ok, bad = _tensor_zero(d, point)
        rep.add(f"star-map/random{i:02d}", ok, bad)
    return rep.finish()


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def spec_to_json(spec: CoactionSpec) -> Dict:
    out = {k: spec[k].to_strings() for k in MATRIX_KEYS}
    out["presentation"] = spec.pres.name
    return out


def spec_from_json(data, pres: Presentation | None = None) -> CoactionSpec:
    if isinstance(data, str):
        data = json.loads(data)
    if pres is None:
        name = data.get("presentation", "")
        pres = _presentation_by_name(name)
    n = pres.ngens
    mats = {}
    for key in MATRIX_KEYS:
        raw = data.get(key)
        if raw is None:
            continue
        if raw and not isinstance(raw[0], list):
            if len(raw) != n * n:
                raise ValueError(f"matrix {key} needs {n * n} entries")
            raw = [raw[i * n:(i + 1) * n] for i in range(n)]
        mats[key] = CoeffMatrix([[parse_scalar(str(x)) for x in row] for row in raw])
    return CoactionSpec(pres, mats, data.get("name", ""))


def _presentation_by_name(name: str) -> Presentation:
    from .presentations import preset_bl, preset_suq2, preset_vs
    if name in ("suq2",):
        return preset_suq2()
    if name in ("bl7", "bl"):
        return preset_bl()
    if name.startswith("vs"):
        body = name[2:]
        p_is_q = body.endswith("q")
        body = body.rstrip("q")
        return preset_vs((int(body) - 1) // 2, p_is_q=p_is_q)
    raise ValueError(f"unknown presentation {name!r}")
