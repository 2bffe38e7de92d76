"""Nagata idealization of a level A(cx) by its canonical module.

For a level algebra R of socle degree d the canonical module is realised as
the graded dual of R, shifted so that the dual of R_(d+1-i) sits in degree
i. The idealization R~ = R + omega has multiplication
(a, f)(b, g) = (ab, a.g + b.f) with (r.f)(s) = f(rs), and is Gorenstein of
socle degree d+1. R~ is not a monomial algebra, so its WLP is probed with
random integer linear forms.
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .complex import Face, PseudomanifoldKind, SimplicialComplex, dual_graph, pseudomanifold_status
from .graph import is_bipartite
from .lefschetz import AlgebraModel, LinearForm, multiplication_matrix
from .linalg import IntMatrix, rank

log = logging.getLogger(__name__)

COEFFICIENT_RANGE = (1, 1 << 20)
DEFAULT_TRIALS = 3
DEFAULT_SEED = 0


class NotLevelError(ValueError):
    pass


class IdealizedAlgebra:
    """Graded model of R~; degree-i basis is (faces of size i) + (y*_F, |F| = d+1-i)."""

    def __init__(self, base: AlgebraModel):
        cx = base.complex
        if not cx.is_pure():
            raise NotLevelError("idealization needs a level algebra (a pure complex)")
        if cx.dim + 1 < 1:
            raise ValueError("socle degree must be at least 1")
        self.base = base
        self.d = cx.dim + 1

    def x_basis(self, i: int) -> tuple[Face, ...]:
        return self.base.basis(i) if 0 <= i <= self.d else ()

    def y_basis(self, i: int) -> tuple[Face, ...]:
        """Faces F whose dual y*_F spans the omega part of degree i."""
        return self.base.basis(self.d + 1 - i) if 0 <= i <= self.d + 1 else ()

    def dim(self, i: int) -> int:
        return len(self.x_basis(i)) + len(self.y_basis(i))

    def hilbert_function(self) -> tuple[int, ...]:
        return tuple(self.dim(i) for i in range(self.d + 2))

    @property
    def facets(self) -> tuple[Face, ...]:
        return self.base.complex.facets


def idealize(alg: AlgebraModel) -> IdealizedAlgebra:
    return IdealizedAlgebra(alg)


@dataclass(frozen=True)
class TildeLinearForm:
    x: tuple[int, ...]
    y: tuple[int, ...]  # one coefficient per facet, facets in sorted order

    def __post_init__(self):
        if not any(self.x) and not any(self.y):
            raise ValueError("linear form must be nonzero")


def random_tilde_form(alg: IdealizedAlgebra, rng: random.Random) -> TildeLinearForm:
    lo, hi = COEFFICIENT_RANGE
    n = alg.base.complex.n
    return TildeLinearForm(tuple(rng.randint(lo, hi) for _ in range(n)),
                           tuple(rng.randint(lo, hi) for _ in alg.facets))


def _base_matrix(alg: IdealizedAlgebra, i: int, x: tuple[int, ...]) -> IntMatrix:
    if not any(x):
        return IntMatrix(alg.base.dim(i + 1), alg.base.dim(i))
    return multiplication_matrix(alg.base, i, LinearForm(x))


def tilde_multiplication_matrix(alg: IdealizedAlgebra, i: int, form: TildeLinearForm) -> IntMatrix:
    """Block matrix of multiplication by form from degree i to i+1.

    Row blocks: x-part then y-part of degree i+1; column blocks likewise for
    degree i. The y->x block is zero because omega squares to zero.
    """
    if not 0 <= i <= alg.d:
        raise ValueError(f"degree {i} outside 0..{alg.d}")
    if len(form.x) != alg.base.complex.n or len(form.y) != len(alg.facets):
        raise ValueError("linear form does not match the algebra")
    d = alg.d
    xs_from, ys_from = alg.x_basis(i), alg.y_basis(i)
    xs_to, ys_to = alg.x_basis(i + 1), alg.y_basis(i + 1)
    rows = [[0] * (len(xs_from) + len(ys_from)) for _ in range(len(xs_to) + len(ys_to))]
    off_r, off_c = len(xs_to), len(xs_from)

    # x -> x: ordinary multiplication in R
    if xs_to and xs_from:
        m = _base_matrix(alg, i, form.x)
        for r, row in enumerate(m.data):
            rows[r][:off_c] = row
    # y -> y: (l_x . f)(s) = f(l_x s), the transpose of R_(d-i) -> R_(d+1-i)
    if ys_to and ys_from:
        m = _base_matrix(alg, d - i, form.x)
        for r, row in enumerate(m.data):
            for c, val in enumerate(row):
                rows[off_r + c][off_c + r] = val
    # x -> y: (a . l_y)(s) = l_y(a s); a s is a facet when the faces are disjoint
    if ys_to and xs_from:
        facet_coef = dict(zip(alg.facets, form.y))
        for c, a in enumerate(xs_from):
            sa = set(a)
            for r, s in enumerate(ys_to):
                if sa.isdisjoint(s):
                    coef = facet_coef.get(tuple(sorted(sa.union(s))))
                    if coef:
                        rows[off_r + r][c] = coef
    return IntMatrix(len(rows), off_c + len(ys_from), rows)


@dataclass
class TildeVerdict:
    degree: int
    dim_from: int
    dim_to: int
    holds: bool
    max_rank: int
    trials: int
    seed: int
    confidence: str  # "witness-form", "probabilistic" or "deterministic-by-theorem"
    theorem_hypotheses: dict[str, Any] = field(default_factory=dict)

    @property
    def deterministic_by_theorem(self) -> bool:
        return self.confidence == "deterministic-by-theorem"

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"

    def to_json(self) -> dict[str, Any]:
        return {"i": self.degree, "dim_from": self.dim_from, "dim_to": self.dim_to,
                "verdict": self.verdict, "max_rank": self.max_rank, "trials": self.trials,
                "seed": self.seed, "confidence": self.confidence,
                "theorem_hypotheses": self.theorem_hypotheses}


def failure_hypotheses(alg: IdealizedAlgebra) -> dict[str, Any]:
    """Conditions under which R~ must fail surjectivity in degree d-1.

    The base map R_(d-1) -> R_d is checked with the all-ones form, which has
    generic rank for a monomial algebra.
    """
    d = alg.d
    base = alg.base
    out: dict[str, Any] = {"d": d, "applicable": False}
    if d < 2:
        out["reason"] = "socle degree below 2"
        return out
    base_rank = rank(multiplication_matrix(base, d - 1)).rank
    lhs = base.dim(2) + base.dim(d - 1)
    rhs = base.dim(1) + base.dim(d)
    out.update({
        "base_rank": base_rank,
        "base_fails_surjectivity": base_rank < base.dim(d),
        "dimension_inequality": [lhs, rhs],
        "inequality_holds": lhs >= rhs,
    })
    out["applicable"] = out["base_fails_surjectivity"] and out["inequality_holds"]
    return out


def restriction_obstructs(alg: IdealizedAlgebra, form: TildeLinearForm) -> bool:
    """Structural reason the degree d-1 map of this form is not surjective.

    Rows of the x-part of degree d only see the x-part of degree d-1 (the
    y->x block is zero), so if that block is rank-deficient, so is the whole.
    """
    d = alg.d
    m = tilde_multiplication_matrix(alg, d - 1, form)
    nx_to, nx_from = len(alg.x_basis(d)), len(alg.x_basis(d - 1))
    y_to_x_zero = all(not any(row[nx_from:]) for row in m.data[:nx_to])
    block = IntMatrix(nx_to, nx_from, [row[:nx_from] for row in m.data[:nx_to]])
    return y_to_x_zero and rank(block).rank < nx_to


def wlp_tilde_degree(alg: IdealizedAlgebra, i: int, trials: int = DEFAULT_TRIALS,
                     seed: int = DEFAULT_SEED) -> TildeVerdict:
    """Maximal rank of degree i over random forms with coefficients in [1, 2^20].

    One form of full rank certifies the property for the general form.
    Deficiency over every trial is reported as a failure; it is marked
    deterministic when i = d-1 and the idealization failure hypotheses hold.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not 0 <= i <= alg.d:
        raise ValueError(f"degree {i} outside 0..{alg.d}")
    master = random.Random(seed)
    trial_seeds = [master.getrandbits(64) for _ in range(trials)]
    log.info("idealization WLP degree %d: seed %d, %d trials", i, seed, trials)
    dim_from, dim_to = alg.dim(i), alg.dim(i + 1)
    target = min(dim_from, dim_to)
    best = 0
    forms = []
    for ts in trial_seeds:
        form = random_tilde_form(alg, random.Random(ts))
        forms.append(form)
        best = max(best, rank(tilde_multiplication_matrix(alg, i, form)).rank)
        if best == target:
            break
    hyp: dict[str, Any] = {}
    if i == alg.d - 1:
        hyp = failure_hypotheses(alg)
    if best == target:
        if hyp.get("applicable"):
            raise AssertionError("random form reached full rank where failure is forced")
        return TildeVerdict(i, dim_from, dim_to, True, best, trials, seed, "witness-form", hyp)
    confidence = "probabilistic"
    if hyp.get("applicable"):
        hyp["restriction_obstructs_every_trial"] = all(restriction_obstructs(alg, f) for f in forms)
        hyp["tilde_dims_ordered"] = dim_from >= dim_to
        if hyp["restriction_obstructs_every_trial"] and hyp["tilde_dims_ordered"]:
            confidence = "deterministic-by-theorem"
    return TildeVerdict(i, dim_from, dim_to, False, best, trials, seed, confidence, hyp)


@dataclass
class CorGorCheck:
    applicable: bool
    reason: str = ""
    d: int | None = None
    hilbert_function: tuple[int, ...] = ()
    f1_ge_f0: bool | None = None
    ridge_identity: bool | None = None
    inequality: tuple[int, int] | None = None
    verdict: TildeVerdict | None = None


def corgor_check(cx: SimplicialComplex, trials: int = DEFAULT_TRIALS,
                 seed: int = DEFAULT_SEED) -> CorGorCheck:
    """Closed pseudomanifold with bipartite dual graph -> Gorenstein R~ failing WLP at d-1."""
    status = pseudomanifold_status(cx)
    if status.kind is not PseudomanifoldKind.WITHOUT_BOUNDARY:
        return CorGorCheck(False, f"not a pseudomanifold without boundary ({status.kind.value})")
    if not is_bipartite(dual_graph(cx)):
        return CorGorCheck(False, "dual graph is not bipartite")
    d = cx.dim + 1
    f = cx.f_vector()  # f[k + 1] = f_k

    def fk(k):
        return f[k + 1] if -1 <= k < len(f) - 1 else 0

    ridge_identity = 2 * fk(d - 2) == d * fk(d - 1)
    alg = IdealizedAlgebra(AlgebraModel(cx))
    verdict = wlp_tilde_degree(alg, d - 1, trials=trials, seed=seed)
    return CorGorCheck(
        True, "", d, alg.hilbert_function(), fk(1) >= fk(0), ridge_identity,
        (fk(1) + fk(d - 2), fk(0) + fk(d - 1)), verdict)


# --- explicit presentation for even cycles -------------------------------

Monomial = tuple[str, ...]  # sorted variable names, e.g. ("x1", "y3")


def _var_key(name: str) -> tuple[int, int]:
    return (0 if name[0] == "x" else 1, int(name[1:]))


def _mono(*names: str) -> Monomial:
    return tuple(sorted(names, key=_var_key))


def _mono_key(m: Monomial):
    # lex with x1 > ... > xn > y1 > ... > yn: larger monomials sort first
    return tuple(_var_key(v) for v in m)


@dataclass(frozen=True)
class Generator:
    terms: tuple[tuple[int, Monomial], ...]

    def normalized(self) -> Generator:
        terms = sorted(self.terms, key=lambda t: _mono_key(t[1]))
        if terms[0][0] < 0:
            terms = [(-c, m) for c, m in terms]
        return Generator(tuple(terms))

    def __str__(self):
        out = ""
        for k, (c, m) in enumerate(self.terms):
            mono = "*".join(m)
            if k == 0:
                out += ("-" if c == -1 else "" if c == 1 else f"{c}*") + mono
            else:
                sign = "-" if c < 0 else "+"
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                out += f" {sign} {mag}{mono}"
        return out


@dataclass
class Presentation:
    n: int
    squares: list[Generator]
    non_edges: list[Generator]
    y_products: list[Generator]
    mixed: list[Generator]

    @property
    def variables(self) -> list[str]:
        return [f"x{j}" for j in range(1, self.n + 1)] + [f"y{j}" for j in range(1, self.n + 1)]

    @property
    def generators(self) -> list[Generator]:
        return self.squares + self.non_edges + self.y_products + self.mixed

    def to_text(self) -> str:
        return "\n".join(str(g) for g in self.generators) + "\n"


def cycle_facets_colex(n: int) -> list[Face]:
    """Edges of the n-cycle in colex order; y_m is dual to the m-th of these."""
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return sorted(edges, key=lambda e: (e[1], e[0]))


def even_cycle_presentation(a: int) -> Presentation:
    """Quadrics J' = J_cx + (y)^2 + I presenting R~ for the 2a-cycle.

    y_m stands for the dual y*_E of the m-th edge E in colex order. Since
    x_j . y*_E = y*_(E - j) when j in E and 0 otherwise, I consists of the
    monomials x_j y_m with j outside E_m, and for each vertex v with edges
    E = {v, j}, E' = {v, k} the binomial x_j y_E - x_k y_E'.
    """
    if a < 2:
        raise ValueError("even cycle presentation needs a >= 2")
    n = 2 * a
    edges = cycle_facets_colex(n)
    edge_set = set(edges)
    ynames = {e: f"y{m}" for m, e in enumerate(edges, start=1)}
    x = [f"x{j}" for j in range(1, n + 1)]

    squares = [Generator(((1, _mono(v, v)),)) for v in x]
    non_edges = [Generator(((1, _mono(f"x{j}", f"x{k}")),))
                 for j, k in combinations(range(1, n + 1), 2) if (j, k) not in edge_set]
    ys = [f"y{m}" for m in range(1, n + 1)]
    y_products = [Generator(((1, _mono(u, v)),)) for u, v in combinations(ys, 2)]
    y_products = [Generator(((1, _mono(v, v)),)) for v in ys] + y_products

    mixed = []
    for e in edges:
        for j in range(1, n + 1):
            if j not in e:
                mixed.append(Generator(((1, _mono(f"x{j}", ynames[e])),)))
    for v in range(1, n + 1):
        e1, e2 = [e for e in edges if v in e]
        j = e1[0] if e1[1] == v else e1[1]
        k = e2[0] if e2[1] == v else e2[1]
        mixed.append(Generator(((1, _mono(f"x{j}", ynames[e1])), (-1, _mono(f"x{k}", ynames[e2])))))
    return Presentation(n, squares, non_edges, y_products, [g.normalized() for g in mixed])


_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*([xy]\d+)\s*\*?\s*([xy]\d+)")


def parse_generator(text: str) -> Generator:
    """Parse a signed sum of quadratic monomials such as ``-x2y1 + x4y3``."""
    pos, terms = 0, []
    text = text.replace(" ", "")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None:
            raise ValueError(f"cannot parse generator {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        terms.append((sign * coef, _mono(m.group(3), m.group(4))))
        pos = m.end()
    return Generator(tuple(terms))


def normalized_set(gens) -> frozenset:
    return frozenset(g.normalized() for g in gens)


def _degree_monomials(variables: list[str], k: int) -> list[Monomial]:
    from itertools import combinations_with_replacement
    return [_mono(*c) for c in combinations_with_replacement(variables, k)]


def quotient_classes(p: Presentation, k: int):
    """Degree-k quotient of T/J' as (class of each monomial, set of dead classes).

    Valid because every generator is a monomial or a difference of two
    monomials, so the ideal in each degree is spanned by monomials and such
    differences; the quotient basis is one monomial per surviving class.
    """
    gens = p.generators
    for g in gens:
        coeffs = sorted(c for c, _ in g.terms)
        if coeffs not in ([1], [-1], [-1, 1]):
            raise ValueError(f"generator {g} is not a monomial or pure binomial")
    monos = _degree_monomials(p.variables, k)
    parent = {m: m for m in monos}

    def find(m):
        while parent[m] != m:
            parent[m] = parent[parent[m]]
            m = parent[m]
        return m

    dead_monos = set()
    cofactors = _degree_monomials(p.variables, k - 2) if k >= 2 else []
    for g in gens:
        for t in cofactors:
            prods = [_mono(*t, *m) for _, m in g.terms]
            if len(prods) == 1:
                dead_monos.add(prods[0])
            else:
                ra, rb = find(prods[0]), find(prods[1])
                if ra != rb:
                    parent[ra] = rb
    cls = {m: find(m) for m in monos}
    dead = {cls[m] for m in dead_monos}
    return cls, dead


def presentation_hilbert_function(p: Presentation, max_degree: int = 4) -> tuple[int, ...]:
    out = []
    for k in range(max_degree + 1):
        if k < 2:
            out.append(len(_degree_monomials(p.variables, k)))
            continue
        cls, dead = quotient_classes(p, k)
        out.append(len(set(cls.values()) - dead))
    return tuple(out)
