"""Weak Lefschetz Property of A(cx) = k[x_1..x_n] / (x_i^2, I_cx).

Degree-i monomials of A(cx) are the (i-1)-faces of cx, so multiplication by a
linear form is a face-incidence matrix. Each degree can be decided by exact
rank or, where a combinatorial criterion applies, from graph data alone; the
two routes are cross-checked in ``cross_validate``.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Sequence

from .complex import (
    Face,
    PseudomanifoldKind,
    SimplicialComplex,
    dual_graph,
    one_skeleton_graph,
    pseudomanifold_status,
)
from .graph import clique_number, components, incidence_matrix, is_bipartite, is_eulerian
from .linalg import IntMatrix, rank

log = logging.getLogger(__name__)


class Verdict(enum.Enum):
    INJECTIVE = "holds-injective"
    SURJECTIVE = "holds-surjective"
    BIJECTIVE = "holds-bijective"
    FAILS = "fails"

    @property
    def holds(self) -> bool:
        return self is not Verdict.FAILS

    @property
    def surjective(self) -> bool:
        return self in (Verdict.SURJECTIVE, Verdict.BIJECTIVE)


class Method(enum.Enum):
    RANK = "rank"
    CRITERION_DEG1 = "criterion-deg1"
    CRITERION_PSEUDOMANIFOLD = "criterion-pseudomanifold"
    CRITERION_EULERIAN = "criterion-eulerian"
    PROPAGATED = "propagated"
    TRIVIAL = "trivial"


class CriterionNotApplicable(ValueError):
    pass


def classify(rnk: int, dim_from: int, dim_to: int) -> Verdict:
    if rnk != min(dim_from, dim_to):
        return Verdict.FAILS
    if dim_from == dim_to:
        return Verdict.BIJECTIVE
    return Verdict.INJECTIVE if dim_from < dim_to else Verdict.SURJECTIVE


def _holding(dim_from: int, dim_to: int) -> Verdict:
    return classify(min(dim_from, dim_to), dim_from, dim_to)


@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if not any(self.coefficients):
            raise ValueError("linear form must be nonzero")

    @classmethod
    def all_ones(cls, n: int) -> LinearForm:
        return cls((1,) * n)

    def __getitem__(self, vertex: int) -> int:
        """Coefficient of x_vertex (1-based, like vertex labels)."""
        return self.coefficients[vertex - 1]


class AlgebraModel:
    """Graded monomial model of A(cx); degree i has the (i-1)-faces as basis."""

    def __init__(self, cx: SimplicialComplex):
        self.complex = cx
        self._index: dict[int, dict[Face, int]] = {}

    @property
    def top_degree(self) -> int:
        return self.complex.dim + 1

    def basis(self, i: int) -> tuple[Face, ...]:
        if i < 0:
            return ()
        return self.complex.faces_of_dim(i - 1)

    def index(self, i: int) -> dict[Face, int]:
        idx = self._index.get(i)
        if idx is None:
            idx = self._index[i] = {f: k for k, f in enumerate(self.basis(i))}
        return idx

    def dim(self, i: int) -> int:
        return len(self.basis(i))

    def hilbert_function(self) -> tuple[int, ...]:
        return tuple(self.dim(i) for i in range(self.top_degree + 1))

    def hilbert_series(self) -> str:
        terms = []
        for i, c in enumerate(self.hilbert_function()):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + mono)
        return " + ".join(terms)


def algebra_model(cx: SimplicialComplex) -> AlgebraModel:
    return AlgebraModel(cx)


def multiplication_matrix(alg: AlgebraModel, i: int, form: LinearForm | None = None) -> IntMatrix:
    """Matrix of A_i -> A_{i+1}, rows = degree-(i+1) faces, cols = degree-i faces."""
    if not 0 <= i <= alg.top_degree:
        raise ValueError(f"degree {i} outside 0..{alg.top_degree}")
    if form is None:
        form = LinearForm.all_ones(alg.complex.n)
    if len(form.coefficients) != alg.complex.n:
        raise ValueError("linear form has the wrong number of variables")
    cols = alg.index(i)
    target = alg.basis(i + 1)
    rows = []
    for g in target:
        row = [0] * len(cols)
        for v in g:
            row[cols[tuple(u for u in g if u != v)]] = form[v]
        rows.append(row)
    return IntMatrix(len(target), len(cols), rows)


def _faces(fs) -> list[list[int]]:
    return [list(f) for f in fs]


@dataclass
class DegreeVerdict:
    degree: int
    dim_from: int
    dim_to: int
    verdict: Verdict
    method: Method
    rank: int | None = None
    certificate: dict[str, Any] | None = None

    @property
    def holds(self) -> bool:
        return self.verdict.holds

    def to_json(self) -> dict[str, Any]:
        return {
            "i": self.degree,
            "dim_from": self.dim_from,
            "dim_to": self.dim_to,
            "verdict": self.verdict.value,
            "method": self.method.value,
            "rank": self.rank,
            "certificate": self.certificate,
        }


@dataclass
class Socle:
    degree: int
    monomials: tuple[Face, ...]
    level: bool


def socle(alg: AlgebraModel) -> Socle:
    """Socle of A(cx): spanned by the facets, of any dimension."""
    cx = alg.complex
    return Socle(cx.dim + 1, cx.facets, cx.is_pure())


@dataclass
class WlpReport:
    complex: SimplicialComplex
    degrees: list[DegreeVerdict] = field(default_factory=list)

    @property
    def wlp(self) -> bool:
        return all(d.holds for d in self.degrees)

    def by_degree(self, i: int) -> DegreeVerdict:
        for d in self.degrees:
            if d.degree == i:
                return d
        raise KeyError(i)

    def to_json(self) -> dict[str, Any]:
        cx = self.complex
        soc = socle(AlgebraModel(cx))
        return {
            "schema": 1,
            "complex": {"n": cx.n, "facets": _faces(cx.facets)},
            "f_vector": list(cx.f_vector()),
            "socle": {"degree": soc.degree, "level": soc.level},
            "degrees": [d.to_json() for d in self.degrees],
            "wlp": self.wlp,
        }


def wlp_in_degree_by_rank(alg: AlgebraModel, i: int, seed: int | None = None) -> DegreeVerdict:
    """Decide maximal rank of multiplication by x_1 + ... + x_n in degree i.

    The all-ones form is a Lefschetz element for any monomial quotient as
    soon as one exists, so no random forms are needed.
    """
    m = multiplication_matrix(alg, i)
    r = rank(m, seed=seed)
    return DegreeVerdict(i, m.cols, m.rows, classify(r.rank, m.cols, m.rows), Method.RANK,
                         r.rank, {"rank_method": r.method.value})


def trivial_degree(alg: AlgebraModel, i: int) -> DegreeVerdict:
    """Degree 0 or the top degree, where maximal rank needs no computation."""
    dim_from, dim_to = alg.dim(i), alg.dim(i + 1)
    r = min(dim_from, dim_to)
    return DegreeVerdict(i, dim_from, dim_to, classify(r, dim_from, dim_to), Method.TRIVIAL, r)


def wlp_full(alg: AlgebraModel, shortcut: bool = True, seed: int | None = None) -> WlpReport:
    """Verdicts for degrees 0..dim+1.

    Degree 0 is injective because the form is nonzero and the top degree maps
    onto A_{dim+2} = 0. With ``shortcut``, a surjective degree i with
    dim A_i > dim A_{i+1} settles every higher degree without rank work.
    """
    top = alg.top_degree
    report = WlpReport(alg.complex)
    report.degrees.append(trivial_degree(alg, 0))
    propagate_from = None
    for i in range(1, top):
        if propagate_from is not None:
            dim_from, dim_to = alg.dim(i), alg.dim(i + 1)
            report.degrees.append(DegreeVerdict(
                i, dim_from, dim_to, _holding(dim_from, dim_to), Method.PROPAGATED, dim_to,
                {"from_degree": propagate_from}))
            continue
        v = wlp_in_degree_by_rank(alg, i, seed=seed)
        report.degrees.append(v)
        if shortcut and v.verdict.surjective and v.dim_from > v.dim_to:
            propagate_from = i
    if top >= 1:
        report.degrees.append(trivial_degree(alg, top))
    return report


def _component_json(g, comp) -> dict[str, Any]:
    return {"vertices": [g.labels[v] for v in comp.vertices],
            "edges": comp.edge_count, "bipartite": comp.bipartite}


def criterion_degree1(cx: SimplicialComplex) -> DegreeVerdict:
    """Degree-1 verdict from the 1-skeleton's components.

    When dim A_2 >= dim A_1 the map is injective iff no component is
    bipartite. Otherwise it is surjective iff bipartite components are trees
    and every other component has as many edges as vertices; a holding
    verdict in that case also settles all higher degrees.
    """
    g = one_skeleton_graph(cx, unused_vertices=False)
    summary = components(g)
    nv, ne = g.vertex_count, len(g.edges)
    b = summary.bipartite_count
    cert: dict[str, Any] = {"b_G": b, "vertices": nv, "edges": ne}
    if ne >= nv:
        cert["case"] = "i"
        bad = next((c for c in summary.components if c.bipartite), None)
        if bad is not None:
            cert["offending_component"] = _component_json(g, bad)
        holds = bad is None
    else:
        cert["case"] = "ii"
        bad = next((c for c in summary.components
                    if (c.bipartite and not c.is_tree)
                    or (not c.bipartite and c.edge_count != len(c.vertices))), None)
        cert["tally"] = [_component_json(g, c) for c in summary.components]
        if bad is not None:
            cert["offending_component"] = _component_json(g, bad)
        holds = bad is None
        cert["implies_all_degrees"] = holds
    verdict = _holding(nv, ne) if holds else Verdict.FAILS
    return DegreeVerdict(1, nv, ne, verdict, Method.CRITERION_DEG1, nv - b, cert)


def boundary_chain_preimages(cx: SimplicialComplex, boundary: Sequence[Face]) -> dict[Face, list[tuple[int, Face]]]:
    """For each facet F, a signed ridge combination that the top map sends to x_F.

    Facets are walked to a boundary facet through shared ridges; along the
    chain F = F_1, ..., F_k the ridges B_i = F_i & F_(i+1) and a boundary
    ridge B_k of F_k give x_F = sum (-1)^(i-1) * mu(x_(B_i)).
    """
    facets = cx.facets
    by_ridge: dict[Face, list[int]] = {}
    for idx, f in enumerate(facets):
        for r in combinations(f, len(f) - 1):
            by_ridge.setdefault(r, []).append(idx)
    # BFS from all boundary facets; step[idx] = (ridge towards boundary, next facet)
    step: dict[int, tuple[Face, int | None]] = {}
    frontier = []
    for r in boundary:
        (idx,) = by_ridge[r]
        if idx not in step:
            step[idx] = (r, None)
            frontier.append(idx)
    while frontier:
        nxt = []
        for idx in frontier:
            f = facets[idx]
            for r in combinations(f, len(f) - 1):
                for other in by_ridge[r]:
                    if other not in step:
                        step[other] = (r, idx)
                        nxt.append(other)
        frontier = nxt
    out = {}
    for idx, f in enumerate(facets):
        combo = []
        sign = 1
        cur: int | None = idx
        while cur is not None:
            r, cur = step[cur]
            combo.append((sign, r))
            sign = -sign
        out[f] = combo
    return out


def criterion_top_degree(cx: SimplicialComplex) -> DegreeVerdict:
    """Degree-d verdict for a d-dimensional pseudomanifold.

    With boundary the map is always surjective (certificate: explicit
    preimages of every facet). Without boundary it has maximal rank iff the
    dual graph is not bipartite.
    """
    status = pseudomanifold_status(cx)
    if not status.is_pseudomanifold:
        raise CriterionNotApplicable(f"not a pseudomanifold: {status.reason}")
    d = cx.dim
    ridge_count = len(cx.faces_of_dim(d - 1))
    facet_count = len(cx.facets)
    if status.kind is PseudomanifoldKind.WITH_BOUNDARY:
        pre = boundary_chain_preimages(cx, status.boundary_ridges)
        cert = {
            "status": status.kind.value,
            "boundary_ridges": _faces(status.boundary_ridges),
            "preimages": [{"facet": list(f), "combination": [[s, list(r)] for s, r in combo]}
                          for f, combo in pre.items()],
        }
        return DegreeVerdict(d, ridge_count, facet_count, _holding(ridge_count, facet_count),
                             Method.CRITERION_PSEUDOMANIFOLD, facet_count, cert)
    g = dual_graph(cx)
    bip = is_bipartite(g)
    if bip:
        cert = {"status": status.kind.value, "dual_graph": "bipartite",
                "coloring": [[list(g.labels[v]), c] for v, c in enumerate(bip.coloring)]}
        return DegreeVerdict(d, ridge_count, facet_count, Verdict.FAILS,
                             Method.CRITERION_PSEUDOMANIFOLD, facet_count - 1, cert)
    cert = {"status": status.kind.value, "dual_graph": "nonbipartite",
            "odd_cycle": [list(g.labels[v]) for v in bip.odd_cycle]}
    return DegreeVerdict(d, ridge_count, facet_count, _holding(ridge_count, facet_count),
                         Method.CRITERION_PSEUDOMANIFOLD, facet_count, cert)


def _require_dim2_pseudomanifold(cx: SimplicialComplex):
    status = pseudomanifold_status(cx)
    if cx.dim != 2 or not status.is_pseudomanifold:
        raise CriterionNotApplicable("expected a 2-dimensional pseudomanifold")
    return status


def check_dim2_pseudomanifold(cx: SimplicialComplex) -> WlpReport:
    """Full WLP report for a 2-dimensional pseudomanifold, without any rank work."""
    _require_dim2_pseudomanifold(cx)
    alg = AlgebraModel(cx)
    report = WlpReport(cx)
    report.degrees.append(trivial_degree(alg, 0))
    report.degrees.append(criterion_degree1(cx))
    report.degrees.append(criterion_top_degree(cx))
    report.degrees.append(trivial_degree(alg, 3))
    return report


def eulerian_criterion(cx: SimplicialComplex, planar_asserted: bool = False) -> DegreeVerdict:
    """Degree-2 verdict for a closed planar triangulated surface.

    Planarity is taken on the caller's word; it is not checked here.
    """
    if not planar_asserted:
        raise CriterionNotApplicable("the Eulerian criterion needs an explicit planarity assertion")
    status = _require_dim2_pseudomanifold(cx)
    if status.kind is not PseudomanifoldKind.WITHOUT_BOUNDARY:
        raise CriterionNotApplicable("the Eulerian criterion needs a surface without boundary")
    g = one_skeleton_graph(cx, unused_vertices=False)
    eulerian = is_eulerian(g)
    ridge_count, facet_count = len(cx.faces_of_dim(1)), len(cx.facets)
    cert = {"eulerian": eulerian, "degrees": dict(zip(map(str, g.labels), g.degrees()))}
    if eulerian:
        return DegreeVerdict(2, ridge_count, facet_count, Verdict.FAILS,
                             Method.CRITERION_EULERIAN, facet_count - 1, cert)
    return DegreeVerdict(2, ridge_count, facet_count, _holding(ridge_count, facet_count),
                         Method.CRITERION_EULERIAN, facet_count, cert)


def socle_clique_bound_check(cx: SimplicialComplex) -> bool:
    """socle degree <= clique number of G(cx), and the socle-at-most-3 bound.

    The second part only has content when degree 1 holds and
    dim A_2 <= dim A_1.
    """
    soc = cx.dim + 1
    omega = clique_number(one_skeleton_graph(cx, unused_vertices=False))
    if soc > omega:
        return False
    deg1 = criterion_degree1(cx)
    if deg1.holds and deg1.dim_to <= deg1.dim_from and soc > 3:
        return False
    return True


@dataclass
class CrossValidation:
    complex: SimplicialComplex
    checks: list[str] = field(default_factory=list)
    disagreements: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def _check(self, name: str, passed: bool, detail: str = ""):
        self.checks.append(name)
        if not passed:
            self.disagreements.append(f"{name}: {detail}" if detail else name)


def cross_validate(cx: SimplicialComplex, seed: int | None = None) -> CrossValidation:
    """Run rank and every applicable criterion and report disagreements."""
    out = CrossValidation(cx)
    alg = AlgebraModel(cx)
    by_rank = wlp_full(alg, shortcut=False, seed=seed)

    mu1 = multiplication_matrix(alg, 1)
    g = one_skeleton_graph(cx, unused_vertices=False)
    out._check("degree-1 matrix is the transposed incidence matrix",
               mu1 == incidence_matrix(g).transpose())
    b = components(g).bipartite_count
    out._check("degree-1 rank equals |V| - b_G", by_rank.by_degree(1).rank == g.vertex_count - b,
               f"rank {by_rank.by_degree(1).rank}, |V| - b_G = {g.vertex_count - b}")

    crit1 = criterion_degree1(cx)
    rank1 = by_rank.by_degree(1)
    out._check("degree-1 criterion matches rank", crit1.verdict is rank1.verdict,
               f"criterion {crit1.verdict.value}, rank {rank1.verdict.value}")
    if crit1.certificate.get("implies_all_degrees"):
        out._check("degree-1 surjectivity propagates to all degrees", by_rank.wlp)

    for v in by_rank.degrees:
        if v.degree >= 1 and v.verdict.surjective and v.dim_from > v.dim_to:
            later = [w for w in by_rank.degrees if w.degree > v.degree]
            out._check(f"surjectivity propagates from degree {v.degree}",
                       all(w.verdict.surjective for w in later))

    if pseudomanifold_status(cx).is_pseudomanifold:
        top = criterion_top_degree(cx)
        rank_top = by_rank.by_degree(cx.dim)
        out._check("top-degree criterion matches rank", top.verdict is rank_top.verdict,
                   f"criterion {top.verdict.value}, rank {rank_top.verdict.value}")
        if cx.dim == 2:
            combinatorial = check_dim2_pseudomanifold(cx)
            out._check("dimension-2 characterisation matches rank",
                       combinatorial.wlp == by_rank.wlp)

    if cx.n <= 64:
        out._check("socle degree bounded by clique number", socle_clique_bound_check(cx))
    if out.disagreements:
        log.warning("cross-validation disagreements for %r: %s", cx, out.disagreements)
    return out
