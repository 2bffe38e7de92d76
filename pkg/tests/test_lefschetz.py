import json
import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fraction_rank
from simplicial_wlp.complex import (
    SimplicialComplex,
    barycentric_subdivision,
    builtin,
    from_facets,
    one_skeleton_graph,
)
from simplicial_wlp.graph import incidence_matrix
from simplicial_wlp.lefschetz import (
    AlgebraModel,
    CriterionNotApplicable,
    LinearForm,
    Method,
    Verdict,
    boundary_chain_preimages,
    check_dim2_pseudomanifold,
    classify,
    criterion_degree1,
    criterion_top_degree,
    cross_validate,
    eulerian_criterion,
    multiplication_matrix,
    socle,
    socle_clique_bound_check,
    wlp_full,
    wlp_in_degree_by_rank,
)
from simplicial_wlp.random_complexes import random_complexes

EX21 = from_facets(5, [[1, 2, 3], [1, 3, 4], [4, 5]])


def test_classify():
    assert classify(3, 3, 5) is Verdict.INJECTIVE
    assert classify(3, 5, 3) is Verdict.SURJECTIVE
    assert classify(4, 4, 4) is Verdict.BIJECTIVE
    assert classify(2, 3, 5) is Verdict.FAILS
    assert classify(0, 0, 0) is Verdict.BIJECTIVE


def test_linear_form():
    assert LinearForm.all_ones(3)[2] == 1
    with pytest.raises(ValueError):
        LinearForm((0, 0))


def test_hilbert_and_socle():
    alg = AlgebraModel(EX21)
    assert alg.hilbert_function() == (1, 5, 6, 2)
    assert alg.hilbert_series() == "1 + 5t + 6t^2 + 2t^3"
    soc = socle(alg)
    assert soc.degree == 3 and not soc.level
    assert soc.monomials == ((1, 2, 3), (1, 3, 4), (4, 5))
    assert socle(AlgebraModel(builtin("octahedron"))).level
    assert AlgebraModel(from_facets(1, [[1]])).hilbert_series() == "1 + t"


def test_multiplication_matrix_small():
    alg = AlgebraModel(from_facets(2, [[1, 2]]))
    assert multiplication_matrix(alg, 0).tolist() == [[1], [1]]
    assert multiplication_matrix(alg, 1).tolist() == [[1, 1]]
    assert multiplication_matrix(alg, 2).shape == (0, 1)
    m = multiplication_matrix(alg, 1, LinearForm((2, 3)))
    # x1 * (3 x2) + x2 * (2 x1)
    assert m.tolist() == [[3, 2]]
    with pytest.raises(ValueError):
        multiplication_matrix(alg, 3)
    with pytest.raises(ValueError):
        multiplication_matrix(alg, 1, LinearForm((1, 1, 1)))


def test_degree1_matrix_is_transposed_incidence():
    for name in ("octahedron", "torus_7", "path_independence(7)", "example_2_1"):
        cx = builtin(name)
        g = one_skeleton_graph(cx, unused_vertices=False)
        assert multiplication_matrix(AlgebraModel(cx), 1) == incidence_matrix(g).T


@pytest.mark.parametrize("name, failing", [
    ("octahedron", [2]),
    ("tetrahedron_boundary", []),
    ("torus_7", [2]),
    ("cycle(4)", [1]),
    ("cycle(5)", []),
    ("example_2_1", []),
])
def test_builtin_verdicts(name, failing):
    report = wlp_full(AlgebraModel(builtin(name)))
    assert [d.degree for d in report.degrees if not d.holds] == failing
    assert report.wlp == (not failing)
    assert [d.degree for d in report.degrees] == list(range(builtin(name).dim + 2))


def test_trivial_and_propagated_degrees():
    report = wlp_full(AlgebraModel(EX21))
    assert report.by_degree(0).method is Method.TRIVIAL
    assert report.by_degree(3).method is Method.TRIVIAL
    # degree 2: 6 -> 2 surjective, nothing higher to propagate to
    path = wlp_full(AlgebraModel(builtin("path_independence(7)")))
    assert path.by_degree(1).verdict is Verdict.INJECTIVE
    assert path.by_degree(2).verdict is Verdict.SURJECTIVE
    assert path.by_degree(3).method is Method.PROPAGATED
    assert path.by_degree(3).certificate == {"from_degree": 2}
    full = wlp_full(AlgebraModel(builtin("path_independence(7)")), shortcut=False)
    assert [d.verdict for d in full.degrees] == [d.verdict for d in path.degrees]
    with pytest.raises(KeyError):
        path.by_degree(9)


def test_rank_verdict_certificate():
    v = wlp_in_degree_by_rank(AlgebraModel(builtin("cycle(4)")), 1)
    assert v.rank == 3 and v.verdict is Verdict.FAILS
    assert v.certificate == {"rank_method": "exact"}


def test_criterion_degree1_cases():
    c4 = criterion_degree1(builtin("cycle(4)"))
    assert c4.certificate["case"] == "i" and not c4.holds
    assert c4.certificate["offending_component"]["vertices"] == [1, 2, 3, 4]
    assert c4.rank == 3
    oct1 = criterion_degree1(builtin("octahedron"))
    assert oct1.certificate["case"] == "i" and oct1.verdict is Verdict.INJECTIVE
    # two triangles and a tree component: 7 vertices, 7 edges... case (ii) needs |E| < |V|
    cx = from_facets(9, [[1, 2], [2, 3], [1, 3], [4, 5], [5, 6], [7, 8], [8, 9]])
    v = criterion_degree1(cx)
    assert v.certificate["case"] == "ii" and v.verdict is Verdict.SURJECTIVE
    assert v.certificate["implies_all_degrees"]
    assert [c["bipartite"] for c in v.certificate["tally"]] == [False, True, True]
    bad = from_facets(8, [[1, 2], [2, 3], [3, 4], [1, 4], [5, 6], [7, 8]])
    v = criterion_degree1(bad)
    assert v.certificate["case"] == "ii" and not v.holds
    assert v.certificate["offending_component"]["vertices"] == [1, 2, 3, 4]


def test_ghost_vertices_are_ignored():
    # label 4 occurs in no facet, so it contributes nothing to A_1
    cx = from_facets(4, [[1, 2], [2, 3], [1, 3]])
    v = criterion_degree1(cx)
    assert (v.dim_from, v.dim_to) == (3, 3) and v.verdict is Verdict.BIJECTIVE
    assert wlp_in_degree_by_rank(AlgebraModel(cx), 1).verdict is Verdict.BIJECTIVE


def test_top_degree_criterion():
    v = criterion_top_degree(builtin("octahedron"))
    assert v.degree == 2 and not v.holds
    assert len(v.certificate["coloring"]) == 8
    v = criterion_top_degree(builtin("tetrahedron_boundary"))
    assert v.verdict is Verdict.SURJECTIVE and len(v.certificate["odd_cycle"]) % 2 == 1
    with pytest.raises(CriterionNotApplicable):
        criterion_top_degree(EX21)


def _apply(alg, i, combo):
    """Image of a signed ridge combination under multiplication by the all-ones form."""
    m = multiplication_matrix(alg, i)
    vec = [0] * m.cols
    idx = alg.index(i)
    for s, r in combo:
        vec[idx[tuple(r)]] += s
    return [sum(a * b for a, b in zip(row, vec)) for row in m.data]


def test_boundary_preimages_are_correct():
    cx = from_facets(5, [[1, 2, 3], [1, 3, 4], [1, 4, 5]])
    v = criterion_top_degree(cx)
    assert v.verdict is Verdict.SURJECTIVE
    alg = AlgebraModel(cx)
    facets = alg.basis(3)
    for entry in v.certificate["preimages"]:
        image = _apply(alg, 2, entry["combination"])
        expected = [1 if list(f) == entry["facet"] else 0 for f in facets]
        assert image == expected


def test_dim2_characterisation():
    assert not check_dim2_pseudomanifold(builtin("octahedron")).wlp
    assert check_dim2_pseudomanifold(builtin("tetrahedron_boundary")).wlp
    sd = barycentric_subdivision(builtin("tetrahedron_boundary"))
    report = check_dim2_pseudomanifold(sd)
    assert not report.by_degree(2).holds and report.by_degree(1).holds
    with pytest.raises(CriterionNotApplicable):
        check_dim2_pseudomanifold(builtin("cycle(4)"))


def test_eulerian_criterion():
    with pytest.raises(CriterionNotApplicable):
        eulerian_criterion(builtin("octahedron"))
    assert not eulerian_criterion(builtin("octahedron"), planar_asserted=True).holds
    assert eulerian_criterion(builtin("tetrahedron_boundary"), planar_asserted=True).holds
    sd = barycentric_subdivision(builtin("octahedron"))
    assert not eulerian_criterion(sd, planar_asserted=True).holds
    with pytest.raises(CriterionNotApplicable):
        eulerian_criterion(from_facets(3, [[1, 2, 3]]), planar_asserted=True)


def test_socle_clique_bound():
    for name in ("octahedron", "torus_7", "example_2_1", "path_independence(7)"):
        assert socle_clique_bound_check(builtin(name))


def test_report_json_round_trip():
    report = wlp_full(AlgebraModel(builtin("octahedron")))
    text = json.dumps(report.to_json(), sort_keys=True)
    again = json.dumps(json.loads(text), sort_keys=True)
    assert text == again
    payload = json.loads(text)
    assert payload["f_vector"] == [1, 6, 12, 8]
    assert payload["wlp"] is False
    assert payload["socle"] == {"degree": 3, "level": True}
    assert [d["verdict"] for d in payload["degrees"]] == [
        "holds-injective", "holds-injective", "fails", "holds-surjective"]
    # deterministic output across runs and seeds
    other = wlp_full(AlgebraModel(builtin("octahedron")), seed=99).to_json()
    assert json.dumps(other, sort_keys=True) == text


def _square_matrix(alg, i):
    """Multiplication by l^2 = 2 * sum_{j<k} x_j x_k from degree i to i + 2, built directly."""
    cols = alg.index(i)
    rows = []
    for g in alg.basis(i + 2):
        row = [0] * len(cols)
        for pair in combinations(g, 2):
            row[cols[tuple(v for v in g if v not in pair)]] = 2
        rows.append(row)
    return rows


facet_lists = st.lists(
    st.lists(st.integers(1, 7), min_size=1, max_size=5, unique=True), min_size=1, max_size=6)


@settings(max_examples=120, deadline=None)
@given(facet_lists)
def test_composition_is_square_of_form(facets):
    cx = SimplicialComplex(7, facets)
    alg = AlgebraModel(cx)
    for i in range(0, alg.top_degree):
        prod = multiplication_matrix(alg, i + 1) @ multiplication_matrix(alg, i)
        assert prod.tolist() == _square_matrix(alg, i)


@settings(max_examples=120, deadline=None)
@given(facet_lists)
def test_rank_verdicts_against_fraction_oracle(facets):
    cx = SimplicialComplex(7, facets)
    alg = AlgebraModel(cx)
    for v in wlp_full(alg, shortcut=False).degrees:
        m = multiplication_matrix(alg, v.degree).tolist()
        r = fraction_rank(m)
        assert v.rank == r
        assert v.verdict is classify(r, v.dim_from, v.dim_to)


def test_cross_validation_random():
    for cx in random_complexes(150, seed=4):
        cv = cross_validate(cx)
        assert cv.ok, cv.disagreements
        assert cv.checks


def test_random_generic_forms_do_not_beat_all_ones():
    rng = random.Random(2)
    for cx in random_complexes(40, seed=8):
        alg = AlgebraModel(cx)
        for i in range(alg.top_degree + 1):
            form = LinearForm(tuple(rng.randint(1, 1000) for _ in range(cx.n)))
            generic = fraction_rank(multiplication_matrix(alg, i, form).tolist())
            assert generic == wlp_in_degree_by_rank(alg, i).rank
