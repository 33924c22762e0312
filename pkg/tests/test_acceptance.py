"""One test per acceptance criterion, all at exact equality.

Each test prints a PASS/FAIL line in the terminal summary (see conftest).
"""

import random
import time


from helpers import merker, pairing_map_graph
from oracles import lie_transport_native
from dorfman import gallery
from dorfman.complexpair import (ANTIHOLOMORPHIC, HOLOMORPHIC, ComplexChart, bidegree_frames,
                                 build_complex_matched_pair, check_sum_isomorphism, complex_standard,
                                 dolbeault_curvature, project_field)
from dorfman.dirac import (check_dirac, graph_of_two_form, check_lie_matched_pair, check_matched_dirac, dirac_to_lie,
                           direct_sum_dirac, lie_matched_sum, restricted_lie_pair)
from dorfman.forms import (DiffForm, exterior_derivative, interior_product, lie_bracket, lie_derivative,
                           random_form, random_vector_field)
from dorfman.matched import (check_matched_pair, matched_sum, random_candidate, split_by_labels,
                             structure_differences)
from dorfman.polynomial import Chart
from dorfman.regular import build_regular, flat_to_matched_pair, normalization_audit
from dorfman.specfile import load_spec
from dorfman.verify import SampleSpec, check_axioms

AXIOMS = ("jacobi", "leibniz", "nskew", "ad_invariance", "anchor_morphism", "d_annihilation")


def ws(name, force=False):
    return load_spec(gallery.text(name), force=force)


def _pair_labels(mp):
    return list(mp.first.labels), list(mp.second.labels)


def test_criterion_1_axiom_suite():
    sample = SampleSpec()
    assert (sample.count, sample.max_degree) == (16, 2)
    for name, target in [("standard-r3", None), ("twisted-r3", "twisted"), ("so3-point", "so3"),
                         ("merker-r2", "merker")]:
        w = ws(name)
        target = target or w.names_of("twisted")[0]
        start = time.perf_counter()
        report = check_axioms(w.structure(target), sample)
        elapsed = time.perf_counter() - start
        assert [c.name for c in report.checks] == list(AXIOMS)
        assert report.passed, report.to_text()
        assert all(c.stages == {"frame": True, "random": True} for c in report.checks)
        assert elapsed < 10, f"{name} took {elapsed:.1f}s"


def test_criterion_2_mutation_sensitivity():
    E = ws("nonclosed-r4", force=True)["nonclosed"]
    jac = check_axioms(E)["jacobi"]
    assert not jac.passed
    assert jac.witness == {"stage": "frame", "phi": "del_x1", "phi1": "del_x2", "phi2": "del_x3"}
    assert jac.residual == "dx4: 1"

    w = ws("complex-c2-h21")
    H = w.extra["c2"]["H"]
    mp = build_complex_matched_pair(ComplexChart(2), H, drop_h21=True)
    bad = check_sum_isomorphism(mp, H)["bracket"]
    assert not bad.passed
    assert bad.witness["stage"] == "frame"
    assert {"a", "b"} <= set(bad.witness) and bad.residual


def test_criterion_3_theorem_equivalence():
    base = merker()
    outcomes = []
    for seed in range(24):
        mp, kind = random_candidate(base.first, base.second, random.Random(seed), max_degree=2)
        conditions = check_matched_pair(mp).passed
        axioms = check_axioms(matched_sum(mp))
        assert conditions == axioms["jacobi"].passed, f"seed {seed} ({kind})"
        for name in ("leibniz", "nskew", "ad_invariance"):
            assert axioms[name].passed, f"seed {seed} ({kind}): {name}"
        outcomes.append(conditions)
    assert len(outcomes) >= 20
    assert any(outcomes) and not all(outcomes), "the sample should contain both outcomes"


def test_criterion_4_round_trips():
    for name, target in [("merker-r2", "merker"), ("complex-c2-h21", "c2")]:
        mp = ws(name)[target]
        res = split_by_labels(matched_sum(mp), *_pair_labels(mp))
        back = res.pair
        assert structure_differences(back.first, mp.first) == []
        assert structure_differences(back.second, mp.second) == []
        assert back.right.table == mp.right.table
        assert back.left.table == mp.left.table
    cc = ComplexChart(1)
    E = complex_standard(cc)
    res = split_by_labels(E, *bidegree_frames(cc, E))
    assert structure_differences(matched_sum(res.pair), E) == []


def test_criterion_5_regular_module():
    abelian = ws("regular-abelian-r2")["abelian"]
    so3 = ws("regular-so3")["so3"]
    lam = normalization_audit(abelian)
    assert lam == 2
    for rd in (abelian, so3):
        rd = rd.with_lam(lam)
        E = build_regular(rd)
        assert check_axioms(E).passed
        S = matched_sum(flat_to_matched_pair(rd))
        assert structure_differences(S, E) == []


def test_criterion_6_complex_pairs():
    for name, target in [("complex-c1", "c1"), ("complex-c2-h21", "c2")]:
        w = ws(name)
        assert check_sum_isomorphism(w[target], w.extra[target]["H"]).passed
    rng = random.Random(20100416)
    for cc in (ComplexChart(1), ComplexChart(2)):
        for _ in range(32):
            X1, X2 = (project_field(cc, random_vector_field(cc.chart, rng, 2), HOLOMORPHIC) for _ in range(2))
            Y1, Y2 = (project_field(cc, random_vector_field(cc.chart, rng, 2), ANTIHOLOMORPHIC)
                      for _ in range(2))
            assert dolbeault_curvature(cc, X1, X2, Y1).is_zero()
            assert dolbeault_curvature(cc, Y1, Y2, X1).is_zero()


def test_criterion_7_dirac_and_lie():
    assert check_dirac(ws("dirac-graph-omega")["omega"]).passed
    bad = check_dirac(ws("dirac-graph-omega-z")["omega"])["integrability"]
    assert not bad.passed and bad.witness
    assert check_dirac(ws("port-hamiltonian")["ph"]).passed
    broken = check_dirac(ws("port-hamiltonian-broken")["ph"])["integrability"]
    assert not broken.passed and broken.witness

    pairs = [ws("port-hamiltonian")["split"]]
    mp = merker()
    for L in (None, 1, 3):
        pairs.append((mp, graph_of_two_form(mp.first, DiffForm.basis(mp.chart, [0, 1])), pairing_map_graph(mp, L)))
    passing = 0
    for mp, D1, D2 in pairs:
        if not check_matched_dirac(mp, D1, D2).passed:
            continue
        passing += 1
        lmp = restricted_lie_pair(mp, D1, D2)
        assert check_lie_matched_pair(lmp).passed
        A, B = lie_matched_sum(lmp), dirac_to_lie(direct_sum_dirac(mp, D1, D2))
        assert A.anchor == B.anchor and A.table == B.table
    assert passing == len(pairs)


def test_criterion_8_calculus_substrate():
    chart = Chart(("x", "y", "z"))
    rng = random.Random(20100416)
    start = time.perf_counter()
    counts = dict.fromkeys(("dd", "cartan", "commutator", "jacobi"), 0)
    for _ in range(1000):
        X, Y, Z = (random_vector_field(chart, rng, 3) for _ in range(3))
        w = random_form(chart, rng, rng.randint(0, 2), 3)
        assert exterior_derivative(exterior_derivative(w)).is_zero()
        counts["dd"] += 1
        assert lie_derivative(X, w) == lie_transport_native(X, w)
        counts["cartan"] += 1
        v = random_form(chart, rng, rng.randint(1, 3), 3)
        lhs = lie_derivative(X, interior_product(Y, v)) - interior_product(Y, lie_derivative(X, v))
        assert lhs == interior_product(lie_bracket(X, Y), v)
        counts["commutator"] += 1
        J = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y))
        assert J.is_zero()
        counts["jacobi"] += 1
    elapsed = time.perf_counter() - start
    assert all(c == 1000 for c in counts.values())
    assert elapsed < 60, f"{elapsed:.1f}s"
