import random
import warnings

import pytest
from conftest import DATA, hirzebruch

from toricsegre import charclass as cc
from toricsegre.chow import build_chow_ring, invert_unit
from toricsegre.errors import DegreeNotNef, NotCompleteIntersection, NotZeroDimensional, SubsetBlowup
from toricsegre.fan import cox_ring, irrelevant_ideal, load_fan
from toricsegre.groebner import INFINITE, Ideal, ideals_equal, saturate_by_ideal
from toricsegre.polyring import multidegree


def setup(space):
    fan = load_fan(space)
    return fan, cox_ring(fan), build_chow_ring(fan)


def sub(space, *lines):
    fan, ring, chow = setup(space)
    return cc.prepare_generators([ring.parse(s) for s in lines], fan, chow)


def test_prepare_raises_to_common_degree():
    fan, ring, chow = setup("P1xP1")
    V = cc.prepare_generators([ring.parse("x0"), ring.parse("y0")], fan, chow)
    assert V.alpha == (1, 1)
    assert sorted(str(g) for g in V.generators) == ["x0*y0", "x0*y1", "x1*y0"]
    # same subscheme: equal saturations by the irrelevant ideal
    B = irrelevant_ideal(fan, ring)
    a = saturate_by_ideal(Ideal(V.generators, ring), B)
    b = saturate_by_ideal(Ideal(V.original, ring), B)
    assert ideals_equal(a, b)


def test_prepare_fixed_points():
    V = sub("P2", "x0^2 + x1*x2", "x0*x1")
    assert V.alpha == (2,) and len(V.generators) == 2
    V = cc.prepare_generators(
        [cox_ring(load_fan("P4xP2")).parse(s) for s in open(DATA / "example1_1.txt") if s.strip()],
        load_fan("P4xP2"),
    )
    assert V.alpha == (1, 2) and len(V.generators) == 3


def test_prepare_non_nef_degree(fano):
    ring = cox_ring(fano)
    V = cc.prepare_generators([ring.parse("x0")], fano)
    assert V.alpha == (1, 0)
    assert all(multidegree(g) == (1, 0) for g in V.generators)
    B = irrelevant_ideal(fano, ring)
    assert ideals_equal(saturate_by_ideal(Ideal(V.generators, ring), B), saturate_by_ideal(Ideal([ring.gen(0)]), B))
    with pytest.raises(DegreeNotNef):
        cc.prepare_generators([ring.parse("x0")], fano, search=0)


def test_projective_degree_boundaries(rng):
    V = sub("P2xP1", "x0^2*y0 + x1*x2*y1")
    T = cc.projective_degrees(V, rng)
    assert T.classes[0] == V.chow.ONE
    assert all(c.is_zero() for c in T.classes[1:])
    V = sub("P3", "x0*x1 - x2*x3", "x0^2 + x1*x2 - x3^2")
    T = cc.projective_degrees(V, rng)
    a = V.alpha_class()
    assert T.codim == 2 and V.r == 1
    assert T.classes[1] == a
    assert all(c.is_zero() for c in T.classes[2:])
    V = sub("P3", "x0*x1", "x0*x2")
    T = cc.projective_degrees(V, rng)
    assert T.codim == 1 and T.gammas[1] == [1]


def test_hypersurface_closed_form(fano, rng):
    ring = cox_ring(fano)
    f = ring.random_form((2, 1), rng)
    V = cc.prepare_generators([f], fano)
    a = V.alpha_class()
    assert cc.segre_class(V, rng) == a * invert_unit(a.ring.ONE + a)


def test_chern_fulton_examples(rng):
    V = sub("P2", "x0^2 + x1^2 + x2^2")
    assert cc.chern_fulton(V, rng) == V.chow.parse("2*h + 2*h^2")
    V = sub("P2", "x0 + 2*x1 - x2")
    assert cc.chern_fulton(V, rng) == V.chow.parse("h + 2*h^2")
    # smooth quadric surface in P3: chi = 4
    V = sub("P3", "x0*x1 - x2*x3")
    assert cc.chern_fulton(V, rng).degree() == 4


def test_singularity_subschemes(rng):
    V = sub("P2", "x0^2 + x1^2 + x2^2")
    J = cc.singularity_subscheme(V, rng)
    assert J.is_unit()
    V = sub("P2", "x1^2*x2 - x0^3 - x0^2*x2")
    J = cc.singularity_subscheme(V, rng)
    ring = V.ring
    assert ideals_equal(J, Ideal([ring.gen(0), ring.gen(1)]))
    V = sub("P3", "x0", "x1")
    assert cc.singularity_subscheme(V, rng).is_unit()
    with pytest.raises(NotCompleteIntersection):
        cc.singularity_subscheme(sub("P3", "x0", "x0*x1"), rng)


def test_csm_hypersurface_examples(rng):
    fan, ring, chow = setup("P2")
    assert cc.csm_hypersurface(ring.parse("x0^3 + x1^3 + x2^3"), fan, rng) == chow.parse("3*h")
    assert cc.csm_hypersurface(ring.parse("x1^2*x2 - x0^3 - x0^2*x2"), fan, rng) == chow.parse("3*h + h^2")
    for n in (2, 3, 4):
        fan, ring, chow = setup(f"P{n}")
        assert cc.csm_hypersurface(ring.parse("x0 - x1"), fan, rng).degree() == n


def test_csm_examples(rng):
    V = sub("P2", "x0 + x1", "x1 - 3*x2")
    assert cc.csm(V, rng) == V.chow.parse("h^2")
    fan, ring, chow = setup("P2")
    f = ring.parse("x1^2*x2 - x0^3 - x0^2*x2")
    V = cc.prepare_generators([f], fan, chow)
    assert cc.csm(V, 1) == cc.csm_hypersurface(f, fan, 1)


def test_csm_whole_space(fano):
    V = cc.prepare_generators([], fano)
    assert cc.csm(V) == build_chow_ring(fano).chern_tangent()
    assert cc.euler(V) == 9


def test_csm_complete_intersection_examples(rng):
    V = sub("P3", "x0^2 + x1^2 - x2^2 + 3*x3^2", "x0*x1 + x2*x3 - x3^2")
    c = cc.csm_complete_intersection(V, rng)
    assert c.degree() == 0
    assert c == cc.csm(V, rng)
    fan, ring, chow = setup("P2")
    f = ring.parse("x1^2*x2 - x0^3 - x0^2*x2")
    V = cc.prepare_generators([f], fan, chow)
    assert cc.csm_complete_intersection(V, rng) == cc.csm_hypersurface(f, fan, rng)
    with pytest.raises(NotCompleteIntersection):
        cc.csm_complete_intersection(sub("P3", "x0", "x0*x1"), rng)


def test_csm_complete_intersection_singular(rng):
    # tangent plane section of a smooth quadric: two lines meeting in a point
    V = sub("P3", "x0*x1 - x2*x3", "x0")
    c = cc.csm_complete_intersection(V, rng, verify=True)
    assert c.degree() == 3
    assert c == cc.csm(V, rng)


def test_csm_smooth_times_singular(rng):
    fan, ring, chow = setup("P2")
    f1 = ring.parse("x0 + x1 + x2")
    f2 = ring.parse("x0*x1 - x2^2")
    c = cc.csm_smooth_times_singular([], f1, f2, fan, rng)
    V = cc.prepare_generators([f1, f2], fan, chow)
    assert c == cc.csm(V, rng)
    assert c.degree() == 2
    with pytest.raises(NotCompleteIntersection):
        cc.csm_smooth_times_singular([], f1, ring.one(), fan, rng)
    fan, ring, chow = setup("P3")
    Z = [ring.parse("x0*x1 - x2*x3")]
    g1, g2 = ring.parse("x0 - x1 + x2"), ring.parse("x2 + x3 - 2*x0")
    c = cc.csm_smooth_times_singular(Z, g1, g2, fan, rng)
    V = cc.prepare_generators(Z + [g1, g2], fan, chow)
    assert c == cc.csm(V, rng)


def test_euler_topology(rng):
    for n in range(1, 4):
        fan, ring, chow = setup(f"P{n}")
        assert cc.euler(cc.prepare_generators([], fan), rng) == n + 1
    assert cc.euler(sub("P2", "x0^3 + x1^3 + x2^3"), rng) == 0
    assert cc.euler(sub("P2", "x1^2*x2 - x0^3 - x0^2*x2"), rng) == 1
    # a point blown up: Hirzebruch surface curves, chi(P1) = 2
    fan = hirzebruch(1)
    ring = cox_ring(fan)
    V = cc.prepare_generators([ring.gen(0)], fan)
    assert cc.euler(V, rng) == 2


def test_unit_scalar_invariance(rng):
    a = cc.euler(sub("P2", "x1^2*x2 - x0^3 - x0^2*x2", "x0 - x2"), rng)
    b = cc.euler(sub("P2", "5*x1^2*x2 - 5*x0^3 - 5*x0^2*x2", "-3*x0 + 3*x2"), rng)
    assert a == b


def test_empty_subscheme(rng):
    V = sub("P2", "x0", "x1", "x2")
    assert cc.segre_class(V, rng).is_zero()
    assert cc.euler(V, rng) == 0
    V = sub("P2", "1")
    assert cc.segre_class(V, rng).is_zero()
    assert cc.csm(V, rng).is_zero()


def test_pairings_agree_on_orthogonal_rings():
    V = sub("P2xP1", "x0*y0 + x1*y1", "x2*y0 - x0*y1")
    assert cc.segre_class(V, 3, "dual") == cc.segre_class(V, 3, "literal")
    with pytest.raises(ValueError):
        cc.projective_degrees(V, 3, "other")


def test_workers_do_not_change_results():
    V = sub("P2xP1", "x0*y0 + x1*y1", "x2*y0 - x0*y1", "x1*y0 + x2*y1")
    a = cc.projective_degrees(V, 11, workers=1)
    b = cc.projective_degrees(V, 11, workers=2)
    assert a.gammas == b.gammas and a.classes == b.classes


def test_retry_path(monkeypatch):
    V = sub("P2", "x0*x1", "x0*x2")
    expected = cc.segre_class(V, 5)
    real = cc.quotient_dim
    calls = {"n": 0}

    def flaky(G):
        calls["n"] += 1
        if calls["n"] == 1:
            return INFINITE
        return real(G)

    monkeypatch.setattr(cc, "quotient_dim", flaky)
    assert cc.segre_class(V, 5) == expected
    monkeypatch.setattr(cc, "quotient_dim", lambda G: INFINITE)
    with pytest.raises(NotZeroDimensional):
        cc.segre_class(V, 5)


def test_subset_cap_warning(rng):
    V = sub("P2", "x0", "x0 + x1", "x0 - x1")
    with pytest.warns(SubsetBlowup):
        cc.csm(V, rng, cap=4)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        cc.csm(V, rng)


def test_euler_relation_membership(rng):
    from toricsegre.groebner import ideal_membership

    for space in ("P2", "P1xP1", "P2xP1"):
        fan, ring, chow = setup(space)
        for _ in range(3):
            beta = tuple(rng.randint(1, 3) for _ in range(chow.q))
            f = ring.random_form(beta, rng)
            assert ideal_membership(f, Ideal(cc.jacobian_ideal(f), ring))


def test_csm_ignores_monomial_multiplicity(rng):
    P2 = load_fan("P2")
    ring = cox_ring(P2)
    f = ring.parse("x0^3*x1^2")
    assert cc.reduced_monomial_content(f) == ring.parse("x0*x1")
    c = cc.csm_hypersurface(f, P2, rng)
    # two lines meeting in a point: chi = 2 + 2 - 1
    assert c == cc.csm_hypersurface(ring.parse("x0*x1"), P2, rng)
    assert c.degree() == 3
