import random

import pytest
import sympy
from conftest import corpus_fans, hirzebruch
from hypothesis import given, settings
from hypothesis import strategies as st

from toricsegre.chow import ChowClass, build_chow_ring, chern_tangent, complementary_data, invert_unit, point_class
from toricsegre.errors import NotAUnit
from toricsegre.fan import class_group_grading, cox_ring, load_fan, representative, stanley_reisner_ideal
from toricsegre.polyring import multidegree

FANS = corpus_fans()


def sympy_presentation(fan):
    """Groebner basis over Q of the Stanley-Reisner plus linear relations in the ray variables."""
    xs = sympy.symbols(" ".join(fan.names))
    ring = cox_ring(fan)
    gens = []
    for m in stanley_reisner_ideal(fan, ring):
        (e,) = m.terms
        gens.append(sympy.prod([x**a for x, a in zip(xs, e)]))
    _, rel = class_group_grading(fan)
    for row in rel:
        gens.append(sum(c * x for c, x in zip(row, xs)))
    return xs, sympy.groebner(gens, *xs, order="grevlex", domain="QQ")


def lift(c: ChowClass, xs):
    """A polynomial in the ray variables representing c."""
    R = c.ring
    fan = R.fan
    lin = []
    for b in R.basis:
        a = representative(b, fan)
        lin.append(sum(ai * x for ai, x in zip(a, xs)))
    return sum(coef * sympy.prod([l**k for l, k in zip(lin, e)]) for e, coef in c.terms.items())


def test_product_presentation():
    R = build_chow_ring(FANS["P4xP2"])
    h1, h2 = R.gens()
    assert R.names == ["h1", "h2"]
    assert (h1**5).is_zero() and (h2**3).is_zero()
    assert R.render_monomial(R.zeta) == "h1^4*h2^2"
    assert R.ranks == [1, 2, 3, 3, 3, 2, 1]


def test_fano_presentation(fano):
    R = build_chow_ring(fano)
    assert R.names == ["h2", "h5"]
    assert str(R.reduce("h2^3")) == "h2^2*h5"
    assert R.reduce("h5^3").is_zero()
    # ray classes: h0 = h2 - h5, h1 = h2, h3 = h4 = h5
    assert R.reduce("x0") == R.parse("h2 - h5")
    assert R.reduce("x1") == R.gen("h2") and R.reduce("x4") == R.gen("h5")
    assert R.reduce("x0*x1*x2").is_zero() and R.reduce("x3*x4*x5").is_zero()
    assert point_class(R) == R.parse("h2^2*h5^2")
    assert sum(R.ranks) == 9


def test_p1():
    R = build_chow_ring(load_fan("P1"))
    (h,) = R.gens()
    assert (h * h).is_zero() and point_class(R) == h


@pytest.mark.parametrize("name", sorted(FANS))
def test_against_rational_groebner_oracle(name):
    fan = FANS[name]
    if fan.nrays > 8:
        pytest.skip("oracle too slow")
    R = build_chow_ring(fan)
    xs, G = sympy_presentation(fan)
    # the point class has degree one: equals the product over any maximal cone
    z = lift(R.point_class(), xs)
    for cone in fan.max_cones:
        assert G.reduce(sympy.expand(z - sympy.prod([xs[i] for i in cone])))[1] == 0
    # random monomials in the rays reduce to the same class
    rng = random.Random(7)
    for _ in range(10):
        e = [0] * fan.nrays
        for _ in range(rng.randint(1, fan.dim + 1)):
            e[rng.randrange(fan.nrays)] += 1
        c = R.reduce({tuple(e): 1})
        mono = sympy.prod([x**a for x, a in zip(xs, e)])
        assert G.reduce(sympy.expand(mono - lift(c, xs)))[1] == 0


@pytest.mark.parametrize("name", sorted(FANS))
def test_structure(name):
    fan = FANS[name]
    R = build_chow_ring(fan)
    assert sum(R.ranks) == len(fan.max_cones)
    assert R.point_class().degree() == 1
    assert chern_tangent(R).degree() == len(fan.max_cones)
    for i, ws in R.omega.items():
        assert len(ws) == R.ranks[i]
        for w in ws:
            assert all(a <= b for a, b in zip(w, R.zeta))
    for i in range(R.n):
        assert all(R.monomial(e).is_zero() for e in _all_monomials(R.q, R.n + 1 + i))


def _all_monomials(q, d):
    from toricsegre.chow import _monomials

    return _monomials(q, d)


def test_orthogonality_flags(fano):
    assert build_chow_ring(FANS["P4xP2"]).orthogonal
    R = build_chow_ring(fano)
    assert not R.orthogonal
    assert R.pairing[1] == [[1, 0], [1, 1]]
    assert not build_chow_ring(hirzebruch(1)).orthogonal


def test_degree_zero_below_top():
    R = build_chow_ring(FANS["P2xP1"])
    h1, h2 = R.gens()
    assert (h1 * h2).degree() == 0
    assert (h1 * h1 * h2).degree() == 1


def test_chern_tangent_examples(fano):
    R = build_chow_ring(load_fan("P2"))
    assert chern_tangent(R) == R.parse("1 + 3*h + 3*h^2")
    R = build_chow_ring(load_fan("P1xP1"))
    assert chern_tangent(R) == R.parse("1 + 2*h1 + 2*h2 + 4*h1*h2")
    R = build_chow_ring(fano)
    assert chern_tangent(R) == R.parse("(1 + h2 - h5)*(1 + h2)^2*(1 + h5)^3")


def test_invert_unit_examples(fano):
    R = build_chow_ring(load_fan("P2"))
    assert invert_unit(R.parse("1 + h")) == R.parse("1 - h + h^2")
    assert invert_unit(R.ONE) == R.ONE
    F = build_chow_ring(fano)
    u = F.parse("1 + 3*h2 + 10*h5")
    assert invert_unit(u) * u == F.ONE
    assert invert_unit(-u) * (-u) == F.ONE
    with pytest.raises(NotAUnit):
        invert_unit(F.parse("2 + h2"))


def test_complementary_data(fano, rng):
    R = build_chow_ring(FANS["P4xP2"])
    ring = cox_ring(R.fan)
    a, L = complementary_data((2, 1), R, rng, ring)
    assert a == R.parse("h1^2*h2")
    assert sorted(multidegree(g) for g in L.generators) == [(0, 1), (1, 0), (1, 0)]
    a, L = complementary_data((0, 0), R, rng, ring)
    assert a == R.point_class() and len(L) == 6
    F = build_chow_ring(fano)
    a, L = complementary_data((1, 1), F, rng)
    assert a == F.parse("h2*h5")
    assert sorted(multidegree(g) for g in L.generators) == [(0, 1), (1, 0)]


def test_json_roundtrip_and_render(fano):
    R = build_chow_ring(fano)
    c = R.parse("16083*h2^2*h5^2 - 414*h2^2*h5 + h2 - h5")
    assert ChowClass.from_json(R, c.to_json()) == c
    assert R.parse(str(c)) == c


def random_class(R, draw):
    terms = {}
    for d in range(R.n + 1):
        for e in R.standard[d]:
            terms[e] = draw(st.integers(-20, 20))
    return R.from_terms(terms)


@settings(max_examples=40, deadline=None)
@given(st.data(), st.sampled_from(["P2xP1", "fano4_7", "F2", "P1xP1xP1"]))
def test_unit_inverse_property(data, name):
    R = build_chow_ring(FANS[name])
    c = random_class(R, data.draw)
    u = c - c.constant() + R.ONE
    assert invert_unit(u) * u == R.ONE


@settings(max_examples=40, deadline=None)
@given(st.data(), st.sampled_from(["P2xP1", "fano4_7", "F1"]))
def test_reduce_is_a_homomorphism(data, name):
    R = build_chow_ring(FANS[name])
    m = R.fan.nrays
    exps = st.tuples(*[st.integers(0, 2)] * m)
    e1 = data.draw(st.dictionaries(exps, st.integers(-5, 5), max_size=3))
    e2 = data.draw(st.dictionaries(exps, st.integers(-5, 5), max_size=3))
    prod = {}
    for a, c in e1.items():
        for b, d in e2.items():
            k = tuple(x + y for x, y in zip(a, b))
            prod[k] = prod.get(k, 0) + c * d
    assert R.reduce(prod) == R.reduce(e1) * R.reduce(e2)
    assert R.reduce(e1) == R.reduce({k: v for k, v in e1.items()})


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_ring_axioms(data):
    R = build_chow_ring(FANS["fano4_7"])
    a, b, c = (random_class(R, data.draw) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
