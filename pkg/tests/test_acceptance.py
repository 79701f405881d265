"""Acceptance criteria 1-8; each test records one summary line per criterion."""

import random
import time

import pytest
from conftest import DATA, corpus_fans, record

from toricsegre import charclass as cc
from toricsegre.chow import build_chow_ring, invert_unit
from toricsegre.fan import cox_ring, dehomogenizing_ideal, load_fan
from toricsegre.groebner import Ideal, ideal_membership

EX11_SEGRE = (
    "-300*h1^4*h2^2 + 40*h1^4*h2 + 80*h1^3*h2^2 - 3*h1^4 - 12*h1^3*h2 + h1^3"
    " - 12*h1*h2^2 + 2*h1*h2 + 4*h2^2"
)
EX11_CSM = (
    "13*h1^4*h2^2 + 10*h1^4*h2 + 22*h1^3*h2^2 + 2*h1^4 + 13*h1^3*h2 + 18*h1^2*h2^2"
    " + h1^3 + 8*h1^2*h2 + 7*h1*h2^2 + 2*h1*h2 + h2^2"
)
EX32_SEGRE = "16083*h2^2*h5^2 - 414*h2^2*h5 - 1680*h2*h5^2 + 3*h2^2 + 46*h2*h5 + 120*h5^2 + h2 - h5"
EX32_G = "1 + 2*h2 + 10*h5"

TIMINGS: dict[str, float] = {}


def load(space, path):
    fan = load_fan(space)
    ring = cox_ring(fan)
    gens = [ring.parse(s) for s in open(path) if s.strip()]
    return cc.prepare_generators(gens, fan, build_chow_ring(fan))


def timed(name, fn):
    t = time.perf_counter()
    out = fn()
    TIMINGS[name] = max(TIMINGS.get(name, 0.0), time.perf_counter() - t)
    return out


def test_criterion_1_example_1_1():
    V = load("P4xP2", DATA / "example1_1.txt")
    C = V.chow
    t = time.perf_counter()
    s = timed("example 1.1 segre", lambda: cc.segre_class(V, 42))
    c = timed("example 1.1 csm", lambda: cc.csm(V, 42))
    wall = time.perf_counter() - t
    ok = s == C.parse(EX11_SEGRE) and c == C.parse(EX11_CSM) and c.degree() == 13 and wall <= 300
    record(1, ok, f"segre, csm exact, euler={c.degree()}, {wall:.1f}s")
    assert s == C.parse(EX11_SEGRE)
    assert c == C.parse(EX11_CSM)
    assert c.degree() == 13
    assert wall <= 300


def test_criterion_2_example_3_2_segre():
    V = load(str(DATA / "fano4_7.json"), DATA / "example3_2.txt")
    C = V.chow
    t = time.perf_counter()
    table = timed("example 3.2 projective degrees", lambda: cc.projective_degrees(V, 42, pairing="literal"))
    s = cc.segre_from_table(V, table)
    wall = time.perf_counter() - t
    ok = s == C.parse(EX32_SEGRE) and wall <= 120
    record(2, ok, f"segre exact (literal pairing), {wall:.2f}s")
    assert s == C.parse(EX32_SEGRE)
    assert wall <= 120


@pytest.mark.xfail(strict=True, reason="expected G is inconsistent with the expected Segre class; see README")
def test_criterion_2_example_3_2_G():
    V = load(str(DATA / "fano4_7.json"), DATA / "example3_2.txt")
    C = V.chow
    got = {p: cc.projective_degrees(V, 42, pairing=p).total() for p in cc.PAIRINGS}
    ok = any(g == C.parse(EX32_G) for g in got.values())
    record(2, ok, f"G: expected {EX32_G}, got {got['literal']} (literal) / {got['dual']} (dual)")
    assert ok


HYPERSURFACE_SPACES = ["P2", "P3", "P1xP1", "P2xP1", str(DATA / "fano4_7.json")]


def random_nef_degree(chow, rng, top=3):
    while True:
        c = [rng.randint(0, top) for _ in range(chow.q)]
        if any(c):
            return tuple(sum(ck * b[j] for ck, b in zip(c, chow.basis)) for j in range(chow.q))


def test_criterion_3_hypersurfaces():
    rng = random.Random(3)
    count = 0
    bad = []
    for space in HYPERSURFACE_SPACES:
        fan = load_fan(space)
        chow = build_chow_ring(fan)
        ring = cox_ring(fan)
        for _ in range(5):
            beta = random_nef_degree(chow, rng)
            f = ring.random_form(beta, rng)
            V = cc.prepare_generators([f], fan, chow)
            D = chow.divisor(beta)
            if cc.segre_class(V, rng) != D * invert_unit(chow.ONE + D):
                bad.append((space, beta))
            count += 1
    record(3, not bad and count >= 20, f"{count} hypersurfaces, {len(bad)} mismatches")
    assert count >= 20 and not bad


CI_CASES = [
    ("P2", [(1,), (2,)]),
    ("P2", [(2,), (2,)]),
    ("P3", [(2,), (2,)]),
    ("P3", [(1,), (3,)]),
    ("P3", [(1,), (1,), (2,)]),
    ("P1xP1", [(1, 1), (1, 1)]),
    ("P1xP1", [(1, 0), (1, 2)]),
    ("P2xP1", [(1, 1), (1, 0)]),
    ("P2xP1", [(1, 1), (2, 1)]),
    (str(DATA / "fano4_7.json"), [(1, 0), (0, 1)]),
    (str(DATA / "fano4_7.json"), [(1, 0), (1, 0), (0, 1)]),
]


def ci_subscheme(space, degrees, rng):
    fan = load_fan(space)
    chow = build_chow_ring(fan)
    ring = cox_ring(fan)
    gens = [ring.random_form(d, rng) for d in degrees]
    return cc.prepare_generators(gens, fan, chow)


def test_criterion_4_complete_intersections():
    rng = random.Random(4)
    bad = []
    for space, degrees in CI_CASES:
        V = ci_subscheme(space, degrees, rng)
        C = V.chow
        Ds = [C.divisor(d) for d in degrees]
        num, den = C.ONE, C.ONE
        for D in Ds:
            num = num * D
            den = den * (C.ONE + D)
        if cc.segre_class(V, rng) != num * invert_unit(den):
            bad.append(f"segre {space} {degrees}")
        a = timed(f"ci csm {space} {degrees}", lambda: cc.csm(V, rng))
        b = cc.csm_complete_intersection(V, rng)
        if a != b:
            bad.append(f"csm {space} {degrees}")
    record(4, not bad and len(CI_CASES) >= 10, f"{len(CI_CASES)} complete intersections, mismatches: {bad or 'none'}")
    assert len(CI_CASES) >= 10 and not bad


def test_criterion_5_topology():
    rng = random.Random(5)
    got = {}
    for n in range(1, 6):
        got[f"P{n}"] = cc.euler(cc.prepare_generators([], load_fan(f"P{n}")), rng)
    got["P1xP1xP1"] = cc.euler(cc.prepare_generators([], load_fan("P1xP1xP1")), rng)
    got["fano4_7"] = cc.euler(cc.prepare_generators([], load_fan(DATA / "fano4_7.json")), rng)
    P2 = load_fan("P2")
    ring = cox_ring(P2)
    got["smooth cubic"] = cc.euler(cc.prepare_generators([ring.parse("x0^3 + x1^3 + x2^3")], P2), rng)
    got["nodal cubic"] = cc.euler(cc.prepare_generators([ring.parse("x1^2*x2 - x0^3 - x0^2*x2")], P2), rng)
    want = {f"P{n}": n + 1 for n in range(1, 6)}
    want.update({"P1xP1xP1": 8, "fano4_7": 9, "smooth cubic": 0, "nodal cubic": 1})
    record(5, got == want, ", ".join(f"{k}={v}" for k, v in got.items()))
    assert got == want


def test_criterion_6_structure():
    rng = random.Random(6)
    bad = []
    fans = corpus_fans()
    for name, fan in fans.items():
        chow = build_chow_ring(fan)
        if sum(chow.ranks) != len(fan.max_cones):
            bad.append(f"ranks {name}")
        if len(dehomogenizing_ideal(fan, rng)) != fan.nrays - fan.dim:
            bad.append(f"L_A {name}")
    names = sorted(n for n in fans if fans[n].nrays <= 8)
    for k in range(50):
        fan = fans[names[k % len(names)]]
        chow = build_chow_ring(fan)
        ring = cox_ring(fan)
        f = ring.random_form(random_nef_degree(chow, rng, top=2), rng)
        if not ideal_membership(f, Ideal(cc.jacobian_ideal(f), ring)):
            bad.append(f"euler relation {fan.label}")
    record(6, not bad, f"ranks, m-n dehomogenizing generators on {len(fans)} fans; 50 Euler relations")
    assert not bad


@pytest.mark.xfail(strict=True, reason="no orthogonal monomial basis exists on these fans; see README")
def test_criterion_6_orthogonality():
    failing = [name for name, fan in corpus_fans().items() if not build_chow_ring(fan).check_orthogonality()]
    record(6, not failing, f"orthogonality fails on {failing}")
    assert not failing


def regression_corpus(seed):
    out = {}
    V = load("P4xP2", DATA / "example1_1.txt")
    out["ex11 segre"] = timed("example 1.1 segre", lambda: cc.segre_class(V, seed))
    out["ex11 csm"] = timed("example 1.1 csm", lambda: cc.csm(V, seed))
    W = load(str(DATA / "fano4_7.json"), DATA / "example3_2.txt")
    for p in cc.PAIRINGS:
        out[f"ex32 segre {p}"] = cc.segre_class(W, seed, pairing=p)
    P2 = load_fan("P2")
    ring = cox_ring(P2)
    nodal = cc.prepare_generators([ring.parse("x1^2*x2 - x0^3 - x0^2*x2")], P2)
    out["nodal csm"] = cc.csm(nodal, seed)
    P3 = load_fan("P3")
    r3 = cox_ring(P3)
    two_lines = cc.prepare_generators([r3.parse("x0*x1 - x2*x3"), r3.parse("x0")], P3)
    out["two lines csm"] = cc.csm(two_lines, seed)
    out["two lines csm-ci"] = cc.csm_complete_intersection(two_lines, seed)
    out["ci fano"] = cc.csm(ci_subscheme(str(DATA / "fano4_7.json"), [(1, 0), (0, 1)], random.Random(0)), seed)
    return out


def test_criterion_7_seed_stability():
    seeds = [1, 2, 3, 2**63 + 11, 987654321]
    runs = [regression_corpus(s) for s in seeds]
    diffs = [k for k in runs[0] if any(r[k] != runs[0][k] for r in runs[1:])]
    record(7, not diffs, f"{len(runs[0])} corpus items x {len(seeds)} seeds, differing: {diffs or 'none'}")
    assert not diffs


def test_criterion_8_timing():
    if not TIMINGS:
        regression_corpus(1)
    slowest = max(TIMINGS, key=TIMINGS.get)
    ok = TIMINGS[slowest] <= 600
    record(8, ok, f"slowest item '{slowest}' {TIMINGS[slowest]:.1f}s (informational; budget 600s)")
    for k, v in sorted(TIMINGS.items(), key=lambda kv: -kv[1]):
        print(f"timing {k}: {v:.2f}s")
    assert ok
