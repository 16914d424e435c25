"""Acceptance gate: every criterion runs exactly, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
lines; every comparison here is exact rational equality, no tolerances.
"""

import itertools
import math
import random
import time
from fractions import Fraction

from r1poly import cli, determinants, families, histories
from r1poly.core import (
    CoeffSystem,
    L_eval,
    P,
    VElem,
    cf_series,
    mu,
    mu_nml,
    mu_symbolic,
    rho,
)
from r1poly.determinants import (
    P_via_det,
    Q_via_det,
    cramer_monicity_check,
    delta_dprime,
    delta_prime,
    delta_shifted,
    delta_tprime,
    hankel_constant,
)
from r1poly.exactmath import Poly, Series, SymPoly, series_from_rational
from r1poly.paths import (
    WeightSystem,
    bounded_gf,
    enumerate_paths,
    finite_cf_rational,
    rho_sum,
    weight_sum,
)

from conftest import rand_system

SEED = 42


def _criterion(num: int, description: str):
    print(f"\ncriterion {num:2d}: PASS  {description}")


def _systems(count: int, nondegenerate_to: int = 8):
    rng = random.Random(SEED)
    return [rand_system(rng, nondegenerate_to=nondegenerate_to) for _ in range(count)]


def test_criterion_01_path_counts():
    want = [1, 2, 7, 29, 133, 650]
    assert [len(enumerate_paths((0, 0), (n, 0))) for n in range(6)] == want
    ones = CoeffSystem(lambda n: Fraction(1), lambda n: Fraction(1), lambda n: Fraction(1))
    ws = WeightSystem(ones)
    assert [weight_sum((0, 0), (n, 0), ws) for n in range(6)] == want
    _criterion(1, "path counts 1,2,7,29,133,650 by enumeration and unit-weight DP")


def test_criterion_02_symbolic_moments():
    b0, b1 = SymPoly.b(0), SymPoly.b(1)
    a1, a2 = SymPoly.a(1), SymPoly.a(2)
    l1 = SymPoly.lam(1)
    assert mu_symbolic(1) == b0 + a1
    assert mu_symbolic(2) == b0 * b0 + l1 + 2 * a1 * b0 + a2 * a1 + b1 * a1 + a1 * a1
    _criterion(2, "symbolic mu_1 and mu_2 match the displayed polynomials")


def test_criterion_03_orthogonality():
    for cs in _systems(5):
        for m in range(1, 9):
            for n in range(m):
                assert L_eval(VElem(P(m, cs).shift(n), m, cs)) == 0
        for m in range(9):
            for n in range(m, 9):
                want = Fraction(1)
                for i in range(m + 1, n + 1):
                    want *= cs.a(i)
                assert L_eval(VElem(P(n, cs) * P(m, cs), m, cs)) == want
    _criterion(3, "orthogonality and L(P_n Q_m) products on 5 seeded systems, n,m <= 8")


def test_criterion_04_three_way_moments():
    for cs in _systems(5):
        ws = WeightSystem(cs)
        dp = [weight_sum((0, 0), (n, 0), ws) for n in range(11)]
        rec = [mu(n, cs) for n in range(11)]
        cf = cf_series(cs, 10)
        assert dp == rec
        assert all(cf[n] == rec[n] for n in range(11))
    _criterion(4, "path DP = grid recurrence = continued fraction through mu_10")


def test_criterion_05_functional_path_identities():
    cs = _systems(1)[0]
    ws = WeightSystem(cs)
    for n, m, ell in itertools.product(range(5), repeat=3):
        assert mu_nml(n, m, ell, cs) == weight_sum((0, m), (n, ell), ws)
        assert rho(n, m, ell, cs) == rho_sum(n, m, ell, ws)
    _criterion(5, "L(x^n P_m Q_l) and L(x^n P_m P_l) equal their path sums, n,m,l <= 4")


def test_criterion_06_bounded_height():
    cs = _systems(1)[0]
    ws = WeightSystem(cs)
    for k in range(5):
        for r in range(k + 1):
            for s in range(k + 1):
                num, den, pre = bounded_gf(r, s, k, cs)
                gf = series_from_rational(num * pre, den, 12)
                dp = Series(
                    [weight_sum((0, r), (n, s), ws, max_height=k) for n in range(13)],
                    12,
                )
                assert gf == dp, (k, r, s)
    for k in range(6):
        num, den, pre = bounded_gf(0, 0, k, cs)
        n2, d2 = finite_cf_rational(k, cs)
        assert num * pre * d2 == n2 * den
    _criterion(6, "bounded-height GFs match capped DP (order 12) and the finite CF")


def test_criterion_07_determinant_factorizations():
    for cs in _systems(5, nondegenerate_to=7):
        for n in range(1, 7):
            assert delta_prime(n, cs).matched
            assert delta_dprime(n, cs).matched
            assert delta_tprime(n, cs).matched
            assert cramer_monicity_check(n, cs)
            for kind in ("prime", "dprime", "tprime"):
                assert delta_shifted(kind, n, 1, cs).matched
    triples = [
        (Fraction(1), Fraction(1), Fraction(1)),
        (Fraction(2), Fraction(-1, 3), Fraction(1, 2)),
        (Fraction(1, 2), Fraction(3), Fraction(-2, 5)),
    ]
    for A, B, C in triples:
        assert all(hankel_constant(n, A, B, C).matched for n in range(1, 6))
    ones = [hankel_constant(n, Fraction(1), Fraction(1), Fraction(1)) for n in (1, 2, 3)]
    assert [r.computed for r in ones] == [3, 27, 729]
    _criterion(7, "all determinant factorizations (n <= 6) and constant Hankel powers")


def test_criterion_08_determinant_reconstruction():
    rng = random.Random(SEED)
    while True:
        cs = rand_system(rng)
        if all(cs.lam(k) != 0 for k in range(1, 7)):
            break
    for n in range(6):
        assert P_via_det(n, cs) == P(n, cs)
        want = VElem(P(n, cs), n, cs)
        for variant in (1, 2, 3):
            assert Q_via_det(n, cs, variant) == want
    _criterion(8, "bordered-determinant reconstruction of P_n and all Q_n variants, n <= 5")


def test_criterion_09_families():
    checked = 0
    for fam in [
        families.jacobi11(Fraction(1, 3), Fraction(2, 5), "minus"),
        families.jacobi11(Fraction(3, 7), Fraction(-1, 5), "plus"),
        families.jacobi11(Fraction(1, 3), Fraction(2, 5), "mixed"),
        families.jacobi01(Fraction(1, 3), Fraction(2, 5), "oneminus"),
        families.jacobi01(Fraction(5, 2), Fraction(1, 7), "xpow"),
        families.laguerre(Fraction(5, 2)),
        families.laguerre(Fraction(-3, 7)),
        families.meixner(Fraction(7, 2), Fraction(1, 3)),
        families.meixner(Fraction(1, 5), Fraction(2, 7)),
        families.little_q_jacobi(Fraction(1, 3), Fraction(2, 7), Fraction(1, 2)),
        families.little_q_jacobi(Fraction(2, 5), Fraction(1, 5), Fraction(1, 3)),
        families.big_q_jacobi(Fraction(1, 3), Fraction(2, 7), Fraction(3, 5),
                              Fraction(1, 2), "bshift"),
        families.big_q_jacobi(Fraction(1, 3), Fraction(2, 7), Fraction(3, 5),
                              Fraction(1, 2), "ashift"),
    ]:
        cs = fam.build(16)
        for m in range(1, 7):
            for n in range(m):
                assert L_eval(VElem(P(m, cs).shift(n), m, cs)) == 0
        if fam.moment is not None:
            assert all(fam.closed_moment(k) == mu(k, cs) for k in range(9))
        samples = [Fraction(0), Fraction(1), Fraction(2), Fraction(3), Fraction(-1, 2)]
        for n in range(1, 5):
            report = families.glue_shift_check(fam, n, samples, order=8)
            assert report.proportional, (fam.name, n)
            if report.series_match is not None:
                assert report.series_match, fam.name
        checked += 1
    j01 = families.jacobi01(Fraction(1, 2), Fraction(1, 2))
    assert [4**k * j01.closed_moment(k) for k in range(5)] == [1, 2, 5, 14, 42]
    lag = families.laguerre(Fraction(5, 2))
    assert all(lag.closed_moment(k) == mu(k, lag.build()) for k in range(9))
    _criterion(9, f"{checked} glued-family instances: orthogonality, moments, shifts, series")


def test_criterion_10_askey_wilson_and_q_racah():
    q = Fraction(1, 2)
    aw = families.askey_wilson(Fraction(1, 2), Fraction(1, 3), Fraction(1, 5),
                               Fraction(1, 7), q)
    cs = aw.build(8)
    for n in range(5):
        h = aw.hyp_poly(n)
        mono = h * (1 / h.leading())
        assert mono == P(n, cs)
        for x in (Fraction(0), Fraction(1), Fraction(-1, 3)):
            assert mono(x) == P(n, cs)(x)
    qr = families.q_racah(Fraction(1, 3), Fraction(1, 5), Fraction(1, 7), 4, q)
    csr = qr.build()
    for n in range(5):
        h = qr.hyp_poly(n)
        mono = h * (1 / h.leading())
        assert mono == P(n, csr)
        for x in (0, 1, 2):
            node = qr.spectral_node(x)
            assert mono(node) == P(n, csr)(node)
    _criterion(10, "Askey-Wilson and q-Racah (q = 1/2) match their monic 4phi3 forms")


def test_criterion_11_deformed_hermite():
    a = Fraction(2, 3)
    cs = families.r1_hermite(a).build()
    assert families.theta(2, a) == 1 + 3 * a * a
    for m in range(9):
        assert families.theta(m, a) == mu(m, cs)
    assert families.genthm_check(a, 8)
    for n in range(5):
        for m in range(5):
            assert families.hermite_linearization_check(n, m, a)
    _criterion(11, "theta sums = deformed-Hermite moments, series identity, linearization")


def test_criterion_12_histories():
    lag = histories.LaguerreHistory("UUUHVVUUUHHVVHUHHVVV", (2, 2, 4, 1, 1, 2, 1))
    assert histories.phi(lag) == ((4, 2, 3), (8,), (9, 7, 1), (10,), (12,), (13, 5, 11, 6))
    mh = histories.MeixnerHistory(
        "UUUHVVUHHHVUUUHVVVUHVV",
        (None, None, None, 0, 3, 1, None, 2, None, None, 2,
         None, None, None, None, 4, 2, 2, None, 0, 2, 1),
    )
    trace = []
    assert histories.psi(mh, trace=trace).cycles == (
        ((3, 4), (1,)), ((7,),), ((8,), (5, 6)),
        ((12,), (11,), (9,), (10,)), ((13, 14), (2,)),
    )
    assert trace == [
        ((1,),), ((1,), (2,)), ((1,), (2,), (3,)), ((1,), (2,), (3,)),
        ((2,), (5,)), ((2,), (5, 6)), ((2,), (5, 6)), ((2,), (5, 6)),
        ((2,), (9,)), ((2,), (9,), (10,)), ((2,), (9,), (10,), (11,)),
        ((2,), (9,), (10,), (11,)), ((2,), (13,)), ((2,), (13,)),
    ]
    for n in range(8):
        hs = histories.enumerate_LH(n)
        images = set()
        for h in hs:
            img = histories.phi(h)
            images.add(img)
            assert histories.phi_inv(img) == h
            assert h.horizontal_count() == len(img)
        assert len(images) == math.factorial(n)
    b, d = Fraction(2, 3), Fraction(1, 4)
    for n in range(7):
        hs = histories.enumerate_MH(n)
        images = set()
        for h in hs:
            pc = histories.psi(h)
            images.add(pc.canonical())
            assert histories.psi_inv(pc) == h
            assert h.weight(b, d) == pc.weight(b, d)
        assert len(images) == len(hs)
    a = Fraction(3, 5)
    assert all(histories.lh_moment_check(n, a) for n in range(9))
    assert all(histories.mh_moment_check(n, b, d) for n in range(8))
    assert all(histories.non_excedance_check(n, b, Fraction(1, 5)) for n in range(1, 7))
    _criterion(12, "worked examples, bijections with statistics, closed-form sums")


def test_criterion_13_verify_suite(capsys):
    started = time.monotonic()
    code = cli.main(["verify", "--suite", "all", "--seed", "42"])
    elapsed = time.monotonic() - started
    out = capsys.readouterr().out
    with capsys.disabled():
        assert code == 0, out
        assert elapsed < 600, f"verify took {elapsed:.1f}s"
        assert "seed 42" in out
        _criterion(13, f"verify --suite all --seed 42 exits 0 in {elapsed:.1f}s")
