import cmath
import itertools
import math

import numpy as np
import pytest

from closedbch import closed_forms as cf
from closedbch.algebra import LieElement
from closedbch.engine import bch_pair, bch_triple
from closedbch.errors import CoincidentRootError, DegenerateInputError, InvalidArgumentError, UnsupportedRootStringError

from conftest import crandom

E = LieElement.of
GOLDEN = 2 / math.sqrt(5) * math.log((3 + math.sqrt(5)) / 2)


def test_he_pair_sl2(sl2):
    r = cf.he_pair(1, (1,), 1, (1,), sl2, verify=True)
    assert abs(r.w.coefficient("E+") - 2.3130352854993313) < 1e-14
    assert r.w.coefficient("H") == 1
    assert r.oracle_residual < 1e-12


def test_he_pair_sl3_negative_pairing(sl3):
    r = cf.he_pair(1, (1, 0), 1, (0, 1), sl3, verify=True)
    assert abs(r.w.coefficient("E+2") - (-1 / (1 - math.e))) < 1e-14
    assert r.oracle_residual < 1e-12


def test_he_pair_orthogonal_roots(so5):
    assert so5.coroot_pairing((1, 0), (1, 2)) == 0
    r = cf.he_pair(0.7, (1, 0), 2.5, (1, 2), so5)
    assert r.w == so5.cartan((1, 0), 0.7) + so5.step((1, 2), 2.5)


def test_he_pair_matches_generic_pair(sl3, rng):
    for a, b in itertools.product(sl3.roots, repeat=2):
        lam, mu = crandom(rng, 1, 2)
        r = cf.he_pair(lam, a, mu, b, sl3)
        g = bch_pair(sl3.cartan(a, lam), sl3.step(b, mu), sl3)
        assert r.w.distance(g.w) < 1e-10


def test_he_pair_pole(sl2):
    with pytest.raises(DegenerateInputError):
        cf.he_pair(1j * math.pi, (1,), 1, (1,), sl2)


def test_heh_reduces_to_he_pair(sl3):
    a = cf.heh_triple(0.4, (1, 0), 1.2, (0, 1), 0, (1, 1), sl3)
    b = cf.he_pair(0.4, (1, 0), 1.2, (0, 1), sl3)
    assert a.w.distance(b.w) < 1e-15


def test_heh_symmetric_instance(sl3):
    r = cf.heh_triple(0.5, (1, 0), 1, (1, 0), 0.5, (1, 0), sl3, verify=True)
    assert abs(r.w.coefficient("E+1") - 2 / (math.e - 1 / math.e)) < 1e-14
    assert r.oracle_residual < 1e-12


def test_heh_matches_triple_engine(sl3, rng):
    roots = sl3.roots
    done = 0
    while done < 20:
        a, b, g = (roots[i] for i in rng.integers(0, len(roots), 3))
        la, mu, lg = crandom(rng, 1, 3)
        r = cf.heh_triple(la, a, mu, b, lg, g, sl3)
        t = bch_triple(*r.factors, sl3, verify=False)
        assert r.w.distance(t.w) < 1e-10
        done += 1


def test_heh_degenerate_denominator(sl3):
    with pytest.raises(DegenerateInputError):
        cf.heh_triple(1j * math.pi / 2, (1, 0), 1, (1, 0), 1j * math.pi / 2, (1, 0), sl3)


def test_ee_pair_sl3_positive(sl3):
    r = cf.ee_pair(1, (1, 0), 1, (0, 1), sl3, verify=True)
    assert r.w == LieElement({"E+1": 1, "E+2": 1, "E+theta": 0.5})
    assert r.oracle_residual < 1e-12


def test_ee_pair_sl3_negative(sl3):
    r = cf.ee_pair(1, (-1, 0), 1, (0, -1), sl3, verify=True)
    assert r.w == LieElement({"E-1": 1, "E-2": 1, "E-theta": -0.5})
    assert r.oracle_residual < 1e-12


def test_ee_pair_commuting(sl3):
    r = cf.ee_pair(2, (1, 0), 3, (0, -1), sl3)
    assert r.method == "ee_pair/commuting"
    assert r.w == LieElement({"E+1": 2, "E-2": 3})


def test_ee_pair_so5_every_pair(so5, rng):
    methods = set()
    for a, b in itertools.permutations(so5.roots, 2):
        if (a + b).is_zero():
            continue
        mu_a, mu_b = crandom(rng, 1.5, 2)
        r = cf.ee_pair(mu_a, a, mu_b, b, so5, verify=True)
        methods.add(r.method)
        assert r.oracle_residual < 1e-12
    assert {"ee_pair/2a+b", "ee_pair/a+2b", "ee_pair/a+b"} <= methods


def test_ee_pair_so5_four_terms(so5):
    # long (1,0) with short (0,1): (1,2) is also a root
    r = cf.ee_pair(1, (1, 0), 1, (0, 1), so5)
    assert r.method == "ee_pair/a+2b"
    assert set(r.w.coeffs) == {"E+1", "E+2", "E+12", "E+122"}
    e_ab = so5.structure_constant((1, 0), (0, 1))
    e_ba = so5.structure_constant((0, 1), (1, 0))
    e_bs = so5.structure_constant((0, 1), (1, 1))
    assert r.w.coefficient("E+12") == pytest.approx(e_ab / 2)
    assert r.w.coefficient("E+122") == pytest.approx(e_bs * e_ba / 12)


def test_ee_pair_rejects_opposite_roots(sl3):
    with pytest.raises(InvalidArgumentError):
        cf.ee_pair(1, (1, 0), 1, (-1, 0), sl3)


def test_ee_pair_rejects_long_strings(sl3, monkeypatch):
    real = sl3.is_root
    monkeypatch.setattr(sl3, "is_root", lambda r: real(r) or tuple(r.coords) == (2, 3))
    with pytest.raises(UnsupportedRootStringError):
        cf.ee_pair(1, (1, 0), 1, (0, 1), sl3)


def test_sandwich_golden(sl3):
    r = cf.epm_sandwich(1, 0, 1, (1, 0), sl3, verify=True)
    expected = LieElement({"E+1": GOLDEN, "H1": GOLDEN / 2, "E-1": GOLDEN})
    assert r.w.distance(expected) < 1e-14
    assert r.oracle_residual < 1e-10


@pytest.mark.parametrize("root,h", [((0, 1), {"H2": 1}), ((1, 1), {"H1": 1, "H2": 1})])
def test_sandwich_golden_variants(sl3, root, h):
    r = cf.epm_sandwich(1, 0, 1, root, sl3, verify=True)
    expected = sl3.step(root, GOLDEN) + LieElement({k: v * GOLDEN / 2 for k, v in h.items()}) + sl3.step(
        tuple(-x for x in root), GOLDEN
    )
    assert r.w.distance(expected) < 1e-14
    assert r.oracle_residual < 1e-10


def test_sandwich_lower_factor_zero_is_pair(sl3):
    r = cf.epm_sandwich(0.8, 0.3 - 0.2j, 0, (1, 0), sl3)
    p = bch_pair(sl3.step((1, 0), 0.8), sl3.cartan((1, 0), 0.3 - 0.2j), sl3)
    assert r.w.distance(p.w) < 1e-12


def test_sandwich_random(sl3, rng):
    worst = 0.0
    for _ in range(100):
        a = sl3.roots[rng.integers(len(sl3.roots))]
        mu_a, lam, mu_n = crandom(rng, 1, 3)
        worst = max(worst, cf.epm_sandwich(mu_a, lam, mu_n, a, sl3, verify=True).oracle_residual)
    assert worst < 1e-8


def test_sandwich_roots_relation():
    r_p, r_m, l_p, l_m = cf.sandwich_roots(0.4, 0.2 + 0.1j, -0.3j)
    assert abs(cmath.exp(-l_p) - r_p) < 1e-14
    assert abs(cmath.exp(-l_m) - r_m) < 1e-14
    assert abs(l_p + l_m + 2 * (0.2 + 0.1j)) < 1e-15


@pytest.mark.parametrize("args", [(1, 0, 0), (2, 0, -2)])
def test_sandwich_coincident_roots(sl3, args):
    mu_a, lam, mu_n = args
    with pytest.raises(CoincidentRootError):
        cf.epm_sandwich(mu_a, lam, mu_n, (1, 0), sl3)


def test_sl2_triple_golden(sl2):
    r = cf.sl2_triple(-1, 0, 1, sl2, verify=True)
    assert r.w.distance(LieElement({"E+": GOLDEN, "H": GOLDEN / 2, "E-": GOLDEN})) < 1e-14


def test_sl2_triple_matches_engine(sl2, rng):
    for _ in range(20):
        lm, l0, l1 = crandom(rng, 1, 3)
        r = cf.sl2_triple(lm, l0, l1, sl2)
        t = bch_triple(*r.factors, sl2)
        assert r.w.distance(t.w) < 1e-10


def test_ehe_same_root_twice(sl3):
    r = cf.ehe_type5(0.7, (1, 0), 0.9, (0, 1), -0.4, (1, 0), sl3, verify=True)
    assert r.oracle_residual < 1e-12


def test_ehe_without_left_factor_is_pair(sl3):
    r = cf.ehe_type5(0, (1, 0), 0.9, (0, 1), -0.4, (1, 1), sl3)
    p = bch_pair(sl3.cartan((0, 1), 0.9), sl3.step((1, 1), -0.4), sl3)
    assert r.w.distance(p.w) < 1e-12


def test_ehe_matches_engine(sl3):
    r = cf.ehe_type5(0.3 + 0.2j, (1, 0), -0.6, (0, 1), 1.1, (1, 1), sl3)
    t = bch_triple(*r.factors, sl3)
    assert r.w.distance(t.w) < 1e-10


@pytest.mark.parametrize(
    "alpha,beta,gamma",
    [((1, 0), (0, 1), (-1, 0)), ((1, 0), (0, 1), (0, 1)), ((1, 0), (1, 0), (0, 1))],
)
def test_ehe_preconditions(sl3, alpha, beta, gamma):
    with pytest.raises(InvalidArgumentError):
        cf.ehe_type5(1, alpha, 1, beta, 1, gamma, sl3)


def test_ehe_split_equal_pairings(sl3):
    r = cf.ehe_split(0.7, (1, 0), 0.9, (0, 1), -0.4, (1, 0), sl3, verify=True)
    assert r.oracle_residual < 1e-10
    assert abs(r.details["lambda_minus"] + r.details["lambda_plus"] - 0.9) < 1e-14


def test_ehe_split_unequal_pairings_is_not_the_product(sl3):
    # (beta^v, alpha) = 2 and (beta^v, gamma) = 1 here; full-lambda form holds, split form does not
    r = cf.ehe_split(0.5, (1, 0), 0.8, (1, 0), 0.5, (1, 1), sl3, verify=True)
    good = cf.ehe_type5(0.5, (1, 0), 0.8, (1, 0), 0.5, (1, 1), sl3, verify=True)
    assert r.oracle_residual > 1e-3
    assert good.oracle_residual < 1e-12


def test_dispatch(sl3):
    assert cf.cartan_weyl_pair(E("E+1"), E("E-1"), sl3).method == "epm_sandwich/pair"
    assert cf.cartan_weyl_pair(E("E+1"), E("E+2"), sl3).method == "ee_pair/a+b"
    assert cf.cartan_weyl_pair(E("H1"), E("E+1"), sl3) is None
    assert cf.cartan_weyl_pair(E("E+1") + E("H1"), E("E-1"), sl3) is None


def test_named_forms_are_finite(sl3, rng):
    for _ in range(20):
        r = cf.epm_sandwich(*crandom(rng, 1, 3), (1, 1), sl3)
        assert all(np.isfinite(v) for v in r.w.coeffs.values())
