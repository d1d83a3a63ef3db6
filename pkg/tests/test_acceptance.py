"""End-to-end acceptance battery; each criterion prints one PASS/FAIL line."""

import cmath
import itertools
import math

import numpy as np
import pytest

from closedbch import closed_forms as cf
from closedbch.algebra import LieElement
from closedbch.commutators import FOUR, PairParams, classify, solve_jacobi
from closedbch.engine import bch_pair, bch_pair_lemma1, bch_triple, extract_triple
from closedbch.errors import BCHError, BoundaryError
from closedbch.kernel import _f_series, f_kernel, f_limit
from closedbch.oracle import abstract_closure, dynkin_bch, verify_product

from conftest import crandom
from test_commutators import BOUNDARY, brute_force_family, check_members, sample_six

E = LieElement.of
GOLDEN = 2 / math.sqrt(5) * math.log((3 + math.sqrt(5)) / 2)


@pytest.fixture
def report(request, capsys):
    """Print ``PASS``/``FAIL criterion N: label (detail)`` whatever the outcome."""
    state = {"detail": ""}
    yield state
    rep = getattr(request.node, "rep_call", None)
    failed = rep is None or rep.failed
    with capsys.disabled():
        status = "FAIL" if failed else "PASS"
        print(f"\n{status} criterion {state['n']}: {state['label']} {state['detail']}".rstrip())


def test_criterion_1_sl3_pair(report, sl3):
    report.update(n=1, label="sl3 E+/E- pair, golden coefficient")
    worst_coef = worst_res = 0.0
    cases = [("E+1", "E-1", {"H1": 1}), ("E+2", "E-2", {"H2": 1}), ("E+theta", "E-theta", {"H1": 1, "H2": 1})]
    for up, down, h in cases:
        r = cf.cartan_weyl_pair(E(up), E(down), sl3, verify=True)
        expected = E(up, GOLDEN) + E(down, GOLDEN) + LieElement({k: v * GOLDEN / 2 for k, v in h.items()})
        worst_coef = max(worst_coef, max(abs(r.w.coefficient(n) - expected.coefficient(n)) for n in sl3.basis))
        worst_res = max(worst_res, verify_product((E(up), E(down)), r.w, sl3))
    report["detail"] = f"(coef err {worst_coef:.1e}, residual {worst_res:.1e})"
    assert worst_coef < 1e-12
    assert worst_res < 1e-10


def test_criterion_2_sl2_triple(report, sl2, rng):
    report.update(n=2, label="sl2 triple, 100 random instances")
    worst, done = 0.0, 0
    while done < 100:
        lm, l0, l1 = crandom(rng, 1, 3)
        B = 1 + cmath.exp(-l0) - lm * l1
        if abs(B * B - 4 * cmath.exp(-l0)) <= 1e-6:
            continue
        r = cf.sl2_triple(lm, l0, l1, sl2)
        worst = max(worst, verify_product(r.factors, r.w, sl2))
        done += 1
    report["detail"] = f"(worst residual {worst:.1e})"
    assert worst < 1e-8


def test_criterion_3_heh(report, sl3, rng):
    report.update(n=3, label="H-E-H triples (type 1c-i), 100 sl3 instances")
    worst = worst_gap = 0.0
    roots = sl3.roots
    for _ in range(100):
        a, b, g = (roots[i] for i in rng.integers(0, len(roots), 3))
        la, mu, lg = crandom(rng, 1, 3)
        r = cf.heh_triple(la, a, mu, b, lg, g, sl3)
        worst = max(worst, verify_product(r.factors, r.w, sl3))
        t = bch_triple(*r.factors, sl3, verify=False)
        worst_gap = max(worst_gap, t.w.distance(r.w))
    report["detail"] = f"(residual {worst:.1e}, engine gap {worst_gap:.1e})"
    assert worst < 1e-10
    assert worst_gap < 1e-10


def _type5_triples(sl3):
    out = []
    for a, b, g in itertools.product(sl3.roots, repeat=3):
        try:
            cf._check_ehe(a, b, g, sl3)
        except BCHError:
            continue
        probe = cf.ehe_type5(0.7, a, 0.4 + 0.1j, b, -0.3, g, sl3)
        if extract_triple(*probe.factors, sl3)[1].subcase == "5":
            out.append((a, b, g))
    return out


def test_criterion_4_ehe_type5(report, sl3, rng):
    report.update(n=4, label="E-H-E triples (type 5), 100 sl3 instances")
    triples = _type5_triples(sl3)
    worst = worst_gap = 0.0
    for _ in range(100):
        a, b, g = triples[rng.integers(len(triples))]
        mu_a, lam, mu_g = crandom(rng, 1, 3)
        r = cf.ehe_type5(mu_a, a, lam, b, mu_g, g, sl3)
        worst = max(worst, verify_product(r.factors, r.w, sl3))
        t = bch_triple(*r.factors, sl3)
        assert t.tag.subcase == "5" and len(t.alternatives) == 1
        worst_gap = max(worst_gap, t.w.distance(t.alternatives[0][1]), t.w.distance(r.w))
    report["detail"] = f"(residual {worst:.1e}, two weights gap {worst_gap:.1e})"
    assert worst < 1e-10
    assert worst_gap < 1e-10


def test_criterion_5_root_strings(report, sl3, so5, rng):
    report.update(n=5, label="root-string products in sl3 and so5")
    worst = 0.0
    methods = set()
    for alg in (sl3, so5):
        for a, b in itertools.permutations(alg.roots, 2):
            if (a + b).is_zero():
                continue
            mu_a, mu_b = crandom(rng, 1.5, 2)
            r = cf.ee_pair(mu_a, a, mu_b, b, alg)
            methods.add((alg.name, r.method))
            worst = max(worst, verify_product(r.factors, r.w, alg))
    assert ("so5", "ee_pair/2a+b") in methods and ("so5", "ee_pair/a+2b") in methods
    assert ("sl3", "ee_pair/a+b") in methods
    report["detail"] = f"(worst residual {worst:.1e})"
    assert worst < 1e-12


def test_criterion_6_sandwich(report, sl3, rng):
    report.update(n=6, label="E+ H E- sandwich, 100 instances and zero-Cartan limit")
    worst = 0.0
    done = 0
    while done < 100:
        a = sl3.roots[rng.integers(len(sl3.roots))]
        mu_a, lam, mu_n = crandom(rng, 1, 3)
        try:
            r = cf.epm_sandwich(mu_a, lam, mu_n, a, sl3)
        except BCHError:
            continue
        worst = max(worst, verify_product(r.factors, r.w, sl3))
        done += 1
    limit = cf.epm_sandwich(1, 0, 1, (1, 0), sl3).w
    gap = limit.distance(E("E+1", GOLDEN) + E("H1", GOLDEN / 2) + E("E-1", GOLDEN))
    report["detail"] = f"(worst residual {worst:.1e}, limit gap {gap:.1e})"
    assert worst < 1e-8
    assert gap < 1e-10


def test_criterion_7_classifier(report, rng):
    report.update(n=7, label="Jacobi classifier vs brute force")
    checked = 0
    for six in list(BOUNDARY) + [sample_six(rng) for _ in range(1000)]:
        try:
            fam = solve_jacobi(*six)
        except BoundaryError:
            continue
        expected = brute_force_family(six)
        if expected is None:
            assert fam.empty
        else:
            assert fam.dimension == expected
            check_members(fam, rng, draws=1)
        checked += 1
    boxes = {
        (0, 2, 0, -1, 0, 0): ("1c-i", ("p",), ("e", "m", "n"), 5),
        (1.5, 1, 1, 2, 1.5, 1): ("4", ("m", "p"), ("e", "n"), 8),
        (1, 1, 0, 1, 2, 0): ("5", FOUR, (), 6),
    }
    for six, (subcase, fixed, unfixed, dim) in boxes.items():
        tag = classify(*six)
        assert tag.subcase == subcase
        assert {c.target for c in tag.jacobi_constraints} == set(fixed)
        assert (tag.unfixed, tag.dimension) == (unfixed, dim)
    assert classify(0, 2, 0, -1, 0, 0).constraint_texts == ("p = m v / w",)
    assert classify(1.5, 1, 1, 2, 1.5, 1).constraint_texts == ("m = -w", "p = -v")
    report["detail"] = f"({checked} tuples, 3 boxed types)"


def test_criterion_8_kernel_and_oracles(report, sl2, rng):
    report.update(n=8, label="kernel symmetry/continuity and oracle cross-check")
    u, v = crandom(rng, 3, 10_000), crandom(rng, 3, 10_000)
    sym = max(abs(f_kernel(a, b) - f_kernel(b, a)) for a, b in zip(u, v))
    assert sym < 1e-12
    for t in np.linspace(0, 2 * np.pi, 13)[:-1]:
        ring = cmath.exp(1j * t)
        for pts, ref in (
            (lambda e: (ring, ring + e), f_limit(ring)),
            (lambda e: (e, ring), f_kernel(0, ring)),
            (lambda e: (ring, e), f_kernel(ring, 0)),
        ):
            errs = [abs(f_kernel(*pts(e)) - ref) for e in (1e-4, 1e-6, 1e-8)]
            assert errs[0] > errs[1] > errs[2]
            assert abs(f_kernel(*pts(1e-8)) - _f_series(*pts(1e-8))) < 1e-9
    # pair closed form vs the series oracle (parameters in the radius-1/2 polydisk)
    # and vs the matrix oracle (Borel pairs of sl2)
    worst_series = worst_matrix = 0.0
    one, two = np.array([1, 0, 0], complex), np.array([0, 1, 0], complex)
    for _ in range(100):
        p = PairParams(*crandom(rng, 0.5, 3))
        F = f_kernel(p.u, p.v)
        series = dynkin_bch(one, two, abstract_closure(p), 16)
        worst_series = max(worst_series, np.linalg.norm(series - (one + two + F * np.array([p.u, p.v, p.c]))))
        a, b, c, d = crandom(rng, 0.5, 4)
        x, y = E("H", a) + E("E+", b), E("H", c) + E("E+", d)
        worst_matrix = max(worst_matrix, verify_product((x, y), bch_pair(x, y, sl2).w, sl2))
    report["detail"] = f"(symmetry {sym:.1e}, series {worst_series:.1e}, matrix {worst_matrix:.1e})"
    assert worst_series < 1e-8
    assert worst_matrix < 1e-8


def test_criterion_9_lemma1_map(report, sl2, sl3):
    report.update(n=9, label="weaker pair condition: validity map")
    good = bch_pair_lemma1(E("E+1"), E("E+2"), E("E+theta"), sl3)
    bad = bch_pair_lemma1(E("E+"), E("E-"), E("H"), sl2)
    report["detail"] = f"(sl3 VERIFIED {good.oracle_residual:.1e}, sl2 NOT VERIFIED {bad.oracle_residual:.3f})"
    assert good.details["verified"] and good.oracle_residual < 1e-8
    assert not bad.details["verified"] and bad.oracle_residual > 1e-2
