import logging

import pytest

from canring.groebner import Ideal, ideal_member, ideals_equal, intersect, locus_disjoint
from canring.hilbert import TARGET, RationalSeries, hilbert_series, one_minus
from canring.parse import parse_poly
from canring.ring import RingSpec, evaluate_at_point, substitute
from canring.strata import checks
from canring.strata.build import (BUILDERS, build_curve_a, build_curve_b, build_type_a, build_type_b,
                                  build_type_dd, build_type_de, buckets_x1, buckets_x2,
                                  de_component_ideals, decompose_type_b, extrasymmetric_matrix,
                                  family_type_b, fiber_substitution, pfaffians_4x4, type_b_fiber_equation)
from canring.strata.checks import invariant_cover_identity, onto, proportional, verify_stratum


def test_type_a_points():
    f = build_type_a(4).ideal.generators[0]
    assert evaluate_at_point(f, (0, 0, 0, 1)).value != 0
    g = build_type_a(4, through_0010=True).ideal.generators[0]
    assert evaluate_at_point(g, (0, 0, 1, 0)).value == 0
    assert evaluate_at_point(f, (0, 0, 1, 0)).value != 0


def test_type_b_shape():
    B = build_type_b(4)
    R = B.ring
    assert len(B.ideal) == 9
    for p in (R["x"] * R["y"], R["x"] * R["w"], R["x"] * R["z"]):
        assert ideal_member(p, B.ideal)
    v2 = tuple(2 if v == "v" else 0 for v in R.variables)
    assert B.parameters["g8"].coeff(v2) == 1
    assert B.parameters["g8"].degree == 8 and B.parameters["k10"].degree == 10


def test_type_b_decomposition():
    B = build_type_b(5)
    parts = decompose_type_b(B)
    X2 = parts["X2_equation"]
    assert X2.ring.weights == (1, 1, 4, 6) and [g.degree for g in X2.generators] == [12]
    S = X2.ring
    want = S["u"] ** 2 - S["v"] * onto(B.parameters["g8"], S) - S["x"] ** 2 * onto(B.parameters["k10"], S)
    assert proportional(X2.generators[0], want)
    E = parts["E_equation"]
    e = E.generators[0].monic()
    T = E.ring
    assert T.variables == ("x0", "v", "u")
    assert e.coeff((0, 0, 2)) and e.coeff((0, 3, 0))
    assert ideals_equal(intersect(parts["X1"], parts["X2"]), B.ideal)


def test_invariant_cover():
    S = RingSpec(("a0", "a1", "b", "c"), (1, 1, 2, 4))
    a0, a1, b, c = S.gens()
    R = RingSpec(("y", "w", "v"), (2, 3, 4))
    y, w, v = R.gens()
    assert substitute(y * v - w ** 2, {"y": a1 ** 2, "w": a1 * b, "v": b ** 2}, S).is_zero()
    for seed in range(3):
        nfs = invariant_cover_identity(seed)
        assert len(nfs) == 9 and all(p.is_zero() for p in nfs)


def test_type_b_family():
    fam = family_type_b(6, lambdas=[1, 5, 77])
    base = fam.base
    for lam, J in fam.fibers.items():
        sub = fiber_substitution(base, lam)
        outs = [substitute(g, sub) for g in J.generators]
        assert all(o.is_zero() for o in outs[:6])
        f = type_b_fiber_equation(base, lam)
        assert f.degree == 10
    zero = family_type_b(6, lambdas=[0]).fibers[0]
    assert ideals_equal(zero, base.ideal)


def test_pfaffian_closed_form():
    R = RingSpec.make("a b c d e f")
    a, b, c, d, e, f = R.gens()
    z = R.zero()
    m = [[z, a, b, c], [-a, z, d, e], [-b, -d, z, f], [-c, -e, -f, z]]
    assert pfaffians_4x4(m) == [a * f - b * e + c * d]
    zero6 = [[z] * 6 for _ in range(6)]
    assert all(p.is_zero() for p in pfaffians_4x4(zero6))
    assert len(pfaffians_4x4(zero6)) == 15
    bad = [row[:] for row in m]
    bad[1][0] = a
    with pytest.raises(ValueError):
        pfaffians_4x4(bad)


def test_extrasymmetric_pfaffians_cut_out_the_family():
    fam = family_type_b(7, lambdas=[3])
    base = fam.base
    m = extrasymmetric_matrix(base.ring, base.parameters["g8"], base.parameters["k10"], 3)
    assert ideals_equal(Ideal(base.ring, pfaffians_4x4(m)), fam.fibers[3])


def test_type_dd():
    dd = build_type_dd(3)
    assert hilbert_series(dd.ideal).equals(TARGET)
    assert dd.parameters["f10"].coeff((0, 0, 0, 5, 0)) == 0


def test_curves():
    a = hilbert_series(build_curve_a(2).ideal)
    assert a.equals(RationalSeries.make(one_minus(10), (1, 2, 5)))
    cb = build_curve_b(2)
    assert hilbert_series(cb.ideal).expand(5) == [1, 1, 2, 2, 3, 4]
    assert len(cb.ideal) == 9


def test_bucket_rule():
    P = RingSpec(("x", "y0", "y1", "z"), (1, 2, 2, 5))
    R = RingSpec(("a0", "b0", "c", "d", "e", "f", "g"), (1, 2, 3, 4, 5, 6, 7))
    # x^2 * (x^2 y0^2 y1) = a0^4 b0^2 y1 = a0 * c * (a0^2 b0^2): the B6 bucket
    A8, B6 = buckets_x1(parse_poly("x^2*y0^2*y1", P), R)
    assert A8.is_zero() and B6 == parse_poly("a0^2*b0^2", R)
    # x^2 * y1^4 = a0^2 d^2: the A8 bucket
    A8, B6 = buckets_x1(parse_poly("y1^4", P), R)
    assert A8 == parse_poly("d^2", R) and B6.is_zero()
    Q = RingSpec(("u0", "u1", "v", "w"), (1, 1, 4, 6))
    S = RingSpec(("a1", "b0", "b1", "d", "e", "f", "g"), (1, 2, 2, 4, 5, 6, 7))
    C11, D10 = buckets_x2(parse_poly("u1^3*v^2", Q), S)
    assert C11.is_zero() and D10 == parse_poly("b0*d^2", S)


def test_x1_pullback_of_table_images():
    r = verify_stratum("X1_DE", 3)
    assert r.ok and r.check("pullback to the pinched component").status == "pass"
    r = verify_stratum("X2_DE", 3)
    assert r.ok


@pytest.mark.parametrize("seed", [1, 2])
def test_type_de(seed):
    de = build_type_de(seed)
    assert len(de.ideal) == 20
    I1, I2 = de_component_ideals(de)
    assert ideals_equal(intersect(I1, I2), de.ideal)
    for kept in (["d"], ["e"], ["g"], ["c", "f"]):
        assert locus_disjoint(de.ideal, kept)
    J = Ideal(de.ring, de.ideal.generators)
    assert hilbert_series(J, truncation=20).expand(20) == TARGET.expand(20)


def test_four_surface_types_share_one_vector():
    vecs = {kind: hilbert_series(BUILDERS[kind](9).ideal).expand(20)
            for kind in ("TypeA", "TypeB", "TypeDD", "TypeDE")}
    assert len({tuple(v) for v in vecs.values()}) == 1


def test_seed_determinism():
    for kind in ("TypeA", "TypeB", "TypeDE"):
        a, b = BUILDERS[kind](11), BUILDERS[kind](11)
        assert a.ideal.generators == b.ideal.generators
        assert verify_stratum(kind, 11).to_dict(timings=False) == verify_stratum(kind, 11).to_dict(timings=False)
    assert BUILDERS["TypeA"](11).ideal.generators != BUILDERS["TypeA"](12).ideal.generators


def test_glueing_rows():
    r = verify_stratum("Glueing", 2)
    assert r.ok
    assert r.check("generator e: alpha* = beta*").detail == "alpha* = -t^5 + t*s^2, beta* = -t^5 + t*s^2"
    assert r.check("generator g: alpha* = beta*").status == "pass"
    assert r.check("alpha(0:1) = r = (0, 0, 1, 0)").status == "pass"
    assert r.check("beta(0:1) = p = (0, 0, 1, 1)").status == "pass"


def test_verify_type_a_passes():
    r = verify_stratum("TypeA", 5)
    assert r.ok and len(r.checks) >= 8


def test_verify_type_b_reports_betti_row():
    r = verify_stratum("TypeB", 5)
    assert r.ok
    det = r.check("minimal free resolution").detail
    assert "Betti ranks 1 9 16 9 1" in det and "final twist 23" in det and "canonical twist 1" in det


def test_verify_type_de_reports_intersection_and_disjointness():
    r = verify_stratum("TypeDE", 5)
    names = [c.name for c in r.checks]
    assert r.ok and "X1 cap X2 = X" in names
    assert sum(1 for n in names if n.startswith("disjoint from")) == 4
    assert r.check("membership of the b1^2 D10 form of g^2").status == "info"


def test_degenerate_instance_fails_by_name():
    r = verify_stratum("TypeA", 7, {"drop_z2": True})
    assert not r.ok and "(0:0:0:1) not on X, z^2 coefficient 1" in r.failures


def test_reroll_is_logged(monkeypatch, caplog):
    calls = []
    real = checks.smooth_in_charts

    def flaky(I, charts):
        calls.append(1)
        return len(calls) > 1 and real(I, charts)

    monkeypatch.setattr(checks, "smooth_in_charts", flaky)
    with caplog.at_level(logging.WARNING):
        r = verify_stratum("TypeA", 3)
    assert r.ok and r.check("general instance").detail == "accepted on attempt 1 (re-rolled)"
    assert any("re-rolling" in rec.message for rec in caplog.records)


def test_truncation_fallback_on_timeout():
    r = verify_stratum("TypeDE", 4, {"time_budget": 1e-6})
    c = r.check("Hilbert series = target")
    assert c.status == "pass" and "truncated-certified to degree 20" in c.detail


def test_unknown_kind():
    with pytest.raises(ValueError):
        verify_stratum("TypeZ", 1)


@pytest.mark.parametrize("kind", sorted(checks.SUITES))
def test_every_suite_passes(kind):
    assert verify_stratum(kind, 13).ok
