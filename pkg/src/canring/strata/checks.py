"""Per-kind verification suites producing machine-readable reports."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from ..coeff import DEFAULT_PRIME, FieldSpec
from ..engine import GBTimeout
from ..groebner import (Ideal, TruncationError, eliminate, ideal_member, ideals_equal,
                        intersect, jacobian_ideal, locus_disjoint)
from ..hilbert import TARGET, RationalSeries, check_invariants, hilbert_series, krull_dimension, one_minus
from ..parse import parse_poly
from ..resolution import canonical_twist, is_complex, minimal_generators, minimal_resolution
from ..ring import Polynomial, RingSpec, evaluate_at_point, substitute
from .build import (DE_TABLE, build_curve_a, build_curve_b, build_type_a,
                    build_type_b, build_type_d_component, build_type_dd, build_type_de,
                    build_type_e_component, build_x1_de, build_x2_de, de_component_ideals,
                    de_relations, de_sixth_relation, decompose_type_b, extrasymmetric_matrix,
                    family_type_b, family_type_dd, fiber_substitution, lift, pfaffians_4x4,
                    random_g8, rng_for, two_by_two, type_b_fiber_equation)

log = logging.getLogger(__name__)

DEFAULT_TRUNCATION = 20
DEFAULT_TIME_BUDGET = 300.0
MAX_ATTEMPTS = 5

CURVE_TARGET = TARGET.times(one_minus(1))


@dataclass
class Check:
    name: str
    status: str  # pass, fail or info
    detail: str = ""
    millis: int = 0

    def to_dict(self, timings: bool = True) -> dict:
        d = {"name": self.name, "status": self.status, "detail": self.detail}
        d["millis"] = self.millis if timings else 0
        return d


@dataclass
class Report:
    kind: str
    seed: int
    prime: int
    checks: list = field(default_factory=list)
    options: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def failures(self) -> list[str]:
        return [c.name for c in self.checks if c.status == "fail"]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self, timings: bool = True) -> dict:
        return {"kind": self.kind, "seed": self.seed, "prime": self.prime,
                "options": dict(self.options), "status": "pass" if self.ok else "fail",
                "checks": [c.to_dict(timings) for c in self.checks]}

    def run(self, name: str, fn) -> Check:
        """Time fn(); it returns (ok, detail) with ok None for informational entries."""
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except (GBTimeout, TruncationError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        status = "info" if ok is None else ("pass" if ok else "fail")
        c = Check(name, status, detail, int(round((time.perf_counter() - t0) * 1000)))
        self.checks.append(c)
        return c


# shared helpers

def onto(f: Polynomial, S: RingSpec) -> Polynomial:
    """Send variables of f to the same-named variables of S, the others to 0."""
    return substitute(f, {v: (S[v] if v in S.variables else S.zero()) for v in f.ring.variables}, S)


def proportional(a: Polynomial, b: Polynomial) -> bool:
    if not a or not b:
        return not a and not b
    return a.monic() == b.monic()


def coefficient_line(coeffs, n: int = 8) -> str:
    return " ".join(str(c) for c in coeffs[:n]) + (" ..." if len(coeffs) > n else "")


def parameter_degrees(inst) -> tuple[bool, str]:
    bad = [str(g) for g in inst.ideal.generators if not g.is_homogeneous]
    if bad:
        return False, f"inhomogeneous generator {bad[0]}"
    wrong = []
    for name, p in inst.parameters.items():
        digits = "".join(ch for ch in name if ch.isdigit())
        if p and digits and p.degree != int(digits):
            wrong.append(f"{name} has degree {p.degree}")
    if wrong:
        return False, "; ".join(wrong)
    return True, f"{len(inst.ideal)} homogeneous generators; parameters {', '.join(inst.parameters)}"


def series_for(I: Ideal, truncation: int, time_budget: float | None):
    """Full series if the basis finishes in the budget, else the truncated one."""
    try:
        return hilbert_series(I, time_budget=time_budget), "full basis"
    except GBTimeout:
        log.warning("time budget exhausted; falling back to truncation at degree %d", truncation)
        return hilbert_series(I, truncation=truncation), f"truncated-certified to degree {truncation}"


def series_check(report: Report, I: Ideal, expected, truncation: int, time_budget, label: str):
    holder = {}

    def fn():
        s, how = series_for(I, truncation, time_budget)
        holder["series"] = s
        got, want = s.expand(truncation), expected.expand(truncation)
        ok = got == want
        if ok and isinstance(s, RationalSeries):
            ok = s.same_function(expected)
        detail = f"{how}; coefficients {coefficient_line(got)}"
        if not ok:
            k = next((i for i, (a, b) in enumerate(zip(got, want)) if a != b), None)
            detail += f"; expected {coefficient_line(want)}" + (f"; first mismatch in degree {k}" if k is not None else "")
        return ok, detail

    report.run(f"Hilbert series = {label}", fn)
    return holder.get("series")


def invariants_check(report: Report, s, truncation: int):
    def fn():
        inv = check_invariants(s, truncation)
        failed = [k for k, v in inv.checks.items() if not v]
        detail = f"chi = {inv.chi}, K^2 = {inv.Ksq}, p_g = {inv.pg}, q = {inv.q}"
        if failed:
            detail += "; failed: " + ", ".join(failed)
        if inv.flagged:
            detail += f"; plurigenera off in degrees {inv.flagged}"
        return inv.ok, detail

    if s is not None:
        report.run("invariants chi = 3, K^2 = 1, P_m = 3 + m(m-1)/2", fn)


def resolution_check(report: Report, I: Ideal, ranks=None, last_twist=None, twist=None,
                     name: str = "minimal free resolution"):
    def fn():
        res = minimal_resolution(I)
        b = res.betti
        got = b.ranks()
        detail = "Betti ranks " + " ".join(map(str, got))
        ok = is_complex(res) and not any(m.has_unit_entry() for m in res.maps)
        if not ok:
            detail += "; not a minimal complex"
        if len(b.steps[-1]) == 1:
            detail += f"; final twist {b.steps[-1][0]}; canonical twist {canonical_twist(res)}"
        detail += "\n" + str(b)
        if ranks is not None:
            ok = ok and got == list(ranks)
        if last_twist is not None:
            ok = ok and len(b.steps[-1]) == 1 and b.steps[-1][0] == last_twist
        if twist is not None:
            ok = ok and len(b.steps[-1]) == 1 and canonical_twist(res) == twist
        return (ok if ranks is not None or twist is not None else None), detail

    report.run(name, fn)


def singular_check(report: Report, I: Ideal, chart: str):
    def fn():
        dim = krull_dimension(jacobian_ideal(I, chart))
        return dim <= 0, f"singular locus in the chart {chart} = 1 has dimension {dim}"

    report.run(f"at most isolated singularities in chart {chart}", fn)


def smooth_in_charts(I: Ideal, charts) -> bool:
    return all(krull_dimension(jacobian_ideal(I, c)) < 0 for c in charts)


def disjoint_check(report: Report, I: Ideal, kept):
    label = "P(" + ",".join(f"{I.ring.weights[I.ring.index(v)]}_{v}" for v in kept) + ")"
    report.run(f"disjoint from {label}",
               lambda: (locus_disjoint(I, kept), f"pure powers of {', '.join(kept)} among the lead terms"))


def hyperplane_check(report: Report, I: Ideal, var: str, expected_base):
    R = I.ring

    def fn():
        s = hilbert_series(I + [R[var]])
        want = expected_base.times(one_minus(1))
        return s.equals(want), f"series of X + ({var}) is (1-t) times the surface series: {coefficient_line(s.expand(10))}"

    report.run(f"hyperplane section {var} = 0", fn)


def reroll(kind: str, build, generic, report: Report | None = None):
    """Build attempts 0, 1, ... until ``generic`` holds; logs every re-roll."""
    for attempt in range(MAX_ATTEMPTS):
        inst = build(attempt)
        if generic(inst):
            if report is not None:
                report.checks.append(Check("general instance", "pass",
                                           f"accepted on attempt {attempt}" + (" (re-rolled)" if attempt else "")))
            return inst
        log.warning("%s seed %s attempt %d is degenerate; re-rolling", kind, inst.seed, attempt)
    if report is not None:
        report.checks.append(Check("general instance", "fail", f"degenerate after {MAX_ATTEMPTS} attempts"))
    return inst


# per-kind suites

def _verify_type_a(report: Report, seed, prime, opts):
    through = bool(opts.get("through_0010", False))
    drop = bool(opts.get("drop_z2", False))
    inst = reroll("TypeA", lambda a: build_type_a(seed, prime, through, drop, attempt=a),
                  lambda i: drop or smooth_in_charts(i.ideal, ["x1", "x2"]), report)
    I, R = inst.ideal, inst.ring
    report.run("homogeneous generators", lambda: parameter_degrees(inst))

    def normalization():
        f = I.generators[0] if I.generators else R.zero()
        c = R.field.signed(f.coeff((0, 0, 0, 2)))
        val = evaluate_at_point(f, (0, 0, 0, 1)).value
        return c == 1 and val != 0, f"z^2 coefficient {c}; value at (0:0:0:1) is {R.field.signed(val)}"

    report.run("(0:0:0:1) not on X, z^2 coefficient 1", normalization)

    def gorenstein_point():
        val = evaluate_at_point(I.generators[0], (0, 0, 1, 0)).value
        on = val == 0
        return on == through, f"(0:0:1:0) {'lies' if on else 'does not lie'} on X; requested {'on' if through else 'off'}"

    report.run("point (0:0:1:0) placement", gorenstein_point)
    s = series_check(report, I, TARGET, opts["truncation"], opts["time_budget"], "target")
    invariants_check(report, s, opts["truncation"])
    for chart in ("x1", "x2"):
        singular_check(report, I, chart)
    if opts.get("resolve", True):
        resolution_check(report, I, ranks=[1, 1], last_twist=10, twist=1)
    hyperplane_check(report, I, "x1", TARGET)


def _verify_type_b(report: Report, seed, prime, opts):
    inst = build_type_b(seed, prime, no_y4=bool(opts.get("no_y4", False)))
    I, R = inst.ideal, inst.ring
    g8 = inst.parameters["g8"]
    report.run("homogeneous generators", lambda: parameter_degrees(inst))
    v2 = tuple(2 if v == "v" else 0 for v in R.variables)
    report.run("v^2 coefficient of g8 is 1",
               lambda: (R.field.signed(g8.coeff(v2)) == 1, f"coefficient {R.field.signed(g8.coeff(v2))}"))

    def count():
        n = len(minimal_generators(I))
        return n == 9, f"{n} minimal generators"

    report.run("9 minimal generators", count)
    x, y, w, z = (R[n] for n in ("x", "y", "w", "z"))
    report.run("xy, xw, xz in the ideal",
               lambda: (all(ideal_member(p, I) for p in (x * y, x * w, x * z)), "reducible equations"))
    s = series_check(report, I, TARGET, opts["truncation"], opts["time_budget"], "target")
    invariants_check(report, s, opts["truncation"])
    for kept in (["v"], ["z"], ["w", "u"]):
        disjoint_check(report, I, kept)
    parts = {}

    def decompose():
        parts.update(decompose_type_b(inst))
        X2 = parts["X2_equation"]
        degs = [g.degree for g in X2.generators]
        ok = len(X2.generators) == 1 and degs == [12]
        if ok:
            S = X2.ring
            want = S["u"] ** 2 - S["v"] * onto(g8, S) - S["x"] ** 2 * onto(inst.parameters["k10"], S)
            ok = proportional(X2.generators[0], want)
        return ok, f"X2 in P{tuple(X2.ring.weights)} cut out by {len(degs)} equation(s) of degree {degs}"

    report.run("X2 is a degree 12 hypersurface u^2 = v g8 + x^2 k10", decompose)

    def weierstrass():
        E = parts["E_equation"]
        if len(E.generators) != 1:
            return False, f"{len(E.generators)} equations"
        S = E.ring
        e = E.generators[0].monic()
        u2 = tuple(2 if v == "u" else 0 for v in S.variables)
        v3 = tuple(3 if v == "v" else 0 for v in S.variables)
        ok = e.coeff(u2) != 0 and e.coeff(v3) != 0 and proportional(e, S["u"] ** 2 - S["v"] * onto(g8, S))
        return ok, f"E: {e}"

    if parts:
        report.run("E is the Weierstrass model u^2 = v g8(x0,0,0,v)", weierstrass)
        report.run("X1 cap X2 = X", lambda: (ideals_equal(intersect(parts["X1"], parts["X2"]), I),
                                             "mutual containment"))
    if opts.get("resolve", True):
        resolution_check(report, I, ranks=[1, 9, 16, 9, 1], last_twist=23, twist=1)
    hyperplane_check(report, I, "x0", TARGET)


def _verify_type_dd(report: Report, seed, prime, opts):
    inst = reroll("TypeDD", lambda a: build_type_dd(seed, prime, attempt=a),
                  lambda i: smooth_in_charts(i.ideal, ["x1", "x2"]), report)
    I = inst.ideal
    report.run("homogeneous generators", lambda: parameter_degrees(inst))
    f10 = inst.parameters["f10"]
    y25 = (0, 0, 0, 5, 0)
    report.run("y1 divides f10 modulo (x1, x2)",
               lambda: (f10.coeff(y25) == 0, "y2^5 coefficient vanishes"))
    s = series_check(report, I, TARGET, opts["truncation"], opts["time_budget"], "target")
    invariants_check(report, s, opts["truncation"])
    if opts.get("resolve", True):
        resolution_check(report, I, ranks=[1, 2, 1], last_twist=12, twist=1,
                         name="complete intersection of degrees (2, 10)")
    for chart in ("x1", "x2"):
        singular_check(report, I, chart)
    fam = family_type_dd(seed, prime=prime, count=opts.get("family_count", 1), attempt=inst.attempt)
    _dd_fibers(report, fam)


def _verify_type_de(report: Report, seed, prime, opts):
    inst = build_type_de(seed, prime)
    I, R = inst.ideal, inst.ring
    P = inst.parameters
    report.run("homogeneous generators", lambda: parameter_degrees(inst))
    report.run("20 equations", lambda: (len(I) == 20, f"{len(I)} generators"))
    s = series_check(report, I, TARGET, opts["truncation"], opts["time_budget"], "target")
    invariants_check(report, s, opts["truncation"])
    I1, I2 = de_component_ideals(inst)
    report.run("X1 cap X2 = X", lambda: (ideals_equal(intersect(I1, I2), I), "mutual containment"))
    report.run("X cap {a1 = b1 = 0} = X1",
               lambda: (ideals_equal(I + [R["a1"], R["b1"]], I1), "mutual containment"))
    report.run("X cap {a0 = c = 0} = X2",
               lambda: (ideals_equal(I + [R["a0"], R["c"]], I2), "mutual containment"))
    for kept in (["d"], ["e"], ["g"], ["c", "f"]):
        disjoint_check(report, I, kept)

    def sixth():
        r = de_sixth_relation(R, P["A8"], P["B6"])
        return ideal_member(r, I), "g^2 = b0 f^2 + a0^2 d A8 + a0 c d B6 follows from the others"

    report.run("sixth relation dependent", sixth)

    def printed():
        r = de_relations(R, P["A8"], P["B6"], P["C11"], P["D10"], printed_g2=True)[-1]
        m, m1, m2 = ideal_member(r, I), ideal_member(r, I1), ideal_member(r, I2)
        return None, f"g^2 = d e^2 + a1 b0 C11 + b1^2 D10: in X {m}, in X1 {m1}, in X2 {m2}"

    report.run("membership of the b1^2 D10 form of g^2", printed)

    def additivity():
        h = [hilbert_series(J) for J in (I1, I2, I1 + I2)]
        tot = [a + b - c for a, b, c in zip(*(x.expand(opts["truncation"]) for x in h))]
        return tot == TARGET.expand(opts["truncation"]), "H(X1) + H(X2) - H(X1 cap X2 locus) = target"

    report.run("series additivity over the components", additivity)
    if opts.get("resolve", False):
        resolution_check(report, I, name="minimal free resolution (exploratory)")


def _verify_curve_a(report: Report, seed, prime, opts):
    inst = build_curve_a(seed, prime)
    report.run("homogeneous generators", lambda: parameter_degrees(inst))
    s = series_check(report, inst.ideal, CURVE_TARGET, opts["truncation"], opts["time_budget"],
                     "(1-t) target")
    if s is not None:
        report.run("curve series flagged as non-surface",
                   lambda: (not check_invariants(s, opts["truncation"]).surface, "projective dimension 1"))


def _verify_curve_b(report: Report, seed, prime, opts):
    inst = build_curve_b(seed, prime)
    R = inst.ring
    report.run("homogeneous generators", lambda: parameter_degrees(inst))
    v2 = tuple(2 if v == "v" else 0 for v in R.variables)
    report.run("v^2 appears in g8", lambda: (inst.parameters["g8"].coeff(v2) != 0, ""))
    report.run("9 minimal generators",
               lambda: (len(minimal_generators(inst.ideal)) == 9, f"{len(inst.ideal)} generators"))
    series_check(report, inst.ideal, CURVE_TARGET, opts["truncation"], opts["time_budget"], "(1-t) target")
    if opts.get("resolve", False):
        resolution_check(report, inst.ideal, name="minimal free resolution (exploratory)")


def _verify_component(report: Report, seed, prime, opts, build, weights, degree):
    pinched = bool(opts.get("pinched", False))
    inst = build(seed, prime, pinched=pinched)
    report.run("homogeneous generators", lambda: parameter_degrees(inst))
    expected = RationalSeries.make(one_minus(degree), weights)
    series_check(report, inst.ideal, expected, opts["truncation"], opts["time_budget"],
                 f"hypersurface of degree {degree}")
    f = inst.ideal.generators[0]
    for name, pt in inst.points.items():
        report.run(f"point {name} = {pt} on the surface",
                   lambda pt=pt: (evaluate_at_point(f, pt).value == 0, ""))


def _pinched_x1(inst) -> Polynomial:
    f8 = inst.parameters["f8"]
    P = f8.ring
    x, y0, y1, z = P.gens()
    return z ** 2 - y0 * (y1 * y1 - y0 * y0) ** 2 - x ** 2 * f8


def _pinched_x2(inst) -> Polynomial:
    g11 = inst.parameters["g11"]
    P = g11.ring
    u0, u1, v, w = P.gens()
    return w ** 2 - v * (v - u1 ** 4) ** 2 - u0 * g11


def _verify_de_side(report: Report, seed, prime, opts, side: int):
    inst = (build_x1_de if side == 1 else build_x2_de)(seed, prime)
    report.run("homogeneous generators", lambda: parameter_degrees(inst))
    eq = _pinched_x1(inst) if side == 1 else _pinched_x2(inst)
    P = eq.ring
    images = {name: parse_poly(row[side - 1], P) for name, row in DE_TABLE.items()
              if name in inst.ring.variables}

    def pullback():
        H = Ideal(P, [eq])
        bad = [str(g) for g in inst.ideal.generators if not ideal_member(substitute(g, images, P), H)]
        return not bad, (f"all {len(inst.ideal)} generators vanish on the pinched component"
                         if not bad else f"nonzero normal form for {bad[0]}")

    report.run("pullback to the pinched component", pullback)

    def buckets():
        R = inst.ring
        if side == 1:
            lhs = R["a0"] ** 2 * inst.parameters["A8"] + R["a0"] * R["c"] * inst.parameters["B6"]
            want = P["x"] ** 2 * inst.parameters["f8"]
        else:
            lhs = R["a1"] * inst.parameters["C11"] + R["b1"] * inst.parameters["D10"]
            want = P["u0"] * inst.parameters["g11"]
        return substitute(lhs, images, P) == want, "bucket split recombines to the free form"

    report.run("bucket split", buckets)


def _dd_fibers(report: Report, fam):
    for lam, J in fam.fibers.items():
        def fn(J=J):
            E = eliminate(J, ["y1"])
            degs = [g.degree for g in E.generators]
            return len(degs) == 1 and degs == [10], f"{len(degs)} equation(s) of degree {degs} in P{tuple(E.ring.weights)}"

        report.run(f"fiber lambda = {lam} is a degree 10 hypersurface", fn)


def _b_fibers(report: Report, fam):
    base = fam.base
    R = base.ring
    fld = R.field
    g8, k10 = base.parameters["g8"], base.parameters["k10"]
    for lam, J in fam.fibers.items():
        f = type_b_fiber_equation(base, lam)

        def elim(J=J, f=f):
            E = eliminate(J, ["w", "v", "u"])
            degs = [g.degree for g in E.generators]
            ok = degs == [10] and proportional(E.generators[0], lift(f, E.ring))
            return ok, f"{len(degs)} equation(s) of degree {degs} in P{tuple(E.ring.weights)}"

        report.run(f"fiber lambda = {lam}: eliminating w, v, u leaves one degree 10 equation", elim)

        def subs(J=J, f=f, lam=lam):
            sub = fiber_substitution(base, lam)
            F = lift(f, R)
            il = fld.inv(lam)
            allowed = [F, (R["x"] * F).scale(il), (R["x"] ** 2 * F).scale(fld.mul(il, il))]
            outs = [substitute(g, sub) for g in J.generators]
            bad = [i for i, o in enumerate(outs) if o and not any(proportional(o, a) for a in allowed)]
            zeros = sum(1 for o in outs if not o)
            return not bad, f"{zeros} generators vanish, the rest are f, (x/lambda) f, (x/lambda)^2 f"

        report.run(f"fiber lambda = {lam}: substitution identities", subs)
        report.run(f"fiber lambda = {lam}: 4x4 Pfaffians cut out the fiber",
                   lambda J=J, lam=lam: (ideals_equal(Ideal(R, pfaffians_4x4(extrasymmetric_matrix(R, g8, k10, lam))), J),
                                         "mutual containment"))
    report.run("central fiber is the type B ideal",
               lambda: (ideals_equal(Ideal(R, pfaffians_4x4(extrasymmetric_matrix(R, g8, k10, 0))), base.ideal),
                        "Pfaffians at lambda = 0"))


def _verify_family_b(report: Report, seed, prime, opts):
    fam = family_type_b(seed, opts.get("lambdas"), prime, count=opts.get("family_count", 3))
    _b_fibers(report, fam)


def _verify_family_dd(report: Report, seed, prime, opts):
    fam = family_type_dd(seed, opts.get("lambdas"), prime, count=opts.get("family_count", 3))
    R = fam.ring
    report.run("central fiber is the type DD ideal",
               lambda: (ideals_equal(Ideal(R, build_type_dd(seed, prime, lam=0).ideal.generators), fam.base.ideal),
                        "lambda = 0"))
    _dd_fibers(report, fam)


def same_weighted_point(a, b, weights, fld: FieldSpec) -> bool:
    """Equality in weighted projective space: b_i = l^w_i a_i for some l != 0."""
    a = [fld.norm(x) for x in a]
    b = [fld.norm(x) for x in b]
    if [x == 0 for x in a] != [x == 0 for x in b] or not any(a):
        return False

    def fits(lam):
        return all(fld.mul(fld.norm(lam ** w) if not fld.modulus else pow(lam, w, fld.modulus), x) == y
                   for x, y, w in zip(a, b, weights))

    for x, y, w in zip(a, b, weights):
        if x and w == 1:
            return fits(fld.div(y, x))
    if fits(1) or fits(fld.norm(-1)):
        return True
    if fld.modulus and fld.modulus < 1 << 17:
        return any(fits(lam) for lam in range(2, fld.modulus - 1))
    return False


def _verify_glueing(report: Report, seed, prime, opts):
    x1 = build_x1_de(seed, prime)
    x2 = build_x2_de(seed, prime)
    eq1, eq2 = _pinched_x1(x1), _pinched_x2(x2)
    P1, P2 = eq1.ring, eq2.ring
    fld = P1.field
    T = RingSpec(("t", "s"), (1, 2), fld)
    t, s = T.gens()
    alpha = {"x": T.zero(), "y0": t ** 2, "y1": s, "z": t * (s ** 2 - t ** 4)}
    beta = {"u0": T.zero(), "u1": t, "v": s ** 2, "w": s * (s ** 2 - t ** 4)}
    for name, (im1, im2) in DE_TABLE.items():
        def fn(im1=im1, im2=im2):
            p = substitute(parse_poly(im1, P1), alpha, T)
            q = substitute(parse_poly(im2, P2), beta, T)
            return p == q, f"alpha* = {p}, beta* = {q}"

        report.run(f"generator {name}: alpha* = beta*", fn)
    report.run("alpha lands on the pinched X1", lambda: (not substitute(eq1, alpha, T), ""))
    report.run("beta lands on the pinched X2", lambda: (not substitute(eq2, beta, T), ""))

    checks = [("alpha", alpha, P1, [((0, 1), (0, 0, 1, 0), "r"), ((1, 1), (0, 1, 1, 0), "s1"),
                                    ((1, -1), (0, 1, -1, 0), "s2")]),
              ("beta", beta, P2, [((0, 1), (0, 0, 1, 1), "p"), ((1, 1), (0, 1, 1, 0), "q"),
                                  ((1, -1), (0, 1, 1, 0), "q")])]
    for mname, maps, ring, pts in checks:
        for src, target, label in pts:
            def fn(maps=maps, ring=ring, src=src, target=target):
                img = [evaluate_at_point(maps[v], src).value for v in ring.variables]
                img = [fld.signed(x) for x in img]
                return same_weighted_point(img, target, ring.weights, fld), f"image {tuple(img)}"

            report.run(f"{mname}({src[0]}:{src[1]}) = {label} = {target}", fn)
    for name, pt in (("r", (0, 0, 1, 0)), ("s1", (0, 1, 1, 0)), ("s2", (0, 1, -1, 0))):
        report.run(f"{name} on the pinched X1", lambda pt=pt: (evaluate_at_point(eq1, pt).value == 0, ""))
    for name, pt in (("p", (0, 0, 1, 1)), ("q", (0, 1, 1, 0))):
        report.run(f"{name} on the pinched X2", lambda pt=pt: (evaluate_at_point(eq2, pt).value == 0, ""))


def invariant_cover_identity(seed: int, prime=None) -> list[Polynomial]:
    """Normal forms of the symmetric 3x3 minors after substituting the invariants."""
    fld = FieldSpec(DEFAULT_PRIME if prime is None else prime)
    B = RingSpec(("x0", "y", "w", "v", "z", "u"), (1, 2, 3, 4, 5, 6), fld)
    g8 = random_g8(B, rng_for("InvariantCover", seed))
    S = RingSpec(("a0", "a1", "b", "c"), (1, 1, 2, 4), fld)
    a0, a1, b, c = S.gens()
    inv = {"x0": a0, "y": a1 ** 2, "w": a1 * b, "v": b ** 2, "z": a1 * c, "u": b * c}
    g8s = substitute(g8, inv, S)
    cover = Ideal(S, [c ** 2 - g8s])
    y, w, v, z, u = (B[n] for n in ("y", "w", "v", "z", "u"))
    mat = [[y, w, z], [w, v, u], [z, u, g8]]
    minors = two_by_two(mat)
    gb = cover.gb()
    return [gb.reduce(substitute(m, inv, S)) for m in minors]


def _verify_invariant_cover(report: Report, seed, prime, opts):
    def fn():
        nfs = invariant_cover_identity(seed, prime)
        nonzero = [str(p) for p in nfs if p]
        return not nonzero, f"{len(nfs)} minors reduce to 0" if not nonzero else f"nonzero: {nonzero[0]}"

    report.run("2x2 minors of the symmetric 3x3 matrix vanish on the cover", fn)


SUITES = {
    "TypeA": _verify_type_a,
    "TypeB": _verify_type_b,
    "TypeDD": _verify_type_dd,
    "TypeDE": _verify_type_de,
    "CurveA": _verify_curve_a,
    "CurveB": _verify_curve_b,
    "TypeD_component": lambda r, s, p, o: _verify_component(r, s, p, o, build_type_d_component, (1, 2, 2, 5), 10),
    "TypeE_component": lambda r, s, p, o: _verify_component(r, s, p, o, build_type_e_component, (1, 1, 4, 6), 12),
    "X1_DE": lambda r, s, p, o: _verify_de_side(r, s, p, o, 1),
    "X2_DE": lambda r, s, p, o: _verify_de_side(r, s, p, o, 2),
    "TypeB_family": _verify_family_b,
    "TypeDD_family": _verify_family_dd,
    "Glueing": _verify_glueing,
    "InvariantCover": _verify_invariant_cover,
}


def verify_stratum(kind: str, seed: int = 0, options: dict | None = None) -> Report:
    if kind not in SUITES:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(SUITES)}")
    opts = {"truncation": DEFAULT_TRUNCATION, "time_budget": DEFAULT_TIME_BUDGET}
    opts.update(options or {})
    prime = opts.pop("prime", None)
    prime = DEFAULT_PRIME if prime is None else prime
    shown = {k: v for k, v in opts.items() if k not in ("truncation", "time_budget")}
    report = Report(kind, seed, prime, options=shown)
    SUITES[kind](report, seed, prime, opts)
    return report
