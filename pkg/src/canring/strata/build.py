"""Constructors for the explicit ideals of each stratum, with random parameters."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from ..coeff import DEFAULT_PRIME, FieldSpec
from ..groebner import Ideal
from ..ring import Polynomial, RingSpec, matrix_minors, substitute

KINDS = ("TypeA", "TypeB", "TypeDD", "TypeDE", "CurveA", "CurveB",
         "TypeD_component", "TypeE_component", "X1_DE", "X2_DE")


@dataclass
class StratumInstance:
    kind: str
    ring: RingSpec
    ideal: Ideal
    parameters: dict = field(default_factory=dict)
    points: dict = field(default_factory=dict)
    seed: int = 0
    notes: list = field(default_factory=list)
    attempt: int = 0

    @property
    def prime(self) -> int:
        return self.ring.field.modulus


@dataclass
class FamilyInstance:
    kind: str
    base: StratumInstance
    fibers: dict  # lambda value -> Ideal
    ring: RingSpec


def rng_for(kind: str, seed: int, attempt: int = 0) -> random.Random:
    return random.Random(f"{kind}:{seed}:{attempt}")


def _field(prime) -> FieldSpec:
    if isinstance(prime, FieldSpec):
        return prime
    return FieldSpec(DEFAULT_PRIME if prime is None else prime)


def lift(f: Polynomial, target: RingSpec) -> Polynomial:
    """Move f into a ring containing its variables (matched by name)."""
    idx = [target.index(v) for v in f.ring.variables]
    out = {}
    for e, c in f.items():
        t = [0] * target.n
        for i, a in zip(idx, e):
            t[i] += a
        out[tuple(t)] = c
    return Polynomial(target, out)


def two_by_two(rows) -> list[Polynomial]:
    return matrix_minors(rows, 2)


# surfaces with a single hypersurface equation

def build_type_a(seed: int = 0, prime=None, through_0010: bool = False,
                 drop_z2: bool = False, attempt: int = 0) -> StratumInstance:
    """z^2 = f10(x1, x2, y) in P(1,1,2,5)."""
    R = RingSpec(("x1", "x2", "y", "z"), (1, 1, 2, 5), _field(prime))
    rng = rng_for("TypeA", seed, attempt)
    y5 = (0, 0, 5, 0)
    f10 = R.random_poly(10, rng, among=["x1", "x2", "y"], fixed={y5: 0} if through_0010 else None)
    z2 = R.zero() if drop_z2 else R["z"] ** 2
    inst = StratumInstance("TypeA", R, Ideal(R, [z2 - f10]), {"f10": f10},
                           {"(0:0:0:1)": (0, 0, 0, 1), "(0:0:1:0)": (0, 0, 1, 0)}, seed)
    inst.attempt = attempt
    if drop_z2:
        inst.notes.append("degenerate: z^2 term removed")
    return inst


def build_curve_a(seed: int = 0, prime=None) -> StratumInstance:
    R = RingSpec(("x", "y", "z"), (1, 2, 5), _field(prime))
    rng = rng_for("CurveA", seed)
    f10 = R.random_poly(10, rng, among=["x", "y"])
    return StratumInstance("CurveA", R, Ideal(R, [R["z"] ** 2 - f10]), {"f10": f10}, {}, seed)


def build_type_d_component(seed: int = 0, prime=None, pinched: bool = False) -> StratumInstance:
    """z^2 = f10(x, y1, y2) in P(1,2,2,5); pinched: the form with r, s1, s2."""
    fld = _field(prime)
    rng = rng_for("TypeD_component", seed)
    if pinched:
        R = RingSpec(("x", "y0", "y1", "z"), (1, 2, 2, 5), fld)
        x, y0, y1, z = R.gens()
        f8 = R.random_poly(8, rng, among=["x", "y0", "y1"])
        eq = z ** 2 - y0 * (y1 + y0) ** 2 * (y1 - y0) ** 2 - x ** 2 * f8
        pts = {"r": (0, 0, 1, 0), "s1": (0, 1, 1, 0), "s2": (0, 1, -1, 0)}
        return StratumInstance("TypeD_component", R, Ideal(R, [eq]), {"f8": f8}, pts, seed,
                               ["pinched"])
    R = RingSpec(("x", "y1", "y2", "z"), (1, 2, 2, 5), fld)
    f10 = R.random_poly(10, rng, among=["x", "y1", "y2"])
    return StratumInstance("TypeD_component", R, Ideal(R, [R["z"] ** 2 - f10]), {"f10": f10}, {}, seed)


def build_type_e_component(seed: int = 0, prime=None, pinched: bool = False) -> StratumInstance:
    """w^2 = g12(u0, u1, v) in P(1,1,4,6); pinched: the form with p, q."""
    fld = _field(prime)
    R = RingSpec(("u0", "u1", "v", "w"), (1, 1, 4, 6), fld)
    rng = rng_for("TypeE_component", seed)
    u0, u1, v, w = R.gens()
    if pinched:
        g11 = R.random_poly(11, rng, among=["u0", "u1", "v"])
        eq = w ** 2 - v * (v - u1 ** 4) ** 2 - u0 * g11
        pts = {"q": (0, 1, 1, 0), "p": (0, 0, 1, 1)}
        return StratumInstance("TypeE_component", R, Ideal(R, [eq]), {"g11": g11}, pts, seed,
                               ["pinched"])
    g12 = R.random_poly(12, rng, among=["u0", "u1", "v"])
    return StratumInstance("TypeE_component", R, Ideal(R, [w ** 2 - g12]), {"g12": g12}, {}, seed)


# type B and its relatives

B_VARS = ("x0", "x", "y", "w", "v", "z", "u")
B_WEIGHTS = (1, 1, 2, 3, 4, 5, 6)


def type_b_ring(prime=None) -> RingSpec:
    return RingSpec(B_VARS, B_WEIGHTS, _field(prime))


def random_g8(R: RingSpec, rng: random.Random) -> Polynomial:
    """g8(x0, y, w, v) reduced modulo w^2 = yv, with v^2 coefficient 1."""
    vi, wi = R.index("v"), R.index("w")
    v2 = tuple(2 if i == vi else 0 for i in range(R.n))
    terms = {}
    for e in R.monomials_of_degree(8, ["x0", "y", "w", "v"]):
        if e[wi] >= 2:
            continue
        terms[e] = 1 if e == v2 else R.field.random_nonzero(rng)
    return Polynomial(R, terms)


def type_b_generators(R: RingSpec, g8: Polynomial, k10: Polynomial, lam=0) -> list[Polynomial]:
    x, y, w, v, z, u = (R[n] for n in ("x", "y", "w", "v", "z", "u"))
    lamc = R.const(lam)
    mat = [[lamc, y, w, z], [x, w, v, u]]
    minors = two_by_two(mat)
    rels = [z ** 2 - y * g8 - lamc * lamc * k10,
            z * u - w * g8 - lamc * x * k10,
            u ** 2 - v * g8 - x ** 2 * k10]
    return [m for m in minors] + rels


def build_type_b(seed: int = 0, prime=None, no_y4: bool = False) -> StratumInstance:
    R = type_b_ring(prime)
    rng = rng_for("TypeB", seed)
    g8 = random_g8(R, rng)
    if no_y4:
        g8 = g8 - g8.coeff((0, 0, 4, 0, 0, 0, 0)) * R["y"] ** 4
    k10 = R.random_poly(10, rng, among=["x0", "x", "v"])
    gens = type_b_generators(R, g8, k10)
    return StratumInstance("TypeB", R, Ideal(R, gens), {"g8": g8, "k10": k10}, {}, seed)


def family_type_b(seed: int = 0, lambdas=None, prime=None, count: int = 3,
                  no_y4: bool = False) -> FamilyInstance:
    """Fibers of the smoothing over nonzero values of lambda (random if not given)."""
    base = build_type_b(seed, prime, no_y4=no_y4)
    R = base.ring
    if lambdas is None:
        rng = rng_for("TypeB-family", seed)
        lambdas = [R.field.random_nonzero(rng) for _ in range(count)]
    fibers = {}
    for lam in lambdas:
        lam = R.field.norm(lam)
        fibers[lam] = Ideal(R, type_b_generators(R, base.parameters["g8"], base.parameters["k10"], lam))
    return FamilyInstance("TypeB", base, fibers, R)


def type_b_fiber_equation(base: StratumInstance, lam) -> Polynomial:
    """z^2 - y g8 - lam^2 k10 after w = xy/lam, v = x^2 y/lam^2, u = xz/lam."""
    R = base.ring
    fld = R.field
    A = RingSpec(("x0", "x", "y", "z"), (1, 1, 2, 5), fld)
    x0, x, y, z = A.gens()
    il = fld.inv(fld.norm(lam))
    images = {"x0": x0, "x": x, "y": y, "w": (x * y).scale(il), "v": (x * x * y).scale(il * il % fld.modulus if fld.modulus else il * il),
              "z": z, "u": (x * z).scale(il)}
    g = substitute(base.parameters["g8"], images, A)
    k = substitute(base.parameters["k10"], images, A)
    return z ** 2 - y * g - k.scale(fld.mul(fld.norm(lam), fld.norm(lam)))


def fiber_substitution(base: StratumInstance, lam) -> dict:
    R = base.ring
    fld = R.field
    il = fld.inv(fld.norm(lam))
    x, y, z = R["x"], R["y"], R["z"]
    return {"w": (x * y).scale(il), "v": (x * x * y).scale(fld.mul(il, il)), "u": (x * z).scale(il)}


def extrasymmetric_matrix(R: RingSpec, g8: Polynomial, k10: Polynomial, lam) -> list[list[Polynomial]]:
    """6x6 skew matrix whose 4x4 Pfaffians give the lambda-fiber.

    The entries carrying k10 enter with a minus sign so that the Pfaffians
    reproduce z^2 = y g8 + lam^2 k10 with the same sign convention as the
    fiber equations.
    """
    x, y, w, v, z, u = (R[n] for n in ("x", "y", "w", "v", "z", "u"))
    lamc = R.const(lam)
    zero = R.zero()
    upper = {
        (0, 1): zero, (0, 2): lamc, (0, 3): y, (0, 4): w, (0, 5): z,
        (1, 2): x, (1, 3): w, (1, 4): v, (1, 5): u,
        (2, 3): z, (2, 4): u, (2, 5): g8,
        (3, 4): zero, (3, 5): -(lamc * k10),
        (4, 5): -(x * k10),
    }
    m = [[zero] * 6 for _ in range(6)]
    for (i, j), val in upper.items():
        m[i][j] = val
        m[j][i] = -val
    return m


def pfaffians_4x4(m) -> list[Polynomial]:
    """pf(i,j,k,l) = m_ij m_kl - m_ik m_jl + m_il m_jk over i<j<k<l."""
    n = len(m)
    for i in range(n):
        if len(m[i]) != n or m[i][i]:
            raise ValueError("matrix is not square with zero diagonal")
        for j in range(i + 1, n):
            if m[i][j] != -m[j][i]:
                raise ValueError(f"matrix is not skew-symmetric at ({i}, {j})")
    out = []
    for i, j, k, l in itertools.combinations(range(len(m)), 4):
        out.append(m[i][j] * m[k][l] - m[i][k] * m[j][l] + m[i][l] * m[j][k])
    return out


def build_curve_b(seed: int = 0, prime=None) -> StratumInstance:
    R = RingSpec(("x", "y", "w", "v", "z", "u"), (1, 2, 3, 4, 5, 6), _field(prime))
    rng = rng_for("CurveB", seed)
    x, y, w, v, z, u = R.gens()
    g8 = R.random_poly(8, rng, among=["y", "v"])
    h8 = R.random_poly(8, rng, among=["x", "v"])
    gens = two_by_two([[R.zero(), y, w, z], [x, w, v, u]])
    gens += [z ** 2 - y * g8, z * u - w * g8, u ** 2 - v * g8 - x ** 4 * h8]
    return StratumInstance("CurveB", R, Ideal(R, gens), {"g8": g8, "h8": h8}, {}, seed)


def decompose_type_b(inst: StratumInstance) -> dict:
    """X1 = X + (x), X2 = X : x^inf, E = X1 + X2 and the equations of X2, E
    in their own weighted spaces."""
    from ..groebner import eliminate, saturate

    R = inst.ring
    I = inst.ideal
    X1 = I + [R["x"]]
    X2 = saturate(I, R["x"])
    X2_eq = eliminate(X2, ["y", "w", "z"])
    E = X1 + X2
    E_eq = eliminate(E, ["x", "y", "w", "z"])
    return {"X1": X1, "X2": X2, "X2_equation": X2_eq, "E": E, "E_equation": E_eq}


# type DD

def build_type_dd(seed: int = 0, prime=None, lam=0, attempt: int = 0) -> StratumInstance:
    """(x1 x2 - lam y1, z^2 - f10) in P(1,1,2,2,5) with y1 | f10 mod (x1, x2)."""
    R = RingSpec(("x1", "x2", "y1", "y2", "z"), (1, 1, 2, 2, 5), _field(prime))
    rng = rng_for("TypeDD", seed, attempt)
    y25 = (0, 0, 0, 5, 0)
    f10 = R.random_poly(10, rng, among=["x1", "x2", "y1", "y2"], fixed={y25: 0})
    x1, x2, y1, y2, z = R.gens()
    gens = [x1 * x2 - y1.scale(lam), z ** 2 - f10]
    return StratumInstance("TypeDD", R, Ideal(R, gens), {"f10": f10}, {}, seed, attempt=attempt)


def family_type_dd(seed: int = 0, lambdas=None, prime=None, count: int = 3,
                   attempt: int = 0) -> FamilyInstance:
    base = build_type_dd(seed, prime, attempt=attempt)
    R = base.ring
    if lambdas is None:
        rng = rng_for("TypeDD-family", seed)
        lambdas = [R.field.random_nonzero(rng) for _ in range(count)]
    fibers = {}
    x1, x2, y1 = R["x1"], R["x2"], R["y1"]
    for lam in lambdas:
        lam = R.field.norm(lam)
        fibers[lam] = Ideal(R, [x1 * x2 - y1.scale(lam), base.ideal.generators[1]])
    return FamilyInstance("TypeDD", base, fibers, R)


# the DE stratum

X1_RING = (("a0", "b0", "c", "d", "e", "f", "g"), (1, 2, 3, 4, 5, 6, 7))
X2_RING = (("a1", "b0", "b1", "d", "e", "f", "g"), (1, 2, 2, 4, 5, 6, 7))
DE_RING = (("a0", "a1", "b0", "b1", "c", "d", "e", "f", "g"), (1, 1, 2, 2, 3, 4, 5, 6, 7))


def buckets_x1(f8: Polynomial, R: RingSpec) -> tuple[Polynomial, Polynomial]:
    """Split x^2 f8(x, y0, y1) as a0^2 A8 + a0 c B6 (A8, B6 in a0, b0, d)."""
    A, B = {}, {}
    ia, ib, idd = R.index("a0"), R.index("b0"), R.index("d")
    for (a, b, c, _), coef in f8.items():
        e = [0] * R.n
        e[ia], e[ib] = a, b
        if c % 2 == 0:
            e[idd] = c // 2
            A[tuple(e)] = coef
        else:
            e[idd] = (c - 1) // 2
            B[tuple(e)] = coef
    return Polynomial(R, A), Polynomial(R, B)


def buckets_x2(g11: Polynomial, R: RingSpec) -> tuple[Polynomial, Polynomial]:
    """Split u0 g11(u0, u1, v) as a1 C11 + b1 D10 (C11, D10 in a1, b0, d)."""
    C, D = {}, {}
    ia, ib, idd = R.index("a1"), R.index("b0"), R.index("d")
    for (a, b, c, _), coef in g11.items():
        e = [0] * R.n
        e[idd] = c
        if b % 2 == 0:
            e[ia], e[ib] = a, b // 2
            C[tuple(e)] = coef
        else:
            e[ia], e[ib] = a, (b - 1) // 2
            D[tuple(e)] = coef
    return Polynomial(R, C), Polynomial(R, D)


def x1_generators(R: RingSpec, A8, B6) -> list[Polynomial]:
    a0, b0, c, d, e, f, g = (R[n] for n in X1_RING[0])
    D = d - b0 ** 2
    mat = [[a0, D, e, c, f, g], [c, f, g, a0 * d, D * d, e * d]]
    rels = [e ** 2 - b0 * D ** 2 - a0 ** 2 * A8 - a0 * c * B6,
            e * g - b0 * f * D - a0 * c * A8 - a0 ** 2 * d * B6,
            g ** 2 - b0 * d * D ** 2 - a0 ** 2 * d * A8 - a0 * c * d * B6]
    return two_by_two(mat) + rels


def x2_generators(R: RingSpec, C11, D10) -> list[Polynomial]:
    a1, b0, b1, d, e, f, g = (R[n] for n in X2_RING[0])
    D = d - b0 ** 2
    mat = [[a1, D, f, b1, e, g], [b1, e, g, a1 * b0, D * b0, f * b0]]
    rels = [f ** 2 - d * D ** 2 - a1 * C11 - b1 * D10,
            f * g - d * e * D - b1 * C11 - a1 * b0 * D10,
            g ** 2 - b0 * d * D ** 2 - a1 * b0 * C11 - b0 * b1 * D10]
    return two_by_two(mat) + rels


def _de_parameters(seed: int, prime):
    fld = _field(prime)
    rng = rng_for("TypeDE", seed)
    P1 = RingSpec(("x", "y0", "y1", "z"), (1, 2, 2, 5), fld)
    P2 = RingSpec(("u0", "u1", "v", "w"), (1, 1, 4, 6), fld)
    f8 = P1.random_poly(8, rng, among=["x", "y0", "y1"])
    g11 = P2.random_poly(11, rng, among=["u0", "u1", "v"])
    return fld, f8, g11


def build_x1_de(seed: int = 0, prime=None) -> StratumInstance:
    fld, f8, _ = _de_parameters(seed, prime)
    R = RingSpec(*X1_RING, fld)
    A8, B6 = buckets_x1(f8, R)
    return StratumInstance("X1_DE", R, Ideal(R, x1_generators(R, A8, B6)),
                           {"f8": f8, "A8": A8, "B6": B6}, {}, seed)


def build_x2_de(seed: int = 0, prime=None) -> StratumInstance:
    fld, _, g11 = _de_parameters(seed, prime)
    R = RingSpec(*X2_RING, fld)
    C11, D10 = buckets_x2(g11, R)
    return StratumInstance("X2_DE", R, Ideal(R, x2_generators(R, C11, D10)),
                           {"g11": g11, "C11": C11, "D10": D10}, {}, seed)


def de_matrix(R: RingSpec) -> list[list[Polynomial]]:
    a0, a1, b0, b1, c, d, e, f, g = R.gens()
    z = R.zero()
    return [[z, z, a0, c], [z, z, c, a0 * d], [a1, b1, d - b0 ** 2, f], [b1, a1 * b0, e, g]]


def minimal_minors(m, k: int) -> list[Polynomial]:
    """Nonzero k x k minors up to scalars, dropping monomial multiples of others."""
    seen = []
    for mi in matrix_minors(m, k):
        if not mi:
            continue
        mi = mi.monic()
        if mi not in seen:
            seen.append(mi)
    out = []
    for mi in seen:
        redundant = False
        for other in seen:
            if other is mi or other.degree >= mi.degree:
                continue
            q = _monomial_quotient(mi, other)
            if q is not None:
                redundant = True
                break
        if not redundant:
            out.append(mi)
    return out


def _monomial_quotient(a: Polynomial, b: Polynomial):
    """Monomial m with a = c m b, if any."""
    (ea, ca), (eb, cb) = a.lead(), b.lead()
    m = tuple(x - y for x, y in zip(ea, eb))
    if min(m) < 0 or len(a) != len(b):
        return None
    ring = a.ring
    cand = b * ring.monomial(m, ring.field.div(ca, cb))
    return m if cand == a else None


def de_relations(R: RingSpec, A8, B6, C11, D10, printed_g2: bool = False) -> list[Polynomial]:
    a0, a1, b0, b1, c, d, e, f, g = R.gens()
    D = d - b0 ** 2
    g2 = (b1 * b1 if printed_g2 else b0 * b1) * D10
    return [e ** 2 - b0 * D ** 2 - a0 ** 2 * A8 - a0 * c * B6,
            e * g - b0 * f * D - a0 * c * A8 - a0 ** 2 * d * B6,
            f ** 2 - d * D ** 2 - a1 * C11 - b1 * D10,
            f * g - d * e * D - b1 * C11 - a1 * b0 * D10,
            g ** 2 - d * e ** 2 - a1 * b0 * C11 - g2]


def de_sixth_relation(R: RingSpec, A8, B6) -> Polynomial:
    a0, a1, b0, b1, c, d, e, f, g = R.gens()
    return g ** 2 - b0 * f ** 2 - a0 ** 2 * d * A8 - a0 * c * d * B6


def build_type_de(seed: int = 0, prime=None) -> StratumInstance:
    """Glued DE surface: 2x2 minors of the 4x4 matrix plus five relations."""
    fld, f8, g11 = _de_parameters(seed, prime)
    R = RingSpec(*DE_RING, fld)
    A8, B6 = buckets_x1(f8, R)
    C11, D10 = buckets_x2(g11, R)
    minors = minimal_minors(de_matrix(R), 2)
    gens = minors + de_relations(R, A8, B6, C11, D10)
    params = {"f8": f8, "g11": g11, "A8": A8, "B6": B6, "C11": C11, "D10": D10}
    return StratumInstance("TypeDE", R, Ideal(R, gens), params, {}, seed)


def de_component_ideals(inst: StratumInstance) -> tuple[Ideal, Ideal]:
    """Ideals of the two components extended to the DE ring."""
    R = inst.ring
    x1 = build_x1_de(inst.seed, R.field)
    x2 = build_x2_de(inst.seed, R.field)
    I1 = Ideal(R, [lift(g, R) for g in x1.ideal.generators] + [R["a1"], R["b1"]])
    I2 = Ideal(R, [lift(g, R) for g in x2.ideal.generators] + [R["a0"], R["c"]])
    return I1, I2


# generators of R(X, K_X) on the two normalized components
DE_TABLE = {
    "a0": ("x", "0"),
    "a1": ("0", "u0"),
    "b0": ("y0", "u1^2"),
    "b1": ("0", "u0*u1"),
    "c": ("x*y1", "0"),
    "d": ("y1^2", "v"),
    "e": ("z", "u1*(v - u1^4)"),
    "f": ("y1*(y1^2 - y0^2)", "w"),
    "g": ("y1*z", "u1*w"),
}


BUILDERS = {
    "TypeA": build_type_a,
    "TypeB": build_type_b,
    "TypeDD": build_type_dd,
    "TypeDE": build_type_de,
    "CurveA": build_curve_a,
    "CurveB": build_curve_b,
    "TypeD_component": build_type_d_component,
    "TypeE_component": build_type_e_component,
    "X1_DE": build_x1_de,
    "X2_DE": build_x2_de,
}
